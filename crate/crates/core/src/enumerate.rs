//! Exhaustive and random sources of words, for tests and experiments.

use std::collections::{BTreeSet, VecDeque};

use rand::Rng;

use crate::normal_form::{nf_of_perm, NormalShape};
use crate::word::{Permutation, Word};

/// Every reduced expression of `p`, sorted. The expressions of a permutation
/// are connected by braid relations, so a search from the normal form finds
/// them all.
pub fn reduced_words_of(p: &Permutation) -> Vec<Word> {
    let start = nf_of_perm(p);
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([start.letters().to_vec()]);
    let mut queue = VecDeque::from([start]);
    while let Some(w) = queue.pop_front() {
        for (pos, rel) in w.moves().collect::<Vec<_>>() {
            let next = w.apply(pos, rel).expect("move found by relation_at");
            if seen.insert(next.letters().to_vec()) {
                queue.push_back(next);
            }
        }
    }
    seen.into_iter()
        .map(|letters| Word::from_trusted(p.n(), letters))
        .collect()
}

/// Every reduced expression on `n` strands, grouped by permutation.
pub fn reduced_classes(n: usize) -> Vec<Vec<Word>> {
    NormalShape::all(n)
        .iter()
        .map(|shape| reduced_words_of(&shape.expand().eval()))
        .collect()
}

/// Every reduced expression on `n` strands of length at most `max_len`.
pub fn reduced_words(n: usize, max_len: usize) -> Vec<Word> {
    NormalShape::all(n)
        .iter()
        .filter(|shape| shape.expand().len() <= max_len)
        .flat_map(|shape| reduced_words_of(&shape.expand().eval()))
        .collect()
}

/// Every word of length `len` over `s_1 .. s_{n-1}`, reduced or not.
pub fn all_words(n: usize, len: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|w: Vec<usize>| {
                (1..n).map(move |i| {
                    let mut next = w.clone();
                    next.push(i);
                    next
                })
            })
            .collect();
    }
    out.into_iter().map(|letters| Word::from_trusted(n, letters)).collect()
}

/// A reduced word built by appending uniformly chosen letters that cross two
/// strands not yet crossed; stops early once the flip is reached.
pub fn random_reduced_word(n: usize, len: usize, rng: &mut impl Rng) -> Word {
    let mut strand_at: Vec<usize> = (0..n).collect();
    let mut letters = Vec::with_capacity(len);
    while letters.len() < len {
        let choices: Vec<usize> = (1..n).filter(|&i| strand_at[i - 1] < strand_at[i]).collect();
        if choices.is_empty() {
            break;
        }
        let i = choices[rng.gen_range(0..choices.len())];
        strand_at.swap(i - 1, i);
        letters.push(i);
    }
    Word::from_trusted(n, letters)
}

/// A word of length `len` with independent uniform letters.
pub fn random_word(n: usize, len: usize, rng: &mut impl Rng) -> Word {
    Word::from_trusted(n, (0..len).map(|_| rng.gen_range(1..n)).collect())
}

/// Applies `moves` uniformly chosen braid relations to `w`.
pub fn random_walk(w: &Word, moves: usize, rng: &mut impl Rng) -> Word {
    let mut current = w.clone();
    for _ in 0..moves {
        let options: Vec<_> = current.moves().collect();
        if options.is_empty() {
            break;
        }
        let (pos, rel) = options[rng.gen_range(0..options.len())];
        current.apply_in_place(pos, rel).expect("move found by relation_at");
    }
    current
}
