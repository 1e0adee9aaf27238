//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library beyond constructing words.

#![allow(dead_code)]

use std::collections::BTreeSet;

use permword::Word;

pub fn w(n: usize, s: &str) -> Word {
    Word::parse(n, s).unwrap()
}

/// Tile counts `[I, II, III]` and the terminal word, from plain list
/// rewriting of the leftmost factor `-i j` (negative entries are inverses).
pub fn naive_reverse(mut word: Vec<i64>) -> (Vec<i64>, [usize; 3]) {
    let mut counts = [0; 3];
    while let Some(p) = (0..word.len().saturating_sub(1)).find(|&p| word[p] < 0 && word[p + 1] > 0) {
        let (i, j) = (-word[p], word[p + 1]);
        let replacement = if i == j {
            counts[2] += 1;
            vec![]
        } else if (i - j).abs() == 1 {
            counts[0] += 1;
            vec![j, i, -j, -i]
        } else {
            counts[1] += 1;
            vec![j, -i]
        };
        word.splice(p..p + 2, replacement);
    }
    (word, counts)
}

/// `ū v` as signed integers.
pub fn quotient(u: &[usize], v: &[usize]) -> Vec<i64> {
    u.iter()
        .rev()
        .map(|&i| -(i as i64))
        .chain(v.iter().map(|&j| j as i64))
        .collect()
}

/// All permutations of `0..n` as image vectors.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for k in 0..n {
            let mut q = p.clone();
            q.insert(k, n - 1);
            out.push(q);
        }
    }
    out
}

/// Final position of every strand, by swapping positions letter by letter.
pub fn strand_images(n: usize, letters: &[usize]) -> Vec<usize> {
    let mut at: Vec<usize> = (0..n).collect(); // at[position] = strand
    for &i in letters {
        at.swap(i - 1, i);
    }
    let mut image = vec![0; n];
    for (pos, &strand) in at.iter().enumerate() {
        image[strand] = pos;
    }
    image
}

/// Pairs of strands (1-based) that end up in swapped order.
pub fn inversions(image: &[usize]) -> BTreeSet<(usize, usize)> {
    let n = image.len();
    let mut out = BTreeSet::new();
    for p in 0..n {
        for q in p + 1..n {
            if image[p] > image[q] {
                out.insert((p + 1, q + 1));
            }
        }
    }
    out
}

/// The join of two permutations in the weak order: the shortest permutation
/// whose inversions contain both inversion sets.
pub fn weak_join(a: &[usize], b: &[usize]) -> Vec<usize> {
    let need: BTreeSet<_> = inversions(a).union(&inversions(b)).copied().collect();
    permutations(a.len())
        .into_iter()
        .filter(|p| need.is_subset(&inversions(p)))
        .min_by_key(|p| inversions(p).len())
        .expect("the flip is above everything")
}
