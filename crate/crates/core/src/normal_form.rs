//! Normal expressions and the area-decreasing derivation towards them.
//!
//! Every permutation has a unique expression `s_{1,f(1)} s_{2,f(2)} ... s_{n,f(n)}`
//! with `f(i) <= i`, where `s_{j,i} = s_{j-1} ... s_i` is a descending run.
//! A reduced word is carried to that normal expression by repeatedly pulling
//! the last strand to the end of the word, each relation shrinking the number
//! of diagram squares to the right of that strand by one or two.

use std::fmt;

use crate::derivation::{Derivation, Step};
use crate::error::{Error, Result};
use crate::word::{Permutation, Relation, Word};

/// `s_{j,i} = s_{j-1} s_{j-2} ... s_i`, empty when `j = i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct DescendingRun {
    top: usize,
    bottom: usize,
}

impl DescendingRun {
    pub fn new(top: usize, bottom: usize) -> Result<Self> {
        if bottom == 0 || bottom > top {
            return Err(Error::InvalidShape(format!(
                "run s_{{{top},{bottom}}} needs top >= bottom >= 1"
            )));
        }
        Ok(Self { top, bottom })
    }

    pub fn top(self) -> usize {
        self.top
    }

    pub fn bottom(self) -> usize {
        self.bottom
    }

    pub fn len(self) -> usize {
        self.top - self.bottom
    }

    pub fn is_empty(self) -> bool {
        self.top == self.bottom
    }

    pub fn letters(self) -> impl Iterator<Item = usize> {
        (self.bottom..self.top).rev()
    }
}

impl fmt::Display for DescendingRun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s_{{{},{}}}", self.top, self.bottom)
    }
}

/// The function `f` of a normal expression, stored 1-based (`f[k-1] = f(k)`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NormalShape {
    f: Vec<usize>,
}

impl NormalShape {
    pub fn new(f: Vec<usize>) -> Result<Self> {
        if f.is_empty() {
            return Err(Error::ZeroStrands);
        }
        for (k, &x) in f.iter().enumerate() {
            if x == 0 || x > k + 1 {
                return Err(Error::InvalidShape(format!(
                    "f({}) = {x} violates 1 <= f(i) <= i",
                    k + 1
                )));
            }
        }
        Ok(Self { f })
    }

    pub fn identity(n: usize) -> Self {
        Self { f: (1..=n).collect() }
    }

    pub fn n(&self) -> usize {
        self.f.len()
    }

    pub fn values(&self) -> &[usize] {
        &self.f
    }

    pub fn runs(&self) -> impl Iterator<Item = DescendingRun> + '_ {
        self.f
            .iter()
            .enumerate()
            .map(|(k, &x)| DescendingRun { top: k + 1, bottom: x })
    }

    pub fn expand(&self) -> Word {
        let letters = self.runs().flat_map(|r| r.letters()).collect();
        Word::from_trusted(self.n(), letters)
    }

    /// Reads the shape off a permutation, peeling runs from the largest
    /// non-fixed point downwards.
    pub fn of_permutation(p: &Permutation) -> Self {
        let n = p.n();
        let mut images = p.images();
        let mut f: Vec<usize> = (1..=n).collect();
        while let Some(m) = (1..=n).rev().find(|&m| images[m - 1] != m) {
            let k = images[m - 1];
            f[m - 1] = k;
            // undo the run s_{m,k}, which carried the strand at m down to k
            for x in images.iter_mut() {
                if *x == k {
                    *x = m;
                } else if *x > k && *x <= m {
                    *x -= 1;
                }
            }
        }
        Self { f }
    }

    /// All `n!` shapes on `n` strands.
    pub fn all(n: usize) -> Vec<NormalShape> {
        let mut out = vec![Vec::new()];
        for k in 1..=n {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<usize>| {
                    (1..=k).map(move |x| {
                        let mut next = prefix.clone();
                        next.push(x);
                        next
                    })
                })
                .collect();
        }
        out.into_iter().map(|f| NormalShape { f }).collect()
    }
}

/// The unique normal expression of `p`.
pub fn nf_of_perm(p: &Permutation) -> Word {
    NormalShape::of_permutation(p).expand()
}

/// The normal expression equivalent to `word`.
pub fn nf(word: &Word) -> Word {
    nf_of_perm(&word.eval())
}

/// Position (1-based) of the strand starting at `strand`, before and after
/// each letter.
fn track(word: &Word, strand: usize) -> Vec<(usize, usize)> {
    let mut pos = strand;
    word.letters()
        .iter()
        .map(|&i| {
            let before = pos;
            if pos == i {
                pos = i + 1;
            } else if pos == i + 1 {
                pos = i;
            }
            (before, pos)
        })
        .collect()
}

/// Number of whole unit squares to the right of the last strand, with the
/// diagram drawn on an `(n-1) x len` grid.
pub fn area_right(word: &Word) -> usize {
    let n = word.n();
    track(word, n).into_iter().map(|(a, b)| n - a.max(b)).sum()
}

/// Number of whole unit squares enclosed by the top line and the strands
/// starting at `i` and `i + 1`, up to the row where they cross.
pub fn area_between(word: &Word, i: usize) -> Result<usize> {
    if i == 0 || i >= word.n() {
        return Err(Error::GeneratorOutOfRange { index: i, n: word.n() });
    }
    let left = track(word, i);
    let right = track(word, i + 1);
    let mut area = 0;
    for (&(a0, a1), &(b0, b1)) in left.iter().zip(&right) {
        if a1 > b1 {
            return Ok(area);
        }
        area += b0.min(b1).saturating_sub(a0.max(a1));
    }
    Err(Error::StrandsDoNotCross { i })
}

/// Result of pulling the last strand to the end of a reduced word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PullResult {
    /// Steps carrying the input to `prefix · run`.
    pub derivation: Derivation,
    /// A word on `n - 1` strands (on 1 strand when `n = 1`).
    pub prefix: Word,
    /// The final block `s_{n,k}` carrying the last strand from `n` to `k`.
    pub run: DescendingRun,
}

/// Rewrites a reduced word into the shape `v · s_{n,k}` with `v` avoiding
/// `s_{n-1}`, using at most `area_right(word)` relations.
pub fn pull_last_strand(word: &Word) -> Result<PullResult> {
    if !word.is_reduced() {
        return Err(Error::NotReduced);
    }
    let n = word.n();
    let mut current = word.clone();
    let mut steps = Vec::new();
    loop {
        let letters = current.letters();
        let Some(start) = letters.iter().position(|&x| x == n - 1) else {
            let prefix = Word::from_trusted(n.saturating_sub(1).max(1), letters.to_vec());
            let run = DescendingRun { top: n, bottom: n };
            return Ok(PullResult {
                derivation: Derivation::new(word.clone(), steps),
                prefix,
                run,
            });
        };
        // first block in which the last strand moves: a maximal descending run
        let mut end = start;
        while end + 1 < letters.len() && letters[end + 1] + 1 == letters[end] {
            end += 1;
        }
        let i = letters[end];
        if end + 1 == letters.len() {
            let prefix = Word::from_trusted(n - 1, letters[..start].to_vec());
            let run = DescendingRun { top: n, bottom: i };
            return Ok(PullResult {
                derivation: Derivation::new(word.clone(), steps),
                prefix,
                run,
            });
        }
        let j = letters[end + 1];
        let step = if j.abs_diff(i) >= 2 {
            // s_i s_j -> s_j s_i: one square less
            Step::new(end, Relation::TypeII { i, j })
        } else if j == i + 1 {
            // s_{i+1} s_i s_{i+1} -> s_i s_{i+1} s_i: two squares less
            Step::new(end - 1, Relation::TypeI { i: i + 1, j: i })
        } else {
            return Err(Error::NotReduced);
        };
        current.apply_in_place(step.pos, step.relation)?;
        steps.push(step);
    }
}

/// A derivation from a reduced word to its normal form, of length at most
/// `n(n-1)len/2`.
pub fn derive_to_nf(word: &Word) -> Result<Derivation> {
    if !word.is_reduced() {
        return Err(Error::NotReduced);
    }
    let mut current = word.clone();
    let mut steps = Vec::new();
    let mut active = word.len();
    for m in (2..=word.n()).rev() {
        let prefix = Word::from_trusted(m, current.letters()[..active].to_vec());
        let pulled = pull_last_strand(&prefix)?;
        for &step in pulled.derivation.steps() {
            current.apply_in_place(step.pos, step.relation)?;
            steps.push(step);
        }
        active = pulled.prefix.len();
    }
    Ok(Derivation::new(word.clone(), steps))
}

/// A derivation between two equivalent reduced words, passing through their
/// common normal form.
pub fn derive(u: &Word, v: &Word) -> Result<Derivation> {
    if !u.is_equivalent(v)? {
        return Err(Error::NotEquivalent);
    }
    let to_nf = derive_to_nf(u)?;
    let from_nf = derive_to_nf(v)?.reversed()?;
    to_nf.then(&from_nf)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, s: &str) -> Word {
        Word::parse(n, s).unwrap()
    }

    #[test]
    fn expand_examples() {
        assert!(NormalShape::identity(4).expand().is_empty());
        assert_eq!(
            NormalShape::new(vec![1, 1, 1, 1]).unwrap().expand(),
            w(4, "1.2.1.3.2.1")
        );
        assert_eq!(NormalShape::new(vec![1, 2, 2]).unwrap().expand(), w(3, "2"));
        assert!(NormalShape::new(vec![1, 3]).is_err());
        assert!(DescendingRun::new(2, 3).is_err());
        assert_eq!(
            DescendingRun::new(4, 2).unwrap().letters().collect::<Vec<_>>(),
            vec![3, 2]
        );
    }

    #[test]
    fn normal_forms() {
        assert!(nf_of_perm(&Permutation::identity(5)).is_empty());
        assert_eq!(nf_of_perm(&Permutation::flip(4)), w(4, "1.2.1.3.2.1"));
        assert_eq!(nf(&w(3, "2.1.2")), w(3, "1.2.1"));
        assert_eq!(nf(&w(4, "1.3")), w(4, "1.3"));
        assert_eq!(NormalShape::of_permutation(&w(4, "1.3").eval()).values(), &[1, 1, 3, 3]);
    }

    #[test]
    fn areas() {
        assert_eq!(area_right(&w(4, "e")), 0);
        assert_eq!(area_right(&w(4, "3.2")), 1);
        assert_eq!(area_right(&w(4, "1.2.1")), 0);
        assert_eq!(area_between(&w(4, "1.3.2.1.3.2"), 2).unwrap(), 9);
        assert_eq!(area_between(&w(4, "3.1.2.1.3.2"), 2).unwrap(), 9);
        assert_eq!(area_between(&w(4, "1.3.2.3.1.2"), 2).unwrap(), 9);
        assert_eq!(area_between(&w(4, "1.3"), 2), Err(Error::StrandsDoNotCross { i: 2 }));
        assert_eq!(area_between(&w(3, "2"), 2).unwrap(), 0);
    }

    #[test]
    fn pulling_the_last_strand() {
        let p = pull_last_strand(&w(4, "e")).unwrap();
        assert!(p.derivation.is_empty());
        assert_eq!(p.run, DescendingRun::new(4, 4).unwrap());

        let u = w(4, "3.2.3");
        let p = pull_last_strand(&u).unwrap();
        assert!(p.derivation.len() <= area_right(&u));
        let end = p.derivation.replay().unwrap();
        let expected: Vec<usize> = p.prefix.letters().iter().copied().chain(p.run.letters()).collect();
        assert_eq!(end.letters(), expected.as_slice());
        assert!(!p.prefix.letters().contains(&3));

        let already = w(4, "1.2.1.3.2");
        let p = pull_last_strand(&already).unwrap();
        assert!(p.derivation.is_empty());
        assert_eq!(p.prefix, w(3, "1.2.1"));
        assert_eq!(p.run, DescendingRun::new(4, 2).unwrap());
        assert_eq!(pull_last_strand(&w(3, "2.2")), Err(Error::NotReduced));
    }

    #[test]
    fn derivations_to_normal_form() {
        assert!(derive_to_nf(&w(4, "1.2.1.3.2.1")).unwrap().is_empty());
        let d = derive_to_nf(&w(3, "2.1.2")).unwrap();
        assert!(!d.is_empty() && d.len() <= 9);
        assert_eq!(d.replay().unwrap(), w(3, "1.2.1"));
        let d = derive_to_nf(&w(4, "3.2.3.1.2.3")).unwrap();
        assert!(d.len() <= 36);
        assert_eq!(d.replay().unwrap(), w(4, "1.2.1.3.2.1"));
    }

    #[test]
    fn derive_between_equivalent_words() {
        let u = w(3, "1.2.1");
        assert_eq!(derive(&u, &u).unwrap().replay().unwrap(), u);
        let d = derive(&u, &w(3, "2.1.2")).unwrap();
        assert!(!d.is_empty());
        assert_eq!(d.replay().unwrap(), w(3, "2.1.2"));
        let (a, b) = (w(4, "1.2.1.3.2.1"), w(4, "3.2.3.1.2.3"));
        let d = derive(&a, &b).unwrap();
        assert_eq!(d.replay().unwrap(), b);
        assert!(d.len() <= 4 * 3 * 6);
        assert_eq!(derive(&w(3, "1"), &w(3, "2")), Err(Error::NotEquivalent));
        assert_eq!(derive(&w(3, "1.1"), &w(3, "2.2")), Err(Error::NotReduced));
    }
}
