//! Letter names and the lower-bound functionals built from them.
//!
//! The name of a letter in a reduced word is the pair of initial positions of
//! the two strands crossing there. Comparing the name sequences of two
//! equivalent reduced words bounds their distance from below: every type I
//! relation reorders exactly one triple of names, every type II relation
//! exactly one disjoint pair of names.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{same_strands, Word};

/// An unordered pair `{p, q}` of strand labels, stored with `p < q`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[usize; 2]", into = "[usize; 2]")]
pub struct Name2 {
    p: usize,
    q: usize,
}

impl Name2 {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if a == b {
            return Err(Error::InvalidShape(format!("degenerate pair {{{a},{b}}}")));
        }
        Ok(Self {
            p: a.min(b),
            q: a.max(b),
        })
    }

    pub fn p(self) -> usize {
        self.p
    }

    pub fn q(self) -> usize {
        self.q
    }

    pub fn contains(self, x: usize) -> bool {
        self.p == x || self.q == x
    }

    pub fn is_disjoint(self, other: Name2) -> bool {
        !other.contains(self.p) && !other.contains(self.q)
    }
}

impl TryFrom<[usize; 2]> for Name2 {
    type Error = Error;
    fn try_from(v: [usize; 2]) -> Result<Self> {
        Name2::new(v[0], v[1])
    }
}

impl From<Name2> for [usize; 2] {
    fn from(n: Name2) -> Self {
        [n.p, n.q]
    }
}

impl fmt::Display for Name2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.p, self.q)
    }
}

/// A triple `{p, q, r}`, sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[usize; 3]", into = "[usize; 3]")]
pub struct Name3([usize; 3]);

impl Name3 {
    pub fn new(a: usize, b: usize, c: usize) -> Result<Self> {
        let mut v = [a, b, c];
        v.sort_unstable();
        if v[0] == v[1] || v[1] == v[2] {
            return Err(Error::InvalidShape(format!("degenerate triple {a},{b},{c}")));
        }
        Ok(Self(v))
    }

    pub fn entries(self) -> [usize; 3] {
        self.0
    }

    /// The three pairs `{p,q}, {p,r}, {q,r}`.
    pub fn pairs(self) -> [Name2; 3] {
        let [p, q, r] = self.0;
        [Name2 { p, q }, Name2 { p, q: r }, Name2 { p: q, q: r }]
    }
}

impl TryFrom<[usize; 3]> for Name3 {
    type Error = Error;
    fn try_from(v: [usize; 3]) -> Result<Self> {
        Name3::new(v[0], v[1], v[2])
    }
}

impl From<Name3> for [usize; 3] {
    fn from(n: Name3) -> Self {
        n.0
    }
}

impl fmt::Display for Name3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [p, q, r] = self.0;
        write!(f, "{{{p},{q},{r}}}")
    }
}

/// A pair of disjoint pairs `{{p,q},{p',q'}}`, sorted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[Name2; 2]", into = "[Name2; 2]")]
pub struct Name22(Name2, Name2);

impl Name22 {
    pub fn new(a: Name2, b: Name2) -> Result<Self> {
        if !a.is_disjoint(b) {
            return Err(Error::InvalidShape(format!("pairs {a} and {b} are not disjoint")));
        }
        Ok(if a < b { Self(a, b) } else { Self(b, a) })
    }

    pub fn pairs(self) -> [Name2; 2] {
        [self.0, self.1]
    }
}

impl TryFrom<[Name2; 2]> for Name22 {
    type Error = Error;
    fn try_from(v: [Name2; 2]) -> Result<Self> {
        Name22::new(v[0], v[1])
    }
}

impl From<Name22> for [Name2; 2] {
    fn from(n: Name22) -> Self {
        [n.0, n.1]
    }
}

impl fmt::Display for Name22 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.0, self.1)
    }
}

/// The sequence of letter names of a reduced word.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NameSequence {
    n: usize,
    names: Vec<Name2>,
}

impl NameSequence {
    pub fn new(n: usize, names: Vec<Name2>) -> Self {
        Self { n, names }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn names(&self) -> &[Name2] {
        &self.names
    }

    pub fn reversed(&self) -> Self {
        Self {
            n: self.n,
            names: self.names.iter().rev().copied().collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.names).expect("pairs serialize")
    }
}

/// Names of the successive letters of a reduced word.
pub fn name_sequence(word: &Word) -> Result<NameSequence> {
    if !word.is_reduced() {
        return Err(Error::NotReduced);
    }
    Ok(NameSequence::new(word.n(), names_unchecked(word)))
}

/// Letter names without the reducedness check (still well defined, but may
/// repeat when strands cross twice).
pub(crate) fn names_unchecked(word: &Word) -> Vec<Name2> {
    let mut at: Vec<usize> = (1..=word.n()).collect();
    word.letters()
        .iter()
        .map(|&i| {
            let name = Name2 {
                p: at[i - 1].min(at[i]),
                q: at[i - 1].max(at[i]),
            };
            at.swap(i - 1, i);
            name
        })
        .collect()
}

/// Index of every name in `s`, after checking that `t` is a rearrangement.
fn positions(s: &NameSequence, t: &NameSequence) -> Result<(HashMap<Name2, usize>, HashMap<Name2, usize>)> {
    let index = |seq: &NameSequence| -> Result<HashMap<Name2, usize>> {
        let mut m = HashMap::with_capacity(seq.names.len());
        for (k, &name) in seq.names.iter().enumerate() {
            if m.insert(name, k).is_some() {
                return Err(Error::IncomparableSequences);
            }
        }
        Ok(m)
    };
    if s.n != t.n || s.names.len() != t.names.len() {
        return Err(Error::IncomparableSequences);
    }
    let (a, b) = (index(s)?, index(t)?);
    if a.keys().any(|k| !b.contains_key(k)) {
        return Err(Error::IncomparableSequences);
    }
    Ok((a, b))
}

/// Number of triples whose derived pairs appear in a different relative
/// order in `s` and `t`.
pub fn i3(s: &NameSequence, t: &NameSequence) -> Result<usize> {
    let (a, b) = positions(s, t)?;
    let n = s.n;
    let mut count = 0;
    for p in 1..=n {
        for q in p + 1..=n {
            for r in q + 1..=n {
                let pairs = Name3([p, q, r]).pairs();
                let present: Vec<(usize, usize)> = pairs.iter().filter_map(|x| Some((*a.get(x)?, b[x]))).collect();
                let changed = present
                    .iter()
                    .enumerate()
                    .any(|(k, &(x0, y0))| present[k + 1..].iter().any(|&(x1, y1)| (x0 < x1) != (y0 < y1)));
                if changed {
                    count += 1;
                }
            }
        }
    }
    Ok(count)
}

/// Counts inverted pairs of names; returns `(disjoint, all)`.
fn pair_inversions(s: &NameSequence, t: &NameSequence) -> Result<(usize, usize)> {
    let (_, b) = positions(s, t)?;
    let image: Vec<usize> = s.names.iter().map(|x| b[x]).collect();
    let (mut disjoint, mut all) = (0, 0);
    for x in 0..image.len() {
        for y in x + 1..image.len() {
            if image[x] > image[y] {
                all += 1;
                if s.names[x].is_disjoint(s.names[y]) {
                    disjoint += 1;
                }
            }
        }
    }
    Ok((disjoint, all))
}

/// Number of disjoint pairs of names whose relative order differs.
pub fn i22(s: &NameSequence, t: &NameSequence) -> Result<usize> {
    pair_inversions(s, t).map(|(d, _)| d)
}

/// Number of pairs of names (disjoint or not) whose relative order differs.
pub fn inv_count(s: &NameSequence, t: &NameSequence) -> Result<usize> {
    pair_inversions(s, t).map(|(_, all)| all)
}

/// The name-based lower bound on the distance, split per relation type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LowerBound {
    /// Minimum number of type I relations in any derivation.
    pub i3: usize,
    /// Minimum number of type II relations in any derivation.
    pub i22: usize,
}

impl LowerBound {
    pub fn total(self) -> usize {
        self.i3 + self.i22
    }
}

pub fn lower_bound(u: &Word, v: &Word) -> Result<LowerBound> {
    same_strands(u, v)?;
    let (s, t) = (name_sequence(u)?, name_sequence(v)?);
    if u.eval() != v.eval() {
        return Err(Error::NotEquivalent);
    }
    Ok(LowerBound {
        i3: i3(&s, &t)?,
        i22: i22(&s, &t)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, s: &str) -> Word {
        Word::parse(n, s).unwrap()
    }

    fn pairs(v: &[(usize, usize)]) -> Vec<Name2> {
        v.iter().map(|&(p, q)| Name2::new(p, q).unwrap()).collect()
    }

    #[test]
    fn name_sequences_of_the_small_flips() {
        assert_eq!(
            name_sequence(&w(3, "1.2.1")).unwrap().names(),
            pairs(&[(1, 2), (1, 3), (2, 3)])
        );
        assert_eq!(
            name_sequence(&w(3, "2.1.2")).unwrap().names(),
            pairs(&[(2, 3), (1, 3), (1, 2)])
        );
        assert!(name_sequence(&w(3, "e")).unwrap().names().is_empty());
        assert_eq!(name_sequence(&w(3, "1.1")), Err(Error::NotReduced));
    }

    #[test]
    fn functionals_vanish_on_identical_sequences() {
        let s = name_sequence(&w(4, "1.2.1.3.2.1")).unwrap();
        assert_eq!(i3(&s, &s).unwrap(), 0);
        assert_eq!(i22(&s, &s).unwrap(), 0);
        assert_eq!(inv_count(&s, &s).unwrap(), 0);
    }

    #[test]
    fn flip_pair_values() {
        let s = name_sequence(&w(4, "1.2.1.3.2.1")).unwrap();
        let t = name_sequence(&w(4, "3.2.1.3.2.3")).unwrap();
        assert_eq!(t, s.reversed());
        assert_eq!(i3(&s, &t).unwrap(), 4);
        assert_eq!(i22(&s, &t).unwrap(), 3);
        assert_eq!(inv_count(&s, &t).unwrap(), 15);
        let s3 = name_sequence(&w(3, "1.2.1")).unwrap();
        let t3 = name_sequence(&w(3, "2.1.2")).unwrap();
        assert_eq!(inv_count(&s3, &t3).unwrap(), 3);
        assert_eq!(i22(&s3, &t3).unwrap(), 0);
    }

    #[test]
    fn lower_bound_examples() {
        let lb = lower_bound(&w(3, "1.2.1"), &w(3, "2.1.2")).unwrap();
        assert_eq!((lb.i3, lb.i22), (1, 0));
        let lb = lower_bound(&w(4, "1.2.1.3.2.1"), &w(4, "3.2.3.1.2.3")).unwrap();
        assert_eq!((lb.i3, lb.i22, lb.total()), (4, 2, 6));
        assert_eq!(lower_bound(&w(3, "1"), &w(3, "2")), Err(Error::NotEquivalent));
        assert_eq!(lower_bound(&w(3, "1.1"), &w(3, "2.2")), Err(Error::NotReduced));
    }

    #[test]
    fn incomparable_sequences_are_rejected() {
        let s = name_sequence(&w(3, "1.2")).unwrap();
        let t = name_sequence(&w(3, "2.1")).unwrap();
        assert_eq!(i3(&s, &t), Err(Error::IncomparableSequences));
        let short = name_sequence(&w(3, "1")).unwrap();
        assert_eq!(i22(&s, &short), Err(Error::IncomparableSequences));
    }

    #[test]
    fn name_types_normalize_and_validate() {
        assert_eq!(Name2::new(3, 1).unwrap(), Name2::new(1, 3).unwrap());
        assert!(Name2::new(2, 2).is_err());
        assert_eq!(Name3::new(3, 1, 2).unwrap().entries(), [1, 2, 3]);
        assert!(Name3::new(1, 1, 2).is_err());
        let a = Name2::new(1, 2).unwrap();
        assert!(Name22::new(a, Name2::new(2, 3).unwrap()).is_err());
        let json = serde_json::to_string(&Name22::new(Name2::new(3, 4).unwrap(), a).unwrap()).unwrap();
        assert_eq!(json, "[[1,2],[3,4]]");
    }

    #[test]
    fn sequence_json_is_a_list_of_pairs() {
        let s = name_sequence(&w(3, "1.2.1")).unwrap();
        assert_eq!(s.to_json(), "[[1,2],[1,3],[2,3]]");
    }
}
