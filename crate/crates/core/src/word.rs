//! Words over the transpositions `s_1, ..., s_{n-1}`, their signed (extended)
//! counterparts, the permutations they represent, and braid-relation
//! rewriting.
//!
//! Products follow the diagram convention: `uv` means "`u` first, then `v`",
//! i.e. crossings are stacked from top to bottom. A [`Permutation`] maps the
//! initial position of a strand to its final position.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::Name2;

/// An n-expression: a word in the generators `s_1, ..., s_{n-1}`.
///
/// Letters hold generator indices (so `s_2` is stored as `2`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    n: usize,
    letters: Vec<usize>,
}

impl Word {
    pub fn new(n: usize, letters: Vec<usize>) -> Result<Self> {
        check_letters(n, letters.iter().copied())?;
        Ok(Self { n, letters })
    }

    pub fn empty(n: usize) -> Result<Self> {
        Self::new(n, Vec::new())
    }

    /// Builds a word without validating the letters. Callers must guarantee
    /// `1 <= letter < n` for every letter.
    pub(crate) fn from_trusted(n: usize, letters: Vec<usize>) -> Self {
        debug_assert!(n >= 1 && letters.iter().all(|&l| l >= 1 && l < n));
        Self { n, letters }
    }

    /// Parses the dotted text form (`"1.2.1"`, `"e"` for the empty word).
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let letters = parse_indices(text)?
            .into_iter()
            .map(|x| usize::try_from(x).map_err(|_| Error::Parse(format!("negative letter {x} in a positive word"))))
            .collect::<Result<Vec<_>>>()?;
        Self::new(n, letters)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Same letters viewed with a different strand count.
    pub fn with_strands(&self, n: usize) -> Result<Self> {
        Self::new(n, self.letters.clone())
    }

    pub fn concat(&self, other: &Word) -> Result<Word> {
        same_strands(self, other)?;
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word::from_trusted(self.n, letters))
    }

    pub fn eval(&self) -> Permutation {
        // position -> strand, then invert
        let mut at = (0..self.n).collect::<Vec<_>>();
        for &i in &self.letters {
            at.swap(i - 1, i);
        }
        let mut images = vec![0; self.n];
        for (pos, &strand) in at.iter().enumerate() {
            images[strand] = pos;
        }
        Permutation { images }
    }

    /// True iff no two strands cross twice in the braid diagram.
    pub fn is_reduced(&self) -> bool {
        let mut at = (0..self.n).collect::<Vec<_>>();
        let mut crossed = vec![false; self.n * self.n];
        for &i in &self.letters {
            let (a, b) = (at[i - 1], at[i]);
            let key = a.min(b) * self.n + a.max(b);
            if crossed[key] {
                return false;
            }
            crossed[key] = true;
            at.swap(i - 1, i);
        }
        true
    }

    /// The relation whose left-hand side starts at `pos`, if any.
    ///
    /// At most one relation can apply at a given position: a type I pattern
    /// needs adjacent indices, a type II pattern distant ones.
    pub fn relation_at(&self, pos: usize) -> Option<Relation> {
        let w = &self.letters;
        let (&a, &b) = (w.get(pos)?, w.get(pos + 1)?);
        if a.abs_diff(b) >= 2 {
            Some(Relation::TypeII { i: a, j: b })
        } else if a.abs_diff(b) == 1 && w.get(pos + 2) == Some(&a) {
            Some(Relation::TypeI { i: a, j: b })
        } else {
            None
        }
    }

    /// All single-relation moves available on this word.
    pub fn moves(&self) -> impl Iterator<Item = (usize, Relation)> + '_ {
        (0..self.letters.len()).filter_map(|pos| self.relation_at(pos).map(|r| (pos, r)))
    }

    pub fn apply(&self, pos: usize, relation: Relation) -> Result<Word> {
        let mut out = self.clone();
        out.apply_in_place(pos, relation)?;
        Ok(out)
    }

    pub(crate) fn apply_in_place(&mut self, pos: usize, relation: Relation) -> Result<()> {
        let lhs = relation.lhs();
        let end = pos + lhs.len();
        if end > self.letters.len() || self.letters[pos..end] != lhs[..] {
            return Err(Error::PatternMismatch { pos });
        }
        self.letters[pos..end].copy_from_slice(&relation.rhs());
        Ok(())
    }

    pub fn is_equivalent(&self, other: &Word) -> Result<bool> {
        same_strands(self, other)?;
        Ok(self.eval() == other.eval())
    }

    /// The word read backwards with every letter inverted, as an extended word.
    pub fn inverse(&self) -> ExtendedWord {
        ExtendedWord {
            n: self.n,
            letters: self.letters.iter().rev().map(|&i| ExtLetter::Neg(i)).collect(),
        }
    }

    pub fn to_extended(&self) -> ExtendedWord {
        ExtendedWord {
            n: self.n,
            letters: self.letters.iter().map(|&i| ExtLetter::Pos(i)).collect(),
        }
    }
}

/// Serialized as the dotted text form; the strand count is not part of it,
/// so deserializing uses the smallest count covering every letter.
impl Serialize for Word {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        let letters = parse_indices(&text).map_err(serde::de::Error::custom)?;
        let n = letters.iter().max().map_or(1, |&m| m.unsigned_abs() as usize + 1);
        Word::parse(n, &text).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<String> = self.letters.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

/// `uv` requires both words to live on the same strand count.
pub(crate) fn same_strands(u: &Word, v: &Word) -> Result<()> {
    if u.n != v.n {
        return Err(Error::StrandCountMismatch { left: u.n, right: v.n });
    }
    Ok(())
}

fn check_letters(n: usize, letters: impl IntoIterator<Item = usize>) -> Result<()> {
    if n == 0 {
        return Err(Error::ZeroStrands);
    }
    for index in letters {
        if index == 0 || index >= n {
            return Err(Error::GeneratorOutOfRange { index, n });
        }
    }
    Ok(())
}

fn parse_indices(text: &str) -> Result<Vec<i64>> {
    let text = text.trim();
    if text == "e" || text.is_empty() {
        return Ok(Vec::new());
    }
    text.split('.')
        .map(|tok| {
            tok.trim()
                .parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad letter {tok:?} in {text:?}")))
        })
        .collect()
}

/// A letter of an extended expression: `s_i` or its formal inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ExtLetter {
    Pos(usize),
    Neg(usize),
}

impl ExtLetter {
    pub fn index(self) -> usize {
        match self {
            ExtLetter::Pos(i) | ExtLetter::Neg(i) => i,
        }
    }

    pub fn is_positive(self) -> bool {
        matches!(self, ExtLetter::Pos(_))
    }

    pub fn inverse(self) -> Self {
        match self {
            ExtLetter::Pos(i) => ExtLetter::Neg(i),
            ExtLetter::Neg(i) => ExtLetter::Pos(i),
        }
    }
}

impl fmt::Display for ExtLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtLetter::Pos(i) => write!(f, "{i}"),
            ExtLetter::Neg(i) => write!(f, "-{i}"),
        }
    }
}

/// A word over `s_i` and the formal inverses `s̄_i`: the state of reversing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExtendedWord {
    n: usize,
    letters: Vec<ExtLetter>,
}

impl ExtendedWord {
    pub fn new(n: usize, letters: Vec<ExtLetter>) -> Result<Self> {
        check_letters(n, letters.iter().map(|l| l.index()))?;
        Ok(Self { n, letters })
    }

    pub(crate) fn from_trusted(n: usize, letters: Vec<ExtLetter>) -> Self {
        Self { n, letters }
    }

    /// Parses `"-1.-2.-1.2.1.2"` (negative entries are inverse letters).
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let letters = parse_indices(text)?
            .into_iter()
            .map(|x| {
                let i = x.unsigned_abs() as usize;
                if x < 0 {
                    ExtLetter::Neg(i)
                } else {
                    ExtLetter::Pos(i)
                }
            })
            .collect();
        Self::new(n, letters)
    }

    /// The word `ū v` whose reversing compares `u` and `v`.
    pub fn quotient(u: &Word, v: &Word) -> Result<Self> {
        same_strands(u, v)?;
        let mut w = u.inverse();
        w.letters.extend(v.letters.iter().map(|&i| ExtLetter::Pos(i)));
        Ok(w)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn letters(&self) -> &[ExtLetter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Splits a word of shape `positive · negative` into `(v', u')` with the
    /// word equal to `v' ū'`. Returns `None` for any other shape.
    pub fn split_terminal(&self) -> Option<(Word, Word)> {
        let cut = self
            .letters
            .iter()
            .position(|l| !l.is_positive())
            .unwrap_or(self.letters.len());
        if self.letters[cut..].iter().any(|l| l.is_positive()) {
            return None;
        }
        let v_prime = self.letters[..cut].iter().map(|l| l.index()).collect();
        let u_prime = self.letters[cut..].iter().rev().map(|l| l.index()).collect();
        Some((Word::from_trusted(self.n, v_prime), Word::from_trusted(self.n, u_prime)))
    }
}

impl fmt::Display for ExtendedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("e");
        }
        let parts: Vec<String> = self.letters.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

impl FromStr for ExtLetter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let x: i64 = s.parse().map_err(|_| Error::Parse(format!("bad letter {s:?}")))?;
        let i = x.unsigned_abs() as usize;
        Ok(if x < 0 { ExtLetter::Neg(i) } else { ExtLetter::Pos(i) })
    }
}

/// A permutation of `{1, ..., n}`, mapping initial strand positions to final
/// positions. Stored 0-based; the public accessors are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
        }
    }

    /// The order-reversing permutation `i -> n + 1 - i`.
    pub fn flip(n: usize) -> Self {
        Self {
            images: (0..n).rev().collect(),
        }
    }

    /// Builds a permutation from 1-based images.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut zero_based = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x > n || seen[x - 1] {
                return Err(Error::InvalidPermutation { n });
            }
            seen[x - 1] = true;
            zero_based.push(x - 1);
        }
        Ok(Self { images: zero_based })
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// Final position of the strand starting at `p` (both 1-based).
    pub fn image(&self, p: usize) -> usize {
        self.images[p - 1] + 1
    }

    /// 1-based images.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|x| x + 1).collect()
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&x| other.images[x]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (p, &x) in self.images.iter().enumerate() {
            images[x] = p;
        }
        Permutation { images }
    }

    /// All pairs `{p, q}` with `(q - p)(π(q) - π(p)) < 0`.
    pub fn inversion_set(&self) -> BTreeSet<Name2> {
        let n = self.images.len();
        let mut out = BTreeSet::new();
        for p in 0..n {
            for q in p + 1..n {
                if self.images[q] < self.images[p] {
                    out.insert(Name2::new(p + 1, q + 1).expect("distinct"));
                }
            }
        }
        out
    }

    pub fn length(&self) -> usize {
        let n = self.images.len();
        (0..n)
            .map(|p| (p + 1..n).filter(|&q| self.images[q] < self.images[p]).count())
            .sum()
    }
}

/// Which braid relation a rewrite step uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RelationKind {
    #[serde(rename = "I")]
    TypeI,
    #[serde(rename = "II")]
    TypeII,
}

/// `LR` when the pattern's first letter has the smaller index (e.g. `s1 s2 s1`
/// or `s1 s3`), `RL` otherwise. Inverting a step flips the direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Direction {
    LR,
    RL,
}

/// A braid relation oriented from its left-hand side to its right-hand side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Relation {
    /// `s_i s_j s_i -> s_j s_i s_j` with `|i - j| = 1`.
    TypeI { i: usize, j: usize },
    /// `s_i s_j -> s_j s_i` with `|i - j| >= 2`.
    TypeII { i: usize, j: usize },
}

impl Relation {
    pub fn type_i(i: usize, j: usize) -> Result<Self> {
        if i.abs_diff(j) != 1 || i == 0 || j == 0 {
            return Err(Error::InvalidShape(format!("type I needs |i-j| = 1, got s{i}, s{j}")));
        }
        Ok(Relation::TypeI { i, j })
    }

    pub fn type_ii(i: usize, j: usize) -> Result<Self> {
        if i.abs_diff(j) < 2 || i == 0 || j == 0 {
            return Err(Error::InvalidShape(format!("type II needs |i-j| >= 2, got s{i}, s{j}")));
        }
        Ok(Relation::TypeII { i, j })
    }

    pub fn kind(self) -> RelationKind {
        match self {
            Relation::TypeI { .. } => RelationKind::TypeI,
            Relation::TypeII { .. } => RelationKind::TypeII,
        }
    }

    pub fn direction(self) -> Direction {
        let (Relation::TypeI { i, j } | Relation::TypeII { i, j }) = self;
        if i < j {
            Direction::LR
        } else {
            Direction::RL
        }
    }

    pub fn inverse(self) -> Self {
        match self {
            Relation::TypeI { i, j } => Relation::TypeI { i: j, j: i },
            Relation::TypeII { i, j } => Relation::TypeII { i: j, j: i },
        }
    }

    pub fn lhs(self) -> Vec<usize> {
        match self {
            Relation::TypeI { i, j } => vec![i, j, i],
            Relation::TypeII { i, j } => vec![i, j],
        }
    }

    pub fn rhs(self) -> Vec<usize> {
        self.inverse().lhs()
    }

    pub fn width(self) -> usize {
        match self {
            Relation::TypeI { .. } => 3,
            Relation::TypeII { .. } => 2,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, s: &str) -> Word {
        Word::parse(n, s).unwrap()
    }

    #[test]
    fn eval_of_empty_word_is_identity() {
        assert_eq!(w(4, "e").eval(), Permutation::identity(4));
    }

    #[test]
    fn both_flip_expressions_evaluate_to_the_flip() {
        assert_eq!(w(4, "1.2.1.3.2.1").eval(), Permutation::flip(4));
        assert_eq!(w(4, "3.2.3.1.2.3").eval(), Permutation::flip(4));
        assert_eq!(w(4, "3.2.3.1.2.3").eval().images(), vec![4, 3, 2, 1]);
    }

    #[test]
    fn inversion_sets() {
        assert!(Permutation::identity(4).inversion_set().is_empty());
        assert_eq!(Permutation::flip(4).inversion_set().len(), 6);
        let inv: Vec<_> = w(3, "1.2").eval().inversion_set().into_iter().collect();
        assert_eq!(inv, vec![Name2::new(1, 2).unwrap(), Name2::new(1, 3).unwrap()]);
    }

    #[test]
    fn reducedness() {
        assert!(!w(2, "1.1").is_reduced());
        assert!(w(4, "1.2.1.3.2.1").is_reduced());
        assert!(w(4, "1.3.2.1.3.2").is_reduced());
        assert!(!w(3, "1.2.1.2").is_reduced());
    }

    #[test]
    fn relations_apply_and_mismatch() {
        let r = w(3, "1.2.1").apply(0, Relation::type_i(1, 2).unwrap()).unwrap();
        assert_eq!(r, w(3, "2.1.2"));
        let r = w(4, "1.3").apply(0, Relation::type_ii(1, 3).unwrap()).unwrap();
        assert_eq!(r, w(4, "3.1"));
        assert_eq!(
            w(4, "1.3.2").apply(0, Relation::type_i(1, 2).unwrap()),
            Err(Error::PatternMismatch { pos: 0 })
        );
        assert!(Relation::type_i(1, 3).is_err());
        assert!(Relation::type_ii(1, 2).is_err());
    }

    #[test]
    fn relation_at_detects_both_kinds() {
        let u = w(5, "1.2.1.4");
        assert_eq!(u.relation_at(0), Some(Relation::TypeI { i: 1, j: 2 }));
        assert_eq!(u.relation_at(1), None);
        assert_eq!(u.relation_at(2), Some(Relation::TypeII { i: 1, j: 4 }));
        assert_eq!(u.relation_at(3), None);
    }

    #[test]
    fn equivalence() {
        assert!(w(3, "1.2.1").is_equivalent(&w(3, "2.1.2")).unwrap());
        assert!(w(4, "1.2.1.3.2.1").is_equivalent(&w(4, "3.2.3.1.2.3")).unwrap());
        assert!(!w(3, "1").is_equivalent(&w(3, "2")).unwrap());
        assert_eq!(
            w(3, "1").is_equivalent(&w(4, "1")),
            Err(Error::StrandCountMismatch { left: 3, right: 4 })
        );
    }

    #[test]
    fn parsing_and_display() {
        assert_eq!(w(4, "1.2.1").to_string(), "1.2.1");
        assert_eq!(w(4, "e").to_string(), "e");
        assert!(Word::parse(3, "1.3").is_err());
        assert!(Word::parse(3, "1.x").is_err());
        assert!(Word::parse(3, "-1").is_err());
        let x = ExtendedWord::parse(3, "-1.-2.-1.2.1.2").unwrap();
        assert_eq!(x.to_string(), "-1.-2.-1.2.1.2");
        assert_eq!(x.letters()[0], ExtLetter::Neg(1));
    }

    #[test]
    fn quotient_and_terminal_split() {
        let u = w(3, "1.2");
        let q = ExtendedWord::quotient(&u, &w(3, "2")).unwrap();
        assert_eq!(q.to_string(), "-2.-1.2");
        let t = ExtendedWord::parse(4, "3.1.-2.-1").unwrap();
        let (vp, up) = t.split_terminal().unwrap();
        assert_eq!(vp, w(4, "3.1"));
        assert_eq!(up, w(4, "1.2"));
        assert!(ExtendedWord::parse(3, "-1.2").unwrap().split_terminal().is_none());
    }

    #[test]
    fn permutation_composition_follows_word_concatenation() {
        let u = w(4, "1.2.3");
        let v = w(4, "2.1");
        assert_eq!(u.concat(&v).unwrap().eval(), u.eval().then(&v.eval()));
        assert!(Permutation::from_images(&[1, 1, 3]).is_err());
    }
}
