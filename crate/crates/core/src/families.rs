//! Word families with known distances or reversing counts, and validators
//! that compare the reversing engine against closed-form predictions.
//!
//! The engine's counts are authoritative: a validator never adjusts either
//! side, it reports both.

use std::fmt;

use serde::Serialize;

use crate::diagram::{certify_digon_free, compact, reversing_diagram};
use crate::error::{Error, Result};
use crate::normal_form::DescendingRun;
use crate::reversing::{Reverser, TileCounts};
use crate::word::{ExtLetter, ExtendedWord, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BlockKind {
    A,
    B,
    C,
    D,
}

/// The blocks `a_{i,p} = s_{i+p-1} ... s_i`, `b_{i,p} = s_i ... s_{i+p-1}`,
/// `c_{i,p} = a_{i,p} a_{i+1,p}` and `d_{i,p} = b_{i+1,p} b_{i,p}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockWord {
    pub kind: BlockKind,
    pub i: usize,
    pub p: usize,
    pub word: Word,
}

impl BlockWord {
    pub fn new(kind: BlockKind, i: usize, p: usize, n: usize) -> Result<Self> {
        if i == 0 || p == 0 {
            return Err(Error::InvalidShape(format!(
                "block needs i >= 1 and p >= 1, got i={i}, p={p}"
            )));
        }
        let a = |i: usize| (i..i + p).rev().collect::<Vec<_>>();
        let b = |i: usize| (i..i + p).collect::<Vec<_>>();
        let letters = match kind {
            BlockKind::A => a(i),
            BlockKind::B => b(i),
            BlockKind::C => [a(i), a(i + 1)].concat(),
            BlockKind::D => [b(i + 1), b(i)].concat(),
        };
        Ok(Self {
            kind,
            i,
            p,
            word: Word::new(n, letters)?,
        })
    }
}

/// `u_n = s_{1,1} s_{2,1} ... s_{n,1}` and `v_n = s_{n,1} s_{n,2} ... s_{n,n-1}`,
/// two reduced expressions of the flip with mirror-image name sequences.
pub fn flip_pair(n: usize) -> Result<(Word, Word)> {
    if n < 2 {
        return Err(Error::InvalidShape(format!("flip pair needs n >= 2, got {n}")));
    }
    let u = (1..=n)
        .flat_map(|k| DescendingRun::new(k, 1).expect("k >= 1").letters())
        .collect();
    let v = (1..n)
        .flat_map(|k| DescendingRun::new(n, k).expect("k < n").letters())
        .collect();
    Ok((Word::new(n, u)?, Word::new(n, v)?))
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, m| acc * (n - m) / (m + 1))
}

/// `C(n,3) + 3 C(n,4)`, the exact lower bound for the flip pair.
pub fn flip_lower_bound(n: usize) -> usize {
    binomial(n, 3) + 3 * binomial(n, 4)
}

/// `u = s_{2l} s_{2l-2} ... s_2` and `v = s_1 s_3 ... s_{2l-1}` on `2l + 2`
/// strands.
pub fn quartic_pair(l: usize) -> Result<(Word, Word)> {
    if l == 0 {
        return Err(Error::InvalidShape("quartic pair needs l >= 1".into()));
    }
    let n = 2 * l + 2;
    let u = (1..=l).rev().map(|k| 2 * k).collect();
    let v = (1..=l).map(|k| 2 * k - 1).collect();
    Ok((Word::new(n, u)?, Word::new(n, v)?))
}

/// The closed form `(8l^4 - 23l^2 + 9l + 12) / 6` predicted for the number of
/// nontrivial reversing steps of the quartic pair.
pub fn quartic_total(l: usize) -> i64 {
    let l = l as i64;
    (8 * l.pow(4) - 23 * l.pow(2) + 9 * l + 12) / 6
}

fn bar(w: &Word) -> Vec<ExtLetter> {
    w.inverse().letters().to_vec()
}

fn positive(w: &Word) -> Vec<ExtLetter> {
    w.letters().iter().map(|&i| ExtLetter::Pos(i)).collect()
}

/// Engine run on a block pair against the predicted terminal word and count.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockReport {
    pub family: &'static str,
    pub p: usize,
    pub input: String,
    pub expected_terminal: String,
    pub terminal: String,
    pub expected_count: usize,
    pub counts: TileCounts,
}

impl BlockReport {
    pub fn terminal_ok(&self) -> bool {
        self.terminal == self.expected_terminal
    }

    pub fn count_ok(&self) -> bool {
        self.counts.nontrivial() == self.expected_count
    }

    pub fn passed(&self) -> bool {
        self.terminal_ok() && self.count_ok()
    }

    pub fn mismatches(&self) -> Vec<Error> {
        let mut out = Vec::new();
        if !self.terminal_ok() {
            out.push(Error::Mismatch {
                what: format!("{} terminal word, p={}", self.family, self.p),
                expected: self.expected_terminal.clone(),
                actual: self.terminal.clone(),
            });
        }
        if !self.count_ok() {
            out.push(Error::Mismatch {
                what: format!("{} nontrivial steps, p={}", self.family, self.p),
                expected: self.expected_count.to_string(),
                actual: format!("{} (with digons {})", self.counts.nontrivial(), self.counts.total()),
            });
        }
        out
    }
}

impl fmt::Display for BlockReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} p={}: terminal {} (expected {}), nontrivial {} (expected {}), {}, total {}",
            self.family,
            self.p,
            self.terminal,
            self.expected_terminal,
            self.counts.nontrivial(),
            self.expected_count,
            self.counts,
            self.counts.total()
        )
    }
}

fn block_report(
    family: &'static str,
    p: usize,
    input: Vec<ExtLetter>,
    expected: Vec<ExtLetter>,
    expected_count: usize,
    n: usize,
) -> Result<BlockReport> {
    let input = ExtendedWord::new(n, input)?;
    let expected = ExtendedWord::new(n, expected)?;
    let r = Reverser::default().reverse(&input)?;
    Ok(BlockReport {
        family,
        p,
        input: input.to_string(),
        expected_terminal: expected.to_string(),
        terminal: r.terminal.to_string(),
        expected_count,
        counts: r.counts,
    })
}

/// Reverses `b̄_{1,p} a_{2,p}`, predicted to give `a_{1,p+1} b̄_{1,p+1}` in
/// `p^2 + p - 1` nontrivial steps.
pub fn validate_ba(p: usize) -> Result<BlockReport> {
    let n = p + 2;
    let b = BlockWord::new(BlockKind::B, 1, p, n)?.word;
    let a = BlockWord::new(BlockKind::A, 2, p, n)?.word;
    let a1 = BlockWord::new(BlockKind::A, 1, p + 1, n)?.word;
    let b1 = BlockWord::new(BlockKind::B, 1, p + 1, n)?.word;
    let input = [bar(&b), positive(&a)].concat();
    let expected = [positive(&a1), bar(&b1)].concat();
    block_report("ba", p, input, expected, p * p + p - 1, n)
}

/// Reverses `d̄_{1,p} c_{3,p}`, predicted to give `c_{1,p+2} d̄_{1,p+2}` in
/// `4p^2 + 8p - 3` nontrivial steps.
pub fn validate_dc(p: usize) -> Result<BlockReport> {
    let n = p + 4;
    let d = BlockWord::new(BlockKind::D, 1, p, n)?.word;
    let c = BlockWord::new(BlockKind::C, 3, p, n)?.word;
    let c1 = BlockWord::new(BlockKind::C, 1, p + 2, n)?.word;
    let d1 = BlockWord::new(BlockKind::D, 1, p + 2, n)?.word;
    let input = [bar(&d), positive(&c)].concat();
    let expected = [positive(&c1), bar(&d1)].concat();
    block_report("dc", p, input, expected, 4 * p * p + 8 * p - 3, n)
}

/// Engine counts for the quartic pair next to the closed form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QuarticReport {
    pub l: usize,
    pub formula: i64,
    pub counts: TileCounts,
    /// Squares reversed before any hexagon is possible.
    pub initial_type_ii: usize,
    /// The proof's count for that phase, `l(l-2)/2`, kept as a fraction
    /// `numerator / 2` since it need not be an integer.
    pub expected_initial_type_ii_twice: i64,
    /// What the rest of the run contributes once hexagons are allowed.
    pub remaining: TileCounts,
    pub digon_free: bool,
}

impl QuarticReport {
    pub fn engine_count(&self) -> usize {
        self.counts.nontrivial()
    }

    pub fn passed(&self) -> bool {
        self.engine_count() as i64 == self.formula
    }

    pub fn mismatch(&self) -> Option<Error> {
        (!self.passed()).then(|| Error::Mismatch {
            what: format!("quartic nontrivial steps, l={}", self.l),
            expected: self.formula.to_string(),
            actual: self.engine_count().to_string(),
        })
    }
}

impl fmt::Display for QuarticReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "l={}: engine {} vs formula {} ({}, total {}); square phase {} vs l(l-2)/2 = {}/2, then {}; digon-free {}",
            self.l,
            self.engine_count(),
            self.formula,
            self.counts,
            self.counts.total(),
            self.initial_type_ii,
            self.expected_initial_type_ii_twice,
            self.remaining,
            self.digon_free
        )
    }
}

pub fn quartic_report(l: usize) -> Result<QuarticReport> {
    let (u, v) = quartic_pair(l)?;
    let start = ExtendedWord::quotient(&u, &v)?;
    let engine = Reverser::default();
    let squares = engine.reverse_where(&start, |i, j| i.abs_diff(j) >= 2)?;
    let rest = engine.reverse(&squares.word)?;
    let full = engine.reverse(&start)?;
    let diagram = compact(&reversing_diagram(&u, &v)?);
    let digon_free = certify_digon_free(&diagram)?.is_optimal();
    let li = l as i64;
    Ok(QuarticReport {
        l,
        formula: quartic_total(l),
        counts: full.counts,
        initial_type_ii: squares.counts.type_ii,
        expected_initial_type_ii_twice: li * (li - 2),
        remaining: rest.counts,
        digon_free,
    })
}

/// The smallest `l <= lmax` with `compl >= (4/3) l^4`, if any.
pub fn quartic_threshold(lmax: usize) -> Result<Option<usize>> {
    for l in 1..=lmax {
        let (u, v) = quartic_pair(l)?;
        let c = Reverser::default().reverse_pair(&u, &v)?.counts.nontrivial();
        if 3 * c >= 4 * l.pow(4) {
            return Ok(Some(l));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, s: &str) -> Word {
        Word::parse(n, s).unwrap()
    }

    #[test]
    fn blocks() {
        assert_eq!(BlockWord::new(BlockKind::A, 2, 3, 6).unwrap().word, w(6, "4.3.2"));
        assert_eq!(BlockWord::new(BlockKind::B, 2, 3, 6).unwrap().word, w(6, "2.3.4"));
        assert_eq!(BlockWord::new(BlockKind::C, 1, 2, 6).unwrap().word, w(6, "2.1.3.2"));
        assert_eq!(BlockWord::new(BlockKind::D, 1, 2, 6).unwrap().word, w(6, "2.3.1.2"));
        assert!(BlockWord::new(BlockKind::A, 0, 1, 3).is_err());
        assert!(BlockWord::new(BlockKind::A, 3, 2, 4).is_err());
    }

    #[test]
    fn flip_pairs() {
        assert_eq!(flip_pair(2).unwrap(), (w(2, "1"), w(2, "1")));
        assert_eq!(flip_pair(3).unwrap(), (w(3, "1.2.1"), w(3, "2.1.2")));
        assert_eq!(flip_pair(4).unwrap(), (w(4, "1.2.1.3.2.1"), w(4, "3.2.1.3.2.3")));
        assert!(flip_pair(1).is_err());
        assert_eq!([3, 4, 6].map(flip_lower_bound), [1, 7, 65]);
    }

    #[test]
    fn quartic_pairs() {
        assert_eq!(quartic_pair(1).unwrap(), (w(4, "2"), w(4, "1")));
        assert_eq!(quartic_pair(2).unwrap(), (w(6, "4.2"), w(6, "1.3")));
        assert_eq!(quartic_pair(4).unwrap(), (w(10, "8.6.4.2"), w(10, "1.3.5.7")));
        assert_eq!([1, 2, 3, 4, 5].map(quartic_total), [1, 11, 80, 288, 747]);
    }

    #[test]
    fn first_block_pairs() {
        let r = validate_ba(1).unwrap();
        assert_eq!(r.terminal, "2.1.-2.-1");
        assert!(r.passed(), "{r}");
        assert!(validate_dc(1).unwrap().terminal_ok());
    }

    #[test]
    fn quartic_report_for_one() {
        let r = quartic_report(1).unwrap();
        assert!(r.passed());
        assert_eq!(
            r.counts,
            TileCounts {
                type_i: 1,
                type_ii: 0,
                type_iii: 0
            }
        );
        assert!(r.digon_free);
    }
}
