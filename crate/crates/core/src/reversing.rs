//! Subword reversing: repeatedly replacing a factor `s̄_i s_j` by the
//! positive-negative word the braid relations dictate.
//!
//! ```text
//! s̄_i s_j  ->  s_j s_i s̄_j s̄_i   if |i - j| = 1   (type I, a hexagon)
//! s̄_i s_j  ->  s_j s̄_i           if |i - j| >= 2  (type II, a square)
//! s̄_i s_i  ->  ε                                   (type III, a digon)
//! ```
//!
//! The diagram of a run does not depend on which factor is reversed first, so
//! terminal words and tile counts are the same for every [`Strategy`].

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{same_strands, ExtLetter, ExtendedWord, Word};

/// Default cap on the number of reversing steps of a single run.
pub const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TileType {
    #[serde(rename = "I")]
    I,
    #[serde(rename = "II")]
    II,
    #[serde(rename = "III")]
    III,
    /// A hexagon fused with the digon hanging off its right side.
    #[serde(rename = "Iprime")]
    IPrime,
    /// A hexagon fused with the digon hanging off its bottom side.
    #[serde(rename = "Idblprime")]
    IDblPrime,
}

impl TileType {
    pub fn of_factor(i: usize, j: usize) -> Self {
        match i.abs_diff(j) {
            0 => TileType::III,
            1 => TileType::I,
            _ => TileType::II,
        }
    }

    /// Hexagons and squares, fused or not.
    pub fn is_nontrivial(self) -> bool {
        self != TileType::III
    }
}

impl fmt::Display for TileType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TileType::I => "I",
            TileType::II => "II",
            TileType::III => "III",
            TileType::IPrime => "I'",
            TileType::IDblPrime => "I''",
        })
    }
}

/// One reversed factor `s̄_i s_j`, found at `pos` in the current word.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReversingStep {
    pub pos: usize,
    pub tile: TileType,
    pub i: usize,
    pub j: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileCounts {
    pub type_i: usize,
    pub type_ii: usize,
    pub type_iii: usize,
}

impl TileCounts {
    pub fn nontrivial(self) -> usize {
        self.type_i + self.type_ii
    }

    pub fn total(self) -> usize {
        self.nontrivial() + self.type_iii
    }

    fn record(&mut self, tile: TileType) {
        match tile {
            TileType::III => self.type_iii += 1,
            TileType::II => self.type_ii += 1,
            _ => self.type_i += 1,
        }
    }
}

impl fmt::Display for TileCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I={} II={} III={}", self.type_i, self.type_ii, self.type_iii)
    }
}

/// Which reversible factor to rewrite next.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Leftmost,
    Rightmost,
    /// Uniformly among all reversible factors, from a seeded generator.
    Random(u64),
}

/// The words `s_j s_i s̄_j s̄_i`, `s_j s̄_i` or `ε` replacing `s̄_i s_j`.
pub fn rewrite(i: usize, j: usize) -> Vec<ExtLetter> {
    match TileType::of_factor(i, j) {
        TileType::III => Vec::new(),
        TileType::I => vec![
            ExtLetter::Pos(j),
            ExtLetter::Pos(i),
            ExtLetter::Neg(j),
            ExtLetter::Neg(i),
        ],
        _ => vec![ExtLetter::Pos(j), ExtLetter::Neg(i)],
    }
}

fn is_factor<P>(items: &[(ExtLetter, P)], p: usize) -> bool {
    matches!((items[p].0, items[p + 1].0), (ExtLetter::Neg(_), ExtLetter::Pos(_)))
}

type Tagged<P> = Vec<(ExtLetter, P)>;

/// Drives a run over letters tagged with a payload. `tile` receives the step
/// and the payloads of the reversed pair, and returns one payload per
/// replacement letter.
pub(crate) fn run_tagged<P>(
    mut items: Tagged<P>,
    strategy: Strategy,
    budget: u64,
    accept: impl Fn(usize, usize) -> bool,
    mut tile: impl FnMut(&ReversingStep, P, P) -> Vec<P>,
) -> Result<(Tagged<P>, Vec<ReversingStep>)> {
    let mut steps = Vec::new();
    let mut rng = match strategy {
        Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let reversible =
        |items: &[(ExtLetter, P)], p: usize| is_factor(items, p) && accept(items[p].0.index(), items[p + 1].0.index());
    // leftmost resumes one to the left of the last rewrite; rightmost resumes
    // at the right end of the replacement
    let mut cursor = match strategy {
        Strategy::Rightmost => usize::MAX,
        _ => 0,
    };
    loop {
        if items.len() < 2 {
            break;
        }
        let last = items.len() - 2;
        let found = match strategy {
            Strategy::Leftmost => (cursor.min(last)..=last).find(|&p| reversible(&items, p)),
            Strategy::Rightmost => (0..=cursor.min(last)).rev().find(|&p| reversible(&items, p)),
            Strategy::Random(_) => {
                let candidates: Vec<usize> = (0..=last).filter(|&p| reversible(&items, p)).collect();
                if candidates.is_empty() {
                    None
                } else {
                    let rng = rng.as_mut().expect("seeded for the random strategy");
                    Some(candidates[rng.gen_range(0..candidates.len())])
                }
            }
        };
        let Some(p) = found else { break };
        if steps.len() as u64 >= budget {
            return Err(Error::StepBudgetExceeded { budget });
        }
        let (i, j) = (items[p].0.index(), items[p + 1].0.index());
        let step = ReversingStep {
            pos: p,
            tile: TileType::of_factor(i, j),
            i,
            j,
        };
        let mut pair = items.drain(p..p + 2);
        let (neg, pos) = (pair.next().expect("pair").1, pair.next().expect("pair").1);
        drop(pair);
        let letters = rewrite(i, j);
        let payloads = tile(&step, neg, pos);
        debug_assert_eq!(letters.len(), payloads.len());
        let width = letters.len();
        items.splice(p..p, letters.into_iter().zip(payloads));
        steps.push(step);
        cursor = match strategy {
            Strategy::Leftmost => p.saturating_sub(1),
            _ => p + width,
        };
    }
    Ok((items, steps))
}

/// Outcome of reversing an extended word to a terminal word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReversingResult {
    /// The terminal word `v' ū'`.
    pub terminal: ExtendedWord,
    pub u_prime: Word,
    pub v_prime: Word,
    pub steps: Vec<ReversingStep>,
    pub counts: TileCounts,
}

impl ReversingResult {
    pub fn is_empty(&self) -> bool {
        self.terminal.is_empty()
    }
}

/// A word after reversing only some factors; see [`Reverser::reverse_where`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialReversing {
    pub word: ExtendedWord,
    pub steps: Vec<ReversingStep>,
    pub counts: TileCounts,
}

/// Configurable reversing engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Reverser {
    pub strategy: Strategy,
    pub budget: u64,
}

impl Default for Reverser {
    fn default() -> Self {
        Self {
            strategy: Strategy::Leftmost,
            budget: DEFAULT_BUDGET,
        }
    }
}

impl Reverser {
    pub fn new(strategy: Strategy, budget: u64) -> Self {
        Self { strategy, budget }
    }

    pub fn with_strategy(strategy: Strategy) -> Self {
        Self {
            strategy,
            ..Self::default()
        }
    }

    pub fn reverse(&self, w: &ExtendedWord) -> Result<ReversingResult> {
        let partial = self.reverse_where(w, |_, _| true)?;
        let (v_prime, u_prime) = partial
            .word
            .split_terminal()
            .expect("no factor s̄_i s_j is left, so every positive letter precedes every negative one");
        Ok(ReversingResult {
            terminal: partial.word,
            u_prime,
            v_prime,
            steps: partial.steps,
            counts: partial.counts,
        })
    }

    /// Reverses only the factors `s̄_i s_j` for which `accept(i, j)` holds.
    pub fn reverse_where(&self, w: &ExtendedWord, accept: impl Fn(usize, usize) -> bool) -> Result<PartialReversing> {
        let items = w.letters().iter().map(|&l| (l, ())).collect();
        let (items, steps) = run_tagged(items, self.strategy, self.budget, accept, |step, _, _| {
            vec![(); rewrite(step.i, step.j).len()]
        })?;
        let mut counts = TileCounts::default();
        for step in &steps {
            counts.record(step.tile);
        }
        let word = ExtendedWord::from_trusted(w.n(), items.into_iter().map(|(l, _)| l).collect());
        Ok(PartialReversing { word, steps, counts })
    }

    /// Reverses `ū v`.
    pub fn reverse_pair(&self, u: &Word, v: &Word) -> Result<ReversingResult> {
        self.reverse(&ExtendedWord::quotient(u, v)?)
    }
}

/// Reverses with the leftmost strategy and the default budget.
pub fn reverse(w: &ExtendedWord) -> Result<ReversingResult> {
    Reverser::default().reverse(w)
}

/// The number of hexagons and squares in the reversing diagram of `(u, v)`.
pub fn compl(u: &Word, v: &Word) -> Result<usize> {
    same_strands(u, v)?;
    Ok(Reverser::default().reverse_pair(u, v)?.counts.nontrivial())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(n: usize, s: &str) -> ExtendedWord {
        ExtendedWord::parse(n, s).unwrap()
    }

    fn w(n: usize, s: &str) -> Word {
        Word::parse(n, s).unwrap()
    }

    #[test]
    fn single_rules() {
        let r = reverse(&x(3, "-1.2")).unwrap();
        assert_eq!(r.terminal, x(3, "2.1.-2.-1"));
        assert_eq!(
            r.counts,
            TileCounts {
                type_i: 1,
                type_ii: 0,
                type_iii: 0
            }
        );
        assert_eq!((r.v_prime, r.u_prime), (w(3, "2.1"), w(3, "1.2")));

        let r = reverse(&x(4, "-1.3")).unwrap();
        assert_eq!(r.terminal, x(4, "3.-1"));
        assert_eq!(
            r.steps,
            vec![ReversingStep {
                pos: 0,
                tile: TileType::II,
                i: 1,
                j: 3
            }]
        );

        let r = reverse(&x(3, "-2.2")).unwrap();
        assert!(r.is_empty());
        assert_eq!(r.counts.type_iii, 1);
    }

    #[test]
    fn the_hexagon_sequence() {
        let r = reverse(&x(3, "-1.-2.-1.2.1.2")).unwrap();
        assert!(r.is_empty());
        assert_eq!(
            r.counts,
            TileCounts {
                type_i: 1,
                type_ii: 0,
                type_iii: 4
            }
        );
        let tiles: Vec<TileType> = r.steps.iter().map(|s| s.tile).collect();
        assert_eq!(
            tiles,
            [TileType::I, TileType::III, TileType::III, TileType::III, TileType::III]
        );
    }

    #[test]
    fn strategies_agree_on_small_cases() {
        let (u, v) = (w(4, "1.2.1.3.2.1"), w(4, "3.2.3.1.2.3"));
        let base = Reverser::default().reverse_pair(&u, &v).unwrap();
        assert_eq!(
            base.counts,
            TileCounts {
                type_i: 4,
                type_ii: 4,
                type_iii: 10
            }
        );
        for strategy in [Strategy::Rightmost, Strategy::Random(1), Strategy::Random(99)] {
            let r = Reverser::with_strategy(strategy).reverse_pair(&u, &v).unwrap();
            assert_eq!((r.terminal, r.counts), (base.terminal.clone(), base.counts));
        }
    }

    #[test]
    fn complexity_examples() {
        let u = w(4, "1.2.1.3.2.1");
        assert_eq!(compl(&u, &u).unwrap(), 0);
        assert_eq!(compl(&w(3, "1.2.1"), &w(3, "2.1.2")).unwrap(), 1);
        assert_eq!(compl(&u, &w(4, "3.2.3.1.2.3")).unwrap(), 8);
        let r = Reverser::default().reverse_pair(&w(4, "e"), &w(4, "1.3")).unwrap();
        assert_eq!((r.v_prime, r.u_prime), (w(4, "1.3"), w(4, "e")));
    }

    #[test]
    fn budget_is_enforced() {
        let r = Reverser::new(Strategy::Leftmost, 2).reverse(&x(3, "-1.-2.-1.2.1.2"));
        assert_eq!(r, Err(Error::StepBudgetExceeded { budget: 2 }));
    }

    #[test]
    fn restricted_runs_leave_other_factors() {
        let p = Reverser::default()
            .reverse_where(&x(4, "-1.2.-1.3"), |i, j| i.abs_diff(j) >= 2)
            .unwrap();
        assert_eq!(p.word, x(4, "-1.2.3.-1"));
        assert_eq!(p.counts.type_ii, 1);
    }
}
