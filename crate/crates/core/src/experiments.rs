//! Batch measurements emitted as CSV. Independent cases run in parallel.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::derivation::dist_bfs;
use crate::enumerate::{all_words, random_reduced_word, random_walk, random_word, reduced_classes};
use crate::error::Result;
use crate::families::{quartic_report, BlockReport, QuarticReport};
use crate::invariants::lower_bound;
use crate::reversing::Reverser;
use crate::word::Word;

fn case_rng(seed: u64, a: usize, b: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ ((a as u64) << 32) ^ (b as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn to_csv<T: Serialize>(rows: impl IntoIterator<Item = T>) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in rows {
        w.serialize(row).expect("rows are flat records");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("csv output is utf-8")
}

fn compl_of(u: &Word, v: &Word) -> Result<usize> {
    Ok(Reverser::default().reverse_pair(u, v)?.counts.nontrivial())
}

/// Quartic pairs for `l = 1 ..= lmax`.
pub fn quartic_rows(lmax: usize) -> Result<Vec<QuarticReport>> {
    (1..=lmax).into_par_iter().map(quartic_report).collect()
}

#[derive(Serialize)]
struct QuarticRow {
    l: usize,
    engine_count: usize,
    formula_value: i64,
    #[serde(rename = "typeI")]
    type_i: usize,
    #[serde(rename = "typeII")]
    type_ii: usize,
    #[serde(rename = "typeIII")]
    type_iii: usize,
    digon_free: bool,
}

pub fn quartic_csv(rows: &[QuarticReport]) -> String {
    to_csv(rows.iter().map(|r| QuarticRow {
        l: r.l,
        engine_count: r.engine_count(),
        formula_value: r.formula,
        type_i: r.counts.type_i,
        type_ii: r.counts.type_ii,
        type_iii: r.counts.type_iii,
        digon_free: r.digon_free,
    }))
}

#[derive(Serialize)]
struct BlockRow {
    family: &'static str,
    p: usize,
    expected_count: usize,
    nontrivial: usize,
    digons: usize,
    terminal_ok: bool,
    passed: bool,
}

pub fn blocks_csv(reports: &[BlockReport]) -> String {
    to_csv(reports.iter().map(|r| BlockRow {
        family: r.family,
        p: r.p,
        expected_count: r.expected_count,
        nontrivial: r.counts.nontrivial(),
        digons: r.counts.type_iii,
        terminal_ok: r.terminal_ok(),
        passed: r.passed(),
    }))
}

/// Sampled reversing complexity of pairs of random reduced words of length `l`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GrowthRow {
    pub n: usize,
    pub l: usize,
    pub samples: usize,
    pub max_compl: usize,
    pub mean_compl: f64,
    /// `max_compl / (n^2 l)`, bounded if complexity is `O(n^2 l)`.
    #[serde(rename = "max_over_n2l")]
    pub ratio: f64,
}

pub fn growth_rows(ns: &[usize], lmax: usize, samples: usize, seed: u64) -> Result<Vec<GrowthRow>> {
    let cases: Vec<(usize, usize)> = ns
        .iter()
        .flat_map(|&n| (1..=lmax.min(n * (n - 1) / 2)).map(move |l| (n, l)))
        .collect();
    cases
        .into_par_iter()
        .map(|(n, l)| {
            let mut rng = case_rng(seed, n, l);
            let mut max = 0;
            let mut sum = 0;
            for _ in 0..samples {
                let u = random_reduced_word(n, l, &mut rng);
                let v = random_reduced_word(n, l, &mut rng);
                let c = compl_of(&u, &v)?;
                max = max.max(c);
                sum += c;
            }
            Ok(GrowthRow {
                n,
                l,
                samples,
                max_compl: max,
                mean_compl: sum as f64 / samples.max(1) as f64,
                ratio: max as f64 / (n * n * l) as f64,
            })
        })
        .collect()
}

pub fn growth_csv(rows: &[GrowthRow]) -> String {
    to_csv(rows)
}

/// Largest reversing complexity between two expressions of length `l` on `n`
/// strands; exhaustive when the number of pairs is within the limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct StabilizationRow {
    pub l: usize,
    pub n: usize,
    pub exhaustive: bool,
    pub pairs: u64,
    pub max_compl: usize,
}

pub fn stabilization_rows(
    lmax: usize,
    exhaustive_limit: u64,
    samples: usize,
    seed: u64,
) -> Result<Vec<StabilizationRow>> {
    let cases: Vec<(usize, usize)> = (1..=lmax).flat_map(|l| (2..=2 * l + 2).map(move |n| (l, n))).collect();
    cases
        .into_par_iter()
        .map(|(l, n)| {
            let words = (n as u64 - 1).checked_pow(l as u32);
            let pairs = words.and_then(|w| w.checked_mul(w));
            match pairs {
                Some(pairs) if pairs <= exhaustive_limit => {
                    let all = all_words(n, l);
                    let max = all
                        .par_iter()
                        .map(|u| {
                            all.iter()
                                .map(|v| compl_of(u, v))
                                .try_fold(0, |m, c| c.map(|c| m.max(c)))
                        })
                        .try_reduce(|| 0, |a, b| Ok(a.max(b)))?;
                    Ok(StabilizationRow {
                        l,
                        n,
                        exhaustive: true,
                        pairs,
                        max_compl: max,
                    })
                }
                _ => {
                    let mut rng = case_rng(seed, l, n);
                    let mut max = 0;
                    for _ in 0..samples {
                        let (u, v) = (random_word(n, l, &mut rng), random_word(n, l, &mut rng));
                        max = max.max(compl_of(&u, &v)?);
                    }
                    Ok(StabilizationRow {
                        l,
                        n,
                        exhaustive: false,
                        pairs: samples as u64,
                        max_compl: max,
                    })
                }
            }
        })
        .collect()
}

#[derive(Serialize)]
struct StabilizationCsvRow {
    l: usize,
    n: usize,
    method: &'static str,
    pairs: u64,
    max_compl: usize,
}

fn method(exhaustive: bool) -> &'static str {
    if exhaustive {
        "exhaustive"
    } else {
        "sampled"
    }
}

pub fn stabilization_csv(rows: &[StabilizationRow]) -> String {
    to_csv(rows.iter().map(|r| StabilizationCsvRow {
        l: r.l,
        n: r.n,
        method: method(r.exhaustive),
        pairs: r.pairs,
        max_compl: r.max_compl,
    }))
}

/// How often the lower bound `i3 + i22` equals the distance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EqualityTally {
    pub n: usize,
    pub exhaustive: bool,
    pub pairs: usize,
    pub equal: usize,
    /// Pairs with a strict gap, as `(u, v, lower, dist)`.
    pub gaps: Vec<(String, String, usize, usize)>,
}

/// All ordered pairs of equivalent reduced expressions on `n` strands.
pub fn equality_exhaustive(n: usize, node_limit: usize) -> Result<EqualityTally> {
    let pairs: Vec<(Word, Word)> = reduced_classes(n)
        .into_iter()
        .flat_map(|class| {
            class
                .iter()
                .flat_map(|u| class.iter().map(move |v| (u.clone(), v.clone())))
                .collect::<Vec<_>>()
        })
        .collect();
    tally(n, true, &pairs, node_limit)
}

/// Random pairs: a random reduced word and a random walk away from it.
pub fn equality_sampled(n: usize, samples: usize, seed: u64, node_limit: usize) -> Result<EqualityTally> {
    let mut rng = case_rng(seed, n, samples);
    let max_len = n * (n - 1) / 2;
    let pairs: Vec<(Word, Word)> = (0..samples)
        .map(|k| {
            let u = random_reduced_word(n, 1 + k % max_len, &mut rng);
            let v = random_walk(&u, 1 + k % 20, &mut rng);
            (u, v)
        })
        .collect();
    tally(n, false, &pairs, node_limit)
}

fn tally(n: usize, exhaustive: bool, pairs: &[(Word, Word)], node_limit: usize) -> Result<EqualityTally> {
    let rows: Vec<(usize, usize)> = pairs
        .par_iter()
        .map(|(u, v)| Ok((lower_bound(u, v)?.total(), dist_bfs(u, v, node_limit)?)))
        .collect::<Result<_>>()?;
    let gaps = pairs
        .iter()
        .zip(&rows)
        .filter(|(_, (lo, d))| lo != d)
        .map(|((u, v), &(lo, d))| (u.to_string(), v.to_string(), lo, d))
        .collect();
    let equal = rows.iter().filter(|(lo, d)| lo == d).count();
    Ok(EqualityTally {
        n,
        exhaustive,
        pairs: pairs.len(),
        equal,
        gaps,
    })
}

#[derive(Serialize)]
struct EqualityRow {
    n: usize,
    method: &'static str,
    pairs: usize,
    equal: usize,
    gaps: usize,
}

pub fn equality_csv(rows: &[EqualityTally]) -> String {
    to_csv(rows.iter().map(|r| EqualityRow {
        n: r.n,
        method: method(r.exhaustive),
        pairs: r.pairs,
        equal: r.equal,
        gaps: r.gaps.len(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quartic_csv_shape() {
        let rows = quartic_rows(2).unwrap();
        let csv = quartic_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "l,engine_count,formula_value,typeI,typeII,typeIII,digon_free");
        assert_eq!(lines[1], "1,1,1,1,0,0,true");
        assert_eq!(lines.len(), 3);
    }

    #[test]
    fn growth_is_deterministic() {
        let a = growth_rows(&[4], 3, 5, 11).unwrap();
        assert_eq!(a, growth_rows(&[4], 3, 5, 11).unwrap());
        assert_eq!(a.len(), 3);
    }

    #[test]
    fn stabilization_small() {
        let rows = stabilization_rows(1, 1_000, 10, 1).unwrap();
        // one letter each: a single hexagon at most
        assert_eq!(rows.iter().map(|r| r.max_compl).max(), Some(1));
        assert!(rows.iter().all(|r| r.exhaustive));
    }

    #[test]
    fn equality_on_three_strands() {
        let t = equality_exhaustive(3, 10_000).unwrap();
        assert_eq!(t.pairs, 1 + 1 + 1 + 1 + 1 + 4);
        assert_eq!(t.equal, t.pairs);
    }
}
