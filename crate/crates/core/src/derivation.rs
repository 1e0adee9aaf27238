//! Derivations: sequences of braid relations applied to a start word.
//!
//! A derivation is the algebraic form of a van Kampen diagram. Each step gets
//! a name from the strands it moves (a triple for type I, a pair of disjoint
//! pairs for type II); a derivation whose step names are pairwise distinct is
//! optimal, and the multiplicity of a name counts how often the two
//! corresponding separatrices cross.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::invariants::{names_unchecked, Name2, Name22, Name3};
use crate::word::{same_strands, Direction, Relation, RelationKind, Word};

/// Default cap on the number of words visited by [`dist_bfs`].
pub const DEFAULT_NODE_LIMIT: usize = 1_000_000;

/// One relation applied at a 0-based word position.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Step {
    pub pos: usize,
    pub relation: Relation,
}

impl Step {
    pub fn new(pos: usize, relation: Relation) -> Self {
        Self { pos, relation }
    }

    /// The step undoing this one.
    pub fn inverse(self) -> Self {
        Self {
            pos: self.pos,
            relation: self.relation.inverse(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    start: Word,
    steps: Vec<Step>,
}

impl Derivation {
    pub fn new(start: Word, steps: Vec<Step>) -> Self {
        Self { start, steps }
    }

    pub fn empty(start: Word) -> Self {
        Self {
            start,
            steps: Vec::new(),
        }
    }

    pub fn start(&self) -> &Word {
        &self.start
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn count(&self, kind: RelationKind) -> usize {
        self.steps.iter().filter(|s| s.relation.kind() == kind).count()
    }

    /// Applies every step; the error carries the index of the failing step.
    pub fn replay(&self) -> Result<Word> {
        let mut word = self.start.clone();
        for (k, step) in self.steps.iter().enumerate() {
            word.apply_in_place(step.pos, step.relation)
                .map_err(|_| Error::ReplayMismatch { step: k })?;
        }
        Ok(word)
    }

    /// Every intermediate word, start and end included.
    pub fn words(&self) -> Result<Vec<Word>> {
        let mut out = Vec::with_capacity(self.steps.len() + 1);
        let mut word = self.start.clone();
        out.push(word.clone());
        for (k, step) in self.steps.iter().enumerate() {
            word.apply_in_place(step.pos, step.relation)
                .map_err(|_| Error::ReplayMismatch { step: k })?;
            out.push(word.clone());
        }
        Ok(out)
    }

    /// The same path walked backwards, starting from the end word.
    pub fn reversed(&self) -> Result<Derivation> {
        let end = self.replay()?;
        let steps = self.steps.iter().rev().map(|s| s.inverse()).collect();
        Ok(Derivation { start: end, steps })
    }

    /// Appends `other`, which must start where `self` ends.
    pub fn then(mut self, other: &Derivation) -> Result<Derivation> {
        if self.replay()? != other.start {
            return Err(Error::ReplayMismatch { step: self.steps.len() });
        }
        self.steps.extend_from_slice(&other.steps);
        Ok(self)
    }

    pub fn to_record(&self) -> DerivationRecord {
        DerivationRecord {
            n: Some(self.start.n()),
            start: self.start.to_string(),
            steps: self
                .steps
                .iter()
                .map(|s| StepRecord {
                    pos: s.pos + 1,
                    kind: s.relation.kind(),
                    dir: s.relation.direction(),
                })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_record()).expect("derivation serializes")
    }

    /// Resolves a serialized derivation against its start word. `n` is used
    /// when the record carries no strand count.
    pub fn from_record(record: &DerivationRecord, n: Option<usize>) -> Result<Derivation> {
        let n = record
            .n
            .or(n)
            .ok_or_else(|| Error::Parse("derivation has no strand count".into()))?;
        let start = Word::parse(n, &record.start)?;
        let mut word = start.clone();
        let mut steps = Vec::with_capacity(record.steps.len());
        for (k, rec) in record.steps.iter().enumerate() {
            let pos = rec.pos.checked_sub(1).ok_or(Error::ReplayMismatch { step: k })?;
            let relation = word.relation_at(pos).ok_or(Error::ReplayMismatch { step: k })?;
            if relation.kind() != rec.kind || relation.direction() != rec.dir {
                return Err(Error::ReplayMismatch { step: k });
            }
            word.apply_in_place(pos, relation)?;
            steps.push(Step::new(pos, relation));
        }
        Ok(Derivation { start, steps })
    }

    pub fn from_json(text: &str, n: Option<usize>) -> Result<Derivation> {
        let record: DerivationRecord = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_record(&record, n)
    }
}

/// Serialized step: 1-based position, relation kind and direction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepRecord {
    pub pos: usize,
    pub kind: RelationKind,
    pub dir: Direction,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivationRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub start: String,
    pub steps: Vec<StepRecord>,
}

/// The name of a derivation step (equivalently of a van Kampen tile).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StepName {
    Triple(Name3),
    PairOfPairs(Name22),
}

impl fmt::Display for StepName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StepName::Triple(t) => t.fmt(f),
            StepName::PairOfPairs(q) => q.fmt(f),
        }
    }
}

/// Names every step of a derivation from a reduced start word.
pub fn step_names(d: &Derivation) -> Result<Vec<StepName>> {
    if !d.start.is_reduced() {
        return Err(Error::NotReduced);
    }
    let mut word = d.start.clone();
    let mut out = Vec::with_capacity(d.steps.len());
    for (k, step) in d.steps.iter().enumerate() {
        let names = names_unchecked(&word);
        let at = |offset: usize| names[step.pos + offset];
        if step.pos + step.relation.width() > names.len() {
            return Err(Error::ReplayMismatch { step: k });
        }
        let name = match step.relation {
            Relation::TypeI { .. } => {
                // three strands, pairwise crossing: the first two names already
                // cover all of them
                let (a, b) = (at(0), at(1));
                let third = if a.contains(b.p()) { b.q() } else { b.p() };
                StepName::Triple(Name3::new(a.p(), a.q(), third)?)
            }
            Relation::TypeII { .. } => StepName::PairOfPairs(Name22::new(at(0), at(1))?),
        };
        word.apply_in_place(step.pos, step.relation)
            .map_err(|_| Error::ReplayMismatch { step: k })?;
        out.push(name);
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    CertifiedOptimal,
    Inconclusive,
}

/// Outcome of a name-based optimality check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub verdict: Verdict,
    pub names: Vec<StepName>,
    /// Names carried by more than one step.
    pub duplicates: Vec<StepName>,
}

impl Certificate {
    pub fn from_names(names: Vec<StepName>) -> Self {
        let duplicates = duplicated(&names);
        let verdict = if duplicates.is_empty() {
            Verdict::CertifiedOptimal
        } else {
            Verdict::Inconclusive
        };
        Self {
            verdict,
            names,
            duplicates,
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.verdict == Verdict::CertifiedOptimal
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("certificate serializes")
    }
}

pub(crate) fn duplicated(names: &[StepName]) -> Vec<StepName> {
    let mut counts: BTreeMap<StepName, usize> = BTreeMap::new();
    for &name in names {
        *counts.entry(name).or_default() += 1;
    }
    counts
        .into_iter()
        .filter(|&(_, c)| c > 1)
        .map(|(name, _)| name)
        .collect()
}

/// A derivation whose steps carry pairwise distinct names is optimal.
pub fn certify(d: &Derivation) -> Result<Certificate> {
    if !d.replay()?.is_reduced() {
        return Err(Error::NotReduced);
    }
    Ok(Certificate::from_names(step_names(d)?))
}

/// How often each pair of separatrices crosses, keyed by the ordered pair of
/// separatrix labels. Absent keys cross zero times.
pub fn crossing_matrix(d: &Derivation) -> Result<BTreeMap<(Name2, Name2), usize>> {
    let mut out: BTreeMap<(Name2, Name2), usize> = BTreeMap::new();
    for name in step_names(d)? {
        match name {
            StepName::Triple(t) => {
                let [a, b, c] = t.pairs();
                for key in [(a, b), (a, c), (b, c)] {
                    *out.entry(key).or_default() += 1;
                }
            }
            StepName::PairOfPairs(q) => {
                let [a, b] = q.pairs();
                *out.entry((a, b)).or_default() += 1;
            }
        }
    }
    Ok(out)
}

/// A shortest derivation from `u` to `v`, by breadth-first search over
/// single-relation moves.
pub fn shortest_derivation(u: &Word, v: &Word, node_limit: usize) -> Result<Derivation> {
    same_strands(u, v)?;
    if u.len() != v.len() || u.eval() != v.eval() {
        return Err(Error::NotEquivalent);
    }
    let mut parent: HashMap<Vec<usize>, Option<(Vec<usize>, Step)>> = HashMap::new();
    parent.insert(u.letters().to_vec(), None);
    let mut queue = VecDeque::from([u.clone()]);
    while let Some(word) = queue.pop_front() {
        if word == *v {
            let mut steps = Vec::new();
            let mut key = word.letters().to_vec();
            while let Some(Some((prev, step))) = parent.get(&key) {
                steps.push(*step);
                key = prev.clone();
            }
            steps.reverse();
            return Ok(Derivation::new(u.clone(), steps));
        }
        for (pos, relation) in word.moves() {
            let next = word.apply(pos, relation)?;
            if parent.contains_key(next.letters()) {
                continue;
            }
            if parent.len() >= node_limit {
                return Err(Error::StateSpaceExceeded { limit: node_limit });
            }
            parent.insert(
                next.letters().to_vec(),
                Some((word.letters().to_vec(), Step::new(pos, relation))),
            );
            queue.push_back(next);
        }
    }
    // The relations connect all reduced expressions of a permutation, so this
    // is only reachable for non-reduced inputs in different components.
    Err(Error::NotEquivalent)
}

/// Exact combinatorial distance.
pub fn dist_bfs(u: &Word, v: &Word, node_limit: usize) -> Result<usize> {
    shortest_derivation(u, v, node_limit).map(|d| d.len())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(n: usize, s: &str) -> Word {
        Word::parse(n, s).unwrap()
    }

    fn n2(p: usize, q: usize) -> Name2 {
        Name2::new(p, q).unwrap()
    }

    fn quad(a: (usize, usize), b: (usize, usize)) -> StepName {
        StepName::PairOfPairs(Name22::new(n2(a.0, a.1), n2(b.0, b.1)).unwrap())
    }

    fn tri(p: usize, q: usize, r: usize) -> StepName {
        StepName::Triple(Name3::new(p, q, r).unwrap())
    }

    #[test]
    fn replay_basics() {
        let d = Derivation::empty(w(3, "1.2"));
        assert_eq!(d.replay().unwrap(), w(3, "1.2"));
        let d = Derivation::new(w(3, "1.2.1"), vec![Step::new(0, Relation::TypeI { i: 1, j: 2 })]);
        assert_eq!(d.replay().unwrap(), w(3, "2.1.2"));
        let bad = Derivation::new(
            w(3, "1.2.1"),
            vec![
                Step::new(0, Relation::TypeI { i: 1, j: 2 }),
                Step::new(0, Relation::TypeI { i: 1, j: 2 }),
            ],
        );
        assert_eq!(bad.replay(), Err(Error::ReplayMismatch { step: 1 }));
    }

    #[test]
    fn json_uses_one_based_positions() {
        let d = Derivation::new(w(3, "1.2.1"), vec![Step::new(0, Relation::TypeI { i: 1, j: 2 })]);
        assert_eq!(
            d.to_json(),
            r#"{"n":3,"start":"1.2.1","steps":[{"pos":1,"kind":"I","dir":"LR"}]}"#
        );
        let back = Derivation::from_json(
            r#"{"start":"1.2.1","steps":[{"pos":1,"kind":"I","dir":"LR"}]}"#,
            Some(3),
        )
        .unwrap();
        assert_eq!(back, d);
        let wrong_dir = r#"{"start":"1.2.1","steps":[{"pos":1,"kind":"I","dir":"RL"}]}"#;
        assert_eq!(
            Derivation::from_json(wrong_dir, Some(3)),
            Err(Error::ReplayMismatch { step: 0 })
        );
        assert!(Derivation::from_json(r#"{"start":"1","steps":[]}"#, None).is_err());
    }

    #[test]
    fn naming_a_single_hexagon() {
        let d = Derivation::new(w(3, "1.2.1"), vec![Step::new(0, Relation::TypeI { i: 1, j: 2 })]);
        assert_eq!(step_names(&d).unwrap(), vec![tri(1, 2, 3)]);
    }

    #[test]
    fn bfs_on_the_flip_pair_finds_the_optimal_diagram() {
        let (u, v) = (w(4, "1.2.1.3.2.1"), w(4, "3.2.3.1.2.3"));
        let d = shortest_derivation(&u, &v, DEFAULT_NODE_LIMIT).unwrap();
        assert_eq!(d.len(), 6);
        assert_eq!(d.replay().unwrap(), v);
        let mut names = step_names(&d).unwrap();
        names.sort();
        let mut expected = vec![
            tri(1, 2, 3),
            tri(2, 3, 4),
            tri(1, 3, 4),
            tri(1, 2, 4),
            quad((1, 3), (2, 4)),
            quad((1, 2), (3, 4)),
        ];
        expected.sort();
        assert_eq!(names, expected);
        let cert = certify(&d).unwrap();
        assert!(cert.is_optimal());
        assert!(crossing_matrix(&d).unwrap().values().all(|&c| c <= 1));
    }

    #[test]
    fn bfs_small_cases() {
        let u = w(3, "1.2.1");
        assert_eq!(dist_bfs(&u, &u, 10).unwrap(), 0);
        assert_eq!(dist_bfs(&u, &w(3, "2.1.2"), 10).unwrap(), 1);
        assert_eq!(dist_bfs(&w(3, "1"), &w(3, "2"), 10), Err(Error::NotEquivalent));
        let (a, b) = (w(5, "1.2.1.3.2.1.4.3.2.1"), w(5, "4.3.2.1.4.3.2.4.3.4"));
        assert_eq!(dist_bfs(&a, &b, 5), Err(Error::StateSpaceExceeded { limit: 5 }));
    }

    #[test]
    fn duplicate_names_make_a_certificate_inconclusive() {
        // s1 s3 -> s3 s1 -> s1 s3 repeats the square {{1,2},{3,4}}.
        let d = Derivation::new(
            w(4, "1.3"),
            vec![
                Step::new(0, Relation::TypeII { i: 1, j: 3 }),
                Step::new(0, Relation::TypeII { i: 3, j: 1 }),
            ],
        );
        let cert = certify(&d).unwrap();
        assert_eq!(cert.verdict, Verdict::Inconclusive);
        assert_eq!(cert.duplicates, vec![quad((1, 2), (3, 4))]);
        assert_eq!(crossing_matrix(&d).unwrap()[&(n2(1, 2), n2(3, 4))], 2);
        assert!(certify(&Derivation::empty(w(4, "1.3"))).unwrap().is_optimal());
        assert_eq!(certify(&Derivation::empty(w(2, "1.1"))), Err(Error::NotReduced));
    }

    #[test]
    fn reversed_derivation_walks_back() {
        let (u, v) = (w(4, "1.2.1.3.2.1"), w(4, "3.2.3.1.2.3"));
        let d = shortest_derivation(&u, &v, DEFAULT_NODE_LIMIT).unwrap();
        let back = d.reversed().unwrap();
        assert_eq!(back.start(), &v);
        assert_eq!(back.replay().unwrap(), u);
        assert_eq!(d.clone().then(&back).unwrap().replay().unwrap(), u);
    }
}
