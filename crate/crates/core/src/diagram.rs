//! Reversing diagrams drawn on a grid, their compaction, and the van Kampen
//! derivation read off by sweeping the tiles.
//!
//! The first word runs down the left column from the source vertex and the
//! second along the top row. Each reversing step closes an open corner with a
//! tile: a hexagon, a square, or a digon whose two sides are joined by an
//! ε-arc. The bottom row then spells `v'` and the right column `u'`.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::derivation::{duplicated, step_names, Certificate, Derivation, Step, StepName, Verdict};
use crate::error::{Error, Result};
use crate::reversing::{run_tagged, Reverser, TileCounts, TileType};
use crate::word::{same_strands, ExtLetter, Relation, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub x: usize,
    pub y: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Orientation {
    Horizontal,
    Vertical,
    Epsilon,
}

/// A directed edge. Horizontal edges point right, vertical edges point down.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    /// The generator index, `None` on ε-arcs.
    pub label: Option<usize>,
    pub orientation: Orientation,
}

/// A tile closing the corner between the vertical edge `left` and the
/// horizontal edge `top`, which start at the same vertex (up to ε-arcs).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tile {
    pub kind: TileType,
    pub i: usize,
    pub j: usize,
    pub left: usize,
    pub top: usize,
    /// New horizontal edges, left to right.
    pub bottom: Vec<usize>,
    /// New vertical edges, top to bottom.
    pub right: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<usize>,
    /// For a digon absorbed by compaction, the hexagon it now belongs to.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fused_into: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub name: Option<StepName>,
}

impl Tile {
    fn lower_chain(&self) -> Vec<usize> {
        std::iter::once(self.left).chain(self.bottom.iter().copied()).collect()
    }

    fn upper_chain(&self) -> Vec<usize> {
        std::iter::once(self.top).chain(self.right.iter().copied()).collect()
    }

    fn is_digon(&self) -> bool {
        self.kind == TileType::III
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridDiagram {
    pub n: usize,
    pub u: Word,
    pub v: Word,
    pub u_prime: Word,
    pub v_prime: Word,
    pub vertices: Vec<Vertex>,
    pub edges: Vec<Edge>,
    /// In creation order, which is the order of the reversing steps.
    pub tiles: Vec<Tile>,
    /// Left column, top to bottom.
    pub u_edges: Vec<usize>,
    /// Top row, left to right.
    pub v_edges: Vec<usize>,
    /// Bottom boundary, left to right.
    pub v_prime_edges: Vec<usize>,
    /// Right boundary, top to bottom.
    pub u_prime_edges: Vec<usize>,
    pub compacted: bool,
}

struct Builder {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    tiles: Vec<Tile>,
}

impl Builder {
    fn vertex(&mut self, x: usize, y: usize) -> usize {
        self.vertices.push(Vertex { x, y });
        self.vertices.len() - 1
    }

    fn edge(&mut self, from: usize, to: usize, label: Option<usize>, orientation: Orientation) -> usize {
        self.edges.push(Edge {
            from,
            to,
            label,
            orientation,
        });
        self.edges.len() - 1
    }

    fn at(&self, v: usize) -> Vertex {
        self.vertices[v]
    }

    /// Closes the corner between vertical `left` (labelled `i`) and
    /// horizontal `top` (labelled `j`); returns the edges of the replacement
    /// letters in word order.
    fn close(&mut self, i: usize, j: usize, left: usize, top: usize) -> Vec<usize> {
        let b = self.edges[left].to;
        let c = self.edges[top].to;
        let (pb, pc) = (self.at(b), self.at(c));
        let kind = TileType::of_factor(i, j);
        let mut tile = Tile {
            kind,
            i,
            j,
            left,
            top,
            bottom: Vec::new(),
            right: Vec::new(),
            epsilon: None,
            fused_into: None,
            name: None,
        };
        let out = match kind {
            TileType::III => {
                tile.epsilon = Some(self.edge(b, c, None, Orientation::Epsilon));
                Vec::new()
            }
            TileType::II => {
                let d = self.vertex((pb.x + 1).max(pc.x), pb.y.max(pc.y + 1));
                let h = self.edge(b, d, Some(j), Orientation::Horizontal);
                let v = self.edge(c, d, Some(i), Orientation::Vertical);
                tile.bottom = vec![h];
                tile.right = vec![v];
                vec![h, v]
            }
            _ => {
                let d1 = self.vertex(pb.x + 1, pb.y);
                let e = self.vertex(pc.x, pc.y + 1);
                let d = self.vertex((pb.x + 2).max(pc.x), pb.y.max(pc.y + 2));
                let h1 = self.edge(b, d1, Some(j), Orientation::Horizontal);
                let h2 = self.edge(d1, d, Some(i), Orientation::Horizontal);
                let v1 = self.edge(c, e, Some(i), Orientation::Vertical);
                let v2 = self.edge(e, d, Some(j), Orientation::Vertical);
                tile.bottom = vec![h1, h2];
                tile.right = vec![v1, v2];
                // s_j s_i s̄_j s̄_i: along the bottom, then back up the right side
                vec![h1, h2, v2, v1]
            }
        };
        self.tiles.push(tile);
        out
    }
}

/// The reversing diagram of `(u, v)` with the default engine.
pub fn reversing_diagram(u: &Word, v: &Word) -> Result<GridDiagram> {
    reversing_diagram_with(u, v, &Reverser::default())
}

pub fn reversing_diagram_with(u: &Word, v: &Word, reverser: &Reverser) -> Result<GridDiagram> {
    same_strands(u, v)?;
    let mut b = Builder {
        vertices: Vec::new(),
        edges: Vec::new(),
        tiles: Vec::new(),
    };
    let source = b.vertex(0, 0);
    let mut u_edges = Vec::with_capacity(u.len());
    let mut prev = source;
    for (k, &i) in u.letters().iter().enumerate() {
        let next = b.vertex(0, k + 1);
        u_edges.push(b.edge(prev, next, Some(i), Orientation::Vertical));
        prev = next;
    }
    let mut v_edges = Vec::with_capacity(v.len());
    prev = source;
    for (k, &j) in v.letters().iter().enumerate() {
        let next = b.vertex(k + 1, 0);
        v_edges.push(b.edge(prev, next, Some(j), Orientation::Horizontal));
        prev = next;
    }

    let items: Vec<(ExtLetter, usize)> = u_edges
        .iter()
        .rev()
        .zip(u.letters().iter().rev())
        .map(|(&e, &i)| (ExtLetter::Neg(i), e))
        .chain(v_edges.iter().zip(v.letters()).map(|(&e, &j)| (ExtLetter::Pos(j), e)))
        .collect();
    let (terminal, _) = run_tagged(
        items,
        reverser.strategy,
        reverser.budget,
        |_, _| true,
        |step, left, top| b.close(step.i, step.j, left, top),
    )?;

    let cut = terminal
        .iter()
        .position(|(l, _)| !l.is_positive())
        .unwrap_or(terminal.len());
    let v_prime_edges: Vec<usize> = terminal[..cut].iter().map(|&(_, e)| e).collect();
    let u_prime_edges: Vec<usize> = terminal[cut..].iter().rev().map(|&(_, e)| e).collect();
    let label = |e: &usize| b.edges[*e].label.expect("boundary edges carry generators");
    let v_prime = Word::from_trusted(u.n(), v_prime_edges.iter().map(label).collect());
    let u_prime = Word::from_trusted(u.n(), u_prime_edges.iter().map(label).collect());

    let mut diagram = GridDiagram {
        n: u.n(),
        u: u.clone(),
        v: v.clone(),
        u_prime,
        v_prime,
        vertices: b.vertices,
        edges: b.edges,
        tiles: b.tiles,
        u_edges,
        v_edges,
        v_prime_edges,
        u_prime_edges,
        compacted: false,
    };
    // names need reduced boundary words; otherwise tiles stay unnamed
    if let Ok((d, order)) = sweep(&diagram) {
        if let Ok(names) = step_names(&d) {
            for (tile, name) in order.into_iter().zip(names) {
                diagram.tiles[tile].name = Some(name);
            }
        }
    }
    Ok(diagram)
}

impl GridDiagram {
    /// Tile counts with fused hexagons counted as type I.
    pub fn counts(&self) -> TileCounts {
        let mut c = TileCounts::default();
        for t in &self.tiles {
            match t.kind {
                TileType::II => c.type_ii += 1,
                TileType::III => c.type_iii += 1,
                _ => c.type_i += 1,
            }
        }
        c
    }

    pub fn nontrivial(&self) -> usize {
        self.counts().nontrivial()
    }

    /// Digons not absorbed by compaction.
    pub fn free_digons(&self) -> usize {
        self.tiles
            .iter()
            .filter(|t| t.is_digon() && t.fused_into.is_none())
            .count()
    }

    /// `u v'`, the word along the lower-left boundary.
    pub fn lower_word(&self) -> Word {
        self.path_word(self.u_edges.iter().chain(&self.v_prime_edges))
    }

    /// `v u'`, the word along the upper-right boundary.
    pub fn upper_word(&self) -> Word {
        self.path_word(self.v_edges.iter().chain(&self.u_prime_edges))
    }

    fn path_word<'a>(&self, edges: impl Iterator<Item = &'a usize>) -> Word {
        Word::from_trusted(
            self.n,
            edges.map(|&e| self.edges[e].label.expect("generator edge")).collect(),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("diagram serializes")
    }

    pub fn from_json(text: &str) -> Result<GridDiagram> {
        let mut g: GridDiagram = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        for word in [&mut g.u, &mut g.v, &mut g.u_prime, &mut g.v_prime] {
            *word = word.with_strands(g.n)?;
        }
        Ok(g)
    }
}

/// Sweeps tiles from the lower-left boundary to the upper-right one, always
/// taking the earliest tile whose lower side lies on the current path.
/// Returns the derivation and, per step, the tile it came from.
fn sweep(g: &GridDiagram) -> Result<(Derivation, Vec<usize>)> {
    let mut path: Vec<usize> = g.u_edges.iter().chain(&g.v_prime_edges).copied().collect();
    let start = g.lower_word();
    let lower: Vec<Vec<usize>> = g.tiles.iter().map(Tile::lower_chain).collect();
    let mut used = vec![false; g.tiles.len()];
    let mut steps = Vec::new();
    let mut order = Vec::new();
    let mut swept = 0;
    while swept < g.tiles.len() {
        let index: HashMap<usize, usize> = path.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        let found = (0..g.tiles.len()).find_map(|t| {
            if used[t] {
                return None;
            }
            let chain = &lower[t];
            let &k = index.get(&chain[0])?;
            (path.get(k..k + chain.len()) == Some(chain.as_slice())).then_some((t, k))
        });
        let Some((t, k)) = found else {
            return Err(Error::SweepStuck {
                swept,
                total: g.tiles.len(),
            });
        };
        let tile = &g.tiles[t];
        path.splice(k..k + lower[t].len(), tile.upper_chain());
        used[t] = true;
        swept += 1;
        let relation = match tile.kind {
            TileType::III => continue,
            TileType::II => Relation::TypeII { i: tile.i, j: tile.j },
            _ => Relation::TypeI { i: tile.i, j: tile.j },
        };
        steps.push(Step::new(k, relation));
        order.push(t);
    }
    let target: Vec<usize> = g.v_edges.iter().chain(&g.u_prime_edges).copied().collect();
    if path != target {
        return Err(Error::SweepStuck {
            swept,
            total: g.tiles.len(),
        });
    }
    Ok((Derivation::new(start, steps), order))
}

/// The derivation from `u v'` to `v u'` obtained by collapsing the ε-arcs;
/// it has one step per hexagon or square.
pub fn to_derivation(g: &GridDiagram) -> Result<Derivation> {
    sweep(g).map(|(d, _)| d)
}

/// Fuses hexagons with adjacent digons: a digon whose vertical side is the
/// upper edge of a hexagon's right side gives a tile of type I', one whose
/// horizontal side is the first edge of a hexagon's bottom gives type I''.
/// Each hexagon absorbs at most one digon. A maximum matching is used, so a
/// digon-free compaction is found whenever one exists; among maximum
/// matchings, earlier digons and hexagons are preferred.
pub fn compact(g: &GridDiagram) -> GridDiagram {
    let mut out = g.clone();
    out.compacted = true;
    let mut by_right: HashMap<usize, usize> = HashMap::new();
    let mut by_bottom: HashMap<usize, usize> = HashMap::new();
    for (h, t) in out.tiles.iter().enumerate() {
        if t.kind == TileType::I {
            by_right.insert(t.right[0], h);
            by_bottom.insert(t.bottom[0], h);
        }
    }
    let digons: Vec<usize> = (0..out.tiles.len())
        .filter(|&d| out.tiles[d].is_digon() && out.tiles[d].fused_into.is_none())
        .collect();
    let candidates: Vec<Vec<(usize, TileType)>> = digons
        .iter()
        .map(|&d| {
            let t = &out.tiles[d];
            let mut c = Vec::new();
            if let Some(&h) = by_right.get(&t.left) {
                c.push((h, TileType::IPrime));
            }
            if let Some(&h) = by_bottom.get(&t.top) {
                c.push((h, TileType::IDblPrime));
            }
            c.sort();
            c
        })
        .collect();

    // Kuhn's augmenting paths, digons in creation order
    let mut owner: HashMap<usize, (usize, TileType)> = HashMap::new();
    for k in 0..digons.len() {
        let mut seen = vec![false; out.tiles.len()];
        augment(k, &candidates, &mut owner, &mut seen);
    }
    for (h, (k, kind)) in owner {
        out.tiles[h].kind = kind;
        out.tiles[digons[k]].fused_into = Some(h);
    }
    out
}

fn augment(
    k: usize,
    candidates: &[Vec<(usize, TileType)>],
    owner: &mut HashMap<usize, (usize, TileType)>,
    seen: &mut [bool],
) -> bool {
    for &(h, kind) in &candidates[k] {
        if seen[h] {
            continue;
        }
        seen[h] = true;
        let free = match owner.get(&h) {
            None => true,
            Some(&(other, _)) => augment(other, candidates, owner, seen),
        };
        if free {
            owner.insert(h, (k, kind));
            return true;
        }
    }
    false
}

/// Certifies optimality of the collapsed diagram when its compaction has no
/// digon left: the number of hexagons and squares is then `dist(u v', v u')`.
pub fn certify_digon_free(g: &GridDiagram) -> Result<Certificate> {
    let (lower, upper) = (g.lower_word(), g.upper_word());
    if !lower.is_reduced() || !upper.is_reduced() {
        return Err(Error::NotReduced);
    }
    let compacted = if g.compacted { g.clone() } else { compact(g) };
    let names = step_names(&to_derivation(&compacted)?)?;
    let duplicates = duplicated(&names);
    let verdict = if compacted.free_digons() == 0 {
        Verdict::CertifiedOptimal
    } else {
        Verdict::Inconclusive
    };
    Ok(Certificate {
        verdict,
        names,
        duplicates,
    })
}
