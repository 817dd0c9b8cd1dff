//! Brute-force ground truth for small graphs, and generators of graphs with
//! independence number at most two.

use std::io::BufRead;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{check_guard, Error, Result};
use crate::graph::Graph;
use crate::io::parse_graph6_line;
use crate::model::{BranchSet, Color, OddModel, Pattern, Side};

pub const ORACLE_GUARD: usize = 9;
const ORACLE_HARD_LIMIT: usize = 16;
pub const EXHAUSTIVE_GUARD: usize = 8;

/// Searches every 2-coloring (vertex 0 fixed to color 1) and every family
/// of disjoint branch sets for an odd model of `p`. A branch set admits a
/// bichromatic spanning tree exactly when it is connected through
/// bichromatic host edges, so the search ranges over those sets and reads a
/// tree off afterwards.
///
/// Returns the first model found in a fixed order, so the answer depends on
/// `g` and `p` only.
pub fn brute_force_odd_model(
    g: &Graph,
    p: Pattern,
    require_special: bool,
) -> Result<Option<OddModel>> {
    let n = g.n();
    check_guard("brute_force_odd_model", n, ORACLE_GUARD, ORACLE_HARD_LIMIT)?;
    if p.size() > n {
        return Err(Error::precondition(
            "pattern-too-large",
            format!("pattern {p} has {} vertices, the graph {n}", p.size()),
        ));
    }
    let adj = g.masks().expect("guarded order");
    let slots: Vec<Side> = match p {
        Pattern::Clique { size } => vec![Side::Left; size],
        Pattern::Bipartite { left, right } | Pattern::BipartitePlusClique { left, right } => {
            let mut s = vec![Side::Left; left];
            s.extend(std::iter::repeat_n(Side::Right, right));
            s
        }
    };
    if slots.is_empty() {
        return Ok(Some(OddModel {
            pattern: p,
            branch_sets: Vec::new(),
            colors: Default::default(),
        }));
    }
    let full = (1u64 << n) - 1;
    for coloring in (0..1u64 << n).filter(|c| c & 1 == 0) {
        let same = |v: usize| {
            if coloring >> v & 1 == 1 {
                adj[v] & coloring
            } else {
                adj[v] & !coloring & full
            }
        };
        let bi: Vec<u64> = (0..n).map(|v| adj[v] & !same(v)).collect();
        let mono: Vec<u64> = (0..n).map(same).collect();
        let candidates: Vec<Candidate> = (1..=full)
            .filter(|&s| connected_within(&bi, s))
            .map(|s| Candidate {
                set: s,
                reach: bits(s).fold(0, |acc, v| acc | mono[v]),
            })
            .collect();
        let mut search = Search {
            p,
            slots: &slots,
            candidates: &candidates,
            coloring,
            require_special,
            chosen: Vec::with_capacity(slots.len()),
        };
        if search.extend(0, None) {
            return Ok(Some(search.into_model(&bi)));
        }
    }
    Ok(None)
}

struct Candidate {
    set: u64,
    /// Vertices joined by a monochromatic edge to some member.
    reach: u64,
}

struct Search<'a> {
    p: Pattern,
    slots: &'a [Side],
    candidates: &'a [Candidate],
    coloring: u64,
    require_special: bool,
    chosen: Vec<&'a Candidate>,
}

impl<'a> Search<'a> {
    fn extend(&mut self, used: u64, singleton_color: Option<bool>) -> bool {
        let i = self.chosen.len();
        if i == self.slots.len() {
            return true;
        }
        let side = self.slots[i];
        let free = (!used).count_ones() as usize;
        if free < self.slots.len() - i {
            return false;
        }
        // Branch sets on one side are interchangeable: keep their minima increasing.
        let floor = match i.checked_sub(1) {
            Some(j) if self.slots[j] == side => self.chosen[j].set.trailing_zeros() + 1,
            _ => 0,
        };
        for c in self.candidates {
            if c.set & used != 0 || c.set.trailing_zeros() < floor {
                continue;
            }
            let mut color = singleton_color;
            if self.require_special && c.set.count_ones() == 1 {
                let own = self.coloring >> c.set.trailing_zeros() & 1 == 1;
                match color {
                    Some(shared) if shared != own => continue,
                    _ => color = Some(own),
                }
            }
            let joined = self
                .chosen
                .iter()
                .zip(self.slots)
                .all(|(prev, &s)| !self.p.requires_edge(side, s) || c.reach & prev.set != 0);
            if !joined {
                continue;
            }
            self.chosen.push(c);
            if self.extend(used | c.set, color) {
                return true;
            }
            self.chosen.pop();
        }
        false
    }

    fn into_model(self, bi: &[u64]) -> OddModel {
        let mut model = OddModel {
            pattern: self.p,
            branch_sets: Vec::new(),
            colors: Default::default(),
        };
        for (c, &side) in self.chosen.iter().zip(self.slots) {
            let vertices: Vec<usize> = bits(c.set).collect();
            for &v in &vertices {
                let color = if self.coloring >> v & 1 == 1 {
                    Color::Two
                } else {
                    Color::One
                };
                model.colors.insert(v, color);
            }
            model.branch_sets.push(BranchSet {
                side,
                tree_edges: spanning_tree(bi, c.set),
                vertices,
            });
        }
        model
    }
}

fn bits(mut s: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (s != 0).then(|| {
            let v = s.trailing_zeros() as usize;
            s &= s - 1;
            v
        })
    })
}

fn connected_within(adj: &[u64], s: u64) -> bool {
    let mut seen = s & s.wrapping_neg();
    let mut frontier = seen;
    while frontier != 0 {
        let next = bits(frontier).fold(0, |acc, v| acc | adj[v]) & s & !seen;
        seen |= next;
        frontier = next;
    }
    seen == s
}

fn spanning_tree(adj: &[u64], s: u64) -> Vec<(usize, usize)> {
    let root = s.trailing_zeros() as usize;
    let mut seen = 1u64 << root;
    let mut queue = std::collections::VecDeque::from([root]);
    let mut edges = Vec::new();
    while let Some(u) = queue.pop_front() {
        for w in bits(adj[u] & s & !seen) {
            seen |= 1 << w;
            edges.push((u, w));
            queue.push_back(w);
        }
    }
    edges
}

/// Every labeled graph on `n` vertices with independence number at most
/// two, each exactly once, in order of the edge bitmask (bit `k` is the
/// `k`-th pair `(u, v)`, `u < v`, in lexicographic order).
pub fn enumerate_alpha2_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    check_guard("enumerate_alpha2_graphs", n, EXHAUSTIVE_GUARD, 11)?;
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let total = 1u64 << pairs.len();
    Ok((0..total).filter_map(move |code| {
        let mut adj = vec![0u64; n];
        for (k, &(u, v)) in pairs.iter().enumerate() {
            if code >> k & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        let full = (1u64 << n) - 1;
        let co: Vec<u64> = (0..n).map(|v| !adj[v] & full & !(1 << v)).collect();
        let triangle = pairs
            .iter()
            .any(|&(u, v)| co[u] >> v & 1 == 1 && co[u] & co[v] != 0);
        (!triangle).then(|| Graph::from_masks(&adj))
    }))
}

/// Complements each graph6 line of a stream of triangle-free graphs. Blank
/// lines are skipped; a malformed line, or one whose graph has a triangle,
/// yields an error and the stream carries on.
pub fn stream_alpha2_graphs<R: BufRead>(reader: R) -> impl Iterator<Item = Result<Graph>> {
    reader.lines().enumerate().filter_map(|(i, line)| {
        let line_no = i + 1;
        let line = match line {
            Ok(l) => l,
            Err(e) => return Some(Err(Error::parse(line_no, 0, e.to_string()))),
        };
        if line.trim().is_empty() {
            return None;
        }
        Some(parse_graph6_line(&line, line_no).and_then(|g| {
            let co = g.complement();
            if crate::invariants::independence_at_most_two(&co) {
                Ok(co)
            } else {
                Err(Error::parse(line_no, 0, "graph is not triangle-free"))
            }
        }))
    })
}

/// Complement of a maximal triangle-free graph grown by inserting the
/// vertex pairs in a seeded random order and skipping any pair that would
/// close a triangle.
pub fn random_alpha2_graph(n: usize, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(&mut rng);
    let mut sparse = Graph::empty(n);
    for (u, v) in pairs {
        if sparse.neighbors(u).is_disjoint(sparse.neighbors(v)) {
            sparse.add_edge(u, v);
        }
    }
    sparse.complement()
}
