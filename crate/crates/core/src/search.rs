//! Search subroutines consumed by the constructions: saturating bipartite
//! matchings with Hall violators, disjoint induced P3 packings, and the
//! exchange loop that pulls a packing towards a fixed vertex.

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::io::to_graph6;

/// Either a matching saturating the requested side, or a Hall violator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatchingOrViolator {
    /// Pairs `(a, r)` ordered by `a`.
    Matching(Vec<(usize, usize)>),
    /// `S` with `|N(S) ∩ R| < |S|`.
    Violator(VertexSet),
}

/// Augmenting-path matching of `a` into `r` using only edges of `g`.
///
/// When some vertex cannot be matched, the vertices of `a` visited by its
/// failed alternating search form a Hall violator: every neighbor they have
/// in `r` was visited and is matched back into the visited set.
pub fn saturating_matching(g: &Graph, a: &VertexSet, r: &VertexSet) -> Result<MatchingOrViolator> {
    if !a.is_disjoint(r) {
        return Err(Error::precondition(
            "overlapping-sides",
            format!("matching sides overlap in {:?}", a.intersection(r)),
        ));
    }
    let mut mate_of_r: Vec<Option<usize>> = vec![None; g.n().max(r.bound())];
    for root in a {
        let mut seen_a = VertexSet::new();
        let mut seen_r = VertexSet::new();
        if !augment(g, r, root, &mut mate_of_r, &mut seen_a, &mut seen_r) {
            return Ok(MatchingOrViolator::Violator(seen_a));
        }
    }
    let mut pairs: Vec<(usize, usize)> = mate_of_r
        .iter()
        .enumerate()
        .filter_map(|(rv, m)| m.map(|av| (av, rv)))
        .collect();
    pairs.sort_unstable();
    Ok(MatchingOrViolator::Matching(pairs))
}

fn augment(
    g: &Graph,
    r: &VertexSet,
    x: usize,
    mate_of_r: &mut [Option<usize>],
    seen_a: &mut VertexSet,
    seen_r: &mut VertexSet,
) -> bool {
    seen_a.insert(x);
    if x >= g.n() {
        return false;
    }
    for y in g.neighbors(x).intersection(r).iter() {
        if !seen_r.insert(y) {
            continue;
        }
        let free = match mate_of_r[y] {
            None => true,
            Some(w) => augment(g, r, w, mate_of_r, seen_a, seen_r),
        };
        if free {
            mate_of_r[y] = Some(x);
            return true;
        }
    }
    false
}

/// An induced path `a1 - a2 - a3`: `a1a2`, `a2a3` are edges, `a1a3` is not.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct P3(pub usize, pub usize, pub usize);

impl P3 {
    pub fn ends(&self) -> [usize; 2] {
        [self.0, self.2]
    }

    pub fn mid(&self) -> usize {
        self.1
    }

    pub fn vertices(&self) -> [usize; 3] {
        [self.0, self.1, self.2]
    }

    pub fn reversed(&self) -> P3 {
        P3(self.2, self.1, self.0)
    }

    pub fn is_induced_in(&self, g: &Graph) -> bool {
        let [a, b, c] = self.vertices();
        a != c && g.has_edge(a, b) && g.has_edge(b, c) && !g.has_edge(a, c)
    }
}

/// Pairwise vertex-disjoint induced P3s.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct P3Packing {
    pub paths: Vec<P3>,
}

impl P3Packing {
    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn vertices(&self) -> VertexSet {
        self.paths.iter().flat_map(P3::vertices).collect()
    }
}

/// All induced P3s avoiding `forbidden`, as `(a1, a2, a3)` with `a1 < a3`,
/// in lexicographic order.
pub fn induced_p3s(g: &Graph, forbidden: &VertexSet) -> Vec<P3> {
    let allowed = g.vertices().difference(forbidden);
    let mut out = Vec::new();
    for a in &allowed {
        for b in g.neighbors(a).intersection(&allowed).iter() {
            for c in g.neighbors(b).intersection(&allowed).iter() {
                if c > a && !g.has_edge(a, c) {
                    out.push(P3(a, b, c));
                }
            }
        }
    }
    out
}

/// Exactly `k` disjoint induced P3s avoiding `forbidden`, or `None` if no
/// such packing exists. Exact backtracking over [`induced_p3s`] in order; the
/// first packing found is returned.
pub fn find_p3_packing(g: &Graph, k: usize, forbidden: &VertexSet) -> Option<P3Packing> {
    let candidates = induced_p3s(g, forbidden);
    let free = g.n() - forbidden.intersection(&g.vertices()).len();
    let mut used = vec![false; g.n()];
    let mut chosen = Vec::with_capacity(k);
    pack(&candidates, 0, k, free, &mut used, &mut chosen).then_some(P3Packing { paths: chosen })
}

fn pack(
    candidates: &[P3],
    from: usize,
    k: usize,
    free: usize,
    used: &mut [bool],
    chosen: &mut Vec<P3>,
) -> bool {
    if chosen.len() == k {
        return true;
    }
    if free < 3 * (k - chosen.len()) {
        return false;
    }
    for (i, p) in candidates.iter().enumerate().skip(from) {
        // Not enough candidates left to finish even if all were disjoint.
        if candidates.len() - i < k - chosen.len() {
            return false;
        }
        let vs = p.vertices();
        if vs.iter().any(|&v| used[v]) {
            continue;
        }
        vs.iter().for_each(|&v| used[v] = true);
        chosen.push(*p);
        if pack(candidates, i + 1, k, free - 3, used, chosen) {
            return true;
        }
        chosen.pop();
        vs.iter().for_each(|&v| used[v] = false);
    }
    false
}

/// `|N[v] - V(packing)|`, the quantity the exchange loop increases.
pub fn count_quantity(g: &Graph, v: usize, packing: &P3Packing) -> usize {
    g.closed_neighbors(v).difference(&packing.vertices()).len()
}

/// `B ∩ M(v)` where `B = V - V(packing) - v` and `M(v) = V - N[v]`.
pub fn far_leftovers(g: &Graph, v: usize, packing: &P3Packing) -> VertexSet {
    g.non_neighbors(v).difference(&packing.vertices())
}

/// Exchanges paths of `packing` until at most one leftover vertex is
/// nonadjacent to `v`.
///
/// While two or more leftovers `x` lie outside `N[v]`, a path `P` inside
/// `N(v)` is rerouted through the first such `x`, oriented so that `a1 x` is
/// an edge, and replaced by `a3-x-a1` if `a3 x` is an edge, else by `a2-a1-x`
/// if `a2 x` is a non-edge, else by `a3-a2-x`. Each exchange raises
/// [`count_quantity`] by one.
pub fn improve_packing_near_vertex(g: &Graph, v: usize, packing: &P3Packing) -> Result<P3Packing> {
    improve_with_count(g, v, packing).map(|(p, _)| p)
}

pub(crate) fn improve_with_count(
    g: &Graph,
    v: usize,
    packing: &P3Packing,
) -> Result<(P3Packing, usize)> {
    if v >= g.n() {
        return Err(Error::precondition(
            "vertex-out-of-range",
            format!("vertex {v}"),
        ));
    }
    if packing.vertices().contains(v) {
        return Err(Error::precondition(
            "vertex-in-packing",
            format!("vertex {v} lies on a packed path"),
        ));
    }
    let stuck = |detail: String| Error::contradiction("packing-exchange", to_graph6(g), detail);
    let mut current = packing.clone();
    let mut exchanges = 0;
    loop {
        let far = far_leftovers(g, v, &current);
        if far.len() <= 1 {
            return Ok((current, exchanges));
        }
        let near = g.neighbors(v);
        let Some(slot) = current
            .paths
            .iter()
            .position(|p| p.vertices().iter().all(|&a| near.contains(a)))
        else {
            return Err(stuck(format!(
                "{} leftovers outside N[{v}] but no packed path lies inside N({v})",
                far.len()
            )));
        };
        let x = far.first().expect("at least two leftovers");
        let mut p = current.paths[slot];
        if !g.has_edge(p.0, x) {
            p = p.reversed();
        }
        if !g.has_edge(p.0, x) {
            return Err(stuck(format!(
                "{{{}, {}, {x}}} is independent, so alpha > 2",
                p.0, p.2
            )));
        }
        let P3(a1, a2, a3) = p;
        let replacement = if g.has_edge(a3, x) {
            P3(a3, x, a1)
        } else if !g.has_edge(a2, x) {
            P3(a2, a1, x)
        } else {
            P3(a3, a2, x)
        };
        debug_assert!(replacement.is_induced_in(g));
        let before = count_quantity(g, v, &current);
        current.paths[slot] = replacement;
        debug_assert_eq!(count_quantity(g, v, &current), before + 1);
        exchanges += 1;
    }
}
