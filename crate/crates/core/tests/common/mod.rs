//! Test-side oracles written directly from the definitions, sharing no code
//! with the library routines they check.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use oddminor::model::{Color, OddModel, Pattern, Side, ViolationKind};
use oddminor::Graph;

/// Chromatic number by trying `k = 0, 1, ..` colors with plain backtracking.
pub fn chromatic_brute(g: &Graph) -> usize {
    let n = g.n();
    (0..=n)
        .find(|&k| colorable(g, k, &mut vec![usize::MAX; n], 0))
        .unwrap()
}

fn colorable(g: &Graph, k: usize, colors: &mut Vec<usize>, v: usize) -> bool {
    if v == colors.len() {
        return true;
    }
    // Colors beyond the largest used so far are interchangeable.
    let used = colors[..v].iter().copied().max().map_or(0, |c| c + 1);
    for c in 0..k.min(used + 1) {
        if (0..v).all(|u| !(g.has_edge(u, v) && colors[u] == c)) {
            colors[v] = c;
            if colorable(g, k, colors, v + 1) {
                return true;
            }
        }
    }
    colors[v] = usize::MAX;
    false
}

/// Independence number by checking every vertex subset.
pub fn alpha_brute(g: &Graph) -> usize {
    let n = g.n();
    (0u32..1 << n)
        .filter(|s| {
            (0..n).all(|u| {
                (u + 1..n).all(|v| s >> u & 1 == 0 || s >> v & 1 == 0 || !g.has_edge(u, v))
            })
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Vertex connectivity as the size of the smallest vertex set whose removal
/// disconnects the graph (or `n - 1` for complete graphs).
pub fn connectivity_brute(g: &Graph) -> usize {
    let n = g.n();
    if (0..n).all(|u| (u + 1..n).all(|v| g.has_edge(u, v))) {
        return n.saturating_sub(1);
    }
    (0u32..1 << n)
        .filter(|&cut| {
            let rest: Vec<usize> = (0..n).filter(|v| cut >> v & 1 == 0).collect();
            rest.len() >= 2 && !connected(g, &rest)
        })
        .map(|cut| cut.count_ones() as usize)
        .min()
        .unwrap()
}

pub fn connected(g: &Graph, vs: &[usize]) -> bool {
    let Some(&start) = vs.first() else {
        return true;
    };
    let mut seen = vec![start];
    let mut i = 0;
    while i < seen.len() {
        let u = seen[i];
        for &w in vs {
            if g.has_edge(u, w) && !seen.contains(&w) {
                seen.push(w);
            }
        }
        i += 1;
    }
    seen.len() == vs.len()
}

/// Every way `m` fails the definition of an odd model of its pattern, by kind.
pub fn naive_violations(g: &Graph, m: &OddModel, special: bool) -> BTreeSet<ViolationKind> {
    use ViolationKind::*;
    let mut kinds = BTreeSet::new();
    let sets = &m.branch_sets;
    let color = |v: usize| m.colors.get(&v).copied();

    let lefts = sets.iter().filter(|b| b.side == Side::Left).count();
    let pattern_ok = match m.pattern {
        Pattern::Clique { size } => size > 0 && sets.len() == size,
        Pattern::Bipartite { left, right } | Pattern::BipartitePlusClique { left, right } => {
            lefts == left && sets.len() - lefts == right
        }
    };
    if !pattern_ok {
        kinds.insert(PatternMismatch);
    }

    let mut seen = BTreeMap::new();
    for b in sets {
        for &v in &b.vertices {
            if v >= g.n() {
                kinds.insert(VertexOutOfRange);
                continue;
            }
            *seen.entry(v).or_insert(0) += 1;
            if color(v).is_none() {
                kinds.insert(UncoloredVertex);
            }
        }
    }
    if seen.values().any(|&c| c > 1) {
        kinds.insert(Overlap);
    }

    for b in sets {
        let distinct: BTreeSet<usize> = b.vertices.iter().copied().collect();
        let edges_inside = b
            .tree_edges
            .iter()
            .all(|&(u, v)| distinct.contains(&u) && distinct.contains(&v) && g.has_edge(u, v));
        let tree_graph = Graph::from_edges(
            g.n().max(distinct.iter().max().map_or(0, |&v| v + 1)),
            &b.tree_edges
                .iter()
                .copied()
                .filter(|&(u, v)| u != v)
                .collect::<Vec<_>>(),
        )
        .ok();
        let spans = tree_graph
            .is_some_and(|t| connected(&t, &distinct.iter().copied().collect::<Vec<_>>()));
        let is_tree = !distinct.is_empty()
            && edges_inside
            && b.tree_edges.len() + 1 == b.vertices.len()
            && spans;
        if !is_tree {
            kinds.insert(NotTree);
        }
        for &(u, v) in &b.tree_edges {
            if g.has_edge(u, v) && color(u).is_some() && color(u) == color(v) {
                kinds.insert(TreeEdgeMonochromatic);
            }
        }
    }

    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            let needed = match m.pattern {
                Pattern::Clique { .. } => true,
                Pattern::Bipartite { .. } => a.side != b.side,
                Pattern::BipartitePlusClique { .. } => a.side != b.side || a.side == Side::Left,
            };
            let witnessed = a.vertices.iter().any(|&u| {
                b.vertices
                    .iter()
                    .any(|&w| g.has_edge(u, w) && color(u).is_some() && color(u) == color(w))
            });
            if needed && !witnessed {
                kinds.insert(MissingMonoCrossEdge);
            }
        }
    }

    if special {
        let single_colors: BTreeSet<Color> = sets
            .iter()
            .filter(|b| b.vertices.len() == 1)
            .filter_map(|b| color(b.vertices[0]))
            .collect();
        if single_colors.len() > 1 {
            kinds.insert(NotSpecial);
        }
    }
    kinds
}
