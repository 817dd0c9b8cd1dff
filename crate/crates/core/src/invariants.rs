//! Exact graph parameters: independence number, chromatic number, clique
//! number, vertex connectivity, and minimum vertex cut certificates.

use petgraph::graph::{NodeIndex, UnGraph};
use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{check_guard, Error, Result};
use crate::graph::Graph;
use crate::io::to_graph6;

pub const CLIQUE_GUARD: usize = 64;
pub const CHROMATIC_GUARD: usize = 40;
const MASK_LIMIT: usize = 64;

/// `true` iff no three vertices are pairwise nonadjacent, i.e. the complement
/// is triangle-free. Works for any `n`.
pub fn independence_at_most_two(g: &Graph) -> bool {
    (0..g.n()).all(|u| {
        let far = g.non_neighbors(u);
        far.iter().all(|v| {
            let mut rest = far.clone();
            rest.remove(v);
            rest.is_subset(g.neighbors(v))
        })
    })
}

pub fn independence_number(g: &Graph) -> Result<usize> {
    check_guard("independence_number", g.n(), CLIQUE_GUARD, MASK_LIMIT)?;
    Ok(max_clique(&g.complement())?.len())
}

/// A maximum clique; among all maximum cliques the one whose sorted vertex
/// list is lexicographically smallest.
pub fn max_clique(g: &Graph) -> Result<VertexSet> {
    check_guard("max_clique", g.n(), CLIQUE_GUARD, MASK_LIMIT)?;
    let adj = g.masks().expect("guarded to 64 vertices");
    Ok(VertexSet::from_mask(lex_max_clique(&adj, full_mask(g.n()))))
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Depth-first search visiting cliques in lexicographic order; the incumbent
/// is replaced only by strictly larger cliques, so the survivor is the
/// lexicographically first maximum clique.
pub(crate) fn lex_max_clique(adj: &[u64], within: u64) -> u64 {
    fn expand(adj: &[u64], clique: u64, size: u32, cand: u64, best: &mut (u64, u32)) {
        if size > best.1 {
            *best = (clique, size);
        }
        let mut rest = cand;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let next = rest & adj[v];
            if size + 1 + next.count_ones() <= best.1 {
                continue;
            }
            expand(adj, clique | 1 << v, size + 1, next, best);
        }
    }
    let mut best = (0, 0);
    expand(adj, 0, 0, within, &mut best);
    best.0
}

/// An optimal proper coloring. `colors[v]` lies in `0..chi`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coloring {
    pub chi: usize,
    pub colors: Vec<usize>,
}

impl Coloring {
    pub fn is_proper(&self, g: &Graph) -> bool {
        self.colors.len() == g.n()
            && self.colors.iter().all(|&c| c < self.chi)
            && g.edges()
                .iter()
                .all(|&(u, v)| self.colors[u] != self.colors[v])
    }

    pub fn classes(&self) -> Vec<VertexSet> {
        let mut out = vec![VertexSet::new(); self.chi];
        for (v, &c) in self.colors.iter().enumerate() {
            out[c].insert(v);
        }
        out
    }
}

/// Exact chromatic number with a witness coloring.
///
/// When the independence number is at most two every color class is a vertex
/// or a non-edge, so an optimal coloring is a maximum matching of the
/// complement. Other graphs go through DSATUR branch and bound with lower
/// bound `max(omega, ceil(n / alpha))`.
pub fn chromatic_number(g: &Graph) -> Result<Coloring> {
    check_guard("chromatic_number", g.n(), CHROMATIC_GUARD, MASK_LIMIT)?;
    let n = g.n();
    if n == 0 {
        return Ok(Coloring {
            chi: 0,
            colors: Vec::new(),
        });
    }
    if independence_at_most_two(g) {
        return Ok(coloring_from_complement_matching(g));
    }
    let adj = g.masks().expect("guarded to 64 vertices");
    let omega = lex_max_clique(&adj, full_mask(n)).count_ones() as usize;
    let alpha = independence_number(g)?;
    let lower = omega.max(n.div_ceil(alpha));
    let mut search = Dsatur {
        adj: &adj,
        lower,
        best: n + 1,
        best_colors: Vec::new(),
        colors: vec![usize::MAX; n],
    };
    search.run(0, 0);
    Ok(Coloring {
        chi: search.best,
        colors: search.best_colors,
    })
}

fn coloring_from_complement_matching(g: &Graph) -> Coloring {
    let n = g.n();
    let mut comp = UnGraph::<(), ()>::with_capacity(n, 0);
    for _ in 0..n {
        comp.add_node(());
    }
    for (u, v) in g.complement().edges() {
        comp.add_edge(NodeIndex::new(u), NodeIndex::new(v), ());
    }
    let matching = petgraph::algo::maximum_matching(&comp);
    let mut mate = vec![None; n];
    for (a, b) in matching.edges() {
        mate[a.index()] = Some(b.index());
        mate[b.index()] = Some(a.index());
    }
    let mut colors = vec![usize::MAX; n];
    let mut chi = 0;
    for v in 0..n {
        if colors[v] == usize::MAX {
            colors[v] = chi;
            if let Some(m) = mate[v] {
                colors[m] = chi;
            }
            chi += 1;
        }
    }
    Coloring { chi, colors }
}

struct Dsatur<'a> {
    adj: &'a [u64],
    lower: usize,
    best: usize,
    best_colors: Vec<usize>,
    colors: Vec<usize>,
}

impl Dsatur<'_> {
    fn run(&mut self, colored: usize, used: usize) {
        let n = self.adj.len();
        if colored == n {
            if used < self.best {
                self.best = used;
                self.best_colors = self.colors.clone();
            }
            return;
        }
        // Most saturated vertex; ties by uncolored degree, then index.
        let uncolored: u64 = (0..n)
            .filter(|&v| self.colors[v] == usize::MAX)
            .fold(0, |m, v| m | 1 << v);
        let mut pick = (0usize, 0u32, 0u32);
        let mut first = true;
        for v in 0..n {
            if self.colors[v] != usize::MAX {
                continue;
            }
            let seen = self.neighbor_colors(v);
            let key = (seen.count_ones(), (self.adj[v] & uncolored).count_ones());
            if first || key > (pick.1, pick.2) {
                pick = (v, key.0, key.1);
                first = false;
            }
        }
        let v = pick.0;
        let seen = self.neighbor_colors(v);
        for c in 0..(used + 1).min(self.best.saturating_sub(1)) {
            if seen & (1 << c) != 0 {
                continue;
            }
            self.colors[v] = c;
            self.run(colored + 1, used.max(c + 1));
            self.colors[v] = usize::MAX;
            if self.best <= self.lower {
                return;
            }
        }
    }

    fn neighbor_colors(&self, v: usize) -> u64 {
        let mut seen = 0u64;
        let mut nb = self.adj[v];
        while nb != 0 {
            let u = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if self.colors[u] != usize::MAX {
                seen |= 1 << self.colors[u];
            }
        }
        seen
    }
}

/// Unit vertex-capacity flow network: vertex `v` splits into `2v` (in) and
/// `2v + 1` (out); graph edges become uncapacitated arcs out -> in.
struct VertexFlow {
    head: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<usize>,
}

impl VertexFlow {
    fn new(g: &Graph) -> Self {
        let n = g.n();
        let mut f = VertexFlow {
            head: vec![Vec::new(); 2 * n],
            to: Vec::new(),
            cap: Vec::new(),
        };
        for v in 0..n {
            f.arc(2 * v, 2 * v + 1, 1);
        }
        for (u, v) in g.edges() {
            f.arc(2 * u + 1, 2 * v, n);
            f.arc(2 * v + 1, 2 * u, n);
        }
        f
    }

    fn arc(&mut self, a: usize, b: usize, c: usize) {
        self.head[a].push(self.to.len());
        self.to.push(b);
        self.cap.push(c);
        self.head[b].push(self.to.len());
        self.to.push(a);
        self.cap.push(0);
    }

    /// Augments from `out(s)` to `in(t)` until `limit` paths are found or none remain.
    fn max_flow(&mut self, s: usize, t: usize, limit: usize) -> usize {
        let (src, sink) = (2 * s + 1, 2 * t);
        let mut flow = 0;
        while flow < limit {
            let mut via = vec![usize::MAX; self.head.len()];
            let mut queue = std::collections::VecDeque::from([src]);
            let mut reached = vec![false; self.head.len()];
            reached[src] = true;
            while let Some(x) = queue.pop_front() {
                if x == sink {
                    break;
                }
                for &a in &self.head[x] {
                    let y = self.to[a];
                    if self.cap[a] > 0 && !reached[y] {
                        reached[y] = true;
                        via[y] = a;
                        queue.push_back(y);
                    }
                }
            }
            if !reached[sink] {
                break;
            }
            let mut x = sink;
            while x != src {
                let a = via[x];
                self.cap[a] -= 1;
                self.cap[a ^ 1] += 1;
                x = self.to[a ^ 1];
            }
            flow += 1;
        }
        flow
    }

    /// Split nodes reachable from `out(s)` in the residual network.
    fn residual_reach(&self, s: usize) -> Vec<bool> {
        let mut reached = vec![false; self.head.len()];
        let mut stack = vec![2 * s + 1];
        reached[2 * s + 1] = true;
        while let Some(x) = stack.pop() {
            for &a in &self.head[x] {
                let y = self.to[a];
                if self.cap[a] > 0 && !reached[y] {
                    reached[y] = true;
                    stack.push(y);
                }
            }
        }
        reached
    }
}

/// Maximum number of internally disjoint `s`-`t` paths, capped at `limit`.
pub fn local_connectivity(g: &Graph, s: usize, t: usize, limit: usize) -> usize {
    VertexFlow::new(g).max_flow(s, t, limit)
}

/// `kappa(G)`: the minimum over nonadjacent pairs of the local vertex
/// connectivity; `n - 1` for complete graphs and 0 for disconnected ones.
pub fn vertex_connectivity(g: &Graph) -> usize {
    let n = g.n();
    if g.is_complete() {
        return n.saturating_sub(1);
    }
    if !g.is_connected() {
        return 0;
    }
    let mut best = (0..n).map(|v| g.degree(v)).min().unwrap_or(0);
    for s in 0..n {
        for t in s + 1..n {
            if best == 0 {
                return 0;
            }
            if !g.has_edge(s, t) {
                best = best.min(local_connectivity(g, s, t, best));
            }
        }
    }
    best
}

/// A minimum vertex cut with the two clique sides it leaves behind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutCertificate {
    /// `X`.
    pub cut: VertexSet,
    /// `L`, the side with `|L| + |X_L| >= |R| + |X_R|`.
    pub left: VertexSet,
    pub right: VertexSet,
    /// Cut vertices complete to `L` (including those complete to both sides).
    pub cut_left: VertexSet,
    /// Cut vertices complete to `R` but not to `L`.
    pub cut_right: VertexSet,
}

/// Minimum vertex cut of a connected or disconnected non-complete graph with
/// independence number at most two.
///
/// The cut is the source-side minimum separator of the lexicographically first
/// nonadjacent pair whose local connectivity equals `kappa(G)`, and `L` starts
/// as the component holding that pair's first vertex.
pub fn minimum_vertex_cut(g: &Graph) -> Result<CutCertificate> {
    if g.is_complete() {
        return Err(Error::precondition(
            "complete-graph",
            "a complete graph has no vertex cut",
        ));
    }
    if !independence_at_most_two(g) {
        return Err(Error::precondition(
            "alpha>2",
            "minimum_vertex_cut needs alpha <= 2",
        ));
    }
    let kappa = vertex_connectivity(g);
    let n = g.n();
    let (s, reach) = (0..n)
        .flat_map(|s| (s + 1..n).map(move |t| (s, t)))
        .filter(|&(s, t)| !g.has_edge(s, t))
        .find_map(|(s, t)| {
            let mut flow = VertexFlow::new(g);
            (flow.max_flow(s, t, kappa + 1) == kappa).then(|| (s, flow.residual_reach(s)))
        })
        .expect("some nonadjacent pair attains kappa");
    let cut: VertexSet = (0..n)
        .filter(|&v| reach[2 * v] && !reach[2 * v + 1])
        .collect();
    debug_assert_eq!(cut.len(), kappa);

    let contradiction =
        |detail: String| Error::contradiction("minimum-vertex-cut", to_graph6(g), detail);
    let rest = g.vertices().difference(&cut);
    let comps = g.components_within(&rest);
    if comps.len() != 2 {
        return Err(contradiction(format!(
            "G - X has {} components for X = {:?}",
            comps.len(),
            cut
        )));
    }
    if let Some(c) = comps.iter().find(|c| !g.is_clique(c)) {
        return Err(contradiction(format!(
            "component {c:?} of G - X is not a clique"
        )));
    }
    let (a, b) = if comps[0].contains(s) {
        (comps[0].clone(), comps[1].clone())
    } else {
        (comps[1].clone(), comps[0].clone())
    };
    let split = |l: &VertexSet, r: &VertexSet| -> Result<(VertexSet, VertexSet)> {
        let mut xl = VertexSet::new();
        let mut xr = VertexSet::new();
        for x in &cut {
            if l.is_subset(g.neighbors(x)) {
                xl.insert(x);
            } else if r.is_subset(g.neighbors(x)) {
                xr.insert(x);
            } else {
                return Err(contradiction(format!(
                    "cut vertex {x} is complete to neither side"
                )));
            }
        }
        Ok((xl, xr))
    };
    let (xl, xr) = split(&a, &b)?;
    let cert = if a.len() + xl.len() >= b.len() + xr.len() {
        CutCertificate {
            cut,
            left: a,
            right: b,
            cut_left: xl,
            cut_right: xr,
        }
    } else {
        let (xl, xr) = split(&b, &a)?;
        CutCertificate {
            cut,
            left: b,
            right: a,
            cut_left: xl,
            cut_right: xr,
        }
    };
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;

    fn set(v: &[usize]) -> VertexSet {
        v.iter().copied().collect()
    }

    /// Two triangles {0,1,2}, {3,4,5} and a vertex 6 adjacent to 0, 1, 2, 3.
    fn two_triangles_bridge() -> Graph {
        Graph::from_edges(
            7,
            &[
                (0, 1),
                (0, 2),
                (1, 2),
                (3, 4),
                (3, 5),
                (4, 5),
                (6, 0),
                (6, 1),
                (6, 2),
                (6, 3),
            ],
        )
        .unwrap()
    }

    #[test]
    fn alpha_at_most_two_examples() {
        assert!(independence_at_most_two(&cycle(5)));
        assert!(!independence_at_most_two(&cycle(6)));
        assert!(independence_at_most_two(&complete(4)));
        assert!(independence_at_most_two(&petersen().complement()));
    }

    #[test]
    fn independence_number_examples() {
        assert_eq!(independence_number(&cycle(5)).unwrap(), 2);
        assert_eq!(independence_number(&petersen().complement()).unwrap(), 2);
        assert_eq!(independence_number(&Graph::empty(4)).unwrap(), 4);
        assert_eq!(independence_number(&petersen()).unwrap(), 4);
    }

    #[test]
    fn max_clique_examples() {
        assert_eq!(max_clique(&complete(4)).unwrap(), set(&[0, 1, 2, 3]));
        assert_eq!(max_clique(&cycle(5)).unwrap(), set(&[0, 1]));
        assert_eq!(max_clique(&cycle(7).complement()).unwrap(), set(&[0, 2, 4]));
        assert_eq!(max_clique(&Graph::empty(0)).unwrap(), VertexSet::new());
    }

    #[test]
    fn chromatic_examples() {
        assert_eq!(chromatic_number(&cycle(5)).unwrap().chi, 3);
        assert_eq!(chromatic_number(&cycle(7).complement()).unwrap().chi, 4);
        assert_eq!(chromatic_number(&petersen().complement()).unwrap().chi, 5);
        // Branch-and-bound path (alpha > 2).
        assert_eq!(chromatic_number(&cycle(6)).unwrap().chi, 2);
        assert_eq!(chromatic_number(&cycle(9)).unwrap().chi, 3);
        assert_eq!(chromatic_number(&petersen()).unwrap().chi, 3);
        assert_eq!(chromatic_number(&Graph::empty(5)).unwrap().chi, 1);
        let c = chromatic_number(&petersen()).unwrap();
        assert!(c.is_proper(&petersen()));
    }

    #[test]
    fn chromatic_guard() {
        assert!(matches!(
            chromatic_number(&Graph::empty(41)),
            Err(Error::Guard { .. })
        ));
    }

    #[test]
    fn connectivity_examples() {
        assert_eq!(vertex_connectivity(&cycle(5)), 2);
        assert_eq!(vertex_connectivity(&cycle(7).complement()), 4);
        assert_eq!(vertex_connectivity(&complete(4)), 3);
        assert_eq!(vertex_connectivity(&Graph::empty(3)), 0);
        assert_eq!(vertex_connectivity(&two_triangles_bridge()), 1);
        assert_eq!(vertex_connectivity(&petersen()), 3);
    }

    #[test]
    fn minimum_cut_c5() {
        let c = minimum_vertex_cut(&cycle(5)).unwrap();
        assert_eq!(c.cut, set(&[1, 4]));
        assert_eq!(c.left, set(&[0]));
        assert_eq!(c.right, set(&[2, 3]));
        assert_eq!(c.cut_left, set(&[1, 4]));
        assert_eq!(c.cut_right, VertexSet::new());
    }

    #[test]
    fn minimum_cut_bridge_vertex() {
        let c = minimum_vertex_cut(&two_triangles_bridge()).unwrap();
        assert_eq!(c.cut, set(&[6]));
        assert_eq!(c.left, set(&[0, 1, 2]));
        assert_eq!(c.right, set(&[3, 4, 5]));
        assert_eq!(c.cut_left, set(&[6]));
        assert_eq!(c.cut_right, VertexSet::new());
    }

    #[test]
    fn minimum_cut_errors() {
        assert!(matches!(
            minimum_vertex_cut(&complete(4)),
            Err(Error::Precondition {
                reason: "complete-graph",
                ..
            })
        ));
        assert!(matches!(
            minimum_vertex_cut(&cycle(6)),
            Err(Error::Precondition {
                reason: "alpha>2",
                ..
            })
        ));
    }

    #[test]
    fn disconnected_cut_is_empty() {
        let g = Graph::from_edges(5, &[(0, 1), (2, 3), (3, 4), (2, 4)]).unwrap();
        let c = minimum_vertex_cut(&g).unwrap();
        assert!(c.cut.is_empty());
        assert_eq!((c.left, c.right), (set(&[2, 3, 4]), set(&[0, 1])));
    }
}
