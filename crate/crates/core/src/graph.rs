//! Simple undirected graphs over dense vertex indices `0..n`.

use std::fmt;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};

/// Simple undirected graph with one neighbor bitset per vertex.
///
/// Adjacency is kept symmetric and irreflexive by every constructor; a graph
/// is never mutated once handed to an algorithm.
#[derive(Clone, Default)]
pub struct Graph {
    adj: Vec<VertexSet>,
    labels: Option<Vec<String>>,
}

/// Result of [`Graph::induced_subgraph`]: the subgraph plus both index maps.
#[derive(Clone, Debug)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `new_to_old[i]` is the host vertex behind subgraph vertex `i`.
    pub new_to_old: Vec<usize>,
    /// `old_to_new[v]` is `Some(i)` iff host vertex `v` was kept.
    pub old_to_new: Vec<Option<usize>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![VertexSet::new(); n],
            labels: None,
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.try_add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Adds `uv`, rejecting self-loops and out-of-range endpoints.
    pub fn try_add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        if u >= n || v >= n {
            return Err(Error::precondition(
                "vertex-out-of-range",
                format!("edge {u}-{v} in a graph on {n} vertices"),
            ));
        }
        if u == v {
            return Err(Error::precondition(
                "self-loop",
                format!("self-loop at {u}"),
            ));
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
        Ok(())
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u != v && u < self.n() && v < self.n());
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u).is_some_and(|a| a.contains(v))
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    /// `N[v]`.
    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        let mut s = self.adj[v].clone();
        s.insert(v);
        s
    }

    /// `V - N[v]`. When the independence number is at most two this is a clique.
    pub fn non_neighbors(&self, v: usize) -> VertexSet {
        self.vertices().difference(&self.closed_neighbors(v))
    }

    /// `N(S)`: vertices outside `s` with a neighbor in `s`.
    pub fn neighborhood_of(&self, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::new();
        for v in s {
            out = out.union(&self.adj[v]);
        }
        out.difference(s)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(VertexSet::len).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|u| {
                self.adj[u]
                    .iter()
                    .filter(move |&v| v > u)
                    .map(move |v| (u, v))
            })
            .collect()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        self.adj.iter().all(|a| a.len() + 1 == n)
    }

    pub fn is_clique(&self, s: &VertexSet) -> bool {
        s.iter().all(|v| {
            let mut others = s.clone();
            others.remove(v);
            others.is_subset(&self.adj[v])
        })
    }

    /// `a` is complete to `b`: every vertex of `a` is adjacent to every vertex of `b`.
    pub fn is_complete_to(&self, a: &VertexSet, b: &VertexSet) -> bool {
        a.iter().all(|v| b.is_subset(&self.adj[v]))
    }

    /// Per-vertex neighbor masks, available when `n <= 64`.
    pub fn masks(&self) -> Option<Vec<u64>> {
        (self.n() <= 64).then(|| self.adj.iter().map(VertexSet::to_mask).collect())
    }

    pub fn from_masks(masks: &[u64]) -> Self {
        let n = masks.len();
        let mut g = Graph::empty(n);
        for (u, &m) in masks.iter().enumerate() {
            for v in VertexSet::from_mask(m).iter().filter(|&v| v > u && v < n) {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn complement(&self) -> Graph {
        let full = self.vertices();
        Graph {
            adj: (0..self.n())
                .map(|v| {
                    let mut s = full.difference(&self.adj[v]);
                    s.remove(v);
                    s
                })
                .collect(),
            labels: self.labels.clone(),
        }
    }

    /// `G[S]`, with vertices renumbered in ascending order of their host index.
    pub fn induced_subgraph(&self, s: &VertexSet) -> Result<InducedSubgraph> {
        if let Some(v) = s.iter().find(|&v| v >= self.n()) {
            return Err(Error::precondition(
                "vertex-out-of-range",
                format!("vertex {v} in a graph on {} vertices", self.n()),
            ));
        }
        let new_to_old = s.to_vec();
        let mut old_to_new = vec![None; self.n()];
        for (i, &v) in new_to_old.iter().enumerate() {
            old_to_new[v] = Some(i);
        }
        let adj = new_to_old
            .iter()
            .map(|&v| {
                self.adj[v]
                    .iter()
                    .filter_map(|u| old_to_new[u])
                    .collect::<VertexSet>()
            })
            .collect();
        let labels = self
            .labels
            .as_ref()
            .map(|l| new_to_old.iter().map(|&v| l[v].clone()).collect());
        Ok(InducedSubgraph {
            graph: Graph { adj, labels },
            new_to_old,
            old_to_new,
        })
    }

    /// `G - S`.
    pub fn remove_vertices(&self, s: &VertexSet) -> InducedSubgraph {
        self.induced_subgraph(&self.vertices().difference(s))
            .expect("complement of a set is in range")
    }

    /// Connected components ordered by their smallest member.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        self.components_within(&self.vertices())
    }

    /// Components of `G[within]`, in host indices.
    pub fn components_within(&self, within: &VertexSet) -> Vec<VertexSet> {
        let mut unseen = within.clone();
        let mut out = Vec::new();
        while let Some(root) = unseen.first() {
            let mut comp = VertexSet::singleton(root);
            let mut frontier = vec![root];
            unseen.remove(root);
            while let Some(v) = frontier.pop() {
                for u in self.adj[v].intersection(&unseen).iter() {
                    unseen.remove(u);
                    comp.insert(u);
                    frontier.push(u);
                }
            }
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() <= 1
    }

    /// Disjoint union of `self` and `other` plus every edge between them.
    /// `other`'s vertices are shifted by `self.n()`.
    pub fn join(&self, other: &Graph) -> Graph {
        let (a, b) = (self.n(), other.n());
        let mut g = Graph::empty(a + b);
        for (u, v) in self.edges() {
            g.add_edge(u, v);
        }
        for (u, v) in other.edges() {
            g.add_edge(a + u, a + v);
        }
        for u in 0..a {
            for v in 0..b {
                g.add_edge(u, a + v);
            }
        }
        g
    }

    /// External vertex labels recorded at ingestion, if any.
    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub(crate) fn with_labels(mut self, labels: Vec<String>) -> Self {
        debug_assert_eq!(labels.len(), self.n());
        self.labels = Some(labels);
        self
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.adj == other.adj
    }
}

impl Eq for Graph {}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges())
            .finish()
    }
}

/// Small named graphs used throughout the tests and the CLI.
pub mod families {
    use super::Graph;

    pub fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for u in 0..n {
            for v in u + 1..n {
                g.add_edge(u, v);
            }
        }
        g
    }

    pub fn cycle(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        if n >= 3 {
            for v in 0..n {
                g.add_edge(v, (v + 1) % n);
            }
        }
        g
    }

    pub fn path(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for v in 1..n {
            g.add_edge(v - 1, v);
        }
        g
    }

    /// Outer 5-cycle `0..5`, inner pentagram `5..10`, spokes `i -- i+5`.
    pub fn petersen() -> Graph {
        let mut g = Graph::empty(10);
        for i in 0..5 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(5 + i, 5 + (i + 2) % 5);
            g.add_edge(i, i + 5);
        }
        g
    }
}
