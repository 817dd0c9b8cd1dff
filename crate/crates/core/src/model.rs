//! Odd minor certificates and their verifier.
//!
//! A certificate lists one branch set per pattern vertex, each with an
//! explicit spanning tree, plus a 2-coloring of every branch-set vertex. It
//! is valid when tree edges are bichromatic and every pattern edge is
//! witnessed by a monochromatic host edge between the two branch sets.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// The minor shape a certificate claims to realize.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Pattern {
    /// `K_size`.
    Clique { size: usize },
    /// `K_{left,right}`.
    Bipartite { left: usize, right: usize },
    /// `K^left_{left,right}`: `K_{left,right}` with the left side completed to a clique.
    BipartitePlusClique { left: usize, right: usize },
}

impl Pattern {
    pub fn size(&self) -> usize {
        match *self {
            Pattern::Clique { size } => size,
            Pattern::Bipartite { left, right } | Pattern::BipartitePlusClique { left, right } => {
                left + right
            }
        }
    }

    /// Whether branch sets tagged `a` and `b` must be joined.
    pub fn requires_edge(&self, a: Side, b: Side) -> bool {
        match self {
            Pattern::Clique { .. } => true,
            Pattern::Bipartite { .. } => a != b,
            Pattern::BipartitePlusClique { .. } => a != b || (a == Side::Left && b == Side::Left),
        }
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Clique { size } => write!(f, "K_{size}"),
            Pattern::Bipartite { left, right } => write!(f, "K_{{{left},{right}}}"),
            Pattern::BipartitePlusClique { left, right } => {
                write!(f, "K^{left}_{{{left},{right}}}")
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flipped(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// Serialized as the integers 1 and 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub enum Color {
    One,
    Two,
}

impl Color {
    pub fn flipped(self) -> Color {
        match self {
            Color::One => Color::Two,
            Color::Two => Color::One,
        }
    }
}

impl From<Color> for u8 {
    fn from(c: Color) -> u8 {
        match c {
            Color::One => 1,
            Color::Two => 2,
        }
    }
}

impl TryFrom<u8> for Color {
    type Error = String;

    fn try_from(v: u8) -> Result<Self, String> {
        match v {
            1 => Ok(Color::One),
            2 => Ok(Color::Two),
            other => Err(format!("color must be 1 or 2, found {other}")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BranchSet {
    pub side: Side,
    pub vertices: Vec<usize>,
    pub tree_edges: Vec<(usize, usize)>,
}

impl BranchSet {
    pub fn singleton(side: Side, v: usize) -> Self {
        BranchSet {
            side,
            vertices: vec![v],
            tree_edges: Vec::new(),
        }
    }

    pub fn is_singleton(&self) -> bool {
        self.vertices.len() == 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OddModel {
    pub pattern: Pattern,
    pub branch_sets: Vec<BranchSet>,
    pub colors: BTreeMap<usize, Color>,
}

impl OddModel {
    pub fn vertices(&self) -> impl Iterator<Item = usize> + '_ {
        self.branch_sets
            .iter()
            .flat_map(|b| b.vertices.iter().copied())
    }

    pub fn color(&self, v: usize) -> Option<Color> {
        self.colors.get(&v).copied()
    }

    /// Color shared by all single-vertex branch sets, if they agree and exist.
    pub fn singleton_color(&self) -> Option<Color> {
        let mut colors = self
            .branch_sets
            .iter()
            .filter(|b| b.is_singleton())
            .filter_map(|b| self.color(b.vertices[0]));
        let first = colors.next()?;
        colors.all(|c| c == first).then_some(first)
    }

    pub fn count_side(&self, side: Side) -> usize {
        self.branch_sets.iter().filter(|b| b.side == side).count()
    }

    /// Renames every vertex through `f`.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> OddModel {
        OddModel {
            pattern: self.pattern,
            branch_sets: self
                .branch_sets
                .iter()
                .map(|b| BranchSet {
                    side: b.side,
                    vertices: b.vertices.iter().map(|&v| f(v)).collect(),
                    tree_edges: b.tree_edges.iter().map(|&(u, v)| (f(u), f(v))).collect(),
                })
                .collect(),
            colors: self.colors.iter().map(|(&v, &c)| (f(v), c)).collect(),
        }
    }

    pub fn flip_colors(&self) -> OddModel {
        OddModel {
            colors: self
                .colors
                .iter()
                .map(|(&v, &c)| (v, c.flipped()))
                .collect(),
            ..self.clone()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationKind {
    Overlap,
    NotTree,
    TreeEdgeMonochromatic,
    MissingMonoCrossEdge,
    UncoloredVertex,
    NotSpecial,
    /// Branch-set count or side tags disagree with the pattern.
    PatternMismatch,
    VertexOutOfRange,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub kind: ViolationKind,
    /// Offending branch-set indices and/or vertices, as described in `message`.
    pub detail: Vec<usize>,
    pub message: String,
}

impl Violation {
    fn new(kind: ViolationKind, detail: Vec<usize>, message: String) -> Self {
        Violation {
            kind,
            detail,
            message,
        }
    }
}

/// Checks `m` against `g`; the result is empty iff `m` is a valid odd model
/// (and, with `require_special`, all single-vertex branch sets share a color).
/// Every violation found is reported.
pub fn verify_odd_model(g: &Graph, m: &OddModel, require_special: bool) -> Vec<Violation> {
    use ViolationKind::*;
    let mut out = Vec::new();
    let n = g.n();

    match m.pattern {
        Pattern::Clique { size } => {
            if size == 0 || m.branch_sets.len() != size {
                out.push(Violation::new(
                    PatternMismatch,
                    vec![m.branch_sets.len()],
                    format!(
                        "{} branch sets for pattern {}",
                        m.branch_sets.len(),
                        m.pattern
                    ),
                ));
            }
        }
        Pattern::Bipartite { left, right } | Pattern::BipartitePlusClique { left, right } => {
            let (l, r) = (m.count_side(Side::Left), m.count_side(Side::Right));
            if (l, r) != (left, right) {
                out.push(Violation::new(
                    PatternMismatch,
                    vec![l, r],
                    format!(
                        "{l} left and {r} right branch sets for pattern {}",
                        m.pattern
                    ),
                ));
            }
        }
    }

    let mut owner: BTreeMap<usize, usize> = BTreeMap::new();
    for (i, b) in m.branch_sets.iter().enumerate() {
        for &v in &b.vertices {
            if v >= n {
                out.push(Violation::new(
                    VertexOutOfRange,
                    vec![i, v],
                    format!("branch set {i} names vertex {v} but the graph has {n} vertices"),
                ));
                continue;
            }
            if let Some(&j) = owner.get(&v) {
                out.push(Violation::new(
                    Overlap,
                    vec![v, j, i],
                    format!("vertex {v} appears in branch sets {j} and {i}"),
                ));
            } else {
                owner.insert(v, i);
            }
            if m.color(v).is_none() {
                out.push(Violation::new(
                    UncoloredVertex,
                    vec![v],
                    format!("vertex {v} of branch set {i} has no color"),
                ));
            }
        }
    }

    for (i, b) in m.branch_sets.iter().enumerate() {
        if let Some(reason) = tree_defect(g, b) {
            out.push(Violation::new(
                NotTree,
                vec![i],
                format!("branch set {i}: {reason}"),
            ));
        }
        for &(u, v) in &b.tree_edges {
            if let (Some(cu), Some(cv)) = (m.color(u), m.color(v)) {
                if cu == cv && g.has_edge(u, v) {
                    out.push(Violation::new(
                        TreeEdgeMonochromatic,
                        vec![i, u, v],
                        format!(
                            "tree edge {u}-{v} of branch set {i} has both ends colored {}",
                            u8::from(cu)
                        ),
                    ));
                }
            }
        }
    }

    for i in 0..m.branch_sets.len() {
        for j in i + 1..m.branch_sets.len() {
            let (a, b) = (&m.branch_sets[i], &m.branch_sets[j]);
            if !m.pattern.requires_edge(a.side, b.side) {
                continue;
            }
            let witnessed = a.vertices.iter().any(|&u| {
                b.vertices
                    .iter()
                    .any(|&w| g.has_edge(u, w) && m.color(u).is_some() && m.color(u) == m.color(w))
            });
            if !witnessed {
                out.push(Violation::new(
                    MissingMonoCrossEdge,
                    vec![i, j],
                    format!("no monochromatic edge joins branch sets {i} and {j}"),
                ));
            }
        }
    }

    if require_special {
        let singles: Vec<(usize, Color)> = m
            .branch_sets
            .iter()
            .enumerate()
            .filter(|(_, b)| b.is_singleton())
            .filter_map(|(i, b)| m.color(b.vertices[0]).map(|c| (i, c)))
            .collect();
        if let Some(&(_, first)) = singles.first() {
            let odd_ones: Vec<usize> = singles
                .iter()
                .filter(|&&(_, c)| c != first)
                .map(|&(i, _)| i)
                .collect();
            if !odd_ones.is_empty() {
                out.push(Violation::new(
                    NotSpecial,
                    odd_ones,
                    "single-vertex branch sets carry both colors".to_string(),
                ));
            }
        }
    }
    out
}

/// Why `b.tree_edges` is not a spanning tree of `b.vertices` in `g`, if it isn't.
fn tree_defect(g: &Graph, b: &BranchSet) -> Option<String> {
    if b.vertices.is_empty() {
        return Some("empty branch set".into());
    }
    let members: BTreeSet<usize> = b.vertices.iter().copied().collect();
    if b.tree_edges.len() + 1 != b.vertices.len() {
        return Some(format!(
            "{} tree edges for {} vertices",
            b.tree_edges.len(),
            b.vertices.len()
        ));
    }
    let index: BTreeMap<usize, usize> = members.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let mut parent: Vec<usize> = (0..members.len()).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for &(u, v) in &b.tree_edges {
        let (Some(&iu), Some(&iv)) = (index.get(&u), index.get(&v)) else {
            return Some(format!("tree edge {u}-{v} leaves the branch set"));
        };
        if !g.has_edge(u, v) {
            return Some(format!("tree edge {u}-{v} is not an edge of the graph"));
        }
        let (ru, rv) = (root(&mut parent, iu), root(&mut parent, iv));
        if ru == rv {
            return Some(format!("tree edge {u}-{v} closes a cycle"));
        }
        parent[ru] = rv;
    }
    None
}

/// Swaps both colors globally if needed so single-vertex branch sets get color 1.
pub fn normalize_colors(m: &OddModel) -> Result<OddModel> {
    let has_singletons = m.branch_sets.iter().any(BranchSet::is_singleton);
    match m.singleton_color() {
        Some(Color::Two) => Ok(m.flip_colors()),
        Some(Color::One) => Ok(m.clone()),
        None if !has_singletons => Ok(m.clone()),
        None => Err(Error::precondition(
            "not-special",
            "single-vertex branch sets carry both colors (or are uncolored)",
        )),
    }
}

/// Re-reads an odd `K_k` model as `K^ell_{ell,k-ell}`: the first `ell` branch
/// sets become the left side.
pub fn clique_model_to_bipartite(m: &OddModel, ell: usize) -> Result<OddModel> {
    let Pattern::Clique { size } = m.pattern else {
        return Err(Error::precondition(
            "pattern",
            format!("expected a clique model, got {}", m.pattern),
        ));
    };
    if ell > size {
        return Err(Error::precondition(
            "ell-range",
            format!("ell = {ell} exceeds clique size {size}"),
        ));
    }
    let mut out = m.clone();
    out.pattern = Pattern::BipartitePlusClique {
        left: ell,
        right: size - ell,
    };
    for (i, b) in out.branch_sets.iter_mut().enumerate() {
        b.side = if i < ell { Side::Left } else { Side::Right };
    }
    Ok(out)
}

/// `K_{l,r}` model read as a `K_{r,l}` model.
pub fn transpose_bipartite(m: &OddModel) -> Result<OddModel> {
    let Pattern::Bipartite { left, right } = m.pattern else {
        return Err(Error::precondition(
            "pattern",
            format!("only K_{{l,r}} models can be transposed, got {}", m.pattern),
        ));
    };
    let mut out = m.clone();
    out.pattern = Pattern::Bipartite {
        left: right,
        right: left,
    };
    for b in &mut out.branch_sets {
        b.side = b.side.flipped();
    }
    Ok(out)
}

/// Drops the left-left requirements of `K^l_{l,r}`, leaving `K_{l,r}`.
/// `K_{l,r}` models pass through unchanged.
pub fn weaken_pattern(m: &OddModel) -> Result<OddModel> {
    match m.pattern {
        Pattern::BipartitePlusClique { left, right } => Ok(OddModel {
            pattern: Pattern::Bipartite { left, right },
            ..m.clone()
        }),
        Pattern::Bipartite { .. } => Ok(m.clone()),
        Pattern::Clique { .. } => Err(Error::precondition(
            "pattern",
            "a clique model has no sides; convert it with clique_model_to_bipartite first",
        )),
    }
}
