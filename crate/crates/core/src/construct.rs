//! Constructive odd minor models.
//!
//! Each public constructor checks its preconditions, builds a model, records
//! the route it took in a [`ConstructionTrace`], and verifies the result with
//! [`verify_odd_model`] before returning it. A step whose success is
//! guaranteed by the underlying theorem but fails anyway surfaces as
//! [`Error::Contradiction`] carrying the input graph and the trace so far.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::invariants::{
    chromatic_number, independence_at_most_two, max_clique, minimum_vertex_cut,
    vertex_connectivity, CHROMATIC_GUARD,
};
use crate::io::to_graph6;
use crate::model::{
    clique_model_to_bipartite, normalize_colors, transpose_bipartite, verify_odd_model,
    weaken_pattern, BranchSet, Color, OddModel, Pattern, Side,
};
use crate::search::{
    find_p3_packing, improve_with_count, saturating_matching, MatchingOrViolator, P3Packing, P3,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Rule {
    /// Even order: delete the smallest vertex, `ceil(n/2)` is unchanged.
    ParityDelete,
    /// Not `ceil(n/2)`-connected: clique model from a minimum cut and a matching.
    CutClique,
    /// Large clique plus disjoint induced P3s outside it.
    BigClique,
    /// `n >= 4l + 1`: `l` disjoint P3s on the left, leftovers on the right.
    Packing,
    /// `n = 4l - 1`: P3s avoiding a vertex `v`, exchanged towards `v`.
    Terminal,
    /// `l = 1`: a maximum-degree vertex and its neighbors.
    Star,
    /// Deleted vertices whose removal keeps the chromatic number.
    Reduce,
    /// Complement disconnected: compose models of the two sides.
    JoinCompose,
    /// Complete graph: every vertex is its own branch set.
    Complete,
    /// Vertex-critical, anti-connected graph on `2 chi - 1` vertices.
    HalfOrder,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub rule: Rule,
    /// Recursion depth at which the rule fired.
    pub depth: usize,
    /// Order of the graph the rule was applied to.
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ell: Option<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionTrace {
    pub steps: Vec<TraceStep>,
}

impl ConstructionTrace {
    /// Rule names joined by `>`, e.g. `reduce>half-order>cut-clique`.
    pub fn route(&self) -> String {
        self.steps
            .iter()
            .map(|s| {
                serde_json::to_value(s.rule)
                    .ok()
                    .and_then(|v| v.as_str().map(String::from))
                    .unwrap_or_default()
            })
            .collect::<Vec<_>>()
            .join(">")
    }
}

/// A verified model together with how it was built.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Construction {
    pub model: OddModel,
    pub trace: ConstructionTrace,
}

/// Bookkeeping of the `n = 4l - 1` case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TerminalCaseState {
    pub v: usize,
    /// `l - 1` disjoint induced P3s in `G - v`, after the exchanges.
    pub packing: P3Packing,
    /// `V - V(packing) - v`.
    pub leftovers: VertexSet,
    /// Leftovers not adjacent to `v`.
    pub far: VertexSet,
    /// Leftovers adjacent to `v`.
    pub near: VertexSet,
    /// The first `l` members of `near`.
    pub chosen: VertexSet,
    pub exchanges: usize,
}

#[derive(Default)]
struct Ctx {
    trace: ConstructionTrace,
    depth: usize,
}

impl Ctx {
    fn step(&mut self, rule: Rule, n: usize, ell: Option<usize>, detail: impl Into<String>) {
        self.trace.steps.push(TraceStep {
            rule,
            depth: self.depth,
            n,
            ell,
            detail: detail.into(),
        });
    }

    fn nested<T>(&mut self, f: impl FnOnce(&mut Ctx) -> Result<T>) -> Result<T> {
        self.depth += 1;
        let out = f(self);
        self.depth -= 1;
        out
    }
}

fn contradiction(stage: &str, g: &Graph, detail: impl Into<String>) -> Error {
    Error::contradiction(stage, to_graph6(g), detail)
}

/// Verifies `model` against `g`, attaching the trace to contradiction events.
fn finish(g: &Graph, result: Result<OddModel>, ctx: Ctx, special: bool) -> Result<Construction> {
    match result {
        Ok(model) => {
            let violations = verify_odd_model(g, &model, special);
            if !violations.is_empty() {
                return Err(Error::Unverified { violations });
            }
            Ok(Construction {
                model,
                trace: ctx.trace,
            })
        }
        Err(Error::Contradiction(mut event)) => {
            let top = to_graph6(g);
            if event.graph6 != top {
                event.detail = format!("{} (in subgraph {})", event.detail, event.graph6);
                event.graph6 = top;
            }
            event.trace = ctx.trace;
            Err(Error::Contradiction(event))
        }
        Err(e) => Err(e),
    }
}

fn require_alpha_at_most_two(g: &Graph) -> Result<()> {
    if independence_at_most_two(g) {
        Ok(())
    } else {
        Err(Error::precondition(
            "alpha>2",
            "the graph has three pairwise nonadjacent vertices",
        ))
    }
}

fn half(n: usize) -> usize {
    n.div_ceil(2)
}

fn singletons(
    vs: impl IntoIterator<Item = usize>,
    side: Side,
    color: Color,
) -> (Vec<BranchSet>, Vec<(usize, Color)>) {
    vs.into_iter()
        .map(|v| (BranchSet::singleton(side, v), (v, color)))
        .unzip()
}

fn path_branch(p: &P3, side: Side, end_color: Color) -> (BranchSet, [(usize, Color); 3]) {
    let P3(a1, a2, a3) = *p;
    (
        BranchSet {
            side,
            vertices: vec![a1, a2, a3],
            tree_edges: vec![(a1, a2), (a2, a3)],
        },
        [(a1, end_color), (a2, end_color.flipped()), (a3, end_color)],
    )
}

/// All-singleton clique model on the given vertices, color 1.
fn clique_of(vs: impl IntoIterator<Item = usize>) -> OddModel {
    let (branch_sets, colors) = singletons(vs, Side::Left, Color::One);
    OddModel {
        pattern: Pattern::Clique {
            size: branch_sets.len(),
        },
        branch_sets,
        colors: colors.into_iter().collect(),
    }
}

/// Odd clique model of order at least `ceil(n/2)` for a graph with
/// independence number at most two that is not `ceil(n/2)`-connected.
///
/// Every vertex of the larger side `L` of a minimum cut is a singleton
/// (color 1); each edge of a matching from `X_L` into `R` is a two-vertex
/// branch set colored 1 on the cut side and 2 on `R`.
pub fn odd_clique_from_cut(g: &Graph) -> Result<Construction> {
    require_alpha_at_most_two(g)?;
    let (n, kappa) = (g.n(), vertex_connectivity(g));
    if n == 0 || kappa >= half(n) {
        return Err(Error::precondition(
            "connectivity",
            format!("kappa = {kappa} is not below ceil(n/2) = {}", half(n)),
        ));
    }
    let mut ctx = Ctx::default();
    let result = clique_from_cut(g, &mut ctx);
    finish(g, result, ctx, true)
}

fn clique_from_cut(g: &Graph, ctx: &mut Ctx) -> Result<OddModel> {
    let n = g.n();
    if g.is_complete() {
        ctx.step(Rule::CutClique, n, None, "complete graph, no cut needed");
        return Ok(clique_of(0..n));
    }
    let cert = minimum_vertex_cut(g)?;
    let take = cert.cut_left.len().min(cert.right.len());
    let a: VertexSet = cert.cut_left.iter().take(take).collect();
    let pairs = match saturating_matching(g, &a, &cert.right)? {
        MatchingOrViolator::Matching(pairs) => pairs,
        MatchingOrViolator::Violator(s) => {
            let smaller = cert
                .cut
                .difference(&s)
                .union(&g.neighborhood_of(&s).intersection(&cert.right));
            return Err(contradiction(
                "cut-clique",
                g,
                format!(
                    "Hall violator {s:?} in a minimum cut {:?}; {smaller:?} would be a smaller cut",
                    cert.cut
                ),
            ));
        }
    };
    ctx.step(
        Rule::CutClique,
        n,
        None,
        format!(
            "X = {:?}, L = {:?}, R = {:?}, X_L = {:?}, matching = {pairs:?}",
            cert.cut, cert.left, cert.right, cert.cut_left
        ),
    );
    let mut model = clique_of(cert.left.iter());
    for &(x, r) in &pairs {
        model.branch_sets.push(BranchSet {
            side: Side::Left,
            vertices: vec![x, r],
            tree_edges: vec![(x, r)],
        });
        model.colors.insert(x, Color::One);
        model.colors.insert(r, Color::Two);
    }
    let size = model.branch_sets.len();
    model.pattern = Pattern::Clique { size };
    if size < half(n) {
        return Err(contradiction(
            "cut-clique",
            g,
            format!("clique model of order {size} < ceil(n/2) = {}", half(n)),
        ));
    }
    Ok(model)
}

/// Odd `K_{ceil(n/2)}` model for odd `n` from a maximum clique `K` plus
/// `ceil(n/2) - |K|` disjoint induced P3s outside it. Clique vertices and
/// path ends get color 1, path middles color 2.
pub fn odd_clique_via_clique_and_paths(g: &Graph) -> Result<Construction> {
    require_alpha_at_most_two(g)?;
    let n = g.n();
    if n.is_multiple_of(2) {
        return Err(Error::precondition("parity", format!("n = {n} is even")));
    }
    let kappa = vertex_connectivity(g);
    if kappa < half(n) {
        return Err(Error::precondition(
            "connectivity",
            format!("kappa = {kappa} < ceil(n/2) = {}", half(n)),
        ));
    }
    let omega = max_clique(g)?.len();
    if 4 * omega < n + 3 {
        return Err(Error::precondition(
            "clique-size",
            format!("omega = {omega} < (n + 3)/4 for n = {n}"),
        ));
    }
    let mut ctx = Ctx::default();
    let result = clique_and_paths(g, &mut ctx);
    finish(g, result, ctx, true)
}

fn clique_and_paths(g: &Graph, ctx: &mut Ctx) -> Result<OddModel> {
    let (n, target) = (g.n(), half(g.n()));
    let k = max_clique(g)?;
    if k.len() >= target {
        ctx.step(
            Rule::BigClique,
            n,
            None,
            format!("clique {k:?} alone has {target} vertices"),
        );
        return Ok(clique_of(k.iter().take(target)));
    }
    let need = target - k.len();
    let Some(packing) = find_p3_packing(g, need, &k) else {
        return Err(contradiction(
            "big-clique",
            g,
            format!("no {need} disjoint induced P3s avoid the maximum clique {k:?}"),
        ));
    };
    ctx.step(
        Rule::BigClique,
        n,
        None,
        format!("K = {k:?}, paths = {:?}", packing.paths),
    );
    let mut model = clique_of(k.iter());
    for p in &packing.paths {
        let (b, cs) = path_branch(p, Side::Left, Color::One);
        model.branch_sets.push(b);
        model.colors.extend(cs);
    }
    model.pattern = Pattern::Clique { size: target };
    Ok(model)
}

/// Odd clique model of order at least `ceil(n/2)` by whichever of the two
/// clique constructions applies.
pub fn odd_half_clique(g: &Graph) -> Result<Construction> {
    require_alpha_at_most_two(g)?;
    let n = g.n();
    if n > 0 && vertex_connectivity(g) < half(n) {
        return odd_clique_from_cut(g);
    }
    odd_clique_via_clique_and_paths(g)
}

/// Special odd `K^l_{l, ceil(n/2) - l}` model for a graph with independence
/// number exactly two and `1 <= l`, `2l <= ceil(n/2)`.
pub fn special_model_half_order(g: &Graph, ell: usize) -> Result<Construction> {
    require_alpha_at_most_two(g)?;
    if g.is_complete() {
        return Err(Error::precondition(
            "alpha!=2",
            "complete graphs have independence number 1",
        ));
    }
    check_half_order_ell(g.n(), ell)?;
    let mut ctx = Ctx::default();
    let result = half_order(g, ell, &mut ctx);
    finish(g, result, ctx, true)
}

fn check_half_order_ell(n: usize, ell: usize) -> Result<()> {
    if ell == 0 || 2 * ell > half(n) {
        return Err(Error::precondition(
            "ell-range",
            format!(
                "need 1 <= l and 2l <= ceil(n/2) = {}, got l = {ell}",
                half(n)
            ),
        ));
    }
    Ok(())
}

fn half_order(g: &Graph, ell: usize, ctx: &mut Ctx) -> Result<OddModel> {
    let n = g.n();
    let target = half(n);
    if n.is_multiple_of(2) {
        ctx.step(Rule::ParityDelete, n, Some(ell), "delete vertex 0");
        let sub = g.remove_vertices(&VertexSet::singleton(0));
        let m = ctx.nested(|ctx| half_order(&sub.graph, ell, ctx))?;
        return Ok(m.relabel(|v| sub.new_to_old[v]));
    }
    let kappa = vertex_connectivity(g);
    if kappa < target {
        let clique = clique_from_cut(g, ctx)?;
        return clique_model_to_bipartite(&truncate_clique(clique, target), ell);
    }
    let omega = max_clique(g)?.len();
    if 4 * omega >= n + 3 {
        let clique = clique_and_paths(g, ctx)?;
        return clique_model_to_bipartite(&truncate_clique(clique, target), ell);
    }
    if n > 4 * ell {
        return packing_case(g, ell, ctx);
    }
    if n + 1 == 4 * ell {
        return terminal_case(g, ell, ctx).map(|(m, _)| m);
    }
    Err(contradiction(
        "half-order",
        g,
        format!("n = {n} odd with 2l <= ceil(n/2) yet below 4l - 1 for l = {ell}"),
    ))
}

/// Keeps `target` branch sets, single vertices first.
fn truncate_clique(mut m: OddModel, target: usize) -> OddModel {
    if m.branch_sets.len() > target {
        m.branch_sets.sort_by_key(|b| b.vertices.len() > 1);
        m.branch_sets.truncate(target);
        let keep: VertexSet = m.vertices().collect();
        m.colors.retain(|v, _| keep.contains(*v));
    }
    m.pattern = Pattern::Clique {
        size: m.branch_sets.len(),
    };
    m
}

/// The `n >= 4l + 1` construction on its own: `l` disjoint induced P3s
/// (ends color 2, middle color 1) on the left and `ceil(n/2) - l` leftover
/// vertices (color 2) on the right.
pub fn packing_route(g: &Graph, ell: usize) -> Result<Construction> {
    require_alpha_at_most_two(g)?;
    check_half_order_ell(g.n(), ell)?;
    let mut ctx = Ctx::default();
    let result = packing_case(g, ell, &mut ctx);
    finish(g, result, ctx, true)
}

fn packing_case(g: &Graph, ell: usize, ctx: &mut Ctx) -> Result<OddModel> {
    let n = g.n();
    let right = half(n) - ell;
    let Some(packing) = find_p3_packing(g, ell, &VertexSet::new()) else {
        return Err(contradiction(
            "packing",
            g,
            format!("no {ell} disjoint induced P3s"),
        ));
    };
    let rest = g.vertices().difference(&packing.vertices());
    if rest.len() < right {
        return Err(contradiction(
            "packing",
            g,
            format!("{} leftover vertices, {right} needed", rest.len()),
        ));
    }
    ctx.step(
        Rule::Packing,
        n,
        Some(ell),
        format!("paths = {:?}", packing.paths),
    );
    let mut model = OddModel {
        pattern: Pattern::BipartitePlusClique { left: ell, right },
        branch_sets: Vec::new(),
        colors: BTreeMap::new(),
    };
    for p in &packing.paths {
        let (b, cs) = path_branch(p, Side::Left, Color::Two);
        model.branch_sets.push(b);
        model.colors.extend(cs);
    }
    let (bs, cs) = singletons(rest.iter().take(right), Side::Right, Color::Two);
    model.branch_sets.extend(bs);
    model.colors.extend(cs);
    Ok(model)
}

/// The `n = 4l - 1` construction on its own. Tries `v = 0, 1, ..` until
/// `G - v` has `l - 1` disjoint induced P3s, pulls the packing towards `v`,
/// and uses the P3s plus `{v}` as the left side and `l` leftover neighbors
/// of `v` as the right side (all singletons and path ends color 2).
pub fn terminal_route(g: &Graph, ell: usize) -> Result<(Construction, TerminalCaseState)> {
    require_alpha_at_most_two(g)?;
    if ell == 0 || g.n() + 1 != 4 * ell {
        return Err(Error::precondition(
            "ell-range",
            format!(
                "the terminal case needs n = 4l - 1, got n = {} and l = {ell}",
                g.n()
            ),
        ));
    }
    let mut ctx = Ctx::default();
    let result = terminal_case(g, ell, &mut ctx);
    let state = result.as_ref().ok().map(|(_, s)| s.clone());
    let built = finish(g, result.map(|(m, _)| m), ctx, true)?;
    Ok((built, state.expect("success carries a state")))
}

fn terminal_case(g: &Graph, ell: usize, ctx: &mut Ctx) -> Result<(OddModel, TerminalCaseState)> {
    let n = g.n();
    let Some((v, initial)) =
        (0..n).find_map(|v| find_p3_packing(g, ell - 1, &VertexSet::singleton(v)).map(|p| (v, p)))
    else {
        return Err(contradiction(
            "terminal",
            g,
            format!(
                "no vertex v leaves {} disjoint induced P3s in G - v",
                ell - 1
            ),
        ));
    };
    let (packing, exchanges) = improve_with_count(g, v, &initial)?;
    let mut leftovers = g.vertices().difference(&packing.vertices());
    leftovers.remove(v);
    let far = leftovers.difference(g.neighbors(v));
    let near = leftovers.intersection(g.neighbors(v));
    if far.len() > 1 || near.len() < ell {
        return Err(contradiction(
            "terminal",
            g,
            format!(
                "after exchanges |X| = {}, |Y| = {} for l = {ell}",
                far.len(),
                near.len()
            ),
        ));
    }
    let chosen: VertexSet = near.iter().take(ell).collect();
    let state = TerminalCaseState {
        v,
        packing,
        leftovers,
        far,
        near,
        chosen,
        exchanges,
    };
    ctx.step(
        Rule::Terminal,
        n,
        Some(ell),
        serde_json::to_string(&state).unwrap_or_default(),
    );
    let mut model = OddModel {
        pattern: Pattern::BipartitePlusClique {
            left: ell,
            right: ell,
        },
        branch_sets: Vec::new(),
        colors: BTreeMap::new(),
    };
    for p in &state.packing.paths {
        let (b, cs) = path_branch(p, Side::Left, Color::Two);
        model.branch_sets.push(b);
        model.colors.extend(cs);
    }
    model.branch_sets.push(BranchSet::singleton(Side::Left, v));
    model.colors.insert(v, Color::Two);
    let (bs, cs) = singletons(state.chosen.iter(), Side::Right, Color::Two);
    model.branch_sets.extend(bs);
    model.colors.extend(cs);
    Ok((model, state))
}

/// Special odd `K_{l, chi - l}` model for a graph with independence number
/// at most two and `1 <= l < chi`.
pub fn special_bipartite_model(g: &Graph, ell: usize) -> Result<Construction> {
    require_alpha_at_most_two(g)?;
    let chi = chromatic_number(g)?.chi;
    if ell == 0 || ell >= chi {
        return Err(Error::precondition(
            "ell-range",
            format!("need 1 <= l < chi = {chi}, got l = {ell}"),
        ));
    }
    let mut ctx = Ctx::default();
    let result = bipartite(g, ell, chi, &mut ctx);
    finish(g, result, ctx, true)
}

fn bipartite(g: &Graph, ell: usize, chi: usize, ctx: &mut Ctx) -> Result<OddModel> {
    let n = g.n();
    if g.is_complete() {
        ctx.step(Rule::Complete, n, Some(ell), "every vertex is a branch set");
        return Ok(split_singletons(0..n, ell, n - ell));
    }
    if ell == 1 {
        let center = (0..n)
            .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
            .expect("n > 0");
        ctx.step(
            Rule::Star,
            n,
            Some(ell),
            format!("center {center} of degree {}", g.degree(center)),
        );
        let leaves: Vec<usize> = g.neighbors(center).iter().take(chi - 1).collect();
        if leaves.len() + 1 < chi {
            return Err(contradiction(
                "star",
                g,
                format!("maximum degree below chi - 1 = {}", chi - 1),
            ));
        }
        let (mut bs, mut cs) = singletons([center], Side::Left, Color::One);
        let (rb, rc) = singletons(leaves, Side::Right, Color::One);
        bs.extend(rb);
        cs.extend(rc);
        return Ok(OddModel {
            pattern: Pattern::Bipartite {
                left: 1,
                right: chi - 1,
            },
            branch_sets: bs,
            colors: cs.into_iter().collect(),
        });
    }

    let reduction = critical_reduction(g)?;
    if !reduction.removed.is_empty() {
        ctx.step(
            Rule::Reduce,
            n,
            Some(ell),
            format!("removed {:?}", reduction.removed),
        );
        let m = ctx.nested(|ctx| bipartite(&reduction.graph, ell, chi, ctx))?;
        return Ok(m.relabel(|v| reduction.kept[v]));
    }

    let parts = anti_components(g);
    if parts.len() >= 2 {
        let v1 = parts[0].clone();
        let v2 = g.vertices().difference(&v1);
        let g1 = g.induced_subgraph(&v1)?;
        let g2 = g.induced_subgraph(&v2)?;
        let chi1 = chromatic_number(&g1.graph)?.chi;
        let chi2 = chromatic_number(&g2.graph)?.chi;
        if chi1 + chi2 != chi {
            return Err(contradiction(
                "join-compose",
                g,
                format!("chi splits as {chi1} + {chi2} != {chi} across the join"),
            ));
        }
        let ell1 = split_ell(ell, chi1, chi2);
        let ell2 = ell - ell1;
        ctx.step(
            Rule::JoinCompose,
            n,
            Some(ell),
            format!("V1 = {v1:?} (chi {chi1}, l {ell1}), V2 = {v2:?} (chi {chi2}, l {ell2})"),
        );
        let m1 = ctx.nested(|ctx| join_part(&g1.graph, ell1, chi1, ctx))?;
        let m2 = ctx.nested(|ctx| join_part(&g2.graph, ell2, chi2, ctx))?;
        let m1 = m1.relabel(|v| g1.new_to_old[v]);
        let m2 = m2.relabel(|v| g2.new_to_old[v]);
        return compose_join_models(g, &m1, &m2, &v1, &v2);
    }

    if n + 1 != 2 * chi {
        return Err(contradiction(
            "half-order",
            g,
            format!("vertex-critical anti-connected graph with n = {n}, chi = {chi}; expected n = 2 chi - 1"),
        ));
    }
    let small = ell.min(chi - ell);
    ctx.step(
        Rule::HalfOrder,
        n,
        Some(ell),
        format!("K^{small} model, transposed: {}", small != ell),
    );
    let m = ctx.nested(|ctx| half_order(g, small, ctx))?;
    let m = weaken_pattern(&m)?;
    if small != ell {
        transpose_bipartite(&m)
    } else {
        Ok(m)
    }
}

/// Splits `l = l1 + l2` with `0 <= li <= chi_i`, preferring both parts
/// strictly inside `1..chi_i`, then at least one of them.
fn split_ell(ell: usize, chi1: usize, chi2: usize) -> usize {
    let (lo, hi) = (ell.saturating_sub(chi2), ell.min(chi1));
    let inner1 = |l1: usize| (1..chi1).contains(&l1);
    let inner2 = |l1: usize| (1..chi2).contains(&(ell - l1));
    (lo..=hi)
        .find(|&l1| inner1(l1) && inner2(l1))
        .or_else(|| (lo..=hi).find(|&l1| inner1(l1) || inner2(l1)))
        .unwrap_or(lo)
}

/// Model for one side of a join, color-normalized. `l = 0` and `l = chi`
/// fall back to `chi` single vertices on one side.
fn join_part(g: &Graph, ell: usize, chi: usize, ctx: &mut Ctx) -> Result<OddModel> {
    if ell == 0 || ell == chi {
        return Ok(if ell == 0 {
            split_singletons(0..chi, 0, chi)
        } else {
            split_singletons(0..chi, chi, 0)
        });
    }
    normalize_colors(&bipartite(g, ell, chi, ctx)?)
}

fn split_singletons(vs: impl IntoIterator<Item = usize>, left: usize, right: usize) -> OddModel {
    let vs: Vec<usize> = vs.into_iter().take(left + right).collect();
    let (mut bs, mut cs) = singletons(vs[..left].iter().copied(), Side::Left, Color::One);
    let (rb, rc) = singletons(vs[left..].iter().copied(), Side::Right, Color::One);
    bs.extend(rb);
    cs.extend(rc);
    OddModel {
        pattern: Pattern::Bipartite { left, right },
        branch_sets: bs,
        colors: cs.into_iter().collect(),
    }
}

/// Union of special `K_{l1,r1}` and `K_{l2,r2}` models living in `G[v1]` and
/// `G[v2]`, where `v1` is complete to `v2`, as a special `K_{l1+l2, r1+r2}`
/// model. After normalization singletons are color 1 and larger branch sets
/// carry both colors, so every cross pair has a monochromatic edge.
pub fn compose_join_models(
    g: &Graph,
    m1: &OddModel,
    m2: &OddModel,
    v1: &VertexSet,
    v2: &VertexSet,
) -> Result<OddModel> {
    if !v1.is_disjoint(v2) || !g.is_complete_to(v1, v2) {
        return Err(Error::precondition(
            "not-a-join",
            "v1 must be disjoint from and complete to v2",
        ));
    }
    let (
        Pattern::Bipartite {
            left: l1,
            right: r1,
        },
        Pattern::Bipartite {
            left: l2,
            right: r2,
        },
    ) = (m1.pattern, m2.pattern)
    else {
        return Err(Error::precondition(
            "pattern",
            "both models must be K_{l,r} models",
        ));
    };
    for (m, side) in [(m1, v1), (m2, v2)] {
        if let Some(v) = m.vertices().find(|&v| !side.contains(v)) {
            return Err(Error::precondition(
                "vertex-out-of-part",
                format!("model vertex {v} is outside its part"),
            ));
        }
    }
    let m1 = normalize_colors(m1)?;
    let m2 = normalize_colors(m2)?;
    let mut out = m1;
    out.pattern = Pattern::Bipartite {
        left: l1 + l2,
        right: r1 + r2,
    };
    out.branch_sets.extend(m2.branch_sets);
    out.colors.extend(m2.colors);
    Ok(out)
}

/// Outcome of [`critical_reduction`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub graph: Graph,
    /// `kept[i]` is the input vertex behind reduced vertex `i`.
    pub kept: Vec<usize>,
    /// Deleted input vertices, in deletion order.
    pub removed: Vec<usize>,
}

/// Deletes, smallest index first, every vertex whose removal keeps the
/// chromatic number, leaving a vertex-critical induced subgraph.
///
/// A vertex that cannot be removed stays unremovable as the graph shrinks,
/// so one ascending pass suffices.
pub fn critical_reduction(g: &Graph) -> Result<Reduction> {
    crate::error::check_guard("critical_reduction", g.n(), CHROMATIC_GUARD, 64)?;
    let chi = chromatic_number(g)?.chi;
    let mut keep = g.vertices();
    let mut removed = Vec::new();
    for v in 0..g.n() {
        let mut trial = keep.clone();
        trial.remove(v);
        let sub = g.induced_subgraph(&trial)?;
        if chromatic_number(&sub.graph)?.chi == chi {
            keep = trial;
            removed.push(v);
        }
    }
    let sub = g.induced_subgraph(&keep)?;
    Ok(Reduction {
        graph: sub.graph,
        kept: sub.new_to_old,
        removed,
    })
}

/// Connected components of the complement, ordered by smallest member. Two or
/// more mean the graph is a join of any grouping of them.
pub fn anti_components(g: &Graph) -> Vec<VertexSet> {
    g.complement().connected_components()
}
