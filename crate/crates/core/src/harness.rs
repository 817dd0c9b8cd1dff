//! Certificates on disk, the per-graph checking routine, and the sweep
//! driver behind the command-line tool.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::construct::{
    odd_half_clique, special_bipartite_model, special_model_half_order, Construction,
    ConstructionTrace,
};
use crate::error::{check_guard, ContradictionEvent, Error, Result};
use crate::graph::Graph;
use crate::invariants::{
    chromatic_number, independence_at_most_two, independence_number, max_clique,
    vertex_connectivity,
};
use crate::io::to_graph6;
use crate::model::{verify_odd_model, BranchSet, Color, OddModel, Pattern, Violation};
use crate::oracle::{
    brute_force_odd_model, enumerate_alpha2_graphs, random_alpha2_graph, ORACLE_GUARD,
};

/// The JSON certificate: the model, how it was built, and the host graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub pattern: Pattern,
    pub branch_sets: Vec<BranchSet>,
    pub colors: BTreeMap<usize, Color>,
    #[serde(default)]
    pub trace: ConstructionTrace,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<String>,
}

impl Certificate {
    pub fn new(g: &Graph, built: Construction) -> Self {
        let Construction { model, trace } = built;
        Certificate {
            pattern: model.pattern,
            branch_sets: model.branch_sets,
            colors: model.colors,
            trace,
            graph: Some(to_graph6(g)),
        }
    }

    pub fn model(&self) -> OddModel {
        OddModel {
            pattern: self.pattern,
            branch_sets: self.branch_sets.clone(),
            colors: self.colors.clone(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.line(), e.column(), e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificates serialize")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsReport {
    pub n: usize,
    /// A number, or `">=3"` when the exact value is beyond the clique guard.
    pub alpha: serde_json::Value,
    pub chi: usize,
    pub omega: usize,
    pub kappa: usize,
}

pub fn cmd_invariants(g: &Graph) -> Result<InvariantsReport> {
    let alpha = match independence_number(g) {
        Ok(a) => a.into(),
        Err(Error::Guard { .. }) if !independence_at_most_two(g) => ">=3".into(),
        Err(Error::Guard { .. }) => if g.is_complete() { 1 } else { 2 }.into(),
        Err(e) => return Err(e),
    };
    Ok(InvariantsReport {
        n: g.n(),
        alpha,
        chi: chromatic_number(g)?.chi,
        omega: max_clique(g)?.len(),
        kappa: vertex_connectivity(g),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FindKind {
    /// Special `K_{l, chi - l}`.
    Bipartite,
    /// Special `K^l_{l, ceil(n/2) - l}`.
    HalfOrder,
    /// `K_m` with `m >= ceil(n/2)`.
    Clique,
}

pub fn cmd_find(g: &Graph, kind: FindKind, ell: Option<usize>) -> Result<Certificate> {
    let need_ell =
        || ell.ok_or_else(|| Error::precondition("ell-missing", "this pattern needs --ell"));
    let built = match kind {
        FindKind::Bipartite => special_bipartite_model(g, need_ell()?)?,
        FindKind::HalfOrder => special_model_half_order(g, need_ell()?)?,
        FindKind::Clique => odd_half_clique(g)?,
    };
    Ok(Certificate::new(g, built))
}

/// Checks a certificate against `g`. A vertex outside the graph is a schema
/// error rather than a violation.
pub fn cmd_verify(g: &Graph, cert: &Certificate, special: bool) -> Result<Vec<Violation>> {
    let out_of_range = cert
        .branch_sets
        .iter()
        .flat_map(|b| b.vertices.iter())
        .chain(cert.colors.keys())
        .find(|&&v| v >= g.n());
    if let Some(v) = out_of_range {
        return Err(Error::precondition(
            "schema",
            format!(
                "certificate references vertex {v} in a graph on {} vertices",
                g.n()
            ),
        ));
    }
    Ok(verify_odd_model(g, &cert.model(), special))
}

/// Where a sweep takes its graphs from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum SweepSource {
    /// Every labeled graph with independence number at most two, for each order in range.
    Exhaustive { n_min: usize, n_max: usize },
    /// `count` seeded random graphs of order `n`; graph `i` uses seed `seed + i`.
    Random { n: usize, count: usize, seed: u64 },
    /// graph6 lines of triangle-free graphs, complemented.
    Stream { lines: Vec<String> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepConfig {
    pub source: SweepSource,
    /// Cross-check every `l` against the brute-force search.
    pub oracle: bool,
    /// Also look for special `K^l_{l, chi - l}` with `2l <= chi` by brute force.
    pub conjecture17: bool,
    /// Worker threads; 0 means rayon's default.
    pub jobs: usize,
    /// Keep one record per graph; aggregates are kept either way.
    pub keep_records: bool,
}

impl SweepConfig {
    pub fn new(source: SweepSource) -> Self {
        SweepConfig {
            source,
            oracle: false,
            conjecture17: false,
            jobs: 0,
            keep_records: true,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Verified,
    Contradiction,
    Unverified,
    Error,
    Panic,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EllOutcome {
    pub ell: usize,
    pub status: Status,
    pub route: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub oracle: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureOutcome {
    pub ell: usize,
    /// `None` when the graph is beyond the oracle guard.
    pub found: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub index: usize,
    pub graph6: String,
    pub n: usize,
    pub alpha: usize,
    pub chi: usize,
    pub omega: usize,
    pub kappa: usize,
    pub outcomes: Vec<EllOutcome>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub conjecture17: Vec<ConjectureOutcome>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub failure: Option<String>,
    pub micros: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub graphs: usize,
    pub pairs: usize,
    pub verified: usize,
    pub contradictions: usize,
    pub unverified: usize,
    pub errors: usize,
    pub panics: usize,
    pub oracle_checked: usize,
    pub oracle_disagreements: usize,
    pub conjecture17_found: usize,
    pub conjecture17_missing: usize,
    pub stream_errors: usize,
    /// Pairs per route, e.g. `"reduce>half-order>cut-clique": 12`.
    pub routes: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub config: SweepConfig,
    pub totals: Totals,
    pub contradictions: Vec<ContradictionEvent>,
    pub stream_errors: Vec<String>,
    pub records: Vec<GraphRecord>,
    pub millis: u64,
}

impl SweepReport {
    /// Passed when every pair verified and the oracle never disagreed.
    pub fn passed(&self) -> bool {
        let t = &self.totals;
        t.verified == t.pairs
            && t.errors == 0
            && t.oracle_disagreements == 0
            && t.stream_errors == 0
            && t.panics == 0
    }

    /// The report with timing fields zeroed, for comparing reruns.
    pub fn without_timing(&self) -> SweepReport {
        let mut r = self.clone();
        r.millis = 0;
        r.records.iter_mut().for_each(|rec| rec.micros = 0);
        r
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

/// Runs every `1 <= l < chi` through [`special_bipartite_model`] on one graph,
/// optionally cross-checked by the oracle.
pub fn check_graph(
    index: usize,
    g: &Graph,
    oracle: bool,
    conjecture17: bool,
) -> (GraphRecord, Vec<ContradictionEvent>) {
    let start = Instant::now();
    let mut record = GraphRecord {
        index,
        graph6: to_graph6(g),
        n: g.n(),
        alpha: 0,
        chi: 0,
        omega: 0,
        kappa: 0,
        outcomes: Vec::new(),
        conjecture17: Vec::new(),
        failure: None,
        micros: 0,
    };
    let mut events = Vec::new();
    if let Err(e) = fill_record(g, oracle, conjecture17, &mut record, &mut events) {
        record.failure = Some(e.to_string());
    }
    record.micros = start.elapsed().as_micros() as u64;
    (record, events)
}

fn fill_record(
    g: &Graph,
    oracle: bool,
    conjecture17: bool,
    record: &mut GraphRecord,
    events: &mut Vec<ContradictionEvent>,
) -> Result<()> {
    if !independence_at_most_two(g) {
        return Err(Error::precondition(
            "alpha>2",
            "the graph has three pairwise nonadjacent vertices",
        ));
    }
    record.alpha = if g.is_complete() { 1 } else { 2 };
    record.chi = chromatic_number(g)?.chi;
    record.omega = max_clique(g)?.len();
    record.kappa = vertex_connectivity(g);
    let oracle = oracle && g.n() <= ORACLE_GUARD;
    for ell in 1..record.chi {
        let mut outcome = EllOutcome {
            ell,
            status: Status::Verified,
            route: String::new(),
            oracle: None,
            detail: None,
        };
        match special_bipartite_model(g, ell) {
            Ok(built) => outcome.route = built.trace.route(),
            Err(Error::Contradiction(event)) => {
                outcome.status = Status::Contradiction;
                outcome.route = event.trace.route();
                outcome.detail = Some(format!("{}: {}", event.stage, event.detail));
                events.push(*event);
            }
            Err(Error::Unverified { violations }) => {
                outcome.status = Status::Unverified;
                outcome.detail = Some(format!("{violations:?}"));
            }
            Err(e) => {
                outcome.status = Status::Error;
                outcome.detail = Some(e.to_string());
            }
        }
        if oracle {
            let p = Pattern::Bipartite {
                left: ell,
                right: record.chi - ell,
            };
            outcome.oracle = Some(brute_force_odd_model(g, p, true)?.is_some());
        }
        record.outcomes.push(outcome);
    }
    if conjecture17 {
        for ell in (1..).take_while(|&l| 2 * l <= record.chi) {
            let found = if g.n() <= ORACLE_GUARD {
                let p = Pattern::BipartitePlusClique {
                    left: ell,
                    right: record.chi - ell,
                };
                Some(brute_force_odd_model(g, p, true)?.is_some())
            } else {
                None
            };
            record.conjecture17.push(ConjectureOutcome { ell, found });
        }
    }
    Ok(())
}

fn sweep_guard(config: &SweepConfig) -> Result<()> {
    match config.source {
        SweepSource::Exhaustive { n_max, .. } => check_guard("sweep --exhaustive", n_max, 7, 8)?,
        SweepSource::Random { n, .. } => check_guard("sweep --random", n, 40, 64)?,
        SweepSource::Stream { .. } => {}
    }
    if config.oracle {
        let n_max = match &config.source {
            SweepSource::Exhaustive { n_max, .. } => *n_max,
            SweepSource::Random { n, .. } => *n,
            SweepSource::Stream { .. } => 0,
        };
        check_guard("sweep --oracle", n_max, 6, ORACLE_GUARD)?;
    }
    Ok(())
}

/// Generates the configured graphs, checks each on a worker pool and folds
/// the results in input order, so reports are deterministic up to timing.
pub fn run_sweep(config: &SweepConfig) -> Result<SweepReport> {
    sweep_guard(config)?;
    let start = Instant::now();
    let mut stream_errors = Vec::new();
    let graphs: Vec<Graph> = match &config.source {
        SweepSource::Exhaustive { n_min, n_max } => {
            let mut all = Vec::new();
            for n in *n_min..=*n_max {
                all.extend(enumerate_alpha2_graphs(n)?);
            }
            all
        }
        SweepSource::Random { n, count, seed } => (0..*count as u64)
            .map(|i| random_alpha2_graph(*n, seed.wrapping_add(i)))
            .collect(),
        SweepSource::Stream { lines } => {
            let text = lines.join("\n");
            crate::oracle::stream_alpha2_graphs(text.as_bytes())
                .filter_map(|r| r.map_err(|e| stream_errors.push(e.to_string())).ok())
                .collect()
        }
    };

    let work = |(i, g): (usize, &Graph)| {
        catch_unwind(AssertUnwindSafe(|| {
            check_graph(i, g, config.oracle, config.conjecture17)
        }))
        .unwrap_or_else(|panic| {
            let message = panic
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| panic.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "panic".into());
            let record = GraphRecord {
                index: i,
                graph6: to_graph6(g),
                n: g.n(),
                alpha: 0,
                chi: 0,
                omega: 0,
                kappa: 0,
                outcomes: vec![EllOutcome {
                    ell: 0,
                    status: Status::Panic,
                    route: String::new(),
                    oracle: None,
                    detail: Some(message),
                }],
                conjecture17: Vec::new(),
                failure: Some("worker panicked".into()),
                micros: 0,
            };
            (record, Vec::new())
        })
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| Error::precondition("jobs", e.to_string()))?;
    let results: Vec<(GraphRecord, Vec<ContradictionEvent>)> =
        pool.install(|| graphs.par_iter().enumerate().map(work).collect());

    let mut totals = Totals {
        stream_errors: stream_errors.len(),
        ..Totals::default()
    };
    let mut contradictions = Vec::new();
    let mut records = Vec::new();
    for (record, events) in results {
        totals.graphs += 1;
        if record.failure.is_some() && record.outcomes.is_empty() {
            totals.errors += 1;
        }
        for o in &record.outcomes {
            totals.pairs += 1;
            match o.status {
                Status::Verified => totals.verified += 1,
                Status::Contradiction => totals.contradictions += 1,
                Status::Unverified => totals.unverified += 1,
                Status::Error => totals.errors += 1,
                Status::Panic => totals.panics += 1,
            }
            *totals.routes.entry(o.route.clone()).or_default() += 1;
            if let Some(found) = o.oracle {
                totals.oracle_checked += 1;
                if found != (o.status == Status::Verified) {
                    totals.oracle_disagreements += 1;
                }
            }
        }
        for c in &record.conjecture17 {
            match c.found {
                Some(true) => totals.conjecture17_found += 1,
                Some(false) => totals.conjecture17_missing += 1,
                None => {}
            }
        }
        contradictions.extend(events);
        if config.keep_records {
            records.push(record);
        }
    }
    Ok(SweepReport {
        config: config.clone(),
        totals,
        contradictions,
        stream_errors,
        records,
        millis: start.elapsed().as_millis() as u64,
    })
}
