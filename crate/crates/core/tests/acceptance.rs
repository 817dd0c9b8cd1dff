//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

mod common;

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{chromatic_brute, naive_violations};
use oddminor::construct::{odd_clique_from_cut, special_bipartite_model, special_model_half_order};
use oddminor::graph::families::{cycle, petersen};
use oddminor::harness::{run_sweep, SweepConfig, SweepSource};
use oddminor::invariants::{chromatic_number, vertex_connectivity};
use oddminor::model::{verify_odd_model, BranchSet, Color, OddModel, Pattern, Side, ViolationKind};
use oddminor::oracle::{enumerate_alpha2_graphs, random_alpha2_graph};
use oddminor::{Error, Graph};

struct Outcome {
    passed: bool,
    summary: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 7] = [
        (
            "special K_{l,chi-l} for every alpha<=2 graph, n<=7",
            exhaustive_bipartite,
        ),
        (
            "brute-force oracle agrees for every alpha<=2 graph, n<=6",
            oracle_agreement,
        ),
        (
            "clique from a minimum cut, n<=7, kappa<ceil(n/2)",
            clique_from_cut_suite,
        ),
        (
            "special K^l_{l,ceil(n/2)-l} for every alpha=2 graph, n<=7",
            half_order_suite,
        ),
        ("named instances for every valid l", named_instances),
        (
            "verifier rejects single-mutation corruptions",
            mutation_soundness,
        ),
        ("1000 random alpha<=2 graphs on 25 vertices", random_scale),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(run).unwrap_or_else(|_| Outcome {
            passed: false,
            summary: "panicked".into(),
        });
        let verdict = if outcome.passed { "PASS" } else { "FAIL" };
        failures += usize::from(!outcome.passed);
        println!(
            "criterion {} [{verdict}] {name}: {} ({:.1}s)",
            i + 1,
            outcome.summary,
            start.elapsed().as_secs_f64()
        );
    }
    if failures > 0 {
        std::process::exit(1);
    }
}

fn within(elapsed: Duration, budget_secs: u64) -> bool {
    elapsed <= Duration::from_secs(budget_secs)
}

fn exhaustive_bipartite() -> Outcome {
    let start = Instant::now();
    let mut config = SweepConfig::new(SweepSource::Exhaustive { n_min: 2, n_max: 7 });
    config.jobs = 1;
    config.keep_records = false;
    let report = run_sweep(&config).expect("sweep runs");
    let t = &report.totals;
    let fast = within(start.elapsed(), 15 * 60);
    Outcome {
        passed: report.passed() && t.contradictions == 0 && fast,
        summary: format!(
            "{} graphs, {}/{} pairs verified, {} contradictions, single-threaded",
            t.graphs, t.verified, t.pairs, t.contradictions
        ),
    }
}

fn oracle_agreement() -> Outcome {
    let start = Instant::now();
    let mut config = SweepConfig::new(SweepSource::Exhaustive { n_min: 2, n_max: 6 });
    config.oracle = true;
    config.keep_records = false;
    let report = run_sweep(&config).expect("sweep runs");
    let t = &report.totals;
    Outcome {
        passed: report.passed() && t.oracle_checked == t.pairs && within(start.elapsed(), 30 * 60),
        summary: format!(
            "{} graphs, {} pairs oracle-checked, {} disagreements",
            t.graphs, t.oracle_checked, t.oracle_disagreements
        ),
    }
}

fn clique_from_cut_suite() -> Outcome {
    let (mut graphs, mut failures, mut hall) = (0, 0, 0);
    for n in 1..=7 {
        for g in enumerate_alpha2_graphs(n).unwrap() {
            if vertex_connectivity(&g) >= n.div_ceil(2) {
                continue;
            }
            graphs += 1;
            match odd_clique_from_cut(&g) {
                Ok(built) => {
                    let size = built.model.branch_sets.len();
                    let ok = matches!(built.model.pattern, Pattern::Clique { .. })
                        && size >= n.div_ceil(2)
                        && verify_odd_model(&g, &built.model, false).is_empty();
                    failures += usize::from(!ok);
                }
                Err(Error::Contradiction(_)) => hall += 1,
                Err(_) => failures += 1,
            }
        }
    }
    Outcome {
        passed: failures == 0 && hall == 0,
        summary: format!("{graphs} graphs, {failures} failures, {hall} matching contradictions"),
    }
}

fn half_order_suite() -> Outcome {
    let (mut pairs, mut failures) = (0, 0);
    for n in 2..=7 {
        for g in enumerate_alpha2_graphs(n)
            .unwrap()
            .filter(|g| !g.is_complete())
        {
            let half = n.div_ceil(2);
            for ell in (1..).take_while(|&l| 2 * l <= half) {
                pairs += 1;
                let ok = special_model_half_order(&g, ell).is_ok_and(|built| {
                    built.model.pattern
                        == (Pattern::BipartitePlusClique {
                            left: ell,
                            right: half - ell,
                        })
                        && verify_odd_model(&g, &built.model, true).is_empty()
                });
                failures += usize::from(!ok);
            }
        }
    }
    Outcome {
        passed: failures == 0,
        summary: format!("{pairs} (graph, l) pairs, {failures} failures"),
    }
}

fn named_instances() -> Outcome {
    let c5 = cycle(5);
    let named = [
        ("C5", c5.clone(), 3),
        ("complement(C7)", cycle(7).complement(), 4),
        ("complement(Petersen)", petersen().complement(), 5),
        ("C5 join C5", c5.join(&c5), 6),
    ];
    let mut notes = Vec::new();
    let mut passed = true;
    for (name, g, expected) in named {
        let brute = chromatic_brute(&g);
        let exact = chromatic_number(&g).unwrap().chi;
        if brute != expected || exact != expected {
            passed = false;
            notes.push(format!("{name}: chi {exact}, brute force {brute}"));
            continue;
        }
        let mut slowest = Duration::ZERO;
        for ell in 1..expected {
            let start = Instant::now();
            let ok = special_bipartite_model(&g, ell).is_ok_and(|b| {
                b.model.pattern
                    == (Pattern::Bipartite {
                        left: ell,
                        right: expected - ell,
                    })
                    && naive_violations(&g, &b.model, true).is_empty()
            });
            slowest = slowest.max(start.elapsed());
            passed &= ok && start.elapsed() < Duration::from_secs(1);
        }
        notes.push(format!(
            "{name} chi={expected} slowest {}ms",
            slowest.as_millis()
        ));
    }
    Outcome {
        passed,
        summary: notes.join("; "),
    }
}

/// Valid certificates to corrupt: constructor output on a spread of graphs.
fn mutation_bases() -> Vec<(Graph, OddModel)> {
    let mut bases = Vec::new();
    let mut graphs = vec![
        cycle(5),
        cycle(7).complement(),
        petersen().complement(),
        cycle(5).join(&cycle(5)),
    ];
    graphs.extend((0..12).map(|s| random_alpha2_graph(7 + s as usize % 6, s)));
    for g in graphs {
        let chi = chromatic_number(&g).unwrap().chi;
        for ell in 1..chi {
            bases.push((g.clone(), special_bipartite_model(&g, ell).unwrap().model));
        }
        let half = g.n().div_ceil(2);
        for ell in (1..).take_while(|&l| 2 * l <= half) {
            bases.push((g.clone(), special_model_half_order(&g, ell).unwrap().model));
        }
    }
    bases
}

fn mutate(g: &Graph, m: &OddModel, rng: &mut ChaCha8Rng) -> (&'static str, OddModel) {
    let mut out = m.clone();
    let k = rng.random_range(0..out.branch_sets.len());
    let n = g.n();
    let kind = [
        "recolor",
        "drop-color",
        "move-vertex",
        "duplicate-vertex",
        "drop-tree-edge",
        "add-tree-edge",
        "flip-side",
        "drop-branch-set",
        "foreign-vertex",
        "add-vertex",
        "swap-pattern",
    ]
    .choose(rng)
    .copied()
    .unwrap();
    match kind {
        "recolor" => {
            let v = *out.branch_sets[k].vertices.choose(rng).unwrap();
            let c = out.colors[&v].flipped();
            out.colors.insert(v, c);
        }
        "drop-color" => {
            let v = *out.branch_sets[k].vertices.choose(rng).unwrap();
            out.colors.remove(&v);
        }
        "move-vertex" => {
            let b = &mut out.branch_sets[k];
            let i = rng.random_range(0..b.vertices.len());
            let v = b.vertices.remove(i);
            b.tree_edges.retain(|&(x, y)| x != v && y != v);
            let j = rng.random_range(0..out.branch_sets.len());
            out.branch_sets[j].vertices.push(v);
        }
        "duplicate-vertex" => {
            let v = *out.branch_sets[k].vertices.choose(rng).unwrap();
            let j = rng.random_range(0..out.branch_sets.len());
            out.branch_sets[j].vertices.push(v);
        }
        "drop-tree-edge" => {
            let b = &mut out.branch_sets[k];
            if !b.tree_edges.is_empty() {
                let i = rng.random_range(0..b.tree_edges.len());
                b.tree_edges.remove(i);
            }
        }
        "add-tree-edge" => {
            let (u, v) = (rng.random_range(0..n), rng.random_range(0..n));
            out.branch_sets[k].tree_edges.push((u, v));
        }
        "flip-side" => {
            let b = &mut out.branch_sets[k];
            b.side = b.side.flipped();
        }
        "drop-branch-set" => {
            let b = out.branch_sets.remove(k);
            for v in b.vertices {
                out.colors.remove(&v);
            }
        }
        "foreign-vertex" => {
            out.branch_sets[k] = BranchSet::singleton(Side::Left, n + rng.random_range(0..3));
        }
        "add-vertex" => {
            let v = rng.random_range(0..n);
            let b = &mut out.branch_sets[k];
            if let Some(&u) = b.vertices.iter().find(|&&u| g.has_edge(u, v)) {
                b.tree_edges.push((u, v));
            }
            b.vertices.push(v);
            out.colors
                .entry(v)
                .or_insert(if rng.random() { Color::One } else { Color::Two });
        }
        _ => {
            out.pattern = match out.pattern {
                Pattern::Bipartite { left, right } => Pattern::Bipartite {
                    left: right,
                    right: left,
                },
                Pattern::BipartitePlusClique { left, right } => Pattern::Bipartite { left, right },
                Pattern::Clique { size } => Pattern::Clique { size: size + 1 },
            };
        }
    }
    (kind, out)
}

fn mutation_soundness() -> Outcome {
    let bases = mutation_bases();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut invalid, mut still_valid) = (0, 0);
    let mut false_accepts = 0;
    let mut wrong_kind = Vec::new();
    let mut false_rejects = 0;
    let mut exercised = BTreeSet::new();
    for trial in 0..2000 {
        let (g, base) = &bases[trial % bases.len()];
        let (label, mutated) = mutate(g, base, &mut rng);
        let expected = naive_violations(g, &mutated, true);
        let reported: BTreeSet<ViolationKind> = verify_odd_model(g, &mutated, true)
            .into_iter()
            .map(|v| v.kind)
            .collect();
        if expected.is_empty() {
            still_valid += 1;
            false_rejects += usize::from(!reported.is_empty());
            continue;
        }
        invalid += 1;
        exercised.extend(expected.iter().copied());
        if reported.is_empty() {
            false_accepts += 1;
        } else if reported.is_disjoint(&expected) {
            wrong_kind.push(label);
        }
    }
    Outcome {
        passed: invalid >= 1000 && false_accepts == 0 && wrong_kind.is_empty() && false_rejects == 0,
        summary: format!(
            "{invalid} invalid mutations ({} kinds), {still_valid} still valid, {false_accepts} false accepts, \
             {} mis-kinded, {false_rejects} false rejects",
            exercised.len(),
            wrong_kind.len()
        ),
    }
}

fn random_scale() -> Outcome {
    let start = Instant::now();
    let mut config = SweepConfig::new(SweepSource::Random {
        n: 25,
        count: 1000,
        seed: 7,
    });
    config.jobs = 8;
    let first = run_sweep(&config).expect("sweep runs");
    let elapsed = start.elapsed();
    let second = run_sweep(&config).expect("sweep runs");
    let stable = first.without_timing().to_json() == second.without_timing().to_json();
    let t = &first.totals;
    Outcome {
        passed: first.passed() && stable && within(elapsed, 5 * 60),
        summary: format!(
            "{}/{} pairs verified, {} contradictions, rerun byte-identical: {stable}, first run {:.1}s on 8 workers",
            t.verified,
            t.pairs,
            t.contradictions,
            elapsed.as_secs_f64()
        ),
    }
}
