mod common;

use common::naive_violations;
use oddminor::construct::{odd_half_clique, special_bipartite_model, special_model_half_order};
use oddminor::graph::families::cycle;
use oddminor::invariants::chromatic_number;
use oddminor::model::OddModel;
use oddminor::oracle::{brute_force_odd_model, enumerate_alpha2_graphs, stream_alpha2_graphs};
use oddminor::Graph;

fn oracle_confirms(g: &Graph, m: &OddModel) {
    let found = brute_force_odd_model(g, m.pattern, true).unwrap();
    let found = found.unwrap_or_else(|| panic!("oracle found no {} in {g:?}", m.pattern));
    assert!(naive_violations(g, &found, true).is_empty());
}

#[test]
fn oracle_finds_every_constructed_pattern_up_to_six_vertices() {
    for n in 1..=6 {
        for g in enumerate_alpha2_graphs(n).unwrap() {
            let chi = chromatic_number(&g).unwrap().chi;
            for ell in 1..chi {
                oracle_confirms(&g, &special_bipartite_model(&g, ell).unwrap().model);
            }
            if !g.is_complete() {
                for ell in (1..).take_while(|&l| 2 * l <= n.div_ceil(2)) {
                    oracle_confirms(&g, &special_model_half_order(&g, ell).unwrap().model);
                }
            }
            if let Ok(built) = odd_half_clique(&g) {
                oracle_confirms(&g, &built.model);
            }
        }
    }
}

#[test]
fn oracle_answers_are_deterministic() {
    let g = cycle(7).complement();
    let p = special_model_half_order(&g, 2).unwrap().model.pattern;
    let first = brute_force_odd_model(&g, p, true).unwrap();
    assert_eq!(first, brute_force_odd_model(&g, p, true).unwrap());
}

#[test]
fn stream_of_c5_yields_c5() {
    let graphs: Vec<_> = stream_alpha2_graphs("Dhc\n".as_bytes()).collect();
    assert_eq!(graphs.len(), 1);
    let g = graphs[0].as_ref().unwrap();
    let c5 = cycle(5);
    assert_eq!(g.edge_count(), 5);
    assert!((0..5).all(|v| g.degree(v) == 2));
    assert_eq!(
        chromatic_number(g).unwrap().chi,
        chromatic_number(&c5).unwrap().chi
    );
}
