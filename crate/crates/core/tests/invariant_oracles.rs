mod common;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{alpha_brute, chromatic_brute, connected, connectivity_brute};
use oddminor::graph::families::{complete, cycle, petersen};
use oddminor::invariants::{
    chromatic_number, independence_at_most_two, independence_number, max_clique,
    minimum_vertex_cut, vertex_connectivity,
};
use oddminor::oracle::{enumerate_alpha2_graphs, random_alpha2_graph};
use oddminor::{Error, Graph, VertexSet};

fn random_graph(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.random_bool(p))
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}

fn check_chromatic(g: &Graph) {
    let col = chromatic_number(g).unwrap();
    assert_eq!(col.chi, chromatic_brute(g), "{g:?}");
    assert!(col.is_proper(g));
    let used: std::collections::BTreeSet<_> = col.colors.iter().collect();
    assert_eq!(used.len(), col.chi);
    let n = g.n();
    if n > 0 {
        let alpha = alpha_brute(g);
        assert!(col.chi >= max_clique(g).unwrap().len().max(n.div_ceil(alpha)));
    }
}

#[test]
fn chromatic_number_matches_brute_force_on_alpha2_graphs() {
    for n in 0..=7 {
        for g in enumerate_alpha2_graphs(n).unwrap() {
            check_chromatic(&g);
        }
    }
}

#[test]
fn chromatic_number_matches_brute_force_on_arbitrary_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..2000 {
        let n = rng.random_range(1..=9);
        let p = rng.random_range(0.1..0.9);
        check_chromatic(&random_graph(n, p, &mut rng));
    }
}

#[test]
fn named_chromatic_numbers() {
    for (g, chi) in [
        (cycle(5), 3),
        (cycle(7).complement(), 4),
        (petersen().complement(), 5),
        (petersen(), 3),
        (cycle(5).join(&cycle(5)), 6),
    ] {
        assert_eq!(chromatic_brute(&g), chi);
        assert_eq!(chromatic_number(&g).unwrap().chi, chi);
    }
}

#[test]
fn independence_tests_agree() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..3000 {
        let n = rng.random_range(0..=9);
        let g = random_graph(n, rng.random_range(0.2..0.9), &mut rng);
        let alpha = alpha_brute(&g);
        assert_eq!(independence_at_most_two(&g), alpha <= 2);
        assert_eq!(independence_number(&g).unwrap(), alpha);
        let co = g.complement();
        let triangle = (0..n).any(|a| {
            (a + 1..n).any(|b| {
                (b + 1..n).any(|c| co.has_edge(a, b) && co.has_edge(a, c) && co.has_edge(b, c))
            })
        });
        assert_eq!(independence_at_most_two(&g), !triangle);
    }
    assert_eq!(independence_number(&petersen().complement()).unwrap(), 2);
    assert_eq!(independence_number(&Graph::empty(4)).unwrap(), 4);
}

fn check_cut(g: &Graph) {
    let n = g.n();
    let kappa = vertex_connectivity(g);
    assert_eq!(kappa, connectivity_brute(g), "{g:?}");
    if g.is_complete() {
        assert!(matches!(
            minimum_vertex_cut(g),
            Err(Error::Precondition { .. })
        ));
        return;
    }
    let c = minimum_vertex_cut(g).unwrap();
    assert_eq!(c.cut.len(), kappa);
    let rest: Vec<usize> = (0..n).filter(|&v| !c.cut.contains(v)).collect();
    assert!(!connected(g, &rest));
    assert_eq!(c.left.union(&c.right).union(&c.cut), g.vertices());
    assert!(c.left.is_disjoint(&c.right) && !c.left.is_empty() && !c.right.is_empty());
    assert!(g.is_clique(&c.left) && g.is_clique(&c.right));
    assert!(c
        .left
        .iter()
        .all(|u| c.right.iter().all(|w| !g.has_edge(u, w))));
    assert_eq!(c.cut_left.union(&c.cut_right), c.cut);
    assert!(c.cut_left.is_disjoint(&c.cut_right));
    assert!(g.is_complete_to(&c.cut_left, &c.left));
    assert!(g.is_complete_to(&c.cut_right, &c.right));
    assert!(c.left.len() + c.cut_left.len() >= c.right.len() + c.cut_right.len());
}

#[test]
fn cut_certificates_exhaustive_to_seven() {
    for n in 1..=7 {
        for g in enumerate_alpha2_graphs(n).unwrap() {
            check_cut(&g);
        }
    }
}

#[test]
fn cut_certificates_sampled_at_eight_and_nine() {
    for seed in 0..400 {
        check_cut(&random_alpha2_graph(8 + seed as usize % 2, seed));
    }
}

#[test]
fn named_cuts() {
    let c = minimum_vertex_cut(&cycle(5)).unwrap();
    let set = |v: &[usize]| v.iter().copied().collect::<VertexSet>();
    assert_eq!(
        (c.cut, c.left, c.right),
        (set(&[1, 4]), set(&[0]), set(&[2, 3]))
    );
    assert_eq!(vertex_connectivity(&cycle(7).complement()), 4);
    assert_eq!(vertex_connectivity(&complete(4)), 3);
}
