mod support;

use proptest::prelude::*;
use support::oracle::pairwise_modularity;
use support::{karate, karate_factions, random_graph, random_weighted_graph};
use wlpa_core::{modularity, nmi, strong_weak_check, Graph, Partition};

fn random_partition(n: usize, k: u32, seed: u64) -> Partition {
    let labels: Vec<u32> = (0..n as u64)
        .map(|i| ((i.wrapping_mul(2654435761).wrapping_add(seed)) % k as u64) as u32)
        .collect();
    Partition::from_labels(&labels)
}

#[test]
fn karate_factions_modularity() {
    let g = karate();
    let truth = karate_factions(&g);
    assert_eq!(truth.community_count(), 2);
    let oracle = pairwise_modularity(&g, &truth);
    assert!((oracle - 0.3715).abs() < 1e-4, "{oracle}");
    assert!((modularity(&g, &truth).unwrap() - oracle).abs() < 1e-12);
}

#[test]
fn matches_pairwise_formula_on_weighted_graphs() {
    for seed in 0..30 {
        let g = random_weighted_graph(25, 0.2, seed);
        if g.edge_count() == 0 {
            continue;
        }
        for k in [1, 2, 3, 7, 25] {
            let p = random_partition(25, k, seed);
            let q = modularity(&g, &p).unwrap();
            assert!((q - pairwise_modularity(&g, &p)).abs() < 1e-12);
            assert!((-1.0..=1.0).contains(&q));
        }
    }
}

#[test]
fn one_community_and_singleton_identities() {
    for seed in 0..20 {
        let g = random_weighted_graph(30, 0.15, seed);
        let n = g.node_count();
        assert!(modularity(&g, &Partition::whole(n)).unwrap().abs() < 1e-12);
        let two_w = 2.0 * g.total_weight();
        let expected = -g
            .nodes()
            .map(|u| (g.strength(u) / two_w).powi(2))
            .sum::<f64>();
        assert!((modularity(&g, &Partition::singletons(n)).unwrap() - expected).abs() < 1e-12);
    }
}

fn permute(g: &Graph, perm: &[u32]) -> Graph {
    Graph::from_edges(
        g.node_count(),
        g.edges()
            .iter()
            .map(|e| (perm[e.u.index()], perm[e.v.index()], e.weight)),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn modularity_invariances(seed in 0u64..100_000, k in 1u32..6, alpha in 0.01f64..100.0, rot in 1usize..29) {
        let g = random_weighted_graph(30, 0.2, seed);
        prop_assume!(g.edge_count() > 0);
        let p = random_partition(30, k, seed);
        let q = modularity(&g, &p).unwrap();

        // community renaming
        let renamed: Vec<u32> = p.assignment().iter().map(|&c| 100 - c).collect();
        prop_assert!((modularity(&g, &Partition::from_labels(&renamed)).unwrap() - q).abs() < 1e-12);

        // node permutation applied to graph and partition
        let perm: Vec<u32> = (0..30u32).map(|i| (i + rot as u32) % 30).collect();
        let mut moved = vec![0u32; 30];
        for (i, &c) in p.assignment().iter().enumerate() {
            moved[perm[i] as usize] = c;
        }
        let q_perm = modularity(&permute(&g, &perm), &Partition::from_labels(&moved)).unwrap();
        prop_assert!((q_perm - q).abs() < 1e-12);

        // uniform weight scaling
        let scaled = Graph::from_edges(30, g.edges().iter().map(|e| (e.u.0, e.v.0, e.weight * alpha))).unwrap();
        prop_assert!((modularity(&scaled, &p).unwrap() - q).abs() < 1e-12);
    }

    #[test]
    fn nmi_symmetry_and_renaming(seed in 0u64..100_000, n in 1usize..60, k1 in 1u32..8, k2 in 1u32..8) {
        let a = random_partition(n, k1, seed);
        let b = random_partition(n, k2, seed.wrapping_mul(31).wrapping_add(7));
        let ab = nmi(&a, &b).unwrap();
        prop_assert!((0.0..=1.0).contains(&ab));
        prop_assert!((ab - nmi(&b, &a).unwrap()).abs() < 1e-12);
        let renamed: Vec<u32> = a.assignment().iter().map(|&c| c * 3 + 11).collect();
        prop_assert!((nmi(&Partition::from_labels(&renamed), &b).unwrap() - ab).abs() < 1e-12);
        prop_assert!((nmi(&a, &a).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn strong_implies_weak(seed in 0u64..100_000, n in 2usize..40, k in 1u32..6) {
        let g = random_graph(n, 0.25, seed);
        let p = random_partition(n, k, seed);
        for f in strong_weak_check(&g, &p).unwrap() {
            prop_assert!(!f.strong || f.weak);
        }
    }
}
