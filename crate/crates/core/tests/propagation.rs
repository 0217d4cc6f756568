mod support;

use proptest::prelude::*;
use support::{karate, random_graph, random_weighted_graph};
use wlpa_core::betweenness::{local_edge_betweenness, sorted_neighbor_order};
use wlpa_core::propagation::{restricted_neighbor_set, stop_criterion};
use wlpa_core::{detect, modularity, Algorithm, Graph, LpaConfig, NodeId};

fn check_contract(g: &Graph, cfg: &LpaConfig) {
    let d = detect(g, cfg).unwrap();
    assert!(d.passes >= 1 && d.passes <= cfg.max_passes);
    assert!(d.converged || d.passes == cfg.max_passes);
    if d.converged {
        let weighted = cfg.is_weighted(g);
        assert!(stop_criterion(g, |v| d.labels[v.index()], weighted));
        assert!(stop_criterion(g, |v| d.partition.community_of(v), weighted));
    }
    assert!(d.labels.iter().all(|&l| (l as usize) < g.node_count()));
    // nodes sharing a raw label share a community and vice versa
    for u in g.nodes() {
        for v in g.nodes() {
            let same_label = d.labels[u.index()] == d.labels[v.index()];
            let same_community = d.partition.community_of(u) == d.partition.community_of(v);
            assert_eq!(same_label, same_community);
        }
    }
}

#[test]
fn contract_holds_on_random_graphs() {
    for seed in 0..150u64 {
        let n = 2 + (seed as usize * 7) % 60;
        let g = if seed % 3 == 0 {
            random_weighted_graph(n, 4.0 / n as f64, seed)
        } else {
            random_graph(n, 4.0 / n as f64, seed)
        };
        for algorithm in [Algorithm::Lpa, Algorithm::WlpaLeb] {
            for max_passes in [1, 4, 100] {
                let cfg = LpaConfig {
                    algorithm,
                    max_passes,
                    ..LpaConfig::lpa(seed)
                };
                check_contract(&g, &cfg);
            }
        }
    }
}

#[test]
fn uniform_scores_make_restriction_follow_id_order() {
    // depth-1 scores are all 1, so the ranking falls back to neighbor id order
    let g = random_graph(40, 0.15, 3);
    let scores = local_edge_betweenness(&g, 1).unwrap();
    let ranked = sorted_neighbor_order(&g, &scores).unwrap();
    for u in g.nodes() {
        assert_eq!(ranked.ranked(u), g.adjacent(u));
        let d = g.degree(u);
        let restricted = restricted_neighbor_set(ranked.ranked(u), false);
        assert_eq!(restricted, &g.adjacent(u)[..d.div_ceil(2)]);
    }
}

#[test]
fn runs_are_reproducible() {
    let g = karate();
    for seed in [0, 1, 99] {
        for cfg in [
            LpaConfig::lpa(seed),
            LpaConfig::wlpa_leb(seed),
            LpaConfig::wlpa_leb_four_pass(seed),
        ] {
            assert_eq!(detect(&g, &cfg).unwrap(), detect(&g, &cfg).unwrap());
        }
    }
}

#[test]
fn karate_wlpa_finds_good_split_within_a_few_runs() {
    let g = karate();
    let best = (0..20)
        .map(|seed| {
            modularity(
                &g,
                &detect(&g, &LpaConfig::wlpa_leb(seed)).unwrap().partition,
            )
            .unwrap()
        })
        .fold(f64::MIN, f64::max);
    assert!(best >= 0.37, "{best}");
}

#[test]
fn isolated_nodes_stay_alone() {
    let g = Graph::from_edges(5, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 1.0)]).unwrap();
    for cfg in [LpaConfig::lpa(4), LpaConfig::wlpa_leb(4)] {
        let d = detect(&g, &cfg).unwrap();
        assert_eq!(d.labels[3], 3);
        assert_eq!(d.labels[4], 4);
        assert_eq!(d.partition.community_count(), 3);
        assert_eq!(
            d.partition.community_of(NodeId(0)),
            d.partition.community_of(NodeId(2))
        );
    }
}

#[test]
fn explicit_weighting_overrides_graph() {
    // unit weights: weighted restriction takes floor(d/2) edges, unweighted ceil(d/2)
    let g = random_graph(30, 0.2, 8);
    let weighted = LpaConfig {
        weighted: Some(true),
        ..LpaConfig::wlpa_leb(1)
    };
    let plain = LpaConfig::wlpa_leb(1);
    assert!(weighted.is_weighted(&g) && !plain.is_weighted(&g));
    check_contract(&g, &weighted);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn contract_holds_for_arbitrary_edge_sets(
        n in 1usize..25,
        raw in proptest::collection::vec((0u32..25, 0u32..25, 0.1f64..3.0), 0..80),
        seed in 0u64..1000,
        algorithm in prop_oneof![Just(Algorithm::Lpa), Just(Algorithm::WlpaLeb)],
        depth in 1u32..4,
    ) {
        let edges = raw.into_iter().map(|(u, v, w)| (u % n as u32, v % n as u32, w));
        let g = Graph::from_edges(n, edges).unwrap();
        let cfg = LpaConfig { algorithm, depth, max_passes: 20, ..LpaConfig::lpa(seed) };
        check_contract(&g, &cfg);
    }
}
