#![allow(dead_code)]

pub mod oracle;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::PathBuf;
use wlpa_core::{parse_edge_list, Graph, LoadOptions, Partition};

pub fn data_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../data")
        .join(name)
}

pub fn karate() -> Graph {
    let text = std::fs::read_to_string(data_path("karate.txt")).unwrap();
    parse_edge_list(&text, LoadOptions::default()).unwrap().0
}

pub fn karate_factions(g: &Graph) -> Partition {
    let text = std::fs::read_to_string(data_path("karate_truth.txt")).unwrap();
    Partition::parse(&text, g).unwrap()
}

/// G(n, p) with unit weights.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.random::<f64>() < p {
                edges.push((u, v, 1.0));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}

/// G(n, p) with weights drawn from (0.1, 5).
pub fn random_weighted_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n as u32 {
        for v in u + 1..n as u32 {
            if rng.random::<f64>() < p {
                edges.push((u, v, rng.random_range(0.1..5.0)));
            }
        }
    }
    Graph::from_edges(n, edges).unwrap()
}
