//! Planarity decisions on random graphs, compared with answers recorded from
//! an independent implementation (networkx `check_planarity`).

use modlat::graph::{lr_planarity, Graph};
use serde::Deserialize;

#[derive(Deserialize)]
struct Case {
    n: usize,
    edges: Vec<(usize, usize)>,
    planar: bool,
}

#[test]
fn matches_recorded_answers() {
    let cases: Vec<Case> = serde_json::from_str(include_str!("fixtures/planarity.json")).unwrap();
    assert!(cases.len() >= 400);
    let mut mismatches = Vec::new();
    for (i, c) in cases.iter().enumerate() {
        let g = Graph::from_edges(c.n, &c.edges);
        if lr_planarity(&g) != c.planar {
            mismatches.push(i);
        }
    }
    assert!(mismatches.is_empty(), "mismatched cases: {mismatches:?}");
}

#[test]
fn vertex_order_does_not_matter() {
    let cases: Vec<Case> = serde_json::from_str(include_str!("fixtures/planarity.json")).unwrap();
    for c in cases.iter().take(120) {
        // Reverse the vertex numbering.
        let edges: Vec<(usize, usize)> = c.edges.iter().map(|&(a, b)| (c.n - 1 - a, c.n - 1 - b)).collect();
        assert_eq!(lr_planarity(&Graph::from_edges(c.n, &edges)), c.planar);
    }
}
