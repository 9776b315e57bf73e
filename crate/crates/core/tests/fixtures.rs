//! Sanity checks for the architecture files shipped under `data/`.

use qpr::coupling::CouplingGraph;

fn load(name: &str) -> CouplingGraph {
    let path = format!("{}/../../data/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("reading {path}: {e}"));
    CouplingGraph::parse(&text).unwrap_or_else(|e| panic!("parsing {path}: {e}"))
}

#[test]
fn qx5_is_the_published_sixteen_qubit_grid() {
    let g = load("qx5.graph");
    assert_eq!(g.qubit_count(), 16);
    assert_eq!(g.edge_count(), 22);
    // Grid structure: the outer ring plus a chord at every column.
    for i in 0..16 {
        assert!(g.are_adjacent(i, (i + 1) % 16));
    }
    for (a, b) in [(2, 15), (3, 14), (4, 13), (5, 12), (6, 11), (7, 10)] {
        assert!(g.are_adjacent(a, b));
    }
}

#[test]
fn qx3_lacks_exactly_the_two_missing_couplings() {
    let qx3 = load("qx3.graph");
    let qx5 = load("qx5.graph");
    assert_eq!(qx3.qubit_count(), 16);
    assert_eq!(qx3.edge_count(), 20);
    assert!(!qx3.are_adjacent(5, 6));
    assert!(!qx3.are_adjacent(2, 15));
    let qx5_edges: std::collections::BTreeSet<_> = qx5.edges().collect();
    let qx3_edges: std::collections::BTreeSet<_> = qx3.edges().collect();
    let missing: Vec<_> = qx5_edges.difference(&qx3_edges).copied().collect();
    assert_eq!(missing, vec![(2, 15), (5, 6)]);
    assert!(qx3_edges.is_subset(&qx5_edges));
}

#[test]
fn ladder16_file_matches_the_constructor() {
    let g = load("ladder16.graph");
    assert_eq!(g, CouplingGraph::ladder(8));
}

#[test]
fn line4_file_matches_the_constructor() {
    assert_eq!(load("line4.graph"), CouplingGraph::line(4));
}

#[test]
fn example_circuit_parses_with_three_cnots() {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../data/example.qc");
    let text = std::fs::read_to_string(path).unwrap();
    let c = qpr::circuit::Circuit::parse(&text).unwrap();
    assert_eq!(c.wire_count(), 4);
    assert_eq!(c.cnot_count(), 3);
}
