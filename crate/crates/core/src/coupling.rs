//! Undirected coupling graphs and all-pairs shortest-path queries.
//!
//! A coupling graph describes which hardware qubit pairs support a two-qubit
//! gate. Graphs are undirected, connected, and immutable once built; the
//! distance matrix is computed once with Floyd-Warshall and then shared.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: self-loop on qubit {qubit}")]
    SelfLoop { line: usize, qubit: usize },
    #[error("line {line}: qubit {qubit} out of range (graph has {count} qubits)")]
    QubitOutOfRange {
        line: usize,
        qubit: usize,
        count: usize,
    },
    #[error("qubit count must be positive")]
    NoQubits,
    #[error("missing `qubits N` header line")]
    MissingHeader,
    #[error("graph is disconnected: qubit {qubit} is unreachable from qubit 0")]
    Disconnected { qubit: usize },
}

/// Undirected hardware topology. Edges are stored normalized as `(u, v)`
/// with `u < v`; duplicates and direction are discarded on construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CouplingGraph {
    qubit_count: usize,
    edges: BTreeSet<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

impl CouplingGraph {
    /// Builds a validated graph from raw edge pairs. Rejects self-loops,
    /// out-of-range endpoints and disconnected graphs; duplicate edges and
    /// edge direction are silently collapsed.
    pub fn from_edges(
        qubit_count: usize,
        raw_edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, GraphError> {
        if qubit_count == 0 {
            return Err(GraphError::NoQubits);
        }
        let mut edges = BTreeSet::new();
        for (u, v) in raw_edges {
            if u == v {
                return Err(GraphError::SelfLoop { line: 0, qubit: u });
            }
            for q in [u, v] {
                if q >= qubit_count {
                    return Err(GraphError::QubitOutOfRange {
                        line: 0,
                        qubit: q,
                        count: qubit_count,
                    });
                }
            }
            edges.insert((u.min(v), u.max(v)));
        }
        let graph = Self::assemble(qubit_count, edges);
        graph.check_connected()?;
        Ok(graph)
    }

    fn assemble(qubit_count: usize, edges: BTreeSet<(usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); qubit_count];
        for &(u, v) in &edges {
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for neighbors in &mut adjacency {
            neighbors.sort_unstable();
        }
        Self {
            qubit_count,
            edges,
            adjacency,
        }
    }

    fn check_connected(&self) -> Result<(), GraphError> {
        let mut seen = vec![false; self.qubit_count];
        let mut queue = std::collections::VecDeque::from([0]);
        seen[0] = true;
        while let Some(q) = queue.pop_front() {
            for &w in &self.adjacency[q] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        match seen.iter().position(|&s| !s) {
            Some(qubit) => Err(GraphError::Disconnected { qubit }),
            None => Ok(()),
        }
    }

    /// Parses the line-oriented graph file format: a `qubits N` header
    /// followed by `edge U V` lines. `#` starts a comment; `edge 1 0` and
    /// `edge 0 1` denote the same undirected edge.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut qubit_count: Option<usize> = None;
        let mut edges = BTreeSet::new();
        for (idx, raw_line) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw_line.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = content.split_whitespace().collect();
            if tokens.is_empty() {
                continue;
            }
            match (tokens[0], qubit_count) {
                ("qubits", None) => {
                    if tokens.len() != 2 {
                        return Err(GraphError::Syntax {
                            line,
                            message: "expected `qubits N`".into(),
                        });
                    }
                    let n = parse_usize(tokens[1], line)?;
                    if n == 0 {
                        return Err(GraphError::NoQubits);
                    }
                    qubit_count = Some(n);
                }
                ("qubits", Some(_)) => {
                    return Err(GraphError::Syntax {
                        line,
                        message: "duplicate `qubits` header".into(),
                    });
                }
                ("edge", Some(count)) => {
                    if tokens.len() != 3 {
                        return Err(GraphError::Syntax {
                            line,
                            message: "expected `edge U V`".into(),
                        });
                    }
                    let u = parse_usize(tokens[1], line)?;
                    let v = parse_usize(tokens[2], line)?;
                    if u == v {
                        return Err(GraphError::SelfLoop { line, qubit: u });
                    }
                    for q in [u, v] {
                        if q >= count {
                            return Err(GraphError::QubitOutOfRange {
                                line,
                                qubit: q,
                                count,
                            });
                        }
                    }
                    edges.insert((u.min(v), u.max(v)));
                }
                ("edge", None) => return Err(GraphError::MissingHeader),
                (other, _) => {
                    return Err(GraphError::Syntax {
                        line,
                        message: format!("unknown directive `{other}`"),
                    });
                }
            }
        }
        let count = qubit_count.ok_or(GraphError::MissingHeader)?;
        let graph = Self::assemble(count, edges);
        graph.check_connected()?;
        Ok(graph)
    }

    /// Serializes back to the graph file format.
    pub fn to_text(&self) -> String {
        let mut out = format!("qubits {}\n", self.qubit_count);
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "edge {u} {v}");
        }
        out
    }

    /// Path graph `0 - 1 - ... - n-1`.
    pub fn line(n: usize) -> Self {
        assert!(n >= 1, "line needs at least 1 qubit");
        Self::from_edges(n, (0..n - 1).map(|i| (i, i + 1))).expect("line graph is valid")
    }

    /// Cycle graph on `n >= 3` qubits.
    pub fn ring(n: usize) -> Self {
        assert!(n >= 3, "ring needs at least 3 qubits");
        Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("ring graph is valid")
    }

    /// Star graph: qubit 0 joined to every other qubit.
    pub fn star(n: usize) -> Self {
        assert!(n >= 2, "star needs at least 2 qubits");
        Self::from_edges(n, (1..n).map(|i| (0, i))).expect("star graph is valid")
    }

    /// 2 x `cols` ladder: qubits `0..cols` on the top rail, `cols..2*cols`
    /// on the bottom rail, with a rung at every column.
    pub fn ladder(cols: usize) -> Self {
        assert!(cols >= 1, "ladder needs at least 1 column");
        let mut edges = Vec::new();
        for i in 0..cols - 1 {
            edges.push((i, i + 1));
            edges.push((cols + i, cols + i + 1));
        }
        for i in 0..cols {
            edges.push((i, cols + i));
        }
        Self::from_edges(2 * cols, edges).expect("ladder graph is valid")
    }

    pub fn qubit_count(&self) -> usize {
        self.qubit_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn neighbors(&self, qubit: usize) -> &[usize] {
        &self.adjacency[qubit]
    }

    pub fn are_adjacent(&self, u: usize, v: usize) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    /// All-pairs hop counts via Floyd-Warshall, with next-hop pointers for
    /// path reconstruction. When several shortest paths exist, the first
    /// improving intermediate (lowest index) wins, so the matrix is
    /// deterministic for a given graph.
    pub fn all_pairs_distances(&self) -> DistanceMatrix {
        let n = self.qubit_count;
        let mut dist = vec![vec![usize::MAX; n]; n];
        let mut next = vec![vec![0usize; n]; n];
        for u in 0..n {
            dist[u][u] = 0;
            for (v, hop) in next[u].iter_mut().enumerate() {
                *hop = v;
            }
        }
        for &(u, v) in &self.edges {
            dist[u][v] = 1;
            dist[v][u] = 1;
        }
        for k in 0..n {
            for i in 0..n {
                if dist[i][k] == usize::MAX {
                    continue;
                }
                for j in 0..n {
                    if dist[k][j] == usize::MAX {
                        continue;
                    }
                    let through = dist[i][k] + dist[k][j];
                    if through < dist[i][j] {
                        dist[i][j] = through;
                        next[i][j] = next[i][k];
                    }
                }
            }
        }
        debug_assert!(
            dist.iter().flatten().all(|&d| d != usize::MAX),
            "connected graph has finite distances"
        );
        DistanceMatrix { dist, next }
    }
}

fn parse_usize(token: &str, line: usize) -> Result<usize, GraphError> {
    token.parse().map_err(|_| GraphError::Syntax {
        line,
        message: format!("expected a non-negative integer, got `{token}`"),
    })
}

/// Precomputed hop counts and next-hop pointers for one [`CouplingGraph`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    dist: Vec<Vec<usize>>,
    next: Vec<Vec<usize>>,
}

impl DistanceMatrix {
    pub fn qubit_count(&self) -> usize {
        self.dist.len()
    }

    /// Minimum hop count between two hardware qubits.
    pub fn dist(&self, u: usize, v: usize) -> usize {
        self.dist[u][v]
    }

    /// One shortest path `[u, ..., v]`, reconstructed from the next-hop
    /// table; its vertex count is always `dist(u, v) + 1`.
    pub fn shortest_path(&self, u: usize, v: usize) -> Vec<usize> {
        let mut path = vec![u];
        let mut cur = u;
        while cur != v {
            cur = self.next[cur][v];
            path.push(cur);
        }
        path
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::SplitMix64;

    /// Independent breadth-first-search distances, used as the oracle for
    /// the Floyd-Warshall results.
    fn bfs_distances(g: &CouplingGraph, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; g.qubit_count()];
        let mut queue = std::collections::VecDeque::from([source]);
        dist[source] = 0;
        while let Some(q) = queue.pop_front() {
            for &w in g.neighbors(q) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[q] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Random connected graph: a random attachment tree plus extra edges.
    fn random_connected_graph(rng: &mut SplitMix64, max_qubits: usize) -> CouplingGraph {
        let n = 2 + rng.next_below(max_qubits as u64 - 1) as usize;
        let mut edges = Vec::new();
        for v in 1..n {
            let parent = rng.next_below(v as u64) as usize;
            edges.push((parent, v));
        }
        let extra = rng.next_below(n as u64) as usize;
        for _ in 0..extra {
            let u = rng.next_below(n as u64) as usize;
            let v = rng.next_below(n as u64) as usize;
            if u != v {
                edges.push((u, v));
            }
        }
        CouplingGraph::from_edges(n, edges).expect("tree plus extras is connected")
    }

    #[test]
    fn parses_smallest_connected_graph() {
        let g = CouplingGraph::parse("qubits 2\nedge 0 1").unwrap();
        assert_eq!(g.qubit_count(), 2);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn parses_line_topology() {
        let g = CouplingGraph::parse("qubits 4\nedge 0 1\nedge 1 2\nedge 2 3").unwrap();
        assert_eq!(g.qubit_count(), 4);
        assert_eq!(g.edge_count(), 3);
        assert_eq!(g, CouplingGraph::line(4));
    }

    #[test]
    fn rejects_disconnected_graph() {
        let err = CouplingGraph::parse("qubits 3\nedge 0 1").unwrap_err();
        assert_eq!(err, GraphError::Disconnected { qubit: 2 });
    }

    #[test]
    fn rejects_self_loop_and_bad_index() {
        assert!(matches!(
            CouplingGraph::parse("qubits 2\nedge 1 1"),
            Err(GraphError::SelfLoop { line: 2, qubit: 1 })
        ));
        assert!(matches!(
            CouplingGraph::parse("qubits 2\nedge 0 2"),
            Err(GraphError::QubitOutOfRange { qubit: 2, .. })
        ));
    }

    #[test]
    fn deduplicates_edges_and_direction() {
        let g = CouplingGraph::parse("qubits 2\nedge 0 1\nedge 1 0\nedge 0 1").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let g = CouplingGraph::parse("# topology\nqubits 2\n\nedge 0 1 # rung\n").unwrap();
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn missing_header_is_an_error() {
        assert_eq!(
            CouplingGraph::parse("edge 0 1"),
            Err(GraphError::MissingHeader)
        );
        assert_eq!(CouplingGraph::parse(""), Err(GraphError::MissingHeader));
    }

    #[test]
    fn text_round_trip() {
        let g = CouplingGraph::ladder(4);
        assert_eq!(CouplingGraph::parse(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn line_distance_spans_the_path() {
        let dm = CouplingGraph::line(4).all_pairs_distances();
        assert_eq!(dm.dist(0, 3), 3);
    }

    #[test]
    fn self_distance_is_zero() {
        let dm = CouplingGraph::ring(5).all_pairs_distances();
        for u in 0..5 {
            assert_eq!(dm.dist(u, u), 0);
        }
    }

    #[test]
    fn cycle_distance_uses_the_short_way() {
        let g = CouplingGraph::ring(4);
        let dm = g.all_pairs_distances();
        let bfs = bfs_distances(&g, 0);
        assert_eq!(bfs[2], 2);
        assert_eq!(dm.dist(0, 2), 2);
    }

    #[test]
    fn matches_bfs_oracle_on_random_graphs() {
        let mut rng = SplitMix64::new(2024);
        for _ in 0..60 {
            let g = random_connected_graph(&mut rng, 12);
            let dm = g.all_pairs_distances();
            for u in 0..g.qubit_count() {
                let bfs = bfs_distances(&g, u);
                for (v, &oracle) in bfs.iter().enumerate() {
                    assert_eq!(dm.dist(u, v), oracle, "dist({u},{v})");
                }
            }
        }
    }

    #[test]
    fn distance_matrix_is_symmetric_with_triangle_inequality() {
        let mut rng = SplitMix64::new(7);
        for _ in 0..20 {
            let g = random_connected_graph(&mut rng, 10);
            let dm = g.all_pairs_distances();
            let n = g.qubit_count();
            for u in 0..n {
                for v in 0..n {
                    assert_eq!(dm.dist(u, v), dm.dist(v, u));
                    assert_eq!(dm.dist(u, v) == 1, g.are_adjacent(u, v));
                    for w in 0..n {
                        assert!(dm.dist(u, w) <= dm.dist(u, v) + dm.dist(v, w));
                    }
                }
            }
        }
    }

    #[test]
    fn shortest_path_on_a_line_is_unique() {
        let dm = CouplingGraph::line(4).all_pairs_distances();
        assert_eq!(dm.shortest_path(0, 3), vec![0, 1, 2, 3]);
    }

    #[test]
    fn shortest_path_to_self_is_a_single_vertex() {
        let dm = CouplingGraph::star(5).all_pairs_distances();
        for u in 0..5 {
            assert_eq!(dm.shortest_path(u, u), vec![u]);
        }
    }

    #[test]
    fn cycle_shortest_path_has_oracle_length() {
        let g = CouplingGraph::ring(4);
        let dm = g.all_pairs_distances();
        let path = dm.shortest_path(0, 2);
        assert_eq!(path.len(), bfs_distances(&g, 0)[2] + 1);
        assert!(path == vec![0, 1, 2] || path == vec![0, 3, 2]);
    }

    #[test]
    fn reconstructed_paths_walk_edges_of_the_graph() {
        let mut rng = SplitMix64::new(99);
        for _ in 0..20 {
            let g = random_connected_graph(&mut rng, 10);
            let dm = g.all_pairs_distances();
            for u in 0..g.qubit_count() {
                for v in 0..g.qubit_count() {
                    let path = dm.shortest_path(u, v);
                    assert_eq!(path.len(), dm.dist(u, v) + 1);
                    assert_eq!(path[0], u);
                    assert_eq!(*path.last().unwrap(), v);
                    for pair in path.windows(2) {
                        assert!(g.are_adjacent(pair[0], pair[1]));
                    }
                }
            }
        }
    }

    #[test]
    fn ladder_has_expected_shape() {
        let g = CouplingGraph::ladder(8);
        assert_eq!(g.qubit_count(), 16);
        assert_eq!(g.edge_count(), 22);
        let dm = g.all_pairs_distances();
        assert_eq!(dm.dist(0, 7), 7);
        assert_eq!(dm.dist(0, 15), 8);
    }
}
