//! Simple undirected graphs on dense vertex indices `0..n`, plus ingestion,
//! generators and the structural metrics used throughout the crate.

mod edge_list;
pub mod generators;
mod graph6;
mod metrics;

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};

use thiserror::Error;

pub use edge_list::parse_edge_list;
pub use generators::{all_trees, generate, Family};
pub use graph6::{parse_graph6, GRAPH6_MAX_ORDER};
pub use metrics::{
    dense_vertices, distances_from, girth, has_cycle_of_length, layers, m_degree, Girth,
    LayerDecomposition,
};

/// A vertex index in `0..n`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no graph found after {attempts} attempts: {what}")]
    NotFound { attempts: usize, what: String },
}

/// Opaque fingerprint of a graph's vertex count and edge set.
///
/// Colorings remember the fingerprint of the graph they were built for, so
/// handing a coloring to the wrong graph is reported instead of silently
/// misread.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphId(u64);

impl fmt::Display for GraphId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:016x}", self.0)
    }
}

impl serde::Serialize for GraphId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Immutable simple undirected graph.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
    id: GraphId,
}

impl Graph {
    /// Graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Self {
        Self::from_adjacency(vec![Vec::new(); n])
    }

    /// Builds a graph from an edge list. Repeated edges (in either
    /// orientation) collapse to one; loops and out-of-range endpoints are
    /// rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { vertex, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Self::from_adjacency(adj))
    }

    fn from_adjacency(adj: Vec<Vec<Vertex>>) -> Self {
        let edge_count = adj.iter().map(Vec::len).sum::<usize>() / 2;
        let mut hasher = DefaultHasher::new();
        adj.hash(&mut hasher);
        let id = GraphId(hasher.finish());
        Graph {
            adj,
            edge_count,
            id,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn id(&self) -> GraphId {
        self.id
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.n()
    }

    /// Sorted open neighborhood N(u).
    pub fn neighbors(&self, u: Vertex) -> &[Vertex] {
        &self.adj[u]
    }

    pub fn degree(&self, u: Vertex) -> usize {
        self.adj[u].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        self.adj.windows(2).all(|w| w[0].len() == w[1].len())
    }

    /// A proper 2-coloring as side labels `0`/`1`, if one exists.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut side = vec![u8::MAX; self.n()];
        let mut stack = Vec::new();
        for root in self.vertices() {
            if side[root] != u8::MAX {
                continue;
            }
            side[root] = 0;
            stack.push(root);
            while let Some(u) = stack.pop() {
                for &v in self.neighbors(u) {
                    if side[v] == u8::MAX {
                        side[v] = 1 - side[u];
                        stack.push(v);
                    } else if side[v] == side[u] {
                        return None;
                    }
                }
            }
        }
        Some(side)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// True when no two vertices of `set` are adjacent.
    pub fn is_stable(&self, set: &[Vertex]) -> bool {
        set.iter()
            .enumerate()
            .all(|(i, &u)| set[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// graph6 short-form encoding (no header line, no trailing newline).
    ///
    /// Panics when `n` exceeds [`GRAPH6_MAX_ORDER`].
    pub fn to_graph6(&self) -> String {
        graph6::encode(self)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn duplicate_edges_collapse() {
        let g = Graph::from_edges(3, [(0, 1), (1, 0), (1, 2)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn rejects_loops_and_out_of_range() {
        assert_eq!(
            Graph::from_edges(3, [(1, 1)]),
            Err(GraphError::SelfLoop(1))
        );
        assert_eq!(
            Graph::from_edges(3, [(0, 3)]),
            Err(GraphError::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn id_tracks_edge_set() {
        let a = Graph::from_edges(3, [(0, 1)]).unwrap();
        let b = Graph::from_edges(3, [(1, 0)]).unwrap();
        let c = Graph::from_edges(3, [(1, 2)]).unwrap();
        assert_eq!(a.id(), b.id());
        assert_ne!(a.id(), c.id());
    }

    #[test]
    fn bipartition_of_odd_cycle_fails() {
        let c5 = Graph::from_edges(5, (0..5).map(|i| (i, (i + 1) % 5))).unwrap();
        assert!(!c5.is_bipartite());
        let c6 = Graph::from_edges(6, (0..6).map(|i| (i, (i + 1) % 6))).unwrap();
        assert!(c6.is_bipartite());
    }
}
