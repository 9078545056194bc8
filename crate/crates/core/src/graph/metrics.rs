use std::cmp::Ordering;
use std::collections::VecDeque;
use std::fmt;

use serde::{Serialize, Serializer};

use super::{Graph, Vertex};

/// Length of a shortest cycle. `Acyclic` orders above every finite girth, so
/// "girth at least g" filters admit forests.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Girth {
    Finite(usize),
    Acyclic,
}

impl Girth {
    pub fn at_least(self, bound: usize) -> bool {
        self >= Girth::Finite(bound)
    }

    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Acyclic => None,
        }
    }
}

impl Ord for Girth {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Girth::Finite(a), Girth::Finite(b)) => a.cmp(b),
            (Girth::Finite(_), Girth::Acyclic) => Ordering::Less,
            (Girth::Acyclic, Girth::Finite(_)) => Ordering::Greater,
            (Girth::Acyclic, Girth::Acyclic) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Girth {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Acyclic => f.write_str("acyclic"),
        }
    }
}

impl Serialize for Girth {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Girth::Finite(g) => serializer.serialize_u64(*g as u64),
            Girth::Acyclic => serializer.serialize_str("acyclic"),
        }
    }
}

/// Shortest cycle length by a BFS from every vertex: a non-tree edge `xy`
/// met from root `r` closes a closed walk of length `d(x) + d(y) + 1`, and
/// the minimum over all roots is attained by a genuine shortest cycle.
pub fn girth(g: &Graph) -> Girth {
    let n = g.n();
    let mut best = usize::MAX;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();

    for root in g.vertices() {
        dist.fill(usize::MAX);
        parent.fill(usize::MAX);
        dist[root] = 0;
        queue.clear();
        queue.push_back(root);
        while let Some(x) = queue.pop_front() {
            if 2 * dist[x] + 1 >= best {
                break;
            }
            for &y in g.neighbors(x) {
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent[y] = x;
                    queue.push_back(y);
                } else if parent[x] != y {
                    best = best.min(dist[x] + dist[y] + 1);
                }
            }
        }
    }

    if best == usize::MAX {
        Girth::Acyclic
    } else {
        Girth::Finite(best)
    }
}

/// Whether `g` contains a cycle of exactly `len` vertices (`len >= 3`), by
/// depth-bounded search over simple paths whose smallest vertex is the
/// starting point.
pub fn has_cycle_of_length(g: &Graph, len: usize) -> bool {
    assert!(len >= 3, "cycles have at least three vertices");

    fn extend(g: &Graph, start: Vertex, at: Vertex, depth: usize, len: usize, on_path: &mut [bool]) -> bool {
        if depth == len {
            return g.has_edge(at, start);
        }
        for &next in g.neighbors(at) {
            if next > start && !on_path[next] {
                on_path[next] = true;
                let found = extend(g, start, next, depth + 1, len, on_path);
                on_path[next] = false;
                if found {
                    return true;
                }
            }
        }
        false
    }

    let mut on_path = vec![false; g.n()];
    g.vertices().any(|start| {
        on_path[start] = true;
        let found = extend(g, start, start, 1, len, &mut on_path);
        on_path[start] = false;
        found
    })
}

/// BFS distances from `source`; `None` marks another component.
pub fn distances_from(g: &Graph, source: Vertex) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.n()];
    dist[source] = Some(0);
    let mut queue = VecDeque::from([source]);
    while let Some(x) = queue.pop_front() {
        let dx = dist[x].expect("queued vertices are reached");
        for &y in g.neighbors(x) {
            if dist[y].is_none() {
                dist[y] = Some(dx + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Vertices grouped by distance from a source.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LayerDecomposition {
    pub source: Vertex,
    /// `layers[i]` holds the vertices at distance exactly `i`, sorted.
    pub layers: Vec<Vec<Vertex>>,
    /// Vertices at infinite distance.
    pub unreachable: Vec<Vertex>,
}

impl LayerDecomposition {
    /// N_i(source); empty past the last layer.
    pub fn layer(&self, i: usize) -> &[Vertex] {
        self.layers.get(i).map_or(&[], Vec::as_slice)
    }

    /// N_{<=i}(source) = N_1 ∪ ... ∪ N_i. The source itself is excluded.
    pub fn within(&self, i: usize) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = (1..=i).flat_map(|j| self.layer(j).iter().copied()).collect();
        out.sort_unstable();
        out
    }

    pub fn distance(&self, v: Vertex) -> Option<usize> {
        self.layers.iter().position(|layer| layer.binary_search(&v).is_ok())
    }
}

pub fn layers(g: &Graph, source: Vertex) -> LayerDecomposition {
    let dist = distances_from(g, source);
    let depth = dist.iter().flatten().copied().max().unwrap_or(0);
    let mut layers = vec![Vec::new(); depth + 1];
    let mut unreachable = Vec::new();
    for (v, d) in dist.into_iter().enumerate() {
        match d {
            Some(d) => layers[d].push(v),
            None => unreachable.push(v),
        }
    }
    LayerDecomposition {
        source,
        layers,
        unreachable,
    }
}

/// m(G): the largest k such that at least k vertices have degree >= k - 1.
/// Reads it off the non-increasing degree sequence; 0 for the empty graph.
pub fn m_degree(g: &Graph) -> usize {
    let mut degrees: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
    degrees.sort_unstable_by(|a, b| b.cmp(a));
    // the condition on k is downward closed, so the first failure ends it
    degrees
        .iter()
        .enumerate()
        .take_while(|&(i, &d)| d >= i)
        .count()
}

/// D_k(G): vertices of degree at least k - 1.
pub fn dense_vertices(g: &Graph, k: usize) -> Vec<Vertex> {
    g.vertices()
        .filter(|&v| g.degree(v) + 1 >= k)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn gen(f: Family) -> Graph {
        generate(&f).unwrap()
    }

    #[test]
    fn girth_examples() {
        assert_eq!(girth(&gen(Family::Cycle(5))), Girth::Finite(5));
        assert_eq!(girth(&gen(Family::RandomTree { n: 7, seed: 3 })), Girth::Acyclic);
        assert_eq!(girth(&gen(Family::Petersen)), Girth::Finite(5));
        assert_eq!(girth(&gen(Family::Hypercube(3))), Girth::Finite(4));
        assert_eq!(girth(&gen(Family::Complete(4))), Girth::Finite(3));
        assert_eq!(girth(&Graph::empty(0)), Girth::Acyclic);
    }

    #[test]
    fn acyclic_orders_above_finite() {
        assert!(Girth::Acyclic > Girth::Finite(1_000_000));
        assert!(Girth::Acyclic.at_least(10));
        assert!(!Girth::Finite(9).at_least(10));
        assert!(Girth::Finite(10).at_least(10));
    }

    #[test]
    fn cycle_length_detection() {
        let c7 = gen(Family::Cycle(7));
        assert!(has_cycle_of_length(&c7, 7));
        assert!(!has_cycle_of_length(&c7, 6));
        let q3 = gen(Family::Hypercube(3));
        assert!(has_cycle_of_length(&q3, 4));
        assert!(has_cycle_of_length(&q3, 6));
        assert!(!has_cycle_of_length(&q3, 5));
        assert!(!has_cycle_of_length(&q3, 7));
        assert!(has_cycle_of_length(&gen(Family::Petersen), 9));
        assert!(!has_cycle_of_length(&gen(Family::Petersen), 7));
    }

    #[test]
    fn layer_examples() {
        let p3 = gen(Family::Path(3));
        assert_eq!(layers(&p3, 0).layers, vec![vec![0], vec![1], vec![2]]);

        let two_edges = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let l = layers(&two_edges, 0);
        assert_eq!(l.layer(1), &[1]);
        assert_eq!(l.unreachable, vec![2, 3]);
        assert_eq!(l.distance(3), None);

        let q3 = gen(Family::Hypercube(3));
        for source in q3.vertices() {
            let sizes: Vec<usize> = layers(&q3, source).layers.iter().map(Vec::len).collect();
            assert_eq!(sizes, vec![1, 3, 3, 1]);
        }
    }

    #[test]
    fn within_excludes_source() {
        let p5 = gen(Family::Path(5));
        assert_eq!(layers(&p5, 2).within(2), vec![0, 1, 3, 4]);
        assert_eq!(layers(&p5, 0).within(1), vec![1]);
    }

    #[test]
    fn m_degree_examples() {
        assert_eq!(m_degree(&gen(Family::Complete(4))), 4);
        assert_eq!(m_degree(&gen(Family::Path(4))), 2);
        assert_eq!(m_degree(&gen(Family::Path(5))), 3);
        assert_eq!(m_degree(&gen(Family::Hypercube(3))), 4);
        assert_eq!(m_degree(&gen(Family::Petersen)), 4);
        assert_eq!(m_degree(&Graph::empty(1)), 1);
    }

    #[test]
    fn dense_examples() {
        assert_eq!(dense_vertices(&gen(Family::Path(4)), 3), vec![1, 2]);
        assert_eq!(dense_vertices(&gen(Family::Path(4)), 1), vec![0, 1, 2, 3]);
        assert_eq!(dense_vertices(&gen(Family::Complete(4)), 4), vec![0, 1, 2, 3]);
    }
}
