//! Named graph families, seeded random trees and random graphs of bounded
//! girth, and an exhaustive enumerator of unlabeled trees.

use std::collections::{BTreeSet, HashSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::metrics::{distances_from, girth, Girth};
use super::{Graph, GraphError, Vertex};

/// Attempt budget for [`Family::RandomGirth`].
pub const RANDOM_GIRTH_ATTEMPTS: usize = 10_000;

/// Chord probabilities cycled through by successive random-girth attempts.
const CHORD_PROBABILITIES: [f64; 5] = [0.05, 0.1, 0.2, 0.35, 0.5];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Hypercube(usize),
    /// K_{n,n} minus a perfect matching.
    Crown(usize),
    Cycle(usize),
    Path(usize),
    Complete(usize),
    Petersen,
    RandomTree { n: usize, seed: u64 },
    RandomGirth { n: usize, girth_min: usize, seed: u64 },
}

impl Family {
    /// Parses `name[:param[:param...]]`, e.g. `hypercube:3`, `crown:4`,
    /// `random_tree:12:7`. Random families take their seed from the last
    /// parameter, falling back to `default_seed` when it is omitted.
    pub fn parse(spec: &str, default_seed: u64) -> Result<Self, GraphError> {
        let mut parts = spec.trim().split(':');
        let name = parts.next().unwrap_or_default();
        let params = parts
            .map(|p| {
                p.parse::<u64>().map_err(|_| {
                    GraphError::InvalidParameter(format!("{spec:?}: {p:?} is not a non-negative integer"))
                })
            })
            .collect::<Result<Vec<_>, _>>()?;
        let arity = |want: &[usize]| -> Result<(), GraphError> {
            if want.contains(&params.len()) {
                Ok(())
            } else {
                Err(GraphError::InvalidParameter(format!(
                    "{spec:?}: {name} takes {want:?} parameters, got {}",
                    params.len()
                )))
            }
        };
        let p = |i: usize| params[i] as usize;
        let family = match name {
            "hypercube" => {
                arity(&[1])?;
                Family::Hypercube(p(0))
            }
            "crown" => {
                arity(&[1])?;
                Family::Crown(p(0))
            }
            "cycle" => {
                arity(&[1])?;
                Family::Cycle(p(0))
            }
            "path" => {
                arity(&[1])?;
                Family::Path(p(0))
            }
            "complete" => {
                arity(&[1])?;
                Family::Complete(p(0))
            }
            "petersen" => {
                arity(&[0])?;
                Family::Petersen
            }
            "random_tree" => {
                arity(&[1, 2])?;
                Family::RandomTree {
                    n: p(0),
                    seed: params.get(1).copied().unwrap_or(default_seed),
                }
            }
            "random_girth" => {
                arity(&[2, 3])?;
                Family::RandomGirth {
                    n: p(0),
                    girth_min: p(1),
                    seed: params.get(2).copied().unwrap_or(default_seed),
                }
            }
            other => {
                return Err(GraphError::InvalidParameter(format!(
                    "unknown graph family {other:?}"
                )))
            }
        };
        Ok(family)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Hypercube(d) => write!(f, "hypercube:{d}"),
            Family::Crown(n) => write!(f, "crown:{n}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::Petersen => f.write_str("petersen"),
            Family::RandomTree { n, seed } => write!(f, "random_tree:{n}:{seed}"),
            Family::RandomGirth { n, girth_min, seed } => {
                write!(f, "random_girth:{n}:{girth_min}:{seed}")
            }
        }
    }
}

fn invalid(msg: String) -> GraphError {
    GraphError::InvalidParameter(msg)
}

pub fn generate(family: &Family) -> Result<Graph, GraphError> {
    match *family {
        Family::Hypercube(d) => {
            if d > 16 {
                return Err(invalid(format!("hypercube dimension {d} exceeds 16")));
            }
            let n = 1usize << d;
            let edges = (0..n).flat_map(|v| {
                (0..d)
                    .map(move |bit| (v, v ^ (1 << bit)))
                    .filter(|&(a, b)| a < b)
            });
            Graph::from_edges(n, edges)
        }
        Family::Crown(n) => {
            if n < 2 {
                return Err(invalid(format!("crown graph needs n >= 2, got {n}")));
            }
            let edges = (0..n).flat_map(|i| (0..n).filter(move |&j| j != i).map(move |j| (i, n + j)));
            Graph::from_edges(2 * n, edges)
        }
        Family::Cycle(n) => {
            if n < 3 {
                return Err(invalid(format!("cycle needs n >= 3, got {n}")));
            }
            Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
        }
        Family::Path(n) => {
            if n < 1 {
                return Err(invalid("path needs n >= 1".into()));
            }
            Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
        }
        Family::Complete(n) => {
            if n < 1 {
                return Err(invalid("complete graph needs n >= 1".into()));
            }
            Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
        }
        Family::Petersen => {
            // outer 5-cycle, spokes, inner pentagram
            let edges = (0..5).flat_map(|i| [(i, (i + 1) % 5), (i, i + 5), (5 + i, 5 + (i + 2) % 5)]);
            Graph::from_edges(10, edges)
        }
        Family::RandomTree { n, seed } => {
            if n < 1 {
                return Err(invalid("random tree needs n >= 1".into()));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Graph::from_edges(n, random_tree_edges(n, &mut rng))
        }
        Family::RandomGirth { n, girth_min, seed } => random_girth(n, girth_min, seed),
    }
}

/// Uniform labeled tree via a random Prüfer sequence.
fn random_tree_edges(n: usize, rng: &mut impl Rng) -> Vec<(Vertex, Vertex)> {
    if n < 2 {
        return Vec::new();
    }
    let code: Vec<Vertex> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut remaining = vec![1usize; n];
    for &v in &code {
        remaining[v] += 1;
    }
    let mut leaves: BTreeSet<Vertex> = (0..n).filter(|&v| remaining[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in &code {
        let leaf = leaves.pop_first().expect("a Prüfer step always has a leaf");
        edges.push((leaf, v));
        remaining[v] -= 1;
        if remaining[v] == 1 {
            leaves.insert(v);
        }
    }
    let last: Vec<Vertex> = leaves.into_iter().collect();
    edges.push((last[0], last[1]));
    edges
}

/// Random spanning tree plus chords that keep every cycle at length
/// `>= girth_min`. An attempt is rejected when it ends without a cycle even
/// though one of the required length would fit (`n >= girth_min`); acyclic
/// results are accepted only when no such cycle can exist.
fn random_girth(n: usize, girth_min: usize, seed: u64) -> Result<Graph, GraphError> {
    random_girth_within(n, girth_min, seed, RANDOM_GIRTH_ATTEMPTS)
}

fn random_girth_within(
    n: usize,
    girth_min: usize,
    seed: u64,
    attempts: usize,
) -> Result<Graph, GraphError> {
    if n < 1 {
        return Err(invalid("random girth graph needs n >= 1".into()));
    }
    if girth_min < 3 {
        return Err(invalid(format!("girth bound must be >= 3, got {girth_min}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let want_cycle = n >= girth_min;
    for attempt in 0..attempts {
        let p = CHORD_PROBABILITIES[attempt % CHORD_PROBABILITIES.len()];
        let mut edges = random_tree_edges(n, &mut rng);
        let mut chords: Vec<(Vertex, Vertex)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        chords.shuffle(&mut rng);
        let mut g = Graph::from_edges(n, edges.iter().copied())?;
        for (u, v) in chords {
            if g.has_edge(u, v) || !rng.gen_bool(p) {
                continue;
            }
            // adding uv closes a cycle of length d(u, v) + 1
            if distances_from(&g, u)[v].is_some_and(|d| d + 1 >= girth_min) {
                edges.push((u, v));
                g = Graph::from_edges(n, edges.iter().copied())?;
            }
        }
        let achieved = girth(&g);
        debug_assert!(achieved.at_least(girth_min));
        if !want_cycle || achieved != Girth::Acyclic {
            return Ok(g);
        }
    }
    Err(GraphError::NotFound {
        attempts,
        what: format!("connected graph on {n} vertices with a cycle and girth >= {girth_min}"),
    })
}

/// Every tree on `n` vertices, one per isomorphism class, in a deterministic
/// order. Grows trees leaf by leaf and deduplicates by a center-rooted
/// canonical encoding.
pub fn all_trees(n: usize) -> Vec<Graph> {
    if n == 0 {
        return Vec::new();
    }
    let mut level = vec![Graph::empty(1)];
    for size in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for tree in &level {
            for v in tree.vertices() {
                let edges = tree.edges().chain(std::iter::once((v, size - 1)));
                let grown = Graph::from_edges(size, edges).expect("leaf attachment is valid");
                if seen.insert(canonical_tree_code(&grown)) {
                    next.push(grown);
                }
            }
        }
        level = next;
    }
    level
}

fn canonical_tree_code(tree: &Graph) -> String {
    fn encode(g: &Graph, v: Vertex, parent: Option<Vertex>) -> String {
        let mut children: Vec<String> = g
            .neighbors(v)
            .iter()
            .filter(|&&c| Some(c) != parent)
            .map(|&c| encode(g, c, Some(v)))
            .collect();
        children.sort_unstable();
        format!("({})", children.concat())
    }

    // strip leaves layer by layer until one or two centers remain
    let n = tree.n();
    let mut degree: Vec<usize> = tree.vertices().map(|v| tree.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut frontier: Vec<Vertex> = tree.vertices().filter(|&v| degree[v] <= 1).collect();
    let mut left = n;
    while left > 2 {
        let mut next = Vec::new();
        for &leaf in &frontier {
            removed[leaf] = true;
            left -= 1;
            for &w in tree.neighbors(leaf) {
                if !removed[w] {
                    degree[w] -= 1;
                    if degree[w] == 1 {
                        next.push(w);
                    }
                }
            }
        }
        frontier = next;
    }
    tree.vertices()
        .filter(|&v| !removed[v])
        .map(|c| encode(tree, c, None))
        .min()
        .expect("a nonempty tree has a center")
}
