use std::collections::BTreeSet;

use bcontinuity::coloring::{neighbors_by_color, validate, Coloring};
use bcontinuity::descent::{descend_one, reduce_b_vertices, unique_move, weak_move};
use bcontinuity::graph::{
    generate, girth, layers, m_degree, parse_graph6, Family, Girth, Graph,
};
use bcontinuity::iris::{find_dilated_iris, find_iris};
use bcontinuity::oracle::{exact_chromatic, Oracle};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..=n * 2).prop_map(move |pairs| {
            let edges: Vec<_> = pairs.into_iter().filter(|(u, v)| u != v).collect();
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

/// Sparse graphs: a random tree plus a few chords.
fn sparse_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n, any::<u64>(), proptest::collection::vec((0usize..64, 0usize..64), 0..3)).prop_map(
        |(n, seed, chords)| {
            let tree = generate(&Family::RandomTree { n, seed }).unwrap();
            let mut edges: Vec<_> = tree.edges().collect();
            edges.extend(chords.into_iter().map(|(a, b)| (a % n, b % n)).filter(|(a, b)| a != b));
            Graph::from_edges(n, edges).unwrap()
        },
    )
}

fn floyd_warshall(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.n();
    let mut d = vec![vec![None; n]; n];
    for (v, row) in d.iter_mut().enumerate() {
        row[v] = Some(0);
        for &w in g.neighbors(v) {
            row[w] = Some(1);
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

proptest! {
    #[test]
    fn adjacency_is_symmetric_and_sorted(g in graph(20)) {
        for u in g.vertices() {
            let nb = g.neighbors(u);
            prop_assert!(nb.windows(2).all(|w| w[0] < w[1]));
            for &v in nb {
                prop_assert!(g.has_edge(v, u));
            }
        }
        prop_assert_eq!(g.edges().count(), g.edge_count());
    }

    #[test]
    fn graph6_round_trips(g in graph(40)) {
        let text = g.to_graph6();
        prop_assert_eq!(parse_graph6(&text).unwrap(), g);
    }

    #[test]
    fn layers_match_floyd_warshall(g in graph(12)) {
        let d = floyd_warshall(&g);
        for s in g.vertices() {
            let lay = layers(&g, s);
            for v in g.vertices() {
                prop_assert_eq!(lay.distance(v), d[s][v]);
            }
            let unreachable: Vec<_> = g.vertices().filter(|&v| d[s][v].is_none()).collect();
            prop_assert_eq!(&lay.unreachable, &unreachable);
        }
    }

    #[test]
    fn m_degree_matches_definition(g in graph(16)) {
        let count = |k: usize| g.vertices().filter(|&v| g.degree(v) + 1 >= k).count();
        let expected = (0..=g.n()).filter(|&k| count(k) >= k).max().unwrap();
        prop_assert_eq!(m_degree(&g), expected);
    }

    #[test]
    fn b_chromatic_is_at_most_m(g in graph(9)) {
        let r = Oracle::default().b_spectrum(&g).unwrap();
        prop_assert!(r.b <= r.m);
        prop_assert_eq!(r.chi, exact_chromatic(&g).0);
        prop_assert_eq!(r.spectrum.first().copied(), Some(r.chi));
    }

    #[test]
    fn b_and_r_partition_each_color(g in graph(9)) {
        let Some((_, c)) = Oracle::default().b_chromatic(&g).unwrap() else { return Ok(()) };
        let r = validate(&g, &c).unwrap();
        for &u in &r.b_vertices {
            for i in (1..=c.k()).filter(|&i| i != c.color(u)) {
                let (b, rest) = neighbors_by_color(&g, &c, u, i).unwrap();
                let both: BTreeSet<_> = b.iter().chain(&rest).copied().collect();
                let expected: BTreeSet<_> = g.neighbors(u).iter().copied().filter(|&v| c.color(v) == i).collect();
                prop_assert_eq!(both.len(), b.len() + rest.len());
                prop_assert_eq!(both, expected);
                prop_assert!(b.iter().all(|&v| r.is_b_vertex(v)));
                prop_assert!(rest.iter().all(|&v| !r.is_b_vertex(v)));
            }
        }
    }

    #[test]
    fn iris_witnesses_check(g in sparse_graph(24), k in 2usize..6) {
        if let Some(w) = find_iris(&g, k).unwrap() {
            prop_assert!(w.check(&g).is_ok());
        }
        if let Some(w) = find_dilated_iris(&g, k).unwrap() {
            prop_assert!(w.check(&g).is_ok(), "{:?}", w);
        }
    }

    #[test]
    fn reduction_keeps_a_b_coloring(g in graph(9)) {
        let oracle = Oracle::default();
        let r = oracle.b_spectrum(&g).unwrap();
        for c in r.witnesses.values() {
            let reduced = reduce_b_vertices(&g, c);
            let before = validate(&g, c).unwrap();
            let after = validate(&g, &reduced).unwrap();
            prop_assert!(after.is_b_coloring);
            prop_assert_eq!(after.k, before.k);
            prop_assert!(after.b_vertices.len() <= before.b_vertices.len());
        }
    }

    #[test]
    fn moves_only_return_b_colorings(g in sparse_graph(10)) {
        let oracle = Oracle::default();
        let r = oracle.b_spectrum(&g).unwrap();
        for (&k, c) in r.witnesses.iter().filter(|(&k, _)| k > r.chi) {
            for x in g.vertices() {
                if let Ok(Some(out)) = unique_move(&g, c, x, r.chi) {
                    prop_assert!(is_k_b_coloring(&g, &out, k - 1));
                }
                for i in 1..=k {
                    if let Ok(Some(out)) = weak_move(&g, c, x, i, r.chi) {
                        prop_assert!(is_k_b_coloring(&g, &out, k - 1));
                    }
                }
            }
            let step = descend_one(&g, c, r.chi).unwrap();
            if let Some(out) = &step.resulting {
                prop_assert!(is_k_b_coloring(&g, out, k - 1));
                prop_assert!(r.contains(k - 1));
            }
        }
    }

    #[test]
    fn family_specs_round_trip(n in 3usize..30, seed in any::<u64>()) {
        for f in [Family::Cycle(n), Family::Path(n), Family::Crown(n), Family::RandomTree { n, seed }] {
            prop_assert_eq!(Family::parse(&f.to_string(), 0).unwrap(), f);
        }
    }
}

fn is_k_b_coloring(g: &Graph, c: &Coloring, k: usize) -> bool {
    let r = validate(g, c).unwrap();
    r.is_b_coloring && r.k == k
}

#[test]
fn cycle_girths() {
    for n in 3..=20 {
        assert_eq!(girth(&generate(&Family::Cycle(n)).unwrap()), Girth::Finite(n));
    }
    for n in 1..=9 {
        for t in bcontinuity::graph::all_trees(n) {
            assert_eq!(girth(&t), Girth::Acyclic);
        }
    }
}
