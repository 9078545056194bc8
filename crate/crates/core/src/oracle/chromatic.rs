//! Exact vertex coloring by DSATUR-ordered backtracking.

use crate::coloring::Color;
use crate::graph::{Graph, Vertex};

/// Size of a greedily grown clique, maximized over the starting vertex.
pub fn greedy_clique_bound(g: &Graph) -> usize {
    let mut best = usize::from(g.n() > 0);
    for start in g.vertices() {
        let mut clique = vec![start];
        let mut candidates: Vec<Vertex> = g.neighbors(start).to_vec();
        candidates.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
        for v in candidates {
            if clique.iter().all(|&c| g.has_edge(c, v)) {
                clique.push(v);
            }
        }
        best = best.max(clique.len());
    }
    best
}

/// Extends `partial` to a proper coloring of the whole graph using only
/// colors from `palette` on the uncolored vertices. Precolored vertices are
/// kept as they are (and are assumed proper among themselves).
pub fn complete_partial(g: &Graph, partial: &[Option<Color>], palette: &[Color]) -> Option<Vec<Color>> {
    let mut colors: Vec<Color> = partial.iter().map(|c| c.unwrap_or(0)).collect();
    let uncolored = partial.iter().filter(|c| c.is_none()).count();
    if extend(g, &mut colors, palette, uncolored, false) {
        Some(colors)
    } else {
        None
    }
}

/// Like [`complete_partial`], but solves each connected component of the
/// uncolored part on its own so that one hard component never causes
/// backtracking through the others.
pub fn complete_by_components(
    g: &Graph,
    partial: &[Option<Color>],
    palette: &[Color],
) -> Option<Vec<Color>> {
    let mut colors: Vec<Color> = partial.iter().map(|c| c.unwrap_or(0)).collect();
    let mut seen = vec![false; g.n()];
    for root in g.vertices() {
        if seen[root] || partial[root].is_some() {
            continue;
        }
        let mut component = vec![root];
        seen[root] = true;
        let mut i = 0;
        while i < component.len() {
            for &w in g.neighbors(component[i]) {
                if !seen[w] && partial[w].is_none() {
                    seen[w] = true;
                    component.push(w);
                }
            }
            i += 1;
        }
        // the component plus its precolored boundary, reindexed
        let mut local: Vec<Vertex> = component.clone();
        for &v in &component {
            for &w in g.neighbors(v) {
                if partial[w].is_some() && !local.contains(&w) {
                    local.push(w);
                }
            }
        }
        let index = |v: Vertex| local.iter().position(|&x| x == v);
        let edges: Vec<(Vertex, Vertex)> = local
            .iter()
            .enumerate()
            .flat_map(|(a, &v)| {
                g.neighbors(v)
                    .iter()
                    .filter_map(move |&w| index(w).filter(|&b| a < b).map(|b| (a, b)))
                    .collect::<Vec<_>>()
            })
            .collect();
        let sub = Graph::from_edges(local.len(), edges).expect("induced subgraph is simple");
        let sub_partial: Vec<Option<Color>> = local.iter().map(|&v| partial[v]).collect();
        let solved = complete_partial(&sub, &sub_partial, palette)?;
        for (a, &v) in local.iter().enumerate() {
            colors[v] = solved[a];
        }
    }
    Some(colors)
}

/// DSATUR backtracking. With `symmetric` set (nothing precolored), palette
/// colors are opened in order, so a vertex never tries a second unused one.
fn extend(g: &Graph, colors: &mut [Color], palette: &[Color], remaining: usize, symmetric: bool) -> bool {
    if remaining == 0 {
        return true;
    }
    // most saturated uncolored vertex, then highest degree, then lowest index
    let mut pick = None;
    let mut pick_key = (0usize, 0usize);
    for v in g.vertices().filter(|&v| colors[v] == 0) {
        let mut seen: Vec<Color> = g.neighbors(v).iter().map(|&w| colors[w]).filter(|&c| c != 0).collect();
        seen.sort_unstable();
        seen.dedup();
        let key = (seen.len(), g.degree(v));
        if pick.is_none() || key > pick_key {
            pick = Some(v);
            pick_key = key;
        }
    }
    let v = pick.expect("remaining > 0 implies an uncolored vertex");

    let limit = if symmetric {
        let opened = palette
            .iter()
            .position(|c| !colors.contains(c))
            .unwrap_or(palette.len());
        (opened + 1).min(palette.len())
    } else {
        palette.len()
    };
    for &c in &palette[..limit] {
        if g.neighbors(v).iter().any(|&w| colors[w] == c) {
            continue;
        }
        colors[v] = c;
        if extend(g, colors, palette, remaining - 1, symmetric) {
            return true;
        }
    }
    colors[v] = 0;
    false
}

/// Whether `g` has a proper coloring with at most `k` colors; returns one
/// when it does.
pub fn color_with(g: &Graph, k: usize) -> Option<Vec<Color>> {
    if g.n() == 0 {
        return Some(Vec::new());
    }
    let palette: Vec<Color> = (1..=k).collect();
    let mut colors = vec![0; g.n()];
    if extend(g, &mut colors, &palette, g.n(), true) {
        Some(colors)
    } else {
        None
    }
}

/// Exact chromatic number and an optimal coloring using colors `1..=χ`.
pub fn exact_chromatic(g: &Graph) -> (usize, Vec<Color>) {
    if g.n() == 0 {
        return (0, Vec::new());
    }
    if g.edge_count() == 0 {
        return (1, vec![1; g.n()]);
    }
    if let Some(sides) = g.bipartition() {
        return (2, sides.into_iter().map(|s| usize::from(s) + 1).collect());
    }
    let mut k = greedy_clique_bound(g).max(3);
    loop {
        if let Some(colors) = color_with(g, k) {
            return (k, colors);
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn chi(f: Family) -> usize {
        let g = generate(&f).unwrap();
        let (k, colors) = exact_chromatic(&g);
        assert!(g.edges().all(|(u, v)| colors[u] != colors[v]));
        assert_eq!(colors.iter().copied().max().unwrap_or(0), k);
        k
    }

    #[test]
    fn chromatic_numbers() {
        assert_eq!(chi(Family::Cycle(5)), 3);
        assert_eq!(chi(Family::Cycle(6)), 2);
        assert_eq!(chi(Family::Hypercube(3)), 2);
        assert_eq!(chi(Family::Petersen), 3);
        assert_eq!(chi(Family::Complete(6)), 6);
        assert_eq!(chi(Family::Path(1)), 1);
        assert_eq!(exact_chromatic(&Graph::empty(0)).0, 0);
    }

    #[test]
    fn grotzsch_needs_four_colors() {
        // Mycielskian of C5: triangle-free with chromatic number 4
        let mut edges: Vec<(usize, usize)> = (0..5).map(|i| (i, (i + 1) % 5)).collect();
        for i in 0..5 {
            edges.push((5 + i, (i + 1) % 5));
            edges.push((5 + i, (i + 4) % 5));
            edges.push((5 + i, 10));
        }
        let g = Graph::from_edges(11, edges).unwrap();
        assert_eq!(greedy_clique_bound(&g), 2);
        assert_eq!(exact_chromatic(&g).0, 4);
    }

    #[test]
    fn partial_completion_respects_precolored() {
        let p3 = generate(&Family::Path(3)).unwrap();
        let done = complete_partial(&p3, &[Some(1), None, Some(2)], &[1, 2]);
        assert_eq!(done, None);
        let done = complete_partial(&p3, &[Some(1), None, Some(2)], &[1, 2, 3]).unwrap();
        assert_eq!(done, vec![1, 3, 2]);
    }

    #[test]
    fn componentwise_completion_matches() {
        // two disjoint paths hanging off precolored ends
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        let partial = [Some(1), None, None, Some(1), None, None];
        let done = complete_by_components(&g, &partial, &[2, 3]).unwrap();
        assert_eq!(done[0], 1);
        assert_eq!(done[3], 1);
        assert!(g.edges().all(|(u, v)| done[u] != done[v]));
        assert!(done.iter().enumerate().all(|(v, &c)| partial[v].is_some() || c >= 2));
        // a triangle cannot take two colors
        let k3 = generate(&Family::Complete(3)).unwrap();
        assert_eq!(complete_by_components(&k3, &[None, None, None], &[2, 3]), None);
    }
}
