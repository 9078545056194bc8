//! Exhaustive search for a b-coloring with exactly `k` colors.
//!
//! Vertices are colored in a fixed order (a maximum-degree vertex first,
//! then always the vertex with most already-ordered neighbors). Colors are
//! opened in increasing order, so the first vertex is always color 1 and no
//! two searches differ only by a permutation of colors. A branch is cut as
//! soon as some color can no longer obtain a b-vertex: a vertex `v` can
//! still become a b-vertex of color `j` only if it has or may take color
//! `j`, and the distinct colors already around it (other than `j`) plus its
//! uncolored neighbors number at least `k - 1`.

use crate::coloring::Color;
use crate::graph::{Graph, Vertex};

/// Bitmask palettes restrict the search to `k < 64`.
pub const MAX_COLORS: usize = 63;

pub struct BSearch<'g> {
    g: &'g Graph,
    k: usize,
    order: Vec<Vertex>,
    colors: Vec<usize>,
    /// nodes visited, for diagnostics
    pub nodes: u64,
}

impl<'g> BSearch<'g> {
    pub fn new(g: &'g Graph, k: usize) -> Self {
        assert!(k <= MAX_COLORS, "b-coloring search supports at most {MAX_COLORS} colors");
        BSearch {
            g,
            k,
            order: search_order(g),
            colors: vec![0; g.n()],
            nodes: 0,
        }
    }

    pub fn run(mut self) -> Option<Vec<Color>> {
        let n = self.g.n();
        if self.k == 0 || n < self.k {
            return None;
        }
        if self.recurse(0, 0) {
            Some(self.colors)
        } else {
            None
        }
    }

    fn recurse(&mut self, depth: usize, opened: usize) -> bool {
        self.nodes += 1;
        let remaining = self.g.n() - depth;
        if opened + remaining < self.k || !self.every_color_feasible(opened) {
            return false;
        }
        if remaining == 0 {
            return true;
        }
        let v = self.order[depth];
        let forbidden = self.neighbor_mask(v);
        let top = (opened + 1).min(self.k);
        for c in 1..=top {
            if forbidden & (1 << c) != 0 {
                continue;
            }
            self.colors[v] = c;
            if self.recurse(depth + 1, opened.max(c)) {
                return true;
            }
        }
        self.colors[v] = 0;
        false
    }

    fn neighbor_mask(&self, v: Vertex) -> u64 {
        self.g
            .neighbors(v)
            .iter()
            .fold(0u64, |m, &w| m | (1 << self.colors[w]))
            & !1
    }

    fn every_color_feasible(&self, opened: usize) -> bool {
        let k = self.k;
        let mut possible = 0u64;
        for v in self.g.vertices() {
            if self.g.degree(v) + 1 < k {
                continue;
            }
            let around = self.neighbor_mask(v);
            let uncolored = self.g.neighbors(v).iter().filter(|&&w| self.colors[w] == 0).count();
            let own = self.colors[v];
            let reach = |j: usize| (around & !(1 << j)).count_ones() as usize + uncolored + 1 >= k;
            if own != 0 {
                if reach(own) {
                    possible |= 1 << own;
                }
                continue;
            }
            for j in 1..=k {
                // unopened colors are interchangeable and unconstrained
                if (j > opened || around & (1 << j) == 0) && reach(j) {
                    possible |= 1 << j;
                }
            }
        }
        let all = ((1u64 << (k + 1)) - 1) & !1;
        possible & all == all
    }
}

fn search_order(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    let mut order = Vec::with_capacity(n);
    let mut placed = vec![false; n];
    let mut links = vec![0usize; n];
    while order.len() < n {
        let v = (0..n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (links[v], g.degree(v), std::cmp::Reverse(v)))
            .expect("unplaced vertex remains");
        placed[v] = true;
        order.push(v);
        for &w in g.neighbors(v) {
            links[w] += 1;
        }
    }
    order
}
