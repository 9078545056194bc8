//! Colorings and the local structure a b-coloring argument works with:
//! b-vertices, realized colors, cleaning an unrealized color, the
//! unique-color witnesses U(x), the split of a color class around a
//! b-vertex into B_i(u) and R_i(u), safe colors, and weak colors.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::{Graph, GraphId, Vertex};

/// Colors are `1..=k`.
pub type Color = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("coloring was built for a different graph")]
    GraphMismatch,
    #[error("coloring has {len} entries but the graph has {n} vertices")]
    LengthMismatch { n: usize, len: usize },
    #[error("vertex {vertex} has color 0; colors start at 1")]
    ZeroColor { vertex: Vertex },
    #[error("color class {0} is empty")]
    EmptyClass(Color),
    #[error("cannot parse coloring at entry {index}: {message}")]
    Parse { index: usize, message: String },
    #[error("coloring is not proper: edge {0}-{1} is monochromatic")]
    NotProper(Vertex, Vertex),
    #[error("color {color} is outside 1..={k}")]
    ColorOutOfRange { color: Color, k: usize },
    #[error("color {0} is realized by a b-vertex")]
    ColorRealized(Color),
    #[error("vertex {0} is a b-vertex")]
    IsBVertex(Vertex),
    #[error("vertex {0} is not a b-vertex")]
    NotBVertex(Vertex),
    #[error("color {color} is the color of vertex {vertex}")]
    OwnColor { vertex: Vertex, color: Color },
    #[error("impossible state: {0}")]
    ImpossibleState(String),
}

/// A total assignment of colors `1..=k` to the vertices of one graph, with
/// every color class nonempty.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    colors: Vec<Color>,
    k: usize,
    graph: GraphId,
}

impl Coloring {
    pub fn new(g: &Graph, colors: Vec<Color>) -> Result<Self, ColoringError> {
        if colors.len() != g.n() {
            return Err(ColoringError::LengthMismatch {
                n: g.n(),
                len: colors.len(),
            });
        }
        if let Some(vertex) = colors.iter().position(|&c| c == 0) {
            return Err(ColoringError::ZeroColor { vertex });
        }
        let k = colors.iter().copied().max().unwrap_or(0);
        let mut used = vec![false; k + 1];
        for &c in &colors {
            used[c] = true;
        }
        if let Some(missing) = (1..=k).find(|&c| !used[c]) {
            return Err(ColoringError::EmptyClass(missing));
        }
        Ok(Coloring {
            colors,
            k,
            graph: g.id(),
        })
    }

    /// Parses the comma-separated form `1,2,1,3`.
    pub fn parse(g: &Graph, text: &str) -> Result<Self, ColoringError> {
        let text = text.trim();
        let colors = if text.is_empty() {
            Vec::new()
        } else {
            text.split(',')
                .enumerate()
                .map(|(index, field)| {
                    Color::from_str(field.trim()).map_err(|_| ColoringError::Parse {
                        index,
                        message: format!("{:?} is not a color", field.trim()),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?
        };
        Self::new(g, colors)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn color(&self, v: Vertex) -> Color {
        self.colors[v]
    }

    pub fn as_slice(&self) -> &[Color] {
        &self.colors
    }

    pub fn is_bound_to(&self, g: &Graph) -> bool {
        self.graph == g.id()
    }

    /// Vertices of color class `i`, ascending.
    pub fn class(&self, i: Color) -> Vec<Vertex> {
        (0..self.colors.len()).filter(|&v| self.colors[v] == i).collect()
    }

    /// ψ(X).
    pub fn colors_of(&self, vertices: impl IntoIterator<Item = Vertex>) -> BTreeSet<Color> {
        vertices.into_iter().map(|v| self.colors[v]).collect()
    }

    /// Copy with the given vertices recolored.
    pub fn recolored(
        &self,
        g: &Graph,
        changes: impl IntoIterator<Item = (Vertex, Color)>,
    ) -> Result<Self, ColoringError> {
        self.check_graph(g)?;
        let mut colors = self.colors.clone();
        for (v, c) in changes {
            colors[v] = c;
        }
        Self::new(g, colors)
    }

    fn check_graph(&self, g: &Graph) -> Result<(), ColoringError> {
        if self.colors.len() != g.n() {
            return Err(ColoringError::LengthMismatch {
                n: g.n(),
                len: self.colors.len(),
            });
        }
        if !self.is_bound_to(g) {
            return Err(ColoringError::GraphMismatch);
        }
        Ok(())
    }
}

impl fmt::Display for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.colors.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Coloring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coloring(k={}; {self})", self.k)
    }
}

impl Serialize for Coloring {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Structural digest of a coloring.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BReport {
    pub k: usize,
    pub is_proper: bool,
    /// 𝓑(ψ), ascending.
    pub b_vertices: Vec<Vertex>,
    /// B_i for every color `1..=k` (possibly empty).
    pub per_color_b: BTreeMap<Color, Vec<Vertex>>,
    pub realized: BTreeSet<Color>,
    pub is_b_coloring: bool,
    #[serde(skip)]
    is_b: Vec<bool>,
}

impl BReport {
    pub fn is_b_vertex(&self, v: Vertex) -> bool {
        self.is_b[v]
    }

    pub fn b_of_color(&self, i: Color) -> &[Vertex] {
        self.per_color_b.get(&i).map_or(&[], Vec::as_slice)
    }
}

/// Builds the full [`BReport`]. A vertex is a b-vertex when no neighbor
/// shares its color and its closed neighborhood sees every color `1..=k`.
pub fn validate(g: &Graph, c: &Coloring) -> Result<BReport, ColoringError> {
    c.check_graph(g)?;
    let k = c.k();
    let mut is_proper = true;
    let mut is_b = vec![false; g.n()];
    let mut seen = vec![usize::MAX; k + 1];
    for u in g.vertices() {
        let own = c.color(u);
        let mut clash = false;
        let mut distinct = 1;
        seen[own] = u;
        for &v in g.neighbors(u) {
            let cv = c.color(v);
            if cv == own {
                clash = true;
            } else if seen[cv] != u {
                seen[cv] = u;
                distinct += 1;
            }
        }
        if clash {
            is_proper = false;
        }
        is_b[u] = !clash && distinct == k;
    }

    let mut per_color_b: BTreeMap<Color, Vec<Vertex>> = (1..=k).map(|i| (i, Vec::new())).collect();
    for v in g.vertices().filter(|&v| is_b[v]) {
        per_color_b.get_mut(&c.color(v)).expect("colors are 1..=k").push(v);
    }
    let b_vertices: Vec<Vertex> = g.vertices().filter(|&v| is_b[v]).collect();
    let realized: BTreeSet<Color> = per_color_b
        .iter()
        .filter(|(_, b)| !b.is_empty())
        .map(|(&i, _)| i)
        .collect();
    let is_b_coloring = is_proper && realized.len() == k;
    Ok(BReport {
        k,
        is_proper,
        b_vertices,
        per_color_b,
        realized,
        is_b_coloring,
        is_b,
    })
}

/// Which part of the weak-color definition failed first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum WeakBlocker {
    /// `x ∈ R_i(u)` has no safe color.
    Unmutable { x: Vertex },
    /// `w ∈ U(x) ∖ {u}` has no b-vertex of its color outside N(R_i(u)).
    Unsupported { x: Vertex, w: Vertex },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MutabilityReport {
    pub vertex: Vertex,
    pub safe_colors: Vec<Color>,
    pub is_mutable: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WeakReport {
    pub weak: bool,
    /// For every checked `w ∈ U(x) ∖ {u}`, a b-vertex of color ψ(w) outside
    /// N(R_i(u)).
    pub witnesses: BTreeMap<Vertex, Vertex>,
    pub blocker: Option<WeakBlocker>,
}

/// A coloring together with its [`BReport`], for repeated local queries.
#[derive(Debug, Clone)]
pub struct Analysis<'a> {
    graph: &'a Graph,
    coloring: &'a Coloring,
    report: BReport,
}

impl<'a> Analysis<'a> {
    pub fn new(graph: &'a Graph, coloring: &'a Coloring) -> Result<Self, ColoringError> {
        let report = validate(graph, coloring)?;
        Ok(Analysis {
            graph,
            coloring,
            report,
        })
    }

    pub fn report(&self) -> &BReport {
        &self.report
    }

    pub fn into_report(self) -> BReport {
        self.report
    }

    pub fn coloring(&self) -> &Coloring {
        self.coloring
    }

    fn check_color(&self, i: Color) -> Result<(), ColoringError> {
        if i == 0 || i > self.coloring.k() {
            return Err(ColoringError::ColorOutOfRange {
                color: i,
                k: self.coloring.k(),
            });
        }
        Ok(())
    }

    fn require_proper(&self) -> Result<(), ColoringError> {
        if self.report.is_proper {
            return Ok(());
        }
        let (u, v) = self
            .graph
            .edges()
            .find(|&(u, v)| self.coloring.color(u) == self.coloring.color(v))
            .expect("improper coloring has a monochromatic edge");
        Err(ColoringError::NotProper(u, v))
    }

    /// ψ(N[u] ∖ {skip}).
    fn closed_palette(&self, u: Vertex, skip: Option<Vertex>) -> BTreeSet<Color> {
        std::iter::once(u)
            .chain(self.graph.neighbors(u).iter().copied())
            .filter(|&v| Some(v) != skip)
            .map(|v| self.coloring.color(v))
            .collect()
    }

    /// Removes color `i` when no b-vertex carries it: each vertex of class
    /// `i` moves to the lowest color missing from its closed neighborhood,
    /// then colors above `i` shift down by one.
    pub fn clean_color(&self, i: Color) -> Result<Coloring, ColoringError> {
        self.check_color(i)?;
        self.require_proper()?;
        if self.report.realized.contains(&i) {
            return Err(ColoringError::ColorRealized(i));
        }
        let k = self.coloring.k();
        let mut colors = self.coloring.as_slice().to_vec();
        // class i is stable, so each choice only depends on the original colors
        for u in self.coloring.class(i) {
            let palette = self.closed_palette(u, None);
            let free = (1..=k).find(|c| !palette.contains(c)).ok_or_else(|| {
                ColoringError::ImpossibleState(format!(
                    "vertex {u} of unrealized color {i} sees all {k} colors"
                ))
            })?;
            colors[u] = free;
        }
        for c in &mut colors {
            if *c > i {
                *c -= 1;
            }
        }
        Coloring::new(self.graph, colors)
    }

    /// U(x): b-vertices whose only neighbor of color ψ(x) is `x`.
    pub fn unique_color_witnesses(&self, x: Vertex) -> Result<Vec<Vertex>, ColoringError> {
        if self.report.is_b_vertex(x) {
            return Err(ColoringError::IsBVertex(x));
        }
        let cx = self.coloring.color(x);
        Ok(self
            .graph
            .neighbors(x)
            .iter()
            .copied()
            .filter(|&w| self.report.is_b_vertex(w))
            .filter(|&w| {
                self.graph
                    .neighbors(w)
                    .iter()
                    .all(|&y| y == x || self.coloring.color(y) != cx)
            })
            .collect())
    }

    /// (B_i(u), R_i(u)): the color-`i` neighbors of the b-vertex `u` that
    /// are, respectively are not, b-vertices.
    pub fn neighbors_by_color(
        &self,
        u: Vertex,
        i: Color,
    ) -> Result<(Vec<Vertex>, Vec<Vertex>), ColoringError> {
        self.check_color(i)?;
        if !self.report.is_b_vertex(u) {
            return Err(ColoringError::NotBVertex(u));
        }
        if self.coloring.color(u) == i {
            return Err(ColoringError::OwnColor { vertex: u, color: i });
        }
        Ok(self
            .graph
            .neighbors(u)
            .iter()
            .copied()
            .filter(|&v| self.coloring.color(v) == i)
            .partition(|&v| self.report.is_b_vertex(v)))
    }

    /// Safe colors of the non-b-vertex `x`: colors `i` absent from ψ(N[x])
    /// such that no non-b neighbor `w` of `x` misses exactly `{i}` from
    /// ψ(N[w] ∖ {x}).
    pub fn mutability(&self, x: Vertex) -> Result<MutabilityReport, ColoringError> {
        if self.report.is_b_vertex(x) {
            return Err(ColoringError::IsBVertex(x));
        }
        let k = self.coloring.k();
        let around_x = self.closed_palette(x, None);
        // a non-b neighbor missing exactly one color forbids that color
        let forbidden: BTreeSet<Color> = self
            .graph
            .neighbors(x)
            .iter()
            .copied()
            .filter(|&w| !self.report.is_b_vertex(w))
            .filter_map(|w| {
                let seen = self.closed_palette(w, Some(x));
                let mut missing = (1..=k).filter(|c| !seen.contains(c));
                match (missing.next(), missing.next()) {
                    (Some(only), None) => Some(only),
                    _ => None,
                }
            })
            .collect();
        let safe_colors: Vec<Color> = (1..=k)
            .filter(|c| !around_x.contains(c) && !forbidden.contains(c))
            .collect();
        Ok(MutabilityReport {
            vertex: x,
            is_mutable: !safe_colors.is_empty(),
            safe_colors,
        })
    }

    /// Whether color `i` is weak in N(u).
    pub fn is_weak(&self, u: Vertex, i: Color) -> Result<WeakReport, ColoringError> {
        let (_, rest) = self.neighbors_by_color(u, i)?;
        let near_rest: BTreeSet<Vertex> = rest
            .iter()
            .flat_map(|&x| self.graph.neighbors(x).iter().copied())
            .collect();
        let mut witnesses = BTreeMap::new();
        for &x in &rest {
            if !self.mutability(x)?.is_mutable {
                return Ok(WeakReport {
                    weak: false,
                    witnesses,
                    blocker: Some(WeakBlocker::Unmutable { x }),
                });
            }
            for w in self.unique_color_witnesses(x)? {
                if w == u || witnesses.contains_key(&w) {
                    continue;
                }
                let alternative = self
                    .report
                    .b_of_color(self.coloring.color(w))
                    .iter()
                    .copied()
                    .find(|v| !near_rest.contains(v));
                match alternative {
                    Some(alt) => {
                        witnesses.insert(w, alt);
                    }
                    None => {
                        return Ok(WeakReport {
                            weak: false,
                            witnesses,
                            blocker: Some(WeakBlocker::Unsupported { x, w }),
                        })
                    }
                }
            }
        }
        Ok(WeakReport {
            weak: true,
            witnesses,
            blocker: None,
        })
    }
}

pub fn clean_color(g: &Graph, c: &Coloring, i: Color) -> Result<Coloring, ColoringError> {
    Analysis::new(g, c)?.clean_color(i)
}

pub fn unique_color_witnesses(g: &Graph, c: &Coloring, x: Vertex) -> Result<Vec<Vertex>, ColoringError> {
    Analysis::new(g, c)?.unique_color_witnesses(x)
}

pub fn neighbors_by_color(
    g: &Graph,
    c: &Coloring,
    u: Vertex,
    i: Color,
) -> Result<(Vec<Vertex>, Vec<Vertex>), ColoringError> {
    Analysis::new(g, c)?.neighbors_by_color(u, i)
}

pub fn mutability(g: &Graph, c: &Coloring, x: Vertex) -> Result<MutabilityReport, ColoringError> {
    Analysis::new(g, c)?.mutability(x)
}

pub fn is_weak(g: &Graph, c: &Coloring, u: Vertex, i: Color) -> Result<WeakReport, ColoringError> {
    Analysis::new(g, c)?.is_weak(u, i)
}
