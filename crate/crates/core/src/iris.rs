//! Irises and the b-colorings they force.
//!
//! A vertex `u` is a *k-iris* when it has `k - 1` neighbors of degree at
//! least `k - 1`, and a *dilated k-iris* when `k` such dense vertices lie
//! within distance two of it, the distance-two ones having pairwise disjoint
//! neighborhoods. On graphs of large girth either structure can be grown
//! into a b-coloring with exactly `k` colors: the dense vertices become the
//! b-vertices, a stable barrier of color 1 seals them off, and the rest of
//! the graph is colored with `{2, ..., k}`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{validate, Color, Coloring, ColoringError};
use crate::graph::{girth, has_cycle_of_length, layers, Girth, Graph, Vertex};
use crate::oracle::{complete_by_components, exact_chromatic};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IrisError {
    #[error("iris size k must be at least 2, got {0}")]
    InvalidK(usize),
    #[error("expected a {expected:?} witness")]
    WrongKind { expected: IrisKind },
    #[error("witness does not hold: {0}")]
    InvalidWitness(String),
    #[error("construction needs girth >= {required}, graph has girth {found}")]
    GirthTooSmall { required: usize, found: Girth },
    #[error("construction needs a graph without 7-cycles")]
    HasSevenCycle,
    #[error("k = {k} is below the chromatic number {chi}")]
    BelowChromatic { k: usize, chi: usize },
    #[error("impossible state during {stage}: {detail}")]
    ImpossibleState { stage: &'static str, detail: String },
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IrisKind {
    Plain,
    Dilated,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IrisWitness {
    pub center: Vertex,
    pub k: usize,
    pub kind: IrisKind,
    /// The dense set S, ascending.
    #[serde(rename = "s")]
    pub s_set: Vec<Vertex>,
    /// For dilated witnesses: each member of S at distance two from the
    /// center, mapped to a common neighbor with the center.
    pub connectors: BTreeMap<Vertex, Vertex>,
}

impl IrisWitness {
    /// Re-derives every defining property from the graph.
    ///
    /// Dilated witnesses must also have distinct connectors, at most one of
    /// which may itself belong to S. That member of S then takes the barrier
    /// color in the construction, and the center keeps degree at least
    /// `k - 1`.
    pub fn check(&self, g: &Graph) -> Result<(), String> {
        let (u, k) = (self.center, self.k);
        if u >= g.n() {
            return Err(format!("center {u} is not a vertex"));
        }
        if k < 2 {
            return Err(format!("k = {k} is below 2"));
        }
        let members: BTreeSet<Vertex> = self.s_set.iter().copied().collect();
        if members.len() != self.s_set.len() {
            return Err("S has repeated vertices".into());
        }
        if let Some(&v) = self.s_set.iter().find(|&&v| v >= g.n() || g.degree(v) + 1 < k) {
            return Err(format!("{v} is not {k}-dense"));
        }
        if g.degree(u) + 1 < k {
            return Err(format!("center {u} is not {k}-dense"));
        }
        match self.kind {
            IrisKind::Plain => {
                if self.s_set.len() != k - 1 {
                    return Err(format!("|S| = {} but a {k}-iris needs {}", self.s_set.len(), k - 1));
                }
                if let Some(&v) = self.s_set.iter().find(|&&v| !g.has_edge(u, v)) {
                    return Err(format!("{v} is not adjacent to the center"));
                }
                if !self.connectors.is_empty() {
                    return Err("plain irises have no connectors".into());
                }
            }
            IrisKind::Dilated => {
                if self.s_set.len() != k {
                    return Err(format!("|S| = {} but a dilated {k}-iris needs {k}", self.s_set.len()));
                }
                let far: Vec<Vertex> = self
                    .s_set
                    .iter()
                    .copied()
                    .filter(|&v| v != u && !g.has_edge(u, v))
                    .collect();
                for &v in &far {
                    let Some(&w) = self.connectors.get(&v) else {
                        return Err(format!("{v} has no connector"));
                    };
                    if !(g.has_edge(u, w) && g.has_edge(w, v)) {
                        return Err(format!("{w} does not join {v} to the center"));
                    }
                }
                if self.s_set.contains(&u) {
                    return Err("S contains the center".into());
                }
                if self.connectors.keys().any(|v| !far.contains(v)) {
                    return Err("connector assigned to a vertex outside S ∩ N_2".into());
                }
                for (i, &a) in far.iter().enumerate() {
                    for &b in &far[i + 1..] {
                        if let Some(x) = g.neighbors(a).iter().find(|x| g.has_edge(**x, b)) {
                            return Err(format!("{a} and {b} share the neighbor {x}"));
                        }
                    }
                }
                let used: BTreeSet<Vertex> = self.connectors.values().copied().collect();
                if used.len() != self.connectors.len() {
                    return Err("connectors are not distinct".into());
                }
                if used.intersection(&members).count() > 1 {
                    return Err("more than one connector lies in S".into());
                }
            }
        }
        Ok(())
    }

    /// S ∩ N(center) and S ∩ N_2(center).
    fn split(&self, g: &Graph) -> (Vec<Vertex>, Vec<Vertex>) {
        self.s_set.iter().partition(|&&v| g.has_edge(self.center, v))
    }
}

fn check_k(k: usize) -> Result<(), IrisError> {
    if k < 2 {
        return Err(IrisError::InvalidK(k));
    }
    Ok(())
}

/// The plain k-iris with the smallest center, taking the k - 1 smallest
/// dense neighbors.
pub fn find_iris(g: &Graph, k: usize) -> Result<Option<IrisWitness>, IrisError> {
    check_k(k)?;
    Ok(g.vertices().find_map(|u| plain_at(g, u, k)))
}

pub(crate) fn plain_at(g: &Graph, u: Vertex, k: usize) -> Option<IrisWitness> {
    let s_set: Vec<Vertex> = g
        .neighbors(u)
        .iter()
        .copied()
        .filter(|&v| g.degree(v) + 1 >= k)
        .take(k - 1)
        .collect();
    (s_set.len() == k - 1).then(|| IrisWitness {
        center: u,
        k,
        kind: IrisKind::Plain,
        s_set,
        connectors: BTreeMap::new(),
    })
}

/// The dilated k-iris with the smallest center and, for that center, the
/// lexicographically smallest S. The search is exhaustive over subsets of
/// the dense vertices within distance two.
pub fn find_dilated_iris(g: &Graph, k: usize) -> Result<Option<IrisWitness>, IrisError> {
    check_k(k)?;
    Ok(g.vertices().find_map(|u| dilated_at(g, u, k)))
}

pub(crate) fn dilated_at(g: &Graph, u: Vertex, k: usize) -> Option<IrisWitness> {
    let lay = layers(g, u);
    let near: Vec<Vertex> = lay.layer(1).to_vec();
    let candidates: Vec<Vertex> = lay
        .within(2)
        .into_iter()
        .filter(|&v| g.degree(v) + 1 >= k)
        .collect();
    if candidates.len() < k {
        return None;
    }
    let mut chosen = Vec::with_capacity(k);
    if !dilated_search(g, u, k, &near, &candidates, 0, &mut chosen) {
        return None;
    }
    let connectors = assign_connectors(g, u, &near, &chosen)?;
    Some(IrisWitness {
        center: u,
        k,
        kind: IrisKind::Dilated,
        s_set: chosen,
        connectors,
    })
}

fn dilated_search(
    g: &Graph,
    u: Vertex,
    k: usize,
    near: &[Vertex],
    candidates: &[Vertex],
    from: usize,
    chosen: &mut Vec<Vertex>,
) -> bool {
    if chosen.len() == k {
        return true;
    }
    if chosen.len() + (candidates.len() - from) < k {
        return false;
    }
    for i in from..candidates.len() {
        if chosen.len() + (candidates.len() - i) < k {
            break;
        }
        chosen.push(candidates[i]);
        if assign_connectors(g, u, near, chosen).is_some()
            && dilated_search(g, u, k, near, candidates, i + 1, chosen)
        {
            return true;
        }
        chosen.pop();
    }
    false
}

/// Connectors for the distance-two members of `s`: the smallest common
/// neighbor outside S if there is one, else the smallest inside. `None`
/// when two distance-two members share a neighbor or more than one
/// connector is forced into S.
fn assign_connectors(
    g: &Graph,
    u: Vertex,
    near: &[Vertex],
    s: &[Vertex],
) -> Option<BTreeMap<Vertex, Vertex>> {
    let in_n1 = |v: &Vertex| near.binary_search(v).is_ok();
    let far: Vec<Vertex> = s.iter().copied().filter(|v| !in_n1(v)).collect();
    for (i, &a) in far.iter().enumerate() {
        for &b in &far[i + 1..] {
            if g.neighbors(a).iter().any(|&x| g.has_edge(x, b)) {
                return None;
            }
        }
    }
    let mut forced = 0;
    let mut connectors = BTreeMap::new();
    for &v in &far {
        let options: Vec<Vertex> = g.neighbors(v).iter().copied().filter(|&w| g.has_edge(u, w)).collect();
        let w = match options.iter().find(|w| !s.contains(w)) {
            Some(&w) => w,
            None => {
                forced += 1;
                *options.first()?
            }
        };
        connectors.insert(v, w);
    }
    (forced <= 1).then_some(connectors)
}

/// Partial coloring with the bookkeeping both constructions share.
#[derive(Clone)]
struct Builder<'g> {
    g: &'g Graph,
    k: usize,
    colors: Vec<Option<Color>>,
}

fn impossible(stage: &'static str, detail: String) -> IrisError {
    IrisError::ImpossibleState { stage, detail }
}

impl<'g> Builder<'g> {
    fn new(g: &'g Graph, k: usize) -> Self {
        Builder {
            g,
            k,
            colors: vec![None; g.n()],
        }
    }

    fn set(&mut self, v: Vertex, c: Color, stage: &'static str) -> Result<(), IrisError> {
        match self.colors[v] {
            Some(old) if old != c => {
                return Err(impossible(stage, format!("{v} already has color {old}, wanted {c}")))
            }
            _ => {}
        }
        if let Some(&w) = self.g.neighbors(v).iter().find(|&&w| self.colors[w] == Some(c)) {
            return Err(impossible(stage, format!("{v} and its neighbor {w} would share color {c}")));
        }
        self.colors[v] = Some(c);
        Ok(())
    }

    /// The colors missing around `v` and its uncolored neighbors.
    fn gaps(&self, v: Vertex) -> Result<(Vec<Color>, Vec<Vertex>), IrisError> {
        let own = self.colors[v].expect("S members are colored first");
        let present: BTreeSet<Color> = self
            .g
            .neighbors(v)
            .iter()
            .filter_map(|&w| self.colors[w])
            .chain(std::iter::once(own))
            .collect();
        let missing: Vec<Color> = (1..=self.k).filter(|c| !present.contains(c)).collect();
        let free: Vec<Vertex> = self
            .g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&w| self.colors[w].is_none())
            .collect();
        if free.len() < missing.len() {
            return Err(impossible(
                "neighborhood",
                format!("{v} misses colors {missing:?} but has only {} uncolored neighbors", free.len()),
            ));
        }
        Ok((missing, free))
    }

    /// Colors the uncolored neighbors of the non-1 core with 1, after
    /// checking that they form a stable set together with the color-1
    /// vertices already placed and that they cut the core off.
    fn seal(&mut self) -> Result<Vec<Vertex>, IrisError> {
        let g = self.g;
        let core: Vec<Vertex> = g
            .vertices()
            .filter(|&v| self.colors[v].is_some_and(|c| c != 1))
            .collect();
        let separator: Vec<Vertex> = g
            .vertices()
            .filter(|&v| self.colors[v].is_none())
            .filter(|&v| g.neighbors(v).iter().any(|w| core.contains(w)))
            .collect();
        let mut barrier: Vec<Vertex> = g
            .vertices()
            .filter(|&v| self.colors[v] == Some(1))
            .chain(separator.iter().copied())
            .collect();
        barrier.sort_unstable();
        if !g.is_stable(&barrier) {
            return Err(impossible(
                "separator",
                format!("barrier {barrier:?} is not a stable set"),
            ));
        }
        let outside: BTreeSet<Vertex> = g
            .vertices()
            .filter(|&v| self.colors[v].is_none() && !separator.contains(&v))
            .collect();
        if let Some(&v) = core
            .iter()
            .find(|&&v| g.neighbors(v).iter().any(|w| outside.contains(w)))
        {
            return Err(impossible(
                "separator",
                format!("core vertex {v} reaches past the barrier"),
            ));
        }
        for &v in &separator {
            self.set(v, 1, "separator")?;
        }
        Ok(separator)
    }

    /// Colors everything left with `{2, ..., k}` and checks the result.
    fn finish(self) -> Result<Coloring, IrisError> {
        self.complete_with(2)
    }

    /// Colors everything left with `{1, ..., k}` by exact search.
    fn extend_exactly(self) -> Result<Coloring, IrisError> {
        self.complete_with(1)
    }

    fn complete_with(self, lowest: Color) -> Result<Coloring, IrisError> {
        let palette: Vec<Color> = (lowest..=self.k).collect();
        let colors = complete_by_components(self.g, &self.colors, &palette).ok_or_else(|| {
            impossible(
                "residual",
                format!("remaining vertices admit no coloring with colors {lowest}..={}", self.k),
            )
        })?;
        let coloring = Coloring::new(self.g, colors)?;
        let report = validate(self.g, &coloring)?;
        if !report.is_b_coloring || report.k != self.k {
            return Err(impossible(
                "validation",
                format!("result {coloring} is not a b-coloring with {} colors", self.k),
            ));
        }
        Ok(coloring)
    }
}

/// Leaves tried by [`complete_and_seal`] before giving up.
const COMPLETION_BUDGET: usize = 1 << 16;

/// Makes every vertex of `order` a b-vertex by coloring some of its
/// uncolored neighbors with the missing colors, then seals and finishes.
///
/// Which neighbors receive colors matters: on girth 6 an uncolored neighbor
/// of one member of S can be adjacent to a barrier vertex behind another,
/// breaking stability. The choices are searched in lexicographic order and
/// the first one that seals is kept. With `extend`, a leaf that cannot be
/// sealed is instead completed by exact search over all k colors.
fn complete_and_seal(
    b: &Builder<'_>,
    order: &[Vertex],
    extend: bool,
    budget: &mut usize,
) -> Result<Coloring, IrisError> {
    let Some((&v, rest)) = order.split_first() else {
        *budget = budget.saturating_sub(1);
        let mut sealed = b.clone();
        return match sealed.seal() {
            Ok(_) => sealed.finish(),
            // every member of S already sees all k colors, so any proper
            // extension with 1..=k is a b-coloring
            Err(unsealed) if extend => b.clone().extend_exactly().map_err(|_| unsealed),
            Err(unsealed) => Err(unsealed),
        };
    };
    let (missing, free) = b.gaps(v)?;
    let mut first_error = None;
    for chosen in combinations(free.len(), missing.len()) {
        if *budget == 0 {
            break;
        }
        let mut next = b.clone();
        let attempt = chosen
            .iter()
            .zip(&missing)
            .try_for_each(|(&i, &c)| next.set(free[i], c, "neighborhood"))
            .and_then(|()| complete_and_seal(&next, rest, extend, budget));
        match attempt {
            Ok(c) => return Ok(c),
            Err(e) => {
                first_error.get_or_insert(e);
            }
        }
    }
    Err(first_error.unwrap_or_else(|| impossible("neighborhood", "completion search budget exhausted".into())))
}

/// Tries every completion for one that seals, then falls back to exact
/// extension.
fn seal_or_extend(b: &Builder<'_>, order: &[Vertex]) -> Result<Coloring, IrisError> {
    let mut budget = COMPLETION_BUDGET;
    complete_and_seal(b, order, false, &mut budget).or_else(|sealing| {
        let mut budget = COMPLETION_BUDGET;
        complete_and_seal(b, order, true, &mut budget).map_err(|_| sealing)
    })
}

/// All `r`-subsets of `0..n` as ascending index lists, in lexicographic order.
fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn extend(n: usize, r: usize, from: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == r {
            out.push(current.clone());
            return;
        }
        for i in from..=n - (r - current.len()) {
            current.push(i);
            extend(n, r, i + 1, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    if r <= n {
        extend(n, r, 0, &mut Vec::with_capacity(r), &mut out);
    }
    out
}

/// u ← 1, S ← 2..k, complete every N(v), seal with color 1, finish.
pub(crate) fn build_plain(g: &Graph, w: &IrisWitness) -> Result<Coloring, IrisError> {
    let mut b = Builder::new(g, w.k);
    b.set(w.center, 1, "core")?;
    for (i, &v) in w.s_set.iter().enumerate() {
        b.set(v, i + 2, "core")?;
    }
    seal_or_extend(&b, &w.s_set)
}

/// S ∩ N(u) ← 1..p, u ← p + 1, S ∩ N_2(u) ← p + 1..k, connectors ← 1;
/// complete every N(v), seal with color 1, finish. When no member of S is
/// adjacent to the center, u takes 2 and the connector of the color-1
/// member takes k.
pub(crate) fn build_dilated(g: &Graph, w: &IrisWitness) -> Result<Coloring, IrisError> {
    let k = w.k;
    let (mut near, mut far) = w.split(g);
    let shared = near.iter().copied().find(|v| w.connectors.values().any(|c| c == v));
    if let Some(s) = shared {
        // the S member doubling as a connector takes color 1, and the far
        // member it serves goes last so that it differs from the center
        near.retain(|&v| v != s);
        near.insert(0, s);
        let served = *w
            .connectors
            .iter()
            .find(|(_, &c)| c == s)
            .map(|(v, _)| v)
            .expect("shared connector serves a far member");
        far.retain(|&v| v != served);
        far.push(served);
    }
    let p = near.len();
    let order: Vec<Vertex> = near.iter().chain(&far).copied().collect();

    let mut b = Builder::new(g, k);
    for (i, &v) in order.iter().enumerate() {
        b.set(v, i + 1, "core")?;
    }
    if p == 0 {
        b.set(w.center, 2, "core")?;
        let first = order[0];
        b.set(w.connectors[&first], k, "core")?;
        for &v in &far[1..] {
            b.set(w.connectors[&v], 1, "core")?;
        }
    } else {
        b.set(w.center, p + 1, "core")?;
        for &v in &far {
            b.set(w.connectors[&v], 1, "core")?;
        }
    }
    seal_or_extend(&b, &order)
}

fn require_girth(g: &Graph, required: usize) -> Result<Girth, IrisError> {
    let found = girth(g);
    if !found.at_least(required) {
        return Err(IrisError::GirthTooSmall { required, found });
    }
    Ok(found)
}

/// `Some(coloring)` when k equals χ (any optimal coloring is a
/// b-coloring), an error when k is below it.
fn trivial_case(g: &Graph, k: usize) -> Result<Option<Coloring>, IrisError> {
    let (chi, optimal) = exact_chromatic(g);
    match k.cmp(&chi) {
        std::cmp::Ordering::Less => Err(IrisError::BelowChromatic { k, chi }),
        std::cmp::Ordering::Equal => Ok(Some(Coloring::new(g, optimal)?)),
        std::cmp::Ordering::Greater => Ok(None),
    }
}

/// A b-coloring with exactly `w.k` colors grown from a plain iris. Needs
/// girth at least 6, no 7-cycle, and `k >= χ`.
pub fn color_from_iris(g: &Graph, w: &IrisWitness) -> Result<Coloring, IrisError> {
    if w.kind != IrisKind::Plain {
        return Err(IrisError::WrongKind {
            expected: IrisKind::Plain,
        });
    }
    w.check(g).map_err(IrisError::InvalidWitness)?;
    let found = require_girth(g, 6)?;
    if found.finite().is_some_and(|len| len <= 7) && has_cycle_of_length(g, 7) {
        return Err(IrisError::HasSevenCycle);
    }
    if let Some(c) = trivial_case(g, w.k)? {
        return Ok(c);
    }
    build_plain(g, w)
}

/// A b-coloring with exactly `w.k` colors grown from a dilated iris. Needs
/// girth at least 10 and `k >= χ`.
pub fn color_from_dilated_iris(g: &Graph, w: &IrisWitness) -> Result<Coloring, IrisError> {
    if w.kind != IrisKind::Dilated {
        return Err(IrisError::WrongKind {
            expected: IrisKind::Dilated,
        });
    }
    w.check(g).map_err(IrisError::InvalidWitness)?;
    require_girth(g, 10)?;
    if let Some(c) = trivial_case(g, w.k)? {
        return Ok(c);
    }
    let (near, far) = w.split(g);
    if far.len() <= 1 {
        // k - 1 members of S are dense neighbors: a plain iris
        let plain = IrisWitness {
            center: w.center,
            k: w.k,
            kind: IrisKind::Plain,
            s_set: near[..w.k - 1].to_vec(),
            connectors: BTreeMap::new(),
        };
        return color_from_iris(g, &plain);
    }
    build_dilated(g, w)
}

/// Dispatches on the witness kind.
pub fn color_from_witness(g: &Graph, w: &IrisWitness) -> Result<Coloring, IrisError> {
    match w.kind {
        IrisKind::Plain => color_from_iris(g, w),
        IrisKind::Dilated => color_from_dilated_iris(g, w),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn gen(f: Family) -> Graph {
        generate(&f).unwrap()
    }

    fn assert_b_coloring(g: &Graph, c: &Coloring, k: usize) {
        let r = validate(g, c).unwrap();
        assert!(r.is_b_coloring, "{c:?}");
        assert_eq!(r.k, k);
    }

    /// Center 0; dense neighbor 1 (leaf 6); paths 0-4-2 and 0-5-3 to the
    /// distance-two members 2 and 3 (leaves 7 and 8).
    fn spider() -> Graph {
        Graph::from_edges(9, [(0, 1), (1, 6), (0, 4), (4, 2), (2, 7), (0, 5), (5, 3), (3, 8)]).unwrap()
    }

    /// Center 0 with dense neighbors 1, 2 (two leaves each), connectors 3, 4
    /// leading to 5, 6 (two leaves each).
    fn dilated_four_tree() -> Graph {
        Graph::from_edges(
            15,
            [
                (0, 1), (0, 2), (0, 3), (0, 4), (3, 5), (4, 6),
                (1, 7), (1, 8), (2, 9), (2, 10), (5, 11), (5, 12), (6, 13), (6, 14),
            ],
        )
        .unwrap()
    }

    #[test]
    fn plain_iris_examples() {
        let w = find_iris(&gen(Family::Path(5)), 3).unwrap().unwrap();
        assert_eq!((w.center, w.s_set.clone()), (2, vec![1, 3]));
        assert_eq!(find_iris(&gen(Family::Cycle(10)), 4).unwrap(), None);
        let w = find_iris(&gen(Family::Complete(5)), 5).unwrap().unwrap();
        assert_eq!((w.center, w.s_set.clone()), (0, vec![1, 2, 3, 4]));
        assert_eq!(find_iris(&gen(Family::Path(3)), 1), Err(IrisError::InvalidK(1)));
    }

    #[test]
    fn dilated_iris_examples() {
        let w = find_dilated_iris(&spider(), 3).unwrap().unwrap();
        assert_eq!((w.center, w.s_set.clone()), (0, vec![1, 2, 3]));
        assert_eq!(w.connectors, BTreeMap::from([(2, 4), (3, 5)]));
        w.check(&spider()).unwrap();

        let c12 = gen(Family::Cycle(12));
        let w = find_dilated_iris(&c12, 3).unwrap().unwrap();
        assert_eq!((w.center, w.s_set.clone()), (0, vec![1, 2, 10]));
        assert_eq!(w.connectors, BTreeMap::from([(2, 1), (10, 11)]));
        w.check(&c12).unwrap();

        assert_eq!(find_dilated_iris(&gen(Family::Path(3)), 3).unwrap(), None);
    }

    #[test]
    fn witness_check_rejects_tampering() {
        let g = spider();
        let mut w = find_dilated_iris(&g, 3).unwrap().unwrap();
        w.connectors.insert(2, 5);
        assert!(w.check(&g).is_err());

        // two far members sharing a neighbor
        let star = Graph::from_edges(5, [(0, 1), (1, 2), (1, 3), (0, 4)]).unwrap();
        let bad = IrisWitness {
            center: 0,
            k: 2,
            kind: IrisKind::Dilated,
            s_set: vec![2, 3],
            connectors: BTreeMap::from([(2, 1), (3, 1)]),
        };
        assert!(bad.check(&star).unwrap_err().contains("share"));

        let mut plain = find_iris(&gen(Family::Path(5)), 3).unwrap().unwrap();
        plain.s_set = vec![1, 4];
        assert!(plain.check(&gen(Family::Path(5))).is_err());
    }

    #[test]
    fn lemma_one_on_paths_and_spiders() {
        let p5 = gen(Family::Path(5));
        let w = find_iris(&p5, 3).unwrap().unwrap();
        let c = color_from_iris(&p5, &w).unwrap();
        assert_eq!(c.to_string(), "3,2,1,3,2");
        assert_b_coloring(&p5, &c, 3);

        // 7-vertex spider: center with three subdivided legs
        let spider7 = Graph::from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
        let w = find_iris(&spider7, 3).unwrap().unwrap();
        assert_b_coloring(&spider7, &color_from_iris(&spider7, &w).unwrap(), 3);
    }

    #[test]
    fn girth_six_needs_the_right_neighbors() {
        // 6-cycle 0-3-6-4-2-8: coloring 5 instead of 6 around 3 would put
        // the barrier vertices 4 and 6 next to each other
        let g = Graph::from_edges(10, [(0, 3), (0, 8), (1, 7), (2, 4), (2, 8), (3, 5), (3, 6), (4, 6), (4, 9), (7, 9)])
            .unwrap();
        let w = find_iris(&g, 3).unwrap().unwrap();
        assert_eq!((w.center, w.s_set.clone()), (0, vec![3, 8]));
        let c = color_from_iris(&g, &w).unwrap();
        assert_b_coloring(&g, &c, 3);
        assert_eq!((c.color(6), c.color(5)), (3, 1));
    }

    #[test]
    fn combinations_are_lexicographic() {
        assert_eq!(combinations(4, 2), vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn k_equal_chi_returns_optimal_coloring() {
        let p5 = gen(Family::Path(5));
        let w = find_iris(&p5, 2).unwrap().unwrap();
        assert_b_coloring(&p5, &color_from_iris(&p5, &w).unwrap(), 2);
    }

    #[test]
    fn preconditions_are_enforced() {
        let c7 = gen(Family::Cycle(7));
        let w = find_iris(&c7, 3).unwrap().unwrap();
        assert_eq!(color_from_iris(&c7, &w), Err(IrisError::HasSevenCycle));
        // the barrier collides on the 7-cycle; exact extension still succeeds
        let mut b = Builder::new(&c7, 3);
        for (v, c) in [(0, 1), (1, 2), (6, 3), (2, 3), (5, 2)] {
            b.set(v, c, "core").unwrap();
        }
        assert!(matches!(b.clone().seal(), Err(IrisError::ImpossibleState { stage: "separator", .. })));
        assert_b_coloring(&c7, &build_plain(&c7, &w).unwrap(), 3);

        let c4 = gen(Family::Cycle(4));
        let w = find_iris(&c4, 3).unwrap().unwrap();
        assert!(matches!(color_from_iris(&c4, &w), Err(IrisError::GirthTooSmall { required: 6, .. })));
        assert!(matches!(build_plain(&c4, &w), Err(IrisError::ImpossibleState { .. })));

        let c12 = gen(Family::Cycle(12));
        let w = find_dilated_iris(&c12, 3).unwrap().unwrap();
        assert_eq!(
            color_from_iris(&c12, &w),
            Err(IrisError::WrongKind { expected: IrisKind::Plain })
        );
        let c9 = gen(Family::Cycle(9));
        let w9 = find_dilated_iris(&c9, 3).unwrap().unwrap();
        assert!(matches!(
            color_from_dilated_iris(&c9, &w9),
            Err(IrisError::GirthTooSmall { required: 10, .. })
        ));

        let p5 = gen(Family::Path(5));
        let w = IrisWitness { k: 1, ..find_iris(&p5, 2).unwrap().unwrap() };
        assert!(matches!(color_from_iris(&p5, &w), Err(IrisError::InvalidWitness(_))));
    }

    #[test]
    fn lemma_two_on_c12() {
        let c12 = gen(Family::Cycle(12));
        let w = find_dilated_iris(&c12, 3).unwrap().unwrap();
        let c = color_from_dilated_iris(&c12, &w).unwrap();
        assert_b_coloring(&c12, &c, 3);
        // the shared connector 1 takes color 1, the far member 2 it serves goes last
        assert_eq!((c.color(1), c.color(0), c.color(10), c.color(2)), (1, 2, 2, 3));
    }

    #[test]
    fn lemma_two_on_constructed_tree() {
        let g = dilated_four_tree();
        assert_eq!(find_iris(&g, 4).unwrap(), None);
        let w = find_dilated_iris(&g, 4).unwrap().unwrap();
        assert_eq!((w.center, w.s_set.clone()), (0, vec![1, 2, 5, 6]));
        assert_eq!(w.connectors, BTreeMap::from([(5, 3), (6, 4)]));
        let c = color_from_dilated_iris(&g, &w).unwrap();
        assert_b_coloring(&g, &c, 4);
    }

    #[test]
    fn dilated_without_far_members_delegates() {
        let g = gen(Family::Complete(2));
        let w = IrisWitness {
            center: 0,
            k: 2,
            kind: IrisKind::Dilated,
            s_set: vec![1],
            connectors: BTreeMap::new(),
        };
        // |S| = 1 < k: rejected as a dilated witness
        assert!(color_from_dilated_iris(&g, &w).is_err());

        // spider whose S lies entirely in N(u)
        let spider7 = Graph::from_edges(7, [(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
        let w = IrisWitness {
            center: 0,
            k: 3,
            kind: IrisKind::Dilated,
            s_set: vec![1, 3, 5],
            connectors: BTreeMap::new(),
        };
        w.check(&spider7).unwrap();
        let via_dilated = color_from_dilated_iris(&spider7, &w).unwrap();
        let plain = IrisWitness {
            kind: IrisKind::Plain,
            s_set: vec![1, 3],
            ..w.clone()
        };
        assert_eq!(via_dilated, color_from_iris(&spider7, &plain).unwrap());
    }

    #[test]
    fn serialization_shape() {
        let w = find_dilated_iris(&gen(Family::Cycle(12)), 3).unwrap().unwrap();
        let v = serde_json::to_value(&w).unwrap();
        assert_eq!(v["kind"], "dilated");
        assert_eq!(v["s"], serde_json::json!([1, 2, 10]));
        assert_eq!(v["connectors"]["2"], 1);
    }
}
