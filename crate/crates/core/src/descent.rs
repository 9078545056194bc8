//! Lowering the number of colors of a b-coloring one step at a time.
//!
//! From a b-coloring with `k` colors the engine first thins out the
//! b-vertices, then tries a weak-color move, then a unique-witness move.
//! Each move recolors vertices to safe colors until one color class has no
//! b-vertex left and cleans that color. When no move applies, a `(k - 1)`
//! iris or dilated iris is extracted around a b-vertex, and as a last resort
//! the exact oracle decides.
//!
//! Nothing here assumes the input minimizes the number of b-vertices: every
//! move verifies that the targeted class really lost its b-vertices and
//! reports `None` otherwise.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;
use thiserror::Error;

use crate::coloring::{validate, Analysis, BReport, Color, Coloring, ColoringError};
use crate::graph::{girth, Graph, GraphId, Vertex};
use crate::iris::{self, IrisError, IrisKind, IrisWitness};
use crate::oracle::{exact_chromatic, Oracle, OracleError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DescentError {
    #[error("rejected: {0}")]
    Rejected(#[from] Rejection),
    #[error("impossible state during {stage}: {detail}")]
    ImpossibleState { stage: &'static str, detail: String },
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Iris(#[from] IrisError),
}

/// A move or step whose preconditions do not hold.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Rejection {
    #[error("input is not a b-coloring")]
    NotBColoring,
    #[error("k = {k} is below chi + 1 = {}", chi + 1)]
    BelowThreshold { k: usize, chi: usize },
    #[error("{0} is a b-vertex")]
    IsBVertex(Vertex),
    #[error("{0} is not a b-vertex")]
    NotBVertex(Vertex),
    #[error("{0} has no safe color")]
    Unmutable(Vertex),
    #[error("U({x}) spans {colors} colors instead of one")]
    UniqueColors { x: Vertex, colors: usize },
    #[error("color {i} is the color of {u}")]
    OwnColor { u: Vertex, i: Color },
    #[error("B_{i}({u}) is not empty")]
    BNotEmpty { u: Vertex, i: Color },
    #[error("color {i} is not weak in N({u})")]
    NotWeak { u: Vertex, i: Color },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Move {
    UniqueMove {
        x: Vertex,
        safe_color: Color,
        cleaned: Color,
    },
    WeakMove {
        u: Vertex,
        i: Color,
        recolor: BTreeMap<Vertex, Color>,
        cleaned: Color,
    },
    IrisFallback {
        witness: IrisWitness,
    },
    OracleFallback,
}

impl Move {
    pub fn tag(&self) -> &'static str {
        match self {
            Move::UniqueMove { .. } => "unique_move",
            Move::WeakMove { .. } => "weak_move",
            Move::IrisFallback { .. } => "iris_fallback",
            Move::OracleFallback => "oracle_fallback",
        }
    }

    pub fn produces_coloring(&self) -> bool {
        matches!(self, Move::UniqueMove { .. } | Move::WeakMove { .. })
    }
}

/// How the coloring with `after_k` colors was obtained, if it was.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Resolution {
    Move,
    IrisConstruction,
    Oracle,
    /// The oracle proved that no b-coloring with `after_k` colors exists.
    OracleRefuted,
    Unresolved,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescentStep {
    #[serde(rename = "move")]
    pub mv: Move,
    pub before_k: usize,
    pub after_k: usize,
    /// before_k - χ.
    pub chi_slack: usize,
    pub resulting: Option<Coloring>,
    pub resolution: Resolution,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    /// Every k in [χ, start_k] has a certified b-coloring.
    ContinuousCertified,
    /// Stopped at k: an iris witness for k exists but its construction
    /// does not apply to this graph and no oracle was available.
    IrisCertified(usize),
    /// The oracle proved k missing from the spectrum.
    Discontinuous(usize),
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescentTrace {
    pub graph: GraphId,
    pub chi: usize,
    pub start_k: usize,
    pub steps: Vec<DescentStep>,
    pub achieved: BTreeSet<usize>,
    pub verdict: Verdict,
    /// Steps settled by the oracle, either way.
    pub oracle_fallbacks: usize,
    /// Targets on girth >= 10 graphs that the engine could not reach but the
    /// oracle could.
    pub gap_exhibits: Vec<usize>,
}

fn reject(r: Rejection) -> DescentError {
    DescentError::Rejected(r)
}

fn precheck(g: &Graph, c: &Coloring, chi: usize) -> Result<BReport, DescentError> {
    let r = validate(g, c)?;
    if !r.is_b_coloring {
        return Err(reject(Rejection::NotBColoring));
    }
    if r.k < chi + 1 {
        return Err(reject(Rejection::BelowThreshold { k: r.k, chi }));
    }
    Ok(r)
}

/// Greedy descent on |𝓑|: repeatedly applies the first single-vertex
/// recoloring (vertices ascending, colors ascending) that keeps a b-coloring
/// with the same colors and strictly shrinks the set of b-vertices. Inputs
/// that are not b-colorings come back unchanged.
pub fn reduce_b_vertices(g: &Graph, c: &Coloring) -> Coloring {
    let Ok(mut report) = validate(g, c) else {
        return c.clone();
    };
    if !report.is_b_coloring {
        return c.clone();
    }
    let mut current = c.clone();
    'improve: loop {
        for v in g.vertices() {
            let around = current.colors_of(g.neighbors(v).iter().copied());
            for col in 1..=current.k() {
                if col == current.color(v) || around.contains(&col) {
                    continue;
                }
                let Ok(next) = current.recolored(g, [(v, col)]) else {
                    continue;
                };
                let Ok(r) = validate(g, &next) else { continue };
                if r.is_b_coloring && r.k == current.k() && r.b_vertices.len() < report.b_vertices.len() {
                    current = next;
                    report = r;
                    continue 'improve;
                }
            }
        }
        return current;
    }
}

/// Validates a coloring reached by one safe recoloring: it is proper and no
/// vertex joined 𝓑.
fn after_safe_recolor(
    g: &Graph,
    before: &BReport,
    next: &Coloring,
    stage: &'static str,
) -> Result<BReport, DescentError> {
    let r = validate(g, next)?;
    if !r.is_proper {
        return Err(DescentError::ImpossibleState {
            stage,
            detail: format!("safe recoloring produced the improper coloring {next}"),
        });
    }
    if let Some(v) = r.b_vertices.iter().find(|v| !before.is_b_vertex(**v)) {
        return Err(DescentError::ImpossibleState {
            stage,
            detail: format!("{v} became a b-vertex in {next}"),
        });
    }
    Ok(r)
}

/// Cleans `d` after checking that it has no b-vertex left while every other
/// color still has one.
fn clean_lost_color(g: &Graph, r: &BReport, next: &Coloring, d: Color) -> Result<Option<Coloring>, DescentError> {
    if !r.b_of_color(d).is_empty() {
        return Ok(None);
    }
    if (1..=next.k()).any(|j| j != d && r.b_of_color(j).is_empty()) {
        return Ok(None);
    }
    let cleaned = Analysis::new(g, next)?.clean_color(d)?;
    let fin = validate(g, &cleaned)?;
    if !fin.is_b_coloring || fin.k + 1 != next.k() {
        return Err(DescentError::ImpossibleState {
            stage: "cleaning",
            detail: format!("cleaning color {d} of {next} gave {cleaned}"),
        });
    }
    Ok(Some(cleaned))
}

struct UniqueOutcome {
    safe_color: Color,
    cleaned: Color,
    coloring: Coloring,
}

fn apply_unique(g: &Graph, c: &Coloring, x: Vertex) -> Result<Option<UniqueOutcome>, DescentError> {
    let a = Analysis::new(g, c)?;
    if a.report().is_b_vertex(x) {
        return Err(reject(Rejection::IsBVertex(x)));
    }
    let witnesses = a.unique_color_witnesses(x)?;
    let spanned = c.colors_of(witnesses.iter().copied());
    if spanned.len() != 1 {
        return Err(reject(Rejection::UniqueColors { x, colors: spanned.len() }));
    }
    let d = *spanned.first().expect("one color");
    let Some(&safe_color) = a.mutability(x)?.safe_colors.first() else {
        return Err(reject(Rejection::Unmutable(x)));
    };
    let next = c.recolored(g, [(x, safe_color)])?;
    let r = after_safe_recolor(g, a.report(), &next, "unique move")?;
    Ok(clean_lost_color(g, &r, &next, d)?.map(|coloring| UniqueOutcome {
        safe_color,
        cleaned: d,
        coloring,
    }))
}

/// Recolors `x` to its lowest safe color and cleans the single color of
/// U(x). `None` when that color keeps a b-vertex elsewhere.
pub fn unique_move(g: &Graph, c: &Coloring, x: Vertex, chi: usize) -> Result<Option<Coloring>, DescentError> {
    precheck(g, c, chi)?;
    Ok(apply_unique(g, c, x)?.map(|o| o.coloring))
}

struct WeakOutcome {
    recolor: BTreeMap<Vertex, Color>,
    cleaned: Color,
    coloring: Coloring,
}

fn apply_weak(g: &Graph, c: &Coloring, u: Vertex, i: Color) -> Result<Option<WeakOutcome>, DescentError> {
    let a = Analysis::new(g, c)?;
    if !a.report().is_b_vertex(u) {
        return Err(reject(Rejection::NotBVertex(u)));
    }
    if c.color(u) == i {
        return Err(reject(Rejection::OwnColor { u, i }));
    }
    let (with_b, rest) = a.neighbors_by_color(u, i)?;
    if !with_b.is_empty() {
        return Err(reject(Rejection::BNotEmpty { u, i }));
    }
    if !a.is_weak(u, i)?.weak {
        return Err(reject(Rejection::NotWeak { u, i }));
    }
    // one vertex at a time, so each recoloring is a single safe one
    let mut recolor = BTreeMap::new();
    let mut current = c.clone();
    for &x in &rest {
        let step = Analysis::new(g, &current)?;
        let Some(&s) = step.mutability(x)?.safe_colors.first() else {
            return Ok(None);
        };
        let next = current.recolored(g, [(x, s)])?;
        after_safe_recolor(g, step.report(), &next, "weak move")?;
        recolor.insert(x, s);
        current = next;
    }
    let r = validate(g, &current)?;
    let cleaned = c.color(u);
    Ok(clean_lost_color(g, &r, &current, cleaned)?.map(|coloring| WeakOutcome {
        recolor,
        cleaned,
        coloring,
    }))
}

/// Recolors every vertex of R_i(u) to a safe color and cleans ψ(u). `None`
/// when ψ(u) keeps a b-vertex elsewhere or a later vertex of R_i(u) runs
/// out of safe colors.
pub fn weak_move(
    g: &Graph,
    c: &Coloring,
    u: Vertex,
    i: Color,
    chi: usize,
) -> Result<Option<Coloring>, DescentError> {
    precheck(g, c, chi)?;
    Ok(apply_weak(g, c, u, i)?.map(|o| o.coloring))
}

/// One step from k to k - 1 colors. Moves are tried on any graph; iris
/// extraction only on graphs of girth at least 5.
pub fn descend_one(g: &Graph, c: &Coloring, chi: usize) -> Result<DescentStep, DescentError> {
    let k = precheck(g, c, chi)?.k;
    let step = |mv: Move, resulting: Option<Coloring>| DescentStep {
        resolution: if resulting.is_some() {
            Resolution::Move
        } else {
            Resolution::Unresolved
        },
        mv,
        before_k: k,
        after_k: k - 1,
        chi_slack: k - chi,
        resulting,
    };
    let start = reduce_b_vertices(g, c);
    let a = Analysis::new(g, &start)?;
    let report = a.report();

    for &u in &report.b_vertices {
        for i in (1..=k).filter(|&i| i != start.color(u)) {
            if !a.neighbors_by_color(u, i)?.0.is_empty() || !a.is_weak(u, i)?.weak {
                continue;
            }
            if let Some(o) = apply_weak(g, &start, u, i)? {
                let mv = Move::WeakMove {
                    u,
                    i,
                    recolor: o.recolor,
                    cleaned: o.cleaned,
                };
                return Ok(step(mv, Some(o.coloring)));
            }
        }
    }
    for x in g.vertices().filter(|&x| !report.is_b_vertex(x)) {
        let spanned = start.colors_of(a.unique_color_witnesses(x)?);
        if spanned.len() != 1 || !a.mutability(x)?.is_mutable {
            continue;
        }
        if let Some(o) = apply_unique(g, &start, x)? {
            let mv = Move::UniqueMove {
                x,
                safe_color: o.safe_color,
                cleaned: o.cleaned,
            };
            return Ok(step(mv, Some(o.coloring)));
        }
    }
    if girth(g).at_least(5) {
        if let Some(witness) = extract_iris(g, &a, k)? {
            return Ok(step(Move::IrisFallback { witness }, None));
        }
    }
    Ok(step(Move::OracleFallback, None))
}

/// Around each b-vertex u in turn: with at most one color missing from
/// B_*(u), u is a plain (k-1)-iris; otherwise every missing color i yields
/// some x_i in R_i(u) with a k-dense neighbor v_i, and the v_i together with
/// one b-neighbor per remaining color form a dilated (k-1)-iris. Only
/// witnesses that pass [`IrisWitness::check`] are returned.
fn extract_iris(g: &Graph, a: &Analysis<'_>, k: usize) -> Result<Option<IrisWitness>, DescentError> {
    let c = a.coloring();
    for &u in &a.report().b_vertices {
        let mut near = Vec::new();
        let mut missing = Vec::new();
        for i in (1..=k).filter(|&i| i != c.color(u)) {
            let (with_b, rest) = a.neighbors_by_color(u, i)?;
            match with_b.first() {
                Some(&v) => near.push(v),
                None => missing.push(rest),
            }
        }
        let witness = if missing.len() <= 1 {
            iris::plain_at(g, u, k - 1)
        } else {
            let mut far = Vec::new();
            pick_far(g, u, k, &missing, &mut far).then(|| {
                let mut s_set: Vec<Vertex> = near.iter().copied().chain(far.iter().map(|&(v, _)| v)).collect();
                s_set.sort_unstable();
                IrisWitness {
                    center: u,
                    k: k - 1,
                    kind: IrisKind::Dilated,
                    s_set,
                    connectors: far.iter().copied().collect(),
                }
            })
        };
        if let Some(w) = witness.filter(|w| w.check(g).is_ok()) {
            return Ok(Some(w));
        }
    }
    Ok(None)
}

/// Chooses (v_i, x_i) for each missing color: x_i from R_i(u), v_i a k-dense
/// neighbor of x_i outside N[u], with pairwise disjoint neighborhoods.
fn pick_far(g: &Graph, u: Vertex, k: usize, missing: &[Vec<Vertex>], far: &mut Vec<(Vertex, Vertex)>) -> bool {
    let Some(options) = missing.get(far.len()) else {
        return true;
    };
    for &x in options {
        for &v in g.neighbors(x) {
            if v == u || g.has_edge(u, v) || g.degree(v) + 1 < k {
                continue;
            }
            let clash = far.iter().any(|&(w, _)| {
                w == v || g.neighbors(v).iter().any(|&y| g.has_edge(y, w))
            });
            if clash {
                continue;
            }
            far.push((v, x));
            if pick_far(g, u, k, missing, far) {
                return true;
            }
            far.pop();
        }
    }
    false
}

/// Starts from the oracle's b(G)-witness and descends to χ.
pub fn certify_continuity(g: &Graph, oracle: &Oracle) -> Result<DescentTrace, DescentError> {
    oracle.check_cap(g)?;
    match oracle.b_chromatic(g)? {
        Some((_, start)) => certify_from(g, &start, Some(oracle)),
        None => Ok(DescentTrace {
            graph: g.id(),
            chi: 0,
            start_k: 0,
            steps: Vec::new(),
            achieved: BTreeSet::new(),
            verdict: Verdict::ContinuousCertified,
            oracle_fallbacks: 0,
            gap_exhibits: Vec::new(),
        }),
    }
}

/// Descends from `start` to χ. Iris fallbacks are settled by the iris
/// constructions when their preconditions hold, everything else by the
/// oracle when one is given and the graph is within its cap.
pub fn certify_from(g: &Graph, start: &Coloring, oracle: Option<&Oracle>) -> Result<DescentTrace, DescentError> {
    let r = validate(g, start)?;
    if !r.is_b_coloring {
        return Err(reject(Rejection::NotBColoring));
    }
    let chi = exact_chromatic(g).0;
    let oracle = oracle.filter(|o| o.check_cap(g).is_ok());
    let large_girth = girth(g).at_least(10);
    let mut trace = DescentTrace {
        graph: g.id(),
        chi,
        start_k: r.k,
        steps: Vec::new(),
        achieved: BTreeSet::from([r.k]),
        verdict: Verdict::ContinuousCertified,
        oracle_fallbacks: 0,
        gap_exhibits: Vec::new(),
    };
    let mut current = start.clone();
    while current.k() > chi {
        let target = current.k() - 1;
        let mut step = descend_one(g, &current, chi)?;
        match &step.mv {
            Move::UniqueMove { .. } | Move::WeakMove { .. } => {}
            Move::IrisFallback { witness } => match iris::color_from_witness(g, witness) {
                Ok(c) => {
                    step.resolution = Resolution::IrisConstruction;
                    step.resulting = Some(c);
                }
                Err(e @ IrisError::ImpossibleState { .. }) => return Err(e.into()),
                Err(_) => settle_with_oracle(g, oracle, target, &mut step, &mut trace)?,
            },
            Move::OracleFallback => {
                settle_with_oracle(g, oracle, target, &mut step, &mut trace)?;
                if large_girth && step.resolution == Resolution::Oracle {
                    trace.gap_exhibits.push(target);
                }
            }
        }
        let next = step.resulting.clone();
        let verdict = match (&step.mv, step.resolution) {
            (_, Resolution::OracleRefuted) => Verdict::Discontinuous(target),
            (Move::IrisFallback { .. }, Resolution::Unresolved) => Verdict::IrisCertified(target),
            _ => Verdict::Inconclusive,
        };
        trace.steps.push(step);
        match next {
            Some(c) => {
                trace.achieved.insert(target);
                current = c;
            }
            None => {
                trace.verdict = verdict;
                return Ok(trace);
            }
        }
    }
    Ok(trace)
}

fn settle_with_oracle(
    g: &Graph,
    oracle: Option<&Oracle>,
    target: usize,
    step: &mut DescentStep,
    trace: &mut DescentTrace,
) -> Result<(), DescentError> {
    let Some(oracle) = oracle else {
        return Ok(());
    };
    trace.oracle_fallbacks += 1;
    match oracle.exists_b_coloring(g, target)? {
        Some(c) => {
            step.resolution = Resolution::Oracle;
            step.resulting = Some(c);
        }
        None => step.resolution = Resolution::OracleRefuted,
    }
    Ok(())
}
