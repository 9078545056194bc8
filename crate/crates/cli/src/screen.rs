//! Stream screening: one verdict per graph6 line, computed in parallel and
//! reported in input order.

use std::fmt::Write as _;

use bcontinuity::coloring::Coloring;
use bcontinuity::graph::{girth, parse_graph6, Graph};
use bcontinuity::oracle::{Oracle, SpectrumReport};
use rayon::prelude::*;
use serde::Serialize;

pub struct Filters {
    pub girth_min: Option<usize>,
    pub regular: bool,
    pub bipartite: bool,
}

impl Filters {
    fn admit(&self, g: &Graph) -> bool {
        self.girth_min.is_none_or(|m| girth(g).at_least(m))
            && (!self.regular || g.is_regular())
            && (!self.bipartite || g.is_bipartite())
    }
}

#[derive(Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum LineResult {
    ParseError { message: String },
    Filtered,
    Refused { message: String },
    Screened(Verdict),
}

#[derive(Serialize)]
pub struct Verdict {
    pub n: usize,
    pub chi: usize,
    pub b: usize,
    pub m: usize,
    pub spectrum: Vec<usize>,
    pub continuous: bool,
    /// Oracle witness for every k of the spectrum; printed with --verbose.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<std::collections::BTreeMap<usize, Coloring>>,
}

impl Verdict {
    fn from_report(g: &Graph, r: SpectrumReport) -> Self {
        Verdict {
            n: g.n(),
            chi: r.chi,
            b: r.b,
            m: r.m,
            continuous: r.is_continuous,
            spectrum: r.spectrum,
            witnesses: Some(r.witnesses),
        }
    }
}

#[derive(Serialize)]
pub struct Line {
    /// 1-based line number in the input.
    pub line: usize,
    pub graph6: String,
    #[serde(flatten)]
    pub result: LineResult,
}

#[derive(Serialize, Default)]
pub struct Summary {
    pub scanned: usize,
    pub continuous: usize,
    pub filtered: usize,
    pub parse_errors: usize,
    pub refused: usize,
    pub non_continuous: Vec<Flagged>,
}

#[derive(Serialize)]
pub struct Flagged {
    pub line: usize,
    pub graph6: String,
    pub spectrum: Vec<usize>,
}

#[derive(Serialize)]
pub struct ScreenReport {
    pub lines: Vec<Line>,
    pub summary: Summary,
}

pub fn screen(text: &str, filters: &Filters, oracle: Oracle) -> ScreenReport {
    let inputs: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let lines: Vec<Line> = inputs
        .par_iter()
        .map(|&(line, g6)| Line {
            line,
            graph6: g6.to_string(),
            result: classify(g6, filters, oracle),
        })
        .collect();
    let mut summary = Summary::default();
    for l in &lines {
        match &l.result {
            LineResult::ParseError { .. } => summary.parse_errors += 1,
            LineResult::Filtered => summary.filtered += 1,
            LineResult::Refused { .. } => summary.refused += 1,
            LineResult::Screened(v) => {
                summary.scanned += 1;
                if v.continuous {
                    summary.continuous += 1;
                } else {
                    summary.non_continuous.push(Flagged {
                        line: l.line,
                        graph6: l.graph6.clone(),
                        spectrum: v.spectrum.clone(),
                    });
                }
            }
        }
    }
    ScreenReport { lines, summary }
}

fn classify(g6: &str, filters: &Filters, oracle: Oracle) -> LineResult {
    let g = match parse_graph6(g6) {
        Ok(g) => g,
        Err(e) => return LineResult::ParseError { message: e.to_string() },
    };
    if !filters.admit(&g) {
        return LineResult::Filtered;
    }
    match oracle.b_spectrum(&g) {
        Ok(r) => LineResult::Screened(Verdict::from_report(&g, r)),
        Err(e) => LineResult::Refused { message: e.to_string() },
    }
}

impl ScreenReport {
    /// Drops the witnesses unless they were asked for.
    pub fn for_output(&self, verbose: bool) -> serde_json::Value {
        let mut value = serde_json::to_value(self).expect("screen report serializes");
        if !verbose {
            if let Some(lines) = value["lines"].as_array_mut() {
                for l in lines {
                    if let Some(obj) = l.as_object_mut() {
                        obj.remove("witnesses");
                    }
                }
            }
        }
        value
    }

    pub fn text(&self, verbose: bool) -> String {
        let mut out = String::new();
        for l in &self.lines {
            match &l.result {
                LineResult::ParseError { message } => writeln!(out, "line {}: parse error: {message}", l.line),
                LineResult::Filtered => writeln!(out, "line {}: {} filtered out", l.line, l.graph6),
                LineResult::Refused { message } => writeln!(out, "line {}: {} refused: {message}", l.line, l.graph6),
                LineResult::Screened(v) => {
                    let tag = if v.continuous { "continuous" } else { "NON-CONTINUOUS" };
                    writeln!(
                        out,
                        "line {}: {} n={} chi={} b={} m={} spectrum={:?} {tag}",
                        l.line, l.graph6, v.n, v.chi, v.b, v.m, v.spectrum
                    )
                    .unwrap();
                    if verbose {
                        for (k, c) in v.witnesses.iter().flatten() {
                            writeln!(out, "    k = {k}: {c}").unwrap();
                        }
                    }
                    Ok(())
                }
            }
            .unwrap();
        }
        let s = &self.summary;
        writeln!(
            out,
            "summary: scanned {}, continuous {}, non-continuous {}, filtered {}, parse errors {}, refused {}",
            s.scanned,
            s.continuous,
            s.non_continuous.len(),
            s.filtered,
            s.parse_errors,
            s.refused
        )
        .unwrap();
        for f in &s.non_continuous {
            writeln!(out, "  non-continuous: line {} {} spectrum {:?}", f.line, f.graph6, f.spectrum).unwrap();
        }
        out
    }
}
