//! graph6 short form: one header byte `n + 63`, then the upper triangle of
//! the adjacency matrix in column order `(0,1), (0,2), (1,2), (0,3), ...`,
//! packed six bits per byte (most significant first) and offset by 63.

use super::{Graph, GraphError, Vertex};

/// Largest vertex count representable by the single-byte header.
pub const GRAPH6_MAX_ORDER: usize = 62;

const OFFSET: u8 = 63;
const OPTIONAL_HEADER: &str = ">>graph6<<";

fn parse_err(offset: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        offset,
        message: message.into(),
    }
}

fn data_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

/// Decodes a single graph6 line. A trailing newline and the optional
/// `>>graph6<<` prefix are accepted.
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let (skip, body) = match text.strip_prefix(OPTIONAL_HEADER) {
        Some(rest) => (OPTIONAL_HEADER.len(), rest),
        None => (0, text),
    };
    let bytes = body.trim_end_matches(['\n', '\r']).as_bytes();

    let Some(&header) = bytes.first() else {
        return Err(parse_err(skip, "empty input"));
    };
    if header == b'~' {
        return Err(parse_err(
            skip,
            "long-form graph6 (n > 62) is not supported",
        ));
    }
    if !(OFFSET..=126).contains(&header) {
        return Err(parse_err(
            skip,
            format!("header byte {header:#04x} outside the printable range 63..=126"),
        ));
    }
    let n = usize::from(header - OFFSET);
    let expected = data_len(n);
    let data = &bytes[1..];

    for (i, &b) in data.iter().enumerate() {
        if !(OFFSET..=126).contains(&b) {
            return Err(parse_err(
                skip + 1 + i,
                format!("byte {b:#04x} outside the printable range 63..=126"),
            ));
        }
    }
    if data.len() < expected {
        return Err(parse_err(
            skip + bytes.len(),
            format!(
                "truncated bit vector: expected {expected} data bytes for n = {n}, found {}",
                data.len()
            ),
        ));
    }
    if data.len() > expected {
        return Err(parse_err(
            skip + 1 + expected,
            format!("{} trailing bytes after the bit vector", data.len() - expected),
        ));
    }

    let bit = |t: usize| -> bool {
        let byte = data[t / 6] - OFFSET;
        (byte >> (5 - t % 6)) & 1 == 1
    };
    let mut edges = Vec::new();
    let mut t = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(t) {
                edges.push((i as Vertex, j as Vertex));
            }
            t += 1;
        }
    }
    Graph::from_edges(n, edges)
}

pub(super) fn encode(g: &Graph) -> String {
    let n = g.n();
    assert!(
        n <= GRAPH6_MAX_ORDER,
        "graph6 short form holds at most {GRAPH6_MAX_ORDER} vertices, got {n}"
    );
    let mut out = Vec::with_capacity(1 + data_len(n));
    out.push(n as u8 + OFFSET);
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + OFFSET);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + OFFSET);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}
