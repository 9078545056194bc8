use super::{Graph, GraphError};

/// Parses the plain edge-list format: a first line holding `n`, then one
/// `u v` pair per non-empty line. Offsets in errors are byte offsets of the
/// offending line.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut offset = 0;
    let mut n = None;
    let mut edges = Vec::new();

    for raw in text.split_inclusive('\n') {
        let line_start = offset;
        offset += raw.len();
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let parse_index = |s: &str| {
            s.parse::<usize>().map_err(|_| GraphError::Parse {
                offset: line_start,
                message: format!("expected a vertex index, found {s:?}"),
            })
        };
        match (n, fields.as_slice()) {
            (None, [count]) => n = Some(parse_index(count)?),
            (None, _) => {
                return Err(GraphError::Parse {
                    offset: line_start,
                    message: "first line must hold the vertex count".into(),
                })
            }
            (Some(_), [u, v]) => edges.push((parse_index(u)?, parse_index(v)?)),
            (Some(_), _) => {
                return Err(GraphError::Parse {
                    offset: line_start,
                    message: format!("expected \"u v\", found {line:?}"),
                })
            }
        }
    }

    let n = n.ok_or_else(|| GraphError::Parse {
        offset: 0,
        message: "missing vertex count".into(),
    })?;
    Graph::from_edges(n, edges)
}
