//! Plain-text edge lists.
//!
//! Format: an optional first line `n=<count>` pinning the node count,
//! then one `<src> <dst> <weight>` triple per line with 0-based indices;
//! `#` starts a comment. A listed edge is transport from `src` into `dst`.
//! Without the header the node count is inferred from the largest index.

use std::fmt::Write as _;

use netstab_core::network::NetworkError;
use netstab_core::AdjacencyMatrix;

#[derive(Debug, thiserror::Error)]
pub enum EdgeListError {
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("line {line}: duplicate edge {src} -> {dst}")]
    DuplicateEdge { line: usize, src: usize, dst: usize },
    #[error("line {line}: {source}")]
    Rejected { line: usize, source: NetworkError },
    #[error("empty edge list and no n=<count> header to size the graph")]
    Empty,
}

fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => &line[..pos],
        None => line,
    }
    .trim()
}

/// Parses an edge list; `read(write(a)) == a` exactly for weights whose
/// shortest decimal form round-trips (all of them, per float formatting).
pub fn read_edge_list(text: &str) -> Result<AdjacencyMatrix, EdgeListError> {
    let mut declared: Option<usize> = None;
    let mut edges: Vec<(usize, usize, f64, usize)> = Vec::new();
    let mut seen_entry = false;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = strip_comment(raw);
        if content.is_empty() {
            continue;
        }
        if let Some(rest) = content.strip_prefix("n=") {
            if seen_entry || declared.is_some() {
                return Err(EdgeListError::Malformed {
                    line,
                    msg: String::from("n=<count> header allowed only once, before any edge"),
                });
            }
            let n = rest
                .trim()
                .parse::<usize>()
                .map_err(|_| EdgeListError::Malformed {
                    line,
                    msg: format!("invalid node count {rest:?}"),
                })?;
            declared = Some(n);
            continue;
        }

        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(EdgeListError::Malformed {
                line,
                msg: format!("expected <src> <dst> <weight>, got {} fields", fields.len()),
            });
        }
        let src = fields[0]
            .parse::<usize>()
            .map_err(|_| EdgeListError::Malformed {
                line,
                msg: format!("invalid source index {:?}", fields[0]),
            })?;
        let dst = fields[1]
            .parse::<usize>()
            .map_err(|_| EdgeListError::Malformed {
                line,
                msg: format!("invalid destination index {:?}", fields[1]),
            })?;
        let weight = fields[2]
            .parse::<f64>()
            .map_err(|_| EdgeListError::Malformed {
                line,
                msg: format!("invalid weight {:?}", fields[2]),
            })?;
        if weight == 0.0 {
            return Err(EdgeListError::Malformed {
                line,
                msg: String::from("zero-weight edges are not representable"),
            });
        }
        seen_entry = true;
        edges.push((src, dst, weight, line));
    }

    let n = match declared {
        Some(n) => n,
        None => {
            let max = edges
                .iter()
                .map(|&(s, d, _, _)| s.max(d))
                .max()
                .ok_or(EdgeListError::Empty)?;
            max + 1
        }
    };

    let mut a =
        AdjacencyMatrix::zeros(n).map_err(|source| EdgeListError::Rejected { line: 1, source })?;
    for (src, dst, weight, line) in edges {
        if src < n && dst < n && a.has_edge(src, dst) {
            return Err(EdgeListError::DuplicateEdge { line, src, dst });
        }
        a.add_edge(src, dst, weight)
            .map_err(|source| EdgeListError::Rejected { line, source })?;
    }
    Ok(a)
}

/// Writes the `n=<count>` header followed by one line per edge, sorted by
/// source then destination.
pub fn write_edge_list(a: &AdjacencyMatrix) -> String {
    let mut out = format!("n={}\n", a.n());
    for (src, dst, w) in a.edges() {
        writeln!(out, "{src} {dst} {w}").unwrap();
    }
    out
}
