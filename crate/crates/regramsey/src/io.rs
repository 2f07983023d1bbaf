//! Graph serialization: plain edge lists and the graph6 interchange format.
//!
//! Edge-list format: an optional header line `# n=<N>` followed by one
//! `u v` pair per line (ASCII decimal, space-separated, `u < v`). Vertices
//! with no incident edges exist only if the header is present.
//!
//! graph6 is encoded bit-exactly per the canonical specification: N(n)
//! followed by the upper triangle in column-major order, six bits per
//! printable byte. The optional `>>graph6<<` prefix is accepted on input
//! and never emitted.

use crate::graph::{Edge, Graph, GraphError};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: expected `u v` pair, got {text:?}")]
    BadEdgeLine { line: usize, text: String },
    #[error("line {line}: endpoints must satisfy u < v, got {u} {v}")]
    UnorderedPair { line: usize, u: usize, v: usize },
    #[error("bad header line: {0:?}")]
    BadHeader(String),
    #[error("graph6: input is empty")]
    EmptyGraph6,
    #[error("graph6: byte {byte:#04x} at position {pos} outside printable range 63..=126")]
    ByteOutOfRange { pos: usize, byte: u8 },
    #[error("graph6: order {0} exceeds the supported maximum 258047")]
    OrderTooLarge(u64),
    #[error("graph6: expected {expected} payload bytes for n={n}, got {got}")]
    WrongLength {
        n: usize,
        expected: usize,
        got: usize,
    },
    #[error("graph6: nonzero padding bits")]
    BadPadding,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

// ==================== edge lists ====================

/// Renders `g` as edge-list text. The `# n=` header is always written so
/// that isolated vertices survive a round trip.
pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("# n={}\n", g.n());
    for e in g.edges() {
        out.push_str(&format!("{} {}\n", e.u(), e.v()));
    }
    out
}

/// Parses edge-list text. Without a header the order is one past the
/// largest endpoint; blank lines are skipped.
pub fn parse_edge_list(text: &str) -> Result<Graph, FormatError> {
    let mut declared_n: Option<usize> = None;
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut max_endpoint: Option<usize> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix('#') {
            let rest = rest.trim();
            if idx == 0 {
                if let Some(value) = rest.strip_prefix("n=") {
                    declared_n = Some(
                        value
                            .trim()
                            .parse()
                            .map_err(|_| FormatError::BadHeader(raw.to_string()))?,
                    );
                    continue;
                }
                return Err(FormatError::BadHeader(raw.to_string()));
            }
            // Later comment lines carry no structure; skip them.
            continue;
        }
        let mut parts = line.split_whitespace();
        let (u, v) = match (parts.next(), parts.next(), parts.next()) {
            (Some(a), Some(b), None) => {
                let parse = |s: &str| {
                    s.parse::<usize>().map_err(|_| FormatError::BadEdgeLine {
                        line: idx + 1,
                        text: raw.to_string(),
                    })
                };
                (parse(a)?, parse(b)?)
            }
            _ => {
                return Err(FormatError::BadEdgeLine {
                    line: idx + 1,
                    text: raw.to_string(),
                })
            }
        };
        if u >= v {
            return Err(FormatError::UnorderedPair {
                line: idx + 1,
                u,
                v,
            });
        }
        max_endpoint = Some(max_endpoint.map_or(v, |m: usize| m.max(v)));
        edges.push((u, v));
    }

    let n = declared_n.unwrap_or(match max_endpoint {
        Some(m) => m + 1,
        None => 0,
    });
    Ok(Graph::from_edges(n, edges)?)
}

// ==================== graph6 ====================

const G6_MAX_SHORT: usize = 62;
const G6_MAX: u64 = 258_047;

fn encode_order(n: usize, out: &mut Vec<u8>) {
    if n <= G6_MAX_SHORT {
        out.push(n as u8 + 63);
    } else {
        debug_assert!((n as u64) <= G6_MAX);
        out.push(126);
        out.push(((n >> 12) & 0x3f) as u8 + 63);
        out.push(((n >> 6) & 0x3f) as u8 + 63);
        out.push((n & 0x3f) as u8 + 63);
    }
}

/// Encodes `g` in graph6 (no trailing newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    assert!(
        (n as u64) <= G6_MAX,
        "graph6 encoding supports at most {} vertices",
        G6_MAX
    );
    let mut bytes = Vec::new();
    encode_order(n, &mut bytes);

    // Upper triangle, column-major: x(0,1), x(0,2), x(1,2), x(0,3), ...
    let mut acc: u8 = 0;
    let mut filled = 0u8;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                bytes.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        bytes.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(bytes).unwrap()
}

/// Decodes one graph6 string (optionally prefixed with `>>graph6<<`,
/// optionally newline-terminated).
pub fn from_graph6(text: &str) -> Result<Graph, FormatError> {
    let text = text.strip_prefix(">>graph6<<").unwrap_or(text);
    let bytes = text.trim_end_matches(['\r', '\n']).as_bytes();
    if bytes.is_empty() {
        return Err(FormatError::EmptyGraph6);
    }
    for (pos, &b) in bytes.iter().enumerate() {
        if !(63..=126).contains(&b) {
            return Err(FormatError::ByteOutOfRange { pos, byte: b });
        }
    }

    let (n, payload) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            // The 8-byte >=258048 form is deliberately unsupported.
            return Err(FormatError::OrderTooLarge(G6_MAX + 1));
        }
        if bytes.len() < 4 {
            return Err(FormatError::WrongLength {
                n: 0,
                expected: 4,
                got: bytes.len(),
            });
        }
        let n =
            ((bytes[1] as u64 - 63) << 12) | ((bytes[2] as u64 - 63) << 6) | (bytes[3] as u64 - 63);
        if n > G6_MAX {
            return Err(FormatError::OrderTooLarge(n));
        }
        (n as usize, &bytes[4..])
    } else {
        ((bytes[0] - 63) as usize, &bytes[1..])
    };

    let bit_count = n * n.saturating_sub(1) / 2;
    let expected = bit_count.div_ceil(6);
    if payload.len() != expected {
        return Err(FormatError::WrongLength {
            n,
            expected,
            got: payload.len(),
        });
    }

    let mut g = Graph::new(n);
    let mut bit_index = 0usize;
    'outer: for j in 1..n {
        for i in 0..j {
            let byte = payload[bit_index / 6] - 63;
            let bit = (byte >> (5 - bit_index % 6)) & 1;
            if bit == 1 {
                g.add_edge(Edge::new(i, j).unwrap())?;
            }
            bit_index += 1;
            if bit_index == bit_count {
                break 'outer;
            }
        }
    }
    if bit_count % 6 != 0 {
        let last = payload[expected - 1] - 63;
        let pad = 6 - bit_count % 6;
        if last & ((1 << pad) - 1) != 0 {
            return Err(FormatError::BadPadding);
        }
    }
    Ok(g)
}

// ==================== format sniffing ====================

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphFormat {
    EdgeList,
    Graph6,
}

/// Guesses the format of serialized graph text. Sound because edge-list
/// text starts with a digit or '#' (bytes < 63) while every graph6 byte
/// is in 63..=126.
pub fn sniff_format(text: &str) -> GraphFormat {
    match text.trim_start().bytes().next() {
        Some(b) if (63..=126).contains(&b) => GraphFormat::Graph6,
        _ => GraphFormat::EdgeList,
    }
}

/// Parses either supported format, dispatching on the leading byte.
pub fn parse_auto(text: &str) -> Result<Graph, FormatError> {
    match sniff_format(text) {
        GraphFormat::Graph6 => from_graph6(text),
        GraphFormat::EdgeList => parse_edge_list(text),
    }
}

/// Serializes `g` in the chosen format. Graph6 output gets a trailing
/// newline so both formats are line-oriented on disk.
pub fn emit(g: &Graph, format: GraphFormat) -> String {
    match format {
        GraphFormat::EdgeList => write_edge_list(g),
        GraphFormat::Graph6 => {
            let mut s = to_graph6(g);
            s.push('\n');
            s
        }
    }
}
