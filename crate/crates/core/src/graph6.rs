//! The graph6 text format for simple undirected graphs.
//!
//! A line is `N(n)` followed by the upper triangle of the adjacency matrix,
//! column by column (`x(0,1), x(0,2), x(1,2), x(0,3), ...`), packed six bits
//! per byte, most significant bit first, each byte offset by 63.

use crate::error::{Error, Result};
use crate::graph::Graph;

const HEADER: &str = ">>graph6<<";

fn parse_error(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        location: format!("byte {offset}"),
        message: message.into(),
    }
}

fn sextet(bytes: &[u8], offset: usize) -> Result<u64> {
    let b = bytes[offset];
    if !(63..=126).contains(&b) {
        return Err(parse_error(
            offset,
            format!("byte {b} is outside the printable range 63..=126"),
        ));
    }
    Ok(u64::from(b - 63))
}

/// Decodes one graph6 line. A trailing newline and the optional
/// `>>graph6<<` header are accepted.
pub fn parse_graph6(line: &str) -> Result<Graph> {
    let line = line.trim_end_matches(['\n', '\r']);
    let start = if line.starts_with(HEADER) { HEADER.len() } else { 0 };
    let bytes = line.as_bytes();
    if bytes.len() == start {
        return Err(parse_error(start, "empty graph6 line"));
    }

    let read_wide = |from: usize, count: usize| -> Result<u64> {
        if bytes.len() < from + count {
            return Err(parse_error(
                bytes.len(),
                "line ends inside the vertex-count field",
            ));
        }
        let mut value = 0;
        for off in from..from + count {
            value = (value << 6) | sextet(bytes, off)?;
        }
        Ok(value)
    };

    let (n, body) = if bytes[start] != 126 {
        (sextet(bytes, start)?, start + 1)
    } else if bytes.get(start + 1) == Some(&126) {
        (read_wide(start + 2, 6)?, start + 8)
    } else {
        (read_wide(start + 1, 3)?, start + 4)
    };
    let n = usize::try_from(n).map_err(|_| parse_error(start, "vertex count overflows"))?;

    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    let actual = bytes.len() - body;
    if actual != expected {
        return Err(parse_error(
            body,
            format!("{n} vertices need {expected} adjacency bytes, found {actual}"),
        ));
    }

    let mut edges = Vec::new();
    let (mut i, mut j) = (0usize, 1usize);
    for k in 0..expected {
        let offset = body + k;
        let value = sextet(bytes, offset)?;
        for bit in (0..6).rev() {
            let index = k * 6 + (5 - bit);
            let set = (value >> bit) & 1 == 1;
            if index >= bits {
                if set {
                    return Err(parse_error(offset, "padding bits must be zero"));
                }
                continue;
            }
            if set {
                edges.push((i, j));
            }
            i += 1;
            if i == j {
                i = 0;
                j += 1;
            }
        }
    }
    Graph::from_edges(n, edges)
}

/// Encodes a graph as a graph6 line, without header or newline.
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n as u64 >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.is_adjacent(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complete_graph_on_four() {
        let g = parse_graph6("C~").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 6);
        assert_eq!(encode_graph6(&g), "C~");
    }

    #[test]
    fn single_edge_and_header() {
        let g = parse_graph6(">>graph6<<A_\n").unwrap();
        assert_eq!(g.n(), 2);
        assert!(g.is_adjacent(0, 1));
        assert_eq!(parse_graph6("@").unwrap().n(), 1);
    }

    #[test]
    fn malformed_lines_report_offsets() {
        for bad in ["", ">>graph6<<", "C~~", "C", "C}\u{7f}"] {
            assert!(
                matches!(parse_graph6(bad), Err(Error::Parse { .. })),
                "{bad:?} accepted"
            );
        }
        // 2 vertices use one bit; the other five must be clear.
        match parse_graph6("A`") {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "byte 1"),
            other => panic!("unexpected {other:?}"),
        }
        match parse_graph6("C~ ") {
            Err(Error::Parse { location, .. }) => assert_eq!(location, "byte 1"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn wide_vertex_count_round_trips() {
        let n = 70;
        let g = Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap();
        let text = encode_graph6(&g);
        assert_eq!(text.as_bytes()[0], 126);
        assert_eq!(parse_graph6(&text).unwrap(), g);
    }
}
