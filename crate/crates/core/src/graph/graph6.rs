//! graph6 encoding: printable bytes offset by 63, upper triangle in
//! column-major order, packed into 6-bit groups with zero padding.

use thiserror::Error;

use super::Graph;
use crate::bits;

const BIAS: u8 = 63;
const SMALL_LIMIT: usize = 62;
const MEDIUM_LIMIT: usize = 258_047;
const LARGE_LIMIT: usize = (1 << 36) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6ErrorKind {
    #[error("empty input")]
    Empty,
    #[error("byte {0:#04x} is outside the graph6 range 63..=126")]
    InvalidByte(u8),
    #[error("order header is truncated")]
    TruncatedHeader,
    #[error("edge data truncated: expected {expected} bytes, found {found}")]
    TruncatedBody { expected: usize, found: usize },
    #[error("unexpected trailing data")]
    TrailingData,
    #[error("padding bits are not zero")]
    NonzeroPadding,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("graph6 error at byte {offset}: {kind}")]
pub struct Graph6Error {
    pub offset: usize,
    pub kind: Graph6ErrorKind,
}

fn err(offset: usize, kind: Graph6ErrorKind) -> Graph6Error {
    Graph6Error { offset, kind }
}

fn decode_byte(bytes: &[u8], at: usize) -> Result<u64, Graph6Error> {
    match bytes.get(at) {
        Some(&b) if (BIAS..=126).contains(&b) => Ok(u64::from(b - BIAS)),
        Some(&b) => Err(err(at, Graph6ErrorKind::InvalidByte(b))),
        None => Err(err(at, Graph6ErrorKind::TruncatedHeader)),
    }
}

fn decode_order(bytes: &[u8]) -> Result<(usize, usize), Graph6Error> {
    let first = decode_byte(bytes, 0)?;
    if first < 63 {
        return Ok((first as usize, 1));
    }
    let second = decode_byte(bytes, 1)?;
    let (start, groups) = if second == 63 { (2, 6) } else { (1, 3) };
    let mut n = 0u64;
    for i in 0..groups {
        n = (n << 6) | decode_byte(bytes, start + i)?;
    }
    Ok((n as usize, start + groups))
}

/// Parses one graph6 line. A trailing newline (and an optional
/// `>>graph6<<` header) is accepted; anything else is an error.
pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let mut line = text.strip_suffix('\n').unwrap_or(text);
    line = line.strip_suffix('\r').unwrap_or(line);
    let (line, skipped) = match line.strip_prefix(">>graph6<<") {
        Some(rest) => (rest, 10),
        None => (line, 0),
    };
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(err(skipped, Graph6ErrorKind::Empty));
    }
    let (n, header) = decode_order(bytes).map_err(|e| err(e.offset + skipped, e.kind))?;
    let bit_count = n * n.saturating_sub(1) / 2;
    let body_len = bit_count.div_ceil(6);
    let available = bytes.len() - header;
    if available < body_len {
        return Err(err(
            bytes.len() + skipped,
            Graph6ErrorKind::TruncatedBody { expected: body_len, found: available },
        ));
    }
    if available > body_len {
        return Err(err(header + body_len + skipped, Graph6ErrorKind::TrailingData));
    }

    let words = bits::words_for(n);
    let mut adj = vec![0u64; n * words];
    let (mut i, mut j) = (0usize, 1usize);
    let mut k = 0usize;
    for (pos, _) in bytes[header..].iter().enumerate() {
        let at = header + pos;
        let value = decode_byte(bytes, at).map_err(|e| err(e.offset + skipped, e.kind))?;
        for shift in (0..6).rev() {
            let bit = (value >> shift) & 1 == 1;
            if k >= bit_count {
                if bit {
                    return Err(err(at + skipped, Graph6ErrorKind::NonzeroPadding));
                }
                continue;
            }
            if bit {
                bits::set_bit(&mut adj[i * words..(i + 1) * words], j);
                bits::set_bit(&mut adj[j * words..(j + 1) * words], i);
            }
            k += 1;
            i += 1;
            if i == j {
                i = 0;
                j += 1;
            }
        }
    }
    Ok(Graph::from_adjacency(n, adj))
}

/// Encodes a graph as a graph6 line (without newline). Orders above 62
/// use the multi-byte header forms.
pub fn to_graph6(g: &Graph) -> String {
    let n = g.order();
    assert!(n <= LARGE_LIMIT, "order {n} exceeds graph6 capacity");
    let mut out: Vec<u8> = Vec::with_capacity(1 + (n * n) / 12);
    if n <= SMALL_LIMIT {
        out.push(n as u8 + BIAS);
    } else if n <= MEDIUM_LIMIT {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + BIAS);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + BIAS);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.has_edge(i, j));
            filled += 1;
            if filled == 6 {
                out.push(acc + BIAS);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + BIAS);
    }
    String::from_utf8(out).expect("graph6 output is ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn k4_is_c_tilde() {
        let k4 = parse_graph6("C~").unwrap();
        assert_eq!(k4, Graph::complete(4));
        assert_eq!(to_graph6(&Graph::complete(4)), "C~");
    }

    #[test]
    fn single_vertex_and_empty_graphs() {
        let k1 = parse_graph6("@").unwrap();
        assert_eq!((k1.order(), k1.size()), (1, 0));
        assert_eq!(to_graph6(&Graph::empty(0)), "?");
        // 5 vertices -> 'D', 10 zero bits -> two zero groups
        assert_eq!(to_graph6(&Graph::empty(5)), "D??");
    }

    #[test]
    fn c4_round_trip() {
        let c4 = Graph::cycle(4);
        let s = to_graph6(&c4);
        let back = parse_graph6(&s).unwrap();
        assert_eq!(back.edges(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
    }

    #[test]
    fn reference_strings() {
        // Produced by networkx.to_graph6_bytes (header stripped).
        assert_eq!(to_graph6(&Graph::cycle(5)), "Dhc");
        assert_eq!(to_graph6(&Graph::path(4)), "Ch");
        assert_eq!(to_graph6(&Graph::complete_bipartite(2, 3)), "D]o");
    }

    #[test]
    fn large_header_round_trip() {
        let g = Graph::cycle(100);
        let s = to_graph6(&g);
        assert!(s.starts_with('~'));
        assert_eq!(parse_graph6(&s).unwrap(), g);
    }

    #[test]
    fn error_offsets() {
        assert_eq!(parse_graph6("").unwrap_err().kind, Graph6ErrorKind::Empty);
        let e = parse_graph6("C~~").unwrap_err();
        assert_eq!((e.offset, e.kind), (2, Graph6ErrorKind::TrailingData));
        let e = parse_graph6("D?").unwrap_err();
        assert_eq!(e.kind, Graph6ErrorKind::TruncatedBody { expected: 2, found: 1 });
        let e = parse_graph6("C\u{7f}").unwrap_err();
        assert_eq!((e.offset, e.kind), (1, Graph6ErrorKind::InvalidByte(0x7f)));
        let e = parse_graph6("B@").unwrap_err();
        // one data bit; '@' = 000001 sets a padding bit
        assert_eq!((e.offset, e.kind), (1, Graph6ErrorKind::NonzeroPadding));
        let e = parse_graph6("~?").unwrap_err();
        assert_eq!(e.kind, Graph6ErrorKind::TruncatedHeader);
    }
}
