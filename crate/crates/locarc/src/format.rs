//! Text formats: the edge-list format for hand-written inputs and graph6 for
//! corpora produced by standard enumeration tools.
//!
//! graph6 is bit-exact per the de-facto specification: the upper triangle of
//! the adjacency matrix in column-major order, packed into 6-bit chunks, each
//! offset by 63. Files may carry a `>>graph6<<` header.

use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed token {token:?}")]
    MalformedToken { line: usize, token: String },
    #[error("line {line}: expected \"u v\", got {got} tokens")]
    WrongTokenCount { line: usize, got: usize },
    #[error("line {line}: self-loop at vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: vertex {vertex} out of range for declared n = {n}")]
    IndexOverflow { line: usize, vertex: usize, n: usize },
    #[error("line {line}: graph6 byte {byte:#x} out of range")]
    Graph6BadByte { line: usize, byte: u8 },
    #[error("line {line}: graph6 record has wrong length (n = {n}, got {got} data bytes, need {need})")]
    Graph6BadLength { line: usize, n: usize, got: usize, need: usize },
    #[error("line {line}: graph6 order too large")]
    Graph6OrderTooLarge { line: usize },
    #[error("line {line}: empty graph6 record")]
    Graph6Empty { line: usize },
}

/// Parses the edge-list format: lines of `u v`, blank lines and `#` comments
/// allowed, and an optional first data line `n <count>` fixing the vertex
/// count. Without a declaration the vertex count is max index + 1.
pub fn parse_edge_list(text: &str) -> Result<Graph, ParseError> {
    let mut declared_n: Option<usize> = None;
    let mut edges: Vec<(usize, usize, usize)> = Vec::new(); // (u, v, line)
    let mut max_vertex: Option<usize> = None;
    let mut first_data_line = true;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if first_data_line && tokens[0] == "n" {
            if tokens.len() != 2 {
                return Err(ParseError::WrongTokenCount { line: line_no, got: tokens.len() });
            }
            let n = parse_usize(tokens[1], line_no)?;
            declared_n = Some(n);
            first_data_line = false;
            continue;
        }
        first_data_line = false;
        if tokens.len() != 2 {
            return Err(ParseError::WrongTokenCount { line: line_no, got: tokens.len() });
        }
        let u = parse_usize(tokens[0], line_no)?;
        let v = parse_usize(tokens[1], line_no)?;
        if u == v {
            return Err(ParseError::SelfLoop { line: line_no, vertex: u });
        }
        max_vertex = Some(max_vertex.unwrap_or(0).max(u).max(v));
        edges.push((u, v, line_no));
    }

    let n = match declared_n {
        Some(n) => n,
        None => max_vertex.map_or(0, |m| m + 1),
    };
    let mut g = Graph::empty(n);
    for (u, v, line) in edges {
        if u >= n {
            return Err(ParseError::IndexOverflow { line, vertex: u, n });
        }
        if v >= n {
            return Err(ParseError::IndexOverflow { line, vertex: v, n });
        }
        g.insert_edge(u, v);
    }
    Ok(g)
}

fn parse_usize(token: &str, line: usize) -> Result<usize, ParseError> {
    token
        .parse::<usize>()
        .map_err(|_| ParseError::MalformedToken { line, token: token.to_string() })
}

pub fn serialize_edge_list(g: &Graph) -> String {
    let mut out = format!("n {}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

const GRAPH6_HEADER: &str = ">>graph6<<";

/// Decodes a single graph6 record (one line, header stripped).
pub fn parse_graph6_line(line: &str) -> Result<Graph, ParseError> {
    parse_graph6_record(line, 1)
}

/// Decodes a graph6 file: one graph per line, blank lines skipped, an
/// optional `>>graph6<<` header (on its own line or prefixing the first
/// record) allowed.
pub fn parse_graph6(text: &str) -> Result<Vec<Graph>, ParseError> {
    let mut graphs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let mut line = raw.trim();
        if let Some(rest) = line.strip_prefix(GRAPH6_HEADER) {
            line = rest.trim();
        }
        if line.is_empty() {
            continue;
        }
        graphs.push(parse_graph6_record(line, idx + 1)?);
    }
    Ok(graphs)
}

fn parse_graph6_record(line: &str, line_no: usize) -> Result<Graph, ParseError> {
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(ParseError::Graph6Empty { line: line_no });
    }
    for &b in bytes {
        if !(63..=126).contains(&b) {
            return Err(ParseError::Graph6BadByte { line: line_no, byte: b });
        }
    }
    let (n, data) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            // 126 126 + 6 bytes would encode n up to 2^36 - 1; out of desk scale
            return Err(ParseError::Graph6OrderTooLarge { line: line_no });
        }
        if bytes.len() < 4 {
            return Err(ParseError::Graph6BadLength { line: line_no, n: 0, got: bytes.len(), need: 4 });
        }
        let n = (((bytes[1] - 63) as usize) << 12)
            | (((bytes[2] - 63) as usize) << 6)
            | ((bytes[3] - 63) as usize);
        (n, &bytes[4..])
    } else {
        ((bytes[0] - 63) as usize, &bytes[1..])
    };
    let bits = n.saturating_mul(n.saturating_sub(1)) / 2;
    let need = bits.div_ceil(6);
    if data.len() != need {
        return Err(ParseError::Graph6BadLength { line: line_no, n, got: data.len(), need });
    }
    let mut g = Graph::empty(n);
    let mut bit_index = 0usize;
    for j in 1..n {
        for i in 0..j {
            let chunk = data[bit_index / 6] - 63;
            let bit = (chunk >> (5 - (bit_index % 6))) & 1;
            if bit == 1 {
                g.insert_edge(i, j);
            }
            bit_index += 1;
        }
    }
    Ok(g)
}

/// Encodes a graph as a single graph6 record (no header, no newline).
pub fn encode_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        assert!(n <= 258_047, "graph6 encoding supported up to n = 258047");
        out.push(126);
        out.push(((n >> 12) & 0x3f) as u8 + 63);
        out.push(((n >> 6) & 0x3f) as u8 + 63);
        out.push((n & 0x3f) as u8 + 63);
    }
    let bits = n * n.saturating_sub(1) / 2;
    let mut chunks = vec![0u8; bits.div_ceil(6)];
    let mut bit_index = 0usize;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(i, j) {
                chunks[bit_index / 6] |= 1 << (5 - (bit_index % 6));
            }
            bit_index += 1;
        }
    }
    out.extend(chunks.into_iter().map(|c| c + 63));
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, path_graph};

    #[test]
    fn edge_list_p3() {
        let g = parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!(g, path_graph(3));
    }

    #[test]
    fn edge_list_declared_n() {
        let g = parse_edge_list("n 4\n0 1").unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn edge_list_self_loop() {
        assert_eq!(parse_edge_list("0 0"), Err(ParseError::SelfLoop { line: 1, vertex: 0 }));
    }

    #[test]
    fn edge_list_comments_blanks_and_errors() {
        let g = parse_edge_list("# a triangle\n\n0 1 # first\n1 2\n2 0\n").unwrap();
        assert_eq!(g, complete_graph(3));
        assert!(matches!(
            parse_edge_list("0 x"),
            Err(ParseError::MalformedToken { line: 1, .. })
        ));
        assert!(matches!(
            parse_edge_list("n 2\n0 5"),
            Err(ParseError::IndexOverflow { line: 2, vertex: 5, n: 2 })
        ));
        assert!(matches!(
            parse_edge_list("0 1 2"),
            Err(ParseError::WrongTokenCount { line: 1, got: 3 })
        ));
    }

    #[test]
    fn graph6_k1_and_k2() {
        let g = parse_graph6_line("@").unwrap();
        assert_eq!(g.n(), 1);
        assert_eq!(g.edge_count(), 0);

        // 'A' encodes n = 2; '_' = 0x5f - 63 = 32 = 0b100000, so bit (0,1) is set
        let g = parse_graph6_line("A_").unwrap();
        assert_eq!(g, complete_graph(2));
    }

    #[test]
    fn graph6_d_brace_round_trip() {
        // hand-decode: 'D' -> n = 5; '?' -> 000000; '{' -> 111100
        // pair order: (0,1) (0,2) (1,2) (0,3) (1,3) (2,3) | (0,4) (1,4) (2,4) (3,4) ..
        // so the edges are exactly (0,4), (1,4), (2,4), (3,4): the star K_{1,4}
        let g = parse_graph6_line("D?{").unwrap();
        assert_eq!(g.n(), 5);
        let expect = Graph::from_edges(5, &[(0, 4), (1, 4), (2, 4), (3, 4)]).unwrap();
        assert_eq!(g, expect);
        assert_eq!(encode_graph6(&g), "D?{");
    }

    #[test]
    fn graph6_header_and_multiline() {
        let gs = parse_graph6(">>graph6<<\n@\nA_\n\nD?{\n").unwrap();
        assert_eq!(gs.len(), 3);
        assert_eq!(gs[1], complete_graph(2));
    }

    #[test]
    fn graph6_errors() {
        assert!(matches!(
            parse_graph6("D?"),
            Err(ParseError::Graph6BadLength { line: 1, n: 5, got: 1, need: 2 })
        ));
        assert!(matches!(parse_graph6("D?\u{7f}"), Err(ParseError::Graph6BadByte { .. })));
    }

    /// Independent reference decoder: bit-at-a-time over the whole record,
    /// used to cross-check the production decoder.
    fn reference_decode(line: &str) -> Graph {
        let bytes = line.as_bytes();
        let n = (bytes[0] - 63) as usize;
        let mut all_bits = Vec::new();
        for &b in &bytes[1..] {
            let v = b - 63;
            for k in (0..6).rev() {
                all_bits.push((v >> k) & 1 == 1);
            }
        }
        let mut g = Graph::empty(n);
        let mut idx = 0;
        for j in 1..n {
            for i in 0..j {
                if all_bits[idx] {
                    g.insert_edge(i, j);
                }
                idx += 1;
            }
        }
        g
    }

    #[test]
    fn graph6_round_trip_random() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let n = rng.gen_range(0..=12);
            let mut g = Graph::empty(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(0.5) {
                        g.insert_edge(u, v);
                    }
                }
            }
            let enc = encode_graph6(&g);
            let dec = parse_graph6_line(&enc).unwrap();
            assert_eq!(dec, g);
            if n >= 1 {
                assert_eq!(reference_decode(&enc), g);
            }
        }
    }
}
