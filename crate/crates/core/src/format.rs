//! Text formats: digraph6, graph6 and a plain edge list.
//!
//! digraph6 is `&`, then the order `N(n)`, then the full `n x n` adjacency
//! matrix in row-major order packed six bits per byte (big-endian within each
//! byte, offset by 63, zero padded). graph6 is the same encoding of the upper
//! triangle taken column by column, without the `&` header.

use crate::digraph::Digraph;
use crate::error::{Error, Result};

fn encode_order(n: usize, out: &mut String) {
    if n <= 62 {
        out.push((n as u8 + 63) as char);
    } else if n <= 258_047 {
        out.push('~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift & 0x3f) as u8 + 63) as char);
        }
    } else {
        out.push_str("~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift & 0x3f) as u8 + 63) as char);
        }
    }
}

fn sextet(bytes: &[u8], pos: usize) -> Result<usize> {
    match bytes.get(pos) {
        Some(&b) if (63..=126).contains(&b) => Ok((b - 63) as usize),
        Some(&b) => Err(Error::parse(pos, format!("byte {b:#04x} is outside the printable range 63..=126"))),
        None => Err(Error::parse(pos, "unexpected end of input")),
    }
}

/// Returns `(n, offset of the first data byte)`.
fn decode_order(bytes: &[u8], start: usize) -> Result<(usize, usize)> {
    if bytes.get(start) != Some(&b'~') {
        return Ok((sextet(bytes, start)?, start + 1));
    }
    if bytes.get(start + 1) != Some(&b'~') {
        let mut n = 0;
        for i in 0..3 {
            n = n << 6 | sextet(bytes, start + 1 + i)?;
        }
        return Ok((n, start + 4));
    }
    let mut n = 0;
    for i in 0..6 {
        n = n << 6 | sextet(bytes, start + 2 + i)?;
    }
    Ok((n, start + 8))
}

fn pack_bits(bits: impl Iterator<Item = bool>, out: &mut String) {
    let mut acc = 0u8;
    let mut filled = 0;
    for b in bits {
        acc = acc << 1 | b as u8;
        filled += 1;
        if filled == 6 {
            out.push((acc + 63) as char);
            acc = 0;
            filled = 0;
        }
    }
    if filled > 0 {
        out.push(((acc << (6 - filled)) + 63) as char);
    }
}

/// Reads `count` bits starting at byte `start`; the trailing padding must be zero.
fn unpack_bits(bytes: &[u8], start: usize, count: usize) -> Result<Vec<bool>> {
    let nbytes = count.div_ceil(6);
    if bytes.len() != start + nbytes {
        return Err(Error::parse(
            bytes.len().min(start + nbytes),
            format!("expected {nbytes} data bytes, found {}", bytes.len().saturating_sub(start)),
        ));
    }
    let mut bits = Vec::with_capacity(nbytes * 6);
    for i in 0..nbytes {
        let s = sextet(bytes, start + i)?;
        for k in (0..6).rev() {
            bits.push(s >> k & 1 == 1);
        }
    }
    if bits[count..].iter().any(|&b| b) {
        return Err(Error::parse(start + nbytes - 1, "nonzero padding bits"));
    }
    bits.truncate(count);
    Ok(bits)
}

pub fn to_digraph6(d: &Digraph) -> String {
    let n = d.order();
    let mut s = String::from("&");
    encode_order(n, &mut s);
    pack_bits((0..n).flat_map(|u| (0..n).map(move |v| d.has_arc(u, v))), &mut s);
    s
}

pub fn from_digraph6(line: &str) -> Result<Digraph> {
    let bytes = line.trim_end_matches(['\n', '\r']).as_bytes();
    if bytes.first() != Some(&b'&') {
        return Err(Error::parse(0, "digraph6 strings start with '&'"));
    }
    let (n, start) = decode_order(bytes, 1)?;
    if n == 0 {
        return Err(Error::parse(1, "order must be at least 1"));
    }
    let bits = unpack_bits(bytes, start, n * n)?;
    let mut d = Digraph::empty(n);
    for u in 0..n {
        if bits[u * n + u] {
            return Err(Error::parse(start + (u * n + u) / 6, format!("loop at vertex {u}")));
        }
        for v in 0..n {
            if bits[u * n + v] {
                d.add_arc(u, v);
            }
        }
    }
    Ok(d)
}

/// Writes a symmetric digraph as graph6.
pub fn to_graph6(d: &Digraph) -> Result<String> {
    if !d.is_symmetric() {
        return Err(Error::Precondition("graph6 encodes symmetric digraphs only".into()));
    }
    let n = d.order();
    let mut s = String::new();
    encode_order(n, &mut s);
    pack_bits((1..n).flat_map(|j| (0..j).map(move |i| d.has_arc(i, j))), &mut s);
    Ok(s)
}

/// Reads graph6 into a symmetric digraph. An optional `>>graph6<<` header is accepted.
pub fn from_graph6(line: &str) -> Result<Digraph> {
    let line = line.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    let bytes = line.as_bytes();
    let (n, start) = decode_order(bytes, 0)?;
    if n == 0 {
        return Err(Error::parse(0, "order must be at least 1"));
    }
    let bits = unpack_bits(bytes, start, n * (n - 1) / 2)?;
    let mut d = Digraph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bits[k] {
                d.add_arc(i, j);
                d.add_arc(j, i);
            }
            k += 1;
        }
    }
    Ok(d)
}

/// Result of reading an edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeListParse {
    pub digraph: Digraph,
    pub undirected: bool,
    /// Pairs that repeated an arc (or edge) already read.
    pub duplicates: usize,
}

/// Parses `n <count> directed|undirected` followed by one `u v` pair per line.
///
/// `#` starts a comment. Byte positions in errors are offsets into `text`.
pub fn parse_edge_list(text: &str) -> Result<EdgeListParse> {
    let mut header: Option<(usize, bool)> = None;
    let mut pairs = Vec::new();
    let mut offset = 0;
    for raw in text.split_inclusive('\n') {
        let line_start = offset;
        offset += raw.len();
        let content = raw.split('#').next().unwrap_or("");
        let tokens: Vec<&str> = content.split_whitespace().collect();
        if tokens.is_empty() {
            continue;
        }
        let pos_of = |tok: &str| line_start + (tok.as_ptr() as usize - raw.as_ptr() as usize);
        match header {
            None => {
                if tokens.len() != 3 || tokens[0] != "n" {
                    return Err(Error::parse(line_start, "expected header `n <count> directed|undirected`"));
                }
                let n: usize = tokens[1]
                    .parse()
                    .map_err(|_| Error::parse(pos_of(tokens[1]), "vertex count is not an integer"))?;
                let undirected = match tokens[2] {
                    "directed" => false,
                    "undirected" => true,
                    other => {
                        return Err(Error::parse(
                            pos_of(tokens[2]),
                            format!("expected `directed` or `undirected`, found `{other}`"),
                        ))
                    }
                };
                header = Some((n, undirected));
            }
            Some(_) => {
                if tokens.len() != 2 {
                    return Err(Error::parse(line_start, "expected a `u v` pair"));
                }
                let mut p = [0usize; 2];
                for (slot, tok) in p.iter_mut().zip(&tokens) {
                    *slot = tok
                        .parse()
                        .map_err(|_| Error::parse(pos_of(tok), format!("`{tok}` is not a vertex label")))?;
                }
                pairs.push((p[0], p[1]));
            }
        }
    }
    let (n, undirected) = header.ok_or_else(|| Error::parse(0, "missing header line"))?;
    let (digraph, duplicates) = if undirected {
        Digraph::from_undirected_edge_list_counting(n, &pairs)?
    } else {
        Digraph::from_edge_list_counting(n, &pairs)?
    };
    Ok(EdgeListParse {
        digraph,
        undirected,
        duplicates,
    })
}

/// Writes an edge list. Symmetric digraphs may be written as undirected edges.
pub fn to_edge_list(d: &Digraph, undirected: bool) -> Result<String> {
    if undirected && !d.is_symmetric() {
        return Err(Error::Precondition("undirected edge lists need a symmetric digraph".into()));
    }
    let kind = if undirected { "undirected" } else { "directed" };
    let mut s = format!("n {} {kind}\n", d.order());
    for (u, v) in d.arcs() {
        if !undirected || u < v {
            s.push_str(&format!("{u} {v}\n"));
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn digraph6_known_strings() {
        // Directed triangle 0->1->2->0: matrix 010 001 100 -> bits 010001100 + 000 padding.
        // Sextets 010001 = 17 -> 'P', 100000 = 32 -> '_'.
        let c3 = Digraph::from_edge_list(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(to_digraph6(&c3), "&BP_");
        assert_eq!(from_digraph6("&BP_").unwrap(), c3);
        // One vertex still carries its single (zero) diagonal bit.
        assert_eq!(to_digraph6(&Digraph::empty(1)), "&@?");
    }

    #[test]
    fn graph6_known_strings() {
        // Path a-c, a-e, b-d, d-e on five vertices, as in the usual graph6 example.
        let g = Digraph::from_undirected_edge_list(5, &[(0, 2), (0, 4), (1, 3), (3, 4)]).unwrap();
        assert_eq!(to_graph6(&g).unwrap(), "DQc");
        assert_eq!(from_graph6("DQc").unwrap(), g);
        assert_eq!(from_graph6(">>graph6<<DQc").unwrap(), g);
    }

    #[test]
    fn large_order_header() {
        let n = 70;
        let pairs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let d = Digraph::from_edge_list(n, &pairs).unwrap();
        let s = to_digraph6(&d);
        assert!(s.starts_with("&~"));
        assert_eq!(from_digraph6(&s).unwrap(), d);
    }

    #[test]
    fn digraph6_errors_carry_positions() {
        assert!(matches!(from_digraph6("BP_"), Err(Error::Parse { pos: 0, .. })));
        assert!(matches!(from_digraph6("&BP"), Err(Error::Parse { .. })));
        assert!(matches!(from_digraph6("&BP`"), Err(Error::Parse { pos: 3, .. })));
        // Loop at vertex 0: first bit set.
        assert!(matches!(from_digraph6("&B~_"), Err(Error::Parse { .. })));
        assert!(matches!(from_digraph6("&BP_ "), Err(Error::Parse { .. })));
    }

    #[test]
    fn edge_list_parse() {
        let text = "# triangle\nn 3 directed\n0 1\n1 2 # back\n2 0\n0 1\n";
        let p = parse_edge_list(text).unwrap();
        assert_eq!(p.digraph.size(), 3);
        assert_eq!(p.duplicates, 1);
        assert!(!p.undirected);
        let back = to_edge_list(&p.digraph, false).unwrap();
        assert_eq!(parse_edge_list(&back).unwrap().digraph, p.digraph);
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(parse_edge_list("n 3 sideways\n"), Err(Error::Parse { pos: 4, .. })));
        assert!(matches!(parse_edge_list("n 3 directed\n0 x\n"), Err(Error::Parse { pos: 15, .. })));
        assert!(matches!(parse_edge_list("n 3 directed\n1 1\n"), Err(Error::Loop { u: 1 })));
        assert!(matches!(parse_edge_list(""), Err(Error::Parse { pos: 0, .. })));
    }

    #[test]
    fn undirected_edge_list_roundtrip() {
        let g = Digraph::from_undirected_edge_list(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let text = to_edge_list(&g, true).unwrap();
        assert_eq!(text, "n 4 undirected\n0 1\n1 2\n2 3\n");
        let p = parse_edge_list(&text).unwrap();
        assert!(p.undirected);
        assert_eq!(p.digraph, g);
    }
}
