//! graph6, DIMACS and plain edge-list ingestion and emission.

use crate::error::{Error, Result};
use crate::graph::Graph;

const GRAPH6_HEADER: &str = ">>graph6<<";
const GRAPH6_BIAS: u8 = 63;

/// Encodes `g` as a single graph6 line (no header, no newline).
pub fn to_graph6(g: &Graph) -> String {
    let n = g.n();
    let mut out = Vec::new();
    if n <= 62 {
        out.push(GRAPH6_BIAS + n as u8);
    } else if n <= 258_047 {
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(GRAPH6_BIAS + ((n >> shift) & 0x3f) as u8);
        }
    } else {
        out.extend(*b"~~");
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(GRAPH6_BIAS + ((n >> shift) & 0x3f) as u8);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(GRAPH6_BIAS + acc);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push(GRAPH6_BIAS + (acc << (6 - filled)));
    }
    String::from_utf8(out).expect("graph6 is printable ASCII")
}

/// Parses one graph6 line. An optional `>>graph6<<` header and surrounding
/// whitespace are accepted; nonzero padding bits are ignored.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    parse_graph6_line(text, 1)
}

pub(crate) fn parse_graph6_line(text: &str, line: usize) -> Result<Graph> {
    let trimmed = text.trim();
    let lead = text.len() - text.trim_start().len();
    let (body, mut offset) = match trimmed.strip_prefix(GRAPH6_HEADER) {
        Some(rest) => (rest.as_bytes(), lead + GRAPH6_HEADER.len()),
        None => (trimmed.as_bytes(), lead),
    };
    if body.is_empty() {
        return Err(Error::parse(line, offset, "empty input"));
    }
    let sextet = |i: usize| -> Result<u64> {
        match body.get(i) {
            Some(&c) if (63..=126).contains(&c) => Ok((c - GRAPH6_BIAS) as u64),
            Some(&c) => Err(Error::parse(
                line,
                offset + i,
                format!("byte {c:#04x} outside the graph6 range 63..=126"),
            )),
            None => Err(Error::parse(
                line,
                offset + i,
                "truncated vertex-count header",
            )),
        }
    };
    let (n, header_len) = if body[0] != b'~' {
        (sextet(0)? as usize, 1)
    } else if body.get(1) != Some(&b'~') {
        let n = (1..4).try_fold(0u64, |acc, i| Ok::<_, Error>((acc << 6) | sextet(i)?))?;
        (n as usize, 4)
    } else {
        let n = (2..8).try_fold(0u64, |acc, i| Ok::<_, Error>((acc << 6) | sextet(i)?))?;
        (n as usize, 8)
    };
    let payload = &body[header_len..];
    offset += header_len;
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if payload.len() < need {
        return Err(Error::parse(
            line,
            offset + payload.len(),
            format!(
                "truncated payload: {need} bytes expected for n = {n}, found {}",
                payload.len()
            ),
        ));
    }
    if payload.len() > need {
        return Err(Error::parse(
            line,
            offset + need,
            "trailing bytes after payload",
        ));
    }
    if let Some(i) = payload.iter().position(|c| !(63..=126).contains(c)) {
        return Err(Error::parse(
            line,
            offset + i,
            format!("byte {:#04x} outside the graph6 range 63..=126", payload[i]),
        ));
    }
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = payload[k / 6] - GRAPH6_BIAS;
            if byte >> (5 - k % 6) & 1 == 1 {
                g.add_edge(i, j);
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Parses either a plain edge list (first token `n`, then `u v` pairs, `#`
/// comments) or DIMACS (`p edge n m` / `e u v`, 1-based, `c` comments).
/// Duplicate edges collapse.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let is_dimacs = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('c') && !l.starts_with('#'))
        .is_some_and(|l| l.starts_with("p "));
    if is_dimacs {
        parse_dimacs(text)
    } else {
        parse_plain(text)
    }
}

fn number(tok: &str, line: usize, offset: usize) -> Result<usize> {
    tok.parse().map_err(|_| {
        Error::parse(
            line,
            offset,
            format!("expected a vertex index, found {tok:?}"),
        )
    })
}

/// Splits a line into tokens with their byte offsets in the whole text.
fn tokens(line: &str, base: usize) -> impl Iterator<Item = (usize, &str)> {
    line.split_whitespace()
        .map(move |t| (base + (t.as_ptr() as usize - line.as_ptr() as usize), t))
}

fn parse_plain(text: &str) -> Result<Graph> {
    let mut g: Option<Graph> = None;
    let mut pending: Option<usize> = None;
    let mut base = 0;
    for (lineno, raw) in text.split_inclusive('\n').enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        for (off, tok) in tokens(line, base) {
            let x = number(tok, lineno + 1, off)?;
            match (&mut g, pending) {
                (None, _) => g = Some(Graph::empty(x)),
                (Some(_), None) => pending = Some(x),
                (Some(graph), Some(u)) => {
                    add_checked(graph, u, x, lineno + 1, off)?;
                    pending = None;
                }
            }
        }
        base += raw.len();
    }
    if pending.is_some() {
        return Err(Error::parse(
            text.lines().count(),
            text.len(),
            "dangling endpoint",
        ));
    }
    g.ok_or_else(|| Error::parse(1, 0, "empty input"))
}

fn add_checked(g: &mut Graph, u: usize, v: usize, line: usize, offset: usize) -> Result<()> {
    let n = g.n();
    if u >= n || v >= n {
        return Err(Error::parse(
            line,
            offset,
            format!("edge {u}-{v}: index out of range for n = {n}"),
        ));
    }
    if u == v {
        return Err(Error::parse(line, offset, format!("self-loop at {u}")));
    }
    g.add_edge(u, v);
    Ok(())
}

fn parse_dimacs(text: &str) -> Result<Graph> {
    let mut g: Option<Graph> = None;
    let mut base = 0;
    for (lineno, raw) in text.split_inclusive('\n').enumerate() {
        let line_no = lineno + 1;
        let toks: Vec<(usize, &str)> = tokens(raw, base).collect();
        base += raw.len();
        match toks.first().map(|t| t.1) {
            None | Some("c") => {}
            Some("p") => {
                if g.is_some() {
                    return Err(Error::parse(line_no, toks[0].0, "duplicate problem line"));
                }
                let (off, tok) = *toks.get(2).ok_or_else(|| {
                    Error::parse(line_no, toks[0].0, "problem line needs `p edge n m`")
                })?;
                let n = number(tok, line_no, off)?;
                let labels = (1..=n).map(|i| i.to_string()).collect();
                g = Some(Graph::empty(n).with_labels(labels));
            }
            Some("e") => {
                let graph = g
                    .as_mut()
                    .ok_or_else(|| Error::parse(line_no, toks[0].0, "edge before problem line"))?;
                if toks.len() < 3 {
                    return Err(Error::parse(
                        line_no,
                        toks[0].0,
                        "edge line needs two endpoints",
                    ));
                }
                let u = number(toks[1].1, line_no, toks[1].0)?;
                let v = number(toks[2].1, line_no, toks[2].0)?;
                if u == 0 || v == 0 {
                    return Err(Error::parse(
                        line_no,
                        toks[1].0,
                        "DIMACS vertices are 1-based",
                    ));
                }
                add_checked(graph, u - 1, v - 1, line_no, toks[1].0)?;
            }
            Some(other) => {
                return Err(Error::parse(
                    line_no,
                    toks[0].0,
                    format!("unknown line type {other:?}"),
                ))
            }
        }
    }
    g.ok_or_else(|| Error::parse(1, 0, "missing problem line"))
}

/// Plain edge-list rendering accepted by [`parse_edge_list`].
pub fn to_edge_list(g: &Graph) -> String {
    let mut s = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::*;
    use proptest::prelude::*;

    #[test]
    fn graph6_reference_strings() {
        // Reference encodings produced by an external graph6 codec.
        assert_eq!(to_graph6(&cycle(5)), "Dhc");
        assert_eq!(to_graph6(&complete(1)), "@");
        assert_eq!(to_graph6(&complete(4)), "C~");
        assert_eq!(to_graph6(&petersen()), "IheA@GUAo");
        assert_eq!(to_graph6(&cycle(7).complement()), "FUzro");
        assert!(to_graph6(&path(70)).starts_with("~?@EhCGGC@?G"));
    }

    #[test]
    fn graph6_parse_examples() {
        let k1 = parse_graph6("@").unwrap();
        assert_eq!((k1.n(), k1.edge_count()), (1, 0));
        assert_eq!(parse_graph6("Dhc\n").unwrap(), cycle(5));
        assert_eq!(parse_graph6(">>graph6<<Dhc").unwrap(), cycle(5));
        assert_eq!(parse_graph6(&to_graph6(&path(70))).unwrap(), path(70));
    }

    #[test]
    fn graph6_errors_carry_offsets() {
        assert!(matches!(
            parse_graph6(""),
            Err(Error::Parse { offset: 0, .. })
        ));
        // D = 5 vertices needs 2 payload bytes.
        assert!(matches!(
            parse_graph6("Dh"),
            Err(Error::Parse { offset: 2, .. })
        ));
        assert!(matches!(
            parse_graph6("D h"),
            Err(Error::Parse { offset: 1, .. })
        ));
        assert!(matches!(
            parse_graph6("Dhcc"),
            Err(Error::Parse { offset: 3, .. })
        ));
        assert!(matches!(
            parse_graph6("~?"),
            Err(Error::Parse { offset: 2, .. })
        ));
    }

    #[test]
    fn nonzero_padding_is_canonicalised() {
        // "Dhc" ends with 4 padding bits; set one.
        let g = parse_graph6("Dhd").unwrap();
        assert_eq!(g, cycle(5));
        assert_eq!(to_graph6(&g), "Dhc");
    }

    #[test]
    fn edge_list_examples() {
        assert_eq!(parse_edge_list("2\n0 1").unwrap(), complete(2));
        assert_eq!(
            parse_edge_list("5\n0 1\n1 2\n2 3\n3 4\n4 0").unwrap(),
            cycle(5)
        );
        assert_eq!(parse_edge_list("3\n0 1\n1 0\n0 1").unwrap().edge_count(), 1);
        let err = parse_edge_list("3\n0 3").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, .. }), "{err}");
        assert!(err.to_string().contains("out of range"));
        assert!(parse_edge_list("3\n1 1").is_err());
        assert!(parse_edge_list("3\n0 x").is_err());
        assert!(parse_edge_list("3\n0").is_err());
        assert!(parse_edge_list("").is_err());
    }

    #[test]
    fn dimacs_examples() {
        let text = "c five-cycle\np edge 5 5\ne 1 2\ne 2 3\ne 3 4\ne 4 5\ne 5 1\n";
        let g = parse_edge_list(text).unwrap();
        assert_eq!(g, cycle(5));
        assert_eq!(g.labels().unwrap()[0], "1");
        assert!(parse_edge_list("p edge 2 1\ne 0 1\n").is_err());
        assert!(parse_edge_list("p edge 2 1\ne 1 3\n").is_err());
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
        (0..=max_n).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(
                move |bits| {
                    let mut g = Graph::empty(n);
                    let mut k = 0;
                    for j in 1..n {
                        for i in 0..j {
                            if bits[k] {
                                g.add_edge(i, j);
                            }
                            k += 1;
                        }
                    }
                    g
                },
            )
        })
    }

    proptest! {
        #[test]
        fn graph6_round_trip(g in arb_graph(8)) {
            prop_assert_eq!(parse_graph6(&to_graph6(&g)).unwrap(), g);
        }

        #[test]
        fn edge_list_round_trip(g in arb_graph(12)) {
            prop_assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g);
        }
    }
}
