//! graph6 and plain edge-list formats.
//!
//! Both formats describe graphs on `0..n`; writers compact labels first.

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};

const HEADER: &str = ">>graph6<<";

fn size_bytes(n: usize, out: &mut Vec<u8>) {
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
}

/// Encodes `g` (relabelled to `0..n` in label order) as a graph6 line
/// without header or trailing newline.
pub fn to_graph6(g: &Graph) -> String {
    let (g, _) = g.compact();
    let n = g.order();
    let mut out = Vec::new();
    size_bytes(n, &mut out);
    let mut acc = 0u8;
    let mut nbits = 0;
    for j in 1..n {
        for i in 0..j {
            acc <<= 1;
            if g.has_edge(VertexId(i as u32), VertexId(j as u32)) {
                acc |= 1;
            }
            nbits += 1;
            if nbits == 6 {
                out.push(acc + 63);
                acc = 0;
                nbits = 0;
            }
        }
    }
    if nbits > 0 {
        out.push((acc << (6 - nbits)) + 63);
    }
    String::from_utf8(out).expect("graph6 bytes are printable ASCII")
}

/// Decodes one graph6 line. A leading `>>graph6<<` header and surrounding
/// whitespace are accepted.
pub fn from_graph6(line: &str) -> Result<Graph> {
    let line = line.trim();
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Error::Parse("empty graph6 string".into()));
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Error::Parse(format!("byte {b} outside graph6 range")));
    }
    let (n, rest) = if bytes[0] != 126 {
        (bytes[0] as usize - 63, &bytes[1..])
    } else if bytes.len() >= 2 && bytes[1] != 126 {
        if bytes.len() < 4 {
            return Err(Error::Parse("truncated graph6 size".into()));
        }
        let n = bytes[1..4].iter().fold(0usize, |a, &b| (a << 6) | (b as usize - 63));
        (n, &bytes[4..])
    } else {
        if bytes.len() < 8 {
            return Err(Error::Parse("truncated graph6 size".into()));
        }
        let n = bytes[2..8].iter().fold(0usize, |a, &b| (a << 6) | (b as usize - 63));
        (n, &bytes[8..])
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if rest.len() != need {
        return Err(Error::Parse(format!(
            "graph6 body has {} bytes, expected {need} for n={n}",
            rest.len()
        )));
    }
    let mut g = Graph::with_vertices(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = rest[k / 6] - 63;
            if byte & (1 << (5 - k % 6)) != 0 {
                g.add_edge(VertexId(i as u32), VertexId(j as u32))?;
            }
            k += 1;
        }
    }
    Ok(g)
}

/// Reads every non-empty graph6 line of a stream.
pub fn read_graph6_lines(text: &str) -> Result<Vec<Graph>> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && *l != HEADER)
        .map(from_graph6)
        .collect()
}

/// `"n m"` followed by one `"u v"` line per edge, 0-based.
pub fn to_edge_list(g: &Graph) -> String {
    let (g, _) = g.compact();
    let mut s = format!("{} {}\n", g.order(), g.size());
    for e in g.edges() {
        s.push_str(&format!("{} {}\n", e.u(), e.v()));
    }
    s
}

pub fn from_edge_list(text: &str) -> Result<Graph> {
    let mut nums = text.split_whitespace().map(|t| {
        t.parse::<u32>()
            .map_err(|_| Error::Parse(format!("not a non-negative integer: {t:?}")))
    });
    let mut next = |what: &str| -> Result<u32> {
        nums.next()
            .unwrap_or_else(|| Err(Error::Parse(format!("missing {what}"))))
    };
    let n = next("vertex count")?;
    let m = next("edge count")?;
    let mut g = Graph::with_vertices(n as usize);
    for i in 0..m {
        let u = next(&format!("edge {i}"))?;
        let v = next(&format!("edge {i}"))?;
        if u >= n || v >= n {
            return Err(Error::Parse(format!("edge {u} {v} out of range for n={n}")));
        }
        g.add_edge(VertexId(u), VertexId(v))?;
    }
    if nums.next().is_some() {
        return Err(Error::Parse("trailing tokens after edge list".into()));
    }
    Ok(g)
}
