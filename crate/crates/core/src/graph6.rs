//! The graph6 text format.

use crate::error::{Error, Result};
use crate::graph::{Graph, MAX_VERTICES};

const HEADER: &str = ">>graph6<<";

/// Encodes a graph as a graph6 string without header or trailing newline.
pub fn encode(g: &Graph) -> String {
    let n = g.n();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 2..=n {
        for i in 1..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    String::from_utf8(out).expect("graph6 is ASCII")
}

/// Decodes a single graph6 string. Surrounding whitespace and an optional `>>graph6<<`
/// header are accepted.
pub fn decode(s: &str) -> Result<Graph> {
    let s = s.trim();
    let s = s.strip_prefix(HEADER).unwrap_or(s);
    let bytes = s.as_bytes();
    let err = |pos: usize, msg: &str| Error::Parse {
        pos,
        msg: msg.to_string(),
    };
    if bytes.is_empty() {
        return Err(err(0, "empty graph6 string"));
    }
    if let Some(p) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(err(p, "character outside the graph6 range"));
    }
    let (n, mut pos) = if bytes[0] == 126 {
        if bytes.len() >= 2 && bytes[1] == 126 {
            return Err(err(1, "eight-byte size prefix is not supported"));
        }
        if bytes.len() < 4 {
            return Err(err(bytes.len(), "truncated size prefix"));
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| (acc << 6) | (b - 63) as usize);
        (n, 4)
    } else {
        ((bytes[0] - 63) as usize, 1)
    };
    if n > MAX_VERTICES {
        return Err(Error::TooManyVertices {
            n,
            limit: MAX_VERTICES,
        });
    }
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if bytes.len() - pos != need {
        return Err(err(
            pos,
            &format!(
                "expected {need} data bytes for {n} vertices, found {}",
                bytes.len() - pos
            ),
        ));
    }
    let mut g = Graph::empty(n)?;
    let mut k = 0;
    let mut cur = 0u8;
    for j in 2..=n {
        for i in 1..j {
            if k % 6 == 0 {
                cur = bytes[pos] - 63;
                pos += 1;
            }
            if (cur >> (5 - k % 6)) & 1 == 1 {
                g.add_edge(i, j)?;
            }
            k += 1;
        }
    }
    if bits % 6 != 0 {
        let pad = 6 - bits % 6;
        if cur & ((1 << pad) - 1) != 0 {
            return Err(err(pos - 1, "non-zero padding bits"));
        }
    }
    Ok(g)
}
