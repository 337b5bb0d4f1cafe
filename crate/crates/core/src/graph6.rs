//! graph6 text encoding (one graph per line).
//!
//! The order is written as one byte `n + 63` for `n <= 62`, or `~` followed
//! by three 6-bit groups for larger orders. The upper triangle is then packed
//! column by column (`x(0,1), x(0,2), x(1,2), x(0,3), ...`) six bits to a byte,
//! zero padded, each byte offset by 63.

use std::io::BufRead;

use thiserror::Error;

use crate::graph::Graph;

/// Largest order accepted by [`decode`].
pub const MAX_ORDER: usize = 4096;

const HEADER: &str = ">>graph6<<";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Graph6Error {
    #[error("empty graph6 line")]
    Empty,
    #[error("byte {0:#04x} outside the printable graph6 range")]
    BadByte(u8),
    #[error("malformed order header")]
    BadHeader,
    #[error("order {0} exceeds the supported maximum of {MAX_ORDER}")]
    TooLarge(usize),
    #[error("expected {expected} data bytes, found {found}")]
    Length { expected: usize, found: usize },
    #[error("nonzero padding bits")]
    Padding,
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<Graph6Error>,
    },
    #[error("read failed: {0}")]
    Io(String),
}

pub fn encode(g: &Graph) -> String {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        assert!(n <= 258_047, "graph6 order {n} not supported");
        out.push(b'~');
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 0x3f) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = acc << 1 | g.has_edge(i, j) as u8;
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

pub fn decode(line: &str) -> Result<Graph, Graph6Error> {
    let line = line.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if bytes.is_empty() {
        return Err(Graph6Error::Empty);
    }
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(Graph6Error::BadByte(b));
    }
    let (n, body) = if bytes[0] != b'~' {
        ((bytes[0] - 63) as usize, &bytes[1..])
    } else {
        if bytes.len() < 4 || bytes[1] == b'~' {
            return Err(Graph6Error::BadHeader);
        }
        let n = bytes[1..4]
            .iter()
            .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
        if n < 63 {
            return Err(Graph6Error::BadHeader);
        }
        (n, &bytes[4..])
    };
    if n > MAX_ORDER {
        return Err(Graph6Error::TooLarge(n));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(Graph6Error::Length {
            expected,
            found: body.len(),
        });
    }
    let bit = |k: usize| (body[k / 6] - 63) >> (5 - k % 6) & 1 == 1;
    if (bits..expected * 6).any(bit) {
        return Err(Graph6Error::Padding);
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Ok(Graph::from_edges(n, edges).expect("decoded edges are simple"))
}

/// Reads a corpus: one graph per nonblank line.
pub fn read_corpus<R: BufRead>(reader: R) -> Result<Vec<Graph>, Graph6Error> {
    let mut out = Vec::new();
    for (idx, line) in reader.lines().enumerate() {
        let line = line.map_err(|e| Graph6Error::Io(e.to_string()))?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        out.push(decode(trimmed).map_err(|e| Graph6Error::AtLine {
            line: idx + 1,
            source: Box::new(e),
        })?);
    }
    Ok(out)
}

pub fn write_corpus<'a, I>(graphs: I) -> String
where
    I: IntoIterator<Item = &'a Graph>,
{
    graphs.into_iter().fold(String::new(), |mut s, g| {
        s.push_str(&encode(g));
        s.push('\n');
        s
    })
}
