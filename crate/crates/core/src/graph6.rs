//! graph6 encoding, short form only (`n <= 62`).
//!
//! Layout: one header byte `n + 63`, then the upper triangle of the adjacency
//! matrix in column order `x(0,1), x(0,2), x(1,2), x(0,3), ...`, packed six
//! bits per byte (most significant first), zero padded, each byte offset by 63.

use crate::graph::Graph;

pub const MAX_SHORT_ORDER: usize = 62;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum Graph6Error {
    #[error("empty graph6 string")]
    Empty,
    #[error("byte {offset}: character {byte:#04x} outside the printable range 63..=126")]
    BadChar { offset: usize, byte: u8 },
    #[error("byte 0: long-form header (n > {MAX_SHORT_ORDER}) is not supported")]
    LongForm,
    #[error("byte {offset}: expected {expected} bytes for n = {n}, found {found}")]
    Length {
        offset: usize,
        n: usize,
        expected: usize,
        found: usize,
    },
    #[error("byte {offset}: nonzero padding bits")]
    Padding { offset: usize },
    #[error("graph on {0} vertices exceeds the short-form limit of {MAX_SHORT_ORDER}")]
    UnsupportedSize(usize),
}

fn body_len(n: usize) -> usize {
    (n * n.saturating_sub(1) / 2).div_ceil(6)
}

pub fn parse_graph6(text: &str) -> Result<Graph, Graph6Error> {
    let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
    let (&header, body) = bytes.split_first().ok_or(Graph6Error::Empty)?;
    for (offset, &byte) in bytes.iter().enumerate() {
        if !(63..=126).contains(&byte) {
            return Err(Graph6Error::BadChar { offset, byte });
        }
    }
    if header == 126 {
        return Err(Graph6Error::LongForm);
    }
    let n = usize::from(header - 63);
    let expected = body_len(n);
    if body.len() != expected {
        return Err(Graph6Error::Length {
            offset: 1 + body.len().min(expected),
            n,
            expected: 1 + expected,
            found: bytes.len(),
        });
    }
    let total_bits = n * n.saturating_sub(1) / 2;
    let bit = |idx: usize| (body[idx / 6] - 63) >> (5 - idx % 6) & 1 == 1;
    let mut edges = Vec::new();
    let mut idx = 0;
    for v in 1..n {
        for u in 0..v {
            if bit(idx) {
                edges.push((u, v));
            }
            idx += 1;
        }
    }
    for pad in total_bits..expected * 6 {
        if bit(pad) {
            return Err(Graph6Error::Padding {
                offset: 1 + pad / 6,
            });
        }
    }
    Ok(Graph::new(n, edges).expect("upper-triangle bits give a simple graph"))
}

pub fn to_graph6(g: &Graph) -> Result<String, Graph6Error> {
    let n = g.n();
    if n > MAX_SHORT_ORDER {
        return Err(Graph6Error::UnsupportedSize(n));
    }
    let mut body = vec![0u8; body_len(n)];
    let mut idx = 0;
    for v in 1..n {
        for u in 0..v {
            if g.has_edge(u, v) {
                body[idx / 6] |= 1 << (5 - idx % 6);
            }
            idx += 1;
        }
    }
    let mut out = String::with_capacity(1 + body.len());
    out.push(char::from(n as u8 + 63));
    out.extend(body.into_iter().map(|b| char::from(b + 63)));
    Ok(out)
}
