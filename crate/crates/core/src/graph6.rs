//! graph6 text encoding.
//!
//! Size header: one byte `n + 63` for `n <= 62`, otherwise `126` followed by
//! three bytes holding `n` in big-endian 6-bit groups. The body lists the
//! upper triangle column by column, `x(0,1), x(0,2), x(1,2), x(0,3), ...`,
//! packed six bits per byte (first bit most significant), zero padded, each
//! byte offset by 63.

use crate::error::{Result, TuranError};
use crate::graph::{SmallGraph, MAX_ORDER};

pub fn encode(g: &SmallGraph) -> Result<String> {
    let n = g.order();
    let mut out = Vec::with_capacity(4 + (n * n.saturating_sub(1) / 2).div_ceil(6));
    if n <= 62 {
        out.push(n as u8 + 63);
    } else {
        out.push(126);
        out.push(((n >> 12) & 63) as u8 + 63);
        out.push(((n >> 6) & 63) as u8 + 63);
        out.push((n & 63) as u8 + 63);
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
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
    Ok(String::from_utf8(out).expect("graph6 bytes are ascii"))
}

pub fn decode(s: &str) -> Result<SmallGraph> {
    let bytes = s.trim_end_matches(['\n', '\r']).as_bytes();
    let bad = |msg: String| TuranError::Graph6(msg);
    if let Some(pos) = bytes.iter().position(|b| !(63..=126).contains(b)) {
        return Err(bad(format!("byte {} at offset {pos} outside 63..=126", bytes[pos])));
    }
    let (n, body) = match bytes.first() {
        None => return Err(bad("empty string".into())),
        Some(&126) => {
            if bytes.len() < 4 {
                return Err(bad("truncated size header".into()));
            }
            if bytes[1] == 126 {
                return Err(bad("eight-byte size header unsupported".into()));
            }
            let n = ((bytes[1] - 63) as usize) << 12
                | ((bytes[2] - 63) as usize) << 6
                | (bytes[3] - 63) as usize;
            (n, &bytes[4..])
        }
        Some(&b) => ((b - 63) as usize, &bytes[1..]),
    };
    if n > MAX_ORDER {
        return Err(TuranError::CapacityExceeded {
            needed: n,
            capacity: MAX_ORDER,
        });
    }
    let nbits = n * n.saturating_sub(1) / 2;
    let need = nbits.div_ceil(6);
    if body.len() != need {
        return Err(bad(format!(
            "expected {need} body bytes for n={n}, found {}",
            body.len()
        )));
    }
    let pad = need * 6 - nbits;
    if pad > 0 && (body[need - 1] - 63) & ((1 << pad) - 1) != 0 {
        return Err(bad("nonzero padding bits".into()));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let byte = body[k / 6] - 63;
            if byte >> (5 - k % 6) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    SmallGraph::from_edges(n, &edges)
}
