//! graph6 text encoding (short form only, `n <= 62`).
//!
//! Layout: one byte `n + 63`, then the upper triangle of the adjacency
//! matrix in column order (`x(0,1), x(0,2), x(1,2), x(0,3), ...`), packed
//! big-endian into 6-bit groups, each offset by 63.

use super::{Graph, GraphError};

pub const MAX_SHORT_ORDER: usize = 62;

const OFFSET: u8 = 63;
const HEADER: &str = ">>graph6<<";

fn err(msg: impl Into<String>) -> GraphError {
    GraphError::Graph6(msg.into())
}

pub fn parse_graph6(line: &str) -> Result<Graph, GraphError> {
    let line = line.trim_end_matches(['\n', '\r']);
    let line = line.strip_prefix(HEADER).unwrap_or(line);
    let bytes = line.as_bytes();
    if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
        return Err(err(format!("invalid character {:?}", b as char)));
    }
    let (&first, body) = bytes.split_first().ok_or_else(|| err("empty line"))?;
    if first == 126 {
        return Err(err("long-form order (n > 62) is not supported"));
    }
    let n = (first - OFFSET) as usize;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = bits.div_ceil(6);
    if body.len() != expected {
        return Err(err(format!(
            "order {n} needs {expected} data bytes, found {}",
            body.len()
        )));
    }

    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            let chunk = body[k / 6] - OFFSET;
            if chunk & (1 << (5 - k % 6)) != 0 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edge_list(n, &edges)
}

pub fn encode_graph6(g: &Graph) -> Result<String, GraphError> {
    let n = g.n();
    if n > MAX_SHORT_ORDER {
        return Err(err(format!(
            "order {n} exceeds the short-form limit {MAX_SHORT_ORDER}"
        )));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let mut data = vec![0u8; bits.div_ceil(6)];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(i, j) {
                data[k / 6] |= 1 << (5 - k % 6);
            }
            k += 1;
        }
    }
    let mut out = String::with_capacity(1 + data.len());
    out.push((n as u8 + OFFSET) as char);
    out.extend(data.into_iter().map(|b| (b + OFFSET) as char));
    Ok(out)
}
