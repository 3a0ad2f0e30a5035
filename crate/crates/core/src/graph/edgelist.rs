//! Plain edge-list text: a header line `n m` followed by `m` lines `u v`.
//! Blank lines and lines starting with `#` are ignored.

use super::{Graph, GraphError};

fn err(msg: impl Into<String>) -> GraphError {
    GraphError::EdgeList(msg.into())
}

fn parse_pair(line: &str, lineno: usize) -> Result<(usize, usize), GraphError> {
    let mut it = line.split_whitespace().map(str::parse::<usize>);
    match (it.next(), it.next(), it.next()) {
        (Some(Ok(a)), Some(Ok(b)), None) => Ok((a, b)),
        _ => Err(err(format!(
            "line {lineno}: expected two integers, got {line:?}"
        ))),
    }
}

pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (lineno, header) = lines.next().ok_or_else(|| err("missing header line"))?;
    let (n, m) = parse_pair(header, lineno)?;
    let edges = lines
        .map(|(i, l)| parse_pair(l, i))
        .collect::<Result<Vec<_>, _>>()?;
    if edges.len() != m {
        return Err(err(format!(
            "header announces {m} edges, found {}",
            edges.len()
        )));
    }
    Graph::from_edge_list(n, &edges)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::cycle;

    #[test]
    fn round_trip() {
        let g = cycle(5);
        assert_eq!(parse_edge_list(&write_edge_list(&g)).unwrap(), g);
    }

    #[test]
    fn errors() {
        assert!(parse_edge_list("").is_err());
        assert!(parse_edge_list("3 2\n0 1\n").is_err());
        assert!(parse_edge_list("3 1\n0 x\n").is_err());
        assert_eq!(parse_edge_list("3 1\n1 1\n"), Err(GraphError::SelfLoop(1)));
    }

    #[test]
    fn comments_are_skipped() {
        let g = parse_edge_list("# a path\n3 2\n0 1\n\n1 2\n").unwrap();
        assert_eq!(g.m(), 2);
    }
}
