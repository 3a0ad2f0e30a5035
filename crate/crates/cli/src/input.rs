use std::fs::File;
use std::io::{self, BufRead, BufReader, Read};

use anyhow::{bail, Context, Result};
use vcfc::graph::edgelist::parse_edge_list;
use vcfc::graph::generate::Family;
use vcfc::graph::graph6::parse_graph6;
use vcfc::Graph;

use crate::args::{Common, Format};

/// One input graph. `graph` holds the parse error for malformed lines.
pub struct Item {
    pub id: usize,
    pub graph: std::result::Result<Graph, String>,
}

pub type Items = Box<dyn Iterator<Item = Item>>;

pub fn family(spec: &str, seed: Option<u64>) -> Result<Family> {
    let mut family: Family = spec
        .parse()
        .with_context(|| format!("generator {spec:?}"))?;
    if let (Family::RandomTree { seed: s, .. }, Some(seed)) = (&mut family, seed) {
        if spec.split_whitespace().count() == 2 {
            *s = seed;
        }
    }
    Ok(family)
}

fn reader(common: &Common) -> Result<Box<dyn BufRead>> {
    Ok(match &common.input {
        Some(path) => Box::new(BufReader::new(
            File::open(path).with_context(|| format!("cannot open {}", path.display()))?,
        )),
        None => Box::new(BufReader::new(io::stdin())),
    })
}

/// Graphs from `--gen`, or from `--input`/stdin in the selected format.
pub fn items(common: &Common) -> Result<Items> {
    if let Some(spec) = &common.generator {
        let graphs = family(spec, common.seed)?.graphs()?;
        return Ok(Box::new(graphs.enumerate().map(|(i, g)| Item {
            id: i + 1,
            graph: Ok(g),
        })));
    }
    let mut input = reader(common)?;
    match common.format {
        Format::Edgelist => {
            let mut text = String::new();
            input
                .read_to_string(&mut text)
                .context("cannot read input")?;
            let graph = parse_edge_list(&text).map_err(|e| e.to_string());
            Ok(Box::new(std::iter::once(Item { id: 1, graph })))
        }
        Format::G6 => Ok(Box::new(input.lines().enumerate().filter_map(
            |(i, line)| {
                let graph = match line {
                    Ok(l) if l.trim().is_empty() => return None,
                    Ok(l) => parse_graph6(l.trim()).map_err(|e| e.to_string()),
                    Err(e) => Err(e.to_string()),
                };
                Some(Item { id: i + 1, graph })
            },
        ))),
    }
}

/// Exactly one graph from the input.
pub fn single(common: &Common) -> Result<Graph> {
    let mut it = items(common)?;
    let Some(first) = it.next() else {
        bail!("input holds no graph")
    };
    if it.next().is_some() {
        bail!("expected a single graph");
    }
    first
        .graph
        .map_err(|e| anyhow::anyhow!("graph {}: {e}", first.id))
}

pub fn read_file(path: &std::path::Path) -> Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}
