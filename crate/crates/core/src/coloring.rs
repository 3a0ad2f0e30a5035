//! Vertex colorings and conflict-free vertex-connectivity checks.
//!
//! A path is conflict-free when some color occurs on exactly one of its
//! vertices. [`exists_cf_path`] decides whether a pair admits such a path in
//! polynomial time: for a color `c` and a vertex `w` of color `c`, delete
//! every other `c`-colored vertex and ask for a `u`-`v` path through `w`.
//! [`exists_cf_path_naive`] enumerates all simple paths instead and serves
//! as the independent oracle.

use std::fmt::Write as _;

use serde::Serialize;
use thiserror::Error;

use crate::graph::paths::{is_simple_path, path_through_masked, shortest_path};
use crate::graph::Graph;

/// Default vertex cap for the path-enumeration oracle.
pub const NAIVE_CAP: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ColoringError {
    #[error("coloring has {coloring} entries but the graph has {graph} vertices")]
    SizeMismatch { graph: usize, coloring: usize },
    #[error("vertex {vertex} has color {color}, outside 1..={k}")]
    ColorOutOfRange {
        vertex: usize,
        color: usize,
        k: usize,
    },
    #[error("vertex sequence is not a simple path")]
    NonSimplePath,
    #[error("endpoints must be distinct (both are {0})")]
    SameEndpoints(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("path enumeration is capped at {cap} vertices, graph has {n}")]
    CapExceeded { n: usize, cap: usize },
    #[error("coloring file: {0}")]
    Parse(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct VertexColoring {
    colors: Vec<usize>,
    k: usize,
}

impl VertexColoring {
    pub fn new(colors: Vec<usize>, k: usize) -> Result<Self, ColoringError> {
        if let Some((vertex, &color)) = colors.iter().enumerate().find(|(_, &c)| c == 0 || c > k) {
            return Err(ColoringError::ColorOutOfRange { vertex, color, k });
        }
        Ok(VertexColoring { colors, k })
    }

    /// Uses the largest color as `k`.
    pub fn from_colors(colors: Vec<usize>) -> Result<Self, ColoringError> {
        let k = colors.iter().copied().max().unwrap_or(1);
        Self::new(colors, k)
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Number of distinct colors actually used.
    pub fn used_colors(&self) -> usize {
        let mut seen = vec![false; self.k + 1];
        self.colors
            .iter()
            .filter(|&&c| !std::mem::replace(&mut seen[c], true))
            .count()
    }

    /// Text form: `k` on the first line, then `vertex color` per line.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.k);
        for (v, c) in self.colors.iter().enumerate() {
            let _ = writeln!(out, "{v} {c}");
        }
        out
    }

    pub fn parse_text(text: &str) -> Result<Self, ColoringError> {
        let bad = |m: String| ColoringError::Parse(m);
        let mut lines = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'));
        let k: usize = lines
            .next()
            .ok_or_else(|| bad("missing color count".into()))?
            .parse()
            .map_err(|_| bad("first line must be the color count".into()))?;
        let mut entries = Vec::new();
        for line in lines {
            let nums: Vec<usize> = line
                .split_whitespace()
                .map(str::parse)
                .collect::<Result<_, _>>()
                .map_err(|_| bad(format!("bad line {line:?}")))?;
            match nums[..] {
                [v, c] => entries.push((v, c)),
                _ => return Err(bad(format!("expected `vertex color`, got {line:?}"))),
            }
        }
        let mut colors = vec![0; entries.len()];
        for (v, c) in entries {
            if v >= colors.len() || colors[v] != 0 {
                return Err(bad(format!("vertex {v} missing, repeated or out of range")));
            }
            colors[v] = c;
        }
        Self::new(colors, k)
    }

    fn check_against(&self, g: &Graph) -> Result<(), ColoringError> {
        if self.colors.len() != g.n() {
            return Err(ColoringError::SizeMismatch {
                graph: g.n(),
                coloring: self.colors.len(),
            });
        }
        Ok(())
    }
}

/// A conflict-free path joining `u` and `v`, with the color used once on it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub u: usize,
    pub v: usize,
    pub path: Vec<usize>,
    pub color: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CfvcCertificate {
    pub verdict: bool,
    pub witnesses: Vec<Witness>,
    pub failure: Option<(usize, usize)>,
}

impl CfvcCertificate {
    /// Re-checks every witness against the graph and coloring from scratch.
    pub fn revalidate(&self, g: &Graph, coloring: &VertexColoring) -> bool {
        let pairs = g.n() * g.n().saturating_sub(1) / 2;
        if self.verdict != self.failure.is_none() || (self.verdict && self.witnesses.len() != pairs)
        {
            return false;
        }
        let distinct: std::collections::BTreeSet<_> = self
            .witnesses
            .iter()
            .map(|w| (w.u.min(w.v), w.u.max(w.v)))
            .collect();
        if distinct.len() != self.witnesses.len() {
            return false;
        }
        self.witnesses.iter().all(|w| {
            w.u != w.v
                && is_simple_path(g, &w.path)
                && w.path.first() == Some(&w.u)
                && w.path.last() == Some(&w.v)
                && w.path
                    .iter()
                    .filter(|&&x| coloring.color(x) == w.color)
                    .count()
                    == 1
        })
    }
}

/// Smallest color occurring exactly once on `seq`, if any.
fn unique_color(colors: &[usize], seq: &[usize]) -> Option<usize> {
    let max = seq.iter().map(|&x| colors[x]).max()?;
    let mut count = vec![0u32; max + 1];
    for &x in seq {
        count[colors[x]] += 1;
    }
    count.iter().position(|&c| c == 1)
}

pub fn is_conflict_free_path(
    coloring: &VertexColoring,
    path: &[usize],
) -> Result<bool, ColoringError> {
    let mut seen = vec![false; coloring.len()];
    for &x in path {
        if x >= coloring.len() || std::mem::replace(&mut seen[x], true) {
            return Err(ColoringError::NonSimplePath);
        }
    }
    Ok(unique_color(coloring.colors(), path).is_some())
}

/// Reusable checker for one graph. Trees are handled through their unique
/// paths; other graphs go through the blocked-vertex flow test.
pub struct Verifier<'g> {
    g: &'g Graph,
    tree: Option<TreeIndex>,
    pairs: Vec<(usize, usize)>,
    /// Index into `pairs` of the last failing pair, tried first next time.
    hint: usize,
}

struct TreeIndex {
    parent: Vec<usize>,
    depth: Vec<usize>,
}

impl TreeIndex {
    fn new(g: &Graph) -> Self {
        let order = g.bfs_order(0);
        let mut parent = vec![usize::MAX; g.n()];
        let mut depth = vec![0; g.n()];
        for &x in &order {
            for &y in g.neighbors(x) {
                if y != 0 && parent[y] == usize::MAX {
                    parent[y] = x;
                    depth[y] = depth[x] + 1;
                }
            }
        }
        TreeIndex { parent, depth }
    }

    fn path(&self, mut u: usize, mut v: usize) -> Vec<usize> {
        let mut head = Vec::new();
        let mut tail = Vec::new();
        while u != v {
            if self.depth[u] >= self.depth[v] {
                head.push(u);
                u = self.parent[u];
            } else {
                tail.push(v);
                v = self.parent[v];
            }
        }
        head.push(u);
        head.extend(tail.into_iter().rev());
        head
    }
}

/// Pairs `u < v` ordered by distance, then by `(u, v)`, so the first
/// failure reported is a closest one.
fn pairs_by_distance(g: &Graph) -> Vec<(usize, usize)> {
    let n = g.n();
    let mut keyed = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for u in 0..n {
        let dist = g.bfs_distances(u);
        for (v, d) in dist.iter().enumerate().skip(u + 1) {
            keyed.push((d.unwrap_or(usize::MAX), u, v));
        }
    }
    keyed.sort_unstable();
    keyed.into_iter().map(|(_, u, v)| (u, v)).collect()
}

impl<'g> Verifier<'g> {
    pub fn new(g: &'g Graph) -> Self {
        Verifier {
            g,
            tree: g.is_tree().then(|| TreeIndex::new(g)),
            pairs: pairs_by_distance(g),
            hint: 0,
        }
    }

    pub fn graph(&self) -> &Graph {
        self.g
    }

    /// Conflict-free `u`-`v` path and its unique color, scanning colors in
    /// ascending order and candidate vertices by ascending id.
    pub fn cf_path(&self, colors: &[usize], u: usize, v: usize) -> Option<(Vec<usize>, usize)> {
        if let Some(tree) = &self.tree {
            let path = tree.path(u, v);
            return unique_color(colors, &path).map(|c| (path, c));
        }
        let g = self.g;
        let n = g.n();
        let max_color = colors.iter().copied().max().unwrap_or(0);
        let mut blocked = vec![false; n];
        for c in 1..=max_color {
            let (cu, cv) = (colors[u] == c, colors[v] == c);
            if cu && cv {
                continue;
            }
            let candidates: Vec<usize> = if cu {
                vec![u]
            } else if cv {
                vec![v]
            } else {
                (0..n).filter(|&x| colors[x] == c).collect()
            };
            for w in candidates {
                for x in 0..n {
                    blocked[x] = colors[x] == c && x != w;
                }
                let found = if w == u || w == v {
                    shortest_path(g, u, v, Some(&blocked))
                } else {
                    path_through_masked(g, u, v, w, Some(&blocked))
                };
                if let Some(path) = found {
                    return Some((path, c));
                }
            }
        }
        None
    }

    pub(crate) fn pair_ok(&self, colors: &[usize], u: usize, v: usize) -> bool {
        if colors[u] != colors[v] && self.g.has_edge(u, v) {
            return true;
        }
        self.cf_path(colors, u, v).is_some()
    }

    /// Verdict only; cheaper than building a certificate.
    pub fn is_cfvc(&mut self, colors: &[usize]) -> bool {
        if self.tree.is_some() {
            return tree_all_pairs(self.g, colors);
        }
        let total = self.pairs.len();
        for i in 0..total {
            let idx = (self.hint + i) % total;
            let (u, v) = self.pairs[idx];
            if !self.pair_ok(colors, u, v) {
                self.hint = idx;
                return false;
            }
        }
        true
    }

    pub fn certificate(&self, colors: &[usize]) -> CfvcCertificate {
        let mut witnesses = Vec::with_capacity(self.pairs.len());
        for &(u, v) in &self.pairs {
            match self.cf_path(colors, u, v) {
                Some((path, color)) => witnesses.push(Witness { u, v, path, color }),
                None => {
                    return CfvcCertificate {
                        verdict: false,
                        witnesses: Vec::new(),
                        failure: Some((u, v)),
                    }
                }
            }
        }
        CfvcCertificate {
            verdict: true,
            witnesses,
            failure: None,
        }
    }
}

/// All-pairs check on a tree: DFS from every vertex tracking color counts.
fn tree_all_pairs(g: &Graph, colors: &[usize]) -> bool {
    let n = g.n();
    let max = colors.iter().copied().max().unwrap_or(0);
    let mut count = vec![0u32; max + 1];
    for root in 0..n {
        let mut singles = 0usize;
        // (vertex, parent, next neighbor index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        count[colors[root]] += 1;
        singles += 1;
        while let Some(&mut (x, parent, ref mut idx)) = stack.last_mut() {
            if let Some(&y) = g.neighbors(x).get(*idx) {
                *idx += 1;
                if y == parent {
                    continue;
                }
                let c = colors[y];
                count[c] += 1;
                match count[c] {
                    1 => singles += 1,
                    2 => singles -= 1,
                    _ => {}
                }
                if singles == 0 && y > root {
                    count.iter_mut().for_each(|c| *c = 0);
                    return false;
                }
                stack.push((y, x, 0));
            } else {
                let c = colors[x];
                match count[c] {
                    1 => singles -= 1,
                    2 => singles += 1,
                    _ => {}
                }
                count[c] -= 1;
                stack.pop();
            }
        }
    }
    true
}

fn check_pair(g: &Graph, u: usize, v: usize) -> Result<(), ColoringError> {
    for x in [u, v] {
        if x >= g.n() {
            return Err(ColoringError::VertexOutOfRange {
                vertex: x,
                n: g.n(),
            });
        }
    }
    if u == v {
        return Err(ColoringError::SameEndpoints(u));
    }
    Ok(())
}

pub fn exists_cf_path(
    g: &Graph,
    coloring: &VertexColoring,
    u: usize,
    v: usize,
) -> Result<Option<(Vec<usize>, usize)>, ColoringError> {
    coloring.check_against(g)?;
    check_pair(g, u, v)?;
    Ok(Verifier::new(g).cf_path(coloring.colors(), u, v))
}

pub fn is_cfvc(g: &Graph, coloring: &VertexColoring) -> Result<CfvcCertificate, ColoringError> {
    coloring.check_against(g)?;
    if !g.is_connected() {
        return Err(ColoringError::Disconnected);
    }
    Ok(Verifier::new(g).certificate(coloring.colors()))
}

/// Exhaustive backtracking over simple `u`-`v` paths.
pub fn exists_cf_path_naive(
    g: &Graph,
    coloring: &VertexColoring,
    u: usize,
    v: usize,
) -> Result<Option<(Vec<usize>, usize)>, ColoringError> {
    exists_cf_path_naive_capped(g, coloring, u, v, NAIVE_CAP)
}

pub fn exists_cf_path_naive_capped(
    g: &Graph,
    coloring: &VertexColoring,
    u: usize,
    v: usize,
    cap: usize,
) -> Result<Option<(Vec<usize>, usize)>, ColoringError> {
    coloring.check_against(g)?;
    if g.n() > cap {
        return Err(ColoringError::CapExceeded { n: g.n(), cap });
    }
    check_pair(g, u, v)?;

    struct Search<'a> {
        g: &'a Graph,
        colors: &'a [usize],
        target: usize,
        on_path: Vec<bool>,
        path: Vec<usize>,
        count: Vec<u32>,
    }

    impl Search<'_> {
        fn dfs(&mut self, x: usize) -> Option<usize> {
            if x == self.target {
                return self.count.iter().position(|&c| c == 1);
            }
            for &y in self.g.neighbors(x) {
                if self.on_path[y] {
                    continue;
                }
                self.on_path[y] = true;
                self.path.push(y);
                self.count[self.colors[y]] += 1;
                if let Some(c) = self.dfs(y) {
                    return Some(c);
                }
                self.count[self.colors[y]] -= 1;
                self.path.pop();
                self.on_path[y] = false;
            }
            None
        }
    }

    let colors = coloring.colors();
    let mut s = Search {
        g,
        colors,
        target: v,
        on_path: vec![false; g.n()],
        path: vec![u],
        count: vec![0; coloring.k() + 1],
    };
    s.on_path[u] = true;
    s.count[colors[u]] += 1;
    Ok(s.dfs(u).map(|c| (s.path, c)))
}

/// Verdict of the path-enumeration oracle over all pairs.
pub fn is_cfvc_naive(g: &Graph, coloring: &VertexColoring) -> Result<bool, ColoringError> {
    let n = g.n();
    for u in 0..n {
        for v in (u + 1)..n {
            if exists_cf_path_naive(g, coloring, u, v)?.is_none() {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{complete, cycle, path, random_connected, random_tree};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn col(c: &[usize]) -> VertexColoring {
        VertexColoring::from_colors(c.to_vec()).unwrap()
    }

    #[test]
    fn path_predicate() {
        assert!(is_conflict_free_path(&col(&[1, 2, 1]), &[0, 1, 2]).unwrap());
        assert!(!is_conflict_free_path(&col(&[1, 1]), &[0, 1]).unwrap());
        assert!(is_conflict_free_path(&col(&[1]), &[0]).unwrap());
        assert_eq!(
            is_conflict_free_path(&col(&[1, 2, 1]), &[0, 1, 0]),
            Err(ColoringError::NonSimplePath)
        );
    }

    #[test]
    fn cf_path_examples() {
        let (p, c) = exists_cf_path(&path(3), &col(&[1, 2, 1]), 0, 2)
            .unwrap()
            .unwrap();
        assert_eq!((p, c), (vec![0, 1, 2], 2));
        assert_eq!(
            exists_cf_path(&cycle(4), &col(&[1, 1, 1, 1]), 0, 1).unwrap(),
            None
        );
        let c5 = cycle(5);
        let lemma = col(&[2, 1, 1, 1, 1]);
        for u in 0..5 {
            for v in (u + 1)..5 {
                let (p, _) = exists_cf_path(&c5, &lemma, u, v).unwrap().unwrap();
                assert!(is_conflict_free_path(&lemma, &p).unwrap());
                if u != 0 {
                    assert!(p.contains(&0));
                }
            }
        }
        assert_eq!(
            exists_cf_path(&path(3), &col(&[1, 2, 1]), 1, 1),
            Err(ColoringError::SameEndpoints(1))
        );
    }

    #[test]
    fn certificate_examples() {
        let cert = is_cfvc(&path(4), &col(&[1, 2, 2, 1])).unwrap();
        assert!(!cert.verdict);
        assert_eq!(cert.failure, Some((1, 2)));

        let ruler = col(&[1, 2, 1, 3, 1, 2, 1]);
        let cert = is_cfvc(&path(7), &ruler).unwrap();
        assert!(cert.verdict);
        assert!(cert.revalidate(&path(7), &ruler));

        let cert = is_cfvc(&Graph::empty(1), &col(&[1])).unwrap();
        assert!(cert.verdict && cert.witnesses.is_empty());

        assert_eq!(
            is_cfvc(&path(3), &col(&[1, 2])),
            Err(ColoringError::SizeMismatch {
                graph: 3,
                coloring: 2
            })
        );
    }

    #[test]
    fn naive_examples() {
        assert_eq!(
            exists_cf_path_naive(&path(3), &col(&[1, 1, 1]), 0, 2).unwrap(),
            None
        );
        let (p, c) = exists_cf_path_naive(&complete(3), &col(&[1, 1, 2]), 0, 1)
            .unwrap()
            .unwrap();
        assert_eq!((p, c), (vec![0, 2, 1], 2));
        assert_eq!(
            exists_cf_path_naive(
                &path(11),
                &VertexColoring::from_colors(vec![1; 11]).unwrap(),
                0,
                1
            ),
            Err(ColoringError::CapExceeded {
                n: 11,
                cap: NAIVE_CAP
            })
        );
    }

    #[test]
    fn all_distinct_always_works() {
        for seed in 0..30 {
            let g = random_connected(8, 0.2, seed);
            let c = VertexColoring::from_colors((1..=8).collect()).unwrap();
            assert!(is_cfvc(&g, &c).unwrap().verdict);
        }
    }

    #[test]
    fn tree_fast_path_matches_flow_route() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for seed in 0..100 {
            let t = random_tree(9, seed);
            let colors: Vec<usize> = (0..9).map(|_| rng.gen_range(1..=3)).collect();
            let mut tree_verifier = Verifier::new(&t);
            // the same graph with the tree index disabled
            let general = Verifier {
                tree: None,
                ..Verifier::new(&t)
            };
            let by_tree = tree_verifier.is_cfvc(&colors);
            let by_flow = general.certificate(&colors).verdict;
            assert_eq!(by_tree, by_flow, "{t:?} {colors:?}");
        }
    }

    #[test]
    fn text_format() {
        let c = col(&[1, 2, 1, 3]);
        assert_eq!(VertexColoring::parse_text(&c.to_text()).unwrap(), c);
        assert!(VertexColoring::parse_text("2\n0 1\n0 2\n").is_err());
        assert!(VertexColoring::parse_text("2\n0 3\n").is_err());
        assert!(VertexColoring::parse_text("").is_err());
        assert_eq!(c.used_colors(), 3);
    }

    #[test]
    fn refinement_keeps_witnesses() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for seed in 0..100 {
            let g = random_connected(8, 0.2, seed);
            let colors: Vec<usize> = (0..8).map(|_| rng.gen_range(1..=3)).collect();
            let coarse = VertexColoring::new(colors.clone(), 3).unwrap();
            let cert = is_cfvc(&g, &coarse).unwrap();
            if !cert.verdict {
                continue;
            }
            // split color 1: odd-numbered vertices of that class get color 4
            let fine: Vec<usize> = colors
                .iter()
                .enumerate()
                .map(|(v, &c)| if c == 1 && v % 2 == 1 { 4 } else { c })
                .collect();
            let fine = VertexColoring::new(fine, 4).unwrap();
            for w in &cert.witnesses {
                assert!(is_conflict_free_path(&fine, &w.path).unwrap());
            }
            assert!(is_cfvc(&g, &fine).unwrap().verdict);
        }
    }
}
