//! Graph families: paths, cycles, complete graphs, stars, coronas, seeded
//! random trees and graphs, and exhaustive enumerators.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::canon::{canonical_form, tree_code};
use super::{Graph, GraphError};

/// Largest order accepted by [`AllConnected`].
pub const MAX_ENUMERATION_ORDER: usize = 7;

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edge_list(n, &edges).expect("path edges are valid")
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3, "a cycle needs at least 3 vertices");
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edge_list(n, &edges).expect("cycle edges are valid")
}

pub fn complete(n: usize) -> Graph {
    let edges: Vec<_> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    Graph::from_edge_list(n, &edges).expect("complete edges are valid")
}

/// The star `K_{1,leaves}`; vertex 0 is the center.
pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
    Graph::from_edge_list(leaves + 1, &edges).expect("star edges are valid")
}

/// Attaches `t` pendant vertices to every vertex of `base`. The pendants of
/// base vertex `i` are `n + i*t .. n + (i+1)*t`.
pub fn corona(base: &Graph, t: usize) -> Graph {
    let n = base.n();
    let mut edges: Vec<_> = base.edges().collect();
    for i in 0..n {
        for j in 0..t {
            edges.push((i, n + i * t + j));
        }
    }
    Graph::from_edge_list(n * (t + 1), &edges).expect("corona edges are valid")
}

/// Decodes a Prüfer sequence over `0..seq.len()+2`.
pub fn tree_from_pruefer(seq: &[usize]) -> Graph {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let leaf = (0..n)
            .find(|&v| degree[v] == 1)
            .expect("a leaf always exists");
        edges.push((leaf, x));
        degree[leaf] = 0;
        degree[x] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::from_edge_list(n, &edges).expect("Prüfer decoding yields a tree")
}

/// Uniformly random labeled tree on `n` vertices.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    match n {
        0 | 1 => Graph::empty(n),
        2 => path(2),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            tree_from_pruefer(&seq)
        }
    }
}

/// Erdős–Rényi `G(n, p)`.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, &edges).expect("random edges are valid")
}

/// A random spanning tree plus every remaining pair independently with
/// probability `p`. Always connected.
pub fn random_connected(n: usize, p: f64, seed: u64) -> Graph {
    let tree = random_tree(n, seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut edges: Vec<_> = tree.edges().collect();
    for u in 0..n {
        for v in (u + 1)..n {
            if !tree.has_edge(u, v) && rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edge_list(n, &edges).expect("random edges are valid")
}

/// Every labeled connected graph on `n` vertices, optionally keeping only
/// the first representative of each isomorphism class.
pub struct AllConnected {
    n: usize,
    pairs: Vec<(usize, usize)>,
    next_mask: u64,
    end_mask: u64,
    seen: Option<HashSet<super::canon::CanonicalForm>>,
}

impl AllConnected {
    pub fn new(n: usize, dedup: bool) -> Result<Self, GraphError> {
        if n > MAX_ENUMERATION_ORDER {
            return Err(GraphError::InvalidParams(format!(
                "all_connected supports n <= {MAX_ENUMERATION_ORDER}, got {n}"
            )));
        }
        let pairs: Vec<_> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        Ok(AllConnected {
            n,
            end_mask: 1u64 << pairs.len(),
            pairs,
            next_mask: 0,
            seen: dedup.then(HashSet::new),
        })
    }

    fn connected(&self, mask: u64) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut adj = [0u16; MAX_ENUMERATION_ORDER];
        for (k, &(u, v)) in self.pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
        let mut reached: u16 = 1;
        let mut frontier: u16 = 1;
        while frontier != 0 {
            let mut next = 0u16;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[v];
            }
            frontier = next & !reached;
            reached |= next;
        }
        reached.count_ones() as usize == self.n
    }
}

impl Iterator for AllConnected {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        while self.next_mask < self.end_mask {
            let mask = self.next_mask;
            self.next_mask += 1;
            if !self.connected(mask) {
                continue;
            }
            let edges: Vec<_> = self
                .pairs
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            let g = Graph::from_edge_list(self.n, &edges).expect("enumerated edges are valid");
            if let Some(seen) = &mut self.seen {
                if !seen.insert(canonical_form(&g)) {
                    continue;
                }
            }
            return Some(g);
        }
        None
    }
}

/// One representative of every unlabeled tree on `n` vertices.
pub fn all_trees(n: usize) -> Vec<Graph> {
    if n == 0 {
        return Vec::new();
    }
    let mut level = vec![Graph::empty(1)];
    for size in 2..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for t in &level {
            for v in 0..t.n() {
                let mut edges: Vec<_> = t.edges().collect();
                edges.push((v, size - 1));
                let grown = Graph::from_edge_list(size, &edges).expect("leaf extension is valid");
                if seen.insert(tree_code(&grown)) {
                    next.push(grown);
                }
            }
        }
        level = next;
    }
    level
}

/// A named family with its parameters, parsed from specs like `path 7`,
/// `corona 4 2` or `random_tree 10 42`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    /// `K_{1,t}`; the parameter is the number of leaves.
    Star(usize),
    /// `t`-corona of the cycle `C_n`.
    CycleCorona {
        n: usize,
        t: usize,
    },
    RandomTree {
        n: usize,
        seed: u64,
    },
    AllConnected {
        n: usize,
        dedup: bool,
    },
    AllTrees(usize),
}

impl Family {
    pub fn validate(&self) -> Result<(), GraphError> {
        let bad = |m: &str| Err(GraphError::InvalidParams(m.to_string()));
        match *self {
            Family::Path(n) | Family::Complete(n) if n == 0 => bad("order must be at least 1"),
            Family::Cycle(n) if n < 3 => bad("a cycle needs n >= 3"),
            Family::CycleCorona { n, t } if n < 3 || t == 0 => {
                bad("corona needs n >= 3 and t >= 1")
            }
            Family::RandomTree { n, .. } | Family::AllTrees(n) if n == 0 => {
                bad("order must be at least 1")
            }
            Family::AllConnected { n, .. } if n > MAX_ENUMERATION_ORDER => {
                bad("all_connected supports n <= 7")
            }
            _ => Ok(()),
        }
    }

    /// Streams the family's graphs (one graph for the single-graph families).
    pub fn graphs(&self) -> Result<Box<dyn Iterator<Item = Graph>>, GraphError> {
        self.validate()?;
        let one = |g: Graph| -> Box<dyn Iterator<Item = Graph>> { Box::new(std::iter::once(g)) };
        Ok(match *self {
            Family::Path(n) => one(path(n)),
            Family::Cycle(n) => one(cycle(n)),
            Family::Complete(n) => one(complete(n)),
            Family::Star(t) => one(star(t)),
            Family::CycleCorona { n, t } => one(corona(&cycle(n), t)),
            Family::RandomTree { n, seed } => one(random_tree(n, seed)),
            Family::AllConnected { n, dedup } => Box::new(AllConnected::new(n, dedup)?),
            Family::AllTrees(n) => Box::new(all_trees(n).into_iter()),
        })
    }
}

impl FromStr for Family {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let words: Vec<&str> = s.split_whitespace().collect();
        let bad = || GraphError::InvalidParams(format!("cannot parse family spec {s:?}"));
        let num = |i: usize| -> Result<u64, GraphError> {
            words.get(i).ok_or_else(bad)?.parse().map_err(|_| bad())
        };
        let arity = |k: usize| {
            if words.len() == k + 1 {
                Ok(())
            } else {
                Err(bad())
            }
        };
        let family = match *words.first().ok_or_else(bad)? {
            "path" => arity(1).and(Ok(Family::Path(num(1)? as usize)))?,
            "cycle" => arity(1).and(Ok(Family::Cycle(num(1)? as usize)))?,
            "complete" => arity(1).and(Ok(Family::Complete(num(1)? as usize)))?,
            "star" => arity(1).and(Ok(Family::Star(num(1)? as usize)))?,
            "corona" => arity(2).and(Ok(Family::CycleCorona {
                n: num(1)? as usize,
                t: num(2)? as usize,
            }))?,
            "random_tree" => {
                if words.len() != 2 && words.len() != 3 {
                    return Err(bad());
                }
                Family::RandomTree {
                    n: num(1)? as usize,
                    seed: if words.len() == 3 { num(2)? } else { 0 },
                }
            }
            "all_connected" => match words.get(2) {
                None => Family::AllConnected {
                    n: num(1)? as usize,
                    dedup: false,
                },
                Some(&"dedup") if words.len() == 3 => Family::AllConnected {
                    n: num(1)? as usize,
                    dedup: true,
                },
                _ => return Err(bad()),
            },
            "trees" => arity(1).and(Ok(Family::AllTrees(num(1)? as usize)))?,
            _ => return Err(bad()),
        };
        family.validate()?;
        Ok(family)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Path(n) => write!(f, "path {n}"),
            Family::Cycle(n) => write!(f, "cycle {n}"),
            Family::Complete(n) => write!(f, "complete {n}"),
            Family::Star(t) => write!(f, "star {t}"),
            Family::CycleCorona { n, t } => write!(f, "corona {n} {t}"),
            Family::RandomTree { n, seed } => write!(f, "random_tree {n} {seed}"),
            Family::AllConnected { n, dedup: false } => write!(f, "all_connected {n}"),
            Family::AllConnected { n, dedup: true } => write!(f, "all_connected {n} dedup"),
            Family::AllTrees(n) => write!(f, "trees {n}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Brute-force count over all `2^(n choose 2)` labeled graphs, using a
    /// union-find connectivity check.
    fn brute_connected_count(n: usize) -> usize {
        let pairs: Vec<_> = (0..n)
            .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
            .collect();
        let mut count = 0;
        for mask in 0u32..(1 << pairs.len()) {
            let mut parent: Vec<usize> = (0..n).collect();
            fn find(p: &mut [usize], x: usize) -> usize {
                if p[x] == x {
                    x
                } else {
                    let r = find(p, p[x]);
                    p[x] = r;
                    r
                }
            }
            for (k, &(u, v)) in pairs.iter().enumerate() {
                if mask >> k & 1 == 1 {
                    let (a, b) = (find(&mut parent, u), find(&mut parent, v));
                    parent[a] = b;
                }
            }
            let root = find(&mut parent, 0);
            if (0..n).all(|v| find(&mut parent, v) == root) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn labeled_connected_counts() {
        assert_eq!(brute_connected_count(4), 38);
        for n in 1..=5 {
            assert_eq!(
                AllConnected::new(n, false).unwrap().count(),
                brute_connected_count(n),
                "n = {n}"
            );
        }
        assert_eq!(AllConnected::new(4, false).unwrap().count(), 38);
    }

    #[test]
    fn unlabeled_counts() {
        // OEIS A001349 and A000055.
        let graphs: Vec<usize> = (1..=6)
            .map(|n| AllConnected::new(n, true).unwrap().count())
            .collect();
        assert_eq!(graphs, vec![1, 1, 2, 6, 21, 112]);
        let trees: Vec<usize> = (1..=11).map(|n| all_trees(n).len()).collect();
        assert_eq!(trees, vec![1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235]);
    }

    #[test]
    fn corona_of_triangle() {
        let g = corona(&cycle(3), 1);
        assert_eq!((g.n(), g.m()), (6, 6));
        assert_eq!((0..6).filter(|&v| g.degree(v) == 1).count(), 3);
    }

    #[test]
    fn random_trees_are_trees_and_reproducible() {
        for n in 1..40 {
            let t = random_tree(n, n as u64);
            assert!(t.is_tree());
            assert_eq!(t, random_tree(n, n as u64));
        }
        assert!(random_connected(9, 0.3, 1).is_connected());
    }

    #[test]
    fn family_specs() {
        assert_eq!("path 7".parse::<Family>().unwrap(), Family::Path(7));
        assert_eq!(
            "corona 3 1".parse::<Family>().unwrap(),
            Family::CycleCorona { n: 3, t: 1 }
        );
        assert!("cycle 2".parse::<Family>().is_err());
        assert!("all_connected 8".parse::<Family>().is_err());
        assert!("path".parse::<Family>().is_err());
        assert!("hypercube 3".parse::<Family>().is_err());
        let g: Vec<_> = "path 7"
            .parse::<Family>()
            .unwrap()
            .graphs()
            .unwrap()
            .collect();
        assert_eq!(g, vec![path(7)]);
        for spec in [
            "all_connected 4 dedup",
            "random_tree 5 3",
            "trees 6",
            "star 4",
        ] {
            assert_eq!(spec.parse::<Family>().unwrap().to_string(), spec);
        }
    }
}
