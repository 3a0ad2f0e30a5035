//! Cut vertices, blocks, the block graph and the cut-edge subgraph.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("graph is disconnected")]
    Disconnected,
    #[error("block decomposition needs at least 2 vertices, got {0}")]
    TooSmall(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockDecomposition {
    /// Sorted vertex sets, one per block.
    pub blocks: Vec<Vec<usize>>,
    /// Edges `(u, v)` with `u < v` of each block.
    pub block_edges: Vec<Vec<(usize, usize)>>,
    /// Sorted cut vertices.
    pub cut_vertices: Vec<usize>,
    pub block_of_edge: BTreeMap<(usize, usize), usize>,
    /// Blocks adjacent iff they share a cut vertex.
    pub block_graph: Graph,
}

impl BlockDecomposition {
    pub fn is_trivial(&self, block: usize) -> bool {
        self.blocks[block].len() == 2
    }

    pub fn nontrivial_blocks(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.blocks.len()).filter(|&b| !self.is_trivial(b))
    }

    /// Sorted vertices lying on at least one simple `u`-`v` path: the union
    /// of the blocks on the block-cut tree path from `u` to `v`.
    pub fn path_vertices(&self, u: usize, v: usize) -> Vec<usize> {
        if u == v {
            return vec![u];
        }
        let nb = self.blocks.len();
        let cut_node = |x: usize| self.cut_vertices.binary_search(&x).ok().map(|i| nb + i);
        let node_of = |x: usize| {
            cut_node(x).unwrap_or_else(|| {
                self.blocks
                    .iter()
                    .position(|b| b.binary_search(&x).is_ok())
                    .expect("every vertex lies in a block")
            })
        };
        let total = nb + self.cut_vertices.len();
        let mut adj = vec![Vec::new(); total];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                if let Some(c) = cut_node(x) {
                    adj[i].push(c);
                    adj[c].push(i);
                }
            }
        }
        let (src, dst) = (node_of(u), node_of(v));
        let mut prev = vec![usize::MAX; total];
        prev[src] = src;
        let mut queue = std::collections::VecDeque::from([src]);
        while let Some(a) = queue.pop_front() {
            for &b in &adj[a] {
                if prev[b] == usize::MAX {
                    prev[b] = a;
                    queue.push_back(b);
                }
            }
        }
        let mut out = vec![u, v];
        let mut at = dst;
        loop {
            if at < nb {
                out.extend_from_slice(&self.blocks[at]);
            }
            if at == src {
                break;
            }
            at = prev[at];
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Iterative Hopcroft–Tarjan over an edge stack. Returns the edge sets of
/// the blocks and a per-vertex cut flag.
fn low_point(g: &Graph) -> (Vec<Vec<(usize, usize)>>, Vec<bool>) {
    let n = g.n();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0usize; n];
    let mut is_cut = vec![false; n];
    let mut blocks = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    let mut time = 0;

    for root in 0..n {
        if disc[root] != usize::MAX {
            continue;
        }
        disc[root] = time;
        low[root] = time;
        time += 1;
        let mut root_children = 0;
        // (vertex, parent, next neighbor index)
        let mut stack = vec![(root, usize::MAX, 0usize)];
        while let Some(&mut (x, parent, ref mut idx)) = stack.last_mut() {
            if let Some(&y) = g.neighbors(x).get(*idx) {
                *idx += 1;
                if disc[y] == usize::MAX {
                    edge_stack.push((x, y));
                    disc[y] = time;
                    low[y] = time;
                    time += 1;
                    if x == root {
                        root_children += 1;
                    }
                    stack.push((y, x, 0));
                } else if y != parent && disc[y] < disc[x] {
                    edge_stack.push((x, y));
                    low[x] = low[x].min(disc[y]);
                }
                continue;
            }
            stack.pop();
            if parent == usize::MAX {
                continue;
            }
            low[parent] = low[parent].min(low[x]);
            if low[x] >= disc[parent] {
                if parent != root {
                    is_cut[parent] = true;
                }
                let mut block = Vec::new();
                while let Some(e) = edge_stack.pop() {
                    block.push((e.0.min(e.1), e.0.max(e.1)));
                    if e == (parent, x) {
                        break;
                    }
                }
                block.sort_unstable();
                blocks.push(block);
            }
        }
        if root_children >= 2 {
            is_cut[root] = true;
        }
    }
    (blocks, is_cut)
}

fn require_connected(g: &Graph) -> Result<(), DecompositionError> {
    if g.is_connected() {
        Ok(())
    } else {
        Err(DecompositionError::Disconnected)
    }
}

pub fn cut_vertices(g: &Graph) -> Result<Vec<usize>, DecompositionError> {
    require_connected(g)?;
    let (_, is_cut) = low_point(g);
    Ok((0..g.n()).filter(|&v| is_cut[v]).collect())
}

pub fn blocks(g: &Graph) -> Result<BlockDecomposition, DecompositionError> {
    require_connected(g)?;
    if g.n() < 2 {
        return Err(DecompositionError::TooSmall(g.n()));
    }
    let (mut block_edges, is_cut) = low_point(g);
    block_edges.sort();
    let blocks: Vec<Vec<usize>> = block_edges
        .iter()
        .map(|edges| {
            let mut vs: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
            vs.sort_unstable();
            vs.dedup();
            vs
        })
        .collect();
    let block_of_edge = block_edges
        .iter()
        .enumerate()
        .flat_map(|(i, edges)| edges.iter().map(move |&e| (e, i)))
        .collect();

    let cut: Vec<usize> = (0..g.n()).filter(|&v| is_cut[v]).collect();
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (i, vs) in blocks.iter().enumerate() {
        for &v in vs {
            containing[v].push(i);
        }
    }
    let mut bg_edges = Vec::new();
    for &c in &cut {
        let bs = &containing[c];
        for (a, &bi) in bs.iter().enumerate() {
            for &bj in &bs[a + 1..] {
                bg_edges.push((bi, bj));
            }
        }
    }
    let block_graph =
        Graph::from_edge_list(blocks.len(), &bg_edges).expect("blocks share at most one vertex");

    Ok(BlockDecomposition {
        blocks,
        block_edges,
        cut_vertices: cut,
        block_of_edge,
        block_graph,
    })
}

/// `n >= 3` and no cut vertex. `K2` is deliberately excluded.
pub fn is_two_connected(g: &Graph) -> Result<bool, DecompositionError> {
    Ok(g.n() >= 3 && cut_vertices(g)?.is_empty())
}

pub fn is_block_path(g: &Graph) -> Result<bool, DecompositionError> {
    let bg = blocks(g)?.block_graph;
    Ok(bg.path_order().is_some())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutEdgeSubgraph {
    pub vertices: Vec<usize>,
    pub edges: Vec<(usize, usize)>,
}

/// A star `K_{1,t}` (`t >= 1`) inside the cut-edge subgraph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StarShape {
    pub center: usize,
    pub leaves: Vec<usize>,
}

impl CutEdgeSubgraph {
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// The star shape, if the subgraph is a star. With a single edge either
    /// endpoint could be the center; the lower id is reported.
    pub fn as_star(&self) -> Option<StarShape> {
        let (a, b) = *self.edges.first()?;
        [a, b].into_iter().find_map(|c| {
            self.edges
                .iter()
                .all(|&(x, y)| x == c || y == c)
                .then(|| StarShape {
                    center: c,
                    leaves: self.vertices.iter().copied().filter(|&v| v != c).collect(),
                })
        })
    }

    pub fn is_star(&self) -> bool {
        self.as_star().is_some()
    }
}

pub fn cut_edge_subgraph(g: &Graph) -> Result<CutEdgeSubgraph, DecompositionError> {
    require_connected(g)?;
    if g.n() < 2 {
        return Ok(CutEdgeSubgraph {
            vertices: Vec::new(),
            edges: Vec::new(),
        });
    }
    let (block_edges, _) = low_point(g);
    let mut edges: Vec<(usize, usize)> = block_edges
        .into_iter()
        .filter(|b| b.len() == 1)
        .map(|b| b[0])
        .collect();
    edges.sort_unstable();
    let mut vertices: Vec<usize> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    vertices.sort_unstable();
    vertices.dedup();
    Ok(CutEdgeSubgraph { vertices, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{
        complete, corona, cycle, path, random_connected, random_tree, star,
    };

    fn two_triangles_sharing_vertex() -> Graph {
        Graph::from_edge_list(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4), (2, 4)]).unwrap()
    }

    /// Two triangles 0-1-2 and 4-5-6 joined by the bridges 2-3 and 3-4.
    fn bridged_triangles() -> Graph {
        Graph::from_edge_list(
            7,
            &[
                (0, 1),
                (1, 2),
                (0, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (4, 6),
            ],
        )
        .unwrap()
    }

    /// Removal oracle: v is a cut vertex iff G - v is disconnected.
    fn brute_cut_vertices(g: &Graph) -> Vec<usize> {
        (0..g.n())
            .filter(|&v| {
                let keep: Vec<usize> = (0..g.n()).filter(|&x| x != v).collect();
                let idx = |x: usize| keep.iter().position(|&k| k == x).unwrap();
                let edges: Vec<_> = g
                    .edges()
                    .filter(|&(a, b)| a != v && b != v)
                    .map(|(a, b)| (idx(a), idx(b)))
                    .collect();
                !Graph::from_edge_list(keep.len(), &edges)
                    .unwrap()
                    .is_connected()
            })
            .collect()
    }

    #[test]
    fn cut_vertex_examples() {
        assert_eq!(cut_vertices(&path(4)).unwrap(), vec![1, 2]);
        assert!(cut_vertices(&complete(4)).unwrap().is_empty());
        assert_eq!(cut_vertices(&star(4)).unwrap(), vec![0]);
        assert!(cut_vertices(&Graph::empty(1)).unwrap().is_empty());
        let disconnected = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            cut_vertices(&disconnected),
            Err(DecompositionError::Disconnected)
        );
    }

    #[test]
    fn path_vertices_match_path_enumeration() {
        for seed in 0..30 {
            let g = random_connected(8, 0.2, seed);
            let d = blocks(&g).unwrap();
            for u in 0..8 {
                for v in 0..8 {
                    let mut on_path = [false; 8];
                    let mut stack = vec![(u, vec![u])];
                    while let Some((x, p)) = stack.pop() {
                        if x == v {
                            p.iter().for_each(|&y| on_path[y] = true);
                            continue;
                        }
                        for &y in g.neighbors(x) {
                            if !p.contains(&y) {
                                let mut q = p.clone();
                                q.push(y);
                                stack.push((y, q));
                            }
                        }
                    }
                    let expected: Vec<usize> = (0..8).filter(|&x| on_path[x]).collect();
                    assert_eq!(d.path_vertices(u, v), expected, "seed {seed} ({u},{v})");
                }
            }
        }
    }

    #[test]
    fn block_examples() {
        let d = blocks(&corona(&cycle(4), 1)).unwrap();
        assert_eq!(d.blocks.len(), 5);
        assert_eq!(d.cut_vertices, vec![0, 1, 2, 3]);
        assert_eq!(d.nontrivial_blocks().count(), 1);

        let d = blocks(&path(5)).unwrap();
        assert_eq!(d.blocks.len(), 4);
        assert!(d.blocks.iter().all(|b| b.len() == 2));
        assert_eq!(d.block_graph.path_order().map(|p| p.len()), Some(4));

        let d = blocks(&two_triangles_sharing_vertex()).unwrap();
        assert_eq!(d.blocks.len(), 2);
        assert_eq!(d.cut_vertices, vec![2]);

        assert_eq!(
            blocks(&Graph::empty(1)),
            Err(DecompositionError::TooSmall(1))
        );
    }

    #[test]
    fn two_connectivity() {
        assert!(is_two_connected(&cycle(5)).unwrap());
        assert!(!is_two_connected(&complete(2)).unwrap());
        assert!(!is_two_connected(&path(4)).unwrap());
    }

    #[test]
    fn block_paths() {
        assert!(is_block_path(&path(7)).unwrap());
        // three pendant blocks pairwise share the center: block graph K3
        assert!(!is_block_path(&star(3)).unwrap());
        let tadpole = Graph::from_edge_list(5, &[(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]).unwrap();
        assert!(is_block_path(&tadpole).unwrap());
        assert!(is_block_path(&cycle(5)).unwrap());
    }

    #[test]
    fn cut_edge_subgraphs() {
        let c = cut_edge_subgraph(&bridged_triangles()).unwrap();
        let s = c.as_star().unwrap();
        assert_eq!((s.center, s.leaves), (3, vec![2, 4]));
        assert!(cut_edge_subgraph(&cycle(6)).unwrap().is_empty());
        assert!(!cut_edge_subgraph(&path(4)).unwrap().is_star());
        assert!(cut_edge_subgraph(&path(3)).unwrap().is_star());
    }

    #[test]
    fn invariants_on_random_graphs() {
        for seed in 0..200 {
            let n = 2 + seed as usize % 10;
            let g = random_connected(n, 0.15, seed);
            let d = blocks(&g).unwrap();
            assert_eq!(d.cut_vertices, brute_cut_vertices(&g), "{g:?}");
            // every edge in exactly one block
            assert_eq!(d.block_edges.iter().map(Vec::len).sum::<usize>(), g.m());
            assert_eq!(d.block_of_edge.len(), g.m());
            // block-cut tree count identity
            assert_eq!(d.blocks.iter().map(|b| b.len() - 1).sum::<usize>(), n - 1);
            // cut vertices are exactly the vertices in >= 2 blocks
            let multi: Vec<usize> = (0..n)
                .filter(|v| d.blocks.iter().filter(|b| b.contains(v)).count() >= 2)
                .collect();
            assert_eq!(multi, d.cut_vertices);
            assert!(d.block_graph.is_connected());
            for i in 0..d.blocks.len() {
                for j in (i + 1)..d.blocks.len() {
                    let shared = d.blocks[i]
                        .iter()
                        .filter(|v| d.blocks[j].contains(v))
                        .count();
                    assert!(shared <= 1);
                }
            }
            assert_eq!(
                is_two_connected(&g).unwrap(),
                d.blocks.len() == 1 && d.blocks[0].len() >= 3
            );
        }
    }

    #[test]
    fn trees_are_all_bridges() {
        for seed in 0..20 {
            let t = random_tree(12, seed);
            let c = cut_edge_subgraph(&t).unwrap();
            assert_eq!(c.edges, t.edges().collect::<Vec<_>>());
        }
    }
}
