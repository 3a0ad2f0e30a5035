//! Simple undirected graphs over vertex ids `0..n`.
//!
//! A [`Graph`] is immutable once built. Every constructor funnels through
//! [`Graph::from_edge_list`], which rejects self-loops, duplicate edges and
//! out-of-range endpoints, so the adjacency lists are always symmetric and
//! sorted.

pub mod canon;
pub mod edgelist;
pub mod generate;
pub mod graph6;
pub mod paths;

use std::collections::VecDeque;

use serde::Serialize;
use thiserror::Error;

/// Largest vertex count accepted for storage.
pub const MAX_STORED_VERTICES: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("graph has {n} vertices, cap is {cap}")]
    TooLarge { n: usize, cap: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("graph6: {0}")]
    Graph6(String),
    #[error("edge list: {0}")]
    EdgeList(String),
    #[error("invalid generator parameters: {0}")]
    InvalidParams(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    pub fn from_edge_list(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n > MAX_STORED_VERTICES {
            return Err(GraphError::TooLarge {
                n,
                cap: MAX_STORED_VERTICES,
            });
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(GraphError::DuplicateEdge(u.min(w[0]), u.max(w[0])));
            }
        }
        Ok(Graph {
            adj,
            m: edges.len(),
        })
    }

    /// Graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        n == 0 || self.bfs_distances(0).iter().all(Option::is_some)
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.m + 1 == self.n() && self.is_connected()
    }

    pub fn is_complete(&self) -> bool {
        let n = self.n();
        n >= 1 && self.m == n * (n - 1) / 2
    }

    /// If the graph is a path, its vertices in order from the lower-id end.
    pub fn path_order(&self) -> Option<Vec<usize>> {
        let n = self.n();
        if n == 0 || !self.is_tree() || self.max_degree() > 2 {
            return None;
        }
        let start = (0..n).find(|&v| self.degree(v) <= 1)?;
        let mut order = Vec::with_capacity(n);
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            order.push(cur);
            match self.adj[cur].iter().find(|&&x| x != prev) {
                Some(&next) => {
                    prev = cur;
                    cur = next;
                }
                None => break,
            }
        }
        Some(order)
    }

    /// Hop distances from `src`; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        dist[src] = Some(0);
        queue.push_back(src);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap_or(0) + 1;
            for &y in &self.adj[x] {
                if dist[y].is_none() {
                    dist[y] = Some(d);
                    queue.push_back(y);
                }
            }
        }
        dist
    }

    /// Vertices in BFS order from `src`, visiting neighbors by ascending id.
    pub fn bfs_order(&self, src: usize) -> Vec<usize> {
        let mut seen = vec![false; self.n()];
        let mut order = Vec::with_capacity(self.n());
        seen[src] = true;
        order.push(src);
        let mut head = 0;
        while head < order.len() {
            let x = order[head];
            head += 1;
            for &y in &self.adj[x] {
                if !seen[y] {
                    seen[y] = true;
                    order.push(y);
                }
            }
        }
        order
    }

    pub fn metrics(&self) -> Result<GraphMetrics, GraphError> {
        let n = self.n();
        let mut distances = Vec::with_capacity(n);
        for v in 0..n {
            let row: Option<Vec<usize>> = self.bfs_distances(v).into_iter().collect();
            distances.push(row.ok_or(GraphError::Disconnected)?);
        }
        let eccentricities: Vec<usize> = distances
            .iter()
            .map(|row| row.iter().copied().max().unwrap_or(0))
            .collect();
        Ok(GraphMetrics {
            radius: eccentricities.iter().copied().min().unwrap_or(0),
            diameter: eccentricities.iter().copied().max().unwrap_or(0),
            max_degree: self.max_degree(),
            distances,
            eccentricities,
        })
    }

    /// Whether `self` is a spanning subgraph of `host` (same order, edges ⊆ host edges).
    pub fn is_spanning_subgraph_of(&self, host: &Graph) -> bool {
        self.n() == host.n() && self.edges().all(|(u, v)| host.has_edge(u, v))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphMetrics {
    pub distances: Vec<Vec<usize>>,
    pub eccentricities: Vec<usize>,
    pub radius: usize,
    pub diameter: usize,
    pub max_degree: usize,
}

impl GraphMetrics {
    /// Lowest-id vertex of minimum eccentricity.
    pub fn central_vertex(&self) -> usize {
        self.eccentricities
            .iter()
            .position(|&e| e == self.radius)
            .unwrap_or(0)
    }
}
