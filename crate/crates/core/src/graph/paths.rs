//! Path queries: shortest connecting paths, unique tree paths, and simple
//! `u`-`v` paths forced through a given vertex.
//!
//! Every query accepts an optional `blocked` mask; blocked vertices behave
//! as if deleted from the graph.

use thiserror::Error;

use super::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PathError {
    #[error("endpoints must be distinct (both are {0})")]
    SameEndpoints(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
}

fn check(g: &Graph, vs: &[usize]) -> Result<(), PathError> {
    match vs.iter().find(|&&x| x >= g.n()) {
        Some(&vertex) => Err(PathError::VertexOutOfRange { vertex, n: g.n() }),
        None => Ok(()),
    }
}

fn is_blocked(blocked: Option<&[bool]>, v: usize) -> bool {
    blocked.is_some_and(|b| b[v])
}

/// Shortest `u`-`v` path avoiding blocked vertices, if any.
pub fn shortest_path(
    g: &Graph,
    u: usize,
    v: usize,
    blocked: Option<&[bool]>,
) -> Option<Vec<usize>> {
    if is_blocked(blocked, u) || is_blocked(blocked, v) {
        return None;
    }
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::from([u]);
    parent[u] = u;
    while let Some(x) = queue.pop_front() {
        if x == v {
            break;
        }
        for &y in g.neighbors(x) {
            if parent[y] == usize::MAX && !is_blocked(blocked, y) {
                parent[y] = x;
                queue.push_back(y);
            }
        }
    }
    if parent[v] == usize::MAX {
        return None;
    }
    let mut path = vec![v];
    let mut x = v;
    while x != u {
        x = parent[x];
        path.push(x);
    }
    path.reverse();
    Some(path)
}

/// Whether `seq` is a simple path of `g` (distinct vertices, consecutive ones adjacent).
pub fn is_simple_path(g: &Graph, seq: &[usize]) -> bool {
    let mut seen = vec![false; g.n()];
    for &x in seq {
        if x >= g.n() || std::mem::replace(&mut seen[x], true) {
            return false;
        }
    }
    !seq.is_empty() && seq.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

/// Unit-capacity flow network on the vertex-split graph. Node `2x` is the
/// entry of vertex `x` and `2x + 1` its exit.
struct SplitNetwork {
    head: Vec<usize>,
    to: Vec<usize>,
    cap: Vec<u8>,
    next: Vec<usize>,
}

const NIL: usize = usize::MAX;

impl SplitNetwork {
    fn new(nodes: usize) -> Self {
        SplitNetwork {
            head: vec![NIL; nodes],
            to: Vec::new(),
            cap: Vec::new(),
            next: Vec::new(),
        }
    }

    fn add_arc(&mut self, a: usize, b: usize) {
        for (x, y, c) in [(a, b, 1), (b, a, 0)] {
            self.to.push(y);
            self.cap.push(c);
            self.next.push(self.head[x]);
            self.head[x] = self.to.len() - 1;
        }
    }

    /// One BFS augmentation from `s` to `t`; returns whether flow increased.
    fn augment(&mut self, s: usize, t: usize) -> bool {
        let mut via = vec![NIL; self.head.len()];
        let mut seen = vec![false; self.head.len()];
        let mut queue = std::collections::VecDeque::from([s]);
        seen[s] = true;
        while let Some(x) = queue.pop_front() {
            let mut e = self.head[x];
            while e != NIL {
                let y = self.to[e];
                if self.cap[e] > 0 && !seen[y] {
                    seen[y] = true;
                    via[y] = e;
                    if y == t {
                        let mut z = t;
                        while z != s {
                            let arc = via[z];
                            self.cap[arc] -= 1;
                            self.cap[arc ^ 1] += 1;
                            z = self.to[arc ^ 1];
                        }
                        return true;
                    }
                    queue.push_back(y);
                }
                e = self.next[e];
            }
        }
        false
    }

    /// Follows saturated forward arcs from `from` until reaching `t`.
    fn trace(&mut self, from: usize, t: usize) -> Vec<usize> {
        let mut nodes = vec![];
        let mut x = from;
        while x != t {
            let mut e = self.head[x];
            loop {
                // forward arcs have even index; saturated ones carry flow
                if e.is_multiple_of(2) && self.cap[e] == 0 {
                    break;
                }
                e = self.next[e];
            }
            self.cap[e] = 1; // consume so the second trace takes the other branch
            x = self.to[e];
            nodes.push(x);
        }
        nodes
    }
}

/// A simple `u`-`v` path containing `w`, avoiding blocked vertices.
///
/// For `w ∉ {u, v}` this asks for two paths from `w`, one ending at `u` and
/// one at `v`, sharing no vertex but `w`: a flow of value 2 from `w` to a
/// super-sink joined to `u` and `v`, with unit capacity on every other
/// vertex.
pub fn path_through_masked(
    g: &Graph,
    u: usize,
    v: usize,
    w: usize,
    blocked: Option<&[bool]>,
) -> Option<Vec<usize>> {
    if is_blocked(blocked, w) {
        return None;
    }
    if w == u || w == v {
        return shortest_path(g, u, v, blocked);
    }
    if is_blocked(blocked, u) || is_blocked(blocked, v) {
        return None;
    }
    let n = g.n();
    let sink = 2 * n;
    let mut net = SplitNetwork::new(2 * n + 1);
    for x in 0..n {
        if x == w || is_blocked(blocked, x) {
            continue;
        }
        net.add_arc(2 * x, 2 * x + 1);
    }
    for x in 0..n {
        if is_blocked(blocked, x) {
            continue;
        }
        for &y in g.neighbors(x) {
            if y != w && !is_blocked(blocked, y) {
                net.add_arc(2 * x + 1, 2 * y);
            }
        }
    }
    net.add_arc(2 * u + 1, sink);
    net.add_arc(2 * v + 1, sink);

    let source = 2 * w + 1;
    if !(net.augment(source, sink) && net.augment(source, sink)) {
        return None;
    }
    let mut branches: Vec<Vec<usize>> = (0..2)
        .map(|_| {
            net.trace(source, sink)
                .into_iter()
                .filter(|&node| node != sink && node % 2 == 0)
                .map(|node| node / 2)
                .collect()
        })
        .collect();
    if branches[0].last() != Some(&u) {
        branches.swap(0, 1);
    }
    let mut path: Vec<usize> = branches[0].iter().rev().copied().collect();
    path.push(w);
    path.extend_from_slice(&branches[1]);
    debug_assert!(is_simple_path(g, &path));
    Some(path)
}

/// A simple `u`-`v` path containing `w`, or `None` when no such path exists.
pub fn path_through(
    g: &Graph,
    u: usize,
    v: usize,
    w: usize,
) -> Result<Option<Vec<usize>>, PathError> {
    check(g, &[u, v, w])?;
    if u == v {
        return Err(PathError::SameEndpoints(u));
    }
    Ok(path_through_masked(g, u, v, w, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{complete, cycle, path, random_connected};

    fn assert_valid(g: &Graph, p: &[usize], u: usize, v: usize, w: usize) {
        assert!(is_simple_path(g, p), "{p:?}");
        assert_eq!(p.first(), Some(&u));
        assert_eq!(p.last(), Some(&v));
        assert!(p.contains(&w));
    }

    /// Exhaustive DFS over simple paths: does any u-v path contain w?
    fn brute_exists(g: &Graph, u: usize, v: usize, w: usize) -> bool {
        fn dfs(g: &Graph, x: usize, v: usize, w: usize, on: &mut Vec<bool>, hit: bool) -> bool {
            if x == v {
                return hit || x == w;
            }
            for &y in g.neighbors(x) {
                if !on[y] {
                    on[y] = true;
                    let found = dfs(g, y, v, w, on, hit || y == w);
                    on[y] = false;
                    if found {
                        return true;
                    }
                }
            }
            false
        }
        let mut on = vec![false; g.n()];
        on[u] = true;
        dfs(g, u, v, w, &mut on, u == w)
    }

    #[test]
    fn c4_detour() {
        let g = cycle(4);
        let p = path_through(&g, 0, 1, 2).unwrap().unwrap();
        assert_eq!(p, vec![0, 3, 2, 1]);
    }

    #[test]
    fn tree_has_no_detour() {
        assert_eq!(path_through(&path(4), 0, 1, 3).unwrap(), None);
    }

    #[test]
    fn errors() {
        assert_eq!(
            path_through(&path(3), 1, 1, 0),
            Err(PathError::SameEndpoints(1))
        );
        assert!(matches!(
            path_through(&path(3), 0, 5, 1),
            Err(PathError::VertexOutOfRange { vertex: 5, .. })
        ));
    }

    #[test]
    fn w_at_endpoint() {
        let g = complete(4);
        let p = path_through(&g, 0, 3, 3).unwrap().unwrap();
        assert_valid(&g, &p, 0, 3, 3);
    }

    #[test]
    fn agrees_with_brute_force() {
        for seed in 0..60 {
            let n = 3 + (seed as usize % 6);
            let g = random_connected(n, 0.25, seed);
            for u in 0..n {
                for v in 0..n {
                    if u == v {
                        continue;
                    }
                    for w in 0..n {
                        let got = path_through(&g, u, v, w).unwrap();
                        assert_eq!(
                            got.is_some(),
                            brute_exists(&g, u, v, w),
                            "{g:?} {u} {v} {w}"
                        );
                        if let Some(p) = got {
                            assert_valid(&g, &p, u, v, w);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn respects_blocked_vertices() {
        let g = cycle(6);
        let mut blocked = vec![false; 6];
        blocked[4] = true;
        // 0..2 through 3 must go 0-5-4-3-2, which is blocked
        assert_eq!(path_through_masked(&g, 0, 2, 3, Some(&blocked)), None);
        assert_eq!(
            shortest_path(&g, 3, 5, Some(&blocked)),
            Some(vec![3, 2, 1, 0, 5])
        );
    }
}
