//! Lower and upper bounds on the conflict-free vertex-connection number,
//! each tagged with the result that justifies it.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::decomposition::{cut_vertices, DecompositionError};
use crate::graph::{Graph, GraphError};
use crate::solver::{vcfc_exact, SolveError, SolveOptions};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundsError {
    #[error("bounds need at least 2 vertices, got {0}")]
    TooSmall(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error("{0} is not a spanning tree of the host graph")]
    NotSpanningTree(&'static str),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundTag {
    Trivial2,
    TrivialN,
    TwoCutVertices,
    TreeLogDiameter,
    TreeChromatic,
    Radius,
    TreeLogThreeHalves,
    TreeHalfOrder,
    SpanningTree,
}

impl fmt::Display for BoundTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            BoundTag::Trivial2 => "trivial-2",
            BoundTag::TrivialN => "trivial-n",
            BoundTag::TwoCutVertices => "two-cut-vertices",
            BoundTag::TreeLogDiameter => "tree-log-diameter",
            BoundTag::TreeChromatic => "tree-chromatic",
            BoundTag::Radius => "radius",
            BoundTag::TreeLogThreeHalves => "tree-log-three-halves",
            BoundTag::TreeHalfOrder => "tree-half-order",
            BoundTag::SpanningTree => "spanning-tree",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub value: usize,
    pub tag: BoundTag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundsReport {
    pub lower: Bound,
    pub upper: Bound,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct BoundOptions {
    /// Use `ceil(log2(d + 2))` (the diametral path has `d + 1` vertices)
    /// instead of `ceil(log2(d + 1))` for trees.
    pub strict_tree_lower: bool,
}

/// Smallest `j` with `2^j >= x`, for `x >= 1`.
pub fn ceil_log2(x: usize) -> usize {
    assert!(x >= 1);
    (usize::BITS - (x - 1).leading_zeros()) as usize
}

/// `ceil(log2(n + 1))`, the number of colors a path of order `n` needs.
pub fn path_bound(n: usize) -> usize {
    ceil_log2(n + 1)
}

/// Largest `j` with `1.5^j <= n`, i.e. `3^j <= n * 2^j`, for `n >= 1`.
pub fn floor_log_three_halves(n: usize) -> usize {
    assert!(n >= 1);
    let n = n as u128;
    let (mut pow3, mut pow2, mut j) = (3u128, 2u128, 0);
    while pow3 <= n * pow2 {
        j += 1;
        pow3 *= 3;
        pow2 *= 2;
    }
    j
}

fn pick(candidates: &[(usize, BoundTag)], better: impl Fn(usize, usize) -> bool) -> Bound {
    let mut best = candidates[0];
    for &c in &candidates[1..] {
        if better(c.0, best.0) {
            best = c;
        }
    }
    Bound {
        value: best.0,
        tag: best.1,
    }
}

fn check(g: &Graph) -> Result<(), BoundsError> {
    if g.n() < 2 {
        return Err(BoundsError::TooSmall(g.n()));
    }
    if !g.is_connected() {
        return Err(GraphError::Disconnected.into());
    }
    Ok(())
}

pub fn lower_bound(g: &Graph) -> Result<Bound, BoundsError> {
    lower_bound_with(g, BoundOptions::default())
}

pub fn lower_bound_with(g: &Graph, opts: BoundOptions) -> Result<Bound, BoundsError> {
    check(g)?;
    let mut candidates = vec![(2, BoundTag::Trivial2)];
    if cut_vertices(g)?.len() >= 2 {
        candidates.push((3, BoundTag::TwoCutVertices));
    }
    if g.is_tree() {
        let d = g.metrics()?.diameter;
        candidates.push((2, BoundTag::TreeChromatic));
        let log = if opts.strict_tree_lower {
            ceil_log2(d + 2)
        } else {
            ceil_log2(d + 1)
        };
        candidates.push((log, BoundTag::TreeLogDiameter));
    }
    Ok(pick(&candidates, |a, b| a > b))
}

pub fn upper_bound(g: &Graph) -> Result<Bound, BoundsError> {
    check(g)?;
    let n = g.n();
    let mut candidates = vec![
        (n, BoundTag::TrivialN),
        (g.metrics()?.radius + 1, BoundTag::Radius),
    ];
    if g.is_tree() && n >= 3 {
        candidates.push((floor_log_three_halves(n), BoundTag::TreeLogThreeHalves));
        if n >= 5 {
            candidates.push((n.div_ceil(2), BoundTag::TreeHalfOrder));
        }
    }
    Ok(pick(&candidates, |a, b| a < b))
}

pub fn bounds(g: &Graph, opts: BoundOptions) -> Result<BoundsReport, BoundsError> {
    Ok(BoundsReport {
        lower: lower_bound_with(g, opts)?,
        upper: upper_bound(g)?,
    })
}

/// The exact value of a spanning tree `t` of `g`, which bounds `g` from above.
pub fn spanning_tree_bound(
    g: &Graph,
    t: &Graph,
    opts: &SolveOptions,
) -> Result<Bound, BoundsError> {
    check(g)?;
    if t.n() != g.n() {
        return Err(BoundsError::NotSpanningTree("order differs"));
    }
    if !t.is_tree() {
        return Err(BoundsError::NotSpanningTree("candidate is not a tree"));
    }
    if !t.is_spanning_subgraph_of(g) {
        return Err(BoundsError::NotSpanningTree("candidate uses a non-edge"));
    }
    Ok(Bound {
        value: vcfc_exact(t, opts)?.vcfc,
        tag: BoundTag::SpanningTree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::generate::{complete, corona, cycle, path, star};

    #[test]
    fn integer_logs() {
        for x in 1..5000usize {
            assert_eq!(ceil_log2(x), (x as f64).log2().ceil() as usize, "{x}");
            let f = ((x as f64).ln() / 1.5f64.ln()).floor() as usize;
            assert_eq!(floor_log_three_halves(x), f, "{x}");
        }
        assert_eq!(floor_log_three_halves(7), 4);
        assert_eq!(floor_log_three_halves(3), 2);
    }

    #[test]
    fn lower_examples() {
        assert_eq!(lower_bound(&path(7)).unwrap().value, 3);
        let k4 = lower_bound(&complete(4)).unwrap();
        assert_eq!((k4.value, k4.tag), (2, BoundTag::Trivial2));
        let c = lower_bound(&corona(&cycle(3), 1)).unwrap();
        assert_eq!((c.value, c.tag), (3, BoundTag::TwoCutVertices));
        assert_eq!(lower_bound(&Graph::empty(1)), Err(BoundsError::TooSmall(1)));
        // P8: d = 7, printed form gives 3, strict form gives ceil(log2 9) = 4
        assert_eq!(lower_bound(&path(8)).unwrap().value, 3);
        let strict = BoundOptions {
            strict_tree_lower: true,
        };
        assert_eq!(lower_bound_with(&path(8), strict).unwrap().value, 4);
    }

    #[test]
    fn upper_examples() {
        assert_eq!(upper_bound(&path(7)).unwrap().value, 4);
        let s = upper_bound(&star(5)).unwrap();
        assert_eq!((s.value, s.tag), (2, BoundTag::Radius));
        assert_eq!(upper_bound(&complete(6)).unwrap().value, 2);
        assert_eq!(upper_bound(&complete(2)).unwrap().value, 2);
    }

    #[test]
    fn spanning_tree_examples() {
        let opts = SolveOptions::default();
        assert_eq!(
            spanning_tree_bound(&cycle(7), &path(7), &opts)
                .unwrap()
                .value,
            3
        );
        assert_eq!(
            spanning_tree_bound(&complete(4), &star(3), &opts)
                .unwrap()
                .value,
            2
        );
        let t = star(4);
        assert_eq!(spanning_tree_bound(&t, &t, &opts).unwrap().value, 2);
        assert!(matches!(
            spanning_tree_bound(&cycle(5), &star(4), &opts),
            Err(BoundsError::NotSpanningTree(_))
        ));
        assert!(matches!(
            spanning_tree_bound(&cycle(5), &cycle(5), &opts),
            Err(BoundsError::NotSpanningTree(_))
        ));
    }
}
