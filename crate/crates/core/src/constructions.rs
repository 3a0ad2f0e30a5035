//! Explicit colorings and rankings that realize the known upper bounds.
//!
//! Each constructor checks its structural precondition and returns the
//! coloring; none of them verify the result, so callers (and the tests)
//! run it through [`crate::coloring::is_cfvc`].

use serde::Serialize;
use thiserror::Error;

use crate::bounds::path_bound;
use crate::coloring::{ColoringError, VertexColoring};
use crate::decomposition::{
    blocks, cut_edge_subgraph, cut_vertices, is_two_connected, DecompositionError,
};
use crate::graph::Graph;
use crate::solver::{feasible_k, SolveError, SolveOptions};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructionError {
    #[error("construction needs at least one vertex")]
    Empty,
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("graph is not 2-connected")]
    NotTwoConnected,
    #[error("graph has {0} cut vertices, construction needs exactly 1")]
    CutVertexCount(usize),
    #[error("graph is not a tree")]
    NotTree,
    #[error("graph is not a cycle corona")]
    NotCycleCorona,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("labels {label} at vertices {u} and {v} are not separated by a larger label")]
    InvalidRanking { u: usize, v: usize, label: usize },
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Vertex labels `1..=k`; a ranking when equal labels are always separated
/// by a larger one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Ranking {
    pub labels: Vec<usize>,
    pub k: usize,
}

impl Ranking {
    pub fn new(labels: Vec<usize>) -> Self {
        let k = labels.iter().copied().max().unwrap_or(0);
        Ranking { labels, k }
    }

    /// Every path between two vertices labeled `i` meets a label above `i`,
    /// i.e. they lie in different components of the subgraph induced by
    /// labels `<= i`. Returns the first offending pair.
    pub fn violation(&self, g: &Graph) -> Option<(usize, usize)> {
        let n = g.n();
        for i in 1..=self.k {
            let mut comp = vec![usize::MAX; n];
            for s in 0..n {
                if self.labels[s] > i || comp[s] != usize::MAX {
                    continue;
                }
                let mut stack = vec![s];
                comp[s] = s;
                let mut seen_label_i: Option<usize> = None;
                while let Some(x) = stack.pop() {
                    if self.labels[x] == i {
                        if let Some(first) = seen_label_i {
                            return Some((first.min(x), first.max(x)));
                        }
                        seen_label_i = Some(x);
                    }
                    for &y in g.neighbors(x) {
                        if self.labels[y] <= i && comp[y] == usize::MAX {
                            comp[y] = s;
                            stack.push(y);
                        }
                    }
                }
            }
        }
        None
    }
}

/// Ruler coloring of the path `v_1 .. v_n`: vertex `v_i` gets one plus the
/// exponent of the largest power of two dividing `i`.
pub fn ruler_coloring(n: usize) -> Result<VertexColoring, ConstructionError> {
    if n == 0 {
        return Err(ConstructionError::Empty);
    }
    let colors = (1..=n).map(|i| i.trailing_zeros() as usize + 1).collect();
    Ok(VertexColoring::new(colors, path_bound(n))?)
}

/// Ruler coloring laid along an arbitrary path graph.
pub fn path_ruler_coloring(g: &Graph) -> Result<VertexColoring, ConstructionError> {
    let order = g
        .path_order()
        .ok_or_else(|| ConstructionError::Precondition("graph is not a path".into()))?;
    let ruler = ruler_coloring(g.n())?;
    let mut colors = vec![0; g.n()];
    for (i, &v) in order.iter().enumerate() {
        colors[v] = ruler.color(i);
    }
    Ok(VertexColoring::new(colors, ruler.k())?)
}

/// The only coloring of `K1`.
pub fn single_vertex_coloring() -> VertexColoring {
    VertexColoring::new(vec![1], 1).expect("one color in range")
}

fn single_marked(
    n: usize,
    marked: usize,
    mark: usize,
) -> Result<VertexColoring, ConstructionError> {
    let colors = (0..n).map(|v| if v == marked { mark } else { 1 }).collect();
    Ok(VertexColoring::new(colors, 2)?)
}

/// `w` gets color 2, everything else color 1.
pub fn two_coloring_2connected(g: &Graph, w: usize) -> Result<VertexColoring, ConstructionError> {
    if w >= g.n() {
        return Err(ConstructionError::VertexOutOfRange(w));
    }
    if !g.is_connected() || !is_two_connected(g)? {
        return Err(ConstructionError::NotTwoConnected);
    }
    single_marked(g.n(), w, 2)
}

/// The unique cut vertex gets color 2, everything else color 1.
pub fn two_coloring_one_cut(g: &Graph) -> Result<VertexColoring, ConstructionError> {
    let cuts = cut_vertices(g)?;
    match cuts[..] {
        [w] => single_marked(g.n(), w, 2),
        _ => Err(ConstructionError::CutVertexCount(cuts.len())),
    }
}

/// For graphs whose bridges form a star: center 1, star leaves 2, the
/// rest 3.
///
/// Beyond "at least two cut vertices and the bridges form a star", every
/// nontrivial block must contain a vertex of the star; otherwise two
/// blocks can meet at a cut vertex with no color-1 or color-2 vertex
/// between them and the coloring fails.
pub fn star_cutedges_3coloring(g: &Graph) -> Result<VertexColoring, ConstructionError> {
    let decomposition = blocks(g)?;
    if decomposition.cut_vertices.len() < 2 {
        return Err(ConstructionError::Precondition(format!(
            "needs at least 2 cut vertices, found {}",
            decomposition.cut_vertices.len()
        )));
    }
    let bridges = cut_edge_subgraph(g)?;
    let mut star = bridges
        .as_star()
        .ok_or_else(|| ConstructionError::Precondition("cut edges do not form a star".into()))?;
    if bridges.edges.len() == 1 && g.degree(star.center) == 1 {
        // single bridge: put the center on the endpoint that is not pendant
        std::mem::swap(&mut star.center, &mut star.leaves[0]);
    }
    let on_star = |v: &usize| *v == star.center || star.leaves.contains(v);
    if let Some(b) = decomposition
        .nontrivial_blocks()
        .find(|&b| !decomposition.blocks[b].iter().any(on_star))
    {
        return Err(ConstructionError::Precondition(format!(
            "nontrivial block {:?} contains no vertex of the cut-edge star",
            decomposition.blocks[b]
        )));
    }
    let colors = (0..g.n())
        .map(|v| {
            if v == star.center {
                1
            } else if star.leaves.contains(&v) {
                2
            } else {
                3
            }
        })
        .collect();
    Ok(VertexColoring::new(colors, 3)?)
}

/// Recognizes the `t`-corona of a cycle. Returns the cycle vertices in
/// ascending order and `t`.
pub fn recognize_cycle_corona(g: &Graph) -> Option<(Vec<usize>, usize)> {
    let n = g.n();
    let core: Vec<usize> = (0..n).filter(|&v| g.degree(v) > 1).collect();
    if core.len() < 3 || !g.is_connected() {
        return None;
    }
    let is_core = |v: usize| g.degree(v) > 1;
    let t = g.degree(core[0]).checked_sub(2)?;
    if t == 0 || core.len() * (t + 1) != n {
        return None;
    }
    for &v in &core {
        let core_nb = g.neighbors(v).iter().filter(|&&u| is_core(u)).count();
        if core_nb != 2 || g.degree(v) != t + 2 {
            return None;
        }
    }
    // leaves hang off core vertices; the core is 2-regular and, with the
    // whole graph connected, a single cycle
    if (0..n).any(|v| g.degree(v) == 1 && !is_core(g.neighbors(v)[0])) {
        return None;
    }
    Some((core, t))
}

/// Pendants 1, the lowest cycle vertex 2, the other cycle vertices 3.
pub fn corona_3coloring(g: &Graph) -> Result<VertexColoring, ConstructionError> {
    let (cycle, _) = recognize_cycle_corona(g).ok_or(ConstructionError::NotCycleCorona)?;
    let mut colors = vec![1; g.n()];
    for &v in &cycle {
        colors[v] = 3;
    }
    colors[cycle[0]] = 2;
    Ok(VertexColoring::new(colors, 3)?)
}

/// Colors each vertex by one plus its distance from a central vertex.
pub fn tree_level_coloring(t: &Graph) -> Result<VertexColoring, ConstructionError> {
    if !t.is_tree() {
        return Err(ConstructionError::NotTree);
    }
    let metrics = t.metrics().expect("trees are connected");
    let center = metrics.central_vertex();
    let colors = metrics.distances[center].iter().map(|d| d + 1).collect();
    Ok(VertexColoring::new(colors, metrics.radius + 1)?)
}

/// Recursive centroid decomposition. A centroid gets one more than the
/// largest label used in the components left after removing it.
pub fn centroid_ranking(t: &Graph) -> Result<Ranking, ConstructionError> {
    if !t.is_tree() {
        return Err(ConstructionError::NotTree);
    }
    let n = t.n();
    let mut labels = vec![0usize; n];
    let mut removed = vec![false; n];

    fn component(t: &Graph, start: usize, removed: &[bool]) -> Vec<usize> {
        let mut seen = vec![start];
        let mut i = 0;
        while i < seen.len() {
            let x = seen[i];
            i += 1;
            for &y in t.neighbors(x) {
                if !removed[y] && !seen.contains(&y) {
                    seen.push(y);
                }
            }
        }
        seen
    }

    /// Lowest-id vertex whose removal leaves pieces of size <= |comp| / 2.
    fn centroid(t: &Graph, comp: &[usize], removed: &mut [bool]) -> usize {
        let half = comp.len() / 2;
        let mut sorted = comp.to_vec();
        sorted.sort_unstable();
        for &c in &sorted {
            removed[c] = true;
            let ok = t
                .neighbors(c)
                .iter()
                .filter(|&&y| !removed[y])
                .all(|&y| component(t, y, removed).len() <= half);
            removed[c] = false;
            if ok {
                return c;
            }
        }
        unreachable!("every tree has a centroid")
    }

    fn rank(t: &Graph, start: usize, removed: &mut [bool], labels: &mut [usize]) -> usize {
        let comp = component(t, start, removed);
        let c = centroid(t, &comp, removed);
        removed[c] = true;
        let mut top = 0;
        for &y in t.neighbors(c) {
            if !removed[y] {
                top = top.max(rank(t, y, removed, labels));
            }
        }
        labels[c] = top + 1;
        top + 1
    }

    if n > 0 {
        rank(t, 0, &mut removed, &mut labels);
    }
    Ok(Ranking::new(labels))
}

/// Uses ranking labels as colors after checking the ranking property.
pub fn ranking_as_coloring(g: &Graph, r: &Ranking) -> Result<VertexColoring, ConstructionError> {
    if r.labels.len() != g.n() {
        return Err(ColoringError::SizeMismatch {
            graph: g.n(),
            coloring: r.labels.len(),
        }
        .into());
    }
    if let Some((u, v)) = r.violation(g) {
        return Err(ConstructionError::InvalidRanking {
            u,
            v,
            label: r.labels[u],
        });
    }
    Ok(VertexColoring::new(r.labels.clone(), r.k.max(1))?)
}

/// Three colors for graphs with at least two cut vertices and
/// `n - 4 <= Δ <= n - 2`, found by exact search.
pub fn max_degree_3coloring(
    g: &Graph,
    opts: &SolveOptions,
) -> Result<VertexColoring, ConstructionError> {
    let n = g.n();
    let cuts = cut_vertices(g)?.len();
    let delta = g.max_degree();
    if cuts < 2 || delta + 4 < n || delta + 2 > n {
        return Err(ConstructionError::Precondition(format!(
            "needs >= 2 cut vertices and n-4 <= Δ <= n-2 (n = {n}, Δ = {delta}, cut vertices = {cuts})"
        )));
    }
    feasible_k(g, 3, opts)?
        .ok_or_else(|| ConstructionError::Precondition("no conflict-free 3-coloring exists".into()))
}
