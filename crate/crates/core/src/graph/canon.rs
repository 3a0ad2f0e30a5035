//! Isomorphism-invariant graph keys.
//!
//! [`canonical_form`] refines vertices by iterated degree signatures, then
//! tries every ordering that respects the refined cells and keeps the
//! smallest adjacency bit string. It is exact but exponential in the cell
//! sizes, so it is meant for small graphs. [`tree_code`] is the linear
//! AHU encoding of a tree rooted at its center.

use super::Graph;

/// Largest order accepted by [`canonical_form`].
pub const MAX_CANON_ORDER: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    pub n: usize,
    pub bits: u128,
}

fn refine(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut colors: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut classes = 0;
    loop {
        let sigs: Vec<(usize, Vec<usize>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<usize> = g.neighbors(v).iter().map(|&u| colors[u]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut uniq = sigs.clone();
        uniq.sort();
        uniq.dedup();
        colors = sigs
            .iter()
            .map(|s| uniq.binary_search(s).expect("signature present"))
            .collect();
        if uniq.len() == classes {
            return colors;
        }
        classes = uniq.len();
    }
}

fn encode(g: &Graph, order: &[usize]) -> u128 {
    let mut bits = 0u128;
    for q in 1..order.len() {
        for p in 0..q {
            bits <<= 1;
            if g.has_edge(order[p], order[q]) {
                bits |= 1;
            }
        }
    }
    bits
}

/// Tries every ordering inside each cell, keeping the smallest code.
fn permute_cells(
    g: &Graph,
    cells: &mut [Vec<usize>],
    cell: usize,
    pos: usize,
    best: &mut Option<u128>,
) {
    if cell == cells.len() {
        let order: Vec<usize> = cells.iter().flatten().copied().collect();
        let code = encode(g, &order);
        if best.is_none_or(|b| code < b) {
            *best = Some(code);
        }
        return;
    }
    if pos == cells[cell].len() {
        permute_cells(g, cells, cell + 1, 0, best);
        return;
    }
    for i in pos..cells[cell].len() {
        cells[cell].swap(pos, i);
        permute_cells(g, cells, cell, pos + 1, best);
        cells[cell].swap(pos, i);
    }
}

pub fn canonical_form(g: &Graph) -> CanonicalForm {
    let n = g.n();
    assert!(
        n <= MAX_CANON_ORDER,
        "canonical_form supports n <= {MAX_CANON_ORDER}"
    );
    let colors = refine(g);
    let classes = colors.iter().copied().max().map_or(0, |c| c + 1);
    let mut cells = vec![Vec::new(); classes];
    for v in 0..n {
        cells[colors[v]].push(v);
    }
    let mut best = None;
    permute_cells(g, &mut cells, 0, 0, &mut best);
    CanonicalForm {
        n,
        bits: best.unwrap_or(0),
    }
}

fn rooted_code(g: &Graph, v: usize, parent: usize) -> String {
    let mut children: Vec<String> = g
        .neighbors(v)
        .iter()
        .filter(|&&u| u != parent)
        .map(|&u| rooted_code(g, u, v))
        .collect();
    children.sort();
    format!("({})", children.concat())
}

/// Canonical string of a tree; equal iff the trees are isomorphic.
pub fn tree_code(t: &Graph) -> String {
    debug_assert!(t.is_tree());
    let metrics = t.metrics().expect("trees are connected");
    let centers: Vec<usize> = (0..t.n())
        .filter(|&v| metrics.eccentricities[v] == metrics.radius)
        .collect();
    centers
        .iter()
        .map(|&c| rooted_code(t, c, usize::MAX))
        .min()
        .unwrap_or_default()
}
