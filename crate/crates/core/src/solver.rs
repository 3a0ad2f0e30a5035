//! Exact conflict-free vertex-connection numbers.
//!
//! [`vcfc_exact`] deepens `k` from a proven lower bound and runs
//! [`feasible_k`], a backtracking search over colorings with canonical color
//! introduction (a vertex may open color `c` only if `c - 1` is already in
//! use). Complete assignments are checked by the flow verifier. On trees the
//! search also keeps adjacent colors distinct and prunes as soon as some
//! fully colored path has no unique color, which is sound because a tree
//! path never changes once its vertices are colored. On other graphs a pair
//! is checked as soon as every vertex that can lie on a path between its
//! endpoints (the blocks along the block-cut tree) is colored; later choices
//! cannot change its verdict.
//!
//! [`vcfc_brute`] is the independent oracle: plain enumeration checked by
//! path enumeration.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::bounds::{lower_bound_with, upper_bound, BoundOptions, BoundsError};
use crate::coloring::{is_cfvc_naive, CfvcCertificate, ColoringError, Verifier, VertexColoring};
use crate::constructions::{
    path_ruler_coloring, single_vertex_coloring, two_coloring_2connected, two_coloring_one_cut,
};
use crate::decomposition::{blocks, cut_vertices, DecompositionError};
use crate::graph::Graph;

/// Default vertex cap for [`vcfc_brute`].
pub const BRUTE_CAP: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("graph has no vertices")]
    Empty,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("k = {k} outside 1..={n}")]
    KOutOfRange { k: usize, n: usize },
    #[error("node budget exhausted after {nodes} nodes while testing k = {k}")]
    BudgetExhausted { nodes: u64, k: usize },
    #[error("no conflict-free coloring with at most {max_k} colors")]
    NoneUpToMaxK { max_k: usize },
    #[error("brute force is capped at {cap} vertices, graph has {n}")]
    CapExceeded { n: usize, cap: usize },
    #[error(transparent)]
    Decomposition(#[from] DecompositionError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error("bounds: {0}")]
    Bounds(String),
}

impl From<BoundsError> for SolveError {
    fn from(e: BoundsError) -> Self {
        SolveError::Bounds(e.to_string())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    /// Search ceiling; defaults to the proven upper bound.
    pub max_k: Option<usize>,
    pub node_budget: Option<u64>,
    pub use_theorem_fast_paths: bool,
    pub tree_adjacent_distinct: bool,
    pub tree_pruning: bool,
    /// Early pair checks on graphs that are not trees.
    pub pair_pruning: bool,
    pub threads: usize,
    pub bounds: BoundOptions,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            max_k: None,
            node_budget: None,
            use_theorem_fast_paths: true,
            tree_adjacent_distinct: true,
            tree_pruning: true,
            pair_pruning: true,
            threads: 1,
            bounds: BoundOptions::default(),
        }
    }
}

impl SolveOptions {
    /// Pure search: no structural shortcuts, deepening from `k = 1` up to `n`.
    pub fn search_only() -> Self {
        SolveOptions {
            use_theorem_fast_paths: false,
            ..Self::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    SingleVertex,
    Complete,
    TwoConnected,
    OneCutVertex,
    Path,
    Search,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SolveStats {
    pub nodes: u64,
    pub colorings_tested: u64,
    #[serde(serialize_with = "as_secs")]
    pub elapsed: Duration,
}

fn as_secs<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub vcfc: usize,
    pub coloring: VertexColoring,
    pub certificate: CfvcCertificate,
    pub method: Method,
    /// First `k` tried; every smaller value is excluded by a proven bound.
    pub start_k: usize,
    pub stats: SolveStats,
}

struct Shared {
    nodes: AtomicU64,
    tested: AtomicU64,
    stop: AtomicBool,
    budget: Option<u64>,
}

impl Shared {
    fn new(budget: Option<u64>) -> Self {
        Shared {
            nodes: AtomicU64::new(0),
            tested: AtomicU64::new(0),
            stop: AtomicBool::new(false),
            budget,
        }
    }
}

struct Search<'a> {
    g: &'a Graph,
    k: usize,
    order: &'a [usize],
    adjacent_distinct: bool,
    pruning: bool,
    /// Pairs decided once the keyed vertex is colored.
    checks: Vec<Vec<(usize, usize)>>,
    colors: Vec<usize>,
    verifier: Verifier<'a>,
    shared: &'a Shared,
    count: Vec<u32>,
}

enum Step {
    Found,
    Exhausted,
    Stopped,
}

impl<'a> Search<'a> {
    fn new(
        g: &'a Graph,
        k: usize,
        order: &'a [usize],
        opts: &SolveOptions,
        shared: &'a Shared,
    ) -> Self {
        let tree = g.is_tree();
        let checks = if !tree && opts.pair_pruning && g.n() >= 2 {
            pair_checks(g, order)
        } else {
            vec![Vec::new(); g.n()]
        };
        Search {
            g,
            k,
            order,
            adjacent_distinct: tree && opts.tree_adjacent_distinct,
            pruning: tree && opts.tree_pruning,
            checks,
            colors: vec![0; g.n()],
            verifier: Verifier::new(g),
            shared,
            count: vec![0; k + 1],
        }
    }

    /// Whether a freshly colored `x` leaves some colored path without a
    /// unique color. Colored vertices form a subtree, so every path from
    /// `x` through colored vertices is final.
    fn dead_end(&mut self, x: usize) -> bool {
        let (g, colors, count) = (self.g, &self.colors, &mut self.count);
        let mut singles = 1usize;
        count[colors[x]] = 1;
        let mut stack = vec![(x, usize::MAX, 0usize)];
        let mut dead = false;
        while let Some(&mut (y, parent, ref mut idx)) = stack.last_mut() {
            let next = g.neighbors(y).get(*idx).copied();
            *idx += 1;
            match next {
                Some(z) if z != parent && colors[z] != 0 => {
                    count[colors[z]] += 1;
                    match count[colors[z]] {
                        1 => singles += 1,
                        2 => singles -= 1,
                        _ => {}
                    }
                    if singles == 0 {
                        dead = true;
                        break;
                    }
                    stack.push((z, y, 0));
                }
                Some(_) => {}
                None => {
                    let c = colors[y];
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
        count.iter_mut().for_each(|c| *c = 0);
        dead
    }

    fn admissible(&mut self, x: usize, c: usize) -> bool {
        if self.adjacent_distinct && self.g.neighbors(x).iter().any(|&y| self.colors[y] == c) {
            return false;
        }
        self.colors[x] = c;
        let dead = self.pruning && self.dead_end(x);
        if dead
            || self.checks[x]
                .iter()
                .any(|&(u, v)| !self.verifier.pair_ok(&self.colors, u, v))
        {
            self.colors[x] = 0;
            return false;
        }
        true
    }

    fn tick(&self) -> Result<(), ()> {
        let nodes = self.shared.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if self.shared.budget.is_some_and(|b| nodes > b) {
            return Err(());
        }
        Ok(())
    }

    fn dfs(&mut self, depth: usize, max_used: usize) -> Result<Step, ()> {
        if self.shared.stop.load(Ordering::Relaxed) {
            return Ok(Step::Stopped);
        }
        if depth == self.order.len() {
            self.shared.tested.fetch_add(1, Ordering::Relaxed);
            return Ok(if self.verifier.is_cfvc(&self.colors) {
                Step::Found
            } else {
                Step::Exhausted
            });
        }
        let x = self.order[depth];
        for c in 1..=self.k.min(max_used + 1) {
            self.tick()?;
            if !self.admissible(x, c) {
                continue;
            }
            match self.dfs(depth + 1, max_used.max(c))? {
                Step::Exhausted => {}
                done => return Ok(done),
            }
            self.colors[x] = 0;
        }
        Ok(Step::Exhausted)
    }

    /// Canonical partial assignments of the first `depth` vertices.
    fn prefixes(
        &mut self,
        at: usize,
        depth: usize,
        max_used: usize,
        out: &mut Vec<(Vec<usize>, usize)>,
    ) {
        if at == depth {
            out.push((self.colors.clone(), max_used));
            return;
        }
        let x = self.order[at];
        for c in 1..=self.k.min(max_used + 1) {
            if self.admissible(x, c) {
                self.prefixes(at + 1, depth, max_used.max(c), out);
                self.colors[x] = 0;
            }
        }
    }
}

fn pair_checks(g: &Graph, order: &[usize]) -> Vec<Vec<(usize, usize)>> {
    let n = g.n();
    let decomposition = blocks(g).expect("connected with n >= 2");
    let mut pos = vec![0; n];
    for (i, &x) in order.iter().enumerate() {
        pos[x] = i;
    }
    let mut checks = vec![Vec::new(); n];
    for u in 0..n {
        for v in (u + 1)..n {
            let last = decomposition
                .path_vertices(u, v)
                .into_iter()
                .max_by_key(|&x| pos[x])
                .expect("nonempty");
            checks[last].push((u, v));
        }
    }
    checks
}

/// BFS order from the lowest-id vertex of maximum degree.
fn search_order(g: &Graph) -> Vec<usize> {
    let delta = g.max_degree();
    let root = (0..g.n()).find(|&v| g.degree(v) == delta).unwrap_or(0);
    g.bfs_order(root)
}

fn run_search(
    g: &Graph,
    k: usize,
    opts: &SolveOptions,
    shared: &Shared,
) -> Result<Option<VertexColoring>, SolveError> {
    let order = search_order(g);
    let budget_error = || SolveError::BudgetExhausted {
        nodes: shared.nodes.load(Ordering::Relaxed),
        k,
    };
    let to_coloring = |colors: Vec<usize>| VertexColoring::new(colors, k).map_err(SolveError::from);

    if opts.threads <= 1 {
        let mut search = Search::new(g, k, &order, opts, shared);
        return match search.dfs(0, 0) {
            Err(()) => Err(budget_error()),
            Ok(Step::Found) => to_coloring(search.colors).map(Some),
            Ok(_) => Ok(None),
        };
    }

    let mut prefixes = Vec::new();
    {
        let mut seed = Search::new(g, k, &order, opts, shared);
        for depth in 1..=order.len() {
            prefixes.clear();
            seed.prefixes(0, depth, 0, &mut prefixes);
            if prefixes.len() >= 4 * opts.threads {
                break;
            }
        }
    }
    let depth = prefixes
        .first()
        .map_or(0, |(colors, _)| colors.iter().filter(|&&c| c != 0).count());
    let next = AtomicUsize::new(0);
    let found: Mutex<Option<Vec<usize>>> = Mutex::new(None);
    let exhausted = AtomicBool::new(false);
    std::thread::scope(|scope| {
        for _ in 0..opts.threads {
            scope.spawn(|| {
                let mut search = Search::new(g, k, &order, opts, shared);
                loop {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    let Some((colors, max_used)) = prefixes.get(i) else {
                        break;
                    };
                    search.colors.clone_from(colors);
                    match search.dfs(depth, *max_used) {
                        Ok(Step::Found) => {
                            shared.stop.store(true, Ordering::Relaxed);
                            *found.lock().expect("no poisoned lock") = Some(search.colors.clone());
                            break;
                        }
                        Ok(Step::Stopped) => break,
                        Ok(Step::Exhausted) => {}
                        Err(()) => {
                            exhausted.store(true, Ordering::Relaxed);
                            shared.stop.store(true, Ordering::Relaxed);
                            break;
                        }
                    }
                }
            });
        }
    });
    shared.stop.store(false, Ordering::Relaxed);
    if let Some(colors) = found.into_inner().expect("no poisoned lock") {
        return to_coloring(colors).map(Some);
    }
    if exhausted.load(Ordering::Relaxed) {
        return Err(budget_error());
    }
    Ok(None)
}

fn check_connected(g: &Graph) -> Result<(), SolveError> {
    if g.n() == 0 {
        return Err(SolveError::Empty);
    }
    if !g.is_connected() {
        return Err(SolveError::Disconnected);
    }
    Ok(())
}

/// A conflict-free coloring with colors `1..=k`, or `None` if there is none.
pub fn feasible_k(
    g: &Graph,
    k: usize,
    opts: &SolveOptions,
) -> Result<Option<VertexColoring>, SolveError> {
    check_connected(g)?;
    if k == 0 || k > g.n() {
        return Err(SolveError::KOutOfRange { k, n: g.n() });
    }
    run_search(g, k, opts, &Shared::new(opts.node_budget))
}

fn fast_path(g: &Graph) -> Result<Option<(VertexColoring, Method)>, SolveError> {
    let n = g.n();
    if n == 1 {
        return Ok(Some((single_vertex_coloring(), Method::SingleVertex)));
    }
    if n >= 3 && g.is_complete() {
        return Ok(two_coloring_2connected(g, 0)
            .ok()
            .map(|c| (c, Method::Complete)));
    }
    if n >= 3 {
        let cuts = cut_vertices(g)?;
        if cuts.is_empty() {
            return Ok(two_coloring_2connected(g, 0)
                .ok()
                .map(|c| (c, Method::TwoConnected)));
        }
        if cuts.len() == 1 {
            return Ok(two_coloring_one_cut(g)
                .ok()
                .map(|c| (c, Method::OneCutVertex)));
        }
    }
    Ok(path_ruler_coloring(g).ok().map(|c| (c, Method::Path)))
}

pub fn vcfc_exact(g: &Graph, opts: &SolveOptions) -> Result<SolveResult, SolveError> {
    let started = Instant::now();
    check_connected(g)?;
    let n = g.n();
    let verifier = Verifier::new(g);

    if opts.use_theorem_fast_paths {
        if let Some((coloring, method)) = fast_path(g)? {
            if let Some(max_k) = opts.max_k.filter(|&m| m < coloring.k()) {
                return Err(SolveError::NoneUpToMaxK { max_k });
            }
            let certificate = verifier.certificate(coloring.colors());
            if certificate.verdict {
                return Ok(SolveResult {
                    vcfc: coloring.k(),
                    start_k: coloring.k(),
                    coloring,
                    certificate,
                    method,
                    stats: SolveStats {
                        elapsed: started.elapsed(),
                        ..SolveStats::default()
                    },
                });
            }
        }
    }

    let (start_k, ceiling) = if n == 1 {
        (1, 1)
    } else if opts.use_theorem_fast_paths {
        (
            lower_bound_with(g, opts.bounds)?.value,
            upper_bound(g)?.value,
        )
    } else {
        (1, n)
    };
    let max_k = opts.max_k.map_or(ceiling, |m| m.min(n));
    let shared = Shared::new(opts.node_budget);
    for k in start_k..=max_k {
        if let Some(coloring) = run_search(g, k, opts, &shared)? {
            let certificate = verifier.certificate(coloring.colors());
            debug_assert!(certificate.verdict);
            return Ok(SolveResult {
                vcfc: k,
                coloring,
                certificate,
                method: Method::Search,
                start_k,
                stats: SolveStats {
                    nodes: shared.nodes.load(Ordering::Relaxed),
                    colorings_tested: shared.tested.load(Ordering::Relaxed),
                    elapsed: started.elapsed(),
                },
            });
        }
    }
    Err(SolveError::NoneUpToMaxK { max_k })
}

/// Smallest `k` admitting a conflict-free coloring, by enumerating every
/// canonical coloring and checking it with path enumeration.
pub fn vcfc_brute(g: &Graph) -> Result<usize, SolveError> {
    vcfc_brute_capped(g, BRUTE_CAP)
}

pub fn vcfc_brute_capped(g: &Graph, cap: usize) -> Result<usize, SolveError> {
    check_connected(g)?;
    let n = g.n();
    if n > cap {
        return Err(SolveError::CapExceeded { n, cap });
    }

    fn enumerate(
        g: &Graph,
        colors: &mut Vec<usize>,
        k: usize,
        max_used: usize,
    ) -> Result<bool, ColoringError> {
        if colors.len() == g.n() {
            if max_used < k {
                return Ok(false);
            }
            let c = VertexColoring::new(colors.clone(), k)?;
            return is_cfvc_naive(g, &c);
        }
        for c in 1..=k.min(max_used + 1) {
            colors.push(c);
            let hit = enumerate(g, colors, k, max_used.max(c))?;
            colors.pop();
            if hit {
                return Ok(true);
            }
        }
        Ok(false)
    }

    for k in 1..=n {
        if enumerate(g, &mut Vec::with_capacity(n), k, 0)? {
            return Ok(k);
        }
    }
    unreachable!("n distinct colors always work")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::path_bound;
    use crate::coloring::is_cfvc;
    use crate::graph::generate::{
        complete, corona, cycle, path, random_connected, random_tree, star,
    };

    #[test]
    fn feasible_examples() {
        let opts = SolveOptions::default();
        let c = feasible_k(&path(7), 3, &opts).unwrap().unwrap();
        assert!(is_cfvc(&path(7), &c).unwrap().verdict);
        assert_eq!(feasible_k(&path(7), 2, &opts).unwrap(), None);
        let k1 = feasible_k(&Graph::empty(1), 1, &opts).unwrap().unwrap();
        assert_eq!(k1.colors(), &[1]);
        assert_eq!(
            feasible_k(&path(3), 4, &opts),
            Err(SolveError::KOutOfRange { k: 4, n: 3 })
        );
    }

    #[test]
    fn exact_examples() {
        let opts = SolveOptions::default();
        assert_eq!(vcfc_exact(&complete(4), &opts).unwrap().vcfc, 2);
        let r = vcfc_exact(&corona(&cycle(3), 1), &opts).unwrap();
        assert_eq!((r.vcfc, r.method), (3, Method::Search));
        assert_eq!(vcfc_exact(&path(8), &opts).unwrap().vcfc, 4);
        assert_eq!(
            vcfc_exact(&path(8), &SolveOptions::search_only())
                .unwrap()
                .vcfc,
            4
        );
        let disconnected = Graph::from_edge_list(4, &[(0, 1), (2, 3)]).unwrap();
        assert_eq!(
            vcfc_exact(&disconnected, &opts),
            Err(SolveError::Disconnected)
        );
    }

    #[test]
    fn brute_examples() {
        assert_eq!(vcfc_brute(&path(5)).unwrap(), 3);
        assert_eq!(vcfc_brute(&star(3)).unwrap(), 2);
        assert_eq!(vcfc_brute(&Graph::empty(1)).unwrap(), 1);
        assert!(matches!(
            vcfc_brute(&path(9)),
            Err(SolveError::CapExceeded { .. })
        ));
    }

    #[test]
    fn budget_is_reported() {
        let opts = SolveOptions {
            node_budget: Some(10),
            ..SolveOptions::search_only()
        };
        assert!(matches!(
            vcfc_exact(&path(12), &opts),
            Err(SolveError::BudgetExhausted { .. })
        ));
    }

    #[test]
    fn max_k_ceiling() {
        let opts = SolveOptions {
            max_k: Some(2),
            ..SolveOptions::search_only()
        };
        assert_eq!(
            vcfc_exact(&path(7), &opts),
            Err(SolveError::NoneUpToMaxK { max_k: 2 })
        );
        let fast = SolveOptions {
            max_k: Some(3),
            ..SolveOptions::default()
        };
        assert_eq!(
            vcfc_exact(&path(12), &fast),
            Err(SolveError::NoneUpToMaxK { max_k: 3 })
        );
        assert_eq!(vcfc_exact(&path(7), &fast).unwrap().vcfc, 3);
    }

    #[test]
    fn parallel_matches_sequential() {
        for seed in 0..20 {
            let g = random_connected(8, 0.15, seed);
            let seq = vcfc_exact(&g, &SolveOptions::search_only()).unwrap();
            let par = vcfc_exact(
                &g,
                &SolveOptions {
                    threads: 3,
                    ..SolveOptions::search_only()
                },
            )
            .unwrap();
            assert_eq!(seq.vcfc, par.vcfc);
            assert!(par.certificate.verdict);
        }
    }

    #[test]
    fn fast_paths_agree_with_search() {
        for seed in 0..60 {
            let n = 2 + seed as usize % 7;
            let g = if seed % 2 == 0 {
                random_tree(n, seed)
            } else {
                random_connected(n, 0.3, seed)
            };
            let fast = vcfc_exact(&g, &SolveOptions::default()).unwrap();
            let slow = vcfc_exact(&g, &SolveOptions::search_only()).unwrap();
            assert_eq!(fast.vcfc, slow.vcfc, "{g:?}");
            assert!(fast.certificate.revalidate(&g, &fast.coloring));
        }
    }

    #[test]
    fn pair_pruning_does_not_change_answers() {
        for seed in 0..60 {
            let g = random_connected(8, 0.15, seed);
            let plain = SolveOptions {
                pair_pruning: false,
                ..SolveOptions::search_only()
            };
            let pruned = vcfc_exact(&g, &SolveOptions::search_only()).unwrap();
            assert_eq!(
                vcfc_exact(&g, &plain).unwrap().vcfc,
                pruned.vcfc,
                "seed {seed}"
            );
            assert_eq!(pruned.vcfc, vcfc_brute(&g).unwrap(), "seed {seed}");
        }
    }

    #[test]
    fn tree_pruning_does_not_change_answers() {
        for seed in 0..40 {
            let t = random_tree(10, seed);
            let plain = SolveOptions {
                tree_pruning: false,
                tree_adjacent_distinct: false,
                ..SolveOptions::search_only()
            };
            assert_eq!(
                vcfc_exact(&t, &plain).unwrap().vcfc,
                vcfc_exact(&t, &SolveOptions::search_only()).unwrap().vcfc
            );
        }
    }

    #[test]
    fn paths_by_search() {
        for n in 2..=10 {
            let r = vcfc_exact(&path(n), &SolveOptions::search_only()).unwrap();
            assert_eq!(r.vcfc, path_bound(n), "P{n}");
        }
    }
}
