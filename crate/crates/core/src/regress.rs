//! Regression suites: every structural claim about the conflict-free
//! vertex-connection number, replayed against the exact solver over
//! enumerated and seeded graphs.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::bounds::{floor_log_three_halves, lower_bound_with, path_bound, upper_bound};
use crate::coloring::{exists_cf_path, exists_cf_path_naive, is_cfvc, VertexColoring};
use crate::constructions::{
    centroid_ranking, corona_3coloring, ranking_as_coloring, ruler_coloring,
    star_cutedges_3coloring, tree_level_coloring,
};
use crate::decomposition::cut_vertices;
use crate::graph::canon::{canonical_form, CanonicalForm};
use crate::graph::generate::{
    all_trees, complete, corona, cycle, path, random_connected, random_tree, AllConnected,
    MAX_ENUMERATION_ORDER,
};
use crate::graph::graph6::encode_graph6;
use crate::graph::Graph;
use crate::solver::{vcfc_brute, vcfc_exact, SolveError, SolveOptions};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RegressError {
    #[error("max n must be within 1..={MAX_ENUMERATION_ORDER}, got {0}")]
    MaxNOutOfRange(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegressConfig {
    pub max_n: usize,
    pub seed: u64,
    /// Seeded random instances per randomized suite.
    pub random_samples: usize,
    /// Search trees of order 8..=11 for a maximum-degree tightness witness.
    pub remark_probe: bool,
    pub solve: SolveOptions,
}

impl Default for RegressConfig {
    fn default() -> Self {
        RegressConfig {
            max_n: 6,
            seed: 0,
            random_samples: 1000,
            remark_probe: false,
            solve: SolveOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub claim: &'static str,
    pub checked: usize,
    pub violations: Vec<String>,
    pub budget_failures: usize,
    pub notes: Vec<String>,
    #[serde(serialize_with = "as_secs")]
    pub elapsed: Duration,
}

fn as_secs<S: serde::Serializer>(d: &Duration, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(d.as_secs_f64())
}

impl SuiteResult {
    fn new(name: &'static str, claim: &'static str) -> Self {
        SuiteResult {
            name,
            claim,
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.budget_failures == 0
    }

    fn violation(&mut self, g: &Graph, msg: impl std::fmt::Display) {
        let code = encode_graph6(g).unwrap_or_else(|_| format!("n={}", g.n()));
        self.violations.push(format!("{code}: {msg}"));
    }

    fn solve(&mut self, g: &Graph, opts: &SolveOptions) -> Option<usize> {
        match vcfc_exact(g, opts) {
            Ok(r) => Some(r.vcfc),
            Err(SolveError::BudgetExhausted { .. }) => {
                self.budget_failures += 1;
                None
            }
            Err(e) => {
                self.violation(g, format!("solver error: {e}"));
                None
            }
        }
    }

    fn verify(&mut self, g: &Graph, c: &VertexColoring, what: &str) {
        match is_cfvc(g, c) {
            Ok(cert) if cert.verdict => {}
            Ok(cert) => self.violation(g, format!("{what} fails at pair {:?}", cert.failure)),
            Err(e) => self.violation(g, format!("{what}: {e}")),
        }
    }
}

/// Colorings `1..=k` in restricted-growth form (first vertex 1, each new
/// color one above the current maximum).
pub fn canonical_colorings(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn grow(n: usize, k: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for c in 1..=k.min(max + 1) {
            cur.push(c);
            grow(n, k, cur, max.max(c), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    grow(n, k, &mut Vec::with_capacity(n), 0, &mut out);
    out
}

/// `P_7` with a triangle glued at one end.
pub fn path7_with_end_triangle() -> Graph {
    let mut edges: Vec<_> = (1..7).map(|i| (i - 1, i)).collect();
    edges.extend([(6, 7), (7, 8), (6, 8)]);
    Graph::from_edge_list(9, &edges).expect("valid edges")
}

fn append_cycle(edges: &mut Vec<(usize, usize)>, next: &mut usize, anchor: usize, len: usize) {
    let mut prev = anchor;
    for _ in 1..len {
        edges.push((prev, *next));
        prev = *next;
        *next += 1;
    }
    edges.push((prev, anchor));
}

/// Twenty-five graphs whose bridges form a star `K_{1,t}` (`t = 1..=5`, five
/// variants each) with at least two cut vertices. Star leaves carry
/// triangles or 4-cycles; some variants put the center on a cycle of its own or
/// leave one star leaf pendant.
pub fn star_cutedge_family() -> Vec<Graph> {
    let mut out = Vec::new();
    for t in 1..=5usize {
        for variant in 0..5usize {
            let mut edges = Vec::new();
            let mut next = 1;
            if t == 1 || variant >= 3 {
                append_cycle(&mut edges, &mut next, 0, 3 + variant % 2);
            }
            for i in 0..t {
                let leaf = next;
                next += 1;
                edges.push((0, leaf));
                let pendant = variant == 4 && t >= 2 && i == t - 1;
                if !pendant {
                    append_cycle(&mut edges, &mut next, leaf, 3 + (i + variant) % 2);
                }
            }
            out.push(Graph::from_edge_list(next, &edges).expect("valid edges"));
        }
    }
    out
}

/// Random spanning tree of a connected graph (randomized Kruskal).
pub fn random_spanning_tree(g: &Graph, seed: u64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<_> = g.edges().collect();
    edges.shuffle(&mut rng);
    let mut parent: Vec<usize> = (0..g.n()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        p[x] = r;
        r
    }
    let mut chosen = Vec::new();
    for (u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        if a != b {
            parent[a] = b;
            chosen.push((u, v));
        }
    }
    Graph::from_edge_list(g.n(), &chosen).expect("subset of valid edges")
}

pub fn path_suite(max_n: usize) -> SuiteResult {
    let started = Instant::now();
    let mut s = SuiteResult::new("paths", "vcfc(P_n) = ceil(log2(n+1))");
    for n in 2..=max_n {
        s.checked += 1;
        if let Some(v) = s.solve(&path(n), &SolveOptions::search_only()) {
            if v != path_bound(n) {
                s.violation(
                    &path(n),
                    format!("search gives {v}, formula {}", path_bound(n)),
                );
            }
        }
    }
    for n in 1..=64 {
        s.checked += 1;
        let c = ruler_coloring(n).expect("n >= 1");
        s.verify(&path(n), &c, "ruler coloring");
    }
    s.elapsed = started.elapsed();
    s
}

pub fn complete_suite(max_n: usize) -> SuiteResult {
    let started = Instant::now();
    let mut s = SuiteResult::new("complete", "vcfc(K_n) = 2");
    for n in 2..=max_n {
        s.checked += 1;
        let g = complete(n);
        if let Some(v) = s.solve(&g, &SolveOptions::search_only()) {
            if v != 2 {
                s.violation(&g, format!("vcfc {v}"));
            }
        }
    }
    s.elapsed = started.elapsed();
    s
}

fn compare_verifiers(s: &mut SuiteResult, g: &Graph, c: &VertexColoring) {
    let n = g.n();
    for u in 0..n {
        for v in (u + 1)..n {
            s.checked += 1;
            let flow = exists_cf_path(g, c, u, v).expect("valid pair");
            let naive = exists_cf_path_naive(g, c, u, v).expect("within cap");
            if flow.is_some() != naive.is_some() {
                s.violation(
                    g,
                    format!(
                        "{:?} pair ({u},{v}): flow {flow:?}, naive {naive:?}",
                        c.colors()
                    ),
                );
            }
        }
    }
}

/// Flow-based pair test against path enumeration: exhaustive over
/// connected graphs up to `exhaustive_n` with every canonical coloring of at
/// most 3 colors, plus `samples` random colored graphs of order at most 9.
pub fn oracle_suite(exhaustive_n: usize, samples: usize, seed: u64) -> SuiteResult {
    let started = Instant::now();
    let mut s = SuiteResult::new(
        "verifier-oracle",
        "flow verifier agrees with path enumeration",
    );
    for n in 2..=exhaustive_n {
        let colorings = canonical_colorings(n, 3);
        for g in AllConnected::new(n, false).expect("n within range") {
            for colors in &colorings {
                let c = VertexColoring::new(colors.clone(), 3).expect("colors in range");
                compare_verifiers(&mut s, &g, &c);
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let n = rng.gen_range(2..=9);
        let p = rng.gen_range(0.0..0.6);
        let g = random_connected(n, p, seed.wrapping_add(i as u64));
        let k = rng.gen_range(1..=4);
        let colors = (0..n).map(|_| rng.gen_range(1..=k)).collect();
        let c = VertexColoring::new(colors, k).expect("colors in range");
        compare_verifiers(&mut s, &g, &c);
    }
    s.elapsed = started.elapsed();
    s
}

/// Exact solver against brute force on every labeled connected graph up to
/// `exhaustive_n`, plus `samples` random connected graphs of order 7 and 8.
pub fn solver_oracle_suite(exhaustive_n: usize, samples: usize, seed: u64) -> SuiteResult {
    let started = Instant::now();
    let mut s = SuiteResult::new("solver-oracle", "exact solver agrees with brute force");
    let check = |s: &mut SuiteResult, g: &Graph| {
        s.checked += 1;
        let brute = vcfc_brute(g).expect("within brute-force cap");
        for opts in [SolveOptions::default(), SolveOptions::search_only()] {
            if let Some(v) = s.solve(g, &opts) {
                if v != brute {
                    s.violation(g, format!("exact {v}, brute {brute}"));
                }
            }
        }
    };
    for n in 1..=exhaustive_n {
        for g in AllConnected::new(n, false).expect("n within range") {
            check(&mut s, &g);
        }
    }
    for i in 0..samples {
        let n = 7 + i % 2;
        let g = random_connected(n, 0.12 + 0.1 * (i % 3) as f64, seed.wrapping_add(i as u64));
        check(&mut s, &g);
    }
    s.elapsed = started.elapsed();
    s
}

/// One pass over all connected graphs up to `max_n`, checking the
/// two-color characterization, the maximum-degree condition, the bound
/// sandwich and the path conjecture. Orders at or above `memo_from` reuse
/// results across isomorphic labelings.
pub fn sweep_suites(max_n: usize, memo_from: usize, opts: &SolveOptions) -> Vec<SuiteResult> {
    let started = Instant::now();
    let mut thm2 = SuiteResult::new(
        "two-colors",
        "n >= 3: vcfc = 2 iff 2-connected or exactly one cut vertex",
    );
    let mut thm3 = SuiteResult::new(
        "max-degree",
        ">= 2 cut vertices and n-4 <= Δ <= n-2 imply vcfc = 3",
    );
    let mut sandwich = SuiteResult::new("bounds", "lower bound <= vcfc <= upper bound");
    let mut conj = SuiteResult::new("conjecture", "vcfc(G) <= vcfc(P_n)");
    // search from k = 1 so the characterization is not assumed by the solver
    let search = SolveOptions {
        use_theorem_fast_paths: false,
        ..opts.clone()
    };

    for n in 1..=max_n {
        let mut memo: HashMap<CanonicalForm, Option<usize>> = HashMap::new();
        for g in AllConnected::new(n, false).expect("n within range") {
            let value = if n >= memo_from {
                let key = canonical_form(&g);
                match memo.get(&key) {
                    Some(&v) => v,
                    None => {
                        let v = thm2.solve(&g, &search);
                        memo.insert(key, v);
                        v
                    }
                }
            } else {
                thm2.solve(&g, &search)
            };
            let Some(vcfc) = value else { continue };
            let cuts = cut_vertices(&g).expect("connected").len();

            conj.checked += 1;
            if vcfc > path_bound(n) {
                conj.violation(
                    &g,
                    format!("COUNTEREXAMPLE: vcfc {vcfc} > {}", path_bound(n)),
                );
            }
            if n >= 2 {
                sandwich.checked += 1;
                let lo = lower_bound_with(&g, opts.bounds).expect("n >= 2, connected");
                let hi = upper_bound(&g).expect("n >= 2, connected");
                if lo.value > vcfc || vcfc > hi.value {
                    sandwich.violation(
                        &g,
                        format!(
                            "{} ({}) <= {vcfc} <= {} ({}) fails",
                            lo.value, lo.tag, hi.value, hi.tag
                        ),
                    );
                }
            }
            if n >= 3 {
                thm2.checked += 1;
                if (vcfc == 2) != (cuts <= 1) {
                    thm2.violation(&g, format!("vcfc {vcfc} with {cuts} cut vertices"));
                }
                let delta = g.max_degree();
                if cuts >= 2 && delta + 4 >= n && delta + 2 <= n {
                    thm3.checked += 1;
                    if vcfc != 3 {
                        thm3.violation(&g, format!("vcfc {vcfc}, Δ = {delta}"));
                    }
                }
            }
        }
    }
    let elapsed = started.elapsed();
    let mut out = vec![thm2, thm3, sandwich, conj];
    for s in &mut out {
        s.elapsed = elapsed;
    }
    out
}

/// Trees of order 8..=11 with `Δ = n - 5` and four colors required.
pub fn remark_probe(opts: &SolveOptions) -> SuiteResult {
    let started = Instant::now();
    let mut s = SuiteResult::new(
        "max-degree-tightness",
        "a tree with Δ = n-5 and vcfc = 4 exists (reported only)",
    );
    for n in 8..=11 {
        let mut witnesses = Vec::new();
        for t in all_trees(n).into_iter().filter(|t| t.max_degree() + 5 == n) {
            s.checked += 1;
            if s.solve(&t, opts) == Some(4) {
                witnesses.push(encode_graph6(&t).expect("small"));
            }
        }
        match witnesses.first() {
            Some(first) => s.notes.push(format!(
                "n = {n}: {} witness(es), e.g. {first}",
                witnesses.len()
            )),
            None => s.notes.push(format!("n = {n}: no witness")),
        }
    }
    s.elapsed = started.elapsed();
    s
}

pub fn star_cutedge_suite(opts: &SolveOptions) -> SuiteResult {
    let started = Instant::now();
    let mut s = SuiteResult::new("cut-edge-star", "bridges forming a star imply vcfc = 3");
    for g in star_cutedge_family() {
        s.checked += 1;
        match star_cutedges_3coloring(&g) {
            Ok(c) => s.verify(&g, &c, "star coloring"),
            Err(e) => s.violation(&g, e),
        }
        if let Some(v) = s.solve(&g, opts) {
            if v != 3 {
                s.violation(&g, format!("vcfc {v}"));
            }
        }
    }
    s.elapsed = started.elapsed();
    s
}

pub fn corona_suite(opts: &SolveOptions) -> SuiteResult {
    let started = Instant::now();
    let mut s = SuiteResult::new("corona", "t-coronas of cycles have vcfc = 3");
    for n in 3..=6 {
        for t in 1..=3 {
            s.checked += 1;
            let g = corona(&cycle(n), t);
            match corona_3coloring(&g) {
                Ok(c) => s.verify(&g, &c, "corona coloring"),
                Err(e) => s.violation(&g, e),
            }
            if let Some(v) = s.solve(&g, opts) {
                if v != 3 {
                    s.violation(&g, format!("vcfc {v}"));
                }
            }
        }
    }
    s.elapsed = started.elapsed();
    s
}

pub fn block_path_probe(opts: &SolveOptions) -> SuiteResult {
    let started = Instant::now();
    let mut s = SuiteResult::new(
        "block-path",
        "P_7 with a block glued at an end needs >= 4 colors",
    );
    let g = path7_with_end_triangle();
    s.checked += 1;
    if let Some(v) = s.solve(&g, opts) {
        s.notes.push(format!("vcfc = {v}"));
        if v < 4 {
            s.violation(&g, format!("vcfc {v}"));
        }
    }
    s.elapsed = started.elapsed();
    s
}

pub fn tree_bounds_suite(samples: usize, seed: u64, opts: &SolveOptions) -> SuiteResult {
    let started = Instant::now();
    let mut s = SuiteResult::new(
        "tree-bounds",
        "tree lower/upper bounds, level coloring, centroid ranking",
    );
    for i in 0..samples {
        let n = 3 + i % 10;
        let t = random_tree(n, seed.wrapping_add(i as u64));
        s.checked += 1;
        let m = t.metrics().expect("trees are connected");
        let lower = 2.max(crate::bounds::ceil_log2(m.diameter + 1));
        let mut upper = (m.radius + 1).min(floor_log_three_halves(n));
        if n >= 5 {
            upper = upper.min(n.div_ceil(2));
        }
        if let Some(v) = s.solve(&t, opts) {
            if !(lower <= v && v <= upper) {
                s.violation(&t, format!("{lower} <= {v} <= {upper} fails"));
            }
        }
        match tree_level_coloring(&t) {
            Ok(c) => s.verify(&t, &c, "level coloring"),
            Err(e) => s.violation(&t, e),
        }
        match centroid_ranking(&t).and_then(|r| ranking_as_coloring(&t, &r)) {
            Ok(c) => s.verify(&t, &c, "centroid ranking"),
            Err(e) => s.violation(&t, e),
        }
    }
    s.elapsed = started.elapsed();
    s
}

pub fn spanning_tree_suite(samples: usize, seed: u64, opts: &SolveOptions) -> SuiteResult {
    let started = Instant::now();
    let mut s = SuiteResult::new("spanning-tree", "vcfc(G) <= vcfc(T) for spanning trees T");
    for i in 0..samples {
        let n = 2 + i % 8;
        let g = random_connected(n, 0.3, seed.wrapping_add(i as u64));
        let t = random_spanning_tree(&g, seed.wrapping_add(1_000_000 + i as u64));
        s.checked += 1;
        if let (Some(vg), Some(vt)) = (s.solve(&g, opts), s.solve(&t, opts)) {
            if vg > vt {
                s.violation(&g, format!("vcfc(G) = {vg} > vcfc(T) = {vt}"));
            }
        }
    }
    s.elapsed = started.elapsed();
    s
}

pub fn run_regression(cfg: &RegressConfig) -> Result<Vec<SuiteResult>, RegressError> {
    if cfg.max_n == 0 || cfg.max_n > MAX_ENUMERATION_ORDER {
        return Err(RegressError::MaxNOutOfRange(cfg.max_n));
    }
    let opts = &cfg.solve;
    let mut out = vec![
        path_suite(12),
        complete_suite(8),
        oracle_suite(cfg.max_n.min(5), cfg.random_samples, cfg.seed),
        solver_oracle_suite(cfg.max_n.min(6), cfg.random_samples / 2, cfg.seed),
    ];
    out.extend(sweep_suites(cfg.max_n, 7, opts));
    out.push(star_cutedge_suite(opts));
    out.push(corona_suite(opts));
    out.push(block_path_probe(opts));
    out.push(tree_bounds_suite(200, cfg.seed, opts));
    out.push(spanning_tree_suite(100, cfg.seed, opts));
    if cfg.remark_probe {
        out.push(remark_probe(opts));
    }
    Ok(out)
}

/// Conjecture check for one graph: is `vcfc(G) <= ceil(log2(n+1))`?
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConjectureVerdict {
    pub id: usize,
    pub n: usize,
    pub vcfc: Option<usize>,
    pub path_bound: usize,
    /// `None` when the solve did not complete.
    pub holds: Option<bool>,
}

pub fn conjecture_verdict(
    id: usize,
    g: &Graph,
    opts: &SolveOptions,
) -> Result<ConjectureVerdict, SolveError> {
    let bound = path_bound(g.n());
    let vcfc = match vcfc_exact(g, opts) {
        Ok(r) => Some(r.vcfc),
        Err(SolveError::BudgetExhausted { .. }) => None,
        Err(e) => return Err(e),
    };
    Ok(ConjectureVerdict {
        id,
        n: g.n(),
        vcfc,
        path_bound: bound,
        holds: vcfc.map(|v| v <= bound),
    })
}
