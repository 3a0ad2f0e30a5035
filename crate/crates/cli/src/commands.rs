use std::io::{self, Write};
use std::time::Instant;

use anyhow::{bail, Result};
use serde::Serialize;
use vcfc::bounds::{bounds, spanning_tree_bound, BoundOptions};
use vcfc::coloring::is_cfvc;
use vcfc::constructions::{
    centroid_ranking, corona_3coloring, max_degree_3coloring, path_ruler_coloring,
    ranking_as_coloring, star_cutedges_3coloring, tree_level_coloring, two_coloring_2connected,
    two_coloring_one_cut,
};
use vcfc::decomposition::cut_vertices;
use vcfc::graph::edgelist::{parse_edge_list, write_edge_list};
use vcfc::graph::graph6::encode_graph6;
use vcfc::regress::{conjecture_verdict, run_regression, RegressConfig, SuiteResult};
use vcfc::solver::{vcfc_exact, Method, SolveError};
use vcfc::{Graph, SolveOptions, VertexColoring};

use crate::args::{Common, Construction, Format};
use crate::input::{self, Item};
use crate::report::{
    opt, process, Emitter, Mode, Row, Status, Summary, EXIT_BUDGET, EXIT_INPUT, EXIT_OK,
    EXIT_VIOLATION,
};

pub fn mode(common: &Common) -> Mode {
    if common.json {
        Mode::Json
    } else if common.csv {
        Mode::Csv
    } else {
        Mode::Table
    }
}

pub fn solve_options(common: &Common) -> SolveOptions {
    let base = if common.search_only {
        SolveOptions::search_only()
    } else {
        SolveOptions::default()
    };
    SolveOptions {
        max_k: common.max_k,
        node_budget: common.node_budget,
        threads: common.threads.max(1),
        bounds: BoundOptions {
            strict_tree_lower: common.strict_bounds,
        },
        ..base
    }
}

/// Per-graph structure shared by several records.
#[derive(Debug, Clone, Default, Serialize)]
pub struct Shape {
    pub n: Option<usize>,
    pub m: Option<usize>,
    pub cut_vertices: Option<usize>,
    pub max_degree: Option<usize>,
    pub radius: Option<usize>,
    pub diameter: Option<usize>,
}

fn shape(g: &Graph) -> Shape {
    let metrics = g.metrics().ok();
    Shape {
        n: Some(g.n()),
        m: Some(g.m()),
        cut_vertices: cut_vertices(g).ok().map(|c| c.len()),
        max_degree: Some(g.max_degree()),
        radius: metrics.as_ref().map(|m| m.radius),
        diameter: metrics.as_ref().map(|m| m.diameter),
    }
}

/// Connected graph, or the status and note for a record that is skipped.
fn admit(item: Item) -> std::result::Result<Graph, (Status, String, Option<Graph>)> {
    match item.graph {
        Err(e) => Err((Status::InputError, e, None)),
        Ok(g) if g.n() == 0 => Err((Status::Skipped, "empty graph".into(), Some(g))),
        Ok(g) if !g.is_connected() => Err((Status::Skipped, "disconnected".into(), Some(g))),
        Ok(g) => Ok(g),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SolveRecord {
    pub id: usize,
    #[serde(flatten)]
    pub shape: Shape,
    pub lower: Option<usize>,
    pub upper: Option<usize>,
    pub vcfc: Option<usize>,
    pub method: Option<Method>,
    pub elapsed_ms: f64,
    pub status: Status,
    pub note: Option<String>,
    pub coloring: Option<Vec<usize>>,
}

impl Row for SolveRecord {
    fn header() -> &'static [&'static str] {
        &[
            "id", "n", "m", "cuts", "maxdeg", "radius", "diam", "lower", "upper", "vcfc", "ms",
            "status",
        ]
    }

    fn widths() -> Vec<usize> {
        vec![6, 4, 4, 4, 6, 6, 4, 5, 5, 4, 9, 16]
    }

    fn cells(&self) -> Vec<String> {
        let s = &self.shape;
        vec![
            self.id.to_string(),
            opt(&s.n),
            opt(&s.m),
            opt(&s.cut_vertices),
            opt(&s.max_degree),
            opt(&s.radius),
            opt(&s.diameter),
            opt(&self.lower),
            opt(&self.upper),
            opt(&self.vcfc),
            format!("{:.3}", self.elapsed_ms),
            self.status.as_str().to_string(),
        ]
    }
}

fn method_name(m: Method) -> String {
    serde_json::to_value(m)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

pub fn solve_record(item: Item, opts: &SolveOptions, solver_threads: usize) -> SolveRecord {
    let started = Instant::now();
    let id = item.id;
    let mut rec = SolveRecord {
        id,
        shape: Shape::default(),
        lower: None,
        upper: None,
        vcfc: None,
        method: None,
        elapsed_ms: 0.0,
        status: Status::Ok,
        note: None,
        coloring: None,
    };
    let g = match admit(item) {
        Ok(g) => g,
        Err((status, note, g)) => {
            if let Some(g) = g {
                rec.shape = Shape {
                    n: Some(g.n()),
                    m: Some(g.m()),
                    ..Shape::default()
                };
            }
            rec.status = status;
            rec.note = Some(note);
            return rec;
        }
    };
    rec.shape = shape(&g);
    if g.n() >= 2 {
        if let Ok(b) = bounds(&g, opts.bounds) {
            rec.lower = Some(b.lower.value);
            rec.upper = Some(b.upper.value);
        }
    }
    let opts = SolveOptions {
        threads: solver_threads,
        ..opts.clone()
    };
    match vcfc_exact(&g, &opts) {
        Ok(r) => {
            rec.vcfc = Some(r.vcfc);
            rec.method = Some(r.method);
            rec.note = Some(method_name(r.method));
            rec.coloring = Some(r.coloring.colors().to_vec());
        }
        Err(e @ (SolveError::BudgetExhausted { .. } | SolveError::NoneUpToMaxK { .. })) => {
            rec.status = Status::BudgetExhausted;
            rec.note = Some(e.to_string());
        }
        Err(e) => {
            rec.status = Status::Skipped;
            rec.note = Some(e.to_string());
        }
    }
    rec.elapsed_ms = started.elapsed().as_secs_f64() * 1e3;
    rec
}

fn record_violation(rec: &SolveRecord) -> Option<String> {
    let v = rec.vcfc?;
    let lo = rec.lower.unwrap_or(v);
    let hi = rec.upper.unwrap_or(v);
    (v < lo || v > hi).then(|| format!("graph {}: vcfc {v} outside [{lo}, {hi}]", rec.id))
}

pub fn cmd_solve(common: &Common, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let opts = solve_options(common);
    let items = input::items(common)?;
    let mut summary = Summary::default();
    let mut emitter = Emitter::new(out, mode(common));
    process(
        items,
        common.threads,
        |item, t| solve_record(item, &opts, t),
        |rec| {
            summary.count(rec.status);
            if rec.status == Status::InputError {
                writeln!(err, "line {}: {}", rec.id, opt(&rec.note))?;
            }
            if let Some(v) = record_violation(&rec) {
                summary.violations.push(v);
            }
            emitter.row(&rec)
        },
    )?;
    emitter.finish(&summary, &summary.lines())?;
    Ok(summary.exit_code())
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub verdict: bool,
    pub failure: Option<(usize, usize)>,
    pub certificate: vcfc::CfvcCertificate,
}

pub fn cmd_verify(
    common: &Common,
    coloring: &std::path::Path,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let g = input::single(common)?;
    let c = VertexColoring::parse_text(&input::read_file(coloring)?)?;
    let cert = match is_cfvc(&g, &c) {
        Ok(cert) => cert,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_INPUT);
        }
    };
    let verdict = cert.verdict;
    match mode(common) {
        Mode::Json => {
            let report = VerifyReport {
                verdict,
                failure: cert.failure,
                certificate: cert,
            };
            serde_json::to_writer(&mut *out, &report)?;
            writeln!(out)?;
        }
        Mode::Csv => {
            writeln!(out, "verdict,failing_u,failing_v")?;
            let (u, v) = cert
                .failure
                .map_or((String::new(), String::new()), |(u, v)| {
                    (u.to_string(), v.to_string())
                });
            writeln!(out, "{verdict},{u},{v}")?;
        }
        Mode::Table => {
            writeln!(out, "verdict: {verdict}")?;
            if let Some((u, v)) = cert.failure {
                writeln!(out, "failing pair: ({u}, {v})")?;
            }
        }
    }
    Ok(if verdict { EXIT_OK } else { EXIT_VIOLATION })
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstructRecord {
    pub id: usize,
    pub n: Option<usize>,
    pub construction: &'static str,
    pub k: Option<usize>,
    pub verified: Option<bool>,
    pub colors: Option<Vec<usize>>,
    pub status: Status,
    pub note: Option<String>,
}

impl Row for ConstructRecord {
    fn header() -> &'static [&'static str] {
        &[
            "id",
            "n",
            "construction",
            "k",
            "verified",
            "status",
            "colors",
        ]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.id.to_string(),
            opt(&self.n),
            self.construction.to_string(),
            opt(&self.k),
            opt(&self.verified),
            self.status.as_str().to_string(),
            self.colors.as_ref().map_or_else(
                || opt(&self.note),
                |c| c.iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
            ),
        ]
    }
}

fn construction_name(c: Construction) -> &'static str {
    match c {
        Construction::Ruler => "ruler",
        Construction::TwoConnected => "two-connected",
        Construction::OneCut => "one-cut",
        Construction::StarCutedges => "star-cutedges",
        Construction::Corona => "corona",
        Construction::TreeLevel => "tree-level",
        Construction::CentroidRanking => "centroid-ranking",
        Construction::MaxDegree => "max-degree",
    }
}

pub fn construct(
    g: &Graph,
    name: Construction,
    vertex: usize,
    opts: &SolveOptions,
) -> Result<VertexColoring> {
    Ok(match name {
        Construction::Ruler => path_ruler_coloring(g)?,
        Construction::TwoConnected => two_coloring_2connected(g, vertex)?,
        Construction::OneCut => two_coloring_one_cut(g)?,
        Construction::StarCutedges => star_cutedges_3coloring(g)?,
        Construction::Corona => corona_3coloring(g)?,
        Construction::TreeLevel => tree_level_coloring(g)?,
        Construction::CentroidRanking => ranking_as_coloring(g, &centroid_ranking(g)?)?,
        Construction::MaxDegree => max_degree_3coloring(g, opts)?,
    })
}

pub fn cmd_construct(
    common: &Common,
    name: Construction,
    vertex: usize,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let opts = solve_options(common);
    let label = construction_name(name);
    let mut summary = Summary::default();
    let mut failed = Vec::new();
    let mode = mode(common);
    let mut emitter = Emitter::new(&mut *out, mode);
    let mut text = String::new();
    for item in input::items(common)? {
        let id = item.id;
        let n = item.graph.as_ref().ok().map(Graph::n);
        let mut rec = ConstructRecord {
            id,
            n,
            construction: label,
            k: None,
            verified: None,
            colors: None,
            status: Status::Ok,
            note: None,
        };
        match item
            .graph
            .map_err(anyhow::Error::msg)
            .and_then(|g| Ok((construct(&g, name, vertex, &opts)?, g)))
        {
            Ok((c, g)) => {
                let verified = is_cfvc(&g, &c)?.verdict;
                if !verified {
                    failed.push(format!("graph {id}: {label} coloring is not conflict-free"));
                }
                rec.k = Some(c.k());
                rec.verified = Some(verified);
                rec.colors = Some(c.colors().to_vec());
                if mode == Mode::Table {
                    text.push_str(&format!(
                        "# graph {id}: {label}, {} colors, verified {verified}\n",
                        c.k()
                    ));
                    text.push_str(&c.to_text());
                }
            }
            Err(e) => {
                writeln!(err, "graph {id}: {e}")?;
                rec.status = Status::InputError;
                rec.note = Some(e.to_string());
            }
        }
        summary.count(rec.status);
        if mode != Mode::Table {
            emitter.row(&rec)?;
        }
    }
    summary.violations = failed;
    if mode == Mode::Table {
        let out = emitter.raw();
        write!(out, "{text}")?;
        for v in &summary.violations {
            writeln!(out, "# VIOLATION {v}")?;
        }
    } else {
        emitter.finish(&summary, &[])?;
    }
    Ok(summary.exit_code())
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsRecord {
    pub id: usize,
    pub n: Option<usize>,
    pub lower: Option<usize>,
    pub lower_tag: Option<String>,
    pub upper: Option<usize>,
    pub upper_tag: Option<String>,
    pub spanning_tree: Option<usize>,
    pub status: Status,
    pub note: Option<String>,
}

impl Row for BoundsRecord {
    fn header() -> &'static [&'static str] {
        &[
            "id", "n", "lower", "lower_by", "upper", "upper_by", "tree", "status",
        ]
    }

    fn widths() -> Vec<usize> {
        vec![6, 6, 6, 21, 6, 21, 6, 16]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.id.to_string(),
            opt(&self.n),
            opt(&self.lower),
            opt(&self.lower_tag),
            opt(&self.upper),
            opt(&self.upper_tag),
            opt(&self.spanning_tree),
            self.status.as_str().to_string(),
        ]
    }
}

pub fn cmd_bounds(
    common: &Common,
    spanning: Option<&std::path::Path>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let opts = solve_options(common);
    let tree = match spanning {
        Some(path) => Some(parse_edge_list(&input::read_file(path)?)?),
        None => None,
    };
    let items: Vec<Item> = input::items(common)?.collect();
    if tree.is_some() && items.len() != 1 {
        bail!("--spanning-tree needs exactly one input graph");
    }
    let mut summary = Summary::default();
    let mut emitter = Emitter::new(out, mode(common));
    for item in items {
        let id = item.id;
        let mut rec = BoundsRecord {
            id,
            n: None,
            lower: None,
            lower_tag: None,
            upper: None,
            upper_tag: None,
            spanning_tree: None,
            status: Status::Ok,
            note: None,
        };
        match admit(item) {
            Err((status, note, g)) => {
                rec.n = g.map(|g| g.n());
                rec.status = status;
                rec.note = Some(note);
            }
            Ok(g) => {
                rec.n = Some(g.n());
                match bounds(&g, opts.bounds) {
                    Ok(b) => {
                        rec.lower = Some(b.lower.value);
                        rec.lower_tag = Some(b.lower.tag.to_string());
                        rec.upper = Some(b.upper.value);
                        rec.upper_tag = Some(b.upper.tag.to_string());
                    }
                    Err(e) => {
                        rec.status = Status::Skipped;
                        rec.note = Some(e.to_string());
                    }
                }
                if let Some(t) = &tree {
                    match spanning_tree_bound(&g, t, &opts) {
                        Ok(b) => rec.spanning_tree = Some(b.value),
                        Err(e) => {
                            rec.status = Status::InputError;
                            rec.note = Some(e.to_string());
                        }
                    }
                }
            }
        }
        if rec.status == Status::InputError {
            writeln!(err, "graph {id}: {}", opt(&rec.note))?;
        }
        summary.count(rec.status);
        emitter.row(&rec)?;
    }
    emitter.finish(&summary, &summary.lines())?;
    Ok(summary.exit_code())
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphRecord {
    pub id: usize,
    pub n: usize,
    pub m: usize,
    pub graph6: Option<String>,
    pub edges: Vec<(usize, usize)>,
}

impl Row for GraphRecord {
    fn header() -> &'static [&'static str] {
        &["id", "n", "m", "graph6"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.id.to_string(),
            self.n.to_string(),
            self.m.to_string(),
            opt(&self.graph6),
        ]
    }
}

pub fn cmd_generate(common: &Common, spec: Option<&str>, out: &mut dyn Write) -> Result<i32> {
    let Some(spec) = spec.or(common.generator.as_deref()) else {
        bail!("generate needs a family spec");
    };
    let graphs = input::family(spec, common.seed)?.graphs()?;
    let mode = mode(common);
    let mut summary = Summary::default();
    let mut emitter = Emitter::new(&mut *out, mode);
    for (i, g) in graphs.enumerate() {
        summary.count(Status::Ok);
        let id = i + 1;
        match (mode, common.format) {
            (Mode::Table, Format::G6) => writeln!(emitter.raw(), "{}", encode_graph6(&g)?)?,
            (Mode::Table, Format::Edgelist) => {
                write!(emitter.raw(), "# graph {id}\n{}", write_edge_list(&g))?;
            }
            _ => emitter.row(&GraphRecord {
                id,
                n: g.n(),
                m: g.m(),
                graph6: encode_graph6(&g).ok(),
                edges: g.edges().collect(),
            })?,
        }
    }
    if mode != Mode::Table {
        emitter.finish(&summary, &[])?;
    }
    Ok(EXIT_OK)
}

#[derive(Debug, Clone, Serialize)]
pub struct RegressReport {
    pub passed: bool,
    pub suites: Vec<SuiteResult>,
}

impl Row for SuiteResult {
    fn header() -> &'static [&'static str] {
        &["suite", "checked", "budget", "violations", "result", "secs"]
    }

    fn widths() -> Vec<usize> {
        vec![20, 8, 6, 10, 6, 8]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.name.to_string(),
            self.checked.to_string(),
            self.budget_failures.to_string(),
            self.violations.len().to_string(),
            if self.passed() { "pass" } else { "FAIL" }.to_string(),
            format!("{:.2}", self.elapsed.as_secs_f64()),
        ]
    }
}

pub fn cmd_regress(
    common: &Common,
    max_n: usize,
    samples: usize,
    remark_probe: bool,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32> {
    let cfg = RegressConfig {
        max_n,
        seed: common.seed.unwrap_or(0),
        random_samples: samples,
        remark_probe,
        solve: SolveOptions {
            threads: 1,
            ..solve_options(common)
        },
    };
    let suites = match run_regression(&cfg) {
        Ok(s) => s,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_INPUT);
        }
    };
    let passed = suites.iter().all(SuiteResult::passed);
    let violations = suites.iter().any(|s| !s.violations.is_empty());
    match mode(common) {
        Mode::Json => {
            serde_json::to_writer(&mut *out, &RegressReport { passed, suites })?;
            writeln!(out)?;
        }
        m => {
            let mut lines = Vec::new();
            if m == Mode::Table {
                for s in &suites {
                    lines.push(format!("{}: {}", s.name, s.claim));
                    lines.extend(s.notes.iter().map(|n| format!("  note: {n}")));
                    lines.extend(
                        s.violations
                            .iter()
                            .take(20)
                            .map(|v| format!("  VIOLATION {v}")),
                    );
                    if s.budget_failures > 0 {
                        lines.push(format!(
                            "  {} solves hit the node budget",
                            s.budget_failures
                        ));
                    }
                }
                lines.push(format!("overall: {}", if passed { "pass" } else { "FAIL" }));
            }
            let mut emitter = Emitter::new(out, m);
            for s in &suites {
                emitter.row(s)?;
            }
            emitter.finish(&(), &lines)?;
        }
    }
    Ok(if passed {
        EXIT_OK
    } else if violations {
        EXIT_VIOLATION
    } else {
        EXIT_BUDGET
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ConjectureRecord {
    pub id: usize,
    pub n: Option<usize>,
    pub vcfc: Option<usize>,
    pub path_bound: Option<usize>,
    pub holds: Option<bool>,
    pub status: Status,
    pub note: Option<String>,
}

impl Row for ConjectureRecord {
    fn header() -> &'static [&'static str] {
        &["id", "n", "vcfc", "bound", "holds", "status"]
    }

    fn cells(&self) -> Vec<String> {
        vec![
            self.id.to_string(),
            opt(&self.n),
            opt(&self.vcfc),
            opt(&self.path_bound),
            opt(&self.holds),
            self.status.as_str().to_string(),
        ]
    }
}

fn conjecture_record(item: Item, opts: &SolveOptions, solver_threads: usize) -> ConjectureRecord {
    let id = item.id;
    let mut rec = ConjectureRecord {
        id,
        n: None,
        vcfc: None,
        path_bound: None,
        holds: None,
        status: Status::Ok,
        note: None,
    };
    let g = match admit(item) {
        Ok(g) => g,
        Err((status, note, g)) => {
            rec.n = g.map(|g| g.n());
            rec.status = status;
            rec.note = Some(note);
            return rec;
        }
    };
    let opts = SolveOptions {
        threads: solver_threads,
        ..opts.clone()
    };
    rec.n = Some(g.n());
    match conjecture_verdict(id, &g, &opts) {
        Ok(v) => {
            rec.vcfc = v.vcfc;
            rec.path_bound = Some(v.path_bound);
            rec.holds = v.holds;
            if v.holds.is_none() {
                rec.status = Status::BudgetExhausted;
                rec.note = Some("solve incomplete; verdict unknown".into());
            }
        }
        Err(e) => {
            rec.status = Status::Skipped;
            rec.note = Some(e.to_string());
        }
    }
    rec
}

pub fn cmd_conjecture(common: &Common, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    let opts = solve_options(common);
    let items = input::items(common)?;
    let mut summary = Summary::default();
    let mut emitter = Emitter::new(out, mode(common));
    process(
        items,
        common.threads,
        |item, t| conjecture_record(item, &opts, t),
        |rec| {
            summary.count(rec.status);
            if rec.status == Status::InputError {
                writeln!(err, "line {}: {}", rec.id, opt(&rec.note))?;
            }
            if rec.holds == Some(false) {
                let msg = format!(
                    "graph {}: vcfc {} exceeds {} (COUNTEREXAMPLE)",
                    rec.id,
                    opt(&rec.vcfc),
                    opt(&rec.path_bound)
                );
                writeln!(err, "!!! {msg}")?;
                summary.violations.push(msg);
            }
            emitter.row(&rec)
        },
    )?;
    emitter.finish(&summary, &summary.lines())?;
    Ok(summary.exit_code())
}

pub fn write_error(err: &mut dyn Write, e: &anyhow::Error) -> io::Result<()> {
    writeln!(err, "error: {e:#}")
}
