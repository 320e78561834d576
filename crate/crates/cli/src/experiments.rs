//! The seeded experiment runner behind `perc run`: JSON specs in, CSV rows
//! streamed out in grid order, JSON summary at the end.  Every estimate is
//! a deterministic function of the spec; the runtime column is the only
//! thing allowed to differ between reruns.

use crate::descriptor::{parse_graph, parse_vertex_set};
use crate::CliError;
use perc_cayley::{elongated_torus, FiniteGroup};
use perc_graph::Graph;
use perc_percolation::{estimate_pc, mc_giant, PcEstimate, PercError};
use perc_potential::verify_gff_bound;
use perc_progressions::{corpus::corpus, extract_progression, is_proper_mod, verify_cover};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

/// Stamped into the first CSV record so downstream readers can detect
/// schema drift.
pub const RESULT_SCHEMA: &str = "perc-results-v1";

/// Column order of the versioned result schema.  `runtime_ms` is last so
/// determinism checks can strip it.
pub const RESULT_COLUMNS: [&str; 13] = [
    "kind", "graph", "param", "p", "alpha", "q", "h", "trials", "seed", "estimate",
    "stderr", "check", "runtime_ms",
];

/// Hard per-row resource budgets; exceeding one is reported on the row and
/// the run continues.
#[derive(Debug, Clone, Copy, Serialize, Deserialize, PartialEq)]
#[serde(default, deny_unknown_fields)]
pub struct Budget {
    pub max_edges: usize,
    pub max_trials: u64,
    pub max_seconds_per_row: f64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_edges: 5_000_000, max_trials: 5_000_000, max_seconds_per_row: 600.0 }
    }
}

/// A reproducible experiment: kind, graph descriptor, parameter grid,
/// mandatory master seed, optional output path, budgets.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub kind: String,
    pub seed: u64,
    #[serde(default)]
    pub graph: Option<String>,
    #[serde(default)]
    pub p: Vec<f64>,
    #[serde(default)]
    pub m: Vec<u64>,
    #[serde(default)]
    pub sizes: Vec<u64>,
    #[serde(default)]
    pub n: Option<u64>,
    #[serde(default)]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub q: Option<f64>,
    #[serde(default)]
    pub h: Option<f64>,
    #[serde(default)]
    pub epsilon: Option<f64>,
    #[serde(default)]
    pub tol: Option<f64>,
    #[serde(default)]
    pub trials: Option<u64>,
    #[serde(default)]
    pub count: Option<usize>,
    #[serde(default)]
    pub max_order: Option<u64>,
    #[serde(default)]
    pub max_k: Option<usize>,
    #[serde(default)]
    pub outer: Option<u64>,
    #[serde(default)]
    pub inner: Option<u64>,
    #[serde(default)]
    pub boundary: Option<String>,
    #[serde(default)]
    pub a: Option<String>,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub budget: Budget,
}

impl ExperimentSpec {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let spec: ExperimentSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    fn invalid(&self, why: impl Into<String>) -> CliError {
        CliError::Spec { kind: self.kind.clone(), why: why.into() }
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.budget.max_edges == 0
            || self.budget.max_trials == 0
            || !(self.budget.max_seconds_per_row > 0.0)
        {
            return Err(self.invalid("budget fields must be positive"));
        }
        match self.kind.as_str() {
            "giant-vs-p" => {
                if self.graph.is_none() {
                    return Err(self.invalid("needs a graph descriptor"));
                }
                if self.p.is_empty() {
                    return Err(self.invalid("needs a nonempty p grid"));
                }
            }
            "elongated-torus-phase" => {
                if self.n.is_none() {
                    return Err(self.invalid("needs the long side n"));
                }
                if self.m.is_empty() {
                    return Err(self.invalid("needs a nonempty m grid"));
                }
                if self.p.len() != 1 {
                    return Err(self.invalid("needs exactly one p"));
                }
            }
            "progression-corpus" => {
                if self.count.unwrap_or(0) == 0 {
                    return Err(self.invalid("needs a positive instance count"));
                }
            }
            "gff-verify" => {
                if self.graph.is_none() {
                    return Err(self.invalid("needs a graph descriptor"));
                }
            }
            "sharp-threshold" => {
                if self.sizes.is_empty() {
                    return Err(self.invalid("needs a nonempty size list"));
                }
            }
            other => return Err(self.invalid(format!("unknown kind {other:?}"))),
        }
        Ok(())
    }
}

/// One CSV row: the spec parameters that produced it, the estimate, and a
/// pass/fail/flag column for the embedded checks.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub kind: String,
    pub graph: String,
    pub param: String,
    pub p: Option<f64>,
    pub alpha: Option<f64>,
    pub q: Option<f64>,
    pub h: Option<f64>,
    pub trials: Option<u64>,
    pub seed: u64,
    pub estimate: Option<f64>,
    pub stderr: Option<f64>,
    pub check: String,
    pub runtime_ms: u128,
}

impl ResultRow {
    fn fields(&self) -> [String; 13] {
        fn opt_f(v: Option<f64>) -> String {
            v.map(|x| x.to_string()).unwrap_or_default()
        }
        [
            self.kind.clone(),
            self.graph.clone(),
            self.param.clone(),
            opt_f(self.p),
            opt_f(self.alpha),
            opt_f(self.q),
            opt_f(self.h),
            self.trials.map(|t| t.to_string()).unwrap_or_default(),
            self.seed.to_string(),
            opt_f(self.estimate),
            opt_f(self.stderr),
            self.check.clone(),
            self.runtime_ms.to_string(),
        ]
    }
}

/// End-of-run totals; `all_checks_passed` drives the process exit code.
#[derive(Debug, Clone, Serialize)]
pub struct RunSummary {
    pub schema: &'static str,
    pub kind: String,
    pub rows: usize,
    pub checks_passed: usize,
    pub checks_failed: usize,
    pub flagged: usize,
    pub all_checks_passed: bool,
    pub spec: ExperimentSpec,
}

fn summarize(spec: &ExperimentSpec, rows: &[ResultRow]) -> RunSummary {
    let checks_passed = rows.iter().filter(|r| r.check == "pass").count();
    let checks_failed = rows.iter().filter(|r| r.check == "fail").count();
    let flagged =
        rows.iter().filter(|r| !matches!(r.check.as_str(), "" | "pass" | "fail")).count();
    RunSummary {
        schema: RESULT_SCHEMA,
        kind: spec.kind.clone(),
        rows: rows.len(),
        checks_passed,
        checks_failed,
        flagged,
        all_checks_passed: checks_failed == 0,
        spec: spec.clone(),
    }
}

/// CI-aware trend check against the previous valid row: `pass` when the
/// current estimate is on the required side of the previous one up to `z`
/// combined standard errors.
struct TrendCheck {
    z: f64,
    increasing: bool,
    prev: Option<(f64, f64)>,
}

impl TrendCheck {
    fn nondecreasing(z: f64) -> Self {
        TrendCheck { z, increasing: true, prev: None }
    }

    fn nonincreasing(z: f64) -> Self {
        TrendCheck { z, increasing: false, prev: None }
    }

    fn apply(&mut self, mut row: ResultRow) -> ResultRow {
        let (Some(est), Some(se)) = (row.estimate, row.stderr) else {
            return row;
        };
        if !row.check.is_empty() {
            return row;
        }
        row.check = match self.prev {
            None => "pass".into(),
            Some((prev_est, prev_se)) => {
                let slack = self.z * (se + prev_se);
                let ok = if self.increasing {
                    est >= prev_est - slack
                } else {
                    est <= prev_est + slack
                };
                if ok { "pass".into() } else { "fail".into() }
            }
        };
        self.prev = Some((est, se));
        row
    }
}

/// Decorrelated per-row seed derived from the master seed.
pub fn row_seed(master: u64, index: usize) -> u64 {
    master.wrapping_add(7919u64.wrapping_mul(index as u64 + 1))
}

/// Runs `compute` over the grid on parallel workers; `finish` consumes the
/// rows in grid order as they become available (the single CSV consumer).
fn parallel_rows<T: Sync>(
    inputs: &[T],
    compute: impl Fn(usize, &T) -> ResultRow + Sync + Send,
    mut finish: impl FnMut(ResultRow) -> Result<ResultRow, CliError>,
) -> Result<Vec<ResultRow>, CliError> {
    let (tx, rx) = std::sync::mpsc::channel::<(usize, ResultRow)>();
    let mut out = Vec::with_capacity(inputs.len());
    let mut sink_err: Option<CliError> = None;
    std::thread::scope(|scope| {
        scope.spawn(move || {
            inputs.par_iter().enumerate().for_each_with(tx, |tx, (i, input)| {
                let _ = tx.send((i, compute(i, input)));
            });
        });
        let mut pending: BTreeMap<usize, ResultRow> = BTreeMap::new();
        let mut next = 0usize;
        for (i, row) in rx.iter() {
            pending.insert(i, row);
            while let Some(row) = pending.remove(&next) {
                next += 1;
                if sink_err.is_none() {
                    match finish(row) {
                        Ok(done) => out.push(done),
                        Err(e) => sink_err = Some(e),
                    }
                }
            }
        }
    });
    match sink_err {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

fn blank_row(spec: &ExperimentSpec) -> ResultRow {
    ResultRow {
        kind: spec.kind.clone(),
        graph: spec.graph.clone().unwrap_or_default(),
        param: String::new(),
        p: None,
        alpha: spec.alpha,
        q: spec.q,
        h: spec.h,
        trials: spec.trials,
        seed: spec.seed,
        estimate: None,
        stderr: None,
        check: String::new(),
        runtime_ms: 0,
    }
}

/// Runs a validated spec: rows are computed on parallel workers, streamed
/// to the output CSV in grid order, and summarized.  When the spec names an
/// output path the summary also lands next to it as
/// `<output>.summary.json`; otherwise the CSV goes to stdout.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<(Vec<ResultRow>, RunSummary), CliError> {
    spec.validate()?;
    let sink: Box<dyn Write> = match &spec.output {
        Some(path) => Box::new(std::fs::File::create(path)?),
        None => Box::new(std::io::stdout()),
    };
    let mut writer = csv::WriterBuilder::new().flexible(true).from_writer(sink);
    writer.write_record([RESULT_SCHEMA])?;
    writer.write_record(RESULT_COLUMNS)?;

    let rows = dispatch(spec, &mut writer)?;
    writer.flush()?;
    let summary = summarize(spec, &rows);
    if let Some(path) = &spec.output {
        let mut sidecar = path.clone();
        sidecar.set_extension("summary.json");
        std::fs::write(&sidecar, serde_json::to_string_pretty(&summary)?)?;
    }
    Ok((rows, summary))
}

fn dispatch<W: Write>(
    spec: &ExperimentSpec,
    writer: &mut csv::Writer<W>,
) -> Result<Vec<ResultRow>, CliError> {
    let mut emit = |row: ResultRow, checker: &mut Option<TrendCheck>| {
        let row = match checker {
            Some(c) => c.apply(row),
            None => row,
        };
        writer.write_record(row.fields())?;
        writer.flush()?;
        Ok(row)
    };
    match spec.kind.as_str() {
        "giant-vs-p" => {
            let parsed = parse_graph(spec.graph.as_deref().expect("validated"))?;
            let alpha = spec.alpha.unwrap_or(0.5);
            let trials = spec.trials.unwrap_or(200);
            let mut checker = Some(TrendCheck::nondecreasing(3.0));
            parallel_rows(
                &spec.p,
                |i, &p| {
                    let started = Instant::now();
                    let mut row = blank_row(spec);
                    row.param = format!("p={p}");
                    row.p = Some(p);
                    row.alpha = Some(alpha);
                    row.trials = Some(trials);
                    row.seed = row_seed(spec.seed, i);
                    if parsed.graph.edge_count() > spec.budget.max_edges {
                        row.check = "budget-edges".into();
                    } else if trials > spec.budget.max_trials {
                        row.check = "budget-trials".into();
                    } else {
                        match mc_giant(&parsed.graph, p, alpha, trials, row.seed) {
                            Ok(est) => {
                                row.estimate = Some(est.estimate);
                                row.stderr = Some(est.stderr);
                            }
                            Err(e) => row.check = format!("error: {e}"),
                        }
                    }
                    row.runtime_ms = started.elapsed().as_millis();
                    row
                },
                |row| emit(row, &mut checker),
            )
        }
        "elongated-torus-phase" => {
            let n = spec.n.expect("validated");
            let p = spec.p[0];
            let alpha = spec.alpha.unwrap_or(0.5);
            let trials = spec.trials.unwrap_or(200);
            let mut checker = Some(TrendCheck::nondecreasing(3.0));
            parallel_rows(
                &spec.m,
                |i, &m| {
                    let started = Instant::now();
                    let mut row = blank_row(spec);
                    row.graph = format!("torus:n={n},m={m}");
                    row.param = format!("m={m}");
                    row.p = Some(p);
                    row.alpha = Some(alpha);
                    row.trials = Some(trials);
                    row.seed = row_seed(spec.seed, i);
                    let edges = 2 * n as usize * m as usize;
                    if edges > spec.budget.max_edges {
                        row.check = "budget-edges".into();
                    } else if trials > spec.budget.max_trials {
                        row.check = "budget-trials".into();
                    } else {
                        let g = elongated_torus(n, m);
                        match mc_giant(&g, p, alpha, trials, row.seed) {
                            Ok(est) => {
                                row.estimate = Some(est.estimate);
                                row.stderr = Some(est.stderr);
                            }
                            Err(e) => row.check = format!("error: {e}"),
                        }
                    }
                    row.runtime_ms = started.elapsed().as_millis();
                    row
                },
                |row| emit(row, &mut checker),
            )
        }
        "progression-corpus" => {
            let count = spec.count.expect("validated");
            let max_order = spec.max_order.unwrap_or(4096);
            let max_k = spec.max_k.unwrap_or(3);
            let instances = corpus(spec.seed, count, max_order, max_k);
            let mut checker = None;
            parallel_rows(
                &instances,
                |i, inst| {
                    let started = Instant::now();
                    let mut row = blank_row(spec);
                    row.graph = format!("abelian:order={}", inst.group.order());
                    row.param = format!("i={i} k={} r={}", inst.generators.len(), inst.r);
                    row.check = match extract_progression(
                        &inst.group,
                        &inst.generators,
                        &inst.q,
                        inst.r,
                    ) {
                        Ok(result) => {
                            row.estimate = Some(result.volume() as f64);
                            let progression = result.progression();
                            let proper = is_proper_mod(&inst.group, &progression, &inst.q);
                            let cover = verify_cover(
                                &inst.group,
                                &progression,
                                &inst.q,
                                &inst.generators,
                                inst.r,
                                result.cover_constant_used,
                            );
                            match (proper, cover) {
                                (true, Ok(outcome)) if outcome.is_verified() => "pass".into(),
                                (false, _) => "fail".into(),
                                (_, Ok(_)) => "fail".into(),
                                (_, Err(e)) => format!("error: {e}"),
                            }
                        }
                        Err(e) => format!("error: {e}"),
                    };
                    row.runtime_ms = started.elapsed().as_millis();
                    row
                },
                |row| emit(row, &mut checker),
            )
        }
        "gff-verify" => {
            let parsed = parse_graph(spec.graph.as_deref().expect("validated"))?;
            let boundary =
                parse_vertex_set(&parsed, spec.boundary.as_deref().unwrap_or("ring"))?;
            let a = parse_vertex_set(&parsed, spec.a.as_deref().unwrap_or("center"))?;
            let outer = spec.outer.unwrap_or(800);
            let inner = spec.inner.unwrap_or(50);
            let started = Instant::now();
            let mut row = blank_row(spec);
            row.param = format!("outer={outer} inner={inner}");
            row.trials = Some(outer * inner);
            if parsed.graph.edge_count() > spec.budget.max_edges {
                row.check = "budget-edges".into();
            } else if outer * inner > spec.budget.max_trials {
                row.check = "budget-trials".into();
            } else {
                let report =
                    verify_gff_bound(&parsed.graph, &boundary, &a, outer, inner, spec.seed)?;
                row.estimate = Some(report.estimate);
                row.stderr = Some(report.total_stderr());
                row.q = Some(report.bound);
                row.check = if report.pass { "pass".into() } else { "fail".into() };
            }
            row.runtime_ms = started.elapsed().as_millis();
            let mut checker = None;
            let row = emit(row, &mut checker)?;
            Ok(vec![row])
        }
        "sharp-threshold" => {
            let template = spec
                .graph
                .clone()
                .unwrap_or_else(|| "torus:n={L},m={L}".to_string());
            let alpha = spec.alpha.unwrap_or(0.5);
            let epsilon = spec.epsilon.unwrap_or(0.25);
            let tol = spec.tol.unwrap_or(0.02);
            let trials = spec.trials.unwrap_or(200);
            let gaps = sharp_threshold_scan(
                &template, &spec.sizes, alpha, epsilon, tol, trials, spec.seed,
            )?;
            let mut checker = Some(TrendCheck::nonincreasing(1.0));
            let mut rows = Vec::with_capacity(gaps.len());
            for gap in &gaps {
                let mut row = blank_row(spec);
                row.graph = template.replace("{L}", &gap.size.to_string());
                row.param = format!("L={}", gap.size);
                row.alpha = Some(alpha);
                row.q = Some(epsilon);
                row.trials = Some(gap.trials_used);
                row.seed = gap.seed;
                match (gap.gap(), gap.half_width()) {
                    (Some(g), Some(w)) => {
                        row.estimate = Some(g);
                        row.stderr = Some(w);
                    }
                    _ => row.check = "unresolved".into(),
                }
                row.runtime_ms = gap.runtime_ms;
                rows.push(emit(row, &mut checker)?);
            }
            Ok(rows)
        }
        _ => unreachable!("validated"),
    }
}

/// One row of [`sharp_threshold_scan`]: both threshold estimates at a size,
/// or `resolved = false` when the stochastic bisection could not separate a
/// probe from its target level.
#[derive(Debug, Clone)]
pub struct GapRow {
    pub size: u64,
    pub seed: u64,
    pub resolved: bool,
    pub pc_at_eps: Option<PcEstimate>,
    pub pc_at_complement: Option<PcEstimate>,
    /// Per-batch trial count that finally resolved both thresholds (the
    /// doubling policy may raise it above the requested count).
    pub trials_used: u64,
    pub runtime_ms: u128,
}

impl GapRow {
    /// `p_c(G, α, 1−ε) − p_c(G, α, ε)`; nonnegative up to bracket noise.
    pub fn gap(&self) -> Option<f64> {
        Some(self.pc_at_complement?.p - self.pc_at_eps?.p)
    }

    /// Half-width of the combined bracket interval around the gap.
    pub fn half_width(&self) -> Option<f64> {
        let lo = self.pc_at_eps?;
        let hi = self.pc_at_complement?;
        Some(((hi.hi - hi.lo) + (lo.hi - lo.lo)) / 2.0)
    }

    /// Whether the two threshold brackets are disjoint, i.e. the gap is
    /// resolved away from zero.
    pub fn separated(&self) -> Option<bool> {
        Some(self.pc_at_complement?.lo > self.pc_at_eps?.hi)
    }
}

/// Estimates `p_c(G_L, α, ε)` and `p_c(G_L, α, 1−ε)` for every size in the
/// family (`{L}` in the template is replaced by the size) and reports the
/// gap.  Unresolvable sizes are flagged, not fatal.
pub fn sharp_threshold_scan(
    template: &str,
    sizes: &[u64],
    alpha: f64,
    epsilon: f64,
    tol: f64,
    trials: u64,
    seed: u64,
) -> Result<Vec<GapRow>, CliError> {
    if sizes.is_empty() {
        return Err(CliError::Spec {
            kind: "sharp-threshold".into(),
            why: "needs a nonempty size list".into(),
        });
    }
    if !(epsilon > 0.0 && epsilon < 0.5) {
        return Err(CliError::Spec {
            kind: "sharp-threshold".into(),
            why: format!("epsilon must be in (0, 1/2), got {epsilon}"),
        });
    }
    let mut rows = Vec::with_capacity(sizes.len());
    for (i, &size) in sizes.iter().enumerate() {
        let started = Instant::now();
        let desc = template.replace("{L}", &size.to_string());
        let g = parse_graph(&desc)?.graph;
        let s = row_seed(seed, i);
        let low = estimate_pc_persistent(&g, alpha, epsilon, tol, trials, s)?;
        let high = estimate_pc_persistent(&g, alpha, 1.0 - epsilon, tol, trials, s.wrapping_add(1))?;
        let (resolved, pc_at_eps, pc_at_complement, trials_used) = match (low, high) {
            (Some((l, tl)), Some((h, th))) => (true, Some(l), Some(h), tl.max(th)),
            _ => (false, None, None, trials),
        };
        rows.push(GapRow {
            size,
            seed: s,
            resolved,
            pc_at_eps,
            pc_at_complement,
            trials_used,
            runtime_ms: started.elapsed().as_millis(),
        });
    }
    Ok(rows)
}

/// `estimate_pc` with a deterministic escalation policy: a probe that stalls
/// at the batch cap restarts the whole bisection with doubled batch size (up
/// to five doublings), shrinking the 3σ decision band each time.  Returns
/// `None` when even the largest batch cannot separate a probe from `q`.
fn estimate_pc_persistent(
    g: &Graph,
    alpha: f64,
    q: f64,
    tol: f64,
    trials: u64,
    seed: u64,
) -> Result<Option<(PcEstimate, u64)>, CliError> {
    let mut batch = trials;
    for _ in 0..6 {
        match estimate_pc(g, alpha, q, tol, batch, seed) {
            Ok(pc) => return Ok(Some((pc, batch))),
            Err(PercError::Unresolved { .. }) => batch *= 2,
            Err(e) => return Err(e.into()),
        }
    }
    Ok(None)
}
