//! `perc`: seeded percolation experiments on finite transitive graphs.
//!
//! Every subcommand is a pure function of its arguments — reruns with the
//! same seed reproduce the same numbers (only runtime columns may differ).
//! Exit codes: 0 when all embedded checks pass, 1 when a check fails,
//! 2 on usage or runtime errors.

use clap::{Parser, Subcommand, ValueEnum};
use perc_cayley::{cayley_graph, FiniteGroup, GeneratingSet, QuotientGroup};
use perc_cli::{
    box_into_torus, cyclic_subgroup, embedding_trials, graph_io, parse_abelian, parse_graph,
    parse_tuple_list, parse_vertex_set, quotient_trials, row_seed, run_experiment,
    union_trials, CliError, ExperimentSpec,
};
use perc_iso::{exhaustive_iso_profile, local_search_iso, IsoWitness};
use perc_percolation::{estimate_pc, mc_giant, McEstimate};
use perc_potential::verify_gff_bound;
use perc_progressions::{
    corpus::corpus, extract_progression, is_proper_mod, verify_cover, SymmetricSet,
};
use serde_json::json;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "perc", version, about = "Bernoulli bond percolation on finite transitive graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum CoupleKind {
    Union,
    Quotient,
    Embed,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum IsoMode {
    Exhaustive,
    Search,
}

#[derive(Subcommand)]
enum Command {
    /// Build a graph from a family descriptor and emit it as JSON.
    Graph {
        /// Family descriptor, e.g. torus:n=100,m=5 or box:3,3,40.
        #[arg(long)]
        desc: String,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Optional sidecar path for the vertex-to-coordinates map.
        #[arg(long)]
        coords: Option<PathBuf>,
    },
    /// Extract and certify a proper progression from an Abelian instance.
    Extract {
        /// An abelian:mods=..;gens=.. descriptor naming group and generators.
        #[arg(long)]
        desc: String,
        /// Word-ball radius.
        #[arg(long)]
        r: u64,
        /// Symmetric set Q as a tuple list, symmetrized; {0} when omitted.
        #[arg(long)]
        q: Option<String>,
    },
    /// Generate a random certified corpus of Abelian instances.
    Corpus {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long, default_value_t = 4096)]
        max_order: u64,
        #[arg(long, default_value_t = 3)]
        max_k: usize,
    },
    /// Monte Carlo giant-cluster probability over a p grid.
    Simulate {
        #[arg(long)]
        graph: String,
        /// Edge probability; repeat for a grid.
        #[arg(long, required = true)]
        p: Vec<f64>,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        /// CSV output path; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Stochastic bisection for the threshold p_c(G, alpha, q).
    Pc {
        #[arg(long)]
        graph: String,
        #[arg(long, default_value_t = 0.5)]
        alpha: f64,
        #[arg(long, default_value_t = 0.5)]
        q: f64,
        #[arg(long, default_value_t = 0.01)]
        tol: f64,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Verify an explicit coupling samplewise.
    Couple {
        #[arg(long, value_enum)]
        kind: CoupleKind,
        /// Graph descriptor (union), abelian descriptor (quotient).
        #[arg(long)]
        graph: Option<String>,
        /// Lower edge probability (union) or base probability (quotient).
        #[arg(long)]
        p: Option<f64>,
        /// Second edge probability for the union coupling.
        #[arg(long)]
        p2: Option<f64>,
        /// Cyclic subgroup generator, e.g. "(0,1)" (quotient).
        #[arg(long)]
        subgroup: Option<String>,
        /// Box radius for the box-into-torus embedding (embed).
        #[arg(long)]
        radius: Option<u32>,
        /// Coin probability for the embedding coupling (embed).
        #[arg(long)]
        q: Option<f64>,
        #[arg(long, default_value_t = 1000)]
        samples: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Check the GFF variance bound on two-point connection probabilities.
    GffVerify {
        #[arg(long)]
        graph: String,
        /// Boundary set: ring | center | vertices:<list> | set:<file>.
        #[arg(long, default_value = "ring")]
        boundary: String,
        /// Source set A for the bound.
        #[arg(long, default_value = "center")]
        a: String,
        /// Outer GFF sample count.
        #[arg(long, default_value_t = 800)]
        outer: u64,
        /// Percolation trials per outer sample.
        #[arg(long, default_value_t = 50)]
        inner: u64,
        #[arg(long)]
        seed: u64,
    },
    /// Isoperimetric profile: exhaustive enumeration or local search.
    Iso {
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum, default_value_t = IsoMode::Exhaustive)]
        mode: IsoMode,
        /// Dimension exponent in the ratio |∂A| / |A|^((d-1)/d).
        #[arg(long, default_value_t = 2.0)]
        d: f64,
        /// Vertex-count cap for exhaustive enumeration.
        #[arg(long, default_value_t = perc_iso::DEFAULT_ENUMERATION_LIMIT)]
        limit: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a JSON experiment spec; exit 0 iff all embedded checks pass.
    Run {
        #[arg(long)]
        spec: PathBuf,
    },
}

fn main() -> ExitCode {
    if let Ok(workers) = std::env::var("PERC_WORKERS") {
        match workers.parse::<usize>() {
            Ok(n) if n > 0 => {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
            _ => {
                eprintln!("error: PERC_WORKERS must be a positive integer");
                return ExitCode::from(2);
            }
        }
    }
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

fn mc_json(est: &McEstimate) -> serde_json::Value {
    json!({
        "estimate": est.estimate,
        "stderr": est.stderr,
        "trials": est.trials,
        "seed": est.seed,
    })
}

fn csv_stdout() -> csv::Writer<std::io::Stdout> {
    csv::WriterBuilder::new().from_writer(std::io::stdout())
}

fn witness_field(w: &IsoWitness) -> String {
    let verts: Vec<String> = w.set.iter().map(|v| v.to_string()).collect();
    verts.join(" ")
}

fn dispatch(command: Command) -> Result<bool, CliError> {
    match command {
        Command::Graph { desc, out, coords } => {
            let parsed = parse_graph(&desc)?;
            let jg = graph_io::JsonGraph::of(&parsed.graph);
            match &out {
                Some(path) => graph_io::write_graph(path, &parsed.graph)?,
                None => {
                    let mut stdout = std::io::stdout();
                    serde_json::to_writer(&mut stdout, &jg)?;
                    writeln!(stdout)?;
                }
            }
            if let Some(path) = &coords {
                graph_io::write_coords(path, &parsed.coords)?;
            }
            Ok(true)
        }
        Command::Extract { desc, r, q } => {
            let (group, tuples) = parse_abelian(&desc)?;
            let generators: Vec<usize> =
                tuples.iter().map(|t| group.index_of(&group.element(t))).collect();
            let q_set = match &q {
                Some(text) => {
                    let rows = parse_tuple_list(text)?;
                    let elems: Vec<usize> =
                        rows.iter().map(|t| group.index_of(&group.element(t))).collect();
                    SymmetricSet::symmetrize(&group, &elems)
                }
                None => SymmetricSet::zero(&group),
            };
            let result = extract_progression(&group, &generators, &q_set, r)?;
            let progression = result.progression();
            let proper = is_proper_mod(&group, &progression, &q_set);
            let cover = verify_cover(
                &group,
                &progression,
                &q_set,
                &generators,
                r,
                result.cover_constant_used,
            )?;
            let pass = proper && result.subset_of_ball && cover.is_verified();
            let report = json!({
                "group": group.moduli(),
                "generators": result.generators,
                "lengths": result.lengths,
                "permutation": result.permutation,
                "volume": result.volume().to_string(),
                "proper_mod_q": proper,
                "subset_of_ball": result.subset_of_ball,
                "cover_constant": result.cover_constant_used,
                "cover_verified": cover.is_verified(),
                "pass": pass,
            });
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(pass)
        }
        Command::Corpus { seed, count, max_order, max_k } => {
            let instances = corpus(seed, count, max_order, max_k);
            let mut passed = 0usize;
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            for (i, inst) in instances.iter().enumerate() {
                let line = match extract_progression(&inst.group, &inst.generators, &inst.q, inst.r)
                {
                    Ok(result) => {
                        let progression = result.progression();
                        let proper = is_proper_mod(&inst.group, &progression, &inst.q);
                        let cover = verify_cover(
                            &inst.group,
                            &progression,
                            &inst.q,
                            &inst.generators,
                            inst.r,
                            result.cover_constant_used,
                        )?;
                        let pass = proper && result.subset_of_ball && cover.is_verified();
                        passed += pass as usize;
                        json!({
                            "i": i,
                            "order": inst.group.order(),
                            "k": inst.generators.len(),
                            "r": inst.r,
                            "volume": result.volume().to_string(),
                            "pass": pass,
                        })
                    }
                    Err(e) => json!({ "i": i, "order": inst.group.order(), "error": e.to_string(), "pass": false }),
                };
                writeln!(lock, "{line}")?;
            }
            let all = passed == instances.len();
            writeln!(
                lock,
                "{}",
                json!({ "count": instances.len(), "passed": passed, "all_passed": all })
            )?;
            Ok(all)
        }
        Command::Simulate { graph, p, alpha, trials, seed, out } => {
            let parsed = parse_graph(&graph)?;
            let mut writer: csv::Writer<Box<dyn Write>> = match &out {
                Some(path) => csv::Writer::from_writer(Box::new(std::fs::File::create(path)?)),
                None => csv::Writer::from_writer(Box::new(std::io::stdout())),
            };
            writer.write_record(["p", "estimate", "stderr", "trials", "seed"])?;
            let mut estimates = Vec::with_capacity(p.len());
            for (i, &prob) in p.iter().enumerate() {
                let est = mc_giant(&parsed.graph, prob, alpha, trials, row_seed(seed, i))?;
                writer.write_record([
                    prob.to_string(),
                    est.estimate.to_string(),
                    est.stderr.to_string(),
                    est.trials.to_string(),
                    est.seed.to_string(),
                ])?;
                writer.flush()?;
                estimates.push(est);
            }
            let summary = json!({
                "graph": graph,
                "alpha": alpha,
                "trials": trials,
                "seed": seed,
                "rows": estimates.len(),
                "estimates": estimates.iter().map(mc_json).collect::<Vec<_>>(),
            });
            eprintln!("{summary}");
            Ok(true)
        }
        Command::Pc { graph, alpha, q, tol, trials, seed } => {
            let parsed = parse_graph(&graph)?;
            let pc = estimate_pc(&parsed.graph, alpha, q, tol, trials, seed)?;
            let report = json!({
                "graph": graph,
                "alpha": alpha,
                "q": q,
                "tol": tol,
                "p": pc.p,
                "lo": pc.lo,
                "hi": pc.hi,
                "probes": pc.probes,
                "at_lo": mc_json(&pc.at_lo),
                "at_hi": mc_json(&pc.at_hi),
            });
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(true)
        }
        Command::Couple { kind, graph, p, p2, subgroup, radius, q, samples, seed } => {
            let missing = |what: &str| CliError::Spec {
                kind: "couple".into(),
                why: format!("--{what} is required for this kind"),
            };
            let report = match kind {
                CoupleKind::Union => {
                    let desc = graph.ok_or_else(|| missing("graph"))?;
                    let parsed = parse_graph(&desc)?;
                    let p1 = p.ok_or_else(|| missing("p"))?;
                    let p2 = p2.ok_or_else(|| missing("p2"))?;
                    union_trials(&parsed.graph, p1, p2, samples, seed)?
                }
                CoupleKind::Quotient => {
                    let desc = graph.ok_or_else(|| missing("graph"))?;
                    let (group, tuples) = parse_abelian(&desc)?;
                    let gens = GeneratingSet::from_coords(&group, &tuples);
                    let g = cayley_graph(&group, &gens)?;
                    let sub_text = subgroup.ok_or_else(|| missing("subgroup"))?;
                    let rows = parse_tuple_list(&sub_text)?;
                    let mut sub = Vec::new();
                    for row in &rows {
                        sub.extend(cyclic_subgroup(&group, row));
                    }
                    sub.sort_unstable();
                    sub.dedup();
                    let quotient = QuotientGroup::new(&group, &sub)?;
                    let orbit_map: Vec<u32> =
                        (0..group.order()).map(|v| quotient.project(v) as u32).collect();
                    let p = p.ok_or_else(|| missing("p"))?;
                    quotient_trials(&g, &orbit_map, p, samples, seed)?
                }
                CoupleKind::Embed => {
                    let r = radius.ok_or_else(|| missing("radius"))?;
                    let q = q.ok_or_else(|| missing("q"))?;
                    let (g1, g2, phi) = box_into_torus(r);
                    embedding_trials(&g1, &g2, &phi, q, samples, seed)?
                }
            };
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(report.passed())
        }
        Command::GffVerify { graph, boundary, a, outer, inner, seed } => {
            let parsed = parse_graph(&graph)?;
            let boundary_set = parse_vertex_set(&parsed, &boundary)?;
            let a_set = parse_vertex_set(&parsed, &a)?;
            let report =
                verify_gff_bound(&parsed.graph, &boundary_set, &a_set, outer, inner, seed)?;
            let mut writer = csv_stdout();
            writer.write_record(["bound", "estimate", "stderr_outer", "stderr_inner"])?;
            writer.write_record([
                report.bound.to_string(),
                report.estimate.to_string(),
                report.stderr_outer.to_string(),
                report.stderr_inner.to_string(),
            ])?;
            writer.flush()?;
            let summary = json!({
                "graph": graph,
                "conductance": report.conductance,
                "gff_samples": report.gff_samples,
                "perc_trials": report.perc_trials,
                "seed": report.seed,
                "pass": report.pass,
            });
            eprintln!("{summary}");
            Ok(report.pass)
        }
        Command::Iso { graph, mode, d, limit, seed } => {
            let parsed = parse_graph(&graph)?;
            let mut writer = csv_stdout();
            writer.write_record(["s", "min_boundary", "witness"])?;
            match mode {
                IsoMode::Exhaustive => {
                    let profile = exhaustive_iso_profile(&parsed.graph, limit)?;
                    for entry in &profile {
                        let witness = IsoWitness::evaluate(&parsed.graph, entry.witness.clone(), d)?;
                        writer.write_record([
                            entry.size.to_string(),
                            entry.min_boundary.to_string(),
                            witness_field(&witness),
                        ])?;
                    }
                }
                IsoMode::Search => {
                    let witness = local_search_iso(&parsed.graph, d, None, seed)?;
                    writer.write_record([
                        witness.set.len().to_string(),
                        witness.boundary.to_string(),
                        witness_field(&witness),
                    ])?;
                    eprintln!("{}", json!({ "ratio": witness.ratio, "d": d, "seed": seed }));
                }
            }
            writer.flush()?;
            Ok(true)
        }
        Command::Run { spec } => {
            let text = std::fs::read_to_string(&spec)?;
            let spec = ExperimentSpec::from_json(&text)?;
            let (_, summary) = run_experiment(&spec)?;
            let line = serde_json::to_string_pretty(&summary)?;
            // The CSV owns stdout when no output path is set.
            match spec.output {
                Some(_) => println!("{line}"),
                None => eprintln!("{line}"),
            }
            Ok(summary.all_checks_passed)
        }
    }
}
