use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use num_bigint::Sign;
use num_rational::BigRational;
use serde_json::{json, Value};

use coxgrowth::classify::{component_types, is_affine, is_spherical};
use coxgrowth::compare::extensions;
use coxgrowth::coxfile::{parse_cox, parse_symbol};
use coxgrowth::oracle::{bfs_counts, group_order, DEFAULT_CAP};
use coxgrowth::poly::{parse_decimal, RatFunc, RootInterval};
use coxgrowth::replay::{check_ids, replay_only, ReplayConfig, Status};
use coxgrowth::simplex::{ideal_link_partitions, simplex_class};
use coxgrowth::{
    growth_rate, growth_series, series_coeffs, CoxeterGraph, Exec, ExponentTable, GrowthRate, IrreducibleType,
};

#[derive(Parser)]
#[command(name = "coxgrowth", version, about = "Growth series and growth rates of Coxeter groups")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct GraphArgs {
    /// Coxeter symbol such as "[6,3,3]", "[inf,3,3]" or "[4,3^{2,1}]".
    #[arg(long, conflicts_with = "file", required_unless_present = "file")]
    symbol: Option<String>,
    /// Path to a .cox file.
    #[arg(long)]
    file: Option<PathBuf>,
}

impl GraphArgs {
    fn load(&self) -> Result<CoxeterGraph> {
        match (&self.symbol, &self.file) {
            (Some(s), _) => Ok(parse_symbol(s)?),
            (None, Some(path)) => {
                let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                parse_cox(&text).with_context(|| format!("parsing {}", path.display()))
            }
            (None, None) => unreachable!("clap requires one of --symbol and --file"),
        }
    }
}

fn parse_eps(s: &str) -> Result<BigRational, String> {
    match parse_decimal(s) {
        Some(x) if x > BigRational::from_integer(0.into()) => Ok(x),
        _ => Err(format!("expected a positive decimal, got {s:?}")),
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Component types of a Coxeter graph.
    Classify(GraphArgs),
    /// The growth series as a reduced rational function.
    Growth(GraphArgs),
    /// Certified growth rate.
    Rate {
        #[command(flatten)]
        graph: GraphArgs,
        /// Width bound for the isolating interval of the radius.
        #[arg(long, default_value = "1e-12", value_parser = parse_eps)]
        eps: BigRational,
    },
    /// Coefficients a_0..a_K of the growth series.
    Coeffs {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 10)]
        max_k: usize,
    },
    /// Word counts by breadth-first search in the exact reflection representation.
    Oracle {
        #[command(flatten)]
        graph: GraphArgs,
        #[arg(long, default_value_t = 8)]
        max_k: usize,
        /// Maximum number of group elements to visit.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
        /// Enumerate the whole (finite) group and print its order.
        #[arg(long)]
        order: bool,
    },
    /// One-node simple-edge extensions, up to isomorphism.
    Extensions(GraphArgs),
    /// Gram signature, volume class and vertex links of a simplex graph.
    Simplex(GraphArgs),
    /// Component orders of reducible affine links of an ideal vertex in dimension n.
    Table3 {
        #[arg(short = 'n')]
        n: usize,
    },
    /// Re-run every check behind the minimality theorem for simplex groups.
    Replay {
        /// Run only the named checks.
        #[arg(long)]
        only: Vec<String>,
        /// Corrupt the exponent table (A1 gets exponent 2) to exercise failure reporting.
        #[arg(long, hide = true)]
        corrupt_exponents: bool,
    },
}

fn edge_list(g: &CoxeterGraph) -> String {
    let edges: Vec<String> = g.edges().iter().map(|(i, j, m)| format!("{}-{}:{}", i + 1, j + 1, m)).collect();
    format!("{} nodes [{}]", g.order(), edges.join(" "))
}

fn types_string(types: &[IrreducibleType]) -> String {
    types.iter().map(ToString::to_string).collect::<Vec<_>>().join(" + ")
}

/// Renders `f` with a positive constant term in the denominator.
fn unit_constant(f: &RatFunc) -> String {
    if f.den().coeff(0).sign() == Sign::Minus {
        let (num, den) = (-f.num(), -f.den());
        format!("({num}) / ({den})")
    } else {
        f.to_string()
    }
}

fn interval_json(r: &RootInterval) -> Value {
    json!({
        "value": r.midpoint_f64(),
        "lo": r.lo().to_string(),
        "hi": r.hi().to_string(),
        "width": coxgrowth::poly::rational_to_f64(&r.width()),
    })
}

fn emit(json: bool, value: Value, text: String) -> Result<()> {
    let mut out = std::io::stdout().lock();
    if json {
        serde_json::to_writer_pretty(&mut out, &value)?;
        writeln!(out)?;
    } else {
        writeln!(out, "{text}")?;
    }
    Ok(())
}

/// Returns whether the command's own verdict is success.
fn run(cli: Cli) -> Result<bool> {
    let exec = Exec::default();
    let json = cli.json;
    match cli.cmd {
        Cmd::Classify(args) => {
            let g = args.load()?;
            let types = component_types(&g);
            let spherical = is_spherical(&g);
            let affine = is_affine(&g)?;
            let kind = if spherical {
                "spherical"
            } else if affine {
                "affine"
            } else {
                "neither spherical nor affine"
            };
            emit(
                json,
                json!({"order": g.order(), "components": types, "spherical": spherical, "affine": affine}),
                format!("{}\ncomponents: {}\n{kind}", edge_list(&g), types_string(&types)),
            )?;
        }
        Cmd::Growth(args) => {
            let g = args.load()?;
            let s = growth_series(&g);
            let f = unit_constant(&s.f);
            emit(
                json,
                json!({"f": f, "steinberg": s.steinberg.to_string()}),
                format!("f(t) = {f}\n1/f(1/t) = {}", s.steinberg),
            )?;
        }
        Cmd::Rate { graph, eps } => {
            let g = graph.load()?;
            match growth_rate(&g, &eps)? {
                GrowthRate::Unit => {
                    emit(json, json!({"rate": 1, "growth": "polynomial"}), "1 (polynomial growth)".into())?
                }
                GrowthRate::Exponential { rate, .. } => emit(json, interval_json(&rate), rate.to_string())?,
            }
        }
        Cmd::Coeffs { graph, max_k } => {
            let g = graph.load()?;
            let cs: Vec<String> = series_coeffs(&g, max_k).iter().map(ToString::to_string).collect();
            emit(json, json!(cs), cs.join(" "))?;
        }
        Cmd::Oracle { graph, max_k, cap, order } => {
            let g = graph.load()?;
            if order {
                let n = group_order(&g, cap, exec)?;
                emit(json, json!({"order": n}), n.to_string())?;
                return Ok(true);
            }
            let bfs: Vec<String> = bfs_counts(&g, max_k, cap, exec)?.iter().map(ToString::to_string).collect();
            let series: Vec<String> = series_coeffs(&g, max_k).iter().map(ToString::to_string).collect();
            let agree = bfs == series;
            emit(
                json,
                json!({"bfs": bfs, "series": series, "agree": agree}),
                format!(
                    "bfs:    {}\nseries: {}\n{}",
                    bfs.join(" "),
                    series.join(" "),
                    if agree { "agree" } else { "DISAGREE" }
                ),
            )?;
            return Ok(agree);
        }
        Cmd::Extensions(args) => {
            let g = args.load()?;
            let exts = extensions(&g);
            let rows: Vec<(String, Option<String>)> =
                exts.iter().map(|e| (edge_list(e), simplex_class(e).ok().map(|r| r.class.to_string()))).collect();
            let mut text = format!("{} extension{}", rows.len(), if rows.len() == 1 { "" } else { "s" });
            for (edges, class) in &rows {
                text.push_str(&format!("\n  {edges}"));
                if let Some(c) = class {
                    text.push_str(&format!("  {c}"));
                }
            }
            let value: Vec<Value> = exts
                .iter()
                .zip(&rows)
                .map(|(e, (_, class))| {
                    let edges: Vec<Value> =
                        e.edges().iter().map(|(i, j, m)| json!([i + 1, j + 1, m.to_string()])).collect();
                    json!({"order": e.order(), "edges": edges, "class": class})
                })
                .collect();
            emit(json, json!(value), text)?;
        }
        Cmd::Simplex(args) => {
            let g = args.load()?;
            let r = simplex_class(&g)?;
            let sig = &r.signature;
            let mut text = format!("{}\nsignature ({}, {}, {})", r.class, sig.plus, sig.minus, sig.zero);
            for link in &r.links {
                let kind = format!("{:?}", link.kind).to_lowercase();
                text.push_str(&format!(
                    "\n  without node {}: {kind} ({})",
                    link.deleted + 1,
                    types_string(&link.types)
                ));
            }
            emit(json, serde_json::to_value(&r)?, text)?;
        }
        Cmd::Table3 { n } => {
            let parts = ideal_link_partitions(n)?;
            let shown: Vec<String> = parts
                .iter()
                .map(|p| format!("({})", p.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")))
                .collect();
            emit(json, json!(parts), shown.join(","))?;
        }
        Cmd::Replay { only, corrupt_exponents } => {
            let mut cfg = ReplayConfig { exec, ..ReplayConfig::default() };
            if corrupt_exponents {
                cfg.table = ExponentTable::standard().with_override(IrreducibleType::A(1), vec![2]);
            }
            let all = check_ids();
            let ids: Vec<&str> = if only.is_empty() {
                all
            } else {
                for id in &only {
                    if !all.contains(&id.as_str()) {
                        bail!("unknown check {id:?}; known: {}", all.join(", "));
                    }
                }
                only.iter().map(String::as_str).collect()
            };
            let report = replay_only(&cfg, &ids);
            let mut text = String::new();
            for c in &report.checks {
                let tag = match c.status {
                    Status::Pass => "PASS",
                    Status::Fail => "FAIL",
                    Status::Info => "INFO",
                };
                text.push_str(&format!(
                    "{tag} {} ({} ms)\n  computed: {}\n  expected: {}\n",
                    c.id, c.elapsed_ms, c.computed, c.expected
                ));
            }
            let count = |s| report.checks.iter().filter(|c| c.status == s).count();
            text.push_str(&format!(
                "{} passed, {} failed, {} informational",
                count(Status::Pass),
                count(Status::Fail),
                count(Status::Info)
            ));
            emit(json, serde_json::to_value(&report)?, text)?;
            return Ok(report.passed());
        }
    }
    Ok(true)
}

fn configure_threads() -> Result<()> {
    let Ok(v) = std::env::var("COXGROWTH_THREADS") else {
        return Ok(());
    };
    let n: usize = v.trim().parse().map_err(|_| anyhow!("COXGROWTH_THREADS must be a positive integer, got {v:?}"))?;
    if n == 0 {
        bail!("COXGROWTH_THREADS must be a positive integer, got 0");
    }
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = configure_threads() {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.downcast_ref::<std::io::Error>().is_some_and(|io| io.kind() == std::io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
