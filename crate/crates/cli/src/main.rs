use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;
use treemod_cli::bench::{self, BenchConfig};
use treemod_cli::generate::{generate, Family};
use treemod_cli::render::{self, Format};
use treemod_cli::{exit_code, load_graph};
use treemod_core::graph::bridges;
use treemod_core::io::{to_edge_list, ParseOptions, ParseWarning};
use treemod_core::modulus::spanning_tree_modulus_with;
use treemod_core::oracle::{
    brute_modulus, brute_theta, count_spanning_trees, verify_modulus, MAX_MODULUS_EDGES,
};
use treemod_core::vulnerability::{vulnerability_with, VulnerabilityOptions};
use treemod_core::Error;

/// Exact graph vulnerability and spanning tree modulus.
#[derive(Parser)]
#[command(name = "treemod", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// Edge list file, `.json` graph, or `-` for standard input.
    path: PathBuf,

    /// Keep one edge per unordered vertex pair (for directed source data).
    #[arg(long)]
    symmetrize: bool,
}

impl Input {
    fn options(&self) -> ParseOptions {
        ParseOptions {
            collapse_duplicates: self.symmetrize,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Vulnerability θ(G) and a critical edge set.
    Vuln {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Always extract the critical set from the run just below θ(G).
        #[arg(long)]
        force_fallback: bool,
    },
    /// Optimal edge usage η*, density ρ* and the spanning tree modulus.
    Modulus {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        force_fallback: bool,
    },
    /// Writes a member of a benchmark family as an edge list.
    Generate {
        /// complete, multipartite, gnp or geometric.
        family: Family,
        /// Vertex count, or the number of parts for multipartite.
        size: usize,
        /// Required for gnp and geometric.
        #[arg(long)]
        seed: Option<u64>,
        /// `text` for an edge list, `json` for a serialized graph.
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Times the modulus on generated families and fits log-log slopes.
    Bench {
        /// Comma separated families (default: all four).
        #[arg(long, value_delimiter = ',')]
        families: Option<Vec<Family>>,
        /// Comma separated sizes, e.g. `4,6,8`.
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        reps: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// CSV destination; the slope summary then goes to standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Per-instance time limit in seconds.
        #[arg(long)]
        timeout_secs: Option<f64>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Vertex and edge counts, bridges, and the number of spanning trees.
    Stats {
        #[command(flatten)]
        input: Input,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Verifies the modulus with exact certificates and brute force.
    Check {
        #[command(flatten)]
        input: Input,
        /// Refuse graphs with more edges than this.
        #[arg(long, default_value_t = MAX_MODULUS_EDGES)]
        max_edges_check: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn json_text(v: &serde_json::Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializing JSON");
    s.push('\n');
    s
}

fn report_warnings(warnings: &[ParseWarning]) {
    for w in warnings {
        match w {
            ParseWarning::SelfLoop { line, label } => {
                eprintln!("warning: line {line}: self-loop at {label} dropped")
            }
            ParseWarning::DuplicateDropped { line } => {
                eprintln!("warning: line {line}: duplicate edge dropped")
            }
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Vuln {
            input,
            format,
            out,
            force_fallback,
        } => {
            let parsed = load_graph(&input.path, &input.options())?;
            report_warnings(&parsed.warnings);
            let r = vulnerability_with(&parsed.graph, &VulnerabilityOptions { force_fallback })?;
            let text = match format {
                Format::Text => render::vulnerability_text(&parsed, &r),
                Format::Json => json_text(&render::vulnerability_json(&parsed, &r)),
                Format::Csv => render::vulnerability_csv(&parsed, &r),
                Format::Dot => bail!("dot output is only available for `modulus`"),
            };
            emit(out.as_deref(), &text)
        }
        Command::Modulus {
            input,
            format,
            out,
            force_fallback,
        } => {
            let parsed = load_graph(&input.path, &input.options())?;
            report_warnings(&parsed.warnings);
            let r = spanning_tree_modulus_with(
                &parsed.graph,
                &VulnerabilityOptions { force_fallback },
            )?;
            let text = match format {
                Format::Text => render::modulus_text(&parsed, &r),
                Format::Json => json_text(&render::modulus_json(&parsed, &r)),
                Format::Csv => render::modulus_csv(&parsed, &r),
                Format::Dot => render::modulus_dot(&parsed, &r),
            };
            emit(out.as_deref(), &text)
        }
        Command::Generate {
            family,
            size,
            seed,
            format,
            out,
        } => {
            let seed = match (seed, family.is_random()) {
                (Some(s), _) => s,
                (None, false) => 0,
                (None, true) => bail!("--seed is required for the {family} family"),
            };
            let g = generate(family, size, seed)?;
            let text = match format {
                Format::Text => to_edge_list(&g, None),
                Format::Json => json_text(&serde_json::to_value(&g)?),
                Format::Csv | Format::Dot => bail!("generate writes text or json"),
            };
            emit(out.as_deref(), &text)
        }
        Command::Bench {
            families,
            sizes,
            reps,
            seed,
            out,
            timeout_secs,
            jobs,
        } => {
            let cfg = BenchConfig {
                families: families.unwrap_or_else(|| Family::ALL.to_vec()),
                sizes,
                reps,
                seed,
                timeout: timeout_secs.map(Duration::from_secs_f64),
                jobs,
            };
            let report = bench::run_bench(&cfg)?;
            let csv = bench::to_csv(&report.records);
            match out {
                Some(path) => {
                    emit(Some(&path), &csv)?;
                    print!("{}", bench::summary(&report));
                }
                None => {
                    print!("{csv}");
                    eprint!("{}", bench::summary(&report));
                }
            }
            Ok(())
        }
        Command::Stats { input, format } => {
            let parsed = load_graph(&input.path, &input.options())?;
            report_warnings(&parsed.warnings);
            let g = &parsed.graph;
            let trees = count_spanning_trees(g);
            let digits = trees.to_string().len();
            let bridge_count = bridges(g).len();
            let dropped = parsed.warnings.len() - parsed.self_loops();
            match format {
                Format::Json => emit(
                    None,
                    &json_text(&json!({
                        "vertices": g.vertex_count(),
                        "edges": g.edge_count(),
                        "connected": g.is_connected(),
                        "bridges": bridge_count,
                        "self_loops_dropped": parsed.self_loops(),
                        "duplicates_dropped": dropped,
                        "spanning_trees": trees.to_string(),
                        "spanning_tree_digits": digits,
                    })),
                ),
                _ => {
                    let approx = render::scientific(&trees, 6);
                    emit(
                        None,
                        &format!(
                            "vertices = {}\nedges = {}\nconnected = {}\nbridges = {bridge_count}\n\
                             self-loops dropped = {}\nduplicates dropped = {dropped}\n\
                             spanning trees = {trees}\nspanning tree digits = {digits} (~{approx})\n",
                            g.vertex_count(),
                            g.edge_count(),
                            g.is_connected(),
                            parsed.self_loops(),
                        ),
                    )
                }
            }
        }
        Command::Check {
            input,
            max_edges_check,
            format,
        } => {
            let parsed = load_graph(&input.path, &input.options())?;
            report_warnings(&parsed.warnings);
            let g = &parsed.graph;
            if g.edge_count() > max_edges_check {
                return Err(Error::Guard {
                    what: "edge count",
                    actual: g.edge_count().to_string(),
                    limit: max_edges_check.to_string(),
                }
                .into());
            }
            let fast = treemod_core::spanning_tree_modulus(g)?;
            let mut report = verify_modulus(g, &fast);
            let slow = brute_modulus(g)?;
            report.checks.push(treemod_core::oracle::Check {
                name: "brute_force_eta",
                passed: slow.eta == fast.eta,
                detail: "η* agrees with exhaustive peeling".into(),
            });
            let (theta, family) = brute_theta(g)?;
            let direct = treemod_core::vulnerability(g)?;
            report.checks.push(treemod_core::oracle::Check {
                name: "brute_force_theta",
                passed: direct.theta == theta && family.contains(&direct.critical),
                detail: format!("θ(G) = {} by enumeration, {} by flows", theta, direct.theta),
            });
            let text = match format {
                Format::Json => json_text(&json!({
                    "passed": report.all_passed(),
                    "checks": report.checks.iter().map(|c| json!({
                        "name": c.name, "passed": c.passed, "detail": c.detail,
                    })).collect::<Vec<_>>(),
                })),
                _ => report
                    .checks
                    .iter()
                    .map(|c| {
                        format!(
                            "{} {}: {}\n",
                            if c.passed { "PASS" } else { "FAIL" },
                            c.name,
                            c.detail
                        )
                    })
                    .collect(),
            };
            emit(None, &text)?;
            if !report.all_passed() {
                return Err(Error::Invariant("verification failed".into()).into());
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code(&err) as u8)
        }
    }
}
