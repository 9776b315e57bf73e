//! Command-line front end: placement search, routing, cost queries,
//! benchmarking, and circuit generation.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use qpr::bench::{emit_table, run_bench, BenchCell, BenchConfig, SummaryRow, TableFormat};
use qpr::circuit::Circuit;
use qpr::coupling::CouplingGraph;
use qpr::placement::{
    evaluate_cost, greedy_place, trivial_placement, PartialPlacement, SearchConfig,
};
use qpr::router::route;
use qpr::Cost;

#[derive(Parser)]
#[command(
    name = "qpr",
    version,
    about = "Qubit placement and SWAP-insertion routing toolkit"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Switch {
    On,
    Off,
}

impl Switch {
    fn is_on(self) -> bool {
        self == Switch::On
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Md,
}

impl From<FormatArg> for TableFormat {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Csv => TableFormat::Csv,
            FormatArg::Md => TableFormat::Markdown,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Search an initial placement and print it as a placement file.
    Place {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        arch: PathBuf,
        #[arg(long, value_enum, default_value_t = Switch::On)]
        attenuation: Switch,
        #[arg(long, default_value_t = 4)]
        max_children: usize,
        #[arg(long)]
        cutoff_depth: Option<usize>,
    },
    /// Route a circuit from a placement and print the routed circuit plus
    /// a one-line cost report.
    Route {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        arch: PathBuf,
        /// `trivial` or a placement file path.
        #[arg(long)]
        placement: String,
        #[arg(long)]
        seed: u64,
    },
    /// Evaluate the placement cost model on a (possibly partial) placement.
    Cost {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        arch: PathBuf,
        #[arg(long)]
        placement: PathBuf,
        #[arg(long, value_enum, default_value_t = Switch::On)]
        attenuation: Switch,
    },
    /// Run seeded trials for the trivial and heuristic placements and
    /// write per-trial CSV plus a summary table.
    Bench {
        #[arg(long)]
        circuit: PathBuf,
        #[arg(long)]
        arch: PathBuf,
        #[arg(long, default_value_t = 250)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = Switch::On)]
        attenuation: Switch,
        #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
        format: FormatArg,
        #[arg(long, default_value = "bench_out")]
        out: PathBuf,
    },
    /// Generate a circuit file on standard output.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Seeded random layered circuit.
    Random {
        #[arg(long)]
        wires: usize,
        #[arg(long)]
        depth: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Quantum Fourier transform.
    Qft {
        #[arg(long)]
        wires: usize,
    },
}

fn load_circuit(path: &Path) -> Result<Circuit> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Circuit::parse(&text).with_context(|| format!("parsing circuit {}", path.display()))
}

fn load_graph(path: &Path) -> Result<CouplingGraph> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    CouplingGraph::parse(&text).with_context(|| format!("parsing graph {}", path.display()))
}

fn file_stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Place {
            circuit,
            arch,
            attenuation,
            max_children,
            cutoff_depth,
        } => {
            if max_children == 0 {
                bail!("--max-children must be at least 1");
            }
            let c = load_circuit(&circuit)?;
            let g = load_graph(&arch)?;
            let dm = g.all_pairs_distances();
            let config = SearchConfig {
                max_children,
                cutoff_depth,
                attenuation_enabled: attenuation.is_on(),
            };
            let placement = greedy_place::<Cost>(&c, &g, &dm, &config)?;
            println!("{}", placement.to_line());
        }
        Command::Route {
            circuit,
            arch,
            placement,
            seed,
        } => {
            let c = load_circuit(&circuit)?;
            let g = load_graph(&arch)?;
            let dm = g.all_pairs_distances();
            let initial = if placement == "trivial" {
                trivial_placement(c.wire_count())
            } else {
                let text = fs::read_to_string(&placement)
                    .with_context(|| format!("reading {placement}"))?;
                let parsed = PartialPlacement::parse(&text)
                    .with_context(|| format!("parsing placement {placement}"))?;
                if parsed.wire_count() != c.wire_count() {
                    return Err(qpr::PlacementError::WireCountMismatch {
                        slots: parsed.wire_count(),
                        wires: c.wire_count(),
                    }
                    .into());
                }
                parsed
            };
            let routed = route(&c, &initial, &g, &dm, seed)?;
            print!("{}", routed.circuit.to_text());
            println!(
                "# cost {} swaps {} gates {}",
                routed.cost,
                routed.swap_count,
                routed.circuit.gates().len()
            );
        }
        Command::Cost {
            circuit,
            arch,
            placement,
            attenuation,
        } => {
            let c = load_circuit(&circuit)?;
            let g = load_graph(&arch)?;
            let dm = g.all_pairs_distances();
            let text = fs::read_to_string(&placement)
                .with_context(|| format!("reading {}", placement.display()))?;
            let pl = PartialPlacement::parse(&text)
                .with_context(|| format!("parsing placement {}", placement.display()))?;
            if pl.wire_count() != c.wire_count() {
                return Err(qpr::PlacementError::WireCountMismatch {
                    slots: pl.wire_count(),
                    wires: c.wire_count(),
                }
                .into());
            }
            pl.validate_for(g.qubit_count())?;
            let config = SearchConfig {
                attenuation_enabled: attenuation.is_on(),
                ..SearchConfig::default()
            };
            let breakdown = evaluate_cost::<Cost>(&c, &pl, &dm, &config);
            println!("err {}", breakdown.err);
            println!("active {}", breakdown.active_cnots);
            println!("cost {}", breakdown.cost);
        }
        Command::Bench {
            circuit,
            arch,
            trials,
            attenuation,
            format,
            out,
        } => {
            if trials == 0 {
                bail!("--trials must be at least 1");
            }
            let mut cfg = BenchConfig::new(&circuit, &arch);
            cfg.trials = trials;
            cfg.attenuation_enabled = attenuation.is_on();
            cfg.output_format = format.into();
            let outcome = run_bench(&cfg)?;
            let label = format!(
                "{}-{}-att{}",
                file_stem(&circuit),
                file_stem(&arch),
                if cfg.attenuation_enabled { "on" } else { "off" }
            );
            let rows = vec![SummaryRow {
                circuit: file_stem(&circuit),
                arch: file_stem(&arch),
                summary: outcome.summary,
            }];
            let cells = vec![BenchCell {
                label,
                trials: outcome.trials,
            }];
            qpr::bench::write_report(&out, &rows, &cells, cfg.output_format)?;
            print!("{}", emit_table(&rows, cfg.output_format));
            eprintln!("report written to {}", out.display());
        }
        Command::Gen { kind } => {
            let circuit = match kind {
                GenKind::Random { wires, depth, seed } => {
                    if wires < 2 {
                        bail!("random circuits need at least 2 wires");
                    }
                    if depth == 0 {
                        bail!("--depth must be at least 1");
                    }
                    Circuit::random(wires, depth, seed)
                }
                GenKind::Qft { wires } => {
                    if wires == 0 {
                        bail!("--wires must be at least 1");
                    }
                    Circuit::qft(wires)
                }
            };
            print!("{}", circuit.to_text());
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    // Exit codes: 0 success, 1 usage error, 2 input validation error.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}
