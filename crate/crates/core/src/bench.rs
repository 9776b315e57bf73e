//! Benchmark harness: N seeded routing trials per placement strategy,
//! summary statistics, and table emission.
//!
//! A bench cell fixes (circuit, architecture, attenuation switch). For each
//! requested strategy the initial placement is computed once — placement is
//! deterministic, the router is the seeded component — and trial `k` routes
//! with seed `k`, so both strategies see the same seeds. Results are always
//! ordered by strategy and seed, which makes a whole run a pure function of
//! its configuration.

use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;

use crate::circuit::{Circuit, CircuitError};
use crate::coupling::{CouplingGraph, GraphError};
use crate::placement::{greedy_place, trivial_placement, PartialPlacement, PlacementError, SearchConfig};
use crate::router::{route, RouteError};
use crate::Cost;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("i/o error: {0}")]
    Io(#[from] io::Error),
    #[error("circuit error: {0}")]
    Circuit(#[from] CircuitError),
    #[error("graph error: {0}")]
    Graph(#[from] GraphError),
    #[error("placement error: {0}")]
    Placement(#[from] PlacementError),
    #[error("routing error: {0}")]
    Route(#[from] RouteError),
    #[error("no trial results to summarize")]
    Empty,
}

/// How the initial placement for a trial run is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    Trivial,
    Heuristic,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Strategy::Trivial => write!(f, "trivial"),
            Strategy::Heuristic => write!(f, "heuristic"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Csv,
    Markdown,
}

/// One seeded routing trial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TrialResult {
    pub seed: u64,
    pub strategy: Strategy,
    pub cost: u64,
    pub swap_count: usize,
}

/// Per-cell statistics; a side is `None` when its strategy was not run.
/// `imp` is the trivial-to-heuristic average cost ratio.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialSummary {
    pub t_avg: Option<f64>,
    pub t_med: Option<f64>,
    pub h_avg: Option<f64>,
    pub h_med: Option<f64>,
    pub imp: Option<f64>,
}

/// Full benchmark configuration. `parallel` only changes scheduling; the
/// output is identical either way.
#[derive(Debug, Clone)]
pub struct BenchConfig {
    pub circuit_path: PathBuf,
    pub arch_path: PathBuf,
    pub trials: usize,
    pub strategies: Vec<Strategy>,
    pub attenuation_enabled: bool,
    pub search: SearchConfig,
    pub output_format: TableFormat,
    pub parallel: bool,
}

impl BenchConfig {
    pub fn new(circuit_path: impl Into<PathBuf>, arch_path: impl Into<PathBuf>) -> Self {
        Self {
            circuit_path: circuit_path.into(),
            arch_path: arch_path.into(),
            trials: 250,
            strategies: vec![Strategy::Trivial, Strategy::Heuristic],
            attenuation_enabled: true,
            search: SearchConfig::default(),
            output_format: TableFormat::Csv,
            parallel: true,
        }
    }
}

/// Results of one bench cell, with the placements the trials used.
#[derive(Debug, Clone)]
pub struct BenchOutcome {
    pub trials: Vec<TrialResult>,
    pub summary: TrialSummary,
    pub trivial: Option<PartialPlacement>,
    pub heuristic: Option<PartialPlacement>,
}

/// Loads the circuit and architecture files and runs the cell.
pub fn run_bench(cfg: &BenchConfig) -> Result<BenchOutcome, BenchError> {
    let circuit = Circuit::parse(&fs::read_to_string(&cfg.circuit_path)?)?;
    let graph = CouplingGraph::parse(&fs::read_to_string(&cfg.arch_path)?)?;
    run_bench_on(&circuit, &graph, cfg)
}

/// Runs one bench cell on already-parsed inputs.
pub fn run_bench_on(
    circuit: &Circuit,
    graph: &CouplingGraph,
    cfg: &BenchConfig,
) -> Result<BenchOutcome, BenchError> {
    assert!(cfg.trials >= 1, "at least one trial is required");
    if circuit.wire_count() > graph.qubit_count() {
        return Err(PlacementError::Capacity {
            wires: circuit.wire_count(),
            qubits: graph.qubit_count(),
        }
        .into());
    }
    let dm = graph.all_pairs_distances();
    let search = SearchConfig {
        attenuation_enabled: cfg.attenuation_enabled,
        ..cfg.search.clone()
    };
    let mut trials = Vec::with_capacity(cfg.trials * cfg.strategies.len());
    let mut trivial = None;
    let mut heuristic = None;
    for &strategy in &cfg.strategies {
        let placement = match strategy {
            Strategy::Trivial => trivial_placement(circuit.wire_count()),
            Strategy::Heuristic => greedy_place::<Cost>(circuit, graph, &dm, &search)?,
        };
        let run_one = |seed: u64| -> Result<TrialResult, BenchError> {
            let routed = route(circuit, &placement, graph, &dm, seed)?;
            Ok(TrialResult {
                seed,
                strategy,
                cost: routed.cost,
                swap_count: routed.swap_count,
            })
        };
        let seeds: Vec<u64> = (0..cfg.trials as u64).collect();
        let strategy_trials: Result<Vec<TrialResult>, BenchError> = if cfg.parallel {
            seeds.par_iter().map(|&seed| run_one(seed)).collect()
        } else {
            seeds.iter().map(|&seed| run_one(seed)).collect()
        };
        trials.extend(strategy_trials?);
        match strategy {
            Strategy::Trivial => trivial = Some(placement),
            Strategy::Heuristic => heuristic = Some(placement),
        }
    }
    let summary = summarize(&trials)?;
    Ok(BenchOutcome {
        trials,
        summary,
        trivial,
        heuristic,
    })
}

fn average(costs: &[u64]) -> f64 {
    let sum: u128 = costs.iter().map(|&c| c as u128).sum();
    sum as f64 / costs.len() as f64
}

fn median(costs: &[u64]) -> f64 {
    let mut sorted = costs.to_vec();
    sorted.sort_unstable();
    let n = sorted.len();
    if n % 2 == 1 {
        sorted[n / 2] as f64
    } else {
        (sorted[n / 2 - 1] as f64 + sorted[n / 2] as f64) / 2.0
    }
}

/// Computes per-strategy averages and medians, and the improvement ratio
/// `t_avg / h_avg` when both strategies are present.
pub fn summarize(results: &[TrialResult]) -> Result<TrialSummary, BenchError> {
    if results.is_empty() {
        return Err(BenchError::Empty);
    }
    let costs_of = |strategy: Strategy| -> Vec<u64> {
        results
            .iter()
            .filter(|t| t.strategy == strategy)
            .map(|t| t.cost)
            .collect()
    };
    let stat = |costs: &[u64]| -> (Option<f64>, Option<f64>) {
        if costs.is_empty() {
            (None, None)
        } else {
            (Some(average(costs)), Some(median(costs)))
        }
    };
    let (t_avg, t_med) = stat(&costs_of(Strategy::Trivial));
    let (h_avg, h_med) = stat(&costs_of(Strategy::Heuristic));
    let imp = match (t_avg, h_avg) {
        (Some(t), Some(h)) if h > 0.0 => Some(t / h),
        _ => None,
    };
    Ok(TrialSummary {
        t_avg,
        t_med,
        h_avg,
        h_med,
        imp,
    })
}

/// One labeled row of the summary table.
#[derive(Debug, Clone)]
pub struct SummaryRow {
    pub circuit: String,
    pub arch: String,
    pub summary: TrialSummary,
}

const TABLE_COLUMNS: [&str; 7] = ["Circuit", "Arch", "T.Avg", "T.Med", "H.Avg", "H.Med", "Imp"];

fn fmt2(value: Option<f64>) -> String {
    value.map(|v| format!("{v:.2}")).unwrap_or_default()
}

/// Emits the summary table: columns Circuit, Arch, T.Avg, T.Med, H.Avg,
/// H.Med, Imp, with every statistic at two decimals.
pub fn emit_table(rows: &[SummaryRow], format: TableFormat) -> String {
    let cells = |row: &SummaryRow| -> [String; 7] {
        [
            row.circuit.clone(),
            row.arch.clone(),
            fmt2(row.summary.t_avg),
            fmt2(row.summary.t_med),
            fmt2(row.summary.h_avg),
            fmt2(row.summary.h_med),
            fmt2(row.summary.imp),
        ]
    };
    match format {
        TableFormat::Csv => {
            let mut out = TABLE_COLUMNS.join(",");
            out.push('\n');
            for row in rows {
                out.push_str(&cells(row).join(","));
                out.push('\n');
            }
            out
        }
        TableFormat::Markdown => {
            let mut out = format!("| {} |\n", TABLE_COLUMNS.join(" | "));
            out.push_str("|---|---|---|---|---|---|---|\n");
            for row in rows {
                out.push_str(&format!("| {} |\n", cells(row).join(" | ")));
            }
            out
        }
    }
}

/// Per-trial CSV: one row per trial, strategy-major, seeds ascending.
pub fn trials_csv(trials: &[TrialResult]) -> String {
    let mut out = String::from("seed,strategy,cost,swap_count\n");
    for t in trials {
        out.push_str(&format!("{},{},{},{}\n", t.seed, t.strategy, t.cost, t.swap_count));
    }
    out
}

/// One labeled cell for report writing.
#[derive(Debug, Clone)]
pub struct BenchCell {
    pub label: String,
    pub trials: Vec<TrialResult>,
}

/// Note shipped with every written report.
pub const REPORT_README: &str = "\
# Benchmark report

`summary.*` holds one row per (circuit, architecture) cell: average and
median routed gate cost over the seeded trials for the trivial placement
(T.*) and the heuristic placement (H.*), plus Imp = T.Avg / H.Avg. Values
above 1.00 mean the heuristic placement reduced the average routed cost.

The routed costs come from this toolkit's built-in seeded baseline router.
Imp values therefore measure placement influence under this router only;
absolute magnitudes and ratios are not comparable to numbers produced with
any other compiler or router.

`trials-<cell>.csv` lists every trial (seed, strategy, cost, swap count)
so the summary statistics can be recomputed independently.
";

/// Writes `summary.csv`/`summary.md`, one `trials-<label>.csv` per cell,
/// and a `README.md` describing how to read the numbers.
pub fn write_report(
    dir: &Path,
    rows: &[SummaryRow],
    cells: &[BenchCell],
    format: TableFormat,
) -> io::Result<()> {
    fs::create_dir_all(dir)?;
    let summary_name = match format {
        TableFormat::Csv => "summary.csv",
        TableFormat::Markdown => "summary.md",
    };
    fs::write(dir.join(summary_name), emit_table(rows, format))?;
    for cell in cells {
        fs::write(
            dir.join(format!("trials-{}.csv", cell.label)),
            trials_csv(&cell.trials),
        )?;
    }
    fs::write(dir.join("README.md"), REPORT_README)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial(seed: u64, strategy: Strategy, cost: u64) -> TrialResult {
        TrialResult {
            seed,
            strategy,
            cost,
            swap_count: 0,
        }
    }

    fn trivial_costs(costs: &[u64]) -> Vec<TrialResult> {
        costs
            .iter()
            .enumerate()
            .map(|(i, &c)| trial(i as u64, Strategy::Trivial, c))
            .collect()
    }

    #[test]
    fn summarize_small_lists() {
        let s = summarize(&trivial_costs(&[1, 2, 3])).unwrap();
        assert_eq!(s.t_avg, Some(2.0));
        assert_eq!(s.t_med, Some(2.0));
        assert_eq!(s.h_avg, None);
        assert_eq!(s.imp, None);
    }

    #[test]
    fn summarize_even_count_median_averages_middles() {
        let s = summarize(&trivial_costs(&[1, 2, 3, 4])).unwrap();
        assert_eq!(s.t_med, Some(2.5));
    }

    #[test]
    fn summarize_rejects_empty_input() {
        assert!(matches!(summarize(&[]), Err(BenchError::Empty)));
    }

    /// Integer cost lists with exact means 7837.76 and 7205.67; their
    /// ratio prints as 1.09 at two decimals.
    #[test]
    fn improvement_ratio_reproduces_known_two_decimal_value() {
        let mut results = Vec::new();
        // 100 trivial costs summing to 783776 -> mean 7837.76.
        results.push(trial(0, Strategy::Trivial, 7814));
        for seed in 1..100 {
            results.push(trial(seed, Strategy::Trivial, 7838));
        }
        // 100 heuristic costs summing to 720567 -> mean 7205.67.
        results.push(trial(0, Strategy::Heuristic, 7173));
        for seed in 1..100 {
            results.push(trial(seed, Strategy::Heuristic, 7206));
        }
        let s = summarize(&results).unwrap();
        assert_eq!(s.t_avg, Some(7837.76));
        assert_eq!(s.h_avg, Some(7205.67));
        assert_eq!(format!("{:.2}", s.imp.unwrap()), "1.09");
    }

    #[test]
    fn csv_table_has_seven_columns_per_row() {
        let rows = vec![SummaryRow {
            circuit: "qft_n4".into(),
            arch: "line4".into(),
            summary: summarize(&trivial_costs(&[10, 20])).unwrap(),
        }];
        let table = emit_table(&rows, TableFormat::Csv);
        let lines: Vec<&str> = table.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], "Circuit,Arch,T.Avg,T.Med,H.Avg,H.Med,Imp");
        assert_eq!(lines[1].split(',').count(), 7);
        assert_eq!(lines[1], "qft_n4,line4,15.00,15.00,,,");
    }

    #[test]
    fn empty_table_is_just_the_header() {
        let table = emit_table(&[], TableFormat::Csv);
        assert_eq!(table, "Circuit,Arch,T.Avg,T.Med,H.Avg,H.Med,Imp\n");
    }

    #[test]
    fn markdown_table_round_trips_its_values() {
        let summary = TrialSummary {
            t_avg: Some(7837.76),
            t_med: Some(7811.0),
            h_avg: Some(7469.70),
            h_med: Some(7387.0),
            imp: Some(7837.76 / 7469.70),
        };
        let rows = vec![SummaryRow {
            circuit: "qft_n16".into(),
            arch: "qx3".into(),
            summary,
        }];
        let table = emit_table(&rows, TableFormat::Markdown);
        let data_line = table.lines().nth(2).unwrap();
        let cells: Vec<&str> = data_line
            .trim_matches('|')
            .split('|')
            .map(str::trim)
            .collect();
        assert_eq!(cells.len(), 7);
        assert_eq!(cells[0], "qft_n16");
        assert_eq!(cells[2].parse::<f64>().unwrap(), 7837.76);
        assert_eq!(cells[4].parse::<f64>().unwrap(), 7469.70);
        assert_eq!(cells[6], "1.05");
    }

    #[test]
    fn single_trial_bench_matches_the_routing_example() {
        let circuit = Circuit::parse("qubits 4\ncx 0 2").unwrap();
        let graph = CouplingGraph::line(4);
        let mut cfg = BenchConfig::new("unused", "unused");
        cfg.trials = 1;
        cfg.strategies = vec![Strategy::Trivial];
        let outcome = run_bench_on(&circuit, &graph, &cfg).unwrap();
        assert_eq!(outcome.trials.len(), 1);
        assert_eq!(outcome.trials[0].cost, 44);
        assert_eq!(outcome.trials[0].swap_count, 1);
        assert_eq!(outcome.summary.t_avg, Some(44.0));
    }

    #[test]
    fn bench_runs_are_reproducible() {
        let circuit = Circuit::random(6, 6, 12);
        let graph = CouplingGraph::ladder(3);
        let mut cfg = BenchConfig::new("unused", "unused");
        cfg.trials = 20;
        let a = run_bench_on(&circuit, &graph, &cfg).unwrap();
        let b = run_bench_on(&circuit, &graph, &cfg).unwrap();
        assert_eq!(trials_csv(&a.trials), trials_csv(&b.trials));
        assert_eq!(a.summary, b.summary);
    }

    #[test]
    fn parallel_and_sequential_runs_agree_byte_for_byte() {
        let circuit = Circuit::random(8, 8, 5);
        let graph = CouplingGraph::ladder(4);
        let mut cfg = BenchConfig::new("unused", "unused");
        cfg.trials = 25;
        cfg.parallel = true;
        let par = run_bench_on(&circuit, &graph, &cfg).unwrap();
        cfg.parallel = false;
        let seq = run_bench_on(&circuit, &graph, &cfg).unwrap();
        assert_eq!(trials_csv(&par.trials), trials_csv(&seq.trials));
        let row = |o: &BenchOutcome| SummaryRow {
            circuit: "c".into(),
            arch: "a".into(),
            summary: o.summary,
        };
        assert_eq!(
            emit_table(&[row(&par)], TableFormat::Csv),
            emit_table(&[row(&seq)], TableFormat::Csv)
        );
    }

    #[test]
    fn harness_statistics_match_recomputation_from_csv() {
        let circuit = Circuit::random(6, 8, 31);
        let graph = CouplingGraph::ring(6);
        let mut cfg = BenchConfig::new("unused", "unused");
        cfg.trials = 15;
        let outcome = run_bench_on(&circuit, &graph, &cfg).unwrap();
        let csv = trials_csv(&outcome.trials);
        let mut trivial = Vec::new();
        let mut heuristic = Vec::new();
        for line in csv.lines().skip(1) {
            let fields: Vec<&str> = line.split(',').collect();
            let cost: u64 = fields[2].parse().unwrap();
            match fields[1] {
                "trivial" => trivial.push(cost),
                "heuristic" => heuristic.push(cost),
                other => panic!("unexpected strategy {other}"),
            }
        }
        let independent_avg =
            |xs: &[u64]| xs.iter().map(|&x| x as f64).sum::<f64>() / xs.len() as f64;
        let independent_med = |xs: &[u64]| {
            let mut s = xs.to_vec();
            s.sort_unstable();
            if s.len() % 2 == 1 {
                s[s.len() / 2] as f64
            } else {
                (s[s.len() / 2 - 1] + s[s.len() / 2]) as f64 / 2.0
            }
        };
        assert_eq!(outcome.summary.t_avg.unwrap(), independent_avg(&trivial));
        assert_eq!(outcome.summary.t_med.unwrap(), independent_med(&trivial));
        assert_eq!(outcome.summary.h_avg.unwrap(), independent_avg(&heuristic));
        assert_eq!(outcome.summary.h_med.unwrap(), independent_med(&heuristic));
    }

    #[test]
    fn coinciding_placements_give_unit_improvement() {
        // No CNOTs: the search ties everywhere and returns the trivial
        // placement, so both strategies route identically.
        let circuit = Circuit::parse("qubits 4\nh 0\nh 1\nh 2\nh 3").unwrap();
        let graph = CouplingGraph::line(4);
        let mut cfg = BenchConfig::new("unused", "unused");
        cfg.trials = 10;
        let outcome = run_bench_on(&circuit, &graph, &cfg).unwrap();
        assert_eq!(outcome.trivial, outcome.heuristic);
        assert_eq!(outcome.summary.t_avg, outcome.summary.h_avg);
        assert_eq!(format!("{:.2}", outcome.summary.imp.unwrap()), "1.00");
    }

    #[test]
    fn capacity_violation_is_reported() {
        let circuit = Circuit::random(8, 2, 0);
        let graph = CouplingGraph::line(4);
        let cfg = BenchConfig::new("unused", "unused");
        assert!(matches!(
            run_bench_on(&circuit, &graph, &cfg),
            Err(BenchError::Placement(PlacementError::Capacity { .. }))
        ));
    }
}
