//! Benchmark sweeps with CSV output, and per-configuration timing of the two
//! feasibility tests.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use crate::domset::{kprime_size, sample_certified, HopRadius, SamplingParams, DEFAULT_MAX_TRIES};
use crate::error::{Error, Result};
use crate::flow::{approx_bandwidth_alg2, build_flow_instance, count_intervals, max_flow};
use crate::graph::{gen_dense_random, Graph};
use crate::layout::{build_intervals, make_box_config, DominatorRecords, Placements, RootPlacement, WindowRule};
use crate::matching::{approx_bandwidth_alg1, approx_bandwidth_baseline, build_auxiliary, max_matching};
use crate::oracle::exact_bandwidth_with_cap;
use crate::report::ms;
use crate::rng;
use crate::search::{Algorithm, ApproxOptions, ApproxResult};

pub const CSV_HEADER: &str = "n,delta,seed,alg,boxsize,bandwidth,exact,ratio,configs,\
t_sampling_ms,t_distances_ms,t_search_ms,t_feasibility_ms,error";

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub ns: Vec<usize>,
    pub delta: f64,
    pub seeds: Vec<u64>,
    pub algorithms: Vec<Algorithm>,
    /// Compute exact bandwidth for instances within `oracle_cap`.
    pub exact: bool,
    pub oracle_cap: usize,
    pub options: ApproxOptions,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub n: usize,
    pub delta: f64,
    pub seed: u64,
    pub algorithm: Algorithm,
    pub outcome: std::result::Result<(ApproxResult, Option<usize>), String>,
}

impl BenchRow {
    pub fn to_csv(&self) -> String {
        let mut line = format!("{},{},{},{},", self.n, self.delta, self.seed, self.algorithm.id());
        match &self.outcome {
            Ok((r, exact)) => {
                let ratio = exact
                    .filter(|&e| e > 0)
                    .map(|e| format!("{:.4}", r.bandwidth as f64 / e as f64))
                    .unwrap_or_default();
                let exact = exact.map(|e| e.to_string()).unwrap_or_default();
                let t = &r.stats.times;
                let _ = write!(
                    line,
                    "{},{},{},{},{},{:.3},{:.3},{:.3},{:.3},",
                    r.boxsize,
                    r.bandwidth,
                    exact,
                    ratio,
                    r.stats.configurations,
                    ms(t.sampling),
                    ms(t.distances),
                    ms(t.search),
                    ms(t.feasibility)
                );
            }
            Err(code) => {
                let _ = write!(line, ",,,,,,,,,{code}");
            }
        }
        line
    }
}

/// Short comma-free code for an error, for the CSV error column.
pub fn error_code(e: &Error) -> &'static str {
    match e {
        Error::CertificationFailed { .. } => "certification_failed",
        Error::NoFeasibleConfiguration { .. } => "no_feasible_configuration",
        Error::Unsupported(_) => "unsupported",
        Error::InfeasibleGenerator { .. } => "infeasible_generator",
        Error::InvalidParams(_) => "invalid_params",
        Error::OracleCapExceeded { .. } => "oracle_cap",
        _ => "internal",
    }
}

pub fn run_algorithm(algorithm: Algorithm, g: &Graph, opts: &ApproxOptions, seed: u64) -> Result<ApproxResult> {
    match algorithm {
        Algorithm::Matching => approx_bandwidth_alg1(g, opts, seed),
        Algorithm::Flow => approx_bandwidth_alg2(g, opts, seed),
        Algorithm::Baseline => approx_bandwidth_baseline(g, opts, seed),
    }
}

/// Runs every `(n, seed, algorithm)` combination in that nesting order.
/// Failures become rows with an error code; the sweep always completes.
pub fn run_sweep(spec: &SweepSpec) -> Vec<BenchRow> {
    let mut rows = Vec::new();
    for &n in &spec.ns {
        for &seed in &spec.seeds {
            let graph = gen_dense_random(n, spec.delta, seed);
            let exact = match (&graph, spec.exact && n <= spec.oracle_cap) {
                (Ok(g), true) => exact_bandwidth_with_cap(g, spec.oracle_cap).ok().map(|(b, _)| b),
                _ => None,
            };
            for &algorithm in &spec.algorithms {
                let outcome = match &graph {
                    Ok(g) => run_algorithm(algorithm, g, &spec.options, seed)
                        .map(|r| (r, exact))
                        .map_err(|e| error_code(&e).to_string()),
                    Err(e) => Err(error_code(e).to_string()),
                };
                rows.push(BenchRow {
                    n,
                    delta: spec.delta,
                    seed,
                    algorithm,
                    outcome,
                });
            }
        }
    }
    rows
}

pub fn to_csv(rows: &[BenchRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for row in rows {
        out.push_str(&row.to_csv());
        out.push('\n');
    }
    out
}

/// Mean time of one feasibility test per algorithm on a fixed set of
/// configurations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeasibilityTiming {
    pub n: usize,
    pub configurations: usize,
    pub matching: Duration,
    pub flow: Duration,
}

/// Times both feasibility tests on the first `placements` placements of a
/// certified root set whose interval tables have no empty entry.
///
/// The matching test builds the table, the auxiliary graph and a maximum
/// matching. The flow test updates the table in place, counts intervals,
/// builds the network and solves it. Each test is repeated until at least
/// `min_time` has elapsed; the reported value is the smallest per-round
/// mean over `rounds` rounds.
pub fn time_feasibility(
    g: &Graph,
    delta: f64,
    boxsize: usize,
    placements: usize,
    seed: u64,
    rounds: usize,
    min_time: Duration,
) -> Result<FeasibilityTiming> {
    let n = g.n();
    let params = SamplingParams::with_delta(delta);
    let size = kprime_size(n, &params)?.min(n);
    let (rs, _) = sample_certified(g, size, rng::substream(seed, rng::SAMPLING), HopRadius::Two, DEFAULT_MAX_TRIES)?;
    let records = DominatorRecords::new(g, &rs, WindowRule::TIGHT)?;
    let cfg = make_box_config(n, boxsize)?;
    let chosen: Vec<RootPlacement> = Placements::new(rs.len(), cfg)
        .filter(|p| build_intervals(&records, p, &cfg).is_ok_and(|t| !t.has_empty()))
        .take(placements)
        .collect();
    if chosen.is_empty() {
        return Err(Error::NoFeasibleConfiguration { lo: boxsize, hi: boxsize });
    }

    let matching = best_mean(rounds, min_time, chosen.len(), || {
        let mut perfect = 0;
        for p in &chosen {
            let table = build_intervals(&records, p, &cfg).expect("placement fits");
            let aux = build_auxiliary(&table, &cfg);
            perfect += usize::from(max_matching(&aux).is_perfect());
        }
        perfect
    });

    let mut table = build_intervals(&records, &chosen[0], &cfg)?;
    let flow = best_mean(rounds, min_time, chosen.len(), || {
        let mut saturated = 0;
        for p in &chosen {
            table.update(p).expect("placement fits");
            let counts = count_intervals(&table).expect("no empty intervals");
            let inst = build_flow_instance(&counts, &cfg).expect("intervals in range");
            saturated += usize::from(max_flow(&inst).value == n);
        }
        saturated
    });

    Ok(FeasibilityTiming {
        n,
        configurations: chosen.len(),
        matching,
        flow,
    })
}

fn best_mean(rounds: usize, min_time: Duration, per_call: usize, mut f: impl FnMut() -> usize) -> Duration {
    let mut best = Duration::MAX;
    let mut sink = 0usize;
    for _ in 0..rounds.max(1) {
        let start = Instant::now();
        let mut calls = 0u32;
        while calls == 0 || start.elapsed() < min_time {
            sink = sink.wrapping_add(std::hint::black_box(f()));
            calls += 1;
        }
        let mean = start.elapsed() / (calls * per_call as u32);
        best = best.min(mean);
    }
    std::hint::black_box(sink);
    best
}

/// Least-squares slope of `ln t` against `ln n`.
pub fn fitted_exponent(points: &[(usize, Duration)]) -> f64 {
    let xs: Vec<f64> = points.iter().map(|(n, _)| (*n as f64).ln()).collect();
    let ys: Vec<f64> = points.iter().map(|(_, t)| t.as_secs_f64().ln()).collect();
    let k = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let cov: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let var: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    cov / var
}
