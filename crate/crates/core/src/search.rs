//! Outer loops shared by the approximation algorithms: sample a certified
//! root set, scan box sizes, enumerate placements, and hand each interval
//! table to a feasibility back end.

use std::time::{Duration, Instant};

use crate::domset::{
    k_size, kprime_size, sample_certified, DeltaRule, HopRadius, SamplingParams, DEFAULT_ALPHA,
    DEFAULT_C, DEFAULT_MAX_TRIES,
};
use crate::error::{Error, Result};
use crate::graph::{generator_target_degree, Graph};
use crate::layout::{
    build_intervals, make_box_config, BoxConfig, DominatorRecords, IntervalTable, Placements,
    WindowRule,
};
use crate::oracle::{degree_lower_bound, layout_bandwidth, Layout};
use crate::rng;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    /// 2-dominating roots, explicit auxiliary graph, bipartite matching.
    Matching,
    /// 2-dominating roots, compressed interval network, maximum flow.
    Flow,
    /// 1-dominating roots with unit windows and the matching back end.
    Baseline,
}

impl Algorithm {
    pub fn id(&self) -> &'static str {
        match self {
            Algorithm::Matching => "1",
            Algorithm::Flow => "2",
            Algorithm::Baseline => "baseline",
        }
    }
}

impl std::str::FromStr for Algorithm {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "1" => Ok(Algorithm::Matching),
            "2" => Ok(Algorithm::Flow),
            "baseline" => Ok(Algorithm::Baseline),
            other => Err(format!("unknown algorithm {other:?}; expected 1, 2 or baseline")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum BoxsizeSearch {
    #[default]
    Linear,
    /// Bisection over box sizes. Assumes feasibility is monotone in the box
    /// size, which is not guaranteed.
    Binary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproxOptions {
    pub alpha: f64,
    pub c: f64,
    /// Density for the sample-size formulas; measured from the graph if unset.
    pub delta: Option<DeltaRule>,
    /// Tighten windows with roots one hop beyond the domination radius.
    pub three_hop: bool,
    /// Scan box sizes `ceil(delta n) ..= n / 2` instead of
    /// `degree_lower_bound ..= n`.
    pub narrow_range: bool,
    pub max_tries: usize,
    pub search: BoxsizeSearch,
    /// In binary mode, also run the linear scan and report its box size.
    pub verify_monotone: bool,
    /// Keep one trace entry per evaluated configuration.
    pub record_trace: bool,
}

impl Default for ApproxOptions {
    fn default() -> Self {
        Self {
            alpha: DEFAULT_ALPHA,
            c: DEFAULT_C,
            delta: None,
            three_hop: true,
            narrow_range: false,
            max_tries: DEFAULT_MAX_TRIES,
            search: BoxsizeSearch::Linear,
            verify_monotone: false,
            record_trace: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// Some interval was empty; the back end was not consulted.
    EmptyInterval,
    Infeasible,
    Feasible,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TraceEntry {
    pub boxsize: usize,
    pub boxes: usize,
    /// Position of the placement in the lexicographic stream.
    pub placement: usize,
    pub verdict: Verdict,
    /// Distinct intervals in the table; 0 when some interval was empty.
    pub interval_keys: usize,
    /// Nodes of the flow network, when the back end built one.
    pub flow_nodes: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PhaseTimes {
    pub sampling: Duration,
    pub distances: Duration,
    pub search: Duration,
    /// Share of `search` spent inside the feasibility back end.
    pub feasibility: Duration,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct SearchStats {
    pub delta: f64,
    pub roots: Vec<usize>,
    pub sample_attempts: usize,
    pub boxsize_range: (usize, usize),
    pub boxsizes_tried: usize,
    pub configurations: usize,
    pub feasibility_tests: usize,
    pub trace: Vec<TraceEntry>,
    /// Linear-scan box size, when binary mode was asked to verify it.
    pub linear_boxsize: Option<usize>,
    pub times: PhaseTimes,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ApproxResult {
    pub algorithm: Algorithm,
    pub layout: Layout,
    pub boxsize: usize,
    pub bandwidth: usize,
    pub stats: SearchStats,
}

/// Result of one feasibility test.
#[derive(Debug, Clone)]
pub struct Probe {
    pub layout: Option<Layout>,
    pub flow_nodes: usize,
}

/// Decides whether a complete interval table admits a box-respecting
/// layout and produces one.
pub trait Feasibility {
    /// Whether tables are updated in place between placements rather than
    /// rebuilt.
    fn incremental(&self) -> bool;

    fn test(&mut self, table: &IntervalTable<'_>) -> Probe;
}

/// Number of distinct intervals in a table without empty entries.
pub fn distinct_intervals(table: &IntervalTable<'_>) -> usize {
    let mut keys: Vec<_> = table.intervals().iter().flatten().copied().collect();
    keys.sort_unstable();
    keys.dedup();
    keys.len()
}

/// Root-set size the algorithm samples for `n` vertices.
pub fn root_count(algorithm: Algorithm, n: usize, params: &SamplingParams) -> Result<usize> {
    let size = match algorithm {
        Algorithm::Baseline => k_size(n, params)?,
        Algorithm::Matching | Algorithm::Flow => kprime_size(n, params)?,
    };
    Ok(size.min(n))
}

pub(crate) fn run<F: Feasibility>(
    g: &Graph,
    opts: &ApproxOptions,
    seed: u64,
    algorithm: Algorithm,
    backend: &mut F,
) -> Result<ApproxResult> {
    let n = g.n();
    if n == 0 {
        return Err(Error::Unsupported("empty graph".into()));
    }
    if n == 1 {
        return Ok(ApproxResult {
            algorithm,
            layout: Layout::identity(1),
            boxsize: 1,
            bandwidth: 0,
            stats: SearchStats::default(),
        });
    }
    if g.min_degree() == 0 {
        return Err(Error::Unsupported("graph has an isolated vertex (density 0)".into()));
    }
    if !g.is_connected() {
        return Err(Error::Unsupported("graph is disconnected".into()));
    }

    let measured = DeltaRule::Fixed(g.density());
    let params = SamplingParams {
        alpha: opts.alpha,
        c: opts.c,
        delta: opts.delta.unwrap_or(measured),
    };
    let delta = params.validate(n)?;
    let size = root_count(algorithm, n, &params)?;
    let radius = match algorithm {
        Algorithm::Baseline => HopRadius::One,
        Algorithm::Matching | Algorithm::Flow => HopRadius::Two,
    };
    let rule = WindowRule {
        near_hops: radius.hops(),
        extended: opts.three_hop,
    };

    let mut stats = SearchStats {
        delta,
        ..SearchStats::default()
    };
    let t = Instant::now();
    let (rs, attempts) = sample_certified(
        g,
        size,
        rng::substream(seed, rng::SAMPLING),
        radius,
        opts.max_tries,
    )?;
    stats.times.sampling = t.elapsed();
    stats.roots = rs.roots().to_vec();
    stats.sample_attempts = attempts;

    let t = Instant::now();
    let records = DominatorRecords::new(g, &rs, rule)?;
    stats.times.distances = t.elapsed();

    let (lo, hi) = if opts.narrow_range {
        (generator_target_degree(n, delta).max(1), n / 2)
    } else {
        (degree_lower_bound(g).max(1), n)
    };
    stats.boxsize_range = (lo, hi);

    let t = Instant::now();
    let mut driver = Driver {
        records: &records,
        opts,
        backend,
        stats: &mut stats,
    };
    let found = match opts.search {
        BoxsizeSearch::Linear => driver.linear(lo, hi)?,
        BoxsizeSearch::Binary => {
            let found = driver.binary(lo, hi)?;
            if opts.verify_monotone {
                let linear = driver.linear(lo, hi)?;
                driver.stats.linear_boxsize = linear.as_ref().map(|(s, _)| *s);
            }
            found
        }
    };
    stats.times.search = t.elapsed();

    let (boxsize, layout) = found.ok_or(Error::NoFeasibleConfiguration { lo, hi })?;
    let bandwidth = layout_bandwidth(g, &layout)?;
    Ok(ApproxResult {
        algorithm,
        layout,
        boxsize,
        bandwidth,
        stats,
    })
}

struct Driver<'a, 'r, F> {
    records: &'r DominatorRecords,
    opts: &'a ApproxOptions,
    backend: &'a mut F,
    stats: &'a mut SearchStats,
}

impl<F: Feasibility> Driver<'_, '_, F> {
    fn linear(&mut self, lo: usize, hi: usize) -> Result<Option<(usize, Layout)>> {
        for boxsize in lo..=hi {
            if let Some(layout) = self.try_boxsize(boxsize)? {
                return Ok(Some((boxsize, layout)));
            }
        }
        Ok(None)
    }

    fn binary(&mut self, lo: usize, hi: usize) -> Result<Option<(usize, Layout)>> {
        let (mut a, mut b) = (lo, hi);
        let mut best = None;
        while a <= b {
            let mid = a + (b - a) / 2;
            match self.try_boxsize(mid)? {
                Some(layout) => {
                    best = Some((mid, layout));
                    if mid == lo {
                        break;
                    }
                    b = mid - 1;
                }
                None => a = mid + 1,
            }
        }
        Ok(best)
    }

    /// First feasible placement at `boxsize`, in lexicographic order.
    fn try_boxsize(&mut self, boxsize: usize) -> Result<Option<Layout>> {
        let n = self.records.n();
        let cfg: BoxConfig = make_box_config(n, boxsize)?;
        self.stats.boxsizes_tried += 1;
        let mut table: Option<IntervalTable<'_>> = None;
        let placements = Placements::new(self.records.roots().len(), cfg);
        for (index, placement) in placements.enumerate() {
            self.stats.configurations += 1;
            match table.as_mut() {
                Some(t) if self.backend.incremental() => t.update(&placement)?,
                _ => table = Some(build_intervals(self.records, &placement, &cfg)?),
            }
            let t = table.as_ref().expect("table built above");
            let mut entry = TraceEntry {
                boxsize,
                boxes: cfg.boxes(),
                placement: index,
                verdict: Verdict::EmptyInterval,
                interval_keys: 0,
                flow_nodes: 0,
            };
            let mut found = None;
            if !t.has_empty() {
                self.stats.feasibility_tests += 1;
                let clock = Instant::now();
                let probe = self.backend.test(t);
                self.stats.times.feasibility += clock.elapsed();
                entry.flow_nodes = probe.flow_nodes;
                entry.verdict = if probe.layout.is_some() {
                    Verdict::Feasible
                } else {
                    Verdict::Infeasible
                };
                if self.opts.record_trace {
                    entry.interval_keys = distinct_intervals(t);
                }
                found = probe.layout;
            }
            if self.opts.record_trace {
                self.stats.trace.push(entry);
            }
            if found.is_some() {
                return Ok(found);
            }
        }
        Ok(None)
    }
}
