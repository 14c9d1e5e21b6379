//! Line-oriented run reports.

use std::fmt::Write as _;
use std::time::Duration;

use crate::search::{ApproxResult, PhaseTimes};

#[derive(Debug, Clone, PartialEq)]
pub struct RunReport {
    pub algorithm: String,
    pub seed: u64,
    pub n: usize,
    pub delta: f64,
    pub roots: usize,
    pub sample_attempts: usize,
    pub boxsize: usize,
    pub bandwidth: usize,
    pub exact: Option<usize>,
    pub configurations: usize,
    pub feasibility_tests: usize,
    pub linear_boxsize: Option<usize>,
    pub times: PhaseTimes,
}

impl RunReport {
    pub fn from_result(result: &ApproxResult, seed: u64, exact: Option<usize>) -> Self {
        Self {
            algorithm: result.algorithm.id().to_string(),
            seed,
            n: result.layout.len(),
            delta: result.stats.delta,
            roots: result.stats.roots.len(),
            sample_attempts: result.stats.sample_attempts,
            boxsize: result.boxsize,
            bandwidth: result.bandwidth,
            exact,
            configurations: result.stats.configurations,
            feasibility_tests: result.stats.feasibility_tests,
            linear_boxsize: result.stats.linear_boxsize,
            times: result.stats.times,
        }
    }

    /// `bandwidth / exact`, when the exact value is known and positive.
    pub fn ratio(&self) -> Option<f64> {
        self.exact
            .filter(|&e| e > 0)
            .map(|e| self.bandwidth as f64 / e as f64)
    }

    /// One `key: value` line per field. Wall times vary between runs, so
    /// they are only included on request.
    pub fn render(&self, with_times: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "algorithm: {}", self.algorithm);
        let _ = writeln!(out, "seed: {}", self.seed);
        let _ = writeln!(out, "n: {}", self.n);
        let _ = writeln!(out, "delta: {:.6}", self.delta);
        let _ = writeln!(out, "roots: {}", self.roots);
        let _ = writeln!(out, "sample_attempts: {}", self.sample_attempts);
        let _ = writeln!(out, "boxsize: {}", self.boxsize);
        let _ = writeln!(out, "bandwidth: {}", self.bandwidth);
        if let Some(e) = self.exact {
            let _ = writeln!(out, "exact: {e}");
        }
        if let Some(r) = self.ratio() {
            let _ = writeln!(out, "ratio: {r:.4}");
        }
        let _ = writeln!(out, "configurations: {}", self.configurations);
        let _ = writeln!(out, "feasibility_tests: {}", self.feasibility_tests);
        if let Some(s) = self.linear_boxsize {
            let _ = writeln!(out, "linear_boxsize: {s}");
        }
        if with_times {
            let t = &self.times;
            let _ = writeln!(out, "time_sampling_ms: {:.3}", ms(t.sampling));
            let _ = writeln!(out, "time_distances_ms: {:.3}", ms(t.distances));
            let _ = writeln!(out, "time_search_ms: {:.3}", ms(t.search));
            let _ = writeln!(out, "time_feasibility_ms: {:.3}", ms(t.feasibility));
        }
        out
    }
}

pub(crate) fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}
