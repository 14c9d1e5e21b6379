//! Sample sizes for random dominating sets and a Las Vegas sampler that
//! certifies its draws.

use rand::seq::index;

use crate::error::{Error, Result};
use crate::graph::{bfs_from_set, Graph};
use crate::rng;

/// Default bound on the expected number of undominated vertices.
pub const DEFAULT_ALPHA: f64 = 0.5;
pub const DEFAULT_C: f64 = 1.0;
pub const DEFAULT_MAX_TRIES: usize = 50;

// Absorbs rounding in the log ratio so exact integers are not bumped up.
const CEIL_SLACK: f64 = 1e-9;

/// Density assumed by the sample-size formulas.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DeltaRule {
    Fixed(f64),
    /// `scale * (ln ln n)^2 / ln n`, the sparsest regime in which the root
    /// set stays `O(log log n)`.
    LogLogRegime { scale: f64 },
}

impl DeltaRule {
    pub fn at(&self, n: usize) -> f64 {
        match *self {
            DeltaRule::Fixed(d) => d,
            DeltaRule::LogLogRegime { scale } => {
                let ln = (n as f64).ln();
                scale * ln.ln().powi(2) / ln
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SamplingParams {
    pub alpha: f64,
    pub c: f64,
    pub delta: DeltaRule,
}

impl SamplingParams {
    pub fn new(alpha: f64, c: f64, delta: f64) -> Self {
        Self {
            alpha,
            c,
            delta: DeltaRule::Fixed(delta),
        }
    }

    /// Defaults for `alpha` and `c` with the given density.
    pub fn with_delta(delta: f64) -> Self {
        Self::new(DEFAULT_ALPHA, DEFAULT_C, delta)
    }

    /// Checks the parameter ranges and returns the density in effect at `n`.
    pub fn validate(&self, n: usize) -> Result<f64> {
        if !(self.alpha > 0.0 && self.alpha < 1.0) {
            return Err(Error::InvalidParams(format!("alpha = {} not in (0, 1)", self.alpha)));
        }
        if !(self.c >= 1.0 && self.c.is_finite()) {
            return Err(Error::InvalidParams(format!("c = {} below 1", self.c)));
        }
        let delta = self.delta.at(n);
        if !(delta > 0.0 && delta < 1.0) {
            return Err(Error::InvalidParams(format!("delta = {delta} not in (0, 1)")));
        }
        if n < 2 {
            return Err(Error::InvalidParams(format!("n = {n} below 2")));
        }
        Ok(delta)
    }
}

fn ceil_at_least_one(x: f64) -> usize {
    ((x - CEIL_SLACK).ceil() as usize).max(1)
}

/// Size of a random set that 1-dominates with probability `>= 1 - alpha`:
/// `ceil(log(n / alpha) / log(1 / (1 - delta)))`.
pub fn k_size(n: usize, params: &SamplingParams) -> Result<usize> {
    let delta = params.validate(n)?;
    let base = (1.0 / (1.0 - delta)).ln();
    Ok(ceil_at_least_one((n as f64 / params.alpha).ln() / base))
}

/// Size of a random set that dominates a `k_size` set, and hence
/// 2-dominates the graph: `ceil(log(k c / alpha) / log(1 / (1 - delta)))`.
pub fn kprime_size(n: usize, params: &SamplingParams) -> Result<usize> {
    let k = k_size(n, params)?;
    let delta = params.delta.at(n);
    let base = (1.0 / (1.0 - delta)).ln();
    Ok(ceil_at_least_one((k as f64 * params.c / params.alpha).ln() / base))
}

/// Radius of domination a root set is asked to achieve.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HopRadius {
    One,
    Two,
}

impl HopRadius {
    pub fn hops(self) -> usize {
        match self {
            HopRadius::One => 1,
            HopRadius::Two => 2,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootSet {
    roots: Vec<usize>,
    hop_radius: HopRadius,
    certified: bool,
}

impl RootSet {
    /// An uncertified root set; ids are sorted and deduplicated.
    pub fn new(mut roots: Vec<usize>, hop_radius: HopRadius) -> Self {
        roots.sort_unstable();
        roots.dedup();
        Self {
            roots,
            hop_radius,
            certified: false,
        }
    }

    /// Sorted root ids.
    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    pub fn hop_radius(&self) -> HopRadius {
        self.hop_radius
    }

    pub fn is_certified(&self) -> bool {
        self.certified
    }

    /// Marks the set certified if it dominates `g` at its radius.
    pub fn certify(mut self, g: &Graph) -> std::result::Result<Self, Self> {
        if is_dominating(g, &self) {
            self.certified = true;
            Ok(self)
        } else {
            Err(self)
        }
    }
}

/// Uniform random subset of `size` vertices, uncertified.
pub fn sample_rootset(g: &Graph, size: usize, seed: u64, hop_radius: HopRadius) -> Result<RootSet> {
    let n = g.n();
    if size == 0 || size > n {
        return Err(Error::SampleSize { size, n });
    }
    let mut rng = rng::rng(seed);
    let picked = index::sample(&mut rng, n, size).into_vec();
    Ok(RootSet::new(picked, hop_radius))
}

/// Whether every vertex lies within the set's hop radius of some root.
pub fn is_dominating(g: &Graph, rs: &RootSet) -> bool {
    if rs.roots.is_empty() {
        return g.n() == 0;
    }
    bfs_from_set(g, &rs.roots)
        .eccentricity()
        .is_some_and(|e| e <= rs.hop_radius.hops())
}

/// Draws root sets along the seed sequence of `seed` until one dominates.
pub fn sample_certified(
    g: &Graph,
    size: usize,
    seed: u64,
    hop_radius: HopRadius,
    max_tries: usize,
) -> Result<(RootSet, usize)> {
    for attempt in 0..max_tries {
        let rs = sample_rootset(g, size, rng::sequence(seed, attempt as u64), hop_radius)?;
        if let Ok(rs) = rs.certify(g) {
            return Ok((rs, attempt + 1));
        }
    }
    Err(Error::CertificationFailed { attempts: max_tries })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::gen_dense_random;

    #[test]
    fn k_for_half_density() {
        // log2(2048) / log2(2) = 11 exactly.
        let p = SamplingParams::new(0.5, 1.0, 0.5);
        assert_eq!(k_size(1024, &p).unwrap(), 11);
        // ceil(log2(22)) = 5.
        assert_eq!(kprime_size(1024, &p).unwrap(), 5);
    }

    #[test]
    fn tiny_values_clamp_to_one() {
        let p = SamplingParams::new(0.999, 1.0, 0.999);
        assert_eq!(k_size(2, &p).unwrap(), 1);
        assert_eq!(kprime_size(2, &p).unwrap(), 1);
    }

    #[test]
    fn kprime_reduces_when_k_is_one() {
        let p = SamplingParams::new(0.5, 1.0, 0.99);
        assert_eq!(k_size(2, &p).unwrap(), 1);
        let expect = ((2f64).ln() / (1.0f64 / 0.01).ln()).ceil() as usize;
        assert_eq!(kprime_size(2, &p).unwrap(), expect);
    }

    #[test]
    fn rejects_invalid_params() {
        assert!(k_size(10, &SamplingParams::new(0.5, 1.0, 1.0)).is_err());
        assert!(k_size(10, &SamplingParams::new(0.5, 1.0, 0.0)).is_err());
        assert!(k_size(10, &SamplingParams::new(1.0, 1.0, 0.5)).is_err());
        assert!(kprime_size(10, &SamplingParams::new(0.5, 0.5, 0.5)).is_err());
    }

    #[test]
    fn sampling_edges() {
        let g = Graph::complete(6);
        let all = sample_rootset(&g, 6, 3, HopRadius::One).unwrap();
        assert_eq!(all.roots(), &[0, 1, 2, 3, 4, 5]);
        assert!(sample_rootset(&g, 7, 3, HopRadius::One).is_err());
        let one = sample_rootset(&g, 1, 3, HopRadius::One).unwrap();
        assert!(is_dominating(&g, &one));
        assert_eq!(
            sample_rootset(&g, 3, 42, HopRadius::Two).unwrap(),
            sample_rootset(&g, 3, 42, HopRadius::Two).unwrap()
        );
    }

    #[test]
    fn domination_examples() {
        let p5 = Graph::path(5);
        assert!(!is_dominating(&p5, &RootSet::new(vec![0], HopRadius::Two)));
        assert!(is_dominating(&p5, &RootSet::new((0..5).collect(), HopRadius::One)));
        assert!(is_dominating(&Graph::star(4), &RootSet::new(vec![0], HopRadius::One)));
    }

    #[test]
    fn certified_sampler() {
        let (rs, tries) = sample_certified(&Graph::complete(8), 1, 5, HopRadius::One, 50).unwrap();
        assert_eq!(tries, 1);
        assert!(rs.is_certified());
        let err = sample_certified(&Graph::empty(6), 3, 5, HopRadius::Two, 50).unwrap_err();
        assert_eq!(err, Error::CertificationFailed { attempts: 50 });
    }

    #[test]
    fn dense_graph_certifies_at_kprime() {
        let g = gen_dense_random(60, 0.4, 1).unwrap();
        let size = kprime_size(60, &SamplingParams::with_delta(0.4)).unwrap();
        let (rs, _) = sample_certified(&g, size, 11, HopRadius::Two, DEFAULT_MAX_TRIES).unwrap();
        assert_eq!(rs.len(), size);
    }

    #[test]
    fn loglog_regime_delta() {
        let rule = DeltaRule::LogLogRegime { scale: 1.0 };
        let n = 1_000_000_000usize;
        let ln = (n as f64).ln();
        assert!((rule.at(n) - ln.ln().powi(2) / ln).abs() < 1e-12);
    }
}
