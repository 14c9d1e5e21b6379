//! Box model shared by both approximation pipelines: box configurations,
//! enumeration of root placements, and the per-vertex interval table.
//!
//! Boxes are indexed from 0. Positions are the layout labels `1..=n`; box
//! `k` holds positions `k * boxsize + 1 ..= min((k + 1) * boxsize, n)`.

use std::ops::Range;

use crate::domset::RootSet;
use crate::error::{Error, Result};
use crate::graph::{bfs_from_set, Graph};

/// Partition of positions `1..=n` into consecutive boxes of `boxsize`
/// positions; the last box takes the remainder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct BoxConfig {
    n: usize,
    boxsize: usize,
    boxes: usize,
}

pub fn make_box_config(n: usize, boxsize: usize) -> Result<BoxConfig> {
    if boxsize == 0 || boxsize > n {
        return Err(Error::BoxSize { boxsize, n });
    }
    Ok(BoxConfig {
        n,
        boxsize,
        boxes: n.div_ceil(boxsize),
    })
}

impl BoxConfig {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn boxsize(&self) -> usize {
        self.boxsize
    }

    /// Number of boxes, `ceil(n / boxsize)`.
    pub fn boxes(&self) -> usize {
        self.boxes
    }

    pub fn capacity(&self, k: usize) -> usize {
        let r = self.slots(k);
        r.end - r.start
    }

    pub fn capacities(&self) -> Vec<usize> {
        (0..self.boxes).map(|k| self.capacity(k)).collect()
    }

    /// 0-based slots of box `k`; slot `s` carries label `s + 1`.
    pub fn slots(&self, k: usize) -> Range<usize> {
        let start = k * self.boxsize;
        start..((k + 1) * self.boxsize).min(self.n)
    }

    /// Box holding label `position` (1-based).
    pub fn box_of_position(&self, position: usize) -> usize {
        (position - 1) / self.boxsize
    }
}

/// Box assigned to each root, indexed like [`RootSet::roots`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootPlacement {
    box_of: Vec<usize>,
}

impl RootPlacement {
    pub fn new(box_of: Vec<usize>) -> Self {
        Self { box_of }
    }

    pub fn boxes(&self) -> &[usize] {
        &self.box_of
    }

    pub fn len(&self) -> usize {
        self.box_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.box_of.is_empty()
    }

    /// Whether the placement fits `cfg` for `roots` roots.
    pub fn fits(&self, roots: usize, cfg: &BoxConfig) -> bool {
        if self.box_of.len() != roots {
            return false;
        }
        let mut load = vec![0usize; cfg.boxes()];
        for &k in &self.box_of {
            if k >= cfg.boxes() {
                return false;
            }
            load[k] += 1;
        }
        load.iter().enumerate().all(|(k, &l)| l <= cfg.capacity(k))
    }
}

/// Every capacity-respecting placement of `rs`'s roots into `cfg`'s boxes,
/// in lexicographic order over the sorted root list.
pub fn enumerate_placements(rs: &RootSet, cfg: &BoxConfig) -> Placements {
    Placements::new(rs.len(), *cfg)
}

/// Lazy lexicographic placement stream; see [`enumerate_placements`].
#[derive(Debug, Clone)]
pub struct Placements {
    cfg: BoxConfig,
    current: Vec<usize>,
    load: Vec<usize>,
    state: StreamState,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum StreamState {
    Fresh,
    Running,
    Done,
}

impl Placements {
    pub fn new(roots: usize, cfg: BoxConfig) -> Self {
        Self {
            cfg,
            current: vec![0; roots],
            load: vec![0; cfg.boxes()],
            state: if roots > cfg.n() {
                StreamState::Done
            } else {
                StreamState::Fresh
            },
        }
    }

    fn first_open(&self, from: usize) -> Option<usize> {
        (from..self.cfg.boxes()).find(|&k| self.load[k] < self.cfg.capacity(k))
    }

    /// Fills slots `from..` with the smallest boxes that still have room.
    /// Always succeeds because total capacity is `n >= roots`.
    fn fill_from(&mut self, from: usize) {
        for i in from..self.current.len() {
            let k = self.first_open(0).expect("capacity covers every root");
            self.current[i] = k;
            self.load[k] += 1;
        }
    }

    fn advance(&mut self) -> bool {
        for i in (0..self.current.len()).rev() {
            let k = self.current[i];
            self.load[k] -= 1;
            if let Some(next) = self.first_open(k + 1) {
                self.current[i] = next;
                self.load[next] += 1;
                self.fill_from(i + 1);
                return true;
            }
        }
        false
    }
}

impl Iterator for Placements {
    type Item = RootPlacement;

    fn next(&mut self) -> Option<RootPlacement> {
        match self.state {
            StreamState::Done => return None,
            StreamState::Fresh => {
                self.fill_from(0);
                self.state = StreamState::Running;
            }
            StreamState::Running => {
                if !self.advance() {
                    self.state = StreamState::Done;
                    return None;
                }
            }
        }
        if self.current.is_empty() {
            // The single empty placement.
            self.state = StreamState::Done;
        }
        Some(RootPlacement::new(self.current.clone()))
    }
}

/// Inclusive range of admissible boxes, `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub fn new(lo: usize, hi: usize) -> Self {
        debug_assert!(lo <= hi);
        Self { lo, hi }
    }

    pub fn contains(&self, k: usize) -> bool {
        self.lo <= k && k <= self.hi
    }

    /// Number of boxes covered.
    pub fn width(&self) -> usize {
        self.hi - self.lo + 1
    }
}

/// Which roots constrain a vertex and how far the constraint reaches.
///
/// A root within `near_hops` of `v` confines `v` to at most `near_hops`
/// boxes from the root's box. With the extended window on, a root at exactly
/// `near_hops + 1` hops confines `v` to `near_hops + 1` boxes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct WindowRule {
    pub near_hops: usize,
    pub extended: bool,
}

impl WindowRule {
    /// 2-hop windows tightened by 3-hop roots.
    pub const TIGHT: Self = Self {
        near_hops: 2,
        extended: true,
    };
    /// 2-hop windows only.
    pub const PLAIN: Self = Self {
        near_hops: 2,
        extended: false,
    };

    pub fn far_hops(&self) -> Option<usize> {
        self.extended.then_some(self.near_hops + 1)
    }
}

/// Per-vertex dominator records of one certified root set. Computed once
/// with one BFS per root and shared by every placement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominatorRecords {
    rule: WindowRule,
    roots: Vec<usize>,
    root_index: Vec<Option<usize>>,
    near: Vec<Vec<usize>>,
    far: Vec<Vec<usize>>,
    dependents: Vec<Vec<usize>>,
}

impl DominatorRecords {
    pub fn new(g: &Graph, rs: &RootSet, rule: WindowRule) -> Result<Self> {
        if !rs.is_certified() || rs.hop_radius().hops() > rule.near_hops {
            return Err(Error::Uncertified);
        }
        let n = g.n();
        let mut root_index = vec![None; n];
        let mut near = vec![Vec::new(); n];
        let mut far = vec![Vec::new(); n];
        let mut dependents = vec![Vec::new(); rs.len()];
        for (i, &r) in rs.roots().iter().enumerate() {
            root_index[r] = Some(i);
            let dist = bfs_from_set(g, &[r]);
            for v in 0..n {
                match dist.get(v) {
                    Some(d) if d <= rule.near_hops => near[v].push(i),
                    Some(d) if Some(d) == rule.far_hops() => far[v].push(i),
                    _ => continue,
                }
                dependents[i].push(v);
            }
        }
        Ok(Self {
            rule,
            roots: rs.roots().to_vec(),
            root_index,
            near,
            far,
            dependents,
        })
    }

    pub fn n(&self) -> usize {
        self.root_index.len()
    }

    pub fn rule(&self) -> WindowRule {
        self.rule
    }

    pub fn roots(&self) -> &[usize] {
        &self.roots
    }

    /// Index of `v` in the root list, if it is a root.
    pub fn root_index(&self, v: usize) -> Option<usize> {
        self.root_index[v]
    }

    /// Root indices within `near_hops` of `v`, ascending.
    pub fn near(&self, v: usize) -> &[usize] {
        &self.near[v]
    }

    /// Root indices at exactly `near_hops + 1` hops of `v`, ascending.
    pub fn far(&self, v: usize) -> &[usize] {
        &self.far[v]
    }

    /// The recorded root of `v`: itself for roots, otherwise its first near
    /// root.
    pub fn representative(&self, v: usize) -> Option<usize> {
        self.root_index[v].or_else(|| self.near[v].first().copied())
    }

    fn interval_of(&self, v: usize, placed: &[usize], boxes: usize) -> Option<Interval> {
        let mut lo = 0usize;
        let mut hi = boxes - 1;
        let windows = self.near[v]
            .iter()
            .map(|&i| (i, self.rule.near_hops))
            .chain(self.far[v].iter().map(|&i| (i, self.rule.near_hops + 1)));
        for (i, w) in windows {
            let k = placed[i];
            lo = lo.max(k.saturating_sub(w));
            hi = hi.min(k + w);
        }
        match self.root_index[v] {
            Some(i) => {
                let own = placed[i];
                (lo <= own && own <= hi).then(|| Interval::new(own, own))
            }
            None => (lo <= hi).then(|| Interval::new(lo, hi)),
        }
    }
}

/// Admissible box interval of every vertex under one root placement.
/// `None` marks an empty intersection.
#[derive(Debug, Clone)]
pub struct IntervalTable<'r> {
    records: &'r DominatorRecords,
    cfg: BoxConfig,
    placement: RootPlacement,
    intervals: Vec<Option<Interval>>,
    empty: usize,
}

impl PartialEq for IntervalTable<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.cfg == other.cfg && self.placement == other.placement && self.intervals == other.intervals
    }
}

impl Eq for IntervalTable<'_> {}

/// Builds the interval table of `rp` from scratch.
///
/// Each vertex's interval is the intersection, clipped to the box range, of
/// the windows around the boxes of its recorded roots. A root keeps only its
/// own box, and becomes empty if that box violates another root's window.
pub fn build_intervals<'r>(
    records: &'r DominatorRecords,
    rp: &RootPlacement,
    cfg: &BoxConfig,
) -> Result<IntervalTable<'r>> {
    if records.n() != cfg.n() || !rp.fits(records.roots().len(), cfg) {
        return Err(Error::PlacementMismatch);
    }
    let intervals: Vec<_> = (0..records.n())
        .map(|v| records.interval_of(v, rp.boxes(), cfg.boxes()))
        .collect();
    let empty = intervals.iter().filter(|i| i.is_none()).count();
    Ok(IntervalTable {
        records,
        cfg: *cfg,
        placement: rp.clone(),
        intervals,
        empty,
    })
}

/// Rebuilds `table` for `new_rp` from its stored dominator records,
/// touching only vertices constrained by a root that moved.
pub fn update_intervals<'r>(
    table: &IntervalTable<'r>,
    old_rp: &RootPlacement,
    new_rp: &RootPlacement,
) -> Result<IntervalTable<'r>> {
    if *old_rp != table.placement {
        return Err(Error::PlacementMismatch);
    }
    let mut next = table.clone();
    next.update(new_rp)?;
    Ok(next)
}

impl<'r> IntervalTable<'r> {
    /// In-place form of [`update_intervals`].
    pub fn update(&mut self, new_rp: &RootPlacement) -> Result<()> {
        if !new_rp.fits(self.records.roots().len(), &self.cfg) {
            return Err(Error::PlacementMismatch);
        }
        let records = self.records;
        let n = records.n();
        let mut stale = vec![false; n];
        for (i, (&a, &b)) in self.placement.boxes().iter().zip(new_rp.boxes()).enumerate() {
            if a != b {
                for &v in &records.dependents[i] {
                    stale[v] = true;
                }
            }
        }
        for v in (0..n).filter(|&v| stale[v]) {
            let fresh = records.interval_of(v, new_rp.boxes(), self.cfg.boxes());
            match (self.intervals[v].is_none(), fresh.is_none()) {
                (true, false) => self.empty -= 1,
                (false, true) => self.empty += 1,
                _ => {}
            }
            self.intervals[v] = fresh;
        }
        self.placement = new_rp.clone();
        Ok(())
    }

    pub fn records(&self) -> &'r DominatorRecords {
        self.records
    }

    pub fn config(&self) -> &BoxConfig {
        &self.cfg
    }

    pub fn placement(&self) -> &RootPlacement {
        &self.placement
    }

    pub fn get(&self, v: usize) -> Option<Interval> {
        self.intervals[v]
    }

    pub fn intervals(&self) -> &[Option<Interval>] {
        &self.intervals
    }

    pub fn has_empty(&self) -> bool {
        self.empty > 0
    }

    /// Box of the recorded root of `v` under this placement.
    pub fn representative_box(&self, v: usize) -> Option<usize> {
        self.records.representative(v).map(|i| self.placement.boxes()[i])
    }
}
