//! Compressed feasibility test: vertices sharing an interval are merged into
//! one source arc, so the network has at most `2 + 6b` nodes for `b` boxes
//! whatever the number of vertices.

use std::collections::{BTreeMap, VecDeque};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::layout::{BoxConfig, Interval, IntervalTable};
use crate::oracle::Layout;
use crate::search::{self, Algorithm, ApproxOptions, ApproxResult, Feasibility, Probe};

/// Number of vertices per distinct interval.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntervalCounts {
    counts: BTreeMap<Interval, usize>,
}

impl IntervalCounts {
    pub fn from_pairs(pairs: &[(Interval, usize)]) -> Self {
        let mut counts = BTreeMap::new();
        for &(iv, c) in pairs {
            *counts.entry(iv).or_insert(0) += c;
        }
        Self { counts }
    }

    pub fn get(&self, iv: Interval) -> usize {
        self.counts.get(&iv).copied().unwrap_or(0)
    }

    /// Distinct intervals, ascending.
    pub fn keys(&self) -> impl Iterator<Item = Interval> + '_ {
        self.counts.keys().copied()
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total(&self) -> usize {
        self.counts.values().sum()
    }
}

/// Histogram of the table's intervals, or `None` if any interval is empty
/// (the configuration is infeasible).
pub fn count_intervals(table: &IntervalTable<'_>) -> Option<IntervalCounts> {
    let mut counts = BTreeMap::new();
    for iv in table.intervals() {
        *counts.entry((*iv)?).or_insert(0) += 1;
    }
    Some(IntervalCounts { counts })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Arc {
    pub from: usize,
    pub to: usize,
    pub capacity: usize,
}

/// Source, one node per interval class, one node per box, sink.
///
/// Node ids: the source is 0, interval `i` (in key order) is `1 + i`, box
/// `k` is `1 + keys + k`, and the sink comes last. Arcs are listed source
/// arcs first, then interval-to-box arcs by interval and box, then box-to-sink
/// arcs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowInstance {
    keys: Vec<Interval>,
    boxes: usize,
    arcs: Vec<Arc>,
}

impl FlowInstance {
    pub fn source(&self) -> usize {
        0
    }

    pub fn sink(&self) -> usize {
        self.node_count() - 1
    }

    pub fn node_count(&self) -> usize {
        2 + self.keys.len() + self.boxes
    }

    pub fn interval_node(&self, i: usize) -> usize {
        1 + i
    }

    pub fn box_node(&self, k: usize) -> usize {
        1 + self.keys.len() + k
    }

    pub fn keys(&self) -> &[Interval] {
        &self.keys
    }

    pub fn boxes(&self) -> usize {
        self.boxes
    }

    pub fn arcs(&self) -> &[Arc] {
        &self.arcs
    }

    /// Index of the first interval-to-box arc.
    fn middle_start(&self) -> usize {
        self.keys.len()
    }
}

/// Builds the network for `counts`. Interior arcs get capacity `n`, which
/// no flow can exceed; box `k`'s sink arc carries its positional capacity.
pub fn build_flow_instance(counts: &IntervalCounts, cfg: &BoxConfig) -> Result<FlowInstance> {
    let b = cfg.boxes();
    let keys: Vec<Interval> = counts.keys().collect();
    if let Some(bad) = keys.iter().find(|iv| iv.hi >= b || iv.lo > iv.hi) {
        return Err(Error::IntervalOutOfRange {
            lo: bad.lo,
            hi: bad.hi,
            boxes: b,
        });
    }
    let box_base = 1 + keys.len();
    let sink = box_base + b;
    let mut arcs = Vec::with_capacity(keys.len() * 6 + b);
    for (i, iv) in keys.iter().enumerate() {
        arcs.push(Arc {
            from: 0,
            to: 1 + i,
            capacity: counts.get(*iv),
        });
    }
    for (i, iv) in keys.iter().enumerate() {
        for k in iv.lo..=iv.hi {
            arcs.push(Arc {
                from: 1 + i,
                to: box_base + k,
                capacity: cfg.n(),
            });
        }
    }
    for k in 0..b {
        arcs.push(Arc {
            from: box_base + k,
            to: sink,
            capacity: cfg.capacity(k),
        });
    }
    Ok(FlowInstance { keys, boxes: b, arcs })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowResult {
    pub value: usize,
    /// Flow on each arc, indexed like [`FlowInstance::arcs`].
    pub arc_flow: Vec<usize>,
}

impl FlowResult {
    /// Capacity and conservation check against `inst`.
    pub fn is_valid_for(&self, inst: &FlowInstance) -> bool {
        if self.arc_flow.len() != inst.arcs.len() {
            return false;
        }
        let mut balance = vec![0i64; inst.node_count()];
        for (a, &f) in inst.arcs.iter().zip(&self.arc_flow) {
            if f > a.capacity {
                return false;
            }
            balance[a.from] -= f as i64;
            balance[a.to] += f as i64;
        }
        let (s, t) = (inst.source(), inst.sink());
        balance
            .iter()
            .enumerate()
            .all(|(v, &b)| v == s || v == t || b == 0)
            && balance[t] == self.value as i64
            && balance[s] == -(self.value as i64)
    }
}

#[derive(Debug, Clone)]
struct Residual {
    to: usize,
    rev: usize,
    cap: usize,
}

/// Dinic's blocking-flow maximum flow.
pub fn max_flow(inst: &FlowInstance) -> FlowResult {
    let nodes = inst.node_count();
    let mut graph: Vec<Vec<Residual>> = vec![Vec::new(); nodes];
    let mut handle = Vec::with_capacity(inst.arcs.len());
    for a in &inst.arcs {
        let fwd = graph[a.from].len();
        let bwd = graph[a.to].len();
        graph[a.from].push(Residual {
            to: a.to,
            rev: bwd,
            cap: a.capacity,
        });
        graph[a.to].push(Residual {
            to: a.from,
            rev: fwd,
            cap: 0,
        });
        handle.push((a.from, fwd));
    }

    let (s, t) = (inst.source(), inst.sink());
    let mut value = 0;
    let mut level = vec![usize::MAX; nodes];
    let mut next = vec![0usize; nodes];
    let mut queue = VecDeque::with_capacity(nodes);
    loop {
        level.iter_mut().for_each(|l| *l = usize::MAX);
        level[s] = 0;
        queue.clear();
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for e in &graph[u] {
                if e.cap > 0 && level[e.to] == usize::MAX {
                    level[e.to] = level[u] + 1;
                    queue.push_back(e.to);
                }
            }
        }
        if level[t] == usize::MAX {
            break;
        }
        next.iter_mut().for_each(|i| *i = 0);
        loop {
            let pushed = blocking_push(&mut graph, &level, &mut next, s, t, usize::MAX);
            if pushed == 0 {
                break;
            }
            value += pushed;
        }
    }

    let arc_flow = inst
        .arcs
        .iter()
        .zip(&handle)
        .map(|(a, &(u, i))| a.capacity - graph[u][i].cap)
        .collect();
    FlowResult { value, arc_flow }
}

fn blocking_push(
    graph: &mut [Vec<Residual>],
    level: &[usize],
    next: &mut [usize],
    u: usize,
    t: usize,
    limit: usize,
) -> usize {
    if u == t {
        return limit;
    }
    while next[u] < graph[u].len() {
        let i = next[u];
        let (to, cap) = (graph[u][i].to, graph[u][i].cap);
        if cap > 0 && level[to] == level[u] + 1 {
            let got = blocking_push(graph, level, next, to, t, limit.min(cap));
            if got > 0 {
                graph[u][i].cap -= got;
                let rev = graph[u][i].rev;
                graph[to][rev].cap += got;
                return got;
            }
        }
        next[u] += 1;
    }
    0
}

/// Turns a saturating flow into a layout. For each interval class the
/// lowest-id vertices go to the lowest boxes its flow reaches; within a box,
/// labels follow ascending vertex id.
pub fn flow_to_layout(res: &FlowResult, inst: &FlowInstance, table: &IntervalTable<'_>) -> Result<Layout> {
    let cfg = table.config();
    let n = cfg.n();
    if res.value < n {
        return Err(Error::NotSaturating { value: res.value, n });
    }
    let mut members: Vec<Vec<usize>> = vec![Vec::new(); inst.keys.len()];
    for (v, iv) in table.intervals().iter().enumerate() {
        let iv = iv.ok_or(Error::NotSaturating { value: 0, n })?;
        let i = inst
            .keys
            .binary_search(&iv)
            .map_err(|_| Error::PlacementMismatch)?;
        members[i].push(v);
    }

    let mut in_box: Vec<Vec<usize>> = vec![Vec::new(); cfg.boxes()];
    let mut taken = vec![0usize; inst.keys.len()];
    let box_base = inst.box_node(0);
    for (a, &f) in inst.arcs[inst.middle_start()..].iter().zip(&res.arc_flow[inst.middle_start()..]) {
        if a.to == inst.sink() {
            break;
        }
        let i = a.from - 1;
        let k = a.to - box_base;
        let start = taken[i];
        in_box[k].extend_from_slice(&members[i][start..start + f]);
        taken[i] += f;
    }

    let mut labels = vec![0usize; n];
    for (k, vs) in in_box.iter_mut().enumerate() {
        let slots = cfg.slots(k);
        if vs.len() != slots.len() {
            return Err(Error::NotSaturating { value: res.value, n });
        }
        vs.sort_unstable();
        for (&v, slot) in vs.iter().zip(slots) {
            labels[v] = slot + 1;
        }
    }
    Layout::new(labels)
}

/// Feasibility by the compressed flow network. Uses incremental table
/// updates between placements.
#[derive(Debug, Default)]
pub struct FlowBackend;

impl Feasibility for FlowBackend {
    fn incremental(&self) -> bool {
        true
    }

    fn test(&mut self, table: &IntervalTable<'_>) -> Probe {
        let Some(counts) = count_intervals(table) else {
            return Probe {
                layout: None,
                flow_nodes: 0,
            };
        };
        let inst = build_flow_instance(&counts, table.config()).expect("table intervals lie within the boxes");
        let res = max_flow(&inst);
        Probe {
            layout: flow_to_layout(&res, &inst, table).ok(),
            flow_nodes: inst.node_count(),
        }
    }
}

/// Flow pipeline on a 2-dominating random root set.
pub fn approx_bandwidth_alg2(g: &Graph, opts: &ApproxOptions, seed: u64) -> Result<ApproxResult> {
    search::run(g, opts, seed, Algorithm::Flow, &mut FlowBackend)
}
