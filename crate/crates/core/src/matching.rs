//! Auxiliary bipartite graph between vertices and positions, Hopcroft–Karp
//! maximum matching, and the matching-based approximation algorithms.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::layout::{BoxConfig, IntervalTable};
use crate::oracle::Layout;
use crate::search::{self, Algorithm, ApproxOptions, ApproxResult, Feasibility, Probe};

/// Bipartite graph with the `n` vertices on the left and the `n` slots
/// (label minus one) on the right. Vertex `v` is joined to every slot of
/// every box in its interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxGraph {
    adj: Vec<Vec<usize>>,
    right: usize,
}

impl AuxGraph {
    /// Bipartite graph from explicit adjacency; `adj[v]` lists right slots.
    pub fn from_adjacency(adj: Vec<Vec<usize>>, right: usize) -> Self {
        debug_assert!(adj.iter().flatten().all(|&p| p < right));
        Self { adj, right }
    }

    pub fn left(&self) -> usize {
        self.adj.len()
    }

    pub fn right(&self) -> usize {
        self.right
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum()
    }
}

pub fn build_auxiliary(table: &IntervalTable<'_>, cfg: &BoxConfig) -> AuxGraph {
    let adj = table
        .intervals()
        .iter()
        .map(|iv| match iv {
            Some(iv) => (cfg.slots(iv.lo).start..cfg.slots(iv.hi).end).collect(),
            None => Vec::new(),
        })
        .collect();
    AuxGraph { adj, right: cfg.n() }
}

/// A matching stored as the right mate of each left vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    mate: Vec<Option<usize>>,
    size: usize,
}

impl Matching {
    pub fn from_pairs(left: usize, pairs: &[(usize, usize)]) -> Self {
        let mut mate = vec![None; left];
        for &(v, p) in pairs {
            mate[v] = Some(p);
        }
        Self {
            size: mate.iter().flatten().count(),
            mate,
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn mate(&self, v: usize) -> Option<usize> {
        self.mate[v]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.mate
            .iter()
            .enumerate()
            .filter_map(|(v, p)| p.map(|p| (v, p)))
    }

    pub fn is_perfect(&self) -> bool {
        self.size == self.mate.len()
    }
}

const FREE: usize = usize::MAX;

/// Maximum-cardinality matching by Hopcroft–Karp, `O(sqrt(V) E)`.
pub fn max_matching(aux: &AuxGraph) -> Matching {
    let left = aux.left();
    let mut mate_l = vec![FREE; left];
    let mut mate_r = vec![FREE; aux.right()];
    let mut size = 0;

    // Greedy warm start; dense windows leave few augmentations afterwards.
    for (v, adj) in aux.adj.iter().enumerate() {
        if let Some(&p) = adj.iter().find(|&&p| mate_r[p] == FREE) {
            mate_l[v] = p;
            mate_r[p] = v;
            size += 1;
        }
    }

    let mut layer = vec![0usize; left];
    let mut cursor = vec![0usize; left];
    let mut queue = VecDeque::with_capacity(left);
    loop {
        queue.clear();
        for v in 0..left {
            if mate_l[v] == FREE {
                layer[v] = 0;
                queue.push_back(v);
            } else {
                layer[v] = FREE;
            }
        }
        let mut reachable_free = false;
        while let Some(v) = queue.pop_front() {
            for &p in &aux.adj[v] {
                let w = mate_r[p];
                if w == FREE {
                    reachable_free = true;
                } else if layer[w] == FREE {
                    layer[w] = layer[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        if !reachable_free {
            break;
        }
        cursor.iter_mut().for_each(|c| *c = 0);
        for v in 0..left {
            if mate_l[v] == FREE && augment(aux, v, &mut layer, &mut cursor, &mut mate_l, &mut mate_r) {
                size += 1;
            }
        }
    }

    Matching {
        mate: mate_l
            .into_iter()
            .map(|p| (p != FREE).then_some(p))
            .collect(),
        size,
    }
}

fn augment(
    aux: &AuxGraph,
    v: usize,
    layer: &mut [usize],
    cursor: &mut [usize],
    mate_l: &mut [usize],
    mate_r: &mut [usize],
) -> bool {
    while cursor[v] < aux.adj[v].len() {
        let p = aux.adj[v][cursor[v]];
        cursor[v] += 1;
        let w = mate_r[p];
        let ok = w == FREE
            || (layer[w] == layer[v] + 1 && augment(aux, w, layer, cursor, mate_l, mate_r));
        if ok {
            mate_l[v] = p;
            mate_r[p] = v;
            return true;
        }
    }
    layer[v] = FREE;
    false
}

/// Reads a perfect matching as a layout: vertex `v` gets label `slot + 1`.
pub fn matching_to_layout(m: &Matching, cfg: &BoxConfig) -> Result<Layout> {
    if !m.is_perfect() || m.mate.len() != cfg.n() {
        return Err(Error::NotPerfect {
            size: m.size(),
            n: cfg.n(),
        });
    }
    Layout::new(m.mate.iter().map(|p| p.expect("perfect") + 1).collect())
}

/// Feasibility by explicit auxiliary graph and bipartite matching.
#[derive(Debug, Default)]
pub struct MatchingBackend;

impl Feasibility for MatchingBackend {
    fn incremental(&self) -> bool {
        false
    }

    fn test(&mut self, table: &IntervalTable<'_>) -> Probe {
        let cfg = table.config();
        let aux = build_auxiliary(table, cfg);
        let m = max_matching(&aux);
        Probe {
            layout: matching_to_layout(&m, cfg).ok(),
            flow_nodes: 0,
        }
    }
}

/// Matching pipeline on a 2-dominating random root set.
pub fn approx_bandwidth_alg1(g: &Graph, opts: &ApproxOptions, seed: u64) -> Result<ApproxResult> {
    search::run(g, opts, seed, Algorithm::Matching, &mut MatchingBackend)
}

/// Comparison pipeline: a 1-dominating random root set of logarithmic size
/// with one-box windows, solved by the same matching back end.
pub fn approx_bandwidth_baseline(g: &Graph, opts: &ApproxOptions, seed: u64) -> Result<ApproxResult> {
    search::run(g, opts, seed, Algorithm::Baseline, &mut MatchingBackend)
}
