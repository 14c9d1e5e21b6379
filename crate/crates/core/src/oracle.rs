//! Layouts, their bandwidth, and an exact branch-and-bound solver for small
//! instances.

use std::fmt::Write as _;

use crate::error::{Error, ParseError, ParseErrorKind, Result};
use crate::graph::Graph;

/// Largest `n` the exact solver accepts unless told otherwise.
pub const DEFAULT_ORACLE_CAP: usize = 14;

/// A bijective labeling of the vertices onto positions `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Layout {
    label: Vec<usize>,
}

impl Layout {
    /// `labels[v]` is the position of vertex `v`.
    pub fn new(labels: Vec<usize>) -> Result<Self> {
        let n = labels.len();
        let mut seen = vec![false; n];
        for &p in &labels {
            if p == 0 || p > n || std::mem::replace(&mut seen[p - 1], true) {
                return Err(Error::NotAPermutation(n));
            }
        }
        Ok(Self { label: labels })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            label: (1..=n).collect(),
        }
    }

    /// `order[i]` is the vertex placed at position `i + 1`.
    pub fn from_order(order: &[usize]) -> Result<Self> {
        let n = order.len();
        let mut labels = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            if v >= n || labels[v] != 0 {
                return Err(Error::NotAPermutation(n));
            }
            labels[v] = i + 1;
        }
        Ok(Self { label: labels })
    }

    pub fn len(&self) -> usize {
        self.label.len()
    }

    pub fn is_empty(&self) -> bool {
        self.label.is_empty()
    }

    pub fn position(&self, v: usize) -> usize {
        self.label[v]
    }

    pub fn labels(&self) -> &[usize] {
        &self.label
    }

    /// Vertices in position order.
    pub fn order(&self) -> Vec<usize> {
        let mut order = vec![0; self.len()];
        for (v, &p) in self.label.iter().enumerate() {
            order[p - 1] = v;
        }
        order
    }

    /// One `vertex position` line per vertex, ascending vertex id.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (v, p) in self.label.iter().enumerate() {
            let _ = writeln!(out, "{v} {p}");
        }
        out
    }
}

/// Reads the `vertex position` layout format. Lines may appear in any order
/// but every vertex `0..n` must occur exactly once, where `n` is the number
/// of non-blank lines.
pub fn parse_layout(text: &str) -> std::result::Result<Layout, ParseError> {
    let rows: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let n = rows.len();
    let mut labels = vec![0usize; n];
    let mut used = vec![false; n];
    for &(lineno, line) in &rows {
        let malformed = || ParseError::new(lineno, ParseErrorKind::Malformed(line.to_string()));
        let mut it = line.split_whitespace();
        let v: usize = it.next().and_then(|t| t.parse().ok()).ok_or_else(malformed)?;
        let p: usize = it.next().and_then(|t| t.parse().ok()).ok_or_else(malformed)?;
        if it.next().is_some() {
            return Err(malformed());
        }
        if v >= n {
            return Err(ParseError::new(lineno, ParseErrorKind::OutOfRange { id: v, n }));
        }
        if p == 0 || p > n {
            return Err(ParseError::new(lineno, ParseErrorKind::OutOfRange { id: p, n }));
        }
        if labels[v] != 0 {
            return Err(ParseError::new(lineno, ParseErrorKind::DuplicateVertex(v)));
        }
        if std::mem::replace(&mut used[p - 1], true) {
            return Err(ParseError::new(lineno, ParseErrorKind::DuplicatePosition(p)));
        }
        labels[v] = p;
    }
    Ok(Layout { label: labels })
}

/// Maximum label distance over the edges of `g`; 0 without edges.
pub fn layout_bandwidth(g: &Graph, f: &Layout) -> Result<usize> {
    if f.len() != g.n() {
        return Err(Error::LayoutSizeMismatch {
            layout: f.len(),
            graph: g.n(),
        });
    }
    Ok(g.edges()
        .iter()
        .map(|&(u, v)| f.position(u).abs_diff(f.position(v)))
        .max()
        .unwrap_or(0))
}

/// `ceil(max_degree / 2)`: a vertex of degree D needs D distinct labels
/// within distance B of its own.
pub fn degree_lower_bound(g: &Graph) -> usize {
    g.max_degree().div_ceil(2)
}

/// Exact bandwidth with the default size cap.
pub fn exact_bandwidth(g: &Graph) -> Result<(usize, Layout)> {
    exact_bandwidth_with_cap(g, DEFAULT_ORACLE_CAP)
}

/// Exact bandwidth and a witnessing layout, for `n <= cap`.
///
/// Iterative deepening over the bound `k`, starting at
/// [`degree_lower_bound`]. For each `k` a depth-first search fills positions
/// left to right. Every unplaced vertex with a placed neighbor has a deadline
/// (earliest placed neighbor's position plus `k`); a prefix is pruned as soon
/// as the sorted deadlines cannot all be met by the positions still free.
/// Candidates are tried in descending degree with ascending id as the tie
/// break, so the witness is the first layout in that order.
pub fn exact_bandwidth_with_cap(g: &Graph, cap: usize) -> Result<(usize, Layout)> {
    let n = g.n();
    if n > cap {
        return Err(Error::OracleCapExceeded { n, cap });
    }
    if g.edge_count() == 0 {
        return Ok((0, Layout::identity(n)));
    }
    let mut rank: Vec<usize> = (0..n).collect();
    rank.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));

    let start = degree_lower_bound(g).max(1);
    for k in start..n {
        let mut search = BoundSearch::new(g, k, &rank);
        if search.run() {
            let layout = Layout::from_order(&search.order).expect("search places every vertex once");
            return Ok((k, layout));
        }
    }
    unreachable!("bound n - 1 is always feasible")
}

struct BoundSearch<'a> {
    g: &'a Graph,
    k: usize,
    rank: &'a [usize],
    placed: Vec<bool>,
    /// Latest admissible 0-based position, set by the earliest placed neighbor.
    deadline: Vec<Option<usize>>,
    order: Vec<usize>,
}

impl<'a> BoundSearch<'a> {
    fn new(g: &'a Graph, k: usize, rank: &'a [usize]) -> Self {
        let n = g.n();
        Self {
            g,
            k,
            rank,
            placed: vec![false; n],
            deadline: vec![None; n],
            order: Vec::with_capacity(n),
        }
    }

    fn run(&mut self) -> bool {
        let n = self.g.n();
        let pos = self.order.len();
        if pos == n {
            return true;
        }
        let forced = (0..n).find(|&w| !self.placed[w] && self.deadline[w] == Some(pos));
        match forced {
            Some(w) => self.try_place(w),
            None => {
                for i in 0..n {
                    let v = self.rank[i];
                    if !self.placed[v] && self.try_place(v) {
                        return true;
                    }
                }
                false
            }
        }
    }

    fn try_place(&mut self, v: usize) -> bool {
        let pos = self.order.len();
        self.placed[v] = true;
        self.order.push(v);
        let mut touched = Vec::new();
        for &w in self.g.neighbors(v) {
            if !self.placed[w] && self.deadline[w].is_none() {
                self.deadline[w] = Some(pos + self.k);
                touched.push(w);
            }
        }
        let ok = self.deadlines_feasible(pos + 1) && self.run();
        if !ok {
            for w in touched {
                self.deadline[w] = None;
            }
            self.order.pop();
            self.placed[v] = false;
        }
        ok
    }

    /// With `next` the first free position, the i-th smallest pending
    /// deadline must be at least `next + i`.
    fn deadlines_feasible(&self, next: usize) -> bool {
        let mut pending: Vec<usize> = (0..self.g.n())
            .filter(|&w| !self.placed[w])
            .filter_map(|w| self.deadline[w])
            .collect();
        pending.sort_unstable();
        pending.iter().enumerate().all(|(i, &d)| d >= next + i)
    }
}
