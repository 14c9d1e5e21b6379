//! Undirected simple graphs, the edge-list format, BFS distances and the
//! dense random instance generator.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, ParseError, ParseErrorKind, Result};
use crate::rng;

/// Undirected simple graph on vertices `0..n`.
///
/// Neighbor lists are kept sorted so every traversal is reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph from an edge list, rejecting self-loops, duplicates and
    /// out-of-range endpoints.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut adj = vec![Vec::new(); n];
        let mut list = Vec::with_capacity(edges.len());
        for &(u, v) in edges {
            if u == v || u >= n || v >= n {
                return Err(Error::InvalidEdge(u, v));
            }
            adj[u].push(v);
            adj[v].push(u);
            list.push((u.min(v), u.max(v)));
        }
        for nbrs in &mut adj {
            nbrs.sort_unstable();
            if nbrs.windows(2).any(|w| w[0] == w[1]) {
                let (u, v) = first_duplicate(&list);
                return Err(Error::InvalidEdge(u, v));
            }
        }
        list.sort_unstable();
        Ok(Self { adj, edges: list })
    }

    pub fn empty(n: usize) -> Self {
        Self {
            adj: vec![Vec::new(); n],
            edges: Vec::new(),
        }
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect();
        Self::from_edges(n, &edges).expect("complete graph is simple")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Self::from_edges(n, &edges).expect("path is simple")
    }

    /// Cycle on `n >= 3` vertices.
    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((0, n - 1));
        Self::from_edges(n, &edges).expect("cycle is simple")
    }

    /// Star with center 0 and `leaves` leaves.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Self::from_edges(leaves + 1, &edges).expect("star is simple")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// `min_degree / n` as an unreduced fraction.
    pub fn density_ratio(&self) -> (usize, usize) {
        (self.min_degree(), self.n())
    }

    /// Largest `delta` for which the graph is `delta`-dense.
    pub fn density(&self) -> f64 {
        if self.n() == 0 {
            return 0.0;
        }
        self.min_degree() as f64 / self.n() as f64
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || bfs_from_set(self, &[0]).unreachable_count() == 0
    }

    /// Serializes to the edge-list format read by [`parse_graph`].
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.edge_count());
        for &(u, v) in &self.edges {
            let _ = writeln!(out, "{u} {v}");
        }
        out
    }
}

fn first_duplicate(list: &[(usize, usize)]) -> (usize, usize) {
    let mut sorted = list.to_vec();
    sorted.sort_unstable();
    sorted
        .windows(2)
        .find(|w| w[0] == w[1])
        .map(|w| w[0])
        .unwrap_or((0, 0))
}

fn parse_usize_pair(line: &str, lineno: usize) -> std::result::Result<(usize, usize), ParseError> {
    let mut it = line.split_whitespace();
    let malformed = || ParseError::new(lineno, ParseErrorKind::Malformed(line.to_string()));
    let a = it.next().and_then(|t| t.parse().ok()).ok_or_else(malformed)?;
    let b = it.next().and_then(|t| t.parse().ok()).ok_or_else(malformed)?;
    if it.next().is_some() {
        return Err(malformed());
    }
    Ok((a, b))
}

/// Parses the edge-list format: a header line `n m` followed by `m` lines
/// `u v` with 0-indexed endpoints. Blank lines are ignored.
pub fn parse_graph(text: &str) -> std::result::Result<Graph, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (hline, header) = lines
        .next()
        .ok_or_else(|| ParseError::new(1, ParseErrorKind::Malformed(String::new())))?;
    let (n, m) = parse_usize_pair(header, hline)?;

    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut edges = Vec::with_capacity(m);
    let mut seen = std::collections::HashSet::with_capacity(m);
    let mut last_line = hline;
    for (lineno, line) in lines {
        last_line = lineno;
        let (u, v) = parse_usize_pair(line, lineno)?;
        for id in [u, v] {
            if id >= n {
                return Err(ParseError::new(lineno, ParseErrorKind::OutOfRange { id, n }));
            }
        }
        if u == v {
            return Err(ParseError::new(lineno, ParseErrorKind::SelfLoop(u)));
        }
        let key = (u.min(v), u.max(v));
        if !seen.insert(key) {
            return Err(ParseError::new(lineno, ParseErrorKind::DuplicateEdge(key.0, key.1)));
        }
        adj[u].push(v);
        adj[v].push(u);
        edges.push(key);
    }
    if edges.len() != m {
        return Err(ParseError::new(
            last_line,
            ParseErrorKind::CountMismatch {
                expected: m,
                found: edges.len(),
            },
        ));
    }
    for nbrs in &mut adj {
        nbrs.sort_unstable();
    }
    edges.sort_unstable();
    Ok(Graph { adj, edges })
}

/// Hop distances from the nearest vertex of a source set. `None` marks an
/// unreachable vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMap {
    dist: Vec<Option<usize>>,
}

impl DistanceMap {
    pub fn get(&self, v: usize) -> Option<usize> {
        self.dist[v]
    }

    pub fn as_slice(&self) -> &[Option<usize>] {
        &self.dist
    }

    /// Vertices at exactly `hops` from the source set, ascending.
    pub fn layer(&self, hops: usize) -> Vec<usize> {
        self.dist
            .iter()
            .enumerate()
            .filter_map(|(v, d)| (*d == Some(hops)).then_some(v))
            .collect()
    }

    /// Largest finite distance, or `None` if some vertex is unreachable.
    pub fn eccentricity(&self) -> Option<usize> {
        self.dist
            .iter()
            .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
    }

    pub fn unreachable_count(&self) -> usize {
        self.dist.iter().filter(|d| d.is_none()).count()
    }
}

/// Multi-source BFS.
pub fn bfs_from_set(g: &Graph, sources: &[usize]) -> DistanceMap {
    let mut dist = vec![None; g.n()];
    let mut queue = VecDeque::with_capacity(g.n());
    for &s in sources {
        if dist[s].is_none() {
            dist[s] = Some(0);
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued vertices are labelled");
        for &w in g.neighbors(u) {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    DistanceMap { dist }
}

/// Minimum degree the generator guarantees: `ceil(delta * n)`, capped at
/// `n - 1` since no simple graph can do better.
pub fn generator_target_degree(n: usize, delta: f64) -> usize {
    let raw = (delta * n as f64 - 1e-9).ceil().max(0.0) as usize;
    raw.min(n.saturating_sub(1))
}

/// Random graph with minimum degree at least `generator_target_degree(n, delta)`.
///
/// Each edge is drawn independently with probability
/// `min(1, delta + 3 sqrt(delta (1 - delta) / n))`; vertices left below the
/// target degree are then topped up with edges to uniformly random
/// non-neighbors. Deterministic for a fixed `(n, delta, seed)`.
pub fn gen_dense_random(n: usize, delta: f64, seed: u64) -> Result<Graph> {
    if n < 2 || !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InfeasibleGenerator { n, delta });
    }
    let target = generator_target_degree(n, delta);
    let p = (delta + 3.0 * (delta * (1.0 - delta) / n as f64).sqrt()).min(1.0);
    let mut rng = rng::rng(rng::substream(seed, rng::GENERATION));

    let mut matrix = vec![vec![false; n]; n];
    let mut degree = vec![0usize; n];
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                matrix[u][v] = true;
                matrix[v][u] = true;
                degree[u] += 1;
                degree[v] += 1;
            }
        }
    }
    for v in 0..n {
        if degree[v] >= target {
            continue;
        }
        let mut candidates: Vec<usize> = (0..n).filter(|&w| w != v && !matrix[v][w]).collect();
        candidates.shuffle(&mut rng);
        for w in candidates.into_iter().take(target - degree[v]) {
            matrix[v][w] = true;
            matrix[w][v] = true;
            degree[v] += 1;
            degree[w] += 1;
        }
    }
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| matrix[u][v])
        .collect();
    Graph::from_edges(n, &edges)
}
