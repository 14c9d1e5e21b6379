//! Independent reference implementations used only by tests.

#![allow(dead_code)]

use bandapprox::{AuxGraph, FlowInstance, Graph};

/// Minimum bandwidth over all `n!` permutations (Heap's algorithm).
pub fn brute_force_bandwidth(g: &Graph) -> usize {
    let n = g.n();
    if g.edge_count() == 0 {
        return 0;
    }
    let mut order: Vec<usize> = (0..n).collect();
    let mut pos = vec![0usize; n];
    let eval = |order: &[usize], pos: &mut [usize], cutoff: usize| -> usize {
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let mut worst = 0;
        for &(u, v) in g.edges() {
            worst = worst.max(pos[u].abs_diff(pos[v]));
            if worst >= cutoff {
                break;
            }
        }
        worst
    };
    let mut best = eval(&order, &mut pos, usize::MAX);
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                order.swap(0, i);
            } else {
                order.swap(c[i], i);
            }
            best = best.min(eval(&order, &mut pos, best));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

/// All-pairs hop distances; `None` for unreachable pairs.
pub fn floyd_warshall(g: &Graph) -> Vec<Vec<Option<usize>>> {
    let n = g.n();
    let mut d = vec![vec![None; n]; n];
    for v in 0..n {
        d[v][v] = Some(0);
    }
    for &(u, v) in g.edges() {
        d[u][v] = Some(1);
        d[v][u] = Some(1);
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if let (Some(a), Some(b)) = (d[i][k], d[k][j]) {
                    if d[i][j].is_none_or(|c| a + b < c) {
                        d[i][j] = Some(a + b);
                    }
                }
            }
        }
    }
    d
}

/// Maximum matching size by exhaustive search over right-side subsets,
/// memoized on (left index, used set). Right side must be at most 20.
pub fn brute_force_matching(aux: &AuxGraph) -> usize {
    assert!(aux.right() <= 20);
    let left = aux.left();
    let mut memo = std::collections::HashMap::new();
    fn go(
        aux: &AuxGraph,
        i: usize,
        used: u32,
        left: usize,
        memo: &mut std::collections::HashMap<(usize, u32), usize>,
    ) -> usize {
        if i == left {
            return 0;
        }
        if let Some(&v) = memo.get(&(i, used)) {
            return v;
        }
        let mut best = go(aux, i + 1, used, left, memo);
        for &p in aux.neighbors(i) {
            if used & (1 << p) == 0 {
                best = best.max(1 + go(aux, i + 1, used | (1 << p), left, memo));
            }
        }
        memo.insert((i, used), best);
        best
    }
    go(aux, 0, 0, left, &mut memo)
}

/// Minimum s-t cut capacity by enumerating every node subset containing the
/// source and not the sink.
pub fn min_cut_enumeration(inst: &FlowInstance) -> usize {
    let nodes = inst.node_count();
    assert!(nodes <= 22, "enumeration is exponential in the node count");
    let (s, t) = (inst.source(), inst.sink());
    let inner: Vec<usize> = (0..nodes).filter(|&v| v != s && v != t).collect();
    let mut best = usize::MAX;
    for mask in 0u32..(1 << inner.len()) {
        let mut side = vec![false; nodes];
        side[s] = true;
        for (bit, &v) in inner.iter().enumerate() {
            side[v] = mask & (1 << bit) != 0;
        }
        let cut: usize = inst
            .arcs()
            .iter()
            .filter(|a| side[a.from] && !side[a.to])
            .map(|a| a.capacity)
            .sum();
        best = best.min(cut);
    }
    best
}

/// Small graph with edges drawn independently, deterministic per seed.
pub fn random_graph(n: usize, p: f64, seed: u64) -> Graph {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let edges: Vec<_> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|_| rng.gen_bool(p))
        .collect();
    Graph::from_edges(n, &edges).unwrap()
}
