mod common;

use bandapprox::layout::Placements;
use bandapprox::{
    approx_bandwidth_alg1, approx_bandwidth_alg2, approx_bandwidth_baseline, build_auxiliary,
    build_flow_instance, build_intervals, count_intervals, enumerate_placements, exact_bandwidth,
    flow_to_layout, gen_dense_random, layout_bandwidth, make_box_config, matching_to_layout, max_flow,
    max_matching, sample_certified, update_intervals, ApproxOptions, AuxGraph, BoxsizeSearch,
    DominatorRecords, Graph, HopRadius, Interval, IntervalCounts, RootPlacement, RootSet, Verdict,
    WindowRule,
};
use common::{brute_force_matching, min_cut_enumeration};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn certified_roots(g: &Graph, size: usize, seed: u64) -> RootSet {
    sample_certified(g, size, seed, HopRadius::Two, 500).unwrap().0
}

#[test]
fn update_matches_build_exhaustively() {
    for (n, delta, seed) in [(12, 0.5, 1), (20, 0.4, 2), (30, 0.3, 3), (30, 0.5, 4)] {
        let g = gen_dense_random(n, delta, seed).unwrap();
        for size in 1..=3 {
            let Ok((rs, _)) = sample_certified(&g, size, seed, HopRadius::Two, 500) else {
                continue;
            };
            for rule in [WindowRule::TIGHT, WindowRule::PLAIN] {
                let rec = DominatorRecords::new(&g, &rs, rule).unwrap();
                for boxsize in [1, 2, n / 4, n / 3, n / 2, n] {
                    let cfg = make_box_config(n, boxsize.max(1)).unwrap();
                    let mut stream = enumerate_placements(&rs, &cfg);
                    let first = stream.next().unwrap();
                    let mut table = build_intervals(&rec, &first, &cfg).unwrap();
                    let mut prev = first;
                    for p in stream {
                        let next = update_intervals(&table, &prev, &p).unwrap();
                        assert_eq!(next, build_intervals(&rec, &p, &cfg).unwrap());
                        table = next;
                        prev = p;
                    }
                }
            }
        }
    }
}

#[test]
fn intervals_are_narrow_and_roots_fixed() {
    let g = gen_dense_random(24, 0.4, 8).unwrap();
    let rs = certified_roots(&g, 3, 8);
    let rec = DominatorRecords::new(&g, &rs, WindowRule::PLAIN).unwrap();
    for boxsize in 1..=24 {
        let cfg = make_box_config(24, boxsize).unwrap();
        for p in enumerate_placements(&rs, &cfg) {
            let t = build_intervals(&rec, &p, &cfg).unwrap();
            for (v, iv) in t.intervals().iter().enumerate() {
                if let Some(iv) = iv {
                    assert!(iv.width() <= 5 && iv.hi < cfg.boxes());
                }
                if let (Some(i), Some(iv)) = (rec.root_index(v), iv) {
                    assert_eq!(*iv, Interval::new(p.boxes()[i], p.boxes()[i]));
                }
            }
            if !t.has_empty() {
                let counts = count_intervals(&t).unwrap();
                assert_eq!(counts.total(), 24);
                assert!(counts.len() <= 5 * cfg.boxes());
            }
        }
    }
}

/// Moving the only root one box right moves every interval one box right,
/// up to clipping at the ends.
#[test]
fn shifting_a_single_root_shifts_dependents() {
    let g = Graph::star(9);
    let rs = RootSet::new(vec![0], HopRadius::Two).certify(&g).unwrap();
    let rec = DominatorRecords::new(&g, &rs, WindowRule::TIGHT).unwrap();
    let cfg = make_box_config(10, 1).unwrap();
    let old = RootPlacement::new(vec![4]);
    let new = RootPlacement::new(vec![5]);
    let before = build_intervals(&rec, &old, &cfg).unwrap();
    let after = update_intervals(&before, &old, &new).unwrap();
    assert_eq!(after.get(0), Some(Interval::new(5, 5)));
    for v in 1..10 {
        assert_eq!(before.get(v), Some(Interval::new(2, 6)));
        assert_eq!(after.get(v), Some(Interval::new(3, 7)));
    }
    let edge = update_intervals(&before, &old, &RootPlacement::new(vec![9])).unwrap();
    assert_eq!(edge.get(1), Some(Interval::new(7, 9)));
}

#[test]
fn random_transitions_agree_with_fresh_builds() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    let g = gen_dense_random(40, 0.35, 5).unwrap();
    let rs = certified_roots(&g, 6, 5);
    let rec = DominatorRecords::new(&g, &rs, WindowRule::TIGHT).unwrap();
    let cfg = make_box_config(40, 7).unwrap();
    let random_placement = |rng: &mut ChaCha8Rng| loop {
        let p = RootPlacement::new((0..rs.len()).map(|_| rng.gen_range(0..cfg.boxes())).collect());
        if p.fits(rs.len(), &cfg) {
            return p;
        }
    };
    let mut prev = random_placement(&mut rng);
    let mut table = build_intervals(&rec, &prev, &cfg).unwrap();
    for _ in 0..500 {
        let next = random_placement(&mut rng);
        table = update_intervals(&table, &prev, &next).unwrap();
        assert_eq!(table, build_intervals(&rec, &next, &cfg).unwrap());
        prev = next;
    }
}

/// Binning the roots by an optimal layout at box size B(G) gives intervals
/// that all contain the vertex's own optimal box, and the matching succeeds.
#[test]
fn optimal_layout_placement_is_feasible() {
    for seed in 0..30 {
        let n = 8 + (seed as usize % 5);
        let g = gen_dense_random(n, 0.5, seed).unwrap();
        let (b, opt) = exact_bandwidth(&g).unwrap();
        let rs = certified_roots(&g, 3, seed);
        for rule in [WindowRule::TIGHT, WindowRule::PLAIN] {
            let rec = DominatorRecords::new(&g, &rs, rule).unwrap();
            for boxsize in b..=n {
                let cfg = make_box_config(n, boxsize).unwrap();
                let boxes = rs.roots().iter().map(|&r| cfg.box_of_position(opt.position(r))).collect();
                let t = build_intervals(&rec, &RootPlacement::new(boxes), &cfg).unwrap();
                for v in 0..n {
                    let own = cfg.box_of_position(opt.position(v));
                    assert!(t.get(v).is_some_and(|iv| iv.contains(own)), "seed {seed} v {v}");
                }
                assert!(max_matching(&build_auxiliary(&t, &cfg)).is_perfect());
            }
        }
    }
}

#[test]
fn hopcroft_karp_matches_exhaustive_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..400 {
        let left = rng.gen_range(1..=12);
        let right = rng.gen_range(1..=12);
        let p = rng.gen_range(0.05..0.6);
        let adj: Vec<Vec<usize>> = (0..left)
            .map(|_| (0..right).filter(|_| rng.gen_bool(p)).collect())
            .collect();
        let aux = AuxGraph::from_adjacency(adj, right);
        let m = max_matching(&aux);
        assert_eq!(m.size(), brute_force_matching(&aux));
        let mut used = vec![false; right];
        for (v, p) in m.pairs() {
            assert!(aux.neighbors(v).contains(&p));
            assert!(!std::mem::replace(&mut used[p], true));
        }
    }
}

#[test]
fn max_flow_matches_min_cut_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..300 {
        let boxsize = rng.gen_range(1..=4);
        let boxes = rng.gen_range(1..=4);
        let n = boxsize * boxes - rng.gen_range(0..boxsize);
        let cfg = make_box_config(n, boxsize.min(n)).unwrap();
        let b = cfg.boxes();
        let pairs: Vec<(Interval, usize)> = (0..rng.gen_range(1..=8))
            .map(|_| {
                let lo = rng.gen_range(0..b);
                let hi = rng.gen_range(lo..b.min(lo + 5));
                (Interval::new(lo, hi), rng.gen_range(0..=n))
            })
            .collect();
        let inst = build_flow_instance(&IntervalCounts::from_pairs(&pairs), &cfg).unwrap();
        let res = max_flow(&inst);
        assert!(res.is_valid_for(&inst));
        assert_eq!(res.value, min_cut_enumeration(&inst));
    }
}

/// Every configuration: perfect matching exists iff the compressed flow
/// saturates, and the converted flow is a valid matching.
#[test]
fn flow_and_matching_agree_on_every_configuration() {
    for seed in 0..8 {
        let n = 10 + (seed as usize % 3);
        let g = gen_dense_random(n, 0.5, seed).unwrap();
        let rs = certified_roots(&g, 2 + (seed as usize % 2), seed);
        let rec = DominatorRecords::new(&g, &rs, WindowRule::TIGHT).unwrap();
        for boxsize in 1..=n {
            let cfg = make_box_config(n, boxsize).unwrap();
            for p in enumerate_placements(&rs, &cfg) {
                let t = build_intervals(&rec, &p, &cfg).unwrap();
                let aux = build_auxiliary(&t, &cfg);
                let perfect = max_matching(&aux).is_perfect();
                let Some(counts) = count_intervals(&t) else {
                    assert!(!perfect);
                    continue;
                };
                let inst = build_flow_instance(&counts, &cfg).unwrap();
                let res = max_flow(&inst);
                assert!(res.is_valid_for(&inst));
                assert_eq!(perfect, res.value == n);
                if perfect {
                    let f = flow_to_layout(&res, &inst, &t).unwrap();
                    for v in 0..n {
                        let slot = f.position(v) - 1;
                        assert!(aux.neighbors(v).contains(&slot));
                    }
                } else {
                    assert!(flow_to_layout(&res, &inst, &t).is_err());
                }
            }
        }
    }
}

#[test]
fn flow_split_sends_lowest_ids_to_earlier_box() {
    // Roots 0 and 1 are both adjacent to everything; with boxsize 2 and
    // roots in box 0 and box 1 the six other vertices share interval 0..=2.
    let g = Graph::complete(6);
    let rs = RootSet::new(vec![0, 1], HopRadius::Two).certify(&g).unwrap();
    let rec = DominatorRecords::new(&g, &rs, WindowRule::TIGHT).unwrap();
    let cfg = make_box_config(6, 2).unwrap();
    let t = build_intervals(&rec, &RootPlacement::new(vec![0, 1]), &cfg).unwrap();
    let inst = build_flow_instance(&count_intervals(&t).unwrap(), &cfg).unwrap();
    let res = max_flow(&inst);
    let f = flow_to_layout(&res, &inst, &t).unwrap();
    assert_eq!(f.position(0), 1);
    assert_eq!(f.position(1), 3);
    // Vertex 2 fills box 0; 3 joins vertex 1 in box 1; 4 and 5 take box 2.
    assert_eq!(f.labels(), &[1, 3, 2, 4, 5, 6]);
    // Same box assignment as a matching normalized within boxes.
    let m = max_matching(&build_auxiliary(&t, &cfg));
    let via_matching = matching_to_layout(&m, &cfg).unwrap();
    for v in 0..6 {
        assert!(t.get(v).unwrap().contains(cfg.box_of_position(via_matching.position(v))));
    }
}

/// Box gaps across every edge of a returned layout obey the case analysis
/// of the 3-hop windows.
#[test]
fn returned_layouts_respect_gap_bounds() {
    for seed in 0..40 {
        let n = 8 + (seed as usize % 5);
        let g = gen_dense_random(n, 0.5, seed).unwrap();
        let opts = ApproxOptions::default();
        for r in [approx_bandwidth_alg1(&g, &opts, seed).unwrap(), approx_bandwidth_alg2(&g, &opts, seed).unwrap()] {
            let cfg = make_box_config(n, r.boxsize).unwrap();
            let rs = RootSet::new(r.stats.roots.clone(), HopRadius::Two).certify(&g).unwrap();
            let rec = DominatorRecords::new(&g, &rs, WindowRule::TIGHT).unwrap();
            let bx = |v: usize| cfg.box_of_position(r.layout.position(v));
            for &(u, v) in g.edges() {
                let ru = rs.roots()[rec.representative(u).unwrap()];
                let rv = rs.roots()[rec.representative(v).unwrap()];
                let gamma = bx(ru).abs_diff(bx(rv));
                let gap = bx(u).abs_diff(bx(v));
                assert!(gamma <= 5, "seed {seed}");
                if gamma == 0 {
                    assert!(gap <= 5);
                } else {
                    assert!(gap <= 7 - gamma);
                }
            }
            assert!(r.bandwidth < 6 * r.boxsize);
        }
    }
}

#[test]
fn both_algorithms_share_their_trace() {
    for seed in 0..20 {
        let g = gen_dense_random(12, 0.5, seed).unwrap();
        let opts = ApproxOptions {
            record_trace: true,
            ..ApproxOptions::default()
        };
        let a = approx_bandwidth_alg1(&g, &opts, seed).unwrap();
        let b = approx_bandwidth_alg2(&g, &opts, seed).unwrap();
        assert_eq!(a.boxsize, b.boxsize);
        let verdicts = |r: &bandapprox::ApproxResult| -> Vec<_> {
            r.stats.trace.iter().map(|e| (e.boxsize, e.placement, e.verdict)).collect()
        };
        assert_eq!(verdicts(&a), verdicts(&b));
        assert_eq!(a.stats.trace.last().unwrap().verdict, Verdict::Feasible);
    }
}

#[test]
fn baseline_ratio_within_four() {
    for seed in 0..30 {
        let n = 8 + (seed as usize % 5);
        let g = gen_dense_random(n, 0.5, seed).unwrap();
        let (b, _) = exact_bandwidth(&g).unwrap();
        let r = approx_bandwidth_baseline(&g, &ApproxOptions::default(), seed).unwrap();
        assert_eq!(layout_bandwidth(&g, &r.layout).unwrap(), r.bandwidth);
        assert!(r.bandwidth <= 4 * b, "seed {seed}: {} vs {b}", r.bandwidth);
    }
}

#[test]
fn binary_search_reports_linear_answer() {
    for seed in 0..15 {
        let g = gen_dense_random(12, 0.5, seed).unwrap();
        let opts = ApproxOptions {
            search: BoxsizeSearch::Binary,
            verify_monotone: true,
            ..ApproxOptions::default()
        };
        let r = approx_bandwidth_alg2(&g, &opts, seed).unwrap();
        let linear = approx_bandwidth_alg2(&g, &ApproxOptions::default(), seed).unwrap();
        assert_eq!(r.stats.linear_boxsize, Some(linear.boxsize));
        assert!(r.boxsize >= linear.boxsize);
        assert_eq!(layout_bandwidth(&g, &r.layout).unwrap(), r.bandwidth);
    }
}

#[test]
fn narrow_range_can_miss_small_instances() {
    // K_n has bandwidth n - 1 > n / 2: the literal range finds nothing.
    let g = Graph::complete(8);
    let opts = ApproxOptions {
        narrow_range: true,
        ..ApproxOptions::default()
    };
    assert!(approx_bandwidth_alg1(&g, &opts, 0).is_err());
}

#[test]
fn placements_stream_is_lazy_and_bounded() {
    let cfg = make_box_config(100, 10).unwrap();
    assert_eq!(Placements::new(5, cfg).take(3).count(), 3);
    assert_eq!(Placements::new(2, cfg).count(), 100);
}
