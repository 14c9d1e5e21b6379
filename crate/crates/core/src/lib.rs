//! Randomized bandwidth approximation for dense graphs.
//!
//! Both approximation pipelines sample a small random root set that
//! 2-dominates the graph, then scan box sizes and enumerate every placement
//! of the roots into boxes. Each placement confines every vertex to a short
//! interval of boxes; a placement is feasible when the vertices can be packed
//! into their intervals.
//!
//! * [`approx_bandwidth_alg1`] checks feasibility with a perfect matching in
//!   an explicit vertex-by-position bipartite graph.
//! * [`approx_bandwidth_alg2`] merges vertices that share an interval and
//!   checks feasibility with a maximum flow whose size depends only on the
//!   number of boxes.
//! * [`approx_bandwidth_baseline`] is the older scheme with a 1-dominating
//!   root set of logarithmic size.
//!
//! [`exact_bandwidth`] solves small instances exactly and serves as the
//! reference for approximation ratios.

pub mod bench;
pub mod domset;
pub mod error;
pub mod flow;
pub mod graph;
pub mod layout;
pub mod matching;
pub mod oracle;
pub mod report;
pub mod rng;
pub mod search;

pub use domset::{
    is_dominating, k_size, kprime_size, sample_certified, sample_rootset, DeltaRule, HopRadius,
    RootSet, SamplingParams,
};
pub use error::{Error, ParseError, ParseErrorKind, Result};
pub use flow::{
    approx_bandwidth_alg2, build_flow_instance, count_intervals, flow_to_layout, max_flow, FlowInstance,
    FlowResult, IntervalCounts,
};
pub use graph::{bfs_from_set, gen_dense_random, parse_graph, DistanceMap, Graph};
pub use layout::{
    build_intervals, enumerate_placements, make_box_config, update_intervals, BoxConfig,
    DominatorRecords, Interval, IntervalTable, RootPlacement, WindowRule,
};
pub use matching::{
    approx_bandwidth_alg1, approx_bandwidth_baseline, build_auxiliary, matching_to_layout, max_matching,
    AuxGraph, Matching,
};
pub use oracle::{
    degree_lower_bound, exact_bandwidth, exact_bandwidth_with_cap, layout_bandwidth, parse_layout, Layout,
};
pub use report::RunReport;
pub use search::{Algorithm, ApproxOptions, ApproxResult, BoxsizeSearch, SearchStats, TraceEntry, Verdict};
