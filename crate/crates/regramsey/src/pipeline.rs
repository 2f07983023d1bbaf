//! End-to-end construction: for a target order n, a regular triangle-free
//! graph with small independence number, plus its certificate.
//!
//! Even n: run the triangle-free process on n/2 vertices, rewind the
//! trajectory to the latest step whose degree spread fits the regularizer
//! precondition, replay that prefix, and regularize it. Odd n: split
//! n = 2·n0 + k with k ≡ 5 (mod 10), build the even part F on 2·n0
//! vertices with an even degree r, and take the disjoint union with the
//! patch graph H_{k,r}. Small orders fall back to the edgeless graph,
//! whose certificate ratio makes the trivial regime visible rather than
//! hiding it.

use crate::blowup::h_kr;
use crate::graph::{named::edgeless, Graph};
use crate::io::GraphFormat;
use crate::process::{run_process, ForbiddenPattern, ProcessResult};
use crate::regularize::{d_cap, regularize};
use crate::verify::{certify, AlphaMode, CertParams, ConstructionCertificate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Below this order every path emits the edgeless graph.
pub const TRIVIAL_THRESHOLD: usize = 10;

/// Default node-expansion budget for exact independence search.
pub const DEFAULT_ALPHA_BUDGET: u64 = 5_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PipelineError {
    #[error("target order must be at least 1")]
    ZeroOrder,
    #[error("even construction needs an even order, got {0}")]
    NotEven(usize),
    #[error("odd construction needs an odd order, got {0}")]
    NotOdd(usize),
}

/// Rule for picking the regularizer slack d at a trajectory step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DPolicy {
    /// Smallest d ≥ Δ−δ within the cap 4⌊n0/(Δ+1)⌋/9, bumped by one when
    /// an even output degree is required and d+Δ is odd (the bump is
    /// re-checked against the cap). Minimal d adds the fewest edges.
    #[default]
    MinimalSlack,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineConfig {
    pub seed: u64,
    /// Process re-runs (even path) or (k, F) re-pairings (odd path)
    /// attempted before falling back to the edgeless graph. Must be ≥ 1.
    pub max_retries: usize,
    pub d_policy: DPolicy,
    /// Forces the output degree d+Δ to be even; set on the even subcall
    /// of the odd path, where the patch H_{k,r} needs an even r.
    pub parity_required: bool,
    pub alpha_mode: AlphaMode,
    pub alpha_budget: u64,
    /// Serialization format for CLI emission; no effect on construction.
    pub format: GraphFormat,
    /// Optional target C for report coloring; echoed into certificates,
    /// never asserted.
    pub target_ratio: Option<f64>,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            seed: 0,
            max_retries: 8,
            d_policy: DPolicy::MinimalSlack,
            parity_required: false,
            alpha_mode: AlphaMode::Exact,
            alpha_budget: DEFAULT_ALPHA_BUDGET,
            format: GraphFormat::Graph6,
            target_ratio: None,
        }
    }
}

/// A trajectory step usable as the regularizer input, with its slack.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Snapshot {
    /// Number of process edges to replay (the step is 1-based, so this is
    /// also the step number).
    pub prefix_len: usize,
    pub d: usize,
    pub delta_max: usize,
    pub delta_min: usize,
}

/// Picks the latest trajectory step whose spread Δ−δ admits a valid slack
/// d under `policy`. Later steps carry more edges, which is what pushes
/// the independence number of the regularized output down, so the scan
/// runs backwards and stops at the first hit.
pub fn select_snapshot(
    result: &ProcessResult,
    parity_required: bool,
    policy: DPolicy,
) -> Option<Snapshot> {
    let n0 = result.final_graph.n();
    for rec in result.trajectory.iter().rev() {
        let spread = rec.max_deg - rec.min_deg;
        let cap = d_cap(n0, rec.max_deg);
        let d = match policy {
            DPolicy::MinimalSlack => {
                let mut d = spread;
                if parity_required && (d + rec.max_deg) % 2 == 1 {
                    d += 1;
                }
                d
            }
        };
        if d <= cap {
            return Some(Snapshot {
                prefix_len: rec.step,
                d,
                delta_max: rec.max_deg,
                delta_min: rec.min_deg,
            });
        }
    }
    None
}

/// Even-path result before certification. `degree` is the output's common
/// degree; the optional fields are absent on the trivial fallback.
struct EvenOutcome {
    graph: Graph,
    trivial: bool,
    d: Option<usize>,
    delta_max: Option<usize>,
    delta_min: Option<usize>,
    n0: Option<usize>,
    retries_used: usize,
    degree: usize,
}

fn trivial_outcome(n: usize, retries_used: usize) -> EvenOutcome {
    EvenOutcome {
        graph: edgeless(n),
        trivial: true,
        d: None,
        delta_max: None,
        delta_min: None,
        n0: None,
        retries_used,
        degree: 0,
    }
}

/// Core even-order builder: process on n/2 vertices, snapshot selection,
/// prefix replay, regularize. Falls back to the edgeless graph below the
/// trivial threshold or when every retry fails.
fn build_even(n_target: usize, cfg: &PipelineConfig, parity_required: bool) -> EvenOutcome {
    debug_assert!(n_target >= 2 && n_target.is_multiple_of(2));
    if n_target < TRIVIAL_THRESHOLD {
        return trivial_outcome(n_target, 0);
    }
    let n0 = n_target / 2;
    let mut master = ChaCha8Rng::seed_from_u64(cfg.seed);
    for attempt in 0..cfg.max_retries {
        let process_seed: u64 = master.random();
        let reg_seed: u64 = master.random();
        let result = run_process(n0, &ForbiddenPattern::K3, process_seed);
        let Some(snap) = select_snapshot(&result, parity_required, cfg.d_policy) else {
            continue;
        };
        let prefix = result.edge_sequence[..snap.prefix_len]
            .iter()
            .map(|e| (e.u(), e.v()));
        let base = Graph::from_edges(n0, prefix).expect("process prefix is a simple graph");
        let Ok(graph) = regularize(&base, snap.d, reg_seed) else {
            continue;
        };
        let degree = graph.is_regular().expect("regularizer output is regular");
        debug_assert_eq!(degree, snap.d + snap.delta_max);
        return EvenOutcome {
            graph,
            trivial: false,
            d: Some(snap.d),
            delta_max: Some(snap.delta_max),
            delta_min: Some(snap.delta_min),
            n0: Some(n0),
            retries_used: attempt,
            degree,
        };
    }
    trivial_outcome(n_target, cfg.max_retries)
}

fn certified(
    graph: Graph,
    params: CertParams,
    cfg: &PipelineConfig,
) -> (Graph, ConstructionCertificate) {
    let cert = certify(&graph, params, cfg.alpha_mode, cfg.alpha_budget);
    (graph, cert)
}

fn trivial_result(
    n: usize,
    cfg: &PipelineConfig,
    retries_used: usize,
) -> (Graph, ConstructionCertificate) {
    let params = CertParams {
        seed: Some(cfg.seed),
        path: Some("trivial".to_string()),
        retries_used: Some(retries_used),
        target_ratio: cfg.target_ratio,
        ..CertParams::default()
    };
    certified(edgeless(n), params, cfg)
}

/// Builds a regular triangle-free graph on an even number of vertices as
/// two regularized copies of a process snapshot.
pub fn construct_even(
    n_target: usize,
    cfg: &PipelineConfig,
) -> Result<(Graph, ConstructionCertificate), PipelineError> {
    if n_target == 0 {
        return Err(PipelineError::ZeroOrder);
    }
    if !n_target.is_multiple_of(2) {
        return Err(PipelineError::NotEven(n_target));
    }
    let out = build_even(n_target, cfg, cfg.parity_required);
    if out.trivial {
        return Ok(trivial_result(n_target, cfg, out.retries_used));
    }
    let params = CertParams {
        seed: Some(cfg.seed),
        path: Some("even".to_string()),
        d: out.d,
        max_degree: out.delta_max,
        min_degree: out.delta_min,
        k: None,
        n0: out.n0,
        retries_used: Some(out.retries_used),
        target_ratio: cfg.target_ratio,
    };
    Ok(certified(out.graph, params, cfg))
}

/// Smallest k ≡ 5 (mod 10) with 2k ≥ 5r, clamped into [5, n−2] so that
/// n0 = (n−k)/2 stays positive. k odd keeps n−k even.
fn pick_k(r: usize, n_target: usize, above: Option<usize>) -> Option<usize> {
    let lower = above.map_or(5, |k| k + 10);
    let max_k = {
        let limit = n_target - 2;
        if limit < 5 {
            return None;
        }
        ((limit - 5) / 10) * 10 + 5
    };
    let mut k = lower;
    while 2 * k < 5 * r {
        k += 10;
    }
    if above.is_none() {
        k = k.min(max_k);
        Some(k)
    } else if k <= max_k {
        Some(k)
    } else {
        None
    }
}

/// Builds a regular triangle-free graph on an odd number of vertices as
/// F ⊔ H_{k,r}, iterating on k until the even part's degree r fits
/// r ≤ 2k/5.
pub fn construct_odd(
    n_target: usize,
    cfg: &PipelineConfig,
) -> Result<(Graph, ConstructionCertificate), PipelineError> {
    if n_target.is_multiple_of(2) {
        return Err(PipelineError::NotOdd(n_target));
    }
    if n_target < TRIVIAL_THRESHOLD {
        return Ok(trivial_result(n_target, cfg, 0));
    }
    let mut master = ChaCha8Rng::seed_from_u64(cfg.seed);

    // Pilot run at the largest possible n0 to estimate the achievable
    // even degree, breaking the circular dependence of k and r.
    let pilot_seed: u64 = master.random();
    let pilot_n0 = (n_target - 5) / 2;
    let pilot = run_process(pilot_n0, &ForbiddenPattern::K3, pilot_seed);
    let r_hat =
        select_snapshot(&pilot, true, cfg.d_policy).map_or(0, |snap| snap.d + snap.delta_max);

    let mut k = pick_k(r_hat, n_target, None).expect("n_target ≥ 11 admits k = 5");
    let mut retries_used = 0;
    for _ in 0..cfg.max_retries {
        let n0 = (n_target - k) / 2;
        let f_seed: u64 = master.random();
        let f_cfg = PipelineConfig {
            seed: f_seed,
            ..cfg.clone()
        };
        let f = build_even(2 * n0, &f_cfg, true);
        retries_used += f.retries_used;
        let r = f.degree;
        debug_assert!(r.is_multiple_of(2), "parity_required makes F's degree even");
        if 5 * r <= 2 * k {
            let patch = h_kr(k, r).expect("even r ≤ 2k/5 and k ≡ 5 (mod 10)");
            let graph = f.graph.disjoint_union(&patch);
            debug_assert_eq!(graph.n(), n_target);
            let params = CertParams {
                seed: Some(cfg.seed),
                path: Some("odd".to_string()),
                d: f.d,
                max_degree: f.delta_max,
                min_degree: f.delta_min,
                k: Some(k),
                n0: Some(n0),
                retries_used: Some(retries_used),
                target_ratio: cfg.target_ratio,
            };
            return Ok(certified(graph, params, cfg));
        }
        // r does not fit this k: grow k (shrinking n0) when possible,
        // otherwise retry the same k with a fresh F.
        retries_used += 1;
        if let Some(bigger) = pick_k(r, n_target, Some(k)) {
            k = bigger;
        }
    }
    Ok(trivial_result(n_target, cfg, retries_used))
}

/// Theorem-level entry point: dispatches on parity, always re-verifying
/// the output into its certificate.
pub fn construct(
    n_target: usize,
    cfg: &PipelineConfig,
) -> Result<(Graph, ConstructionCertificate), PipelineError> {
    if n_target == 0 {
        return Err(PipelineError::ZeroOrder);
    }
    if n_target.is_multiple_of(2) {
        construct_even(n_target, cfg)
    } else {
        construct_odd(n_target, cfg)
    }
}
