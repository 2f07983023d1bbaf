//! The random greedy H-free process: starting from the empty graph, add a
//! uniformly random edge among all pairs whose addition creates no copy of
//! H, until no legal pair remains.
//!
//! The K3 specialization tracks the set of open pairs (non-edges whose
//! endpoints share no neighbour) incrementally: adding (u, v) closes
//! (u, v) itself, every open (u, w) with w ∈ N(v), and every open (v, w)
//! with w ∈ N(u). Amortized O(Δ) per step instead of a Θ(n²) rescan.
//!
//! General H (at most 8 vertices) is honoured by a naive backtracking
//! subgraph search anchored at the candidate edge; it exists for
//! definitional faithfulness at small scale, not for speed.

use crate::graph::{Edge, Graph, GraphError};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ProcessError {
    #[error("forbidden pattern must have at least one edge")]
    PatternEdgeless,
    #[error("forbidden pattern limited to 8 vertices, got {0}")]
    PatternTooLarge(usize),
    #[error("graph contains a triangle; open pairs are defined for triangle-free graphs")]
    NotTriangleFree,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The fixed graph H whose copies the process avoids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ForbiddenPattern {
    /// The triangle, with the incremental open-pair fast path.
    K3,
    /// Any other pattern on ≤ 8 vertices with ≥ 1 edge.
    Generic(Graph),
}

impl ForbiddenPattern {
    pub fn generic(h: Graph) -> Result<Self, ProcessError> {
        if h.n() > 8 {
            return Err(ProcessError::PatternTooLarge(h.n()));
        }
        if h.edge_count() == 0 {
            return Err(ProcessError::PatternEdgeless);
        }
        Ok(ForbiddenPattern::Generic(h))
    }
}

/// Per-step snapshot taken after the step's edge is added. `open_pairs`
/// counts the still-addable pairs (K3 runs) or remaining legal candidates
/// (generic runs).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StepRecord {
    pub step: usize,
    pub max_deg: usize,
    pub min_deg: usize,
    pub open_pairs: usize,
}

/// A completed process run. `edge_sequence` lists the edges in insertion
/// order so any prefix can be replayed against the trajectory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProcessResult {
    pub final_graph: Graph,
    pub steps: usize,
    pub trajectory: Vec<StepRecord>,
    pub edge_sequence: Vec<Edge>,
    pub seed: u64,
}

impl ProcessResult {
    /// The trajectory as CSV with header `step,max_deg,min_deg,open_pairs`.
    pub fn trajectory_csv(&self) -> String {
        let mut out = String::from("step,max_deg,min_deg,open_pairs\n");
        for rec in &self.trajectory {
            out.push_str(&format!(
                "{},{},{},{}\n",
                rec.step, rec.max_deg, rec.min_deg, rec.open_pairs
            ));
        }
        out
    }
}

// ==================== copy detection ====================

/// True iff adding `e` to `g` creates a copy of `h` that uses `e`.
/// For K3 this is exactly a common-neighbour test.
pub fn creates_copy(g: &Graph, e: Edge, h: &ForbiddenPattern) -> bool {
    debug_assert!(!g.has_edge(e.u(), e.v()));
    match h {
        ForbiddenPattern::K3 => g.have_common_neighbor(e.u(), e.v()),
        ForbiddenPattern::Generic(h) => {
            let mut g2 = g.clone();
            g2.add_edge(e).expect("e is a non-edge of g");
            subgraph_copy_through(&g2, h, e)
        }
    }
}

/// Backtracking subgraph (not induced) search for a copy of `h` in `g`
/// mapping some edge of `h` onto `anchor`.
fn subgraph_copy_through(g: &Graph, h: &Graph, anchor: Edge) -> bool {
    let hn = h.n();
    let mut phi: Vec<Option<usize>> = vec![None; hn];
    let mut used = vec![false; g.n()];
    for he in h.edges() {
        for (a, b) in [(he.u(), he.v()), (he.v(), he.u())] {
            phi[a] = Some(anchor.u());
            phi[b] = Some(anchor.v());
            used[anchor.u()] = true;
            used[anchor.v()] = true;
            if extend_mapping(g, h, &mut phi, &mut used) {
                return true;
            }
            phi[a] = None;
            phi[b] = None;
            used[anchor.u()] = false;
            used[anchor.v()] = false;
        }
    }
    false
}

fn extend_mapping(g: &Graph, h: &Graph, phi: &mut Vec<Option<usize>>, used: &mut [bool]) -> bool {
    // Next vertex: unmapped with the most mapped neighbours (fail fast).
    let next = (0..h.n())
        .filter(|&x| phi[x].is_none())
        .max_by_key(|&x| h.neighbors(x).filter(|&y| phi[y].is_some()).count());
    let Some(x) = next else {
        return true;
    };
    for cand in 0..g.n() {
        if used[cand] {
            continue;
        }
        let consistent = h
            .neighbors(x)
            .filter_map(|y| phi[y])
            .all(|img| g.has_edge(cand, img));
        if consistent {
            phi[x] = Some(cand);
            used[cand] = true;
            if extend_mapping(g, h, phi, used) {
                return true;
            }
            phi[x] = None;
            used[cand] = false;
        }
    }
    false
}

// ==================== K3 open-pair tracking ====================

/// The set of open pairs of a triangle-free graph, supporting O(Δ)
/// amortized updates and O(1) uniform sampling. Order of the backing
/// vector is a deterministic function of the operation history.
pub struct K3OpenPairs {
    n: usize,
    pairs: Vec<(u32, u32)>,
    /// Position of pair (u, v), u < v, at index u·n + v; u32::MAX if absent.
    pos: Vec<u32>,
}

impl K3OpenPairs {
    /// All pairs of an edgeless graph on n vertices, lexicographic order.
    pub fn new(n: usize) -> Self {
        assert!(n < u32::MAX as usize && n * n < u32::MAX as usize);
        let mut pairs = Vec::with_capacity(n * (n.saturating_sub(1)) / 2);
        let mut pos = vec![u32::MAX; n * n];
        for u in 0..n {
            for v in u + 1..n {
                pos[u * n + v] = pairs.len() as u32;
                pairs.push((u as u32, v as u32));
            }
        }
        K3OpenPairs { n, pairs, pos }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn get(&self, idx: usize) -> (usize, usize) {
        let (u, v) = self.pairs[idx];
        (u as usize, v as usize)
    }

    fn remove(&mut self, u: usize, v: usize) {
        let (u, v) = (u.min(v), u.max(v));
        let slot = u * self.n + v;
        let at = self.pos[slot];
        if at == u32::MAX {
            return;
        }
        self.pos[slot] = u32::MAX;
        let last = self.pairs.len() - 1;
        self.pairs.swap(at as usize, last);
        self.pairs.pop();
        if (at as usize) <= last && !self.pairs.is_empty() && (at as usize) < self.pairs.len() {
            let (mu, mv) = self.pairs[at as usize];
            self.pos[mu as usize * self.n + mv as usize] = at;
        }
    }

    /// Updates for the insertion of edge (u, v) into `g`, where `g` already
    /// contains the edge: closes (u, v) and every open pair now sharing a
    /// neighbour through u or v.
    pub fn apply_edge(&mut self, g: &Graph, u: usize, v: usize) {
        debug_assert!(g.has_edge(u, v));
        self.remove(u, v);
        for w in g.neighbors(v) {
            if w != u {
                self.remove(u, w);
            }
        }
        for w in g.neighbors(u) {
            if w != v {
                self.remove(v, w);
            }
        }
    }

    /// The open pairs, sorted; for comparison against a from-scratch scan.
    pub fn sorted_pairs(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = self
            .pairs
            .iter()
            .map(|&(u, v)| (u as usize, v as usize))
            .collect();
        out.sort_unstable();
        out
    }
}

/// Counts non-edges whose endpoints have no common neighbour, by full
/// scan. Errors on graphs with a triangle, where the notion is not used.
pub fn open_pairs_count(g: &Graph) -> Result<usize, ProcessError> {
    if !g.is_triangle_free() {
        return Err(ProcessError::NotTriangleFree);
    }
    let mut count = 0;
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if !g.has_edge(u, v) && !g.have_common_neighbor(u, v) {
                count += 1;
            }
        }
    }
    Ok(count)
}

// ==================== the process ====================

/// Degree extremes maintained incrementally; both are monotone under edge
/// insertion.
struct DegreeTracker {
    histogram: Vec<usize>,
    min_deg: usize,
    max_deg: usize,
}

impl DegreeTracker {
    fn new(n: usize) -> Self {
        let mut histogram = vec![0usize; n.max(1)];
        histogram[0] = n;
        DegreeTracker {
            histogram,
            min_deg: 0,
            max_deg: 0,
        }
    }

    fn bump(&mut self, old_degree: usize) {
        if old_degree + 1 >= self.histogram.len() {
            self.histogram.resize(old_degree + 2, 0);
        }
        self.histogram[old_degree] -= 1;
        self.histogram[old_degree + 1] += 1;
        self.max_deg = self.max_deg.max(old_degree + 1);
        while self.histogram[self.min_deg] == 0 {
            self.min_deg += 1;
        }
    }
}

/// Runs the H-free process on n vertices to maximality. Identical
/// (n, h, seed) inputs produce identical results; the RNG is a single
/// ChaCha8 stream consumed once per step.
pub fn run_process(n: usize, h: &ForbiddenPattern, seed: u64) -> ProcessResult {
    match h {
        ForbiddenPattern::K3 => run_k3(n, seed),
        ForbiddenPattern::Generic(_) => run_generic(n, h, seed),
    }
}

fn run_k3(n: usize, seed: u64) -> ProcessResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    let mut open = K3OpenPairs::new(n);
    let mut degrees = DegreeTracker::new(n);
    let mut trajectory = Vec::new();
    let mut edge_sequence = Vec::new();

    while !open.is_empty() {
        let idx = rng.random_range(0..open.len());
        let (u, v) = open.get(idx);
        degrees.bump(g.degree(u));
        degrees.bump(g.degree(v));
        let e = Edge::new(u, v).unwrap();
        g.add_edge(e).unwrap();
        open.apply_edge(&g, u, v);
        edge_sequence.push(e);
        trajectory.push(StepRecord {
            step: edge_sequence.len(),
            max_deg: degrees.max_deg,
            min_deg: degrees.min_deg,
            open_pairs: open.len(),
        });
    }

    debug_assert!(g.is_triangle_free());
    ProcessResult {
        steps: edge_sequence.len(),
        final_graph: g,
        trajectory,
        edge_sequence,
        seed,
    }
}

fn run_generic(n: usize, h: &ForbiddenPattern, seed: u64) -> ProcessResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::new(n);
    let mut degrees = DegreeTracker::new(n);
    let mut trajectory = Vec::new();
    let mut edge_sequence = Vec::new();

    // Legality is monotone (pairs only become illegal), so refiltering the
    // candidate list after each step is sound.
    let mut candidates: Vec<Edge> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| Edge::new(u, v).unwrap()))
        .collect();
    candidates.retain(|&e| !creates_copy(&g, e, h));

    while !candidates.is_empty() {
        let idx = rng.random_range(0..candidates.len());
        let e = candidates.swap_remove(idx);
        degrees.bump(g.degree(e.u()));
        degrees.bump(g.degree(e.v()));
        g.add_edge(e).unwrap();
        candidates.retain(|&c| !creates_copy(&g, c, h));
        edge_sequence.push(e);
        trajectory.push(StepRecord {
            step: edge_sequence.len(),
            max_deg: degrees.max_deg,
            min_deg: degrees.min_deg,
            open_pairs: candidates.len(),
        });
    }

    ProcessResult {
        steps: edge_sequence.len(),
        final_graph: g,
        trajectory,
        edge_sequence,
        seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;

    #[test]
    fn k3_creates_copy_examples() {
        let p3 = path(3);
        assert!(creates_copy(
            &p3,
            Edge::new(0, 2).unwrap(),
            &ForbiddenPattern::K3
        ));

        // Every chord of C5 closes a triangle.
        let c5 = cycle(5);
        assert!(creates_copy(
            &c5,
            Edge::new(0, 2).unwrap(),
            &ForbiddenPattern::K3
        ));
        for u in 0..5 {
            for v in u + 1..5 {
                if !c5.has_edge(u, v) {
                    assert!(creates_copy(
                        &c5,
                        Edge::new(u, v).unwrap(),
                        &ForbiddenPattern::K3
                    ));
                }
            }
        }

        let e4 = edgeless(4);
        assert!(!creates_copy(
            &e4,
            Edge::new(0, 1).unwrap(),
            &ForbiddenPattern::K3
        ));
    }

    #[test]
    fn generic_c4_pattern() {
        let c4 = ForbiddenPattern::generic(cycle(4)).unwrap();

        // Diagonal of C4: no 4-cycle through the new edge.
        assert!(!creates_copy(&cycle(4), Edge::new(0, 2).unwrap(), &c4));

        // Closing P4 into C4.
        let p4 = path(4);
        assert!(creates_copy(&p4, Edge::new(0, 3).unwrap(), &c4));

        // K3 as a generic pattern agrees with the fast path.
        let k3 = ForbiddenPattern::generic(complete(3)).unwrap();
        let p3 = path(3);
        assert!(creates_copy(&p3, Edge::new(0, 2).unwrap(), &k3));
        assert!(!creates_copy(&edgeless(4), Edge::new(0, 1).unwrap(), &k3));
    }

    #[test]
    fn generic_pattern_validation() {
        assert_eq!(
            ForbiddenPattern::generic(edgeless(3)),
            Err(ProcessError::PatternEdgeless)
        );
        assert_eq!(
            ForbiddenPattern::generic(cycle(9)),
            Err(ProcessError::PatternTooLarge(9))
        );
    }

    #[test]
    fn open_pairs_examples() {
        assert_eq!(open_pairs_count(&edgeless(4)).unwrap(), 6);
        assert_eq!(open_pairs_count(&cycle(5)).unwrap(), 0);
        assert_eq!(open_pairs_count(&path(3)).unwrap(), 0);
        assert_eq!(
            open_pairs_count(&complete(3)),
            Err(ProcessError::NotTriangleFree)
        );
    }

    #[test]
    fn tiny_runs_are_forced() {
        let r2 = run_process(2, &ForbiddenPattern::K3, 0);
        assert_eq!(r2.steps, 1);
        assert_eq!(r2.final_graph.edge_count(), 1);

        for seed in 0..5 {
            let r3 = run_process(3, &ForbiddenPattern::K3, seed);
            assert_eq!(r3.steps, 2, "two edges always fit, the third closes K3");
            assert!(r3.final_graph.is_triangle_free());
        }

        let r1 = run_process(1, &ForbiddenPattern::K3, 0);
        assert_eq!(r1.steps, 0);
    }

    #[test]
    fn k3_run_is_maximal_triangle_free() {
        let res = run_process(100, &ForbiddenPattern::K3, 42);
        let g = &res.final_graph;
        assert!(g.is_triangle_free());
        for u in 0..g.n() {
            for v in u + 1..g.n() {
                if !g.has_edge(u, v) {
                    assert!(
                        g.have_common_neighbor(u, v),
                        "non-edge ({u}, {v}) is still addable"
                    );
                }
            }
        }
        assert_eq!(open_pairs_count(g).unwrap(), 0);
        assert_eq!(res.trajectory.last().unwrap().open_pairs, 0);
    }

    #[test]
    fn trajectory_matches_replay() {
        let res = run_process(60, &ForbiddenPattern::K3, 7);
        assert_eq!(res.trajectory.len(), res.steps);
        assert_eq!(res.edge_sequence.len(), res.steps);

        let mut g = Graph::new(60);
        for (i, &e) in res.edge_sequence.iter().enumerate() {
            g.add_edge(e).unwrap();
            let rec = res.trajectory[i];
            assert_eq!(rec.step, i + 1);
            assert_eq!(rec.max_deg, g.max_degree().unwrap());
            assert_eq!(rec.min_deg, g.min_degree().unwrap());
            assert_eq!(rec.open_pairs, open_pairs_count(&g).unwrap());
        }
        assert_eq!(g, res.final_graph);
    }

    #[test]
    fn incremental_open_pairs_match_scan() {
        // Set-level equality after every step of a real run.
        let res = run_process(50, &ForbiddenPattern::K3, 13);
        let mut g = Graph::new(50);
        let mut open = K3OpenPairs::new(50);
        for &e in &res.edge_sequence {
            g.add_edge(e).unwrap();
            open.apply_edge(&g, e.u(), e.v());
            let mut scan = Vec::new();
            for u in 0..50 {
                for v in u + 1..50 {
                    if !g.has_edge(u, v) && !g.have_common_neighbor(u, v) {
                        scan.push((u, v));
                    }
                }
            }
            assert_eq!(open.sorted_pairs(), scan);
        }
    }

    #[test]
    fn determinism_and_seed_sensitivity() {
        let a = run_process(80, &ForbiddenPattern::K3, 5);
        let b = run_process(80, &ForbiddenPattern::K3, 5);
        assert_eq!(a, b);

        let c = run_process(80, &ForbiddenPattern::K3, 6);
        assert_ne!(a.edge_sequence, c.edge_sequence);
    }

    #[test]
    fn generic_c4_free_run() {
        let c4 = ForbiddenPattern::generic(cycle(4)).unwrap();
        let res = run_process(12, &c4, 3);
        let g = &res.final_graph;

        // No C4 in the final graph: brute scan over vertex quadruples.
        for a in 0..12 {
            for b in 0..12 {
                for c in 0..12 {
                    for d in 0..12 {
                        let distinct = a < b && a < c && a < d && b != c && c != d && b != d;
                        if distinct
                            && g.has_edge(a, b)
                            && g.has_edge(b, c)
                            && g.has_edge(c, d)
                            && g.has_edge(d, a)
                        {
                            panic!("C4 found: {a}-{b}-{c}-{d}");
                        }
                    }
                }
            }
        }

        // Maximality: every remaining non-edge would close a C4.
        for u in 0..12 {
            for v in u + 1..12 {
                if !g.has_edge(u, v) {
                    assert!(creates_copy(g, Edge::new(u, v).unwrap(), &c4));
                }
            }
        }
    }

    #[test]
    fn trajectory_csv_shape() {
        let res = run_process(10, &ForbiddenPattern::K3, 1);
        let csv = res.trajectory_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("step,max_deg,min_deg,open_pairs"));
        assert_eq!(csv.lines().count(), res.steps + 1);
        let first = lines.next().unwrap();
        assert!(first.starts_with("1,"));
    }
}
