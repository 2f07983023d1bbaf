//! C5 blow-ups and their 2-factorizations, yielding the patch graphs
//! H_{k,r}: triangle-free r-regular graphs on k vertices for every even
//! r ≤ 2k/5 and k divisible by 5.
//!
//! Every 2j-regular graph splits into j edge-disjoint 2-factors
//! (Petersen). Constructively, per connected component: walk an Euler
//! circuit, orient its edges (in-degree = out-degree = j everywhere), view
//! the arcs as a j-regular bipartite out/in graph, and peel off j perfect
//! matchings; each matching gives every vertex one out-arc and one in-arc,
//! i.e. a spanning 2-regular subgraph.

use crate::graph::{Edge, Graph, GraphError};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum BlowupError {
    #[error("blow-up order must be a positive multiple of 5, got {0}")]
    BadBlowupOrder(usize),
    #[error("2-factorization needs a 2j-regular graph with j ≥ 1; got degree {0:?}")]
    NotEvenRegular(Option<usize>),
    #[error("H_(k,r) needs even r, got r = {0}")]
    OddR(usize),
    #[error("H_(k,r) needs r ≤ 2k/5, got r = {r} > {max_r}")]
    RTooLarge { r: usize, max_r: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// The balanced C5 blow-up: five parts of size k/5 on consecutive index
/// blocks, complete bipartite joins between cyclically adjacent parts.
/// (2k/5)-regular and triangle-free (any triangle would need two of its
/// vertices in one part or in non-adjacent parts).
pub fn c5_blowup(k: usize) -> Result<Graph, BlowupError> {
    if k == 0 || !k.is_multiple_of(5) {
        return Err(BlowupError::BadBlowupOrder(k));
    }
    let b = k / 5;
    let mut g = Graph::new(k);
    for part in 0..5 {
        let next = (part + 1) % 5;
        for i in 0..b {
            for j in 0..b {
                g.add_edge(Edge::new(part * b + i, next * b + j).unwrap())?;
            }
        }
    }
    debug_assert_eq!(g.is_regular(), Some(2 * k / 5));
    Ok(g)
}

/// Edge-disjoint spanning 2-regular subgraphs covering E(g).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwoFactorDecomposition {
    factors: Vec<Vec<Edge>>,
}

impl TwoFactorDecomposition {
    pub fn factors(&self) -> &[Vec<Edge>] {
        &self.factors
    }

    /// Checks all decomposition invariants against the source graph:
    /// factors are edge-disjoint, together they are exactly E(g), and each
    /// one touches every vertex exactly twice.
    pub fn verify(&self, g: &Graph) -> bool {
        let mut all: Vec<Edge> = Vec::new();
        for factor in &self.factors {
            let mut incidence = vec![0usize; g.n()];
            for e in factor {
                if !g.has_edge(e.u(), e.v()) {
                    return false;
                }
                incidence[e.u()] += 1;
                incidence[e.v()] += 1;
            }
            if incidence.iter().any(|&c| c != 2) {
                return false;
            }
            all.extend_from_slice(factor);
        }
        all.sort_unstable();
        let mut graph_edges: Vec<Edge> = g.edges().collect();
        graph_edges.sort_unstable();
        all == graph_edges
    }
}

/// Hierholzer's algorithm on one connected component with all degrees
/// even; returns the closed walk as a vertex sequence (consecutive pairs
/// enumerate each component edge exactly once).
fn euler_circuit(g: &Graph, component: &[usize]) -> Vec<usize> {
    let mut adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); g.n()];
    for &v in component {
        adj[v] = g.neighbor_set(v).clone();
    }
    let mut stack = vec![component[0]];
    let mut walk = Vec::new();
    while let Some(&v) = stack.last() {
        if let Some(&w) = adj[v].iter().next() {
            adj[v].remove(&w);
            adj[w].remove(&v);
            stack.push(w);
        } else {
            walk.push(v);
            stack.pop();
        }
    }
    walk
}

/// One perfect matching of a j-regular bipartite arc graph (out side →
/// in side over the same vertex set), by augmenting paths with
/// deterministic scan order. `out_adj` is consumed: matched arcs are
/// removed before returning.
fn peel_matching(vertices: &[usize], out_adj: &mut [BTreeSet<usize>]) -> Vec<(usize, usize)> {
    let n = out_adj.len();
    // match_in[v] = u when arc u→v is matched.
    let mut match_in: Vec<Option<usize>> = vec![None; n];
    let mut match_out: Vec<Option<usize>> = vec![None; n];

    fn augment(
        u: usize,
        out_adj: &[BTreeSet<usize>],
        match_in: &mut [Option<usize>],
        match_out: &mut [Option<usize>],
        seen: &mut [bool],
    ) -> bool {
        for &v in &out_adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            let free = match match_in[v] {
                None => true,
                Some(owner) => augment(owner, out_adj, match_in, match_out, seen),
            };
            if free {
                match_in[v] = Some(u);
                match_out[u] = Some(v);
                return true;
            }
        }
        false
    }

    for &u in vertices {
        if match_out[u].is_none() {
            let mut seen = vec![false; n];
            let ok = augment(u, out_adj, &mut match_in, &mut match_out, &mut seen);
            assert!(ok, "regular bipartite graph always has a perfect matching");
        }
    }

    let mut arcs = Vec::with_capacity(vertices.len());
    for &u in vertices {
        let v = match_out[u].unwrap();
        out_adj[u].remove(&v);
        arcs.push((u, v));
    }
    arcs
}

/// Splits a 2j-regular graph into exactly j edge-disjoint 2-factors.
pub fn two_factorize(g: &Graph) -> Result<TwoFactorDecomposition, BlowupError> {
    let degree = g.is_regular();
    let j = match degree {
        Some(d) if d >= 2 && d % 2 == 0 => d / 2,
        _ => return Err(BlowupError::NotEvenRegular(degree)),
    };

    let mut factors: Vec<Vec<Edge>> = vec![Vec::new(); j];
    for component in g.components() {
        // Orient the component along an Euler circuit: in = out = j.
        let walk = euler_circuit(g, &component);
        let mut out_adj: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); g.n()];
        for pair in walk.windows(2) {
            let fresh = out_adj[pair[0]].insert(pair[1]);
            debug_assert!(fresh, "each edge is oriented exactly once");
        }
        debug_assert!(component.iter().all(|&v| out_adj[v].len() == j));

        for factor in factors.iter_mut() {
            for (u, v) in peel_matching(&component, &mut out_adj) {
                factor.push(Edge::new(u, v).unwrap());
            }
        }
    }

    for factor in factors.iter_mut() {
        factor.sort_unstable();
    }
    let decomposition = TwoFactorDecomposition { factors };
    debug_assert!(decomposition.verify(g));
    Ok(decomposition)
}

/// H_{k,r}: the C5 blow-up on k vertices with (k/5 − r/2) of its 2-factors
/// deleted, leaving an r-regular triangle-free graph. Factors are deleted
/// in decomposition order.
pub fn h_kr(k: usize, r: usize) -> Result<Graph, BlowupError> {
    h_kr_seeded(k, r, None)
}

/// H_{k,r} with the factor deletion order permuted by a seed; `None` keeps
/// decomposition order. All choices are equally valid patch graphs.
pub fn h_kr_seeded(k: usize, r: usize, seed: Option<u64>) -> Result<Graph, BlowupError> {
    if !r.is_multiple_of(2) {
        return Err(BlowupError::OddR(r));
    }
    let blowup = c5_blowup(k)?;
    let max_r = 2 * k / 5;
    if r > max_r {
        return Err(BlowupError::RTooLarge { r, max_r });
    }
    if r == max_r {
        return Ok(blowup);
    }

    let decomposition = two_factorize(&blowup)?;
    let mut order: Vec<usize> = (0..decomposition.factors().len()).collect();
    if let Some(s) = seed {
        order.shuffle(&mut ChaCha8Rng::seed_from_u64(s));
    }
    let keep = r / 2; // delete k/5 − r/2, keep r/2
    let mut g = Graph::new(k);
    for &idx in order.iter().take(keep) {
        for e in &decomposition.factors()[idx] {
            g.add_edge(*e)?;
        }
    }
    assert_eq!(g.is_regular(), Some(r), "H_(k,r) must be r-regular");
    assert!(g.is_triangle_free(), "subgraph of a triangle-free graph");
    Ok(g)
}
