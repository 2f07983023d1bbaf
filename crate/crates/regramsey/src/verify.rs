//! Exact and heuristic verification: independence number, regularity,
//! triangle-freeness, and certificate assembly.
//!
//! The exact solver is branch and bound for maximum independent set,
//! branching on a maximum-degree vertex (include it and delete its closed
//! neighbourhood, or exclude it), with three standard ingredients:
//!
//! - degree ≤ 1 vertices are included outright (some optimum contains them);
//! - once every remaining degree is exactly 2 the residue is a disjoint
//!   union of cycles and is solved in closed form;
//! - pruning by |current| + |remaining| − |greedy matching|, a clique-cover
//!   bound that is strong on triangle-free instances.
//!
//! The budget is a node-expansion count, not wall clock, so identical
//! inputs always yield identical outputs. Budget exhaustion is a valid
//! outcome: the result degrades to a witnessed lower bound.

use crate::graph::Graph;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Outcome of an independence-number computation.
///
/// `witness` is an independent set of size `lower`; `upper` is present iff
/// the exact search completed, in which case `lower == upper == α(G)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaResult {
    pub lower: usize,
    pub upper: Option<usize>,
    pub witness: Vec<usize>,
    pub exact: bool,
}

impl AlphaResult {
    /// Builds a result and re-checks the witness by direct scan.
    fn checked(g: &Graph, witness: Vec<usize>, upper: Option<usize>, exact: bool) -> Self {
        for (i, &u) in witness.iter().enumerate() {
            for &v in &witness[i + 1..] {
                assert!(!g.has_edge(u, v), "witness is not independent: ({u}, {v})");
            }
        }
        if exact {
            assert_eq!(upper, Some(witness.len()));
        }
        AlphaResult {
            lower: witness.len(),
            upper,
            witness,
            exact,
        }
    }
}

// ==================== bitset helpers ====================

fn bs_new(words: usize) -> Vec<u64> {
    vec![0u64; words]
}

fn bs_set(w: &mut [u64], i: usize) {
    w[i / 64] |= 1 << (i % 64);
}

fn bs_get(w: &[u64], i: usize) -> bool {
    (w[i / 64] >> (i % 64)) & 1 == 1
}

fn bs_clear(w: &mut [u64], i: usize) {
    w[i / 64] &= !(1 << (i % 64));
}

fn bs_count(w: &[u64]) -> usize {
    w.iter().map(|x| x.count_ones() as usize).sum()
}

fn bs_and_count(a: &[u64], b: &[u64]) -> usize {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x & y).count_ones() as usize)
        .sum()
}

/// Removes from `a` every bit set in `b`.
fn bs_subtract(a: &mut [u64], b: &[u64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x &= !y;
    }
}

fn bs_first(w: &[u64]) -> Option<usize> {
    w.iter()
        .enumerate()
        .find(|(_, &word)| word != 0)
        .map(|(idx, &word)| idx * 64 + word.trailing_zeros() as usize)
}

fn bs_first_and(a: &[u64], b: &[u64]) -> Option<usize> {
    for (idx, (x, y)) in a.iter().zip(b).enumerate() {
        let w = x & y;
        if w != 0 {
            return Some(idx * 64 + w.trailing_zeros() as usize);
        }
    }
    None
}

fn bs_iter(w: &[u64]) -> impl Iterator<Item = usize> + '_ {
    w.iter().enumerate().flat_map(|(idx, &word)| {
        let mut word = word;
        std::iter::from_fn(move || {
            if word == 0 {
                None
            } else {
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(idx * 64 + b)
            }
        })
    })
}

// ==================== exact solver ====================

struct MisSolver {
    /// Open neighbourhoods as bitsets over component-local indices.
    adj: Vec<Vec<u64>>,
    budget_left: u64,
    exhausted: bool,
    best: Vec<usize>,
}

impl MisSolver {
    /// Greedy maximal matching size within `allowed`; every independent set
    /// misses at least one endpoint per matched edge.
    fn matching_bound(&self, allowed: &[u64]) -> usize {
        let mut avail = allowed.to_vec();
        let mut pairs = 0;
        for v in bs_iter(allowed) {
            if !bs_get(&avail, v) {
                continue;
            }
            if let Some(w) = bs_first_and(&self.adj[v], &avail) {
                bs_clear(&mut avail, v);
                bs_clear(&mut avail, w);
                pairs += 1;
            }
        }
        pairs
    }

    /// Exact α of a disjoint union of cycles (every degree is exactly 2),
    /// appending alternate vertices of each cycle to `current`.
    fn solve_cycles(&self, allowed: &[u64], current: &mut Vec<usize>) {
        let mut left = allowed.to_vec();
        while let Some(start) = bs_first(&left) {
            let mut cycle = vec![start];
            bs_clear(&mut left, start);
            let mut v = start;
            while let Some(w) = bs_first_and(&self.adj[v], &left) {
                cycle.push(w);
                bs_clear(&mut left, w);
                v = w;
            }
            for i in (0..cycle.len() - 1).step_by(2) {
                if i + 1 < cycle.len() {
                    current.push(cycle[i]);
                }
            }
        }
    }

    fn dfs(&mut self, mut allowed: Vec<u64>, current: &mut Vec<usize>) {
        let entry_len = current.len();
        if self.exhausted || self.budget_left == 0 {
            self.exhausted = true;
            return;
        }
        self.budget_left -= 1;

        loop {
            // One scan: locate a minimum-degree and a maximum-degree vertex.
            let mut min_v = usize::MAX;
            let mut min_deg = usize::MAX;
            let mut max_v = usize::MAX;
            let mut max_deg = 0;
            let mut count = 0;
            for v in bs_iter(&allowed) {
                let deg = bs_and_count(&self.adj[v], &allowed);
                if deg < min_deg {
                    min_deg = deg;
                    min_v = v;
                }
                if deg > max_deg || max_v == usize::MAX {
                    max_deg = deg;
                    max_v = v;
                }
                count += 1;
            }

            if count == 0 {
                if current.len() > self.best.len() {
                    self.best = current.clone();
                }
                break;
            }

            if min_deg <= 1 {
                // Some optimum contains every degree ≤ 1 vertex.
                current.push(min_v);
                bs_subtract(&mut allowed, &self.adj[min_v].clone());
                bs_clear(&mut allowed, min_v);
                continue;
            }

            if max_deg == 2 {
                // Residue is a disjoint union of cycles.
                self.solve_cycles(&allowed, current);
                if current.len() > self.best.len() {
                    self.best = current.clone();
                }
                break;
            }

            if current.len() + count - self.matching_bound(&allowed) <= self.best.len() {
                break;
            }

            // Include branch first: deepest descents reach good incumbents early.
            let v = max_v;
            let mut included = allowed.clone();
            bs_subtract(&mut included, &self.adj[v]);
            bs_clear(&mut included, v);
            current.push(v);
            self.dfs(included, current);
            current.pop();

            bs_clear(&mut allowed, v);
            self.dfs(allowed, current);
            break;
        }
        current.truncate(entry_len);
    }
}

/// Deterministic greedy maximal independent set on component-local data,
/// used to seed the solver incumbent.
fn greedy_local(adj: &[Vec<u64>], m: usize) -> Vec<usize> {
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&v| (bs_count(&adj[v]), v));
    let mut blocked = vec![false; m];
    let mut out = Vec::new();
    for v in order {
        if !blocked[v] {
            out.push(v);
            for w in bs_iter(&adj[v]) {
                blocked[w] = true;
            }
        }
    }
    out
}

/// Computes the independence number by branch and bound, one connected
/// component at a time (α is additive over components), within a shared
/// node-expansion budget.
///
/// If the budget runs out the result keeps `exact = false` and reports the
/// best witnessed lower bound; components never reached fall back to the
/// greedy set. The witness is the first optimum in the canonical branch
/// order (include-first, maximum degree, ties to the smallest index), so
/// equal inputs give equal outputs.
pub fn independence_number_exact(g: &Graph, budget: u64) -> AlphaResult {
    let mut witness: Vec<usize> = Vec::new();
    let mut exact = true;
    let mut budget_left = budget;

    for comp in g.components() {
        let m = comp.len();
        let words = m.div_ceil(64).max(1);
        // Re-index the component to 0..m; comp is sorted.
        let local = |v: usize| comp.binary_search(&v).unwrap();
        let mut adj = vec![bs_new(words); m];
        for (i, &v) in comp.iter().enumerate() {
            for w in g.neighbors(v) {
                bs_set(&mut adj[i], local(w));
            }
        }

        let mut solver = MisSolver {
            adj,
            budget_left,
            exhausted: false,
            best: Vec::new(),
        };
        solver.best = greedy_local(&solver.adj, m);
        let mut full = bs_new(words);
        for i in 0..m {
            bs_set(&mut full, i);
        }
        let mut current = Vec::new();
        solver.dfs(full, &mut current);

        if solver.exhausted {
            exact = false;
        }
        budget_left = solver.budget_left;
        witness.extend(solver.best.iter().map(|&i| comp[i]));
    }

    witness.sort_unstable();
    let upper = exact.then_some(witness.len());
    AlphaResult::checked(g, witness, upper, exact)
}

/// Seeded greedy maximal independent set: vertices considered in ascending
/// degree with a seed-shuffled tie order; every excluded vertex has a chosen
/// neighbour, so the result is maximal and a valid lower-bound witness.
pub fn greedy_independent_set(g: &Graph, seed: u64) -> Vec<usize> {
    let n = g.n();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(&mut rng);
    let mut rank = vec![0usize; n];
    for (pos, &v) in order.iter().enumerate() {
        rank[v] = pos;
    }
    let mut verts: Vec<usize> = (0..n).collect();
    verts.sort_by_key(|&v| (g.degree(v), rank[v]));

    let mut blocked = vec![false; n];
    let mut out = Vec::new();
    for v in verts {
        if !blocked[v] {
            out.push(v);
            for w in g.neighbors(v) {
                blocked[w] = true;
            }
        }
    }
    out.sort_unstable();
    out
}

// ==================== certificates ====================

/// How the certificate's independence bound is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlphaMode {
    Exact,
    Greedy,
}

/// Construction parameters echoed into the certificate. All fields are
/// optional; absent ones are omitted from the JSON.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct CertParams {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub path: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub max_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub min_degree: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub n0: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub retries_used: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub target_ratio: Option<f64>,
}

/// Machine-checkable record of the Ramsey properties of a built graph.
/// Every field is recomputed from the graph itself, never trusted from the
/// builder.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstructionCertificate {
    pub n: usize,
    /// Common degree when regular, `null` otherwise.
    pub r: Option<usize>,
    pub regular: bool,
    pub triangle_free: bool,
    pub alpha_lower: usize,
    pub alpha_upper: Option<usize>,
    pub alpha_exact: bool,
    pub ratio_lower: Option<f64>,
    pub ratio_upper: Option<f64>,
    pub witness: Vec<usize>,
    pub params: CertParams,
}

/// α / √(n·ln n) with the natural logarithm; undefined for n ≤ 1.
pub fn alpha_ratio(n: usize, alpha: usize) -> Option<f64> {
    if n <= 1 {
        return None;
    }
    Some(alpha as f64 / ((n as f64) * (n as f64).ln()).sqrt())
}

/// Certifies `g` from scratch: regularity and triangle-freeness exactly,
/// α per `mode` (greedy uses `params.seed`, default 0, as its tie seed).
pub fn certify(
    g: &Graph,
    params: CertParams,
    mode: AlphaMode,
    budget: u64,
) -> ConstructionCertificate {
    let r = g.is_regular();
    let alpha = match mode {
        AlphaMode::Exact => independence_number_exact(g, budget),
        AlphaMode::Greedy => {
            let w = greedy_independent_set(g, params.seed.unwrap_or(0));
            AlphaResult::checked(g, w, None, false)
        }
    };
    ConstructionCertificate {
        n: g.n(),
        r,
        regular: r.is_some(),
        triangle_free: g.is_triangle_free(),
        alpha_lower: alpha.lower,
        alpha_upper: alpha.upper,
        alpha_exact: alpha.exact,
        ratio_lower: alpha_ratio(g.n(), alpha.lower),
        ratio_upper: alpha.upper.and_then(|u| alpha_ratio(g.n(), u)),
        witness: alpha.witness,
        params,
    }
}

impl ConstructionCertificate {
    /// Pretty JSON with a trailing newline; byte-stable for equal inputs.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::*;
    use crate::graph::{Edge, Graph};
    use rand::{Rng, SeedableRng};

    /// Oracle: maximum independent set by subset DP over all 2^n masks.
    fn brute_alpha(g: &Graph) -> usize {
        let n = g.n();
        assert!(n <= 20);
        let adj: Vec<u32> = (0..n)
            .map(|v| g.neighbors(v).fold(0u32, |m, w| m | 1 << w))
            .collect();
        let mut independent = vec![false; 1 << n];
        independent[0] = true;
        let mut best = 0;
        for mask in 1u32..(1 << n) {
            let low = mask.trailing_zeros() as usize;
            let rest = mask & (mask - 1);
            let ok = independent[rest as usize] && adj[low] & mask == 0;
            independent[mask as usize] = ok;
            if ok {
                best = best.max(mask.count_ones() as usize);
            }
        }
        best
    }

    fn assert_maximal(g: &Graph, set: &[usize]) {
        let inside: Vec<bool> = {
            let mut v = vec![false; g.n()];
            for &x in set {
                v[x] = true;
            }
            v
        };
        for v in 0..g.n() {
            if !inside[v] {
                assert!(
                    g.neighbors(v).any(|w| inside[w]),
                    "vertex {v} could be added"
                );
            }
        }
    }

    #[test]
    fn exact_alpha_on_named_graphs() {
        let cases = [
            (cycle(5), 2),
            (petersen(), 4),
            (cycle(9), 4),
            (edgeless(6), 6),
            (complete(5), 1),
            (complete_bipartite(3, 3), 3),
        ];
        for (g, want) in cases {
            let res = independence_number_exact(&g, 1 << 20);
            assert!(res.exact);
            assert_eq!(res.lower, want);
            assert_eq!(res.upper, Some(want));
            assert_eq!(res.witness.len(), want);
        }
    }

    #[test]
    fn exact_alpha_is_additive_over_components() {
        let g = petersen().disjoint_union(&petersen());
        let res = independence_number_exact(&g, 1 << 20);
        assert_eq!(res.upper, Some(8));
    }

    #[test]
    fn exact_matches_subset_enumeration() {
        // 200 seeded random graphs on up to 18 vertices.
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let n = rng.random_range(1..=18);
            let p = rng.random_range(0.05..0.95);
            let mut g = Graph::new(n);
            for u in 0..n {
                for v in u + 1..n {
                    if rng.random_bool(p) {
                        g.add_edge(Edge::new(u, v).unwrap()).unwrap();
                    }
                }
            }
            let res = independence_number_exact(&g, 1 << 24);
            assert!(res.exact, "budget must suffice at n ≤ 18");
            assert_eq!(res.upper.unwrap(), brute_alpha(&g));
        }
    }

    #[test]
    fn budget_exhaustion_degrades_to_lower_bound() {
        let res = independence_number_exact(&petersen(), 1);
        assert!(!res.exact);
        assert_eq!(res.upper, None);
        assert!(res.lower >= 3, "greedy incumbent survives");
        assert_eq!(res.witness.len(), res.lower);
    }

    #[test]
    fn exact_is_deterministic() {
        let g = petersen().disjoint_union(&cycle(9));
        let a = independence_number_exact(&g, 1 << 20);
        let b = independence_number_exact(&g, 1 << 20);
        assert_eq!(a, b);
    }

    #[test]
    fn greedy_set_examples() {
        let all = greedy_independent_set(&edgeless(6), 3);
        assert_eq!(all, vec![0, 1, 2, 3, 4, 5]);

        let side = greedy_independent_set(&complete_bipartite(3, 3), 11);
        assert_eq!(side.len(), 3);
        assert_maximal(&complete_bipartite(3, 3), &side);

        let c6 = cycle(6);
        let s = greedy_independent_set(&c6, 5);
        assert!(s.len() >= 2);
        assert_maximal(&c6, &s);
    }

    #[test]
    fn greedy_is_seed_deterministic() {
        let g = petersen();
        assert_eq!(
            greedy_independent_set(&g, 42),
            greedy_independent_set(&g, 42)
        );
    }

    #[test]
    fn certify_two_petersens() {
        let g = petersen().disjoint_union(&petersen());
        let cert = certify(&g, CertParams::default(), AlphaMode::Exact, 1 << 20);
        assert_eq!(cert.n, 20);
        assert_eq!(cert.r, Some(3));
        assert!(cert.regular);
        assert!(cert.triangle_free);
        assert_eq!(cert.alpha_upper, Some(8));
        assert!(cert.alpha_exact);
    }

    #[test]
    fn certify_edgeless_nine() {
        let cert = certify(&edgeless(9), CertParams::default(), AlphaMode::Exact, 1000);
        assert_eq!(cert.r, Some(0));
        assert_eq!(cert.alpha_upper, Some(9));
        let ratio = cert.ratio_upper.unwrap();
        assert!((ratio - 2.023_877_2).abs() < 1e-6, "got {ratio}");
    }

    #[test]
    fn ratio_undefined_at_tiny_n() {
        assert_eq!(alpha_ratio(0, 0), None);
        assert_eq!(alpha_ratio(1, 1), None);
        assert!(alpha_ratio(2, 1).is_some());
    }

    #[test]
    fn certificate_json_round_trip() {
        let cert = certify(
            &petersen(),
            CertParams {
                seed: Some(9),
                path: Some("even".into()),
                d: Some(0),
                ..CertParams::default()
            },
            AlphaMode::Exact,
            1 << 16,
        );
        let text = cert.to_json();
        for key in [
            "\"n\"",
            "\"r\"",
            "\"regular\"",
            "\"triangle_free\"",
            "\"alpha_lower\"",
            "\"alpha_upper\"",
            "\"alpha_exact\"",
            "\"ratio_lower\"",
            "\"ratio_upper\"",
            "\"witness\"",
            "\"params\"",
        ] {
            assert!(text.contains(key), "missing {key}");
        }
        let back: ConstructionCertificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back, cert);
        // Omitted params stay omitted.
        assert!(!text.contains("retries_used"));
    }

    #[test]
    fn greedy_mode_certificate_has_no_upper() {
        let cert = certify(&cycle(9), CertParams::default(), AlphaMode::Greedy, 0);
        assert!(!cert.alpha_exact);
        assert_eq!(cert.alpha_upper, None);
        assert_eq!(cert.ratio_upper, None);
        assert!(cert.alpha_lower >= 3);
    }
}
