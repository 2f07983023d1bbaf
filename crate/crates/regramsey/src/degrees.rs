//! Bipartite bidegree sequences: Gale–Ryser feasibility, a simple sufficient
//! condition with an exact rational threshold, greedy realization, and the
//! tight infeasible families showing the condition cannot be improved.

use crate::graph::GraphError;
use num_rational::Ratio;
use num_traits::ToPrimitive;
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum DegreeError {
    #[error("degree sequence must be sorted non-increasing (violated at index {0})")]
    NotSorted(usize),
    #[error("degree sequence must be nonempty")]
    Empty,
    #[error("parameter a must be ≥ 1, got {0}")]
    ParameterBelowOne(Ratio<i64>),
    #[error("tight family needs a > 1, got {0}")]
    ParameterNotAboveOne(Ratio<i64>),
    #[error("scale must be positive")]
    NonPositiveScale,
    #[error("tight family is non-integral for these parameters: {0} is not an integer")]
    NonIntegral(&'static str),
    #[error("bidegree pair is infeasible: {0}")]
    Infeasible(Infeasibility),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Why a bidegree pair admits no simple bipartite realization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Infeasibility {
    /// The two sides have different degree sums.
    SumMismatch { left_sum: usize, right_sum: usize },
    /// The dominance inequality fails first at prefix length `s`:
    /// Σ_i min(d_i, s) = `lhs` < `rhs` = Σ_{j ≤ s} d′_j.
    Dominance { s: usize, lhs: usize, rhs: usize },
}

impl Infeasibility {
    /// The witness index reported on the CLI; 0 encodes a sum mismatch.
    pub fn witness(&self) -> usize {
        match self {
            Infeasibility::SumMismatch { .. } => 0,
            Infeasibility::Dominance { s, .. } => *s,
        }
    }
}

impl std::fmt::Display for Infeasibility {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Infeasibility::SumMismatch {
                left_sum,
                right_sum,
            } => write!(f, "degree sums differ ({left_sum} vs {right_sum})"),
            Infeasibility::Dominance { s, lhs, rhs } => {
                write!(f, "dominance fails at s={s}: {lhs} < {rhs}")
            }
        }
    }
}

/// A degree sequence stored sorted non-increasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequence {
    values: Vec<usize>,
}

impl DegreeSequence {
    /// Builds a sequence from an arbitrary multiset of degrees.
    pub fn new(mut values: Vec<usize>) -> Self {
        values.sort_unstable_by(|a, b| b.cmp(a));
        DegreeSequence { values }
    }

    /// Accepts the values only if already sorted non-increasing.
    pub fn from_descending(values: Vec<usize>) -> Result<Self, DegreeError> {
        if let Some(i) = (1..values.len()).find(|&i| values[i] > values[i - 1]) {
            return Err(DegreeError::NotSorted(i));
        }
        Ok(DegreeSequence { values })
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.values.iter().sum()
    }
}

/// The sufficient condition's parameter `a ≥ 1` with its exact threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RealizationCondition {
    a: Ratio<i64>,
}

impl RealizationCondition {
    pub fn new(a: Ratio<i64>) -> Result<Self, DegreeError> {
        if a < Ratio::from_integer(1) {
            return Err(DegreeError::ParameterBelowOne(a));
        }
        Ok(RealizationCondition { a })
    }

    pub fn from_parts(numerator: i64, denominator: i64) -> Result<Self, DegreeError> {
        Self::new(Ratio::new(numerator, denominator))
    }

    pub fn a(&self) -> Ratio<i64> {
        self.a
    }

    /// 4am/(a+1)², kept rational so boundary cases compare exactly.
    pub fn threshold_ratio(&self, m: usize) -> Ratio<i64> {
        let a = self.a;
        let ap1 = a + Ratio::from_integer(1);
        Ratio::from_integer(4) * a * Ratio::from_integer(m as i64) / (ap1 * ap1)
    }
}

/// A simple bipartite graph as a left-to-right adjacency map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    m_left: usize,
    m_right: usize,
    adjacency: Vec<BTreeSet<usize>>,
}

impl BipartiteGraph {
    pub fn new(m_left: usize, m_right: usize) -> Self {
        BipartiteGraph {
            m_left,
            m_right,
            adjacency: vec![BTreeSet::new(); m_left],
        }
    }

    pub fn m_left(&self) -> usize {
        self.m_left
    }

    pub fn m_right(&self) -> usize {
        self.m_right
    }

    pub fn has_edge(&self, l: usize, r: usize) -> bool {
        self.adjacency[l].contains(&r)
    }

    /// Inserts (l, r); duplicate insertion is a caller bug.
    fn add_edge(&mut self, l: usize, r: usize) {
        assert!(l < self.m_left && r < self.m_right);
        let fresh = self.adjacency[l].insert(r);
        assert!(fresh, "duplicate bipartite edge ({l}, {r})");
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(l, set)| set.iter().map(move |&r| (l, r)))
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(|s| s.len()).sum()
    }

    pub fn left_degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(|s| s.len()).collect()
    }

    pub fn right_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.m_right];
        for (_, r) in self.edges() {
            deg[r] += 1;
        }
        deg
    }
}

/// Full Gale–Ryser check. `Ok(())` iff the sums agree and for every prefix
/// length 1 ≤ s ≤ len(d2): Σ_i min(d_i, s) ≥ Σ_{j ≤ s} d′_j. On failure the
/// error carries the first violated prefix.
pub fn gale_ryser_check(d: &DegreeSequence, d2: &DegreeSequence) -> Result<(), Infeasibility> {
    let left_sum = d.sum();
    let right_sum = d2.sum();
    if left_sum != right_sum {
        return Err(Infeasibility::SumMismatch {
            left_sum,
            right_sum,
        });
    }
    let mut rhs = 0usize;
    for (idx, &dj) in d2.values().iter().enumerate() {
        let s = idx + 1;
        rhs += dj;
        let lhs: usize = d.values().iter().map(|&di| di.min(s)).sum();
        if lhs < rhs {
            return Err(Infeasibility::Dominance { s, lhs, rhs });
        }
    }
    // Simplicity caps follow from the inequalities plus equal sums.
    debug_assert!(d.values().first().is_none_or(|&d1| d1 <= d2.len()));
    debug_assert!(d2.values().first().is_none_or(|&d1| d1 <= d.len()));
    Ok(())
}

pub fn gale_ryser_feasible(d: &DegreeSequence, d2: &DegreeSequence) -> bool {
    gale_ryser_check(d, d2).is_ok()
}

/// Evaluates both sides of the dominance inequality at one prefix length:
/// (Σ_i min(d_i, s), Σ_{j ≤ s} d′_j). Useful for exhibiting a structural
/// witness that is not the first violated prefix.
pub fn dominance_sums(d: &DegreeSequence, d2: &DegreeSequence, s: usize) -> (usize, usize) {
    assert!(s >= 1 && s <= d2.len());
    let lhs = d.values().iter().map(|&di| di.min(s)).sum();
    let rhs = d2.values()[..s].iter().sum();
    (lhs, rhs)
}

/// The sufficient condition: d_1 ≤ a·d_m and d_1 ≤ 4am/(a+1)², both compared
/// exactly. Implies Gale–Ryser feasibility of the pair (d, d).
pub fn corollary_feasible(
    d: &DegreeSequence,
    cond: &RealizationCondition,
) -> Result<bool, DegreeError> {
    if d.is_empty() {
        return Err(DegreeError::Empty);
    }
    let d1 = Ratio::from_integer(d.values()[0] as i64);
    let dm = Ratio::from_integer(*d.values().last().unwrap() as i64);
    Ok(d1 <= cond.a() * dm && d1 <= cond.threshold_ratio(d.len()))
}

/// Realizes a feasible pair by the greedy rule: process left vertices in
/// non-increasing degree order, connecting each to the right vertices of
/// largest remaining demand (ties to the smallest index). Left vertex `i`
/// receives degree `d.values()[i]`, right vertex `j` degree `d2.values()[j]`.
pub fn realize_bipartite(
    d: &DegreeSequence,
    d2: &DegreeSequence,
) -> Result<BipartiteGraph, DegreeError> {
    gale_ryser_check(d, d2).map_err(DegreeError::Infeasible)?;

    let mut g = BipartiteGraph::new(d.len(), d2.len());
    let mut demand: Vec<usize> = d2.values().to_vec();
    for (l, &need) in d.values().iter().enumerate() {
        let mut order: Vec<usize> = (0..demand.len()).collect();
        order.sort_by_key(|&j| (std::cmp::Reverse(demand[j]), j));
        assert!(
            need <= order.len() && order[..need].iter().all(|&j| demand[j] > 0),
            "greedy realization stalled on a feasible pair"
        );
        for &j in &order[..need] {
            demand[j] -= 1;
            g.add_edge(l, j);
        }
    }
    debug_assert_eq!(g.left_degrees(), d.values());
    debug_assert_eq!(
        {
            let mut r = g.right_degrees();
            r.sort_unstable_by(|a, b| b.cmp(a));
            r
        },
        d2.values()
    );
    Ok(g)
}

/// The tight infeasible family for a > 1: m = scale·(a+1)² entries, the
/// first s = 2m/(a+1) equal to ⌊4am/(a+1)²⌋+1 and the rest to 4m/(a+1)².
/// Errors when m or s is non-integral. The output always fails Gale–Ryser
/// against itself.
pub fn tight_counterexample(a: Ratio<i64>, scale: usize) -> Result<DegreeSequence, DegreeError> {
    if a <= Ratio::from_integer(1) {
        return Err(DegreeError::ParameterNotAboveOne(a));
    }
    if scale == 0 {
        return Err(DegreeError::NonPositiveScale);
    }
    let scale_r = Ratio::from_integer(scale as i64);
    let ap1 = a + Ratio::from_integer(1);
    let m_r = scale_r * ap1 * ap1;
    if !m_r.is_integer() {
        return Err(DegreeError::NonIntegral("m = scale·(a+1)²"));
    }
    let s_r = Ratio::from_integer(2) * scale_r * ap1;
    if !s_r.is_integer() {
        return Err(DegreeError::NonIntegral("s = 2m/(a+1)"));
    }
    let m = m_r.to_integer() as usize;
    let s = s_r.to_integer() as usize;
    let tail = 4 * scale; // 4m/(a+1)² = 4·scale, always integral
    let threshold = Ratio::from_integer(4) * a * m_r / (ap1 * ap1);
    let head = threshold.floor().to_i64().unwrap() as usize + 1;

    let mut values = vec![head; s];
    values.extend(std::iter::repeat_n(tail, m - s));
    let seq = DegreeSequence::from_descending(values)?;
    debug_assert!(!gale_ryser_feasible(&seq, &seq));
    Ok(seq)
}
