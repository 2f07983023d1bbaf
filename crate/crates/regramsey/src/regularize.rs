//! The regularization gadget: from a near-regular triangle-free graph G on
//! n vertices, build a (d+Δ)-regular triangle-free graph on 2n vertices
//! with at most doubled independence number.
//!
//! Take two copies of G and one equitable coloring with Δ+1 classes shared
//! by both copies. Inside each class C, every vertex v still needs
//! d + Δ − deg(v) edges; that complement sequence satisfies the a=2
//! sufficient condition whenever Δ−δ ≤ d and 9d ≤ 4⌊n/(Δ+1)⌋, so it is
//! realized as a simple bipartite graph between the two copies of C.
//! Classes are independent, hence cross edges never close a triangle, and
//! any independent set meets each copy in an independent set of G.

use crate::coloring::{equitable_color, ColoringError, EquitableColoring};
use crate::degrees::{realize_bipartite, DegreeSequence};
use crate::graph::{Edge, Graph};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RegularizeError {
    #[error("input graph is empty")]
    EmptyGraph,
    #[error("input graph has a triangle")]
    NotTriangleFree,
    #[error("degree spread Δ−δ = {spread} exceeds d = {d}")]
    SpreadExceedsD { spread: usize, d: usize },
    #[error("d = {d} exceeds the class-size bound: 9d > 4⌊n/(Δ+1)⌋ = {bound}")]
    DExceedsCap { d: usize, bound: usize },
    #[error(transparent)]
    Coloring(#[from] ColoringError),
}

/// One color class with its within-graph degree profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassProfile {
    /// Class vertices, sorted ascending.
    pub vertices: Vec<usize>,
    /// Their degrees in G, sorted ascending (the proof's d′_1 ≤ … ≤ d′_m).
    pub degrees: Vec<usize>,
    /// Complement degrees d + Δ − d′, sorted descending.
    pub complement: Vec<usize>,
}

/// Everything the gadget needs, checked against the Proposition's bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularizationPlan {
    pub d: usize,
    pub delta_max: usize,
    pub delta_min: usize,
    pub coloring: EquitableColoring,
    pub class_profiles: Vec<ClassProfile>,
}

/// Largest d admitted by the class-size bound, as exact integers:
/// the biggest d with 9d ≤ 4⌊n/(Δ+1)⌋.
pub fn d_cap(n: usize, delta_max: usize) -> usize {
    4 * (n / (delta_max + 1)) / 9
}

/// Builds the gadget plan with a seeded coloring. Verifies the
/// Proposition's precondition Δ−δ ≤ d, 9d ≤ 4⌊n/(Δ+1)⌋ and, per class,
/// the a=2 sufficient condition on the complement sequence.
pub fn plan_seeded(g: &Graph, d: usize, seed: u64) -> Result<RegularizationPlan, RegularizeError> {
    if g.n() == 0 {
        return Err(RegularizeError::EmptyGraph);
    }
    if !g.is_triangle_free() {
        return Err(RegularizeError::NotTriangleFree);
    }
    let delta_max = g.max_degree().unwrap();
    let delta_min = g.min_degree().unwrap();
    let spread = delta_max - delta_min;
    if spread > d {
        return Err(RegularizeError::SpreadExceedsD { spread, d });
    }
    let bound = 4 * (g.n() / (delta_max + 1));
    if 9 * d > bound {
        return Err(RegularizeError::DExceedsCap { d, bound });
    }

    let coloring = equitable_color(g, delta_max + 1, seed)?;
    let class_profiles = coloring
        .classes()
        .iter()
        .map(|vertices| {
            let mut degrees: Vec<usize> = vertices.iter().map(|&v| g.degree(v)).collect();
            degrees.sort_unstable();
            // Ascending degrees map to descending complements.
            let complement: Vec<usize> = degrees.iter().map(|&dp| d + delta_max - dp).collect();
            // The a=2 instantiation, exact: d_1 ≤ 2·d_m and 9·d_1 ≤ 8m.
            let m = vertices.len();
            if m > 0 {
                let d1 = complement[0];
                let dm = *complement.last().unwrap();
                assert!(d1 <= 2 * dm, "class violates d_1 ≤ 2d_m");
                assert!(9 * d1 <= 8 * m, "class violates d_1 ≤ 8m/9");
            }
            ClassProfile {
                vertices: vertices.clone(),
                degrees,
                complement,
            }
        })
        .collect();

    Ok(RegularizationPlan {
        d,
        delta_max,
        delta_min,
        coloring,
        class_profiles,
    })
}

/// Plan with the default coloring seed 0.
pub fn plan(g: &Graph, d: usize) -> Result<RegularizationPlan, RegularizeError> {
    plan_seeded(g, d, 0)
}

/// Runs the gadget. Copy 1 lives on 0..n, copy 2 on n..2n. The output is
/// (d+Δ)-regular and triangle-free; both are asserted by full scan before
/// returning. The seed drives the coloring and the within-class vertex
/// permutations, so distinct seeds give distinct (equally valid) outputs.
pub fn regularize(g: &Graph, d: usize, seed: u64) -> Result<Graph, RegularizeError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let coloring_seed: u64 = rng.random();
    let plan = plan_seeded(g, d, coloring_seed)?;

    let n = g.n();
    let mut out = g.disjoint_union(g);
    for profile in &plan.class_profiles {
        if profile.vertices.is_empty() {
            continue;
        }
        // Left and right orders: vertices sorted by complement degree
        // descending, seed-shuffled within ties (shuffle first, stable
        // sort after).
        let complement_of = |v: usize| plan.d + plan.delta_max - g.degree(v);
        let mut left_order = profile.vertices.clone();
        left_order.shuffle(&mut rng);
        left_order.sort_by_key(|&v| std::cmp::Reverse(complement_of(v)));
        let mut right_order = profile.vertices.clone();
        right_order.shuffle(&mut rng);
        right_order.sort_by_key(|&v| std::cmp::Reverse(complement_of(v)));

        let seq = DegreeSequence::from_descending(profile.complement.clone())
            .expect("complement profile is sorted descending");
        let bip = realize_bipartite(&seq, &seq)
            .expect("per-class sequence satisfies the a=2 condition, hence Gale-Ryser");
        for (i, j) in bip.edges() {
            out.add_edge(Edge::new(left_order[i], n + right_order[j]).unwrap())
                .expect("cross edges are fresh");
        }
    }

    assert_eq!(
        out.is_regular(),
        Some(d + plan.delta_max),
        "gadget output must be (d+Δ)-regular"
    );
    assert!(
        out.is_triangle_free(),
        "gadget output must be triangle-free"
    );
    Ok(out)
}
