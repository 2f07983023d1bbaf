//! Equitable coloring with c ≥ Δ+1 colors: proper, with class sizes
//! differing by at most one.
//!
//! Existence is the Hajnal–Szemerédi theorem. The constructive route here
//! is a greedy proper coloring followed by rebalancing move-chains: a
//! vertex leaves a largest class for a class where it has no neighbour, or
//! displaces a single conflicting neighbour that continues the chain
//! (breadth-first over displaced vertices, each class entered at most
//! once). Every applied chain strictly shrinks Σ|class|², so rebalancing
//! terminates; dead ends trigger a seeded reshuffle and restart. Outputs
//! are always re-verified, and exhausting all restarts is an explicit
//! error, never a silent fallback.

use crate::graph::Graph;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ColoringError {
    #[error("{c} colors cannot be equitable-guaranteed: need at least Δ+1 = {min_colors}")]
    TooFewColors { c: usize, min_colors: usize },
    #[error("rebalancing search exhausted {attempts} seeded attempts")]
    Stuck { attempts: usize },
}

/// A proper coloring whose class sizes differ by at most one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquitableColoring {
    color_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    c: usize,
}

impl EquitableColoring {
    fn from_assignment(color_of: Vec<usize>, c: usize) -> Self {
        let mut classes = vec![Vec::new(); c];
        for (v, &col) in color_of.iter().enumerate() {
            classes[col].push(v);
        }
        // Vertices were scanned in ascending order, so classes are sorted.
        EquitableColoring {
            color_of,
            classes,
            c,
        }
    }

    pub fn c(&self) -> usize {
        self.c
    }

    pub fn color_of(&self, v: usize) -> usize {
        self.color_of[v]
    }

    /// Sorted vertex list of one class.
    pub fn class(&self, color: usize) -> &[usize] {
        &self.classes[color]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.len()).collect()
    }
}

/// True iff `coloring` is proper on `g`, internally consistent, and its
/// class sizes differ by at most one.
pub fn verify_equitable(g: &Graph, coloring: &EquitableColoring) -> bool {
    if coloring.color_of.len() != g.n() || coloring.classes.len() != coloring.c {
        return false;
    }
    if coloring.color_of.iter().any(|&col| col >= coloring.c) {
        return false;
    }
    // classes must be the exact inverse of color_of.
    let rebuilt = EquitableColoring::from_assignment(coloring.color_of.clone(), coloring.c);
    if rebuilt.classes != coloring.classes {
        return false;
    }
    if g.edges()
        .any(|e| coloring.color_of[e.u()] == coloring.color_of[e.v()])
    {
        return false;
    }
    let sizes = coloring.class_sizes();
    let (min, max) = match (sizes.iter().min(), sizes.iter().max()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => return true,
    };
    max - min <= 1
}

/// One rebalancing step: BFS over displaced vertices from a largest class,
/// looking for a chain that deposits a vertex into a class at least two
/// smaller. Returns false when no chain exists under the one-visit-per-class
/// rule.
fn rebalance_step(g: &Graph, color_of: &mut [usize], sizes: &mut [usize], c: usize) -> bool {
    let smax = *sizes.iter().max().unwrap();
    let source = (0..c).find(|&i| sizes[i] == smax).unwrap();

    // BFS state: a vertex that must leave its current class. parent[v] is
    // the vertex whose move displaces v (usize::MAX for chain starts).
    // Each class is entered by at most one chain vertex, so on success the
    // moves are disjoint and each mover's destination is simply the class
    // its successor vacated.
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut in_queue = vec![false; n];
    let mut class_taken = vec![false; c];
    class_taken[source] = true;

    let mut queue: std::collections::VecDeque<usize> = (0..n)
        .filter(|&v| color_of[v] == source)
        .inspect(|&v| in_queue[v] = true)
        .collect();

    while let Some(v) = queue.pop_front() {
        for target in 0..c {
            if class_taken[target] {
                continue;
            }
            let mut conflicts = g.neighbors(v).filter(|&w| color_of[w] == target);
            match (conflicts.next(), conflicts.next()) {
                (None, None) => {
                    // Settling in a class of size smax−1 is no improvement.
                    if sizes[target] + 2 <= smax {
                        // Apply the chain back to front: each mover enters
                        // the class its displaced successor just left, so
                        // every intermediate state stays proper.
                        let mut dest = target;
                        let mut mover = v;
                        loop {
                            let from = color_of[mover];
                            color_of[mover] = dest;
                            sizes[from] -= 1;
                            sizes[dest] += 1;
                            if parent[mover] == usize::MAX {
                                return true;
                            }
                            dest = from;
                            mover = parent[mover];
                        }
                    }
                }
                (Some(w), None) if !in_queue[w] => {
                    in_queue[w] = true;
                    class_taken[target] = true;
                    parent[w] = v;
                    queue.push_back(w);
                }
                _ => {}
            }
        }
    }
    false
}

/// Seeded greedy proper coloring: vertices in shuffled order, each into
/// its smallest admissible class (lowest index on ties). With c ≥ Δ+1 an
/// admissible class always exists.
fn greedy_coloring(g: &Graph, c: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut color_of = vec![usize::MAX; n];
    let mut sizes = vec![0usize; c];
    for &v in &order {
        let mut blocked = vec![false; c];
        for w in g.neighbors(v) {
            if color_of[w] != usize::MAX {
                blocked[color_of[w]] = true;
            }
        }
        let best = (0..c)
            .filter(|&i| !blocked[i])
            .min_by_key(|&i| (sizes[i], i))
            .expect("c >= Δ+1 guarantees an admissible class");
        color_of[v] = best;
        sizes[best] += 1;
    }
    color_of
}

const REBALANCE_ATTEMPTS: usize = 64;

/// Produces an equitable coloring of `g` with exactly `c` classes.
/// Deterministic for fixed (g, c, seed). Errors if c ≤ Δ(g) (existence is
/// not guaranteed there) or if every seeded attempt dead-ends.
pub fn equitable_color(g: &Graph, c: usize, seed: u64) -> Result<EquitableColoring, ColoringError> {
    let max_degree = if g.n() == 0 {
        0
    } else {
        g.max_degree().unwrap()
    };
    if c < max_degree + 1 {
        return Err(ColoringError::TooFewColors {
            c,
            min_colors: max_degree + 1,
        });
    }

    for attempt in 0..REBALANCE_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(
            seed.wrapping_add((attempt as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)),
        );
        let mut color_of = greedy_coloring(g, c, &mut rng);
        let mut sizes = vec![0usize; c];
        for &col in &color_of {
            sizes[col] += 1;
        }

        let balanced = loop {
            let max = *sizes.iter().max().unwrap();
            let min = *sizes.iter().min().unwrap();
            if max - min <= 1 {
                break true;
            }
            if !rebalance_step(g, &mut color_of, &mut sizes, c) {
                break false;
            }
        };

        if balanced {
            let coloring = EquitableColoring::from_assignment(color_of, c);
            assert!(
                verify_equitable(g, &coloring),
                "rebalanced coloring failed re-verification"
            );
            return Ok(coloring);
        }
    }
    Err(ColoringError::Stuck {
        attempts: REBALANCE_ATTEMPTS,
    })
}
