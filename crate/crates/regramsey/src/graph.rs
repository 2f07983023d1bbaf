//! Simple undirected graphs on dense integer vertices.
//!
//! Every construction in this crate is index arithmetic over copies, shifts
//! and color classes, so vertices are `0..n` with no labels. Adjacency is
//! kept in sorted sets so that neighbourhood intersection (the triangle
//! test) runs in time linear in the degree sum.

use std::collections::BTreeSet;
use thiserror::Error;

/// Errors from graph construction and mutation.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge ({u}, {v}) already present")]
    DuplicateEdge { u: usize, v: usize },
    #[error("self-loop ({0}, {0}) rejected")]
    SelfLoop(usize),
    #[error("operation requires at least one vertex")]
    EmptyGraph,
}

/// An undirected edge in canonical order `u < v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge {
    u: usize,
    v: usize,
}

impl Edge {
    /// Builds an edge, normalizing endpoint order. Rejects self-loops.
    pub fn new(a: usize, b: usize) -> Result<Self, GraphError> {
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        Ok(Edge {
            u: a.min(b),
            v: a.max(b),
        })
    }

    pub fn u(&self) -> usize {
        self.u
    }

    pub fn v(&self) -> usize {
        self.v
    }
}

/// A simple undirected graph: no loops, no parallel edges.
///
/// Invariants maintained by every mutation:
/// - `v ∉ adjacency[v]`
/// - `u ∈ adjacency[v] ⇔ v ∈ adjacency[u]`
/// - `edge_count = (1/2) Σ_v |adjacency[v]|`
///
/// A finished graph is immutable in practice; concurrent reads are safe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adjacency: Vec<BTreeSet<usize>>,
    edge_count: usize,
}

impl Graph {
    /// An edgeless graph on `n` vertices.
    pub fn new(n: usize) -> Self {
        Graph {
            n,
            adjacency: vec![BTreeSet::new(); n],
            edge_count: 0,
        }
    }

    /// Builds a graph from an edge iterator; duplicates and loops are errors.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::new(n);
        for (a, b) in edges {
            g.add_edge(Edge::new(a, b)?)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Inserts an edge. Fails on out-of-range endpoints or duplicates.
    pub fn add_edge(&mut self, e: Edge) -> Result<(), GraphError> {
        if e.v >= self.n {
            return Err(GraphError::VertexOutOfRange {
                vertex: e.v,
                n: self.n,
            });
        }
        if self.adjacency[e.u].contains(&e.v) {
            return Err(GraphError::DuplicateEdge { u: e.u, v: e.v });
        }
        self.adjacency[e.u].insert(e.v);
        self.adjacency[e.v].insert(e.u);
        self.edge_count += 1;
        Ok(())
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adjacency[u].contains(&v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Sorted neighbours of `v`.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v].iter().copied()
    }

    pub(crate) fn neighbor_set(&self, v: usize) -> &BTreeSet<usize> {
        &self.adjacency[v]
    }

    /// All edges in canonical order, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        (0..self.n).flat_map(move |u| {
            self.adjacency[u]
                .range(u + 1..)
                .map(move |&v| Edge { u, v })
        })
    }

    pub fn max_degree(&self) -> Result<usize, GraphError> {
        self.degrees().max().ok_or(GraphError::EmptyGraph)
    }

    pub fn min_degree(&self) -> Result<usize, GraphError> {
        self.degrees().min().ok_or(GraphError::EmptyGraph)
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.adjacency.iter().map(|s| s.len())
    }

    /// The common degree if the graph is regular. The edgeless graph is
    /// 0-regular; the zero-vertex graph is vacuously 0-regular as well.
    pub fn is_regular(&self) -> Option<usize> {
        if self.n == 0 {
            return Some(0);
        }
        let d = self.degree(0);
        if (1..self.n).all(|v| self.degree(v) == d) {
            Some(d)
        } else {
            None
        }
    }

    /// True iff `u` and `v` have at least one common neighbour.
    pub fn have_common_neighbor(&self, u: usize, v: usize) -> bool {
        let (small, large) = if self.degree(u) <= self.degree(v) {
            (u, v)
        } else {
            (v, u)
        };
        self.adjacency[small]
            .iter()
            .any(|w| self.adjacency[large].contains(w))
    }

    /// True iff no three vertices are pairwise adjacent. Checks, for each
    /// edge, that the endpoint neighbourhoods are disjoint.
    pub fn is_triangle_free(&self) -> bool {
        self.edges().all(|e| !self.have_common_neighbor(e.u, e.v))
    }

    /// Concatenates two graphs on disjoint vertex sets; the vertices of
    /// `other` are shifted up by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n;
        let mut adjacency = self.adjacency.clone();
        adjacency.extend(
            other
                .adjacency
                .iter()
                .map(|s| s.iter().map(|&v| v + shift).collect()),
        );
        Graph {
            n: self.n + other.n,
            adjacency,
            edge_count: self.edge_count + other.edge_count,
        }
    }

    /// Vertex sets of the connected components, each sorted, ordered by
    /// smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for w in self.neighbors(v) {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Full invariant scan: symmetry, loop-freeness, cached edge count.
    pub fn check_invariants(&self) -> bool {
        let mut half_edges = 0usize;
        for v in 0..self.n {
            if self.adjacency[v].contains(&v) {
                return false;
            }
            for &w in &self.adjacency[v] {
                if w >= self.n || !self.adjacency[w].contains(&v) {
                    return false;
                }
            }
            half_edges += self.adjacency[v].len();
        }
        half_edges == 2 * self.edge_count
    }
}

/// Small named graphs used as fixtures and building blocks.
pub mod named {
    use super::Graph;

    pub fn edgeless(n: usize) -> Graph {
        Graph::new(n)
    }

    pub fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|v| (v - 1, v))).unwrap()
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|v| (v, (v + 1) % n))).unwrap()
    }

    pub fn complete(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Graph {
        Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).unwrap()
    }

    pub fn star(leaves: usize) -> Graph {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|v| (0, v))).unwrap()
    }

    /// The Petersen graph: outer 5-cycle, inner pentagram, spokes.
    pub fn petersen() -> Graph {
        let mut edges = Vec::new();
        for i in 0..5 {
            edges.push((i, (i + 1) % 5));
            edges.push((i, i + 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
        }
        Graph::from_edges(10, edges).unwrap()
    }
}
