//! Construction and verification of regular triangle-free graphs whose
//! independence number is O(√(n log n)).
//!
//! The pipeline in [`pipeline`] glues together four stages:
//!
//! 1. [`process`]: run the random triangle-free process to maximality,
//!    producing a dense triangle-free graph with small independence number.
//! 2. [`coloring`]: equitably color that graph with Δ+1 colors.
//! 3. [`regularize`]: take two copies, and inside each color class realize
//!    a bipartite complement-degree sequence between the copies
//!    ([`degrees`] provides the Gale–Ryser machinery), yielding a regular
//!    triangle-free graph on twice the order with at most twice the
//!    independence number.
//! 4. [`blowup`]: for odd target orders, patch with a regular
//!    triangle-free graph of matching degree built from a C5 blow-up
//!    minus 2-factors.
//!
//! [`verify`] certifies outputs exactly at desk scale: regularity,
//! triangle-freeness, and the independence number via branch and bound.

pub mod blowup;
pub mod coloring;
pub mod degrees;
pub mod graph;
pub mod io;
pub mod pipeline;
pub mod process;
pub mod regularize;
pub mod verify;

pub use graph::{Edge, Graph, GraphError};
