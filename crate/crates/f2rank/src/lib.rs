//! Exact rank distributions of graph-representing matrices over the
//! two-element field.
//!
//! A symmetric matrix over GF(2) represents a graph when its off-diagonal
//! support is exactly the adjacency relation; the diagonal is free. This
//! crate counts, for a given graph, how many of the `2^n` representing
//! matrices have each rank — by brute-force enumeration, by closed-form
//! counting formulas, and by a degree-lowering recurrence for graphs with an
//! induced path on all but one vertex — and classifies which of those graphs
//! are represented by more matrices of rank `n-1` than of rank `n`.
//!
//! The modules mirror that split:
//!
//! - [`f2`]: bit-packed GF(2) vectors and matrices (rank, nullspace,
//!   rowspace membership, graph completions).
//! - [`graphs`]: the graph model, named families, edge-list and graph6
//!   formats, and gadget decomposition.
//! - [`enumerate`]: exhaustive oracles over all diagonal completions.
//! - [`closedform`]: the counting formulas and family distributions.
//! - [`recurrence`]: the gadget recurrence for `A`/`B`, the signed
//!   quantities `alpha`/`beta`, and their sign classification.
//! - [`verify`]: the cross-check suites pitting every closed form against
//!   the brute-force oracles.
//! - [`cli`]: the `f2rank` command-line interface.

pub mod cli;
pub mod closedform;
pub mod enumerate;
pub mod error;
pub mod f2;
pub mod graphs;
pub mod recurrence;
pub mod verify;

pub use error::{Error, Result};
