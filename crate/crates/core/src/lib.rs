//! Exact polynomial-matrix algebra for linear time-invariant networks in the
//! behavioral setting.
//!
//! A system is described by a kernel representation `R(σ) w = 0`, where `R`
//! is a polynomial matrix in the shift `σ` and `w` is the full signal vector.
//! Nothing is pre-labelled as input or output: input/output partitions are
//! derived from `R`. On top of this the crate provides
//!
//! - output cardinality and McMillan degree of a behavior ([`behavior`]),
//! - networks of components over a shared signal space, their incidence
//!   matrices, regularity tests and merging ([`network`]),
//! - signal/system hypergraphs and the directed graph of an SVAR model, with
//!   GraphViz export ([`graphs`]),
//! - conversion between SVAR models and regular feedback networks ([`svar`]),
//! - finite-horizon trajectory checks and forward simulation ([`sim`]).
//!
//! All arithmetic is exact over the rationals. The crate is `no_std` and only
//! needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod behavior;
mod error;
pub mod graphs;
pub mod network;
pub mod polyalg;
pub mod sim;
pub mod svar;

pub use behavior::{IOPartition, KernelRep, SignalBlock, SignalSpace};
pub use error::{Error, Result};
pub use graphs::{DiGraph, HyperEdge, Hypergraph};
pub use network::{
    Component, ComponentPartition, IncidenceMatrix, Network, NetworkAnalysis, PartitionSearch,
    RegularityMode,
};
pub use polyalg::{
    rat, ratio, BinaryMatrix, Degree, Poly, PolyMatrix, RatMatrix, Rational, UnimodularCert,
};
pub use sim::Trajectory;
pub use svar::{ColumnPermutation, SvarModel};
