//! p-spectral radii of r-uniform hypergraphs and the α-normal labelings that
//! certify them.
//!
//! The crate is `no_std` (with `alloc`) when built without the default `std`
//! feature. Everything here is pure computation; file handling and the
//! command-line frontend live in the `uhs` crate.
//!
//! The main entry points:
//!
//! * [`UniformHypergraph`] and its combinatorics ([`hypergraph`]).
//! * [`spectral::solve_p_spectral`], which computes λ^(p)(G) and an eigenvector.
//! * [`labeling`], which converts between eigenvectors and labelings and
//!   classifies a labeling as normal, subnormal or supernormal.
//! * [`constructions`] and [`analysis`], the closed forms for composite
//!   hypergraphs and the inequality/monotonicity diagnostics.
#![cfg_attr(not(feature = "std"), no_std)]
// `!(x > y)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

extern crate alloc;

pub mod analysis;
pub mod constructions;
mod error;
mod float;
pub mod hypergraph;
pub mod labeling;
mod linalg;
pub mod spectral;

pub use error::{Error, Result};
pub use hypergraph::{DegreeProfile, UniformHypergraph};
pub use labeling::{LabelClass, Labeling, LabelingVerdict, PVector};
pub use spectral::{SolverOptions, SpectralResult};
