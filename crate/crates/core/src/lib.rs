//! Exact-arithmetic analysis of sextic double solids.
//!
//! A sextic double solid is the double cover of P³ branched along a sextic
//! surface `S = {F = 0}`, i.e. the hypersurface `u² = F(x, y, z, w)` in
//! weighted projective space P(1,1,1,1,3). This crate finds the singular
//! locus of `S` by exhaustive search over finite projective spaces,
//! certifies that every singular point is a node, computes the
//! Q-factoriality defect from the conditions the nodes impose on quintic
//! forms, studies lines through nodes, and assembles the birational
//! classification report.
//!
//! The crate is `no_std` (with `alloc`). The `parallel` feature fans the
//! singular-point search out over a rayon pool; results are merged in
//! canonical order so output does not depend on the worker count.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod census;
pub mod defect;
mod error;
pub mod fields;
pub mod gallery;
pub mod geometry;
pub mod linalg;
pub mod lines;
pub mod poly;
pub mod singular;
pub mod upoly;

pub use error::{Error, Result};
pub use fields::{Field, FieldSpec, FiniteField, Fq, Scalar};
pub use geometry::{EnumerationGuard, Line, Plane, ProjPoint};
pub use poly::{BinaryForm, HomoPoly, Monomial};

/// Version string embedded into every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
