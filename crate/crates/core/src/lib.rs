//! Exact cluster algebras attached to triangulated bordered surfaces.
//!
//! The crate is organised bottom-up:
//!
//! * [`semifields`]: tropical monomials, positive reals and their deformed sums.
//! * [`exchange`]: exchange matrices, exact rational functions, seeds, mutation,
//!   ŷ-dynamics, rescaling and exchange-graph enumeration.
//! * [`surface`]: marked surfaces, ideal and tagged triangulations, flips and
//!   signed adjacency matrices.
//! * [`lamination`]: integral laminations in shear coordinates and the
//!   coefficient systems they define.
//! * [`numeric`]: positive realizations and a hyperbolic ideal-polygon oracle.
//! * [`catalog`]: named example bundles with regression checks.

pub mod catalog;
pub mod error;
pub mod exchange;
pub mod lamination;
pub mod numeric;
pub mod semifields;
pub mod surface;

pub use error::{Error, Result};
