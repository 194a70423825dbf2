//! Positive real realizations of patterns of geometric type, and a
//! hyperbolic ideal-polygon oracle for lambda lengths.

mod degeneration;
mod polygon;
mod realization;

pub use degeneration::{degeneration_experiment, DegenerationReport, DegenerationRow};
pub use polygon::{
    conjugate_lambda, grassmann_lambda, reconstruct_polygon, DecoratedIdealPolygon, HorocyclicSegment, IdealPoint,
};
pub use realization::{realize, Realization};
