//! Exchange matrices, exact rational functions, seeds and their mutations,
//! ŷ-dynamics, rescaling, and exchange-graph enumeration.

pub mod expr;
pub mod graph;
pub mod matrix;
pub mod poly;
pub mod rational;
pub mod rescale;
pub mod seed;
pub mod yhat;

pub use graph::{enumerate_exchange_graph, ExchangeGraph, Neighbor, PatternSeed};
pub use matrix::{mutate_extended, mutate_matrix, ExchangeMatrix, ExtendedMatrix};
pub use rational::{RationalFunction, SymbolNames};
pub use rescale::{is_normalized, rescale_pattern, tropical_propagate, verify_pattern, ScalarFamily};
pub use seed::{mutate_seed_geometric, mutate_seed_nonnormalized, GeometricSeed, Seed, SplitPolicy};
pub use yhat::{check_yhat_mutation, check_yhat_mutation_numeric, yhat, NumericSeed, YhatReport};

/// True when `f` is a Laurent polynomial in the cluster symbols, with
/// coefficients in the group ring of the coefficient symbols.
pub fn laurent_check(f: &RationalFunction) -> bool {
    f.is_laurent()
}
