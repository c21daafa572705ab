//! Mutually orthogonal `+1`/`-1` tuples and Hadamard matrices.
//!
//! Everything here runs in exact integer arithmetic.

mod hadamard;
mod search;
mod signs;

pub use hadamard::{
    construction_for_order, family_to_hadamard, format_matrix, hadamard_to_family, is_hadamard,
    is_prime, kronecker, kronecker_construction, paley, paley_capped, parse_matrix, reachable_orders, sylvester,
    sylvester_capped, Construction, SquareSignMatrix, DEFAULT_ORDER_CAP,
};
pub use search::{
    balanced_canonical_tuples, max_orthogonal_tuples, orthogonal_pair_count, Budget,
    SearchOptions, SearchOutcome, DEFAULT_CERTIFY_CAP,
};
pub use signs::{Maximality, MaximalityProof, OrthogonalFamily, SignTuple};

/// Dot product of two sign tuples.
pub fn dot(u: &SignTuple, v: &SignTuple) -> crate::error::Result<i64> {
    u.dot(v)
}
