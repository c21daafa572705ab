//! Homogeneous geodesic vectors on the `(2n+1)`-dimensional solvable group of
//! matrices
//!
//! ```text
//! | e^{z_0}            x_0 |
//! |     ...            ... |
//! |          e^{z_n}   x_n |
//! |  0  ...    0        1  |      z_0 = -(z_1 + ... + z_n)
//! ```
//!
//! with the left-invariant metric `sum e^{-2 z_i} dx_i^2 + lambda^2 sum dz_k^2`.
//!
//! * [`algebra`]: brackets, the geodesic-vector criterion, classification and
//!   maximal orthogonal sets.
//! * [`combinatorics`]: orthogonal sign tuples and Hadamard matrices.
//! * [`riemann`]: metric, Christoffel symbols, orbits and geodesic integration.

pub mod algebra;
pub mod combinatorics;
pub mod error;
pub mod exact;
pub mod params;
pub mod riemann;

pub use error::{Error, Result};
pub use params::ModelParams;
