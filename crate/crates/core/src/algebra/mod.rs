//! Lie algebra of the solvable matrix group, its inner product at the
//! identity, and the geodesic-vector criterion.
//!
//! The algebra is spanned by `X_0..X_n` (the translation column of the
//! `(n+2) x (n+2)` matrix generator) and `Z_1..Z_n`, where `Z_k` is the trace
//! free diagonal generator `E_kk - E_00`. The only nonzero basis brackets are
//! `[Z_k, X_k] = X_k` and `[Z_k, X_0] = -X_0`.

mod classify;
mod criterion;
mod vector;

use std::ops::Neg;

use nalgebra::DMatrix;
use num_traits::Num;

use crate::error::{Error, Result};
use crate::params::ModelParams;

pub use classify::{
    classify, independent_geodesic_family, max_orthogonal_geodesic_set, membership,
    ClassificationReport, ClassifyOptions, GeodesicClass, IndependentFamily,
    OrthogonalGeodesicSet, ParityCase, SampleCertificate,
};
pub use criterion::{
    closed_form_conditions, closed_form_report, criterion_values, is_geodesic_vector,
    ConditionCheck, ConditionKind, DEFAULT_TOL,
};
pub use vector::AlgebraVector;

fn check_pair<T>(u: &AlgebraVector<T>, v: &AlgebraVector<T>) -> Result<()>
where
    T: Num + Copy + Neg<Output = T>,
{
    if u.n() != v.n() {
        return Err(Error::DimensionMismatch {
            expected: 2 * u.n() + 1,
            found: 2 * v.n() + 1,
        });
    }
    Ok(())
}

/// Lie bracket `[u, v]`.
///
/// With `c`/`c'` the diagonal generator entries of `u`/`v`, the result has
/// `X_i` coefficient `c_i a'_i - c'_i a_i` and no `Z` component.
pub fn bracket<T>(
    u: &AlgebraVector<T>,
    v: &AlgebraVector<T>,
    params: &ModelParams,
) -> Result<AlgebraVector<T>>
where
    T: Num + Copy + Neg<Output = T>,
{
    u.conforms(params)?;
    v.conforms(params)?;
    Ok(bracket_unchecked(u, v))
}

pub(crate) fn bracket_unchecked<T>(u: &AlgebraVector<T>, v: &AlgebraVector<T>) -> AlgebraVector<T>
where
    T: Num + Copy + Neg<Output = T>,
{
    let n = u.n();
    let cu0 = u.c0();
    let cv0 = v.c0();
    let a = (0..=n)
        .map(|i| {
            let (cu, cv) = if i == 0 {
                (cu0, cv0)
            } else {
                (u.b()[i - 1], v.b()[i - 1])
            };
            cu * v.a()[i] - cv * u.a()[i]
        })
        .collect();
    AlgebraVector::new(a, vec![T::zero(); n]).expect("bracket preserves shape")
}

/// Inner product at the identity: `a.a' + lambda^2 b^T (I + J) b'`.
pub fn inner(u: &AlgebraVector, v: &AlgebraVector, params: &ModelParams) -> Result<f64> {
    u.conforms(params)?;
    v.conforms(params)?;
    check_pair(u, v)?;
    Ok(inner_unchecked(u, v, params.lambda()))
}

pub(crate) fn inner_unchecked(u: &AlgebraVector, v: &AlgebraVector, lambda: f64) -> f64 {
    let x: f64 = u.a().iter().zip(v.a()).map(|(p, q)| p * q).sum();
    let zz: f64 = u.b().iter().zip(v.b()).map(|(p, q)| p * q).sum();
    let su: f64 = u.b().iter().sum();
    let sv: f64 = v.b().iter().sum();
    x + lambda * lambda * (zz + su * sv)
}

/// Gram matrix of the inner product over `X_0..X_n, Z_1..Z_n`.
#[derive(Debug, Clone, PartialEq)]
pub struct InnerProductMatrix {
    gram: DMatrix<f64>,
}

impl InnerProductMatrix {
    pub fn new(params: &ModelParams) -> Self {
        let n = params.n();
        let dim = params.dim();
        let l2 = params.lambda() * params.lambda();
        let gram = DMatrix::from_fn(dim, dim, |r, c| {
            match (r <= n, c <= n) {
                (true, true) => f64::from(u8::from(r == c)),
                (false, false) => l2 * (1.0 + f64::from(u8::from(r == c))),
                _ => 0.0,
            }
        });
        Self { gram }
    }

    pub fn gram(&self) -> &DMatrix<f64> {
        &self.gram
    }

    pub fn is_positive_definite(&self) -> bool {
        self.gram.clone().cholesky().is_some()
    }

    pub fn is_symmetric(&self) -> bool {
        self.gram == self.gram.transpose()
    }
}
