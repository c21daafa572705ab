use std::fmt;
use std::ops::Neg;

use num_traits::Num;
use serde::Serialize;

use super::{bracket_unchecked, inner_unchecked, AlgebraVector};
use crate::error::Result;
use crate::params::ModelParams;

/// Default relative tolerance for the criterion on non-integral input.
pub const DEFAULT_TOL: f64 = 1e-9;

/// `<v, [v, e_j]>` for every basis element `e_j` in `X_0..X_n, Z_1..Z_n`.
///
/// Brackets land in the `X` span, so only the identity block of the metric
/// contributes and the values do not depend on `lambda`.
pub fn criterion_values<T>(v: &AlgebraVector<T>) -> Vec<T>
where
    T: Num + Copy + Neg<Output = T>,
{
    AlgebraVector::<T>::basis(v.n())
        .iter()
        .map(|e| {
            let w = bracket_unchecked(v, e);
            debug_assert!(w.b().iter().all(|x| x.is_zero()));
            v.a()
                .iter()
                .zip(w.a())
                .fold(T::zero(), |acc, (&p, &q)| acc + p * q)
        })
        .collect()
}

fn threshold(v: &AlgebraVector, params: &ModelParams, tol: f64) -> f64 {
    tol * inner_unchecked(v, v, params.lambda()).max(1.0)
}

/// Geodesic-vector predicate: `<v, [v, Y]> = 0` for every `Y`.
///
/// Integral inputs are decided exactly; otherwise each value must satisfy
/// `|<v, [v, e_j]>| <= tol * max(1, <v, v>)`. The zero vector passes.
pub fn is_geodesic_vector(v: &AlgebraVector, params: &ModelParams, tol: f64) -> Result<bool> {
    v.conforms(params)?;
    if let Some(exact) = v.to_exact() {
        return Ok(criterion_values(&exact).iter().all(|&x| x == 0));
    }
    let bound = threshold(v, params, tol);
    Ok(AlgebraVector::<f64>::basis(v.n()).iter().all(|e| {
        let w = bracket_unchecked(v, e);
        inner_unchecked(v, &w, params.lambda()).abs() <= bound
    }))
}

/// One equation of the closed-form system.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "index", rename_all = "snake_case")]
pub enum ConditionKind {
    /// `a_0 (b_1 + ... + b_n) = 0`
    TraceBalance,
    /// `a_i b_i = 0`
    Weight(usize),
    /// `a_0^2 - a_i^2 = 0`
    Balance(usize),
}

impl fmt::Display for ConditionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConditionKind::TraceBalance => write!(f, "a_0*(b_1+...+b_n) = 0"),
            ConditionKind::Weight(i) => write!(f, "a_{i}*b_{i} = 0"),
            ConditionKind::Balance(i) => write!(f, "a_0^2 - a_{i}^2 = 0"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConditionCheck {
    pub condition: ConditionKind,
    pub label: String,
    pub value: f64,
    pub holds: bool,
}

fn closed_form_values<T>(v: &AlgebraVector<T>) -> Vec<(ConditionKind, T)>
where
    T: Num + Copy + Neg<Output = T>,
{
    let a = v.a();
    let b = v.b();
    let sum_b = b.iter().fold(T::zero(), |acc, &x| acc + x);
    let mut out = Vec::with_capacity(2 * b.len() + 1);
    out.push((ConditionKind::TraceBalance, a[0] * sum_b));
    for i in 1..=b.len() {
        out.push((ConditionKind::Weight(i), a[i] * b[i - 1]));
    }
    for i in 1..=b.len() {
        out.push((ConditionKind::Balance(i), a[0] * a[0] - a[i] * a[i]));
    }
    out
}

/// Per-equation breakdown of the closed-form system.
pub fn closed_form_report(
    v: &AlgebraVector,
    params: &ModelParams,
    tol: f64,
) -> Result<Vec<ConditionCheck>> {
    v.conforms(params)?;
    let rows = if let Some(exact) = v.to_exact() {
        closed_form_values(&exact)
            .into_iter()
            .map(|(kind, x)| (kind, x as f64, x == 0))
            .collect::<Vec<_>>()
    } else {
        let bound = threshold(v, params, tol);
        closed_form_values(v)
            .into_iter()
            .map(|(kind, x)| (kind, x, x.abs() <= bound))
            .collect()
    };
    Ok(rows
        .into_iter()
        .map(|(condition, value, holds)| ConditionCheck {
            condition,
            label: condition.to_string(),
            value,
            holds,
        })
        .collect())
}

/// Closed-form geodesic conditions:
/// `a_0 (b_1 + ... + b_n) = 0`, `a_i b_i = 0` and `a_0^2 = a_i^2` for `i = 1..n`.
pub fn closed_form_conditions(v: &AlgebraVector, params: &ModelParams, tol: f64) -> Result<bool> {
    Ok(closed_form_report(v, params, tol)?.iter().all(|c| c.holds))
}
