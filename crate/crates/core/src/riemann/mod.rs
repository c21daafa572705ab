//! Coordinate Riemannian geometry of the group: metric field, connection,
//! one-parameter orbits, geodesic integration and residuals.
//!
//! The group is diffeomorphic to `R^{2n+1}` and everything is written in the
//! global coordinates `x_0..x_n, z_1..z_n`.

mod curve;
mod metric;

use nalgebra::{DMatrix, DVector};

use crate::algebra::AlgebraVector;
use crate::error::{Error, Result};
use crate::params::ModelParams;

pub use curve::{
    curve_csv_header, curve_csv_rows, read_curve_csv, write_curve_csv, CurveSample, GroupPoint,
};
pub use metric::{christoffel, metric_at, x_index, z_index, Christoffel};

/// Default integration step.
pub const DEFAULT_STEP: f64 = 1e-3;

/// Evenly spaced grid on `[0, t_max]` whose spacing does not exceed `step`.
pub fn uniform_grid(t_max: f64, step: f64) -> Result<Vec<f64>> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::InvalidStep(step));
    }
    if !(t_max.is_finite() && t_max > 0.0) {
        return Err(Error::InvalidGrid { min: 2 });
    }
    let m = ((t_max / step) - 1e-9).ceil().max(1.0) as usize;
    Ok((0..=m).map(|i| t_max * i as f64 / m as f64).collect())
}

fn check_grid(grid: &[f64], min: usize) -> Result<()> {
    let ok = grid.len() >= min
        && grid.iter().all(|t| t.is_finite())
        && grid.windows(2).all(|w| w[1] > w[0]);
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidGrid { min })
    }
}

/// `(e^{t c} - 1) / c` together with its limit `t` at `c = 0`.
#[inline]
fn phi(t: f64, c: f64) -> f64 {
    if c == 0.0 {
        t
    } else {
        (t * c).exp_m1() / c
    }
}

/// One-parameter orbit `t -> exp(t v)` through the identity.
///
/// With `c_0 = -(b_1 + ... + b_n)` and `c_k = b_k`: `z_k(t) = t b_k` and
/// `x_i(t) = a_i (e^{t c_i} - 1) / c_i`; velocities and accelerations are the
/// exact time derivatives.
pub fn orbit_curve(v: &AlgebraVector, grid: &[f64], params: &ModelParams) -> Result<CurveSample> {
    v.conforms(params)?;
    check_grid(grid, 2)?;
    let n = params.n();
    let c: Vec<f64> = (0..=n).map(|i| v.diag(i)).collect();
    let mut points = Vec::with_capacity(grid.len());
    let mut velocities = Vec::with_capacity(grid.len());
    let mut accelerations = Vec::with_capacity(grid.len());
    for &t in grid {
        let x = (0..=n).map(|i| v.a()[i] * phi(t, c[i])).collect();
        let z = v.b().iter().map(|b| t * b).collect();
        points.push(GroupPoint::new(x, z)?);

        let growth: Vec<f64> = c.iter().map(|ci| (t * ci).exp()).collect();
        let mut vel: Vec<f64> = (0..=n).map(|i| v.a()[i] * growth[i]).collect();
        vel.extend_from_slice(v.b());
        velocities.push(vel);

        let mut acc: Vec<f64> = (0..=n).map(|i| v.a()[i] * c[i] * growth[i]).collect();
        acc.extend(std::iter::repeat_n(0.0, n));
        accelerations.push(acc);
    }
    Ok(CurveSample {
        n,
        t: grid.to_vec(),
        points,
        velocities,
        accelerations: Some(accelerations),
    })
}

/// Right-hand side of the geodesic equation, `-Gamma^k_{ij} v^i v^j`.
fn geodesic_acceleration(coords: &[f64], vel: &[f64], params: &ModelParams) -> Vec<f64> {
    let p = GroupPoint::from_coords(coords, params.n()).expect("state has model dimension");
    christoffel(&p, params)
        .contract(vel, vel)
        .into_iter()
        .map(|x| -x)
        .collect()
}

fn rk4_step(q: &[f64], v: &[f64], h: f64, params: &ModelParams) -> (Vec<f64>, Vec<f64>) {
    let axpy = |base: &[f64], k: &[f64], s: f64| -> Vec<f64> {
        base.iter().zip(k).map(|(b, k)| b + s * k).collect()
    };
    let k1q = v.to_vec();
    let k1v = geodesic_acceleration(q, v, params);
    let q2 = axpy(q, &k1q, h / 2.0);
    let v2 = axpy(v, &k1v, h / 2.0);
    let k2v = geodesic_acceleration(&q2, &v2, params);
    let q3 = axpy(q, &v2, h / 2.0);
    let v3 = axpy(v, &k2v, h / 2.0);
    let k3v = geodesic_acceleration(&q3, &v3, params);
    let q4 = axpy(q, &v3, h);
    let v4 = axpy(v, &k3v, h);
    let k4v = geodesic_acceleration(&q4, &v4, params);
    let q_next = (0..q.len())
        .map(|i| q[i] + h / 6.0 * (k1q[i] + 2.0 * v2[i] + 2.0 * v3[i] + v4[i]))
        .collect();
    let v_next = (0..v.len())
        .map(|i| v[i] + h / 6.0 * (k1v[i] + 2.0 * k2v[i] + 2.0 * k3v[i] + k4v[i]))
        .collect();
    (q_next, v_next)
}

/// Integrates `gamma'' + Gamma(gamma', gamma') = 0` from `(p0, v0)` with
/// classical RK4. Each grid interval is split into equal substeps no longer
/// than `step`, so output nodes are hit exactly.
pub fn integrate_geodesic(
    p0: &GroupPoint,
    v0: &[f64],
    grid: &[f64],
    step: f64,
    params: &ModelParams,
) -> Result<CurveSample> {
    if !(step.is_finite() && step > 0.0) {
        return Err(Error::InvalidStep(step));
    }
    check_grid(grid, 2)?;
    let n = params.n();
    if p0.n() != n || v0.len() != params.dim() {
        return Err(Error::DimensionMismatch {
            expected: params.dim(),
            found: v0.len(),
        });
    }
    let mut q = p0.coords();
    let mut v = v0.to_vec();
    let mut points = vec![p0.clone()];
    let mut velocities = vec![v.clone()];
    for w in grid.windows(2) {
        let span = w[1] - w[0];
        let m = ((span / step) - 1e-9).ceil().max(1.0) as usize;
        let h = span / m as f64;
        for s in 0..m {
            let (qn, vn) = rk4_step(&q, &v, h, params);
            if qn.iter().chain(&vn).any(|x| !x.is_finite()) {
                return Err(Error::NonFinite {
                    t: w[0] + (s + 1) as f64 * h,
                });
            }
            q = qn;
            v = vn;
        }
        points.push(GroupPoint::from_coords(&q, n)?);
        velocities.push(v.clone());
    }
    Ok(CurveSample {
        n,
        t: grid.to_vec(),
        points,
        velocities,
        accelerations: None,
    })
}

/// Kinetic energy `g(gamma', gamma')` at each node.
pub fn energy(curve: &CurveSample, params: &ModelParams) -> Vec<f64> {
    curve
        .points
        .iter()
        .zip(&curve.velocities)
        .map(|(p, v)| {
            let g = metric_at(p, params);
            let v = DVector::from_column_slice(v);
            v.dot(&(&g * &v))
        })
        .collect()
}

/// Largest relative deviation of the energy from its initial value.
pub fn energy_drift(curve: &CurveSample, params: &ModelParams) -> f64 {
    let e = energy(curve, params);
    let e0 = e[0];
    let scale = e0.abs().max(f64::MIN_POSITIVE);
    e.iter().map(|x| (x - e0).abs() / scale).fold(0.0, f64::max)
}

/// Sup over interior nodes of the Riemannian length of
/// `gamma''^k + Gamma^k_{ij} gamma'^i gamma'^j`.
///
/// Uses the stored accelerations when present, otherwise central differences
/// of the velocities.
pub fn geodesic_residual(curve: &CurveSample, params: &ModelParams) -> Result<f64> {
    if curve.len() < 3 {
        return Err(Error::InvalidGrid { min: 3 });
    }
    check_grid(&curve.t, 3)?;
    if curve.n != params.n() {
        return Err(Error::DimensionMismatch {
            expected: params.dim(),
            found: 2 * curve.n + 1,
        });
    }
    let mut sup = 0.0f64;
    for i in 1..curve.len() - 1 {
        let acc: Vec<f64> = match &curve.accelerations {
            Some(acc) => acc[i].clone(),
            None => {
                let dt = curve.t[i + 1] - curve.t[i - 1];
                curve.velocities[i + 1]
                    .iter()
                    .zip(&curve.velocities[i - 1])
                    .map(|(a, b)| (a - b) / dt)
                    .collect()
            }
        };
        let p = &curve.points[i];
        let v = &curve.velocities[i];
        let gamma = christoffel(p, params).contract(v, v);
        let r = DVector::from_iterator(acc.len(), acc.iter().zip(&gamma).map(|(a, g)| a + g));
        let g = metric_at(p, params);
        sup = sup.max(r.dot(&(&g * &r)).max(0.0).sqrt());
    }
    Ok(sup)
}

/// Gram matrix of the initial orbit velocities at the origin.
pub fn tangent_gram(vectors: &[AlgebraVector], params: &ModelParams) -> Result<DMatrix<f64>> {
    if vectors.is_empty() {
        return Err(Error::InvalidParams("tangent_gram needs at least one vector".into()));
    }
    for v in vectors {
        v.conforms(params)?;
    }
    let g = metric_at(&GroupPoint::origin(params.n()), params);
    // Orbit velocity at t = 0 is the coefficient vector itself.
    let cols: Vec<DVector<f64>> = vectors
        .iter()
        .map(|v| DVector::from_vec(v.components()))
        .collect();
    let m = DMatrix::from_columns(&cols);
    Ok(m.transpose() * g * m)
}

/// Numerical rank from singular values above `tol * max singular value`.
pub fn numerical_rank(m: &DMatrix<f64>, tol: f64) -> usize {
    let sv = m.clone().singular_values();
    let max = sv.iter().copied().fold(0.0, f64::max);
    if max == 0.0 {
        return 0;
    }
    sv.iter().filter(|&&s| s > tol * max).count()
}

/// Largest off-diagonal magnitude.
pub fn max_off_diagonal(m: &DMatrix<f64>) -> f64 {
    let mut worst = 0.0f64;
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            if r != c {
                worst = worst.max(m[(r, c)].abs());
            }
        }
    }
    worst
}
