//! Independent oracles shared by the integration tests.
#![allow(dead_code)]

use homogeo::algebra::AlgebraVector;
use homogeo::riemann::{metric_at, GroupPoint};
use homogeo::ModelParams;
use nalgebra::DMatrix;
use rand::Rng;

/// Embeds `v` as the `(n+2) x (n+2)` matrix generator: diagonal
/// `(c_0, b_1, ..., b_n, 0)` with `c_0 = -(b_1 + ... + b_n)` and translation
/// column `a`.
pub fn to_matrix(v: &AlgebraVector<i64>) -> Vec<Vec<i64>> {
    let n = v.n();
    let mut m = vec![vec![0i64; n + 2]; n + 2];
    m[0][0] = -v.b().iter().sum::<i64>();
    for k in 1..=n {
        m[k][k] = v.b()[k - 1];
    }
    for i in 0..=n {
        m[i][n + 1] = v.a()[i];
    }
    m
}

pub fn commutator(p: &[Vec<i64>], q: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = p.len();
    let mul = |x: &[Vec<i64>], y: &[Vec<i64>]| -> Vec<Vec<i64>> {
        (0..d)
            .map(|r| (0..d).map(|c| (0..d).map(|k| x[r][k] * y[k][c]).sum()).collect())
            .collect()
    };
    let pq = mul(p, q);
    let qp = mul(q, p);
    (0..d)
        .map(|r| (0..d).map(|c| pq[r][c] - qp[r][c]).collect())
        .collect()
}

pub fn random_int_vector<R: Rng>(rng: &mut R, n: usize, range: i64) -> AlgebraVector<i64> {
    AlgebraVector::new(
        (0..=n).map(|_| rng.gen_range(-range..=range)).collect(),
        (0..n).map(|_| rng.gen_range(-range..=range)).collect(),
    )
    .unwrap()
}

pub fn random_real_vector<R: Rng>(rng: &mut R, n: usize) -> AlgebraVector {
    AlgebraVector::new(
        (0..=n).map(|_| rng.gen_range(-1.0..1.0)).collect(),
        (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect(),
    )
    .unwrap()
}

/// Matrix exponential by scaling and squaring with a Taylor core.
pub fn expm(a: &DMatrix<f64>) -> DMatrix<f64> {
    let norm = a.iter().map(|x| x.abs()).fold(0.0, f64::max) * a.nrows() as f64;
    let mut s = 0;
    while norm / 2f64.powi(s) > 0.25 {
        s += 1;
    }
    let scaled = a / 2f64.powi(s);
    let mut term = DMatrix::identity(a.nrows(), a.ncols());
    let mut sum = term.clone();
    for k in 1..30 {
        term = &term * &scaled / k as f64;
        sum += &term;
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    sum
}

/// Real matrix generator of `v`, as in [`to_matrix`].
pub fn to_real_matrix(v: &AlgebraVector) -> DMatrix<f64> {
    let n = v.n();
    let mut m = DMatrix::zeros(n + 2, n + 2);
    m[(0, 0)] = -v.b().iter().sum::<f64>();
    for k in 1..=n {
        m[(k, k)] = v.b()[k - 1];
    }
    for i in 0..=n {
        m[(i, n + 1)] = v.a()[i];
    }
    m
}

/// `Gamma^k_{ij}` from central differences of `metric_at` with step `h`.
pub fn christoffel_fd(p: &GroupPoint, params: &ModelParams, h: f64) -> Vec<Vec<Vec<f64>>> {
    let dim = params.dim();
    let n = params.n();
    let base = p.coords();
    let dg: Vec<DMatrix<f64>> = (0..dim)
        .map(|l| {
            let mut plus = base.clone();
            let mut minus = base.clone();
            plus[l] += h;
            minus[l] -= h;
            let gp = metric_at(&GroupPoint::from_coords(&plus, n).unwrap(), params);
            let gm = metric_at(&GroupPoint::from_coords(&minus, n).unwrap(), params);
            (gp - gm) / (2.0 * h)
        })
        .collect();
    let ginv = metric_at(p, params).try_inverse().unwrap();
    (0..dim)
        .map(|k| {
            (0..dim)
                .map(|i| {
                    (0..dim)
                        .map(|j| {
                            0.5 * (0..dim)
                                .map(|l| {
                                    ginv[(k, l)]
                                        * (dg[i][(l, j)] + dg[j][(l, i)] - dg[l][(i, j)])
                                })
                                .sum::<f64>()
                        })
                        .collect()
                })
                .collect()
        })
        .collect()
}
