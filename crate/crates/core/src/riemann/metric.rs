use nalgebra::DMatrix;

use super::GroupPoint;
use crate::params::ModelParams;

/// Coordinate index of `x_i` (`0 <= i <= n`).
#[inline]
pub fn x_index(i: usize) -> usize {
    i
}

/// Coordinate index of `z_k` (`1 <= k <= n`).
#[inline]
pub fn z_index(n: usize, k: usize) -> usize {
    n + k
}

/// Metric matrix in coordinates `x_0..x_n, z_1..z_n`: `diag(e^{-2 z_i})` on the
/// `x` block (with `z_0 = -(z_1 + ... + z_n)`), `lambda^2 (I + J)` on the `z`
/// block, zero cross terms.
pub fn metric_at(p: &GroupPoint, params: &ModelParams) -> DMatrix<f64> {
    let n = params.n();
    let dim = params.dim();
    let l2 = params.lambda() * params.lambda();
    let mut g = DMatrix::zeros(dim, dim);
    for i in 0..=n {
        g[(i, i)] = (-2.0 * p.z_full(i)).exp();
    }
    for r in n + 1..dim {
        for c in n + 1..dim {
            g[(r, c)] = if r == c { 2.0 * l2 } else { l2 };
        }
    }
    g
}

/// Levi-Civita connection coefficients `Gamma^k_{ij}` at a point, stored
/// densely as `k * dim^2 + i * dim + j`.
#[derive(Debug, Clone, PartialEq)]
pub struct Christoffel {
    dim: usize,
    data: Vec<f64>,
}

impl Christoffel {
    #[inline]
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, k: usize, i: usize, j: usize) -> f64 {
        self.data[(k * self.dim + i) * self.dim + j]
    }

    #[inline]
    fn set_sym(&mut self, k: usize, i: usize, j: usize, value: f64) {
        let d = self.dim;
        self.data[(k * d + i) * d + j] = value;
        self.data[(k * d + j) * d + i] = value;
    }

    /// `Gamma^k_{ij} u^i v^j` for every `k`.
    pub fn contract(&self, u: &[f64], v: &[f64]) -> Vec<f64> {
        let d = self.dim;
        (0..d)
            .map(|k| {
                let block = &self.data[k * d * d..(k + 1) * d * d];
                let mut acc = 0.0;
                for (i, &ui) in u.iter().enumerate() {
                    if ui == 0.0 {
                        continue;
                    }
                    let row = &block[i * d..(i + 1) * d];
                    acc += ui * row.iter().zip(v).map(|(g, vj)| g * vj).sum::<f64>();
                }
                acc
            })
            .collect()
    }

    pub fn is_symmetric(&self) -> bool {
        let d = self.dim;
        (0..d).all(|k| (0..d).all(|i| (0..i).all(|j| self.get(k, i, j) == self.get(k, j, i))))
    }
}

/// Closed-form Christoffel symbols.
///
/// Only `g_{x_i x_i} = e^{-2 z_i}` varies, and it depends on `z` alone. With
/// `s_i(k) = dz_i/dz_k` (`delta_ik` for `i >= 1`, `-1` for `i = 0`) and the
/// inverse `z` block `(I - J/(n+1)) / lambda^2`:
///
/// * `Gamma^{x_i}_{x_i z_k} = -s_i(k)`
/// * `Gamma^{z_m}_{x_i x_i} = e^{-2 z_i} (delta_mi - 1/(n+1)) / lambda^2` for `i >= 1`
/// * `Gamma^{z_m}_{x_0 x_0} = -e^{-2 z_0} / ((n+1) lambda^2)`
///
/// All other symbols vanish.
pub fn christoffel(p: &GroupPoint, params: &ModelParams) -> Christoffel {
    let n = params.n();
    let dim = params.dim();
    let l2 = params.lambda() * params.lambda();
    let inv_k = 1.0 / (n as f64 + 1.0);
    let mut gamma = Christoffel {
        dim,
        data: vec![0.0; dim * dim * dim],
    };
    for k in 1..=n {
        let zk = z_index(n, k);
        gamma.set_sym(x_index(0), x_index(0), zk, 1.0);
        gamma.set_sym(x_index(k), x_index(k), zk, -1.0);
    }
    for i in 0..=n {
        let w = (-2.0 * p.z_full(i)).exp() / l2;
        for m in 1..=n {
            let value = if i == 0 {
                -w * inv_k
            } else {
                w * (f64::from(u8::from(m == i)) - inv_k)
            };
            gamma.set_sym(z_index(n, m), x_index(i), x_index(i), value);
        }
    }
    gamma
}
