use std::fmt;
use std::ops::Neg;

use num_traits::Num;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::ModelParams;

/// Element of the Lie algebra in the ordered basis `X_0..X_n, Z_1..Z_n`.
///
/// `a` holds the `X` coefficients (length `n + 1`), `b` the `Z` coefficients
/// (length `n`). The diagonal generator entry on the `X_0` row is the derived
/// value `c_0 = -(b_1 + ... + b_n)`; it is never stored.
///
/// The scalar type is generic so the same bracket code runs in exact integer
/// arithmetic and in `f64`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlgebraVector<T = f64> {
    a: Vec<T>,
    b: Vec<T>,
}

impl<T> AlgebraVector<T>
where
    T: Num + Copy + Neg<Output = T>,
{
    /// Builds a vector from its `X` and `Z` coefficients.
    pub fn new(a: Vec<T>, b: Vec<T>) -> Result<Self> {
        if a.len() != b.len() + 1 {
            return Err(Error::DimensionMismatch {
                expected: b.len() + 1,
                found: a.len(),
            });
        }
        if b.is_empty() {
            return Err(Error::InvalidParams("n must be at least 1".into()));
        }
        Ok(Self { a, b })
    }

    /// Splits a flat component list `x_0..x_n, z_1..z_n`.
    pub fn from_components(components: &[T], params: &ModelParams) -> Result<Self> {
        let n = params.n();
        if components.len() != 2 * n + 1 {
            return Err(Error::DimensionMismatch {
                expected: 2 * n + 1,
                found: components.len(),
            });
        }
        Ok(Self {
            a: components[..=n].to_vec(),
            b: components[n + 1..].to_vec(),
        })
    }

    pub fn zero(n: usize) -> Self {
        Self {
            a: vec![T::zero(); n + 1],
            b: vec![T::zero(); n],
        }
    }

    /// Basis vector `X_i`, `0 <= i <= n`.
    pub fn x_basis(n: usize, i: usize) -> Self {
        assert!(i <= n, "X_{i} out of range for n = {n}");
        let mut v = Self::zero(n);
        v.a[i] = T::one();
        v
    }

    /// Basis vector `Z_k`, `1 <= k <= n`.
    pub fn z_basis(n: usize, k: usize) -> Self {
        assert!((1..=n).contains(&k), "Z_{k} out of range for n = {n}");
        let mut v = Self::zero(n);
        v.b[k - 1] = T::one();
        v
    }

    /// The ordered basis `X_0..X_n, Z_1..Z_n`.
    pub fn basis(n: usize) -> Vec<Self> {
        (0..=n)
            .map(|i| Self::x_basis(n, i))
            .chain((1..=n).map(|k| Self::z_basis(n, k)))
            .collect()
    }

    /// The type-B direction `X_0 + s_1 X_1 + ... + s_n X_n`.
    pub fn type_b(signs: &[i8]) -> Self {
        let n = signs.len();
        let mut v = Self::zero(n);
        v.a[0] = T::one();
        for (slot, &s) in v.a[1..].iter_mut().zip(signs) {
            *slot = if s < 0 { -T::one() } else { T::one() };
        }
        v
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.b.len()
    }

    /// Coefficients of `X_0..X_n`.
    #[inline]
    pub fn a(&self) -> &[T] {
        &self.a
    }

    /// Coefficients of `Z_1..Z_n`.
    #[inline]
    pub fn b(&self) -> &[T] {
        &self.b
    }

    /// `c_0 = -(b_1 + ... + b_n)`.
    pub fn c0(&self) -> T {
        self.b.iter().fold(T::zero(), |acc, &x| acc - x)
    }

    /// Diagonal entry of the matrix generator on row `i`: `c_0` for `i = 0`,
    /// `b_i` otherwise.
    #[inline]
    pub fn diag(&self, i: usize) -> T {
        if i == 0 {
            self.c0()
        } else {
            self.b[i - 1]
        }
    }

    /// Flat components `x_0..x_n, z_1..z_n`.
    pub fn components(&self) -> Vec<T> {
        self.a.iter().chain(self.b.iter()).copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().chain(self.b.iter()).all(|x| x.is_zero())
    }

    pub fn conforms(&self, params: &ModelParams) -> Result<()> {
        if self.n() != params.n() {
            return Err(Error::DimensionMismatch {
                expected: params.dim(),
                found: 2 * self.n() + 1,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            a: self.a.iter().zip(&other.a).map(|(&x, &y)| x + y).collect(),
            b: self.b.iter().zip(&other.b).map(|(&x, &y)| x + y).collect(),
        }
    }

    pub fn scale(&self, s: T) -> Self {
        Self {
            a: self.a.iter().map(|&x| x * s).collect(),
            b: self.b.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn map<U, F: Fn(T) -> U>(&self, f: F) -> AlgebraVector<U> {
        AlgebraVector {
            a: self.a.iter().map(|&x| f(x)).collect(),
            b: self.b.iter().map(|&x| f(x)).collect(),
        }
    }
}

impl AlgebraVector<f64> {
    /// Exact integer copy when every component is an integer of magnitude at
    /// most `2^31`; squared and cubed terms then fit comfortably in `i128`.
    pub fn to_exact(&self) -> Option<AlgebraVector<i128>> {
        const LIMIT: f64 = 2147483648.0;
        let ok = self
            .a
            .iter()
            .chain(self.b.iter())
            .all(|x| x.is_finite() && x.fract() == 0.0 && x.abs() <= LIMIT);
        ok.then(|| self.map(|x| x as i128))
    }

    pub fn is_finite(&self) -> bool {
        self.a.iter().chain(self.b.iter()).all(|x| x.is_finite())
    }

    /// Euclidean norm of the flat coordinate vector.
    pub fn coordinate_norm(&self) -> f64 {
        self.a
            .iter()
            .chain(self.b.iter())
            .map(|x| x * x)
            .sum::<f64>()
            .sqrt()
    }
}

impl<T: fmt::Display> fmt::Display for AlgebraVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.a.iter().chain(self.b.iter()).enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_and_join_components() {
        let p = ModelParams::with_n(2).unwrap();
        let v = AlgebraVector::from_components(&[1.0, 2.0, 3.0, 4.0, 5.0], &p).unwrap();
        assert_eq!(v.a(), &[1.0, 2.0, 3.0]);
        assert_eq!(v.b(), &[4.0, 5.0]);
        assert_eq!(v.c0(), -9.0);
        assert_eq!(v.components(), vec![1.0, 2.0, 3.0, 4.0, 5.0]);
        assert!(AlgebraVector::from_components(&[1.0, 2.0], &p).is_err());
    }

    #[test]
    fn exact_conversion_only_for_integers() {
        let v = AlgebraVector::new(vec![1.0, -2.0], vec![3.0]).unwrap();
        assert!(v.to_exact().is_some());
        let w = AlgebraVector::new(vec![1.5, -2.0], vec![3.0]).unwrap();
        assert!(w.to_exact().is_none());
    }

    #[test]
    fn type_b_signs() {
        let v: AlgebraVector<i64> = AlgebraVector::type_b(&[1, -1, 1]);
        assert_eq!(v.a(), &[1, 1, -1, 1]);
        assert!(v.b().iter().all(|&x| x == 0));
    }
}
