use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Family index `n` (group dimension `2n + 1`) and metric constant `lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    n: usize,
    lambda: f64,
}

impl ModelParams {
    pub fn new(n: usize, lambda: f64) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("n must be at least 1".into()));
        }
        if !(lambda.is_finite() && lambda > 0.0) {
            return Err(Error::InvalidParams(format!(
                "lambda must be positive and finite, got {lambda}"
            )));
        }
        Ok(Self { n, lambda })
    }

    /// Parameters with `lambda = 1`.
    pub fn with_n(n: usize) -> Result<Self> {
        Self::new(n, 1.0)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// Dimension of the group, `2n + 1`.
    #[inline]
    pub fn dim(&self) -> usize {
        2 * self.n + 1
    }

    /// Length of a sign tuple describing a type-B direction, `n + 1`.
    #[inline]
    pub fn tuple_len(&self) -> usize {
        self.n + 1
    }
}
