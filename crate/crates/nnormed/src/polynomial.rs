use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coefficients below this magnitude count as trailing zeros for degree
/// reporting and comparison.
pub const COEFF_TRIM_TOL: f64 = 1e-12;

/// Real polynomial `a_0 + a_1 t + ... + a_m t^m` stored as its coefficient
/// sequence. Serialized as `{"coeffs":[...]}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Result<Self> {
        if coeffs.is_empty() {
            return Err(Error::InvalidInput("polynomial with no coefficients".into()));
        }
        for (i, c) in coeffs.iter().enumerate() {
            if !c.is_finite() {
                return Err(Error::NonFinite { index: i });
            }
        }
        Ok(Polynomial { coeffs })
    }

    /// The constant polynomial `c`.
    pub fn constant(c: f64) -> Self {
        Polynomial { coeffs: vec![c] }
    }

    /// `1 + t + t^2 + ... + t^k`, the witness polynomial of the boundedness
    /// counterexample.
    pub fn ones_up_to(k: usize) -> Self {
        Polynomial {
            coeffs: vec![1.0; k + 1],
        }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of `t^j`, zero beyond the stored range.
    pub fn coeff(&self, j: usize) -> f64 {
        self.coeffs.get(j).copied().unwrap_or(0.0)
    }

    /// Effective degree: index of the last coefficient above the trim
    /// tolerance. The zero polynomial reports degree 0.
    pub fn degree(&self) -> usize {
        self.coeffs
            .iter()
            .rposition(|c| c.abs() >= COEFF_TRIM_TOL)
            .unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.abs() < COEFF_TRIM_TOL)
    }

    /// Largest absolute coefficient, the building block of the
    /// coefficient-product n-norm.
    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        Polynomial {
            coeffs: (0..len).map(|j| self.coeff(j) + other.coeff(j)).collect(),
        }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let len = self.coeffs.len().max(other.coeffs.len());
        Polynomial {
            coeffs: (0..len).map(|j| self.coeff(j) - other.coeff(j)).collect(),
        }
    }

    pub fn scale(&self, alpha: f64) -> Polynomial {
        Polynomial {
            coeffs: self.coeffs.iter().map(|c| alpha * c).collect(),
        }
    }

    /// Coefficient vector padded with zeros to `len` entries.
    pub fn padded_coeffs(&self, len: usize) -> Vec<f64> {
        (0..len).map(|j| self.coeff(j)).collect()
    }
}
