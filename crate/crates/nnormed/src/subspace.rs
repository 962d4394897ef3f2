use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg;
use crate::nnorm::RANK_TOL;
use crate::vector::Vector;

/// Relative residual above which a least-squares decomposition over a
/// subspace basis is rejected.
pub const DECOMP_TOL: f64 = 1e-8;

/// A subspace of R^d given by a linearly independent basis. An empty basis
/// is the trivial subspace.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSubspace", into = "RawSubspace")]
pub struct Subspace {
    basis: Vec<Vector>,
    ambient_dim: usize,
}

#[derive(Serialize, Deserialize)]
struct RawSubspace {
    basis: Vec<Vector>,
    ambient_dim: usize,
}

impl TryFrom<RawSubspace> for Subspace {
    type Error = Error;
    fn try_from(raw: RawSubspace) -> Result<Self> {
        Subspace::new(raw.basis, raw.ambient_dim)
    }
}

impl From<Subspace> for RawSubspace {
    fn from(s: Subspace) -> Self {
        RawSubspace {
            basis: s.basis,
            ambient_dim: s.ambient_dim,
        }
    }
}

impl Subspace {
    pub fn new(basis: Vec<Vector>, ambient_dim: usize) -> Result<Self> {
        for (i, b) in basis.iter().enumerate() {
            if b.dim() != ambient_dim {
                return Err(Error::DimensionMismatch {
                    index: i,
                    expected: ambient_dim,
                    got: b.dim(),
                });
            }
        }
        if !basis.is_empty() {
            let rows: Vec<Vec<f64>> = basis.iter().map(|b| b.coords().to_vec()).collect();
            if linalg::rank(&rows, RANK_TOL) < basis.len() {
                return Err(Error::InvalidInput(
                    "subspace basis is linearly dependent".into(),
                ));
            }
        }
        Ok(Subspace { basis, ambient_dim })
    }

    pub fn trivial(ambient_dim: usize) -> Self {
        Subspace {
            basis: vec![],
            ambient_dim,
        }
    }

    pub fn basis(&self) -> &[Vector] {
        &self.basis
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Least-squares coefficients of `x` over the basis and the relative
    /// residual of the fit.
    pub fn decompose(&self, x: &Vector) -> Result<(Vec<f64>, f64)> {
        if x.dim() != self.ambient_dim {
            return Err(Error::DimensionMismatch {
                index: 0,
                expected: self.ambient_dim,
                got: x.dim(),
            });
        }
        let rows: Vec<Vec<f64>> = self.basis.iter().map(|b| b.coords().to_vec()).collect();
        linalg::least_squares(&rows, x.coords())
    }

    pub fn contains(&self, x: &Vector) -> Result<bool> {
        let (_, residual) = self.decompose(x)?;
        Ok(residual <= DECOMP_TOL)
    }

    /// The member with the given basis coefficients.
    pub fn member(&self, coeffs: &[f64]) -> Vector {
        let mut out = Vector::zeros(self.ambient_dim);
        for (c, b) in coeffs.iter().zip(&self.basis) {
            out = out.add(&b.scale(*c));
        }
        out
    }

    /// Subspace spanned by this basis plus one more independent vector.
    pub fn extended(&self, extra: &Vector) -> Result<Subspace> {
        let mut basis = self.basis.clone();
        basis.push(extra.clone());
        Subspace::new(basis, self.ambient_dim)
    }
}
