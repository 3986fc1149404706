use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::tolerance::ToleranceConfig;

/// A dense self-adjoint matrix.
///
/// Construction checks `||M - M*|| <= rank_tol * ||M||` (Frobenius) and then
/// stores the exact Hermitian part `(M + M*) / 2`.
#[derive(Debug, Clone)]
pub struct HermitianOperator {
    matrix: CMatrix,
}

impl HermitianOperator {
    pub fn new(m: CMatrix, cfg: &ToleranceConfig) -> Result<Self> {
        linalg::ensure_square(&m)?;
        if m.nrows() == 0 {
            return Err(Error::Argument("operator dimension must be positive".into()));
        }
        linalg::ensure_finite(&m, "operator")?;
        let asymmetry = (&m - m.adjoint()).norm();
        let allowed = cfg.rank_tol * m.norm();
        if asymmetry > allowed {
            return Err(Error::NotHermitian { asymmetry, allowed });
        }
        Ok(Self {
            matrix: linalg::hermitian_part(&m),
        })
    }

    /// Symmetrizes a matrix that is Hermitian in exact arithmetic (products
    /// such as `PQP` or `T*T`), skipping the asymmetry check.
    pub fn from_symmetrized(m: &CMatrix) -> Self {
        Self {
            matrix: linalg::hermitian_part(m),
        }
    }

    pub fn diagonal(values: &[f64]) -> Self {
        Self {
            matrix: linalg::diag(values),
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }
}
