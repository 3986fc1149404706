use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::linalg::{self, CMatrix, CVector};
use crate::projection::{self, common_dim, Projection};
use crate::spectra::HermitianOperator;
use crate::tolerance::ToleranceConfig;

/// Allowed deviation of `trace(rho)` from one.
pub const TRACE_TOL: f64 = 1e-9;

/// A state `T -> trace(rho T)` given by a density matrix.
#[derive(Debug, Clone)]
pub struct DensityState {
    rho: CMatrix,
}

impl DensityState {
    pub fn new(rho: CMatrix, cfg: &ToleranceConfig) -> Result<Self> {
        let rho = HermitianOperator::new(rho, cfg)?.into_matrix();
        let trace = rho.trace().re;
        if (trace - 1.0).abs() > TRACE_TOL {
            return Err(Error::Argument(format!("density matrix has trace {trace}")));
        }
        let min = linalg::min_hermitian_eigenvalue(&rho);
        if min < -cfg.psd_tol {
            return Err(Error::Argument(format!(
                "density matrix has negative eigenvalue {min:.3e}"
            )));
        }
        Ok(Self { rho })
    }

    /// The vector state of `v / ||v||`.
    pub fn pure(v: &CVector) -> Result<Self> {
        linalg::ensure_finite(&CMatrix::from_column_slice(v.len(), 1, v.as_slice()), "state vector")?;
        let norm = v.norm();
        if norm == 0.0 {
            return Err(Error::Argument("state vector is zero".into()));
        }
        let u = v / linalg::c(norm);
        Ok(Self { rho: &u * u.adjoint() })
    }

    pub fn dim(&self) -> usize {
        self.rho.nrows()
    }

    pub fn rho(&self) -> &CMatrix {
        &self.rho
    }

    pub fn eval(&self, t: &CMatrix) -> f64 {
        (&self.rho * t).trace().re
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CentredReport {
    pub all_one: bool,
    /// `||P_0 ... P_k||`.
    pub product_norm: f64,
    /// `all_one` implies `product_norm >= 1 - 1e-8`.
    pub consistent: bool,
}

pub fn state_centred_check(rho: &DensityState, ps: &[Projection]) -> Result<CentredReport> {
    let n = common_dim(ps)?;
    check_dim(n, rho.dim())?;
    let all_one = ps.iter().all(|p| rho.eval(p.matrix()) >= 1.0 - 1e-9);
    let product_norm = linalg::op_norm(&projection::product(ps));
    Ok(CentredReport {
        all_one,
        product_norm,
        consistent: !all_one || product_norm >= 1.0 - 1e-8,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;
    use crate::projection::line;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn pure_state_in_common_range() {
        let p = Projection::from_matrix(linalg::diag(&[1.0, 1.0, 0.0])).unwrap();
        let q = line(&[1.0, 1.0, 0.0]).unwrap();
        let v = CVector::from_vec(vec![c(2.0), c(2.0), c(0.0)]);
        let r = state_centred_check(&DensityState::pure(&v).unwrap(), &[p, q]).unwrap();
        assert!(r.all_one && (r.product_norm - 1.0).abs() < 1e-12 && r.consistent);
    }

    #[test]
    fn support_outside_a_projection() {
        let p = Projection::from_matrix(linalg::diag(&[1.0, 0.0])).unwrap();
        let rho = DensityState::new(linalg::diag(&[0.5, 0.5]), &cfg()).unwrap();
        let r = state_centred_check(&rho, &[p]).unwrap();
        assert!(!r.all_one && r.consistent);
    }

    #[test]
    fn rejects_invalid_density() {
        assert!(DensityState::new(linalg::diag(&[0.5, 0.6]), &cfg()).is_err());
        assert!(DensityState::new(linalg::diag(&[1.5, -0.5]), &cfg()).is_err());
    }
}
