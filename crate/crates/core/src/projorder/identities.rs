use num_complex::Complex64;
use serde::Serialize;

use crate::error::{check_dim, Result};
use crate::linalg::{self, c, CMatrix};
use crate::projection::Projection;
use crate::spectra::{decompose, nonsym_spectrum, HermitianOperator};
use crate::tolerance::ToleranceConfig;

/// Spectral window used when comparing `σ(PQ^perp P)` with `1 - σ(PQP)`.
pub const OPEN_UNIT_MARGIN: f64 = 1e-6;

/// Discrepancy recorded when two windowed multisets differ in size.
pub const COUNT_MISMATCH: f64 = 1.0;

/// Numerical check of the spectral identities linking `PQP`, `PQ`, `QP`,
/// `QPQ` and `PQ^perp P`.
#[derive(Debug, Clone, Serialize)]
pub struct SpectrumIdentityReport {
    /// Clustered `σ(PQP)`.
    pub sigma_pqp: Vec<f64>,
    /// Max pairwise distance between the sorted full spectra of `PQP`,
    /// `PPQ`, `PQ`, `QP`, `QQP` and `QPQ`.
    pub product_spectra_discrepancy: f64,
    /// `σ(PQ^perp P)` restricted to `(ε, 1 - ε)`.
    pub complement_window: Vec<f64>,
    /// `1 - σ(PQP)` restricted to `(ε, 1 - ε)`, ascending.
    pub reflected_window: Vec<f64>,
    pub complement_discrepancy: f64,
    /// `||PQ||^2, ||PQ(PQ)*||, ||PQQP||, ||PQP||, max σ(PQP)`.
    pub norm_chain: Vec<f64>,
    pub norm_chain_discrepancy: f64,
    pub max_discrepancy: f64,
}

fn sort_complex(mut v: Vec<Complex64>) -> Vec<Complex64> {
    v.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    v
}

/// Pairs sorted multisets index-wise.
fn multiset_distance(a: &[Complex64], b: &[Complex64]) -> f64 {
    if a.len() != b.len() {
        return COUNT_MISMATCH;
    }
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

fn hermitian_eigs(m: &CMatrix, cfg: &ToleranceConfig) -> Result<Vec<f64>> {
    let dec = decompose(&HermitianOperator::from_symmetrized(m), cfg)?;
    Ok(dec.raw_eigenvalues().to_vec())
}

pub fn spectrum_identity_report(
    p: &Projection,
    q: &Projection,
    cfg: &ToleranceConfig,
) -> Result<SpectrumIdentityReport> {
    check_dim(p.dim(), q.dim())?;
    let n = p.dim();
    let (pm, qm) = (p.matrix(), q.matrix());
    let pq = pm * qm;
    let qp = qm * pm;
    let pqp = &pq * pm;
    let qpq = &qp * qm;

    let real = |v: Vec<f64>| sort_complex(v.into_iter().map(c).collect());
    let spectra = [
        real(hermitian_eigs(&pqp, cfg)?),
        sort_complex(nonsym_spectrum(&(pm * &pq))?),
        sort_complex(nonsym_spectrum(&pq)?),
        sort_complex(nonsym_spectrum(&qp)?),
        sort_complex(nonsym_spectrum(&(qm * &qp))?),
        real(hermitian_eigs(&qpq, cfg)?),
    ];
    let product_spectra_discrepancy = spectra[1..]
        .iter()
        .map(|s| multiset_distance(&spectra[0], s))
        .fold(0.0, f64::max);

    let eps = OPEN_UNIT_MARGIN;
    let inside = |x: &f64| *x > eps && *x < 1.0 - eps;
    let pqperp_p = pm * (linalg::identity(n) - qm) * pm;
    let complement_window: Vec<f64> = hermitian_eigs(&pqperp_p, cfg)?
        .into_iter()
        .filter(inside)
        .collect();
    let pqp_raw = hermitian_eigs(&pqp, cfg)?;
    let mut reflected_window: Vec<f64> = pqp_raw.iter().map(|x| 1.0 - x).filter(inside).collect();
    reflected_window.sort_by(f64::total_cmp);
    let complement_discrepancy =
        multiset_distance(&real(complement_window.clone()), &real(reflected_window.clone()));

    let pq_norm = linalg::op_norm(&pq);
    let max_sigma = pqp_raw.last().copied().unwrap_or(0.0);
    let norm_chain = vec![
        pq_norm * pq_norm,
        linalg::op_norm(&(&pq * pq.adjoint())),
        linalg::op_norm(&(&pq * &qp)),
        linalg::op_norm(&pqp),
        max_sigma,
    ];
    let norm_chain_discrepancy = norm_chain
        .iter()
        .map(|x| (x - norm_chain[0]).abs())
        .fold(0.0, f64::max);

    let sigma_pqp = decompose(&HermitianOperator::from_symmetrized(&pqp), cfg)?
        .eigenvalues()
        .to_vec();
    let max_discrepancy = product_spectra_discrepancy
        .max(complement_discrepancy)
        .max(norm_chain_discrepancy);
    Ok(SpectrumIdentityReport {
        sigma_pqp,
        product_spectra_discrepancy,
        complement_window,
        reflected_window,
        complement_discrepancy,
        norm_chain,
        norm_chain_discrepancy,
        max_discrepancy,
    })
}
