use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::linalg;
use crate::projection::{common_dim, Projection};
use crate::spectra::{decompose, HermitianOperator};
use crate::tolerance::ToleranceConfig;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TechconReport {
    /// `sum_{k<n} ||P^perp_k P_{k+1} ... P_n||` for each `n`.
    pub partial_sums: Vec<f64>,
    /// Whether the second half of the sums is non-increasing. A trend only;
    /// a finite prefix says nothing about the limit.
    pub decreasing_tail: bool,
}

pub fn techcon_check(ps: &[Projection]) -> Result<TechconReport> {
    if ps.is_empty() {
        return Err(Error::Argument("projection family must be nonempty".into()));
    }
    common_dim(ps)?;
    let mut partial_sums = Vec::with_capacity(ps.len());
    for n in 0..ps.len() {
        let mut tail = ps[n].matrix().clone();
        let mut sum = 0.0;
        for k in (0..n).rev() {
            sum += linalg::op_norm(&(&tail - ps[k].matrix() * &tail));
            tail = ps[k].matrix() * tail;
        }
        partial_sums.push(sum);
    }
    let tail = &partial_sums[partial_sums.len() / 2..];
    let decreasing_tail = tail.windows(2).all(|w| w[1] <= w[0] + 1e-12);
    Ok(TechconReport {
        partial_sums,
        decreasing_tail,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EeReport {
    /// `||E_S(t) E^perp_{PSP}(s)||^2`.
    pub lhs: f64,
    /// `(||S|| - s) / (||S|| - t)`.
    pub rhs: f64,
    pub holds: bool,
}

/// Slack allowed on `lhs <= rhs`.
pub const EE_SLACK: f64 = 1e-9;

/// Evaluates both sides of the spectral-family estimate
/// `||E_S(t) E^perp_{PSP}(s)||^2 <= (||S|| - s) / (||S|| - t)`.
pub fn ee_inequality_check(
    s_op: &HermitianOperator,
    p: &Projection,
    s: f64,
    t: f64,
    cfg: &ToleranceConfig,
) -> Result<EeReport> {
    check_dim(s_op.dim(), p.dim())?;
    let norm = linalg::op_norm(s_op.matrix());
    if !(s.is_finite() && t.is_finite() && s >= 0.0 && s < norm && t < norm) {
        return Err(Error::Argument(format!(
            "need 0 <= s < ||S|| and t < ||S||, got s = {s}, t = {t}, ||S|| = {norm}"
        )));
    }
    let pm = p.matrix();
    let psp = HermitianOperator::from_symmetrized(&(pm * s_op.matrix() * pm));
    let below = decompose(s_op, cfg)?.lower(t);
    let above = decompose(&psp, cfg)?.upper(s);
    let lhs = linalg::op_norm(&(below.matrix() * above.matrix())).powi(2);
    let rhs = (norm - s) / (norm - t);
    Ok(EeReport {
        lhs,
        rhs,
        holds: lhs <= rhs + EE_SLACK,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::diag;
    use crate::projection::line;

    fn cfg() -> ToleranceConfig {
        ToleranceConfig::default()
    }

    #[test]
    fn two_by_two_instance() {
        let s = HermitianOperator::diagonal(&[1.0, 0.0]);
        let p = line(&[1.0, 1.0]).unwrap();
        let r = ee_inequality_check(&s, &p, 0.25, 0.0, &cfg()).unwrap();
        assert!((r.lhs - 0.5).abs() < 1e-12);
        assert!((r.rhs - 0.75).abs() < 1e-15);
        assert!(r.holds);
    }

    #[test]
    fn identity_projection_gives_zero() {
        let s = HermitianOperator::diagonal(&[2.0, 0.5, -1.0]);
        let p = Projection::identity(3);
        let r = ee_inequality_check(&s, &p, 0.7, 0.5, &cfg()).unwrap();
        assert!(r.lhs < 1e-24 && r.holds);
    }

    #[test]
    fn preconditions() {
        let s = HermitianOperator::diagonal(&[1.0, 0.0]);
        let p = Projection::identity(2);
        assert!(ee_inequality_check(&s, &p, -0.1, 0.0, &cfg()).is_err());
        assert!(ee_inequality_check(&s, &p, 1.0, 0.0, &cfg()).is_err());
        assert!(ee_inequality_check(&s, &p, 0.0, 1.0, &cfg()).is_err());
        assert!(ee_inequality_check(&s, &Projection::identity(3), 0.0, 0.0, &cfg()).is_err());
    }

    #[test]
    fn techcon_of_constant_and_decreasing() {
        let p = line(&[1.0, 1.0, 0.0]).unwrap();
        let r = techcon_check(&[p.clone(), p.clone(), p]).unwrap();
        assert!(r.partial_sums.iter().all(|s| *s < 1e-14) && r.decreasing_tail);

        let a = Projection::from_matrix(diag(&[1.0, 1.0, 1.0])).unwrap();
        let b = Projection::from_matrix(diag(&[1.0, 1.0, 0.0])).unwrap();
        let c = Projection::from_matrix(diag(&[1.0, 0.0, 0.0])).unwrap();
        let r = techcon_check(&[a, b, c]).unwrap();
        assert!(r.partial_sums.iter().all(|s| *s < 1e-14));
    }

    #[test]
    fn techcon_sums_an_increasing_pair() {
        // P_0 = e1, P_1 = 1: ||P_0^perp P_1|| = 1
        let a = Projection::from_matrix(diag(&[1.0, 0.0])).unwrap();
        let r = techcon_check(&[a, Projection::identity(2)]).unwrap();
        assert_eq!(r.partial_sums[0], 0.0);
        assert!((r.partial_sums[1] - 1.0).abs() < 1e-14);
    }
}
