use std::ops::Range;

use serde::Serialize;

use super::operator::BlockSequenceOperator;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::spectra::HermitianOperator;
use crate::tolerance::ToleranceConfig;

/// Slack for essential comparisons; looser than `order_tol` because tail
/// maxima only approximate the quotient norm.
pub const TOL_ESS: f64 = 1e-6;

/// Per-doubling ratio below which window maxima count as decaying to zero.
pub const DECAY_RATIO: f64 = 0.75;

/// Two tail eigenvalues within this distance belong to the same cluster.
pub const PERSISTENCE_RADIUS: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EssentialReport {
    /// Largest block norm over `[N/2, N)`.
    pub estimate: f64,
    /// Maxima over `[N/8, N/4)`, `[N/4, N/2)`, `[N/2, N)`.
    pub window_max_sequence: Vec<f64>,
    /// The window maxima do not increase (within [`TOL_ESS`]).
    pub converged: bool,
    /// The window maxima are negligible or shrink by [`DECAY_RATIO`] per
    /// doubling, the signature of a compact operator.
    pub vanishing: bool,
}

fn window_max(t: &BlockSequenceOperator, w: Range<usize>) -> Result<f64> {
    let mut best = 0.0f64;
    for n in w {
        best = best.max(linalg::op_norm(&t.block(n)?));
    }
    Ok(best)
}

pub fn essential_norm_estimate(t: &BlockSequenceOperator) -> Result<EssentialReport> {
    let windows = t.doubling_windows();
    let maxima = windows
        .iter()
        .map(|w| window_max(t, w.clone()))
        .collect::<Result<Vec<_>>>()?;
    let converged = maxima.windows(2).all(|w| w[1] <= w[0] + TOL_ESS);
    let decaying = maxima.windows(2).all(|w| w[1] <= DECAY_RATIO * w[0]);
    let estimate = maxima[2];
    Ok(EssentialReport {
        estimate,
        window_max_sequence: maxima,
        converged,
        vanishing: estimate <= TOL_ESS || decaying,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EssentialOrderReport {
    pub holds: bool,
    /// Tail report for `q⊥ p`.
    pub defect: EssentialReport,
}

fn check_projection_tail(p: &BlockSequenceOperator, what: &str, cfg: &ToleranceConfig) -> Result<()> {
    let [first, .., last] = p.doubling_windows();
    for n in first.start..last.end {
        let b = p.block(n)?;
        let defect = (&b * &b - &b).norm() + (&b - b.adjoint()).norm();
        if defect > cfg.order_tol.max(crate::projection::PROJECTION_TOL) {
            return Err(Error::NotProjection(format!(
                "{what} block {n} has defect {defect:.3e}"
            )));
        }
    }
    Ok(())
}

/// `π(p) <= π(q)`: the tail of `q⊥ p` is below [`TOL_ESS`] or visibly
/// decaying to zero.
pub fn essential_order(
    p: &BlockSequenceOperator,
    q: &BlockSequenceOperator,
    cfg: &ToleranceConfig,
) -> Result<EssentialOrderReport> {
    check_projection_tail(p, "p", cfg)?;
    check_projection_tail(q, "q", cfg)?;
    let defect = essential_norm_estimate(&q.complement().mul(p)?)?;
    Ok(EssentialOrderReport {
        holds: defect.estimate <= TOL_ESS || defect.vanishing,
        defect,
    })
}

pub fn essential_leq(p: &BlockSequenceOperator, q: &BlockSequenceOperator, cfg: &ToleranceConfig) -> Result<bool> {
    Ok(essential_order(p, q, cfg)?.holds)
}

fn hermitian_block_spectrum(b: CMatrix, n: usize, cfg: &ToleranceConfig) -> Result<Vec<f64>> {
    let h = HermitianOperator::new(b, cfg).map_err(|e| Error::Argument(format!("block {n}: {e}")))?;
    linalg::hermitian_eigenvalues(h.matrix())
}

/// Sorted values split wherever consecutive gaps exceed the radius.
fn clusters(mut values: Vec<f64>) -> Vec<Vec<f64>> {
    values.sort_by(f64::total_cmp);
    let mut out: Vec<Vec<f64>> = Vec::new();
    for v in values {
        match out.last_mut() {
            Some(c) if v - c[c.len() - 1] <= PERSISTENCE_RADIUS => c.push(v),
            _ => out.push(vec![v]),
        }
    }
    out
}

/// Eigenvalues that recur in both halves of the tail window, one value per
/// cluster (the mean over the later half).
///
/// Isolated eigenvalues of finite multiplicity drift out of the window as
/// `N` grows; values that keep reappearing model the essential spectrum.
pub fn essential_spectrum_estimate(s: &BlockSequenceOperator, cfg: &ToleranceConfig) -> Result<Vec<f64>> {
    let tail = s.tail_window();
    let mid = tail.start + (tail.end - tail.start) / 2;
    let mut early = Vec::new();
    let mut late = Vec::new();
    for n in tail {
        let ev = hermitian_block_spectrum(s.block(n)?, n, cfg)?;
        if n < mid {
            early.extend(ev);
        } else {
            late.extend(ev);
        }
    }
    let early = clusters(early);
    let persistent = clusters(late)
        .into_iter()
        .filter(|c| {
            early.iter().any(|e| {
                // sorted clusters: compare nearest endpoints
                let (lo, hi) = (c[0], c[c.len() - 1]);
                let (elo, ehi) = (e[0], e[e.len() - 1]);
                elo - hi <= PERSISTENCE_RADIUS && lo - ehi <= PERSISTENCE_RADIUS
            })
        })
        .map(|c| c.iter().sum::<f64>() / c.len() as f64)
        .collect();
    Ok(persistent)
}

/// Largest eigenvalue of `T*T` over `[N/2, N)` that is not within
/// `eig_cluster` of 1, or 0 if there is none.
pub fn tail_sup_excluding_one(t: &BlockSequenceOperator, cfg: &ToleranceConfig) -> Result<f64> {
    let mut best = 0.0f64;
    for n in t.tail_window() {
        let b = t.block(n)?;
        let g = b.adjoint() * &b;
        for v in hermitian_block_spectrum(g, n, cfg)? {
            if v < 1.0 - cfg.eig_cluster {
                best = best.max(v);
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::diag;

    fn constant(d: &[f64]) -> BlockSequenceOperator {
        BlockSequenceOperator::constant(64, diag(d)).unwrap()
    }

    #[test]
    fn constant_blocks_give_exact_values() {
        let z = essential_norm_estimate(&constant(&[0.0, 0.0])).unwrap();
        assert_eq!(z.estimate, 0.0);
        assert!(z.converged && z.vanishing);
        let id = essential_norm_estimate(&constant(&[1.0, 1.0])).unwrap();
        assert!((id.estimate - 1.0).abs() < 1e-15);
        assert!(id.converged && !id.vanishing);
        let cfg = ToleranceConfig::default();
        assert_eq!(essential_spectrum_estimate(&constant(&[0.0]), &cfg).unwrap(), vec![0.0]);
        let s = essential_spectrum_estimate(&constant(&[1.0, 0.0]), &cfg).unwrap();
        assert_eq!(s.len(), 2);
        assert!(s[0].abs() < 1e-15 && (s[1] - 1.0).abs() < 1e-15);
    }

    #[test]
    fn growing_blocks_are_not_converged() {
        let t = BlockSequenceOperator::new(64, |n| Ok(diag(&[1.0 - 1.0 / (n as f64 + 1.0)]))).unwrap();
        let r = essential_norm_estimate(&t).unwrap();
        assert!(!r.converged && !r.vanishing);
        assert!((r.estimate - 63.0 / 64.0).abs() < 1e-15);
    }

    #[test]
    fn order_on_constant_families() {
        let cfg = ToleranceConfig::default();
        let e1 = constant(&[1.0, 0.0]);
        let e2 = constant(&[0.0, 1.0]);
        assert!(essential_leq(&e1, &e1, &cfg).unwrap());
        assert!(!essential_leq(&e1, &e2, &cfg).unwrap());
        assert!(essential_leq(&constant(&[0.0, 0.0]), &e2, &cfg).unwrap());
        assert!(essential_leq(&e1, &constant(&[1.0, 1.0]), &cfg).unwrap());
        assert!(essential_leq(&e1, &constant(&[0.5, 0.0]), &cfg).is_err());
    }

    #[test]
    fn eventually_zero_defect_counts_as_below() {
        // p differs from 0 only in finitely many blocks: compact
        let cfg = ToleranceConfig::default();
        let p = BlockSequenceOperator::new(64, |n| Ok(diag(&[if n < 5 { 1.0 } else { 0.0 }]))).unwrap();
        assert!(essential_leq(&p, &constant(&[0.0]), &cfg).unwrap());
    }

    #[test]
    fn isolated_values_do_not_persist() {
        let cfg = ToleranceConfig::default();
        let s = BlockSequenceOperator::new(64, |n| Ok(diag(&[0.0, n as f64]))).unwrap();
        assert_eq!(essential_spectrum_estimate(&s, &cfg).unwrap(), vec![0.0]);
    }

    #[test]
    fn cluster_splitting() {
        let c = clusters(vec![0.3, 0.0, 0.3 + 5e-6, 1.0]);
        assert_eq!(c.len(), 3);
        assert_eq!(c[1].len(), 2);
    }
}
