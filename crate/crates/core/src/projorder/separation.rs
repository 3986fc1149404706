use serde::Serialize;

use super::meet::{leq, meet_nullspace, order_defect};
use crate::error::{check_dim, Error, Result};
use crate::linalg;
use crate::projection::Projection;
use crate::spectra::{decompose, HermitianOperator};
use crate::tolerance::ToleranceConfig;

/// A nonzero `R <= P` whose meet with `Q` is zero.
#[derive(Debug, Clone, Serialize)]
pub struct SeparativityWitness {
    pub witness: Projection,
    /// Cutoff `s = ||Q^perp P||^2 / 2`.
    pub cutoff: f64,
    /// `||QR||`.
    pub qr_norm: f64,
    /// `sqrt(1 - s)`, the guaranteed bound on `||QR||`.
    pub qr_bound: f64,
}

/// Builds `R = E^perp_{PQ^perp P}(s)` with `s = ||Q^perp P||^2 / 2`.
pub fn separativity_witness(
    p: &Projection,
    q: &Projection,
    cfg: &ToleranceConfig,
) -> Result<SeparativityWitness> {
    check_dim(p.dim(), q.dim())?;
    if leq(p, q, cfg)? {
        return Err(Error::Order(format!(
            "P <= Q (||Q^perp P|| = {:.3e}), so no separating witness exists",
            order_defect(p, q)
        )));
    }
    let n = p.dim();
    let qperp_p = (linalg::identity(n) - q.matrix()) * p.matrix();
    let gap = linalg::op_norm(&qperp_p);
    let cutoff = gap * gap / 2.0;
    let s = HermitianOperator::from_symmetrized(&(qperp_p.adjoint() * &qperp_p));
    let witness = decompose(&s, cfg)?.upper(cutoff);
    let qr_norm = linalg::op_norm(&(q.matrix() * witness.matrix()));
    Ok(SeparativityWitness {
        witness,
        cutoff,
        qr_norm,
        qr_bound: (1.0 - cutoff).sqrt(),
    })
}

/// Individual postconditions of a separativity witness.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WitnessCheck {
    pub nonzero: bool,
    pub below_p: bool,
    pub qr_within_bound: bool,
    pub meet_with_q_zero: bool,
}

impl WitnessCheck {
    pub fn all(&self) -> bool {
        self.nonzero && self.below_p && self.qr_within_bound && self.meet_with_q_zero
    }
}

pub fn check_witness(
    p: &Projection,
    q: &Projection,
    w: &SeparativityWitness,
    cfg: &ToleranceConfig,
) -> Result<WitnessCheck> {
    let r = &w.witness;
    Ok(WitnessCheck {
        nonzero: !r.is_zero(),
        below_p: leq(r, p, cfg)?,
        qr_within_bound: w.qr_norm <= w.qr_bound + cfg.order_tol,
        meet_with_q_zero: meet_nullspace(&[r.clone(), q.clone()], cfg)?.is_zero(),
    })
}
