use serde::Serialize;

use crate::error::{check_dim, Error, Result};
use crate::io;
use crate::linalg::{self, CVector};
use crate::projection::Projection;
use crate::projorder::meet_nullspace;
use crate::spectra::{decompose, HermitianOperator, PiecewiseLinearFunction};
use crate::tolerance::ToleranceConfig;

/// A self-adjoint `S` below both `P` and `Q` that is incomparable with 0.
#[derive(Debug, Clone, Serialize)]
pub struct GapCertificate {
    pub s: HermitianOperator,
    /// Eigenvalue of `PQP` in `(0, 1)` used to shape `f`.
    pub r: f64,
    /// Unit eigenvector of `PQP` for `r`; `<S w, w> = f(r) = r/4`.
    #[serde(with = "io::vector")]
    pub witness_pos: CVector,
    /// Unit vector in `R(P)^perp`; `<S w, w> = f(0) = -1`.
    #[serde(with = "io::vector")]
    pub witness_neg: CVector,
    pub checks: GapChecks,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapChecks {
    pub p_minus_s_min_eig: f64,
    pub q_minus_s_min_eig: f64,
    pub pos_value: f64,
    pub neg_value: f64,
    /// `||(P ∧ Q) witness_pos||`.
    pub pos_meet_overlap: f64,
    pub below_p: bool,
    pub below_q: bool,
    pub incomparable_with_zero: bool,
    pub pos_orthogonal_to_meet: bool,
}

impl GapChecks {
    pub fn all(&self) -> bool {
        self.below_p && self.below_q && self.incomparable_with_zero && self.pos_orthogonal_to_meet
    }
}

/// `f` equal to `-1` up to `r/2`, rising linearly to `r/4` at `3r/4`, then
/// constant.
pub fn gap_function(r: f64) -> Result<PiecewiseLinearFunction> {
    PiecewiseLinearFunction::new(vec![r / 2.0, 0.75 * r], vec![-1.0, r / 4.0])
}

/// Builds `S = f(PQP)` for a non-commuting pair.
pub fn gap_element(p: &Projection, q: &Projection, cfg: &ToleranceConfig) -> Result<GapCertificate> {
    check_dim(p.dim(), q.dim())?;
    let (pm, qm) = (p.matrix(), q.matrix());
    let commutator = linalg::op_norm(&(pm * qm - qm * pm));
    if commutator <= cfg.order_tol {
        return Err(Error::Construction(format!(
            "P and Q commute (||PQ - QP|| = {commutator:.3e}); PQP has no eigenvalue in (0, 1)"
        )));
    }
    if p.is_identity() {
        return Err(Error::Argument("P must be a proper projection".into()));
    }

    let pqp = HermitianOperator::from_symmetrized(&(pm * qm * pm));
    let dec = decompose(&pqp, cfg)?;
    let eig = cfg.eig_cluster;
    // ascending, so a later candidate must be closer to 1/2 by more than the
    // cluster radius to displace an earlier one
    let mut pick: Option<(usize, f64)> = None;
    for (i, &l) in dec.eigenvalues().iter().enumerate() {
        let closer = |r: f64| (l - 0.5).abs() < (r - 0.5).abs() - eig;
        if l > eig && l < 1.0 - eig && pick.is_none_or(|(_, r)| closer(r)) {
            pick = Some((i, l));
        }
    }
    let (idx, r) = pick.ok_or_else(|| {
        Error::Construction("PQP has no eigenvalue strictly inside (0, 1)".into())
    })?;

    let f = gap_function(r)?;
    let s = HermitianOperator::from_symmetrized(&dec.apply(|x| f.eval(x)));
    let witness_pos = dec.projectors()[idx].range_basis().column(0).into_owned();
    let witness_neg = p.complement().range_basis().column(0).into_owned();

    let sm = s.matrix();
    let meet = meet_nullspace(&[p.clone(), q.clone()], cfg)?;
    let p_minus_s_min_eig = linalg::min_hermitian_eigenvalue(&(pm - sm));
    let q_minus_s_min_eig = linalg::min_hermitian_eigenvalue(&(qm - sm));
    let pos_value = linalg::quadratic_form(sm, &witness_pos);
    let neg_value = linalg::quadratic_form(sm, &witness_neg);
    let pos_meet_overlap = (meet.matrix() * &witness_pos).norm();
    let checks = GapChecks {
        p_minus_s_min_eig,
        q_minus_s_min_eig,
        pos_value,
        neg_value,
        pos_meet_overlap,
        below_p: p_minus_s_min_eig >= -cfg.psd_tol,
        below_q: q_minus_s_min_eig >= -cfg.psd_tol,
        incomparable_with_zero: pos_value > 0.0 && neg_value < 0.0,
        pos_orthogonal_to_meet: pos_meet_overlap <= cfg.order_tol,
    };
    Ok(GapCertificate {
        s,
        r,
        witness_pos,
        witness_neg,
        checks,
    })
}
