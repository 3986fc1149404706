use serde::Serialize;

use super::meet::{gram_of_product, leq, meet_nullspace};
use crate::error::{check_dim, Result};
use crate::linalg;
use crate::projection::{common_dim, Projection};
use crate::spectra::decompose;
use crate::tolerance::ToleranceConfig;

/// Spectral test for the meet of `P_0, ..., P_k` via `T = P_0 ... P_k`.
#[derive(Debug, Clone, Serialize)]
pub struct GlbReport {
    /// `sup(σ(T*T) \ {1})`, zero when nothing remains.
    pub sup_sigma_excl_one: f64,
    pub criterion_holds: bool,
    pub meet: Projection,
    /// `||T - meet||`.
    pub norm_gap: f64,
}

pub fn glb_criterion(ps: &[Projection], cfg: &ToleranceConfig) -> Result<GlbReport> {
    let (t, tt) = gram_of_product(ps)?;
    let dec = decompose(&tt, cfg)?;
    let sup = dec
        .eigenvalues()
        .iter()
        .filter(|l| (*l - 1.0).abs() > cfg.eig_cluster)
        .fold(0.0f64, |a, &l| a.max(l));
    let meet = dec.upper_open(1.0);
    let norm_gap = linalg::op_norm(&(&t - meet.matrix()));
    Ok(GlbReport {
        sup_sigma_excl_one: sup,
        criterion_holds: sup < 1.0 - cfg.eig_cluster,
        meet,
        norm_gap,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NormCheck {
    pub is_glb: bool,
    pub below_all: bool,
    /// `||T - R||`.
    pub norm: f64,
}

/// Decides whether `R` is the meet of `ps` from `R <= P_i` and `||T - R|| < 1`.
pub fn glb_norm_check(ps: &[Projection], r: &Projection, cfg: &ToleranceConfig) -> Result<NormCheck> {
    let n = common_dim(ps)?;
    check_dim(n, r.dim())?;
    let mut below_all = true;
    for p in ps {
        below_all &= leq(r, p, cfg)?;
    }
    let (t, _) = gram_of_product(ps)?;
    let norm = linalg::op_norm(&(t - r.matrix()));
    Ok(NormCheck {
        is_glb: below_all && norm < 1.0 - cfg.order_tol,
        below_all,
        norm,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NonzeroMeetReport {
    /// Decided by the rank of the null-space meet.
    pub meet_nonzero: bool,
    pub pq_norm: f64,
    /// Whether `|pq_norm - 1| <= order_tol` agrees with `meet_nonzero`.
    pub agrees: bool,
}

pub fn nonzero_meet_check(
    p: &Projection,
    q: &Projection,
    cfg: &ToleranceConfig,
) -> Result<NonzeroMeetReport> {
    check_dim(p.dim(), q.dim())?;
    let meet_nonzero = !meet_nullspace(&[p.clone(), q.clone()], cfg)?.is_zero();
    let pq_norm = linalg::op_norm(&(p.matrix() * q.matrix()));
    let norm_one = (pq_norm - 1.0).abs() <= cfg.order_tol;
    Ok(NonzeroMeetReport {
        meet_nonzero,
        pq_norm,
        agrees: norm_one == meet_nonzero,
    })
}
