use serde::Serialize;

use super::essential::{essential_order, EssentialOrderReport, DECAY_RATIO, TOL_ESS};
use super::operator::BlockSequenceOperator;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::projection::Projection;
use crate::projorder::join_span;
use crate::tolerance::ToleranceConfig;

/// Demonstrative comparison of `Σ R(P_n)` with the range of `P`.
///
/// A finite sum of closed subspaces is closed exactly when the smallest
/// nonzero singular value of the concatenated orthonormal range bases stays
/// away from zero. Per block that value is always positive, so closedness
/// is judged from its tail behaviour. This is a heuristic at finite `N`.
#[derive(Debug, Clone, Serialize)]
pub struct ClosedSumReport {
    pub heuristic: bool,
    /// Smallest nonzero singular value of the stacked range bases, minimized
    /// over `[N/8, N/4)`, `[N/4, N/2)`, `[N/2, N)`.
    pub min_angle_windows: Vec<f64>,
    pub sum_closed: bool,
    /// `π(J) <= π(P)` for the blockwise join `J` of the family.
    pub join_below_p: EssentialOrderReport,
    /// `π(P) <= π(J)`.
    pub p_below_join: EssentialOrderReport,
    /// The sum looks closed and `P` looks like its closure: then the join
    /// commutes with the quotient map at the modeled scale.
    pub consistent_with_closed: bool,
}

fn stacked_min_singular(ps: &[Projection], cfg: &ToleranceConfig) -> f64 {
    let n = ps[0].dim();
    let bases: Vec<&CMatrix> = ps.iter().map(Projection::range_basis).collect();
    let stacked = linalg::hstack(n, &bases);
    if stacked.ncols() == 0 {
        return 1.0;
    }
    linalg::singular_values(&stacked)
        .into_iter()
        .filter(|&s| s > cfg.rank_tol)
        .fold(1.0, f64::min)
}

pub fn closed_sum_diagnostic(
    pn: &[BlockSequenceOperator],
    p: &BlockSequenceOperator,
    cfg: &ToleranceConfig,
) -> Result<ClosedSumReport> {
    if pn.is_empty() {
        return Err(Error::Argument("closed-sum diagnostic needs a nonempty family".into()));
    }
    let truncation = p.truncation();
    if let Some(bad) = pn.iter().find(|o| o.truncation() != truncation) {
        return Err(Error::Argument(format!(
            "family truncation {} differs from P's {truncation}",
            bad.truncation()
        )));
    }
    let blocks_at = {
        let pn = pn.to_vec();
        move |n: usize| -> Result<Vec<Projection>> {
            pn.iter().map(|o| Projection::from_matrix(o.block(n)?)).collect()
        }
    };

    let mut min_angle_windows = Vec::new();
    for w in p.doubling_windows() {
        let mut best = 1.0f64;
        for n in w {
            best = best.min(stacked_min_singular(&blocks_at(n)?, cfg));
        }
        min_angle_windows.push(best);
    }
    let [a0, a1, a2] = [min_angle_windows[0], min_angle_windows[1], min_angle_windows[2]];
    let closing = a2 <= TOL_ESS || (a1 <= DECAY_RATIO * a0 && a2 <= DECAY_RATIO * a1);

    let join_cfg = *cfg;
    let join = BlockSequenceOperator::new(truncation, move |n| {
        Ok(join_span(&blocks_at(n)?, &join_cfg)?.matrix().clone())
    })?;
    let join_below_p = essential_order(&join, p, cfg)?;
    let p_below_join = essential_order(p, &join, cfg)?;
    let sum_closed = !closing;
    Ok(ClosedSumReport {
        heuristic: true,
        consistent_with_closed: sum_closed && join_below_p.holds && p_below_join.holds,
        min_angle_windows,
        sum_closed,
        join_below_p,
        p_below_join,
    })
}
