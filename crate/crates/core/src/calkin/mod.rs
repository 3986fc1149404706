//! A desk-scale model of the Calkin quotient `B(H)/K(H)`.
//!
//! Every operator here is block diagonal, `T = ⊕ T_n` with finite blocks,
//! and is truncated to the first `N` blocks. A block-diagonal operator is
//! compact exactly when `||T_n|| → 0`, so the quotient norm is the limit
//! superior of the block norms and the essential spectrum is the set of
//! limit points of block eigenvalues. Both are estimated from the tail
//! window `[N/2, N)`, with diagnostics over doubling windows instead of
//! extrapolation.

mod closed_sum;
mod essential;
mod families;
mod operator;

pub use closed_sum::{closed_sum_diagnostic, ClosedSumReport};
pub use essential::{
    essential_leq, essential_norm_estimate, essential_order, essential_spectrum_estimate,
    tail_sup_excluding_one, EssentialOrderReport, EssentialReport, DECAY_RATIO, PERSISTENCE_RADIUS,
    TOL_ESS,
};
pub use families::{
    badpq_family, badpq_overlap, badpq_q_block, custom_family, pomega_family, pomega_index,
    truncated_meet_rank, CustomBlocks, FamilyKind, FamilySpec,
};
pub use operator::{BlockSequenceOperator, MIN_TRUNCATION};

use serde::Serialize;

use crate::error::Result;
use crate::tolerance::ToleranceConfig;

/// Everything the model says about a pair `P, Q` of projection sequences.
#[derive(Debug, Clone, Serialize)]
pub struct CalkinDemoReport {
    #[serde(rename = "N")]
    pub truncation: usize,
    /// `π(P - Q)`.
    pub difference_norm: EssentialReport,
    pub p_below_q: EssentialOrderReport,
    pub q_below_p: EssentialOrderReport,
    /// `π(PQ)`.
    pub pq_norm: EssentialReport,
    /// Persistent tail spectrum of `PQP`.
    pub pqp_essential_spectrum: Vec<f64>,
    /// `sup σ((PQ)*(PQ)) \ {1}` over the tail window.
    pub tail_sup_excluding_one: f64,
    /// Rank of `P ∧ Q` summed over blocks `0..N`.
    pub truncated_meet_rank: usize,
    /// `R(P) + R(Q)` against the identity.
    pub closed_sum: ClosedSumReport,
}

pub fn calkin_demo(
    p: &BlockSequenceOperator,
    q: &BlockSequenceOperator,
    cfg: &ToleranceConfig,
) -> Result<CalkinDemoReport> {
    let pq = p.mul(q)?;
    Ok(CalkinDemoReport {
        truncation: p.truncation(),
        difference_norm: essential_norm_estimate(&p.sub(q)?)?,
        p_below_q: essential_order(p, q, cfg)?,
        q_below_p: essential_order(q, p, cfg)?,
        pq_norm: essential_norm_estimate(&pq)?,
        pqp_essential_spectrum: essential_spectrum_estimate(&pq.mul(p)?, cfg)?,
        tail_sup_excluding_one: tail_sup_excluding_one(&pq, cfg)?,
        truncated_meet_rank: truncated_meet_rank(&[p.clone(), q.clone()], cfg)?,
        closed_sum: closed_sum_diagnostic(&[p.clone(), q.clone()], &p.identity_like(), cfg)?,
    })
}
