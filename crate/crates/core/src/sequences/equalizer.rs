use serde::Serialize;

use super::schedule::ScheduleConfig;
use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix};
use crate::projection::{common_dim, Projection};
use crate::projorder::{gram_of_product, meet_nullspace};
use crate::spectra::{decompose, HermitianOperator, SpectralDecomposition};
use crate::tolerance::ToleranceConfig;

/// Upper limit on the inner index `m` scanned by the recursive equalizer.
pub const MAX_INNER_SCAN: usize = 64;

fn nonempty(ps: &[Projection]) -> Result<usize> {
    if ps.is_empty() {
        return Err(Error::Argument("projection family must be nonempty".into()));
    }
    common_dim(ps)
}

/// `P_0 ∧ ... ∧ P_n` for every `n`.
pub fn partial_meets(ps: &[Projection], cfg: &ToleranceConfig) -> Result<Vec<Projection>> {
    nonempty(ps)?;
    (1..=ps.len()).map(|k| meet_nullspace(&ps[..k], cfg)).collect()
}

/// Runs the inner-sequence recursion.
///
/// `inner(n, m)` must return the `m`-th term of a decreasing sequence whose
/// meet is `P_0 ∧ ... ∧ P_n`. For each `n >= 1` the first `m` with
/// `||P^perp_{k,n} P_{n,m}|| <= 2^-n` for all `k < n` and
/// `||Q^perp_{n-1} P_{n,m}|| <= 2^-n` is taken, and
/// `Q_n = E^perp_X((1 - 2^{-2n})-)` with `X = Q_{n-1} P_{n,m} Q_{n-1}`.
pub fn equalizer_from_inner<F>(len: usize, mut inner: F, cfg: &ToleranceConfig) -> Result<Vec<Projection>>
where
    F: FnMut(usize, usize) -> Result<Projection>,
{
    if len == 0 {
        return Err(Error::Argument("projection family must be nonempty".into()));
    }
    let mut qs = vec![inner(0, 0)?];
    for n in 1..len {
        let bound = 0.5f64.powi(n as i32) + cfg.order_tol;
        let earlier: Vec<Projection> = (0..n).map(|k| inner(k, n)).collect::<Result<_>>()?;
        let prev = &qs[n - 1];
        let mut chosen = None;
        for m in 0..MAX_INNER_SCAN {
            let x = inner(n, m)?;
            let fits = earlier.iter().all(|pk| perp_times(pk, &x) <= bound) && perp_times(prev, &x) <= bound;
            if fits {
                chosen = Some(x);
                break;
            }
        }
        let x = chosen.ok_or_else(|| {
            Error::Construction(format!("no inner index below {MAX_INNER_SCAN} for n = {n}"))
        })?;
        let sandwich = prev.matrix() * x.matrix() * prev.matrix();
        let cut = 1.0 - 0.25f64.powi(n as i32);
        let q = decompose(&HermitianOperator::from_symmetrized(&sandwich), cfg)?.upper_open(cut);
        qs.push(q);
    }
    Ok(qs)
}

/// `||(1 - P) X||`.
fn perp_times(p: &Projection, x: &Projection) -> f64 {
    linalg::op_norm(&(x.matrix() - p.matrix() * x.matrix()))
}

/// Decreasing sequence with the same meet, built by the inner-sequence
/// recursion with each inner sequence constant at the partial meet.
pub fn decreasing_equalizer_recursive(ps: &[Projection], cfg: &ToleranceConfig) -> Result<Vec<Projection>> {
    let meets = partial_meets(ps, cfg)?;
    equalizer_from_inner(ps.len(), |n, _| Ok(meets[n].clone()), cfg)
}

/// Increasing sequence with the same join, by duality with the decreasing
/// recursion. Fails if some `Q_n` escapes `R(P_0) + ... + R(P_n)`.
pub fn increasing_equalizer(ps: &[Projection], cfg: &ToleranceConfig) -> Result<Vec<Projection>> {
    let complements: Vec<Projection> = ps.iter().map(Projection::complement).collect();
    let qs: Vec<Projection> = decreasing_equalizer_recursive(&complements, cfg)?
        .iter()
        .map(Projection::complement)
        .collect();
    for (n, q) in qs.iter().enumerate() {
        if !range_contained(q, &ps[..=n], cfg) {
            return Err(Error::Construction(format!(
                "increasing equalizer term {n} leaves the span of the first {} ranges",
                n + 1
            )));
        }
    }
    Ok(qs)
}

/// `R(Q) ⊆ R(P_0) + ... + R(P_k)`, by comparing ranks of stacked bases at
/// `order_tol`.
pub fn range_contained(q: &Projection, ps: &[Projection], cfg: &ToleranceConfig) -> bool {
    let n = q.dim();
    let bases: Vec<&CMatrix> = ps.iter().map(Projection::range_basis).collect();
    let span = linalg::hstack(n, &bases);
    let with_q = linalg::hstack(n, &[&span, q.range_basis()]);
    linalg::rank(&with_q, cfg.order_tol) == linalg::rank(&span, cfg.order_tol)
}

/// Projection onto `R(P_0 ... P_n)`.
pub fn range_product_projection(ps: &[Projection], n: usize, cfg: &ToleranceConfig) -> Result<Projection> {
    nonempty(ps)?;
    if n >= ps.len() {
        return Err(Error::Argument(format!(
            "index {n} out of range for a family of {}",
            ps.len()
        )));
    }
    let t = crate::projection::product(&ps[..=n]);
    Projection::onto_span(&t, cfg.rank_tol)
}

/// Output of the schedule-driven equalizer.
#[derive(Debug, Clone, Serialize)]
pub struct SpectralEqualizer {
    /// `Q_n = E^perp_{T_n*T_n}(t_{n,1})`, `T_n = P_0 ... P_n`; `Q_0 = P_0`.
    pub sandwich: Vec<Projection>,
    /// Projections onto `R(Q_0 ... Q_n)`. The last term continues the family
    /// with copies of its final element until the cutoff saturates, so it is
    /// the meet.
    pub decreasing: Vec<Projection>,
    /// Index at which the continued family's cutoff reached `1-`.
    pub saturation_index: usize,
    pub chain: ChainBounds,
}

/// Largest values of `value - 1/(n+1)^2` over `m < n` for the two chain
/// estimates on the sandwich terms; nonpositive when the bounds hold.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChainBounds {
    /// `||P^perp_m Q_n|| - 1/(n+1)^2`.
    pub family_excess: f64,
    /// `||Q^perp_m Q_{m+1} ... Q_n|| - 1/(n+1)^2`.
    pub product_excess: f64,
}

impl ChainBounds {
    pub fn holds(&self, slack: f64) -> bool {
        self.family_excess <= slack && self.product_excess <= slack
    }
}

/// `E^perp(t)` of `T*T` at a schedule cutoff. Cutoffs whose band reaches 1
/// are read as `1-`, since every schedule value lies strictly below 1.
pub fn schedule_cut(dec: &SpectralDecomposition, gap: f64, cfg: &ToleranceConfig) -> Projection {
    if gap > 2.0 * cfg.eig_cluster {
        dec.upper(1.0 - gap)
    } else {
        dec.upper_open(1.0)
    }
}

pub fn decreasing_equalizer_spectral(
    ps: &[Projection],
    sched: &ScheduleConfig,
    cfg: &ToleranceConfig,
) -> Result<SpectralEqualizer> {
    let n = nonempty(ps)?;
    let len = ps.len();
    let (depth_m, depth_n) = sched.depth();
    if len > depth_m + 1 || depth_n < 1 {
        return Err(Error::Config(format!(
            "family of {len} needs schedule depth {}, have ({depth_m}, {depth_n})",
            len - 1
        )));
    }

    let mut sandwich = Vec::with_capacity(len);
    let mut last_dec = None;
    for k in 0..len {
        let (_, tt) = gram_of_product(&ps[..=k])?;
        let dec = decompose(&tt, cfg)?;
        sandwich.push(schedule_cut(&dec, sched.gap(k, 1)?, cfg));
        last_dec = Some(dec);
    }
    // Continue with P_{len-1} repeated: T_k stays put, only the cutoff moves.
    let last_dec = last_dec.expect("nonempty family");
    let mut saturation_index = len - 1;
    while sched.gap(saturation_index, 1)? > 2.0 * cfg.eig_cluster {
        saturation_index += 1;
        if saturation_index > depth_m {
            return Err(Error::Config(format!(
                "cutoff does not saturate within schedule depth {depth_m}"
            )));
        }
    }
    let saturated = schedule_cut(&last_dec, sched.gap(saturation_index, 1)?, cfg);

    let mut decreasing = Vec::with_capacity(len);
    let mut prefix = linalg::identity(n);
    for (k, q) in sandwich.iter().enumerate() {
        let tail = if k + 1 == len { &saturated } else { q };
        decreasing.push(Projection::onto_span(&(&prefix * tail.matrix()), cfg.rank_tol)?);
        prefix *= q.matrix();
    }

    let chain = chain_bounds(ps, &sandwich);
    Ok(SpectralEqualizer {
        sandwich,
        decreasing,
        saturation_index,
        chain,
    })
}

/// Evaluates both chain estimates on `qs` against the family `ps`.
pub fn chain_bounds(ps: &[Projection], qs: &[Projection]) -> ChainBounds {
    let mut family_excess = f64::NEG_INFINITY;
    let mut product_excess = f64::NEG_INFINITY;
    for n in 1..qs.len() {
        let bound = 1.0 / ((n + 1) * (n + 1)) as f64;
        let mut tail = qs[n].matrix().clone();
        for m in (0..n).rev() {
            family_excess = family_excess.max(perp_times(&ps[m], &qs[n]) - bound);
            let prod = &tail - qs[m].matrix() * &tail;
            product_excess = product_excess.max(linalg::op_norm(&prod) - bound);
            tail = qs[m].matrix() * tail;
        }
    }
    ChainBounds {
        family_excess,
        product_excess,
    }
}
