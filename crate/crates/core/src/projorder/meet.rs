use crate::error::{check_dim, Result};
use crate::linalg::{self, CMatrix};
use crate::projection::{self, common_dim, Projection};
use crate::spectra::{decompose, HermitianOperator};
use crate::tolerance::ToleranceConfig;

/// `P <= Q`, tested as `||P - QP|| <= order_tol`.
pub fn leq(p: &Projection, q: &Projection, cfg: &ToleranceConfig) -> Result<bool> {
    check_dim(p.dim(), q.dim())?;
    Ok(order_defect(p, q) <= cfg.order_tol)
}

/// `||P - QP||`, which vanishes exactly when `P <= Q`.
pub fn order_defect(p: &Projection, q: &Projection) -> f64 {
    linalg::op_norm(&(p.matrix() - q.matrix() * p.matrix()))
}

pub fn complement(p: &Projection) -> Projection {
    p.complement()
}

/// Meet computed directly as the null space of the stacked complements.
pub fn meet_nullspace(ps: &[Projection], cfg: &ToleranceConfig) -> Result<Projection> {
    let n = common_dim(ps)?;
    let complements: Vec<CMatrix> = ps
        .iter()
        .map(|p| linalg::identity(n) - p.matrix())
        .collect();
    let stacked = linalg::vstack(n, &complements);
    let basis = linalg::null_space(&stacked, cfg.rank_tol);
    Ok(Projection::from_orthonormal_basis_unchecked(&basis))
}

/// `T*T` for `T = P_0 P_1 ... P_k`.
pub fn gram_of_product(ps: &[Projection]) -> Result<(CMatrix, HermitianOperator)> {
    common_dim(ps)?;
    let t = projection::product(ps);
    let tt = HermitianOperator::from_symmetrized(&(t.adjoint() * &t));
    Ok((t, tt))
}

/// Meet as the spectral projection `E^perp_{T*T}(1-)`.
pub fn meet_spectral(ps: &[Projection], cfg: &ToleranceConfig) -> Result<Projection> {
    let (_, tt) = gram_of_product(ps)?;
    Ok(decompose(&tt, cfg)?.upper_open(1.0))
}

/// Join by duality: `1 - meet(1 - P_i)`.
pub fn join(ps: &[Projection], cfg: &ToleranceConfig) -> Result<Projection> {
    let complements: Vec<Projection> = ps.iter().map(Projection::complement).collect();
    Ok(meet_spectral(&complements, cfg)?.complement())
}

/// Join computed directly as the span of the concatenated range bases.
pub fn join_span(ps: &[Projection], cfg: &ToleranceConfig) -> Result<Projection> {
    let n = common_dim(ps)?;
    let bases: Vec<&CMatrix> = ps.iter().map(Projection::range_basis).collect();
    Projection::onto_span(&linalg::hstack(n, &bases), cfg.rank_tol)
}
