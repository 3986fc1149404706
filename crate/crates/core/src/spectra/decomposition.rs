use super::function::PiecewiseLinearFunction;
use super::hermitian::HermitianOperator;
use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix};
use crate::projection::Projection;
use crate::tolerance::ToleranceConfig;

/// Which side of the cutoff a spectral-family projection is taken on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilySide {
    /// `E_S(t)`: eigenvalues `<= t`.
    Closed,
    /// `E_S(t-)`: eigenvalues `< t`.
    OpenBelow,
}

/// Clustered eigen-decomposition `S = sum_i lambda_i Pi_i`.
///
/// Eigenvalues are ascending and pairwise more than `eig_cluster` apart; each
/// projector spans the eigenvectors of one single-linkage cluster.
#[derive(Debug, Clone)]
pub struct SpectralDecomposition {
    dim: usize,
    eig_cluster: f64,
    eigenvalues: Vec<f64>,
    projectors: Vec<Projection>,
    raw_eigenvalues: Vec<f64>,
}

/// Decomposes a Hermitian operator.
///
/// Eigenvalues within `eig_cluster` of their neighbour are merged into one
/// spectral point (single linkage), represented by the cluster mean.
pub fn decompose(s: &HermitianOperator, cfg: &ToleranceConfig) -> Result<SpectralDecomposition> {
    let m = s.matrix();
    linalg::ensure_finite(m, "operator")?;
    let n = m.nrows();
    let (raw_eigenvalues, vectors) = linalg::hermitian_eigen(m)?;

    let mut groups: Vec<Vec<usize>> = Vec::new();
    for idx in 0..n {
        let joins = idx > 0 && raw_eigenvalues[idx] - raw_eigenvalues[idx - 1] <= cfg.eig_cluster;
        match groups.last_mut() {
            Some(g) if joins => g.push(idx),
            _ => groups.push(vec![idx]),
        }
    }

    let mut eigenvalues = Vec::with_capacity(groups.len());
    let mut projectors = Vec::with_capacity(groups.len());
    for g in &groups {
        let mean = g.iter().map(|&i| raw_eigenvalues[i]).sum::<f64>() / g.len() as f64;
        let vecs = CMatrix::from_fn(n, g.len(), |r, col| vectors[(r, g[col])]);
        eigenvalues.push(mean);
        projectors.push(Projection::from_orthonormal_basis_unchecked(&vecs));
    }

    Ok(SpectralDecomposition {
        dim: n,
        eig_cluster: cfg.eig_cluster,
        eigenvalues,
        projectors,
        raw_eigenvalues,
    })
}

impl SpectralDecomposition {
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Clustered eigenvalues, ascending.
    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn projectors(&self) -> &[Projection] {
        &self.projectors
    }

    /// Unclustered eigenvalues with multiplicity, ascending.
    pub fn raw_eigenvalues(&self) -> &[f64] {
        &self.raw_eigenvalues
    }

    pub fn eig_cluster(&self) -> f64 {
        self.eig_cluster
    }

    /// Sum of the projectors whose eigenvalue satisfies `keep`.
    pub fn select(&self, keep: impl Fn(f64) -> bool) -> Projection {
        let chosen: Vec<&CMatrix> = self
            .eigenvalues
            .iter()
            .zip(&self.projectors)
            .filter(|(lambda, _)| keep(**lambda))
            .map(|(_, p)| p.range_basis())
            .collect();
        if chosen.is_empty() {
            return Projection::zero(self.dim);
        }
        let basis = linalg::hstack(self.dim, &chosen);
        Projection::from_orthonormal_basis_unchecked(&basis)
    }

    /// `E_S(t)`; eigenvalues within `eig_cluster` above `t` are included.
    pub fn lower(&self, t: f64) -> Projection {
        let tol = self.eig_cluster;
        self.select(|l| l <= t + tol)
    }

    /// `E_S(t-)`; eigenvalues within `eig_cluster` below `t` are excluded.
    pub fn lower_open(&self, t: f64) -> Projection {
        let tol = self.eig_cluster;
        self.select(|l| l < t - tol)
    }

    /// `E^perp_S(t) = 1 - E_S(t)`.
    pub fn upper(&self, t: f64) -> Projection {
        let tol = self.eig_cluster;
        self.select(|l| l > t + tol)
    }

    /// `E^perp_S(t-) = 1 - E_S(t-)`.
    pub fn upper_open(&self, t: f64) -> Projection {
        let tol = self.eig_cluster;
        self.select(|l| l >= t - tol)
    }

    pub fn family_at(&self, t: f64, side: FamilySide) -> Projection {
        match side {
            FamilySide::Closed => self.lower(t),
            FamilySide::OpenBelow => self.lower_open(t),
        }
    }

    /// `sum_i f(lambda_i) Pi_i`.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> CMatrix {
        let mut out = linalg::zeros(self.dim, self.dim);
        for (lambda, p) in self.eigenvalues.iter().zip(&self.projectors) {
            out += p.matrix() * c(f(*lambda));
        }
        out
    }

    pub fn reconstruct(&self) -> CMatrix {
        self.apply(|l| l)
    }
}

pub fn spectral_family_at(
    s: &HermitianOperator,
    t: f64,
    side: FamilySide,
    cfg: &ToleranceConfig,
) -> Result<Projection> {
    Ok(decompose(s, cfg)?.family_at(t, side))
}

/// Clustered spectrum of a Hermitian operator.
pub fn spectrum(s: &HermitianOperator, cfg: &ToleranceConfig) -> Result<Vec<f64>> {
    Ok(decompose(s, cfg)?.eigenvalues)
}

/// Continuous functional calculus for a piecewise-linear `f`.
pub fn apply_function(
    s: &HermitianOperator,
    f: &PiecewiseLinearFunction,
    cfg: &ToleranceConfig,
) -> Result<HermitianOperator> {
    let dec = decompose(s, cfg)?;
    Ok(HermitianOperator::from_symmetrized(&dec.apply(|x| f.eval(x))))
}

/// A projection `P` with `E^perp_S(s) <= P <= E^perp_S(t)` for `0 < t < s`.
///
/// Finite-dimensional algebras contain every spectral projection, so the
/// upper end `E^perp_S(t)` is returned.
pub fn spectral_window_projection(
    s: &HermitianOperator,
    upper_cut: f64,
    lower_cut: f64,
    cfg: &ToleranceConfig,
) -> Result<Projection> {
    if !(lower_cut > 0.0 && lower_cut < upper_cut) {
        return Err(Error::Argument(format!(
            "spectral window needs 0 < t < s, got t = {lower_cut}, s = {upper_cut}"
        )));
    }
    Ok(decompose(s, cfg)?.upper(lower_cut))
}
