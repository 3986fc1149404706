//! Orthogonal projections with a canonical range basis.

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix};

/// Idempotence and self-adjointness slack accepted when validating input.
pub const PROJECTION_TOL: f64 = 1e-9;

/// Allowed gap between the trace and the integer rank.
pub const RANK_TRACE_TOL: f64 = 1e-6;

/// A Hermitian idempotent stored together with its canonical range basis.
///
/// The matrix is always rebuilt as `B B*` from the basis `B`, so the two views
/// agree to rounding. The basis is canonical: columns of the projector are
/// orthonormalized in coordinate order.
#[derive(Debug, Clone)]
pub struct Projection {
    matrix: CMatrix,
    basis: CMatrix,
}

impl Projection {
    pub fn zero(n: usize) -> Self {
        Self {
            matrix: linalg::zeros(n, n),
            basis: linalg::zeros(n, 0),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self {
            matrix: linalg::identity(n),
            basis: linalg::identity(n),
        }
    }

    /// Validates `m` as a projection and canonicalizes it.
    pub fn from_matrix(m: CMatrix) -> Result<Self> {
        let n = linalg::ensure_square(&m)?;
        linalg::ensure_finite(&m, "projection")?;
        let asym = (&m - m.adjoint()).norm();
        if asym > PROJECTION_TOL {
            return Err(Error::NotProjection(format!(
                "||M - M*|| = {asym:.3e} exceeds {PROJECTION_TOL:.0e}"
            )));
        }
        let idem = (&m * &m - &m).norm();
        if idem > PROJECTION_TOL {
            return Err(Error::NotProjection(format!(
                "||M^2 - M|| = {idem:.3e} exceeds {PROJECTION_TOL:.0e}"
            )));
        }
        let trace = m.trace().re;
        let rank = trace.round();
        if (trace - rank).abs() > RANK_TRACE_TOL || rank < 0.0 || rank > n as f64 {
            return Err(Error::NotProjection(format!(
                "trace {trace} is not an integer rank"
            )));
        }
        Ok(Self::from_projector_unchecked(&linalg::hermitian_part(&m), rank as usize))
    }

    /// Projection whose range is spanned by the orthonormal columns of `basis`.
    pub fn from_orthonormal_basis(basis: &CMatrix) -> Result<Self> {
        linalg::ensure_finite(basis, "range basis")?;
        let k = basis.ncols();
        let gram = basis.adjoint() * basis;
        let err = (gram - linalg::identity(k)).norm();
        if err > PROJECTION_TOL {
            return Err(Error::NotProjection(format!(
                "range basis is not orthonormal (Gram error {err:.3e})"
            )));
        }
        Ok(Self::from_orthonormal_basis_unchecked(basis))
    }

    pub(crate) fn from_orthonormal_basis_unchecked(basis: &CMatrix) -> Self {
        let projector = basis * basis.adjoint();
        Self::from_projector_unchecked(&projector, basis.ncols())
    }

    /// Projection onto the column space of an arbitrary matrix, with
    /// singular values at or below `rank_tol` discarded.
    pub fn onto_span(vectors: &CMatrix, rank_tol: f64) -> Result<Self> {
        linalg::ensure_finite(vectors, "spanning set")?;
        let range = linalg::orthonormal_range(vectors, rank_tol);
        Ok(Self::from_orthonormal_basis_unchecked(&range))
    }

    fn from_projector_unchecked(projector: &CMatrix, rank: usize) -> Self {
        let n = projector.nrows();
        if rank == 0 {
            return Self::zero(n);
        }
        if rank == n {
            return Self::identity(n);
        }
        let basis = linalg::canonical_basis(projector, rank);
        let matrix = &basis * basis.adjoint();
        Self { matrix, basis }
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn rank(&self) -> usize {
        self.basis.ncols()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn range_basis(&self) -> &CMatrix {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.rank() == 0
    }

    pub fn is_identity(&self) -> bool {
        self.rank() == self.dim()
    }

    /// `1 - P`.
    pub fn complement(&self) -> Self {
        let n = self.dim();
        let m = linalg::identity(n) - &self.matrix;
        Self::from_projector_unchecked(&linalg::hermitian_part(&m), n - self.rank())
    }

    /// Frobenius distance between the projector matrices.
    pub fn distance(&self, other: &Projection) -> f64 {
        (&self.matrix - &other.matrix).norm()
    }

    pub fn invariant_errors(&self) -> (f64, f64, f64) {
        let m = &self.matrix;
        let idem = (m * m - m).norm();
        let asym = (m - m.adjoint()).norm();
        let basis_fixed = (m * &self.basis - &self.basis).norm();
        (idem, asym, basis_fixed)
    }
}

/// `P_0 P_1 ... P_k` as a dense matrix.
pub fn product(ps: &[Projection]) -> CMatrix {
    let n = ps.first().map(|p| p.dim()).unwrap_or(0);
    linalg::ordered_product(n, ps.iter().map(|p| p.matrix()))
}

pub(crate) fn common_dim(ps: &[Projection]) -> Result<usize> {
    let first = ps
        .first()
        .ok_or_else(|| Error::Argument("projection list is empty".into()))?;
    let n = first.dim();
    for p in ps {
        crate::error::check_dim(n, p.dim())?;
    }
    Ok(n)
}

/// Rank-one projection onto the line through `v`.
pub fn line(v: &[f64]) -> Result<Projection> {
    let n = v.len();
    let col = CMatrix::from_fn(n, 1, |i, _| c(v[i]));
    let norm = col.norm();
    if norm == 0.0 {
        return Err(Error::Argument("cannot project onto the zero vector".into()));
    }
    Projection::from_orthonormal_basis(&(col / c(norm)))
}
