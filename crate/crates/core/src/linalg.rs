//! Dense complex matrix helpers shared by every module.

use faer::{Mat, MatRef, Side};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

pub fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn zeros(rows: usize, cols: usize) -> CMatrix {
    CMatrix::zeros(rows, cols)
}

/// Real diagonal matrix.
pub fn diag(values: &[f64]) -> CMatrix {
    let n = values.len();
    CMatrix::from_fn(n, n, |i, j| if i == j { c(values[i]) } else { c(0.0) })
}

/// Builds a square matrix from real row-major entries.
pub fn real_matrix(n: usize, rows: &[f64]) -> CMatrix {
    assert_eq!(rows.len(), n * n, "real_matrix expects n*n entries");
    CMatrix::from_fn(n, n, |i, j| c(rows[i * n + j]))
}

pub fn frobenius(m: &CMatrix) -> f64 {
    m.norm()
}

pub fn all_finite(m: &CMatrix) -> bool {
    m.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

pub fn ensure_finite(m: &CMatrix, what: &str) -> Result<()> {
    if all_finite(m) {
        Ok(())
    } else {
        Err(Error::NumericInput(format!("{what} has non-finite entries")))
    }
}

pub fn ensure_square(m: &CMatrix) -> Result<usize> {
    if m.nrows() == m.ncols() {
        Ok(m.nrows())
    } else {
        Err(Error::Argument(format!(
            "expected a square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )))
    }
}

/// Largest singular value; zero for empty matrices.
pub fn op_norm(m: &CMatrix) -> f64 {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0.0;
    }
    singular_values(m).first().copied().unwrap_or(f64::NAN)
}

fn to_faer(m: &CMatrix) -> Mat<Complex64> {
    Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

fn from_faer(m: MatRef<'_, Complex64>) -> CMatrix {
    CMatrix::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

/// Singular values in non-increasing order; NaN-filled if the solver fails.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    let k = m.nrows().min(m.ncols());
    to_faer(m)
        .singular_values()
        .unwrap_or_else(|_| vec![f64::NAN; k])
}

/// Full SVD `(U, s, V)` with `m = U diag(s) V*` and `s` non-increasing.
fn full_svd(m: &CMatrix) -> Result<(CMatrix, Vec<f64>, CMatrix)> {
    ensure_finite(m, "matrix")?;
    let svd = to_faer(m)
        .svd()
        .map_err(|e| Error::NumericInput(format!("SVD did not converge: {e:?}")))?;
    let s: Vec<f64> = svd.S().column_vector().iter().map(|z| z.re).collect();
    Ok((from_faer(svd.U()), s, from_faer(svd.V())))
}

pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()) * c(0.5)
}

/// Ordered product `m_0 m_1 ... m_k`; identity of size `n` when empty.
pub fn ordered_product<'a>(n: usize, factors: impl IntoIterator<Item = &'a CMatrix>) -> CMatrix {
    factors
        .into_iter()
        .fold(identity(n), |acc, f| acc * f)
}

/// Smallest eigenvalue of the Hermitian part of `m`.
pub fn min_hermitian_eigenvalue(m: &CMatrix) -> f64 {
    if m.nrows() == 0 {
        return 0.0;
    }
    hermitian_eigenvalues(&hermitian_part(m))
        .map(|v| v[0])
        .unwrap_or(f64::NAN)
}

/// Eigenvalues of a Hermitian matrix, ascending, with multiplicity.
pub fn hermitian_eigenvalues(h: &CMatrix) -> Result<Vec<f64>> {
    ensure_finite(h, "operator")?;
    let mut vals = to_faer(h)
        .self_adjoint_eigenvalues(Side::Lower)
        .map_err(|e| Error::NumericInput(format!("Hermitian eigensolver failed: {e:?}")))?;
    vals.sort_by(f64::total_cmp);
    Ok(vals)
}

/// Eigen-decomposition of a Hermitian matrix: ascending eigenvalues and a
/// unitary whose columns are matching eigenvectors.
pub fn hermitian_eigen(h: &CMatrix) -> Result<(Vec<f64>, CMatrix)> {
    ensure_square(h)?;
    ensure_finite(h, "operator")?;
    let eig = to_faer(h)
        .self_adjoint_eigen(Side::Lower)
        .map_err(|e| Error::NumericInput(format!("Hermitian eigensolver failed: {e:?}")))?;
    let vals: Vec<f64> = eig.S().column_vector().iter().map(|z| z.re).collect();
    let u = from_faer(eig.U());
    let mut order: Vec<usize> = (0..vals.len()).collect();
    order.sort_by(|&a, &b| vals[a].total_cmp(&vals[b]));
    let sorted = order.iter().map(|&i| vals[i]).collect();
    let vectors = CMatrix::from_fn(u.nrows(), u.ncols(), |i, j| u[(i, order[j])]);
    Ok((sorted, vectors))
}

/// Eigenvalues of a general square matrix, unordered.
pub fn general_eigenvalues(m: &CMatrix) -> Result<Vec<Complex64>> {
    ensure_square(m)?;
    ensure_finite(m, "matrix")?;
    to_faer(m)
        .eigenvalues()
        .map_err(|e| Error::NumericInput(format!("eigenvalue iteration failed: {e:?}")))
}

/// Orthonormal basis of the column space, keeping singular values above `tol`.
pub fn orthonormal_range(m: &CMatrix, tol: f64) -> CMatrix {
    let n = m.nrows();
    if m.ncols() == 0 || n == 0 {
        return zeros(n, 0);
    }
    match full_svd(m) {
        Ok((u, s, _)) => {
            let k = s.iter().filter(|x| **x > tol).count();
            u.columns(0, k).into_owned()
        }
        Err(_) => zeros(n, 0),
    }
}

/// Orthonormal basis of the null space, using singular values at or below `tol`.
pub fn null_space(m: &CMatrix, tol: f64) -> CMatrix {
    let n = m.ncols();
    if n == 0 {
        return zeros(0, 0);
    }
    if m.nrows() == 0 {
        return identity(n);
    }
    match full_svd(m) {
        Ok((_, s, v)) => {
            let rank = s.iter().filter(|x| **x > tol).count();
            v.columns(rank, n - rank).into_owned()
        }
        Err(_) => zeros(n, 0),
    }
}

/// Column rank with singular-value threshold `tol`.
pub fn rank(m: &CMatrix, tol: f64) -> usize {
    if m.nrows() == 0 || m.ncols() == 0 {
        return 0;
    }
    singular_values(m).iter().filter(|s| **s > tol).count()
}

/// Canonical orthonormal basis of the range of the orthogonal projector `proj`.
///
/// Columns `proj * e_j` are orthonormalized in index order (two Gram-Schmidt
/// passes). A column is accepted when its residual exceeds `0.5 / sqrt(n)`; a
/// full-rank pass always exists at that threshold because the squared
/// residuals of all columns sum to the remaining rank. Should rounding leave
/// the pass short, the largest remaining residual is taken.
pub fn canonical_basis(proj: &CMatrix, rank: usize) -> CMatrix {
    let n = proj.nrows();
    let mut basis: Vec<CVector> = Vec::with_capacity(rank);
    if rank == 0 {
        return zeros(n, 0);
    }
    let threshold = 0.5 / (n as f64).sqrt();
    let residual = |basis: &[CVector], j: usize| -> CVector {
        let mut v = proj.column(j).into_owned();
        for _ in 0..2 {
            for b in basis {
                let coeff = b.dotc(&v);
                v -= b * coeff;
            }
        }
        v
    };
    for j in 0..n {
        if basis.len() == rank {
            break;
        }
        let v = residual(&basis, j);
        let norm = v.norm();
        if norm >= threshold {
            basis.push(v / c(norm));
        }
    }
    while basis.len() < rank {
        let (v, norm) = (0..n)
            .map(|j| {
                let v = residual(&basis, j);
                let norm = v.norm();
                (v, norm)
            })
            .fold((CVector::zeros(n), 0.0), |best, cand| {
                if cand.1 > best.1 {
                    cand
                } else {
                    best
                }
            });
        if norm == 0.0 {
            break;
        }
        basis.push(v / c(norm));
    }
    if basis.is_empty() {
        return zeros(n, 0);
    }
    CMatrix::from_columns(&basis)
}

/// Concatenates matrices with equal row counts side by side.
pub fn hstack(n: usize, blocks: &[&CMatrix]) -> CMatrix {
    let cols: usize = blocks.iter().map(|b| b.ncols()).sum();
    let mut out = zeros(n, cols);
    let mut offset = 0;
    for b in blocks {
        out.view_mut((0, offset), (n, b.ncols())).copy_from(*b);
        offset += b.ncols();
    }
    out
}

/// Stacks matrices with equal column counts vertically.
pub fn vstack(n: usize, blocks: &[CMatrix]) -> CMatrix {
    let rows: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut out = zeros(rows, n);
    let mut offset = 0;
    for b in blocks {
        out.view_mut((offset, 0), (b.nrows(), n)).copy_from(b);
        offset += b.nrows();
    }
    out
}

/// `<m v, v>` real part.
pub fn quadratic_form(m: &CMatrix, v: &CVector) -> f64 {
    v.dotc(&(m * v)).re
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hermitian_eigen_reconstructs_complex_input() {
        let h = CMatrix::from_fn(3, 3, |i, j| {
            let (a, b) = (i.min(j) as f64, i.max(j) as f64);
            let im = if i < j { 0.3 * (a + 1.0) } else if i > j { -0.3 * (a + 1.0) } else { 0.0 };
            Complex64::new(1.0 / (1.0 + a + b), im)
        });
        let (vals, v) = hermitian_eigen(&h).unwrap();
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        let d = diag(&vals);
        assert!((&v * d * v.adjoint() - &h).norm() < 1e-13);
        assert!((v.adjoint() * &v - identity(3)).norm() < 1e-13);
    }

    #[test]
    fn hermitian_eigen_keeps_degenerate_eigenspaces() {
        let (vals, v) = hermitian_eigen(&diag(&[1.0, 0.0, 1.0, 1.0])).unwrap();
        assert_eq!(vals, vec![0.0, 1.0, 1.0, 1.0]);
        assert!((v.adjoint() * &v - identity(4)).norm() < 1e-13);
        assert!(v[(1, 0)].norm() > 1.0 - 1e-13);
    }

    #[test]
    fn op_norm_of_diagonal() {
        assert!((op_norm(&diag(&[3.0, -5.0])) - 5.0).abs() < 1e-12);
        assert_eq!(op_norm(&zeros(0, 0)), 0.0);
    }

    #[test]
    fn null_space_of_wide_matrix_is_complete() {
        let m = real_matrix(3, &[1.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0, 0.0])
            .rows(0, 1)
            .into_owned();
        let ns = null_space(&m, 1e-10);
        assert_eq!(ns.ncols(), 2);
        assert!((&m * &ns).norm() < 1e-12);
    }

    #[test]
    fn canonical_basis_prefers_coordinate_order() {
        let p = diag(&[0.0, 1.0, 1.0]);
        let b = canonical_basis(&p, 2);
        assert!((b[(1, 0)].re - 1.0).abs() < 1e-12);
        assert!((b[(2, 1)].re - 1.0).abs() < 1e-12);
    }

    #[test]
    fn canonical_basis_is_orthonormal_for_tilted_plane() {
        let v = CMatrix::from_column_slice(3, 2, &[c(1.0), c(1.0), c(0.0), c(0.0), c(1.0), c(1.0)]);
        let q = orthonormal_range(&v, 1e-12);
        let p = &q * q.adjoint();
        let b = canonical_basis(&p, 2);
        assert!((b.adjoint() * &b - identity(2)).norm() < 1e-12);
        assert!((&p * &b - &b).norm() < 1e-12);
    }
}
