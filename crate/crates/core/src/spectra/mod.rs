//! Hermitian decomposition, spectral families, spectra, functional calculus
//! and operator norms.
//!
//! Every cutoff decision goes through [`ToleranceConfig`]: eigenvalues within
//! `eig_cluster` of a cutoff `t` count as lying *at* `t`, so they belong to
//! `E_S(t)` and not to `E_S(t-)`.
//!
//! [`ToleranceConfig`]: crate::tolerance::ToleranceConfig

mod decomposition;
mod function;
mod hermitian;

pub use decomposition::{
    apply_function, decompose, spectral_family_at, spectral_window_projection, spectrum,
    FamilySide, SpectralDecomposition,
};
pub use function::PiecewiseLinearFunction;
pub use hermitian::HermitianOperator;

use num_complex::Complex64;

use crate::error::Result;
use crate::linalg::{self, CMatrix};

/// Eigenvalues of a general square matrix, sorted by real then imaginary part.
pub fn nonsym_spectrum(t: &CMatrix) -> Result<Vec<Complex64>> {
    linalg::ensure_square(t)?;
    linalg::ensure_finite(t, "matrix")?;
    if t.nrows() == 0 {
        return Ok(Vec::new());
    }
    let mut eigs = linalg::general_eigenvalues(t)?;
    eigs.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(eigs)
}

/// Largest singular value.
pub fn operator_norm(t: &CMatrix) -> f64 {
    linalg::op_norm(t)
}

#[cfg(test)]
mod tests;
