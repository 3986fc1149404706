//! JSON formats shared by the library and the command-line front end.
//!
//! - Matrix: `{"dim": n, "entries": [[re, im], ...]}`, row-major, `n * n`
//!   entries. A bare number is accepted for a real entry.
//! - Projection: a matrix, or `{"dim": n, "range_basis": [[...], ...]}` where
//!   each inner list is a vector of length `n` spanning part of the range.
//! - Vector: `[[re, im], ...]`.

use std::path::Path;

use num_complex::Complex64;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{self, CMatrix, CVector};
use crate::projection::Projection;
use crate::spectra::HermitianOperator;
use crate::tolerance::ToleranceConfig;

/// Singular-value cutoff applied to `range_basis` spanning sets.
pub const SPAN_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexJson {
    Pair([f64; 2]),
    Real(f64),
}

impl From<Complex64> for ComplexJson {
    fn from(z: Complex64) -> Self {
        ComplexJson::Pair([z.re, z.im])
    }
}

impl From<ComplexJson> for Complex64 {
    fn from(z: ComplexJson) -> Self {
        match z {
            ComplexJson::Pair([re, im]) => Complex64::new(re, im),
            ComplexJson::Real(re) => Complex64::new(re, 0.0),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub dim: usize,
    pub entries: Vec<ComplexJson>,
}

impl MatrixJson {
    pub fn from_matrix(m: &CMatrix) -> Self {
        let n = m.nrows();
        let entries = (0..n)
            .flat_map(|i| (0..m.ncols()).map(move |j| (i, j)))
            .map(|(i, j)| m[(i, j)].into())
            .collect();
        Self { dim: n, entries }
    }

    pub fn to_matrix(&self) -> Result<CMatrix> {
        let n = self.dim;
        if self.entries.len() != n * n {
            return Err(Error::Argument(format!(
                "matrix of dim {n} needs {} entries, got {}",
                n * n,
                self.entries.len()
            )));
        }
        let m = CMatrix::from_fn(n, n, |i, j| self.entries[i * n + j].into());
        linalg::ensure_finite(&m, "matrix")?;
        Ok(m)
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum ProjectionJson {
    Matrix(MatrixJson),
    Basis {
        dim: usize,
        range_basis: Vec<Vec<ComplexJson>>,
    },
}

impl ProjectionJson {
    fn into_projection(self) -> Result<Projection> {
        match self {
            ProjectionJson::Matrix(m) => Projection::from_matrix(m.to_matrix()?),
            ProjectionJson::Basis { dim, range_basis } => {
                for v in &range_basis {
                    crate::error::check_dim(dim, v.len())?;
                }
                let m = CMatrix::from_fn(dim, range_basis.len(), |i, j| range_basis[j][i].into());
                Projection::onto_span(&m, SPAN_TOL)
            }
        }
    }
}

impl Serialize for Projection {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson::from_matrix(self.matrix()).serialize(s)
    }
}

impl<'de> Deserialize<'de> for Projection {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        ProjectionJson::deserialize(d)?
            .into_projection()
            .map_err(serde::de::Error::custom)
    }
}

impl Serialize for HermitianOperator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson::from_matrix(self.matrix()).serialize(s)
    }
}

/// Validated against the default tolerances.
impl<'de> Deserialize<'de> for HermitianOperator {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let m = MatrixJson::deserialize(d)?
            .to_matrix()
            .map_err(serde::de::Error::custom)?;
        HermitianOperator::new(m, &ToleranceConfig::default()).map_err(serde::de::Error::custom)
    }
}

/// `#[serde(with = "crate::io::matrix")]` adapter for square matrices.
pub mod matrix {
    use super::*;

    pub fn serialize<S: Serializer>(m: &CMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixJson::from_matrix(m).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<CMatrix, D::Error> {
        MatrixJson::deserialize(d)?
            .to_matrix()
            .map_err(serde::de::Error::custom)
    }
}

/// `#[serde(with = "crate::io::vector")]` adapter.
pub mod vector {
    use super::*;

    pub fn serialize<S: Serializer>(v: &CVector, s: S) -> std::result::Result<S::Ok, S::Error> {
        let pairs: Vec<ComplexJson> = v.iter().map(|z| (*z).into()).collect();
        pairs.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<CVector, D::Error> {
        let pairs = Vec::<ComplexJson>::deserialize(d)?;
        Ok(CVector::from_iterator(pairs.len(), pairs.into_iter().map(Complex64::from)))
    }
}

pub fn from_json_str<T: DeserializeOwned>(text: &str) -> Result<T> {
    Ok(serde_json::from_str(text)?)
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    from_json_str(&text)
}

pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize infallibly")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::projection::line;

    #[test]
    fn projection_round_trip() {
        let p = line(&[1.0, -2.0, 0.5]).unwrap();
        let text = serde_json::to_string(&p).unwrap();
        let back: Projection = from_json_str(&text).unwrap();
        assert!(p.distance(&back) < 1e-14);
    }

    #[test]
    fn projection_from_spanning_set() {
        let text = r#"{"dim": 2, "range_basis": [[1, 1], [[2.0, 0.0], 2]]}"#;
        let p: Projection = from_json_str(text).unwrap();
        assert_eq!(p.rank(), 1);
        assert!(p.distance(&line(&[1.0, 1.0]).unwrap()) < 1e-12);
    }

    #[test]
    fn malformed_json_reports_position() {
        let err = from_json_str::<Projection>("{\n  \"dim\": 2,\n  oops").unwrap_err();
        match err {
            Error::Json { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rejects_wrong_entry_count_and_non_projection() {
        assert!(from_json_str::<Projection>(r#"{"dim": 2, "entries": [1, 0, 0]}"#).is_err());
        assert!(from_json_str::<Projection>(r#"{"dim": 2, "entries": [1, 1, 0, 0]}"#).is_err());
    }
}
