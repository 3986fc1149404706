use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::operator::BlockSequenceOperator;
use crate::error::{check_dim, Error, Result};
use crate::linalg::{c, diag, CMatrix};
use crate::projection::Projection;
use crate::projorder::meet_nullspace;
use crate::tolerance::ToleranceConfig;

/// First-coordinate projection in `C^2`.
fn first_coordinate() -> CMatrix {
    diag(&[1.0, 0.0])
}

/// Projection onto `(1, 1/(n+1))` normalized.
pub fn badpq_q_block(n: usize) -> CMatrix {
    let eps = 1.0 / (n as f64 + 1.0);
    let norm2 = 1.0 + eps * eps;
    let mut m = diag(&[1.0, eps * eps]);
    m[(0, 1)] = c(eps);
    m[(1, 0)] = c(eps);
    m / c(norm2)
}

/// `||P_n Q_n||^2 = (n+1)^2 / ((n+1)^2 + 1)`.
pub fn badpq_overlap(n: usize) -> f64 {
    let k = (n as f64 + 1.0).powi(2);
    k / (k + 1.0)
}

/// Two projections with no common range vector in any block whose angle
/// closes as `n` grows, so that `P - Q` is compact.
pub fn badpq_family(truncation: usize) -> Result<(BlockSequenceOperator, BlockSequenceOperator)> {
    Ok((
        BlockSequenceOperator::new(truncation, |_| Ok(first_coordinate()))?,
        BlockSequenceOperator::new(truncation, |n| Ok(badpq_q_block(n)))?,
    ))
}

/// Block `k` carries badPQ block `n`, where `k = j(j+1)/2 + n` with
/// `0 <= n <= j`; every `n` therefore recurs infinitely often.
pub fn pomega_index(k: usize) -> usize {
    // largest j with j(j+1)/2 <= k
    let mut j = (((8.0 * k as f64 + 1.0).sqrt() - 1.0) / 2.0) as usize;
    while j * (j + 1) / 2 > k {
        j -= 1;
    }
    while (j + 1) * (j + 2) / 2 <= k {
        j += 1;
    }
    k - j * (j + 1) / 2
}

pub fn pomega_family(truncation: usize) -> Result<(BlockSequenceOperator, BlockSequenceOperator)> {
    Ok((
        BlockSequenceOperator::new(truncation, |_| Ok(first_coordinate()))?,
        BlockSequenceOperator::new(truncation, |k| Ok(badpq_q_block(pomega_index(k))))?,
    ))
}

/// Blocks file for custom families: block `n` of each operator is entry
/// `n mod len` of its list.
#[derive(Debug, Clone, Deserialize)]
pub struct CustomBlocks {
    pub p_blocks: Vec<Projection>,
    pub q_blocks: Vec<Projection>,
}

pub fn custom_family(
    blocks: CustomBlocks,
    truncation: usize,
) -> Result<(BlockSequenceOperator, BlockSequenceOperator)> {
    if blocks.p_blocks.is_empty() {
        return Err(Error::Config("custom family needs at least one block".into()));
    }
    check_dim(blocks.p_blocks.len(), blocks.q_blocks.len())?;
    for (p, q) in blocks.p_blocks.iter().zip(&blocks.q_blocks) {
        check_dim(p.dim(), q.dim())?;
    }
    let cycle = |list: Vec<Projection>| -> Result<BlockSequenceOperator> {
        let list = Arc::new(list);
        BlockSequenceOperator::new(truncation, move |n| Ok(list[n % list.len()].matrix().clone()))
    };
    Ok((cycle(blocks.p_blocks)?, cycle(blocks.q_blocks)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Badpq,
    Pomega,
    Custom,
}

/// `{"family": "badpq" | "pomega" | "custom", "N": int, "custom_blocks_path": optional}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub family: FamilyKind,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub custom_blocks_path: Option<PathBuf>,
}

impl FamilySpec {
    /// Relative blocks paths resolve against `base`.
    pub fn load(&self, base: Option<&Path>) -> Result<(BlockSequenceOperator, BlockSequenceOperator)> {
        match self.family {
            FamilyKind::Badpq => badpq_family(self.n),
            FamilyKind::Pomega => pomega_family(self.n),
            FamilyKind::Custom => {
                let path = self
                    .custom_blocks_path
                    .as_ref()
                    .ok_or_else(|| Error::Config("custom family needs custom_blocks_path".into()))?;
                let path = match base {
                    Some(b) if path.is_relative() => b.join(path),
                    _ => path.clone(),
                };
                custom_family(crate::io::read_json(&path)?, self.n)
            }
        }
    }
}

/// Total rank of the blockwise meet over blocks `0..N`.
pub fn truncated_meet_rank(
    ops: &[BlockSequenceOperator],
    cfg: &ToleranceConfig,
) -> Result<usize> {
    let Some(first) = ops.first() else {
        return Err(Error::Argument("meet of an empty family".into()));
    };
    let mut total = 0;
    for n in 0..first.truncation() {
        let ps = ops
            .iter()
            .map(|o| Projection::from_matrix(o.block(n)?))
            .collect::<Result<Vec<_>>>()?;
        total += meet_nullspace(&ps, cfg)?.rank();
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::op_norm;

    #[test]
    fn badpq_block_zero_overlap_is_half() {
        let (p, q) = badpq_family(8).unwrap();
        let pq = p.block(0).unwrap() * q.block(0).unwrap();
        assert!((op_norm(&pq).powi(2) - 0.5).abs() < 1e-15);
        assert_eq!(badpq_overlap(0), 0.5);
    }

    #[test]
    fn q_blocks_are_projections() {
        for n in [0, 1, 7, 100] {
            assert!(Projection::from_matrix(badpq_q_block(n)).is_ok());
        }
    }

    #[test]
    fn triangular_enumeration() {
        let got: Vec<usize> = (0..10).map(pomega_index).collect();
        assert_eq!(got, vec![0, 0, 1, 0, 1, 2, 0, 1, 2, 3]);
        assert_eq!(pomega_index(5050 + 17), 17);
    }

    #[test]
    fn custom_family_cycles_blocks() {
        let text = r#"{"p_blocks": [{"dim": 1, "entries": [1]}, {"dim": 1, "entries": [0]}],
                       "q_blocks": [{"dim": 1, "entries": [1]}, {"dim": 1, "entries": [1]}]}"#;
        let blocks: CustomBlocks = crate::io::from_json_str(text).unwrap();
        let (p, q) = custom_family(blocks, 8).unwrap();
        assert_eq!(p.block(3).unwrap(), diag(&[0.0]));
        assert_eq!(q.block(3).unwrap(), diag(&[1.0]));
    }

    #[test]
    fn family_spec_json() {
        let spec: FamilySpec = crate::io::from_json_str(r#"{"family": "pomega", "N": 16}"#).unwrap();
        assert_eq!(spec.family, FamilyKind::Pomega);
        assert_eq!(spec.load(None).unwrap().0.truncation(), 16);
        let custom: FamilySpec = crate::io::from_json_str(r#"{"family": "custom", "N": 16}"#).unwrap();
        assert!(matches!(custom.load(None), Err(Error::Config(_))));
        assert!(crate::io::from_json_str::<FamilySpec>(r#"{"family": "other", "N": 16}"#).is_err());
    }
}
