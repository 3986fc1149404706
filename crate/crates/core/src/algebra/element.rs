use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_dim, Error, Result};
use crate::io::MatrixJson;
use crate::linalg::{self, c, CMatrix};
use crate::projection::Projection;
use crate::tolerance::ToleranceConfig;

/// `M_{d_0} ⊕ ... ⊕ M_{d_k}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BlockDims", into = "BlockDims")]
pub struct BlockAlgebra {
    block_dims: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct BlockDims {
    block_dims: Vec<usize>,
}

impl TryFrom<BlockDims> for BlockAlgebra {
    type Error = Error;
    fn try_from(d: BlockDims) -> Result<Self> {
        BlockAlgebra::new(d.block_dims)
    }
}

impl From<BlockAlgebra> for BlockDims {
    fn from(a: BlockAlgebra) -> Self {
        BlockDims {
            block_dims: a.block_dims,
        }
    }
}

impl BlockAlgebra {
    pub fn new(block_dims: Vec<usize>) -> Result<Self> {
        if block_dims.is_empty() || block_dims.contains(&0) {
            return Err(Error::Argument(format!(
                "block dimensions must be a nonempty list of positive integers, got {block_dims:?}"
            )));
        }
        Ok(Self { block_dims })
    }

    pub fn block_dims(&self) -> &[usize] {
        &self.block_dims
    }

    pub fn num_blocks(&self) -> usize {
        self.block_dims.len()
    }

    pub fn total_dim(&self) -> usize {
        self.block_dims.iter().sum()
    }
}

/// An element of a [`BlockAlgebra`], stored block by block.
#[derive(Debug, Clone)]
pub struct AlgebraElement {
    algebra: BlockAlgebra,
    blocks: Vec<CMatrix>,
}

impl AlgebraElement {
    pub fn new(algebra: BlockAlgebra, blocks: Vec<CMatrix>) -> Result<Self> {
        check_dim(algebra.num_blocks(), blocks.len())?;
        for (b, &d) in blocks.iter().zip(algebra.block_dims()) {
            check_dim(d, b.nrows())?;
            check_dim(d, b.ncols())?;
            linalg::ensure_finite(b, "algebra block")?;
        }
        Ok(Self { algebra, blocks })
    }

    pub fn zero(algebra: &BlockAlgebra) -> Self {
        let blocks = algebra.block_dims().iter().map(|&d| linalg::zeros(d, d)).collect();
        Self {
            algebra: algebra.clone(),
            blocks,
        }
    }

    pub fn identity(algebra: &BlockAlgebra) -> Self {
        let blocks = algebra.block_dims().iter().map(|&d| linalg::identity(d)).collect();
        Self {
            algebra: algebra.clone(),
            blocks,
        }
    }

    pub fn from_projections(algebra: &BlockAlgebra, ps: &[Projection]) -> Result<Self> {
        Self::new(algebra.clone(), ps.iter().map(|p| p.matrix().clone()).collect())
    }

    pub fn algebra(&self) -> &BlockAlgebra {
        &self.algebra
    }

    pub fn blocks(&self) -> &[CMatrix] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &CMatrix {
        &self.blocks[i]
    }

    fn same_algebra(&self, other: &Self) -> Result<()> {
        if self.algebra != other.algebra {
            return Err(Error::Argument(format!(
                "algebra mismatch: {:?} vs {:?}",
                self.algebra.block_dims(),
                other.algebra.block_dims()
            )));
        }
        Ok(())
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&CMatrix, &CMatrix) -> CMatrix) -> Result<Self> {
        self.same_algebra(other)?;
        let blocks = self.blocks.iter().zip(&other.blocks).map(|(a, b)| f(a, b)).collect();
        Ok(Self {
            algebra: self.algebra.clone(),
            blocks,
        })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a * b)
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            algebra: self.algebra.clone(),
            blocks: self.blocks.iter().map(|b| b * c(s)).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self {
            algebra: self.algebra.clone(),
            blocks: self.blocks.iter().map(|b| b.adjoint()).collect(),
        }
    }

    /// C*-norm: the largest block operator norm.
    pub fn norm(&self) -> f64 {
        self.blocks.iter().map(linalg::op_norm).fold(0.0, f64::max)
    }

    /// Largest Frobenius distance between corresponding blocks.
    pub fn max_block_distance(&self, other: &Self) -> Result<f64> {
        self.same_algebra(other)?;
        Ok(self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max))
    }

    pub fn is_self_adjoint(&self, tol: f64) -> bool {
        self.blocks.iter().all(|b| (b - b.adjoint()).norm() <= tol)
    }

    pub fn is_projection(&self) -> bool {
        self.projection_blocks().is_ok()
    }

    /// Validates every block as a projection.
    pub fn projection_blocks(&self) -> Result<Vec<Projection>> {
        self.blocks
            .iter()
            .enumerate()
            .map(|(i, b)| {
                Projection::from_matrix(b.clone())
                    .map_err(|e| Error::NotProjection(format!("block {i}: {e}")))
            })
            .collect()
    }

    /// Block-diagonal dense matrix.
    pub fn dense(&self) -> CMatrix {
        let n = self.algebra.total_dim();
        let mut out = linalg::zeros(n, n);
        let mut offset = 0;
        for b in &self.blocks {
            let d = b.nrows();
            out.view_mut((offset, offset), (d, d)).copy_from(b);
            offset += d;
        }
        out
    }
}

/// `||P - QP||` over all blocks, for elements holding projections.
pub fn element_order_defect(p: &AlgebraElement, q: &AlgebraElement) -> Result<f64> {
    p.same_algebra(q)?;
    Ok(p.blocks
        .iter()
        .zip(&q.blocks)
        .map(|(a, b)| linalg::op_norm(&(a - b * a)))
        .fold(0.0, f64::max))
}

/// `P <= Q` blockwise, within `order_tol`.
pub fn element_leq(p: &AlgebraElement, q: &AlgebraElement, cfg: &ToleranceConfig) -> Result<bool> {
    Ok(element_order_defect(p, q)? <= cfg.order_tol)
}

/// `P < Q`: below and at Frobenius distance more than `order_tol`.
pub fn element_lt(p: &AlgebraElement, q: &AlgebraElement, cfg: &ToleranceConfig) -> Result<bool> {
    Ok(element_leq(p, q, cfg)? && p.max_block_distance(q)? > cfg.order_tol)
}

/// Canonicalizes an element that is a projection up to rounding.
pub(crate) fn as_projection_element(x: &AlgebraElement) -> Result<(AlgebraElement, Vec<Projection>)> {
    let ps = x.projection_blocks()?;
    Ok((AlgebraElement::from_projections(x.algebra(), &ps)?, ps))
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    block_dims: Vec<usize>,
    blocks: Vec<MatrixJson>,
}

impl Serialize for AlgebraElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ElementJson {
            block_dims: self.algebra.block_dims.clone(),
            blocks: self.blocks.iter().map(MatrixJson::from_matrix).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for AlgebraElement {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = ElementJson::deserialize(d)?;
        let build = || -> Result<Self> {
            let algebra = BlockAlgebra::new(raw.block_dims)?;
            let blocks = raw.blocks.iter().map(MatrixJson::to_matrix).collect::<Result<_>>()?;
            AlgebraElement::new(algebra, blocks)
        };
        build().map_err(serde::de::Error::custom)
    }
}
