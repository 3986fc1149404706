use serde::{Deserialize, Serialize};

use super::element::{AlgebraElement, BlockAlgebra};
use crate::error::{check_dim, Error, Result};
use crate::io;
use crate::linalg::{self, CMatrix};

/// Slack on `U*U = 1` accepted for block unitaries.
pub const UNITARY_TOL: f64 = 1e-10;

/// Target block `j` receives `U_j x_{s_j} U_j*`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BlockMap {
    pub source_block: usize,
    #[serde(with = "io::matrix")]
    pub unitary: CMatrix,
}

/// A block-selection homomorphism with unitary conjugation.
///
/// Every such map is a unital *-homomorphism; it is onto exactly when the
/// selected source blocks are distinct, and then it is the quotient map that
/// forgets the unselected blocks, up to unitary equivalence.
#[derive(Debug, Clone)]
pub struct Morphism {
    source: BlockAlgebra,
    target: BlockAlgebra,
    assignment: Vec<BlockMap>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MorphismJson {
    pub assignment: Vec<BlockMap>,
}

impl Morphism {
    pub fn new(source: BlockAlgebra, assignment: Vec<BlockMap>) -> Result<Self> {
        if assignment.is_empty() {
            return Err(Error::Argument("morphism needs at least one target block".into()));
        }
        let mut dims = Vec::with_capacity(assignment.len());
        for (j, map) in assignment.iter().enumerate() {
            let d = *source.block_dims().get(map.source_block).ok_or_else(|| {
                Error::Argument(format!(
                    "target block {j} selects source block {} of {}",
                    map.source_block,
                    source.num_blocks()
                ))
            })?;
            check_dim(d, map.unitary.nrows())?;
            check_dim(d, map.unitary.ncols())?;
            linalg::ensure_finite(&map.unitary, "unitary")?;
            let defect = (map.unitary.adjoint() * &map.unitary - linalg::identity(d)).norm();
            if defect > UNITARY_TOL {
                return Err(Error::Argument(format!(
                    "block {j} conjugation is not unitary (||U*U - 1|| = {defect:.3e})"
                )));
            }
            dims.push(d);
        }
        Ok(Self {
            source,
            target: BlockAlgebra::new(dims)?,
            assignment,
        })
    }

    pub fn from_json(source: BlockAlgebra, json: MorphismJson) -> Result<Self> {
        Self::new(source, json.assignment)
    }

    pub fn to_json(&self) -> MorphismJson {
        MorphismJson {
            assignment: self.assignment.clone(),
        }
    }

    pub fn identity(algebra: &BlockAlgebra) -> Self {
        Self::selection(algebra, &(0..algebra.num_blocks()).collect::<Vec<_>>())
            .expect("every block index is valid")
    }

    /// Keeps the listed source blocks, in order, without conjugation.
    pub fn selection(source: &BlockAlgebra, keep: &[usize]) -> Result<Self> {
        let mut assignment = Vec::with_capacity(keep.len());
        for &b in keep {
            let d = *source
                .block_dims()
                .get(b)
                .ok_or_else(|| Error::Argument(format!("no source block {b}")))?;
            assignment.push(BlockMap {
                source_block: b,
                unitary: linalg::identity(d),
            });
        }
        Self::new(source.clone(), assignment)
    }

    pub fn source(&self) -> &BlockAlgebra {
        &self.source
    }

    pub fn target(&self) -> &BlockAlgebra {
        &self.target
    }

    pub fn assignment(&self) -> &[BlockMap] {
        &self.assignment
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.source.num_blocks()];
        self.assignment
            .iter()
            .all(|m| !std::mem::replace(&mut seen[m.source_block], true))
    }

    pub fn apply(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        if x.algebra() != &self.source {
            return Err(Error::Argument(format!(
                "element of {:?} given to a morphism from {:?}",
                x.algebra().block_dims(),
                self.source.block_dims()
            )));
        }
        let blocks = self
            .assignment
            .iter()
            .map(|m| &m.unitary * x.block(m.source_block) * m.unitary.adjoint())
            .collect();
        AlgebraElement::new(self.target.clone(), blocks)
    }

    /// The section used for lifts: `U_j* y_j U_j` in source block `s_j`, zero
    /// in unselected blocks. Requires a surjective morphism.
    pub fn canonical_lift(&self, y: &AlgebraElement) -> Result<AlgebraElement> {
        if !self.is_surjective() {
            return Err(Error::Argument("lifting needs a surjective morphism".into()));
        }
        if y.algebra() != &self.target {
            return Err(Error::Argument(format!(
                "element of {:?} is not in the target {:?}",
                y.algebra().block_dims(),
                self.target.block_dims()
            )));
        }
        let mut blocks: Vec<CMatrix> = self
            .source
            .block_dims()
            .iter()
            .map(|&d| linalg::zeros(d, d))
            .collect();
        for (j, m) in self.assignment.iter().enumerate() {
            blocks[m.source_block] = m.unitary.adjoint() * y.block(j) * &m.unitary;
        }
        AlgebraElement::new(self.source.clone(), blocks)
    }
}
