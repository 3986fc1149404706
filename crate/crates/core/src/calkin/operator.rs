use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use crate::error::{check_dim, Error, Result};
use crate::linalg::{self, CMatrix};

/// Smallest truncation for which the three doubling windows are nonempty.
pub const MIN_TRUNCATION: usize = 8;

type Generator = Arc<dyn Fn(usize) -> Result<CMatrix> + Send + Sync>;

/// A block-diagonal operator `T = ⊕_n T_n` on `⊕_n C^{d_n}`, evaluated
/// lazily block by block and truncated to the first `N` blocks.
///
/// Compact operators are exactly the block sequences tending to zero in norm,
/// so the quotient norm and spectrum are read off the tail of the sequence.
#[derive(Clone)]
pub struct BlockSequenceOperator {
    generator: Generator,
    truncation: usize,
}

impl fmt::Debug for BlockSequenceOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BlockSequenceOperator")
            .field("truncation", &self.truncation)
            .finish_non_exhaustive()
    }
}

impl BlockSequenceOperator {
    /// `generator(n)` must be deterministic in `n`.
    pub fn new<F>(truncation: usize, generator: F) -> Result<Self>
    where
        F: Fn(usize) -> Result<CMatrix> + Send + Sync + 'static,
    {
        if truncation < MIN_TRUNCATION {
            return Err(Error::Config(format!(
                "truncation N = {truncation} is below the minimum {MIN_TRUNCATION}"
            )));
        }
        Ok(Self {
            generator: Arc::new(generator),
            truncation,
        })
    }

    pub fn constant(truncation: usize, block: CMatrix) -> Result<Self> {
        linalg::ensure_square(&block)?;
        Self::new(truncation, move |_| Ok(block.clone()))
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn block(&self, n: usize) -> Result<CMatrix> {
        let b = (self.generator)(n)?;
        linalg::ensure_square(&b)?;
        linalg::ensure_finite(&b, "block")?;
        Ok(b)
    }

    pub fn blocks(&self, range: Range<usize>) -> Result<Vec<CMatrix>> {
        range.map(|n| self.block(n)).collect()
    }

    /// `[N/2, N)`.
    pub fn tail_window(&self) -> Range<usize> {
        self.truncation / 2..self.truncation
    }

    /// `[N/8, N/4)`, `[N/4, N/2)`, `[N/2, N)`.
    pub fn doubling_windows(&self) -> [Range<usize>; 3] {
        let n = self.truncation;
        [n / 8..n / 4, n / 4..n / 2, n / 2..n]
    }

    fn combine(&self, other: &Self, f: fn(&CMatrix, &CMatrix) -> CMatrix) -> Result<Self> {
        if self.truncation != other.truncation {
            return Err(Error::Argument(format!(
                "truncations differ: {} vs {}",
                self.truncation, other.truncation
            )));
        }
        let (a, b) = (self.clone(), other.clone());
        Self::new(self.truncation, move |n| {
            let (x, y) = (a.block(n)?, b.block(n)?);
            check_dim(x.nrows(), y.nrows())?;
            Ok(f(&x, &y))
        })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a * b)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.combine(other, |a, b| a - b)
    }

    pub fn adjoint(&self) -> Self {
        let a = self.clone();
        Self {
            generator: Arc::new(move |n| Ok(a.block(n)?.adjoint())),
            truncation: self.truncation,
        }
    }

    /// `1 - T`.
    pub fn complement(&self) -> Self {
        let a = self.clone();
        Self {
            generator: Arc::new(move |n| {
                let b = a.block(n)?;
                Ok(linalg::identity(b.nrows()) - b)
            }),
            truncation: self.truncation,
        }
    }

    /// The identity with the same block sizes.
    pub fn identity_like(&self) -> Self {
        let a = self.clone();
        Self {
            generator: Arc::new(move |n| Ok(linalg::identity(a.block(n)?.nrows()))),
            truncation: self.truncation,
        }
    }
}
