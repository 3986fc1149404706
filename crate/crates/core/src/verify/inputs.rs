//! Instance formats. The command-line front end reads these, and failing
//! suite instances are serialized in the same shape so they can be replayed.

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraElement, BlockAlgebra, Morphism, MorphismJson};
use crate::error::Result;
use crate::projection::Projection;
use crate::spectra::HermitianOperator;

/// `meet`, `join`, `glb-check`, `decreasing`, `increasing`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectionsInput {
    pub projections: Vec<Projection>,
}

/// `norm-check`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NormCheckInput {
    pub projections: Vec<Projection>,
    #[serde(rename = "R")]
    pub r: Projection,
}

/// `sep-witness`, `gap`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairInput {
    #[serde(rename = "P")]
    pub p: Projection,
    #[serde(rename = "Q")]
    pub q: Projection,
}

/// `ee-check`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EeInput {
    #[serde(rename = "S")]
    pub s_op: HermitianOperator,
    #[serde(rename = "P")]
    pub p: Projection,
    pub s: f64,
    pub t: f64,
}

/// `pullback`; the source algebra is that of `P`.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PullbackInput {
    pub morphism: MorphismJson,
    #[serde(rename = "P")]
    pub p: AlgebraElement,
    pub q: AlgebraElement,
    #[serde(rename = "R", default, skip_serializing_if = "Option::is_none")]
    pub r: Option<AlgebraElement>,
}

impl PullbackInput {
    pub fn morphism(&self) -> Result<Morphism> {
        Morphism::from_json(self.p.algebra().clone(), self.morphism.clone())
    }
}

/// `interpolate`: lower and upper families live in the target algebra.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InterpolateInput {
    pub source: BlockAlgebra,
    pub morphism: MorphismJson,
    pub lower: Vec<AlgebraElement>,
    pub upper: Vec<AlgebraElement>,
}

impl InterpolateInput {
    pub fn morphism(&self) -> Result<Morphism> {
        Morphism::from_json(self.source.clone(), self.morphism.clone())
    }
}

/// Pushforward instances (replayed through `verify` only).
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PushforwardInput {
    pub morphism: MorphismJson,
    #[serde(rename = "P")]
    pub p: AlgebraElement,
    #[serde(rename = "S")]
    pub s: AlgebraElement,
    pub t: f64,
}

impl PushforwardInput {
    pub fn morphism(&self) -> Result<Morphism> {
        Morphism::from_json(self.p.algebra().clone(), self.morphism.clone())
    }
}
