use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The single tolerance policy shared by every numerical routine.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ToleranceConfig {
    /// Single-linkage radius for grouping eigenvalues into one spectral point.
    pub eig_cluster: f64,
    /// Singular values at or below this are treated as zero.
    pub rank_tol: f64,
    /// Allowed negative-eigenvalue slack in positivity checks.
    pub psd_tol: f64,
    /// Threshold for `||Q^perp P|| ~ 0` in order comparisons.
    pub order_tol: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            eig_cluster: 1e-9,
            rank_tol: 1e-10,
            psd_tol: 1e-10,
            order_tol: 1e-8,
        }
    }
}

impl ToleranceConfig {
    pub fn new(eig_cluster: f64, rank_tol: f64, psd_tol: f64, order_tol: f64) -> Result<Self> {
        let cfg = Self {
            eig_cluster,
            rank_tol,
            psd_tol,
            order_tol,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("eig_cluster", self.eig_cluster),
            ("rank_tol", self.rank_tol),
            ("psd_tol", self.psd_tol),
            ("order_tol", self.order_tol),
        ];
        for (name, value) in fields {
            if !(value.is_finite() && value > 0.0) {
                return Err(Error::Config(format!(
                    "{name} must be finite and strictly positive, got {value}"
                )));
            }
        }
        if self.eig_cluster < self.rank_tol {
            return Err(Error::Config(format!(
                "eig_cluster ({}) must be at least rank_tol ({})",
                self.eig_cluster, self.rank_tol
            )));
        }
        Ok(())
    }

    pub fn with_eig_cluster(mut self, eig_cluster: f64) -> Result<Self> {
        self.eig_cluster = eig_cluster;
        self.validate().map(|_| self)
    }

    pub fn with_order_tol(mut self, order_tol: f64) -> Result<Self> {
        self.order_tol = order_tol;
        self.validate().map(|_| self)
    }
}
