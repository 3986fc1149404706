use serde::Serialize;

use crate::error::{Error, Result};

pub const DEFAULT_DEPTH: usize = 16;

/// Largest accepted depth; beyond it the gaps leave the range of `f64`.
pub const MAX_DEPTH: usize = 24;

/// The cutoff grid `t_{m,n}` with `t_{0,n} = 0` and
/// `t_{m,n} = 1 - (1 - t_{m-1,n+1}) / (m+n+1)^6`.
///
/// Only the gaps `g_{m,n} = 1 - t_{m,n}` are stored. The recursion keeps
/// `m + n` fixed along each chain, so `g_{m,n} = (m+n+1)^{-6m}`; for `m >= 4`
/// the gap drops below the spacing of doubles near 1 and `t` itself reads as
/// exactly `1.0`, while the gap stays representable.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScheduleConfig {
    depth_m: usize,
    depth_n: usize,
    /// `gaps[m][n]` for `m <= depth_m`, `n <= depth_n`.
    gaps: Vec<Vec<f64>>,
}

impl Default for ScheduleConfig {
    fn default() -> Self {
        Self::new(DEFAULT_DEPTH, DEFAULT_DEPTH).expect("default depth is valid")
    }
}

impl ScheduleConfig {
    pub fn new(depth_m: usize, depth_n: usize) -> Result<Self> {
        if depth_m > MAX_DEPTH || depth_n > MAX_DEPTH {
            return Err(Error::Config(format!(
                "schedule depth ({depth_m}, {depth_n}) exceeds {MAX_DEPTH}"
            )));
        }
        // row m needs row m-1 one column further out
        let width = depth_n + depth_m + 1;
        let mut rows: Vec<Vec<f64>> = vec![vec![1.0; width]];
        for m in 1..=depth_m {
            let prev = &rows[m - 1];
            let row: Vec<f64> = (0..width - m)
                .map(|n| prev[n + 1] / ((m + n + 1) as f64).powi(6))
                .collect();
            rows.push(row);
        }
        let gaps: Vec<Vec<f64>> = rows.into_iter().map(|r| r[..=depth_n].to_vec()).collect();
        if gaps.iter().flatten().any(|g| !(g.is_normal() && *g > 0.0)) {
            return Err(Error::Config("schedule gaps underflow at this depth".into()));
        }
        Ok(Self {
            depth_m,
            depth_n,
            gaps,
        })
    }

    pub fn depth(&self) -> (usize, usize) {
        (self.depth_m, self.depth_n)
    }

    /// `1 - t_{m,n}`.
    pub fn gap(&self, m: usize, n: usize) -> Result<f64> {
        if m > self.depth_m || n > self.depth_n {
            return Err(Error::Config(format!(
                "schedule entry ({m}, {n}) beyond depth ({}, {})",
                self.depth_m, self.depth_n
            )));
        }
        Ok(self.gaps[m][n])
    }

    pub fn t(&self, m: usize, n: usize) -> Result<f64> {
        Ok(1.0 - self.gap(m, n)?)
    }
}
