use crate::error::{Error, Result};

/// A continuous piecewise-linear function on the real line, constant outside
/// its first and last breakpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct PiecewiseLinearFunction {
    breakpoints: Vec<f64>,
    values: Vec<f64>,
}

impl PiecewiseLinearFunction {
    pub fn new(breakpoints: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if breakpoints.is_empty() || breakpoints.len() != values.len() {
            return Err(Error::Argument(format!(
                "need matching non-empty breakpoints and values, got {} and {}",
                breakpoints.len(),
                values.len()
            )));
        }
        if breakpoints.iter().chain(&values).any(|x| !x.is_finite()) {
            return Err(Error::NumericInput("non-finite breakpoint or value".into()));
        }
        if breakpoints.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Argument("breakpoints must be strictly ascending".into()));
        }
        Ok(Self { breakpoints, values })
    }

    pub fn constant(value: f64) -> Result<Self> {
        Self::new(vec![0.0], vec![value])
    }

    /// The identity map on `[lo, hi]`, clamped outside.
    pub fn clamp(lo: f64, hi: f64) -> Result<Self> {
        if lo == hi {
            return Self::new(vec![lo], vec![lo]);
        }
        Self::new(vec![lo, hi], vec![lo, hi])
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn eval(&self, x: f64) -> f64 {
        let b = &self.breakpoints;
        let v = &self.values;
        let last = b.len() - 1;
        if x <= b[0] {
            return v[0];
        }
        if x >= b[last] {
            return v[last];
        }
        // first breakpoint strictly greater than x; 1..=last here
        let hi = b.partition_point(|&p| p <= x);
        let lo = hi - 1;
        let w = (x - b[lo]) / (b[hi] - b[lo]);
        v[lo] + w * (v[hi] - v[lo])
    }
}
