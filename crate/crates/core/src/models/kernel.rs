use std::fmt;

use crate::error::{Error, Result};

pub const DEFAULT_EPSILON_P: f64 = 1e-5;

/// Real, continuous, non-decreasing function on `[-1, 1]` applied to the
/// normalized correlation between the state and each stored memory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ActivationKernel {
    /// `f(x) = x`
    Identity,
    /// `f(x) = (1 + x)^q`, `q > 1`
    HighOrder { q: f64 },
    /// `f(x) = 1 / (1 - x + epsilon)^L`, `L >= 1`, `epsilon > 0`
    Potential { l: f64, epsilon: f64 },
    /// `f(x) = exp(alpha x)`, `alpha > 0`
    Exponential { alpha: f64 },
}

impl ActivationKernel {
    pub fn high_order(q: f64) -> Result<Self> {
        if !(q.is_finite() && q > 1.0) {
            return Err(Error::InvalidParameter(format!("high-order exponent q must be > 1, got {q}")));
        }
        Ok(Self::HighOrder { q })
    }

    pub fn potential(l: f64, epsilon: f64) -> Result<Self> {
        if !(l.is_finite() && l >= 1.0) {
            return Err(Error::InvalidParameter(format!("potential exponent L must be >= 1, got {l}")));
        }
        if !(epsilon.is_finite() && epsilon > 0.0) {
            return Err(Error::InvalidParameter(format!("epsilon_p must be > 0, got {epsilon}")));
        }
        Ok(Self::Potential { l, epsilon })
    }

    pub fn exponential(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0) {
            return Err(Error::InvalidParameter(format!("alpha must be > 0, got {alpha}")));
        }
        Ok(Self::Exponential { alpha })
    }

    /// Re-checks parameter bounds, for values built with struct syntax.
    pub fn validate(self) -> Result<Self> {
        match self {
            Self::Identity => Ok(self),
            Self::HighOrder { q } => Self::high_order(q),
            Self::Potential { l, epsilon } => Self::potential(l, epsilon),
            Self::Exponential { alpha } => Self::exponential(alpha),
        }
    }

    /// Evaluates `f` after clamping the argument to `[-1, 1]`.
    pub fn eval(self, x: f64) -> f64 {
        let x = x.clamp(-1.0, 1.0);
        match self {
            Self::Identity => x,
            Self::HighOrder { q } => (1.0 + x).powf(q),
            Self::Potential { l, epsilon } => (1.0 - x + epsilon).powf(-l),
            Self::Exponential { alpha } => (alpha * x).exp(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Identity => "identity",
            Self::HighOrder { .. } => "high-order",
            Self::Potential { .. } => "potential",
            Self::Exponential { .. } => "exponential",
        }
    }

    /// Parameter string without commas, e.g. `q=5` or `L=3;eps=0.00001`.
    pub fn params(self) -> String {
        match self {
            Self::Identity => "none".to_string(),
            Self::HighOrder { q } => format!("q={q}"),
            Self::Potential { l, epsilon } => format!("L={l};eps={epsilon:e}"),
            Self::Exponential { alpha } => format!("alpha={alpha}"),
        }
    }
}

impl fmt::Display for ActivationKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name(), self.params())
    }
}
