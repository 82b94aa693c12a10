//! The forward light cone `{x : x_d ≥ |(x_1, …, x_{d−1})|}`.

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::number::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LorentzCone {
    pub dim: usize,
}

impl LorentzCone {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::UnsupportedDimension(dim));
        }
        Ok(Self { dim })
    }

    fn split<'a>(&self, x: &'a [Rational]) -> Result<(&'a [Rational], &'a Rational)> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        let (head, last) = x.split_at(self.dim - 1);
        Ok((head, &last[0]))
    }

    /// Closed cone membership.
    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        let (head, t) = self.split(x)?;
        let r2: Rational = head.iter().map(|v| v * v).sum();
        Ok(!t.is_negative() && t * t >= r2)
    }

    /// Open cone membership, `x_d > |x′|`.
    pub fn contains_interior(&self, x: &[Rational]) -> Result<bool> {
        let (head, t) = self.split(x)?;
        let r2: Rational = head.iter().map(|v| v * v).sum();
        Ok(t.is_positive() && t * t > r2)
    }

    pub fn contains_f64(&self, x: &[f64]) -> bool {
        let (head, t) = x.split_at(self.dim - 1);
        t[0] >= head.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn dual(&self) -> Self {
        *self
    }

    pub fn is_proper(&self) -> bool {
        true
    }

    pub fn to_json(&self) -> Value {
        json!({ "kind": "lorentz", "dim": self.dim })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let d = v.get("dim").and_then(Value::as_u64).ok_or_else(|| Error::Parse("lorentz cone needs \"dim\"".into()))?;
        Self::new(d as usize)
    }
}

/// Euclidean distance from `x` to the closed cone. With `x = (x′, t)` and
/// `n = |x′|` the projection is `0` when `n ≤ −t`, `x` itself when
/// `n ≤ t`, and otherwise lies on the slant face.
pub fn distance_to_lorentz(x: &[f64]) -> f64 {
    let (head, t) = x.split_at(x.len() - 1);
    let t = t[0];
    let n = head.iter().map(|v| v * v).sum::<f64>().sqrt();
    if n <= t {
        0.0
    } else if n <= -t {
        n.hypot(t)
    } else {
        (n - t) / std::f64::consts::SQRT_2
    }
}

pub(crate) fn is_zero_vec(x: &[Rational]) -> bool {
    x.iter().all(Zero::is_zero)
}
