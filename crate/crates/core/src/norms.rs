//! The norms `Q̃_V(ξ, t)` for a line `V = span{y}` and for the whole space.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::localization::lineality_space;
use crate::number::to_f64;
use crate::numeric::{golden_max, sup_abs_on_interval, FPoly};
use crate::polynomial::Polynomial;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum NormMode {
    /// Supremum of `|Q|` over the segment or disk.
    #[default]
    Sup,
    /// Weighted sum of derivative moduli; equivalent to `Sup` up to a
    /// constant depending only on the degree.
    Deriv,
}

impl std::str::FromStr for NormMode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sup" => Ok(Self::Sup),
            "deriv" => Ok(Self::Deriv),
            other => Err(Error::Parse(format!("unknown norm mode {other:?} (expected sup or deriv)"))),
        }
    }
}

/// Frozen bound `C_m` with `sup ≤ deriv ≤ C_m·sup` for `deg Q = m ≤ 4`, on
/// segments and disks alike. Set to at least twice both the largest ratio
/// seen over 20 000 random samples per degree and `2·Σ|T_m coefficients|`.
pub const NORM_EQUIVALENCE: [f64; 5] = [1.0, 4.0, 8.0, 16.0, 40.0];

pub fn norm_equivalence_constant(degree: u32) -> Option<f64> {
    NORM_EQUIVALENCE.get(degree as usize).copied()
}

fn check_t(t: f64) -> Result<()> {
    if t.is_nan() || t < 1.0 {
        return Err(Error::BadT(t));
    }
    Ok(())
}

fn unit(y: &[f64]) -> Vec<f64> {
    let n = y.iter().map(|v| v * v).sum::<f64>().sqrt();
    y.iter().map(|v| v / n).collect()
}

/// `sup{|Q(ξ+η)| : η ∈ span{y}, |η| ≤ t}` or its derivative counterpart.
/// `y` is normalized before use.
pub fn tilde_norm_line(q: &Polynomial, xi: &[f64], y: &[f64], t: f64, mode: NormMode) -> Result<f64> {
    check_t(t)?;
    dims(q, xi)?;
    dims(q, y)?;
    Ok(line_value(&FPoly::from_poly(q), xi, &unit(y), t, mode))
}

pub(crate) fn line_value(q: &FPoly, xi: &[f64], y: &[f64], t: f64, mode: NormMode) -> f64 {
    let c = q.restrict_to_line(xi, y);
    match mode {
        NormMode::Sup => sup_abs_on_interval(&c, t),
        NormMode::Deriv => c.iter().enumerate().map(|(k, v)| v.norm() * t.powi(k as i32)).sum(),
    }
}

fn dims(q: &Polynomial, v: &[f64]) -> Result<()> {
    if v.len() != q.dimension() {
        return Err(Error::DimensionMismatch { expected: q.dimension(), got: v.len() });
    }
    Ok(())
}

/// `sup{|Q(ξ+η)| : |η| ≤ t}` (`d = 2`), or the derivative norm in any `d`.
pub fn tilde_norm_ball(q: &Polynomial, xi: &[f64], t: f64, mode: NormMode) -> Result<f64> {
    check_t(t)?;
    dims(q, xi)?;
    let f = FPoly::from_poly(q);
    match mode {
        NormMode::Deriv => Ok(ball_deriv(&f, xi, t)),
        NormMode::Sup => {
            if q.dimension() != 2 {
                return Err(Error::UnsupportedDimension(q.dimension()));
            }
            let perp: Vec<Vec<f64>> = lineality_space(q)
                .lambda_perp
                .iter()
                .map(|v| v.iter().map(to_f64).collect())
                .collect();
            Ok(ball_sup(&f, xi, t, &perp))
        }
    }
}

/// `Σ_α |Q^{(α)}(ξ)| t^{|α|} / α!`, i.e. coefficient moduli of `Q(ξ + ·)`.
pub(crate) fn ball_deriv(q: &FPoly, xi: &[f64], t: f64) -> f64 {
    let shifted = if xi.iter().all(|&x| x == 0.0) { q.clone() } else { q.translate(xi) };
    shifted
        .terms
        .iter()
        .map(|(a, c)| c.norm() * t.powi(a.iter().sum::<u32>() as i32))
        .sum()
}

/// Planar disk supremum. `perp` is a basis of `Λ′(Q)`: `Q(ξ+η)` depends
/// only on the projection of `η` onto it, so a one-dimensional `Λ′`
/// reduces the disk to a diameter.
pub(crate) fn ball_sup(q: &FPoly, xi: &[f64], t: f64, perp: &[Vec<f64>]) -> f64 {
    match perp.len() {
        0 => q.eval(xi).norm(),
        1 => sup_abs_on_interval(&q.restrict_to_line(xi, &unit(&perp[0])), t),
        _ => diameter_sweep(q, xi, t, 720),
    }
}

/// Every point of the disk lies on a diameter, so the disk supremum is the
/// maximum over angles of the exact segment supremum.
fn diameter_sweep(q: &FPoly, xi: &[f64], t: f64, samples: usize) -> f64 {
    let g = |theta: f64| sup_abs_on_interval(&q.restrict_to_line(xi, &[theta.cos(), theta.sin()]), t);
    let step = std::f64::consts::PI / samples as f64;
    let vals: Vec<f64> = (0..samples).map(|k| g(k as f64 * step)).collect();
    let mut best = vals.iter().cloned().fold(0.0, f64::max);
    for k in 0..samples {
        let prev = vals[(k + samples - 1) % samples];
        let next = vals[(k + 1) % samples];
        if vals[k] >= prev && vals[k] >= next {
            let theta = k as f64 * step;
            let (_, v) = golden_max(g, theta - step, theta + step, 1e-13);
            best = best.max(v);
        }
    }
    best
}
