//! Whether an open cone misses a set of zero directions.

use num_traits::{One, Zero};
use serde_json::{json, Value};

use super::lorentz::LorentzCone;
use super::sector::Sector2;
use crate::characteristic::{characteristic_set, AlgebraicDirection, CharacteristicSet};
use crate::error::{Error, Result};
use crate::number::{rational_string, ComplexRational, Rational};
use crate::polynomial::Polynomial;
use crate::sigma::SigmaDirection;

/// An open cone `Γ`. Sector edge flags are ignored: the interior is used.
#[derive(Clone, Debug)]
pub enum OpenCone {
    Sector(Sector2),
    LorentzInterior(LorentzCone),
}

impl OpenCone {
    pub fn dim(&self) -> usize {
        match self {
            Self::Sector(_) => 2,
            Self::LorentzInterior(l) => l.dim,
        }
    }
}

#[derive(Clone, Debug)]
pub enum ZeroSet<'a> {
    /// Directions where `P_m` vanishes.
    Characteristic(&'a CharacteristicSet),
    /// Directions where `σ_P` vanishes (or any explicit list).
    Directions(&'a [SigmaDirection]),
    /// Zeros of the principal part of a polynomial.
    Principal(&'a Polynomial),
}

#[derive(Clone, Debug)]
pub struct Avoidance {
    pub avoids: bool,
    /// A zero direction inside the cone.
    pub witness: Option<Value>,
    pub justification: &'static str,
}

impl Avoidance {
    pub fn to_json(&self) -> Value {
        json!({
            "avoids": self.avoids,
            "witness": self.witness,
            "justification": self.justification,
        })
    }
}

fn planar(sector: &Sector2, dirs: &[AlgebraicDirection]) -> Avoidance {
    let open = sector.interior();
    match dirs.iter().find(|d| open.contains(*d)) {
        Some(d) => Avoidance {
            avoids: false,
            witness: Some(serde_json::to_value(d.record()).unwrap_or(Value::Null)),
            justification: "exact-angular-membership",
        },
        None => Avoidance { avoids: true, witness: None, justification: "exact-angular-membership" },
    }
}

fn vector_json(v: &[Rational]) -> Value {
    json!(v.iter().map(rational_string).collect::<Vec<_>>())
}

/// `P_m = λ Σ c_k x_k²` with real `c_k`, `c_d ≠ 0` and `sgn(c_d) c_k ≥ −|c_d|`
/// for `k < d`. Then on the open cone `sgn(c_d) Σ c_k x_k² ≥ |c_d|(x_d² − |x′|²) > 0`.
fn lorentz_quadratic(l: &LorentzCone, p: &Polynomial) -> Result<Avoidance> {
    let dec = p.hom_decompose()?;
    let pm = &dec.principal;
    let d = l.dim;
    let unsupported = || Error::UnsupportedZeroSet("closed form needs a diagonal quadratic principal part".into());
    if dec.degree != 2 {
        return Err(unsupported());
    }
    let square = |k: usize| {
        let mut a = vec![0u32; d];
        a[k] = 2;
        crate::polynomial::MultiIndex(a)
    };
    for (a, _) in pm.terms() {
        if !a.0.iter().any(|&e| e == 2) {
            return Err(unsupported());
        }
    }
    let lambda = pm.coeff(&square(d - 1));
    if lambda.is_zero() {
        return Err(unsupported());
    }
    let lambda_inv = lambda.inv().ok_or_else(unsupported)?;
    let mut real = Vec::with_capacity(d);
    for k in 0..d {
        let c: ComplexRational = &pm.coeff(&square(k)) * &lambda_inv;
        if !c.im.is_zero() {
            return Err(unsupported());
        }
        real.push(c.re);
    }
    // after dividing by the x_d² coefficient, c_d = 1
    let one = Rational::one();
    match real[..d - 1].iter().position(|c| *c < -&one) {
        None => Ok(Avoidance { avoids: true, witness: None, justification: "lorentz-quadratic-closed-form" }),
        Some(k) => {
            // x_d = 1, x_k = |c_k|^{-1/2} < 1 is a zero inside the open cone
            let mut w = vec![0.0; d];
            w[d - 1] = 1.0;
            w[k] = (-crate::number::to_f64(&real[k])).sqrt().recip();
            Ok(Avoidance { avoids: false, witness: Some(json!(w)), justification: "lorentz-quadratic-closed-form" })
        }
    }
}

/// Tests `Γ ∩ Z = ∅` for a zero-direction set `Z`.
pub fn cone_avoids_zeroset(gamma: &OpenCone, zeros: &ZeroSet<'_>) -> Result<Avoidance> {
    match (gamma, zeros) {
        (OpenCone::Sector(s), ZeroSet::Characteristic(cs)) => Ok(planar(s, &cs.directions)),
        (OpenCone::Sector(s), ZeroSet::Principal(p)) => Ok(planar(s, &characteristic_set(p)?.directions)),
        (OpenCone::Sector(s), ZeroSet::Directions(list)) => {
            let mut dirs = Vec::with_capacity(list.len());
            for y in list.iter() {
                dirs.push(match y {
                    SigmaDirection::Planar(a) => a.clone(),
                    SigmaDirection::Vector(v) if v.len() == 2 => AlgebraicDirection::from_rational(&[v[0].clone(), v[1].clone()])
                        .ok_or_else(|| Error::Parse("zero direction must be non-zero".into()))?,
                    SigmaDirection::Vector(v) => return Err(Error::DimensionMismatch { expected: 2, got: v.len() }),
                });
            }
            Ok(planar(s, &dirs))
        }
        (OpenCone::LorentzInterior(l), ZeroSet::Directions(list)) => {
            for y in list.iter() {
                let SigmaDirection::Vector(v) = y else {
                    return Err(Error::DimensionMismatch { expected: l.dim, got: 2 });
                };
                if l.contains_interior(v)? {
                    return Ok(Avoidance { avoids: false, witness: Some(vector_json(v)), justification: "exact-lorentz-membership" });
                }
            }
            Ok(Avoidance { avoids: true, witness: None, justification: "exact-lorentz-membership" })
        }
        (OpenCone::LorentzInterior(l), ZeroSet::Principal(p)) => {
            if p.dimension() != l.dim {
                return Err(Error::DimensionMismatch { expected: l.dim, got: p.dimension() });
            }
            lorentz_quadratic(l, p)
        }
        (OpenCone::LorentzInterior(_), ZeroSet::Characteristic(_)) => {
            Err(Error::UnsupportedZeroSet("a planar characteristic set cannot meet a Lorentz cone".into()))
        }
    }
}
