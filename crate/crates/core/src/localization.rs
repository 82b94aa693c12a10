//! Localizations at infinity along explicit paths, and lineality spaces.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::linalg::{self, Vector};
use crate::number::{rational_string, to_f64, ComplexRational, Rational};
use crate::polynomial::{MultiIndex, Polynomial};

/// Sublinear drift `r^{p/q}·v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sublinear {
    pub p: u32,
    pub q: u32,
    pub v: Vec<Rational>,
}

/// The path `ξ(r) = r·w + r^{p/q}·v + b`, `r → ∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathSpec {
    pub w: Vec<BigInt>,
    pub b: Vec<Rational>,
    pub sub: Option<Sublinear>,
}

impl PathSpec {
    pub fn ray(w: Vec<BigInt>) -> Result<Self> {
        let d = w.len();
        Self::new(w, vec![Rational::zero(); d], None)
    }

    pub fn new(w: Vec<BigInt>, b: Vec<Rational>, sub: Option<Sublinear>) -> Result<Self> {
        if w.is_empty() || w.iter().all(Zero::is_zero) {
            return Err(Error::Parse("path direction w must be non-zero".into()));
        }
        if b.len() != w.len() {
            return Err(Error::DimensionMismatch { expected: w.len(), got: b.len() });
        }
        let sub = match sub {
            None => None,
            Some(s) => {
                if s.v.len() != w.len() {
                    return Err(Error::DimensionMismatch { expected: w.len(), got: s.v.len() });
                }
                if s.q == 0 || s.p == 0 || s.p >= s.q {
                    return Err(Error::Parse(format!("sublinear exponent must satisfy 0 < {}/{} < 1", s.p, s.q)));
                }
                let g = s.p.gcd(&s.q);
                if s.v.iter().all(Zero::is_zero) {
                    None
                } else {
                    Some(Sublinear { p: s.p / g, q: s.q / g, v: s.v })
                }
            }
        };
        Ok(Self { w, b, sub })
    }

    /// Integer-vector direction with rational drift, from any rational `w`.
    pub fn from_rational_direction(w: &[Rational]) -> Result<Self> {
        let l = w.iter().fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = w.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        if g.is_zero() {
            return Err(Error::Parse("path direction w must be non-zero".into()));
        }
        Self::ray(ints.into_iter().map(|c| c / &g).collect())
    }

    pub fn dim(&self) -> usize {
        self.w.len()
    }

    /// Negated path `−ξ(r)`.
    pub fn mirrored(&self) -> Self {
        Self {
            w: self.w.iter().map(|c| -c).collect(),
            b: self.b.iter().map(|c| -c).collect(),
            sub: self.sub.as_ref().map(|s| Sublinear { p: s.p, q: s.q, v: s.v.iter().map(|c| -c).collect() }),
        }
    }

    pub fn unit_direction(&self) -> Vec<f64> {
        let v: Vec<f64> = self.w.iter().map(|c| to_f64(&Rational::from_integer(c.clone()))).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.into_iter().map(|x| x / n).collect()
    }

    pub fn record(&self) -> PathRecord {
        PathRecord {
            w: self.w.iter().map(|c| c.to_string()).collect(),
            b: self.b.iter().map(rational_string).collect(),
            sublinear: self.sub.as_ref().map(|s| SublinearRecord {
                exponent: format!("{}/{}", s.p, s.q),
                v: s.v.iter().map(rational_string).collect(),
            }),
        }
    }
}

impl fmt::Display for PathSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w: Vec<String> = self.w.iter().map(|c| c.to_string()).collect();
        write!(f, "r*({})", w.join(","))
        .and_then(|_| match &self.sub {
            Some(s) => {
                let v: Vec<String> = s.v.iter().map(rational_string).collect();
                write!(f, " + r^({}/{})*({})", s.p, s.q, v.join(","))
            }
            None => Ok(()),
        })
        .and_then(|_| {
            if self.b.iter().all(Zero::is_zero) {
                Ok(())
            } else {
                let b: Vec<String> = self.b.iter().map(rational_string).collect();
                write!(f, " + ({})", b.join(","))
            }
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SublinearRecord {
    pub exponent: String,
    pub v: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PathRecord {
    pub w: Vec<String>,
    pub b: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sublinear: Option<SublinearRecord>,
}

/// Limit of `P_{ξ(r)} / P̃_{ξ(r)}(0)` along a path, kept exact up to a
/// positive rational factor.
#[derive(Clone, Debug)]
pub struct LocalizationProfile {
    /// Exact limit, scaled so that the largest `max(|re|, |im|)` is 1.
    pub profile: Polynomial,
    /// Coefficients rescaled to coefficient norm 1.
    pub float_normalized: Vec<(MultiIndex, Complex64)>,
    pub source: PathSpec,
    pub direction: Vec<f64>,
    /// Growth exponent of `P̃_{ξ(r)}(0)` in `r`.
    pub growth: Rational,
}

impl LocalizationProfile {
    pub fn is_constant(&self) -> bool {
        self.profile.is_constant()
    }

    /// Value of the normalized limit when it is constant.
    pub fn constant_value(&self) -> Option<Complex64> {
        if !self.is_constant() {
            return None;
        }
        self.float_normalized.first().map(|(_, c)| *c)
    }

    pub fn record(&self) -> ProfileRecord {
        ProfileRecord {
            profile: self.profile.to_string(),
            terms: self.profile.to_json(),
            float_normalized: self
                .float_normalized
                .iter()
                .map(|(a, c)| (a.0.clone(), [c.re, c.im]))
                .collect(),
            constant: self.is_constant(),
            path: self.source.record(),
            direction: self.direction.clone(),
            growth: rational_string(&self.growth),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ProfileRecord {
    pub profile: String,
    pub terms: Value,
    pub float_normalized: Vec<(Vec<u32>, [f64; 2])>,
    pub constant: bool,
    pub path: PathRecord,
    pub direction: Vec<f64>,
    pub growth: String,
}

/// Divides by the largest `max(|re|, |im|)` over the coefficients.
pub fn canonical_scale(p: &Polynomial) -> Polynomial {
    let m = p
        .terms()
        .map(|(_, c)| c.max_abs_part())
        .max()
        .unwrap_or_else(Rational::zero);
    if m.is_zero() {
        return p.clone();
    }
    p.scale_rational(&(Rational::from_integer(1.into()) / m))
}

pub fn float_normalize(p: &Polynomial) -> Vec<(MultiIndex, Complex64)> {
    let n = to_f64(&p.coeff_norm_at_origin()).sqrt();
    p.terms().map(|(a, c)| (a.clone(), c.to_c64() / n)).collect()
}

pub fn ray_localization(p: &Polynomial, path: &PathSpec) -> Result<LocalizationProfile> {
    p.ensure_nonzero()?;
    let d = p.dimension();
    if path.dim() != d {
        return Err(Error::DimensionMismatch { expected: d, got: path.dim() });
    }
    // substitute r = s^q so every exponent is an integer power of s
    let q = path.sub.as_ref().map_or(1, |s| s.q) as usize;
    let shift: Vec<Vec<Rational>> = (0..d)
        .map(|i| {
            let mut c = vec![Rational::zero(); q + 1];
            c[0] = path.b[i].clone();
            c[q] = Rational::from_integer(path.w[i].clone());
            if let Some(s) = &path.sub {
                c[s.p as usize] += &s.v[i];
            }
            c
        })
        .collect();
    let expanded = p.translate_parametric(&shift)?;
    let top = expanded.terms().map(|(a, _)| a.0[d]).max().unwrap_or(0);
    let mut terms: BTreeMap<MultiIndex, ComplexRational> = BTreeMap::new();
    for (a, c) in expanded.terms() {
        if a.0[d] == top {
            terms.insert(MultiIndex(a.0[..d].to_vec()), c.clone());
        }
    }
    let limit = Polynomial::from_terms(d, terms)?;
    let profile = canonical_scale(&limit);
    Ok(LocalizationProfile {
        float_normalized: float_normalize(&profile),
        profile,
        source: path.clone(),
        direction: path.unit_direction(),
        growth: Rational::new(BigInt::from(top), BigInt::from(q)),
    })
}

/// `Λ(Q)` and its orthogonal complement `Λ′(Q)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinealitySpace {
    pub lambda: Vec<Vector>,
    pub lambda_perp: Vec<Vector>,
}

impl LinealitySpace {
    pub fn contains(&self, y: &[Rational]) -> bool {
        linalg::in_span(&self.lambda, y)
    }

    pub fn record(&self) -> LinealityRecord {
        let f = |b: &Vec<Vector>| b.iter().map(|v| v.iter().map(rational_string).collect()).collect();
        LinealityRecord { lambda: f(&self.lambda), lambda_perp: f(&self.lambda_perp) }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LinealityRecord {
    pub lambda: Vec<Vec<String>>,
    pub lambda_perp: Vec<Vec<String>>,
}

/// Kernel of `η ↦ Σ_i η_i ∂_i Q`, read off coefficientwise (real and
/// imaginary parts separately).
pub fn lineality_space(q: &Polynomial) -> LinealitySpace {
    let d = q.dimension();
    let partials: Vec<Polynomial> = (0..d).map(|i| q.partial(i)).collect();
    let mut monomials: Vec<MultiIndex> = partials.iter().flat_map(|p| p.terms().map(|(a, _)| a.clone())).collect();
    monomials.sort();
    monomials.dedup();
    let mut rows = Vec::new();
    for m in &monomials {
        let cs: Vec<ComplexRational> = partials.iter().map(|p| p.coeff(m)).collect();
        let re: Vector = cs.iter().map(|c| c.re.clone()).collect();
        let im: Vector = cs.iter().map(|c| c.im.clone()).collect();
        if re.iter().any(|x| !x.is_zero()) {
            rows.push(re);
        }
        if im.iter().any(|x| !x.is_zero()) {
            rows.push(im);
        }
    }
    let lambda = normalize_basis(if rows.is_empty() {
        (0..d).map(|i| linalg::unit(d, i)).collect()
    } else {
        linalg::nullspace(&rows, d)
    });
    let lambda_perp = normalize_basis(linalg::orthogonal_complement(&lambda, d));
    LinealitySpace { lambda, lambda_perp }
}

/// Scales each vector to coprime integers with a positive leading entry.
fn normalize_basis(basis: Vec<Vector>) -> Vec<Vector> {
    basis
        .into_iter()
        .map(|v| {
            let l = v.iter().fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
            let ints: Vec<BigInt> = v.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
            let mut g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
            if ints.iter().find(|c| !c.is_zero()).is_some_and(|c| c.is_negative()) {
                g = -g;
            }
            ints.into_iter().map(|c| Rational::from_integer(c / &g)).collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::int;

    fn wave3() -> Polynomial {
        Polynomial::from_int_terms(3, &[(&[2, 0, 0], 1, 0), (&[0, 2, 0], -1, 0), (&[0, 0, 2], -1, 0)])
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn wave_profile_along_light_ray() {
        let prof = ray_localization(&wave3(), &PathSpec::ray(ints(&[1, 1, 0])).unwrap()).unwrap();
        let expected = Polynomial::from_int_terms(3, &[(&[1, 0, 0], 1, 0), (&[0, 1, 0], -1, 0)]);
        assert_eq!(prof.profile, expected);
        assert_eq!(prof.growth, int(1));
        let h = std::f64::consts::FRAC_1_SQRT_2;
        for (_, c) in &prof.float_normalized {
            assert!((c.norm() - h).abs() < 1e-12);
        }
    }

    #[test]
    fn product_and_heat_profiles() {
        let x1x2 = Polynomial::from_int_terms(2, &[(&[1, 1], 1, 0)]);
        let prof = ray_localization(&x1x2, &PathSpec::ray(ints(&[1, 0])).unwrap()).unwrap();
        assert_eq!(prof.profile, Polynomial::variable(2, 1));

        let heat = Polynomial::from_int_terms(2, &[(&[1, 0], 1, 0), (&[0, 2], -1, 0)]);
        let prof = ray_localization(&heat, &PathSpec::ray(ints(&[1, 0])).unwrap()).unwrap();
        assert!(prof.is_constant());
    }

    #[test]
    fn non_characteristic_ray_gives_unimodular_constant() {
        let p = Polynomial::from_int_terms(2, &[(&[2, 0], 1, 0), (&[0, 2], -1, 0), (&[0, 1], 3, 0)]);
        let prof = ray_localization(&p, &PathSpec::ray(ints(&[1, 0])).unwrap()).unwrap();
        let c = prof.constant_value().unwrap();
        assert!((c - Complex64::new(1.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn sublinear_drift_exposes_schroedinger_profile() {
        // x1 − x2² along r·e1 + r^{1/2}·e2 localizes to a multiple of η2
        let p = Polynomial::from_int_terms(2, &[(&[1, 0], 1, 0), (&[0, 2], -1, 0)]);
        let path = PathSpec::new(
            ints(&[1, 0]),
            vec![int(0), int(0)],
            Some(Sublinear { p: 1, q: 2, v: vec![int(0), int(1)] }),
        )
        .unwrap();
        let prof = ray_localization(&p, &path).unwrap();
        assert_eq!(prof.profile, Polynomial::from_int_terms(2, &[(&[0, 1], -1, 0)]));
        assert_eq!(prof.growth, crate::number::rat(1, 2));
    }

    #[test]
    fn lineality_examples() {
        let l = lineality_space(&Polynomial::variable(2, 1));
        assert_eq!(l.lambda, vec![vec![int(1), int(0)]]);
        assert_eq!(l.lambda_perp, vec![vec![int(0), int(1)]]);

        let q = Polynomial::from_int_terms(3, &[(&[1, 0, 0], 1, 0), (&[0, 1, 0], -1, 0)]);
        let l = lineality_space(&q);
        assert_eq!(l.lambda.len(), 2);
        assert!(l.contains(&[int(0), int(0), int(1)]));
        assert!(l.contains(&[int(1), int(1), int(0)]));

        let q = Polynomial::from_int_terms(2, &[(&[2, 0], 1, 0), (&[1, 0], 1, 0)]);
        assert_eq!(lineality_space(&q).lambda, vec![vec![int(0), int(1)]]);

        assert_eq!(lineality_space(&Polynomial::one(2)).lambda.len(), 2);
    }

    #[test]
    fn bad_paths_are_rejected() {
        assert!(PathSpec::ray(ints(&[0, 0])).is_err());
        let bad = Sublinear { p: 3, q: 2, v: vec![int(1), int(0)] };
        assert!(PathSpec::new(ints(&[1, 0]), vec![int(0), int(0)], Some(bad)).is_err());
    }
}
