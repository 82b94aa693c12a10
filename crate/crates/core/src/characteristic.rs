//! Real zeros of the principal part on the unit circle.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::number::{int, Rational};
use crate::polynomial::Polynomial;
use crate::univariate::{real_roots, RealAlgebraic, RealAlgebraicRecord, UPoly};

/// Exact predicates a planar direction must answer against rational vectors.
pub trait PlanarDirection {
    /// Sign of `⟨self, v⟩` for the unnormalized representative.
    fn dot_sign(&self, v: &[Rational; 2]) -> Ordering;
    /// Sign of `det(self, v)`.
    fn cross_sign(&self, v: &[Rational; 2]) -> Ordering;
    /// Binary64 unit vector.
    fn unit_f64(&self) -> [f64; 2];
}

impl PlanarDirection for [Rational; 2] {
    fn dot_sign(&self, v: &[Rational; 2]) -> Ordering {
        (&self[0] * &v[0] + &self[1] * &v[1]).cmp(&Rational::zero())
    }

    fn cross_sign(&self, v: &[Rational; 2]) -> Ordering {
        (&self[0] * &v[1] - &self[1] * &v[0]).cmp(&Rational::zero())
    }

    fn unit_f64(&self) -> [f64; 2] {
        let x = crate::number::to_f64(&self[0]);
        let y = crate::number::to_f64(&self[1]);
        let n = x.hypot(y);
        [x / n, y / n]
    }
}

/// A unit direction in the plane with an exact algebraic representation.
///
/// `Axis { sign }` is `(0, sign)`; `Slope { slope: s, sign }` is the
/// normalization of `sign·(1, s)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AlgebraicDirection {
    Axis { sign: i8 },
    Slope { slope: RealAlgebraic, sign: i8 },
}

fn sgn(o: Ordering) -> i8 {
    match o {
        Ordering::Less => -1,
        Ordering::Equal => 0,
        Ordering::Greater => 1,
    }
}

fn apply_sign(o: Ordering, sign: i8) -> Ordering {
    if sign < 0 {
        o.reverse()
    } else {
        o
    }
}

impl AlgebraicDirection {
    /// Direction of a non-zero rational vector.
    pub fn from_rational(v: &[Rational; 2]) -> Option<Self> {
        if v[0].is_zero() {
            if v[1].is_zero() {
                return None;
            }
            return Some(Self::Axis { sign: if v[1].is_positive() { 1 } else { -1 } });
        }
        Some(Self::Slope {
            slope: RealAlgebraic::Rational(&v[1] / &v[0]),
            sign: if v[0].is_positive() { 1 } else { -1 },
        })
    }

    pub fn from_ints(x: i64, y: i64) -> Option<Self> {
        Self::from_rational(&[int(x), int(y)])
    }

    pub fn neg(&self) -> Self {
        match self {
            Self::Axis { sign } => Self::Axis { sign: -sign },
            Self::Slope { slope, sign } => Self::Slope { slope: slope.clone(), sign: -sign },
        }
    }

    /// Rotation by +90°: `(a, b) ↦ (−b, a)`.
    pub fn orthogonal_companion(&self) -> Self {
        match self {
            Self::Axis { sign } => Self::Slope { slope: RealAlgebraic::Rational(Rational::zero()), sign: -sign },
            Self::Slope { slope, sign } => {
                // sign·(−s, 1) = sign·(−s)·(1, −1/s)
                let s_sign = sgn(slope.cmp_rational(&Rational::zero()));
                match slope.neg_recip() {
                    None => Self::Axis { sign: *sign },
                    Some(m) => Self::Slope { slope: m, sign: -sign * s_sign },
                }
            }
        }
    }

    /// Unnormalized exact vector when the direction is rational.
    pub fn rational_vector(&self) -> Option<[Rational; 2]> {
        match self {
            Self::Axis { sign } => Some([Rational::zero(), int(*sign as i64)]),
            Self::Slope { slope: RealAlgebraic::Rational(s), sign } => {
                let g = int(*sign as i64);
                Some([g.clone(), s * g])
            }
            Self::Slope { .. } => None,
        }
    }

    /// Primitive integer vector for rational directions.
    pub fn primitive_integer(&self) -> Option<[BigInt; 2]> {
        let v = self.rational_vector()?;
        let l = v[0].denom().lcm(v[1].denom());
        let lq = Rational::from_integer(l);
        let a = (&v[0] * &lq).to_integer();
        let b = (&v[1] * &lq).to_integer();
        let g = a.gcd(&b);
        Some([a / &g, b / &g])
    }

    pub fn is_rational(&self) -> bool {
        self.rational_vector().is_some()
    }

    /// Position on the circle: angles in `(−π/2, π/2)`, then `π/2`, then
    /// `(π/2, 3π/2)`, then `3π/2`.
    fn half(&self) -> u8 {
        match self {
            Self::Slope { sign: 1, .. } => 0,
            Self::Axis { sign: 1 } => 1,
            Self::Slope { .. } => 2,
            Self::Axis { .. } => 3,
        }
    }

    /// Exact counterclockwise order starting just after `−π/2`.
    pub fn angular_cmp(&self, other: &Self) -> Ordering {
        match self.half().cmp(&other.half()) {
            Ordering::Equal => match (self, other) {
                (Self::Slope { slope: a, .. }, Self::Slope { slope: b, .. }) => a.cmp_alg(b),
                _ => Ordering::Equal,
            },
            o => o,
        }
    }

    pub fn same_as(&self, other: &Self) -> bool {
        self.angular_cmp(other) == Ordering::Equal
    }

    /// Canonical representative of `{N, −N}`: angle in `(−π/2, π/2]`.
    pub fn is_upper(&self) -> bool {
        self.half() <= 1
    }

    /// Sign of `⟨self, a − b⟩`, i.e. compares projections of two points.
    pub fn cmp_projection(&self, a: &[Rational; 2], b: &[Rational; 2]) -> Ordering {
        self.dot_sign(&[&a[0] - &b[0], &a[1] - &b[1]])
    }

    pub fn record(&self) -> DirectionRecord {
        let (kind, sign, slope) = match self {
            Self::Axis { sign } => ("axis", *sign, None),
            Self::Slope { slope, sign } => ("slope", *sign, Some(RealAlgebraicRecord::from(slope))),
        };
        DirectionRecord { unit: self.unit_f64(), kind, sign, slope }
    }
}

impl PlanarDirection for AlgebraicDirection {
    fn dot_sign(&self, v: &[Rational; 2]) -> Ordering {
        match self {
            Self::Axis { sign } => apply_sign(v[1].cmp(&Rational::zero()), *sign),
            Self::Slope { slope, sign } => apply_sign(slope.sign_linear(&v[0], &v[1]), *sign),
        }
    }

    fn cross_sign(&self, v: &[Rational; 2]) -> Ordering {
        match self {
            // det((0,σ), v) = −σ·v1
            Self::Axis { sign } => apply_sign(v[0].cmp(&Rational::zero()), -sign),
            // det(σ(1,s), v) = σ(v2 − s·v1)
            Self::Slope { slope, sign } => apply_sign(slope.sign_linear(&v[1], &-v[0].clone()), *sign),
        }
    }

    fn unit_f64(&self) -> [f64; 2] {
        match self {
            Self::Axis { sign } => [0.0, *sign as f64],
            Self::Slope { slope, sign } => {
                let s = slope.to_f64();
                let n = (1.0 + s * s).sqrt();
                let g = *sign as f64;
                [g / n, g * s / n]
            }
        }
    }
}

impl fmt::Display for AlgebraicDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let u = self.unit_f64();
        match self {
            Self::Axis { sign } => write!(f, "({:.6}, {:.6}) [axis, sign {}]", u[0], u[1], sign),
            Self::Slope { slope, sign } => {
                write!(f, "({:.6}, {:.6}) [sign {} along (1, s), s = {}]", u[0], u[1], sign, slope)
            }
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct DirectionRecord {
    pub unit: [f64; 2],
    pub kind: &'static str,
    pub sign: i8,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slope: Option<RealAlgebraicRecord>,
}

/// Antipode-closed set of unit directions where `P_m` vanishes.
#[derive(Clone, Debug)]
pub struct CharacteristicSet {
    pub directions: Vec<AlgebraicDirection>,
    pub source_degree: u32,
}

impl CharacteristicSet {
    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn contains(&self, n: &AlgebraicDirection) -> bool {
        self.directions.iter().any(|d| d.same_as(n))
    }

    /// One direction from each antipodal pair.
    pub fn representatives(&self) -> Vec<AlgebraicDirection> {
        self.directions.iter().filter(|d| d.is_upper()).cloned().collect()
    }
}

/// Real and imaginary parts of `s ↦ P_m(1, s)`.
pub(crate) fn dehomogenized(pm: &Polynomial) -> (UPoly, UPoly) {
    let m = pm.degree() as usize;
    let mut re = vec![Rational::zero(); m + 1];
    let mut im = vec![Rational::zero(); m + 1];
    for (a, c) in pm.terms() {
        let k = a.0[1] as usize;
        re[k] += &c.re;
        im[k] += &c.im;
    }
    (UPoly::new(re), UPoly::new(im))
}

/// `gcd(Re p, Im p)` for `p(s) = P_m(1, s)`; its real roots are the slopes
/// of the non-vertical characteristic directions.
pub(crate) fn slope_polynomial(pm: &Polynomial) -> UPoly {
    let (re, im) = dehomogenized(pm);
    re.gcd(&im)
}

pub fn characteristic_set(p: &Polynomial) -> Result<CharacteristicSet> {
    p.ensure_nonzero()?;
    if p.dimension() != 2 {
        return Err(Error::UnsupportedDimension(p.dimension()));
    }
    let dec = p.hom_decompose()?;
    let pm = &dec.principal;
    let mut directions = Vec::new();
    let g = slope_polynomial(pm);
    for s in real_roots(&g) {
        directions.push(AlgebraicDirection::Slope { slope: s.clone(), sign: 1 });
        directions.push(AlgebraicDirection::Slope { slope: s, sign: -1 });
    }
    let vertical = pm.coeff(&crate::polynomial::MultiIndex(vec![0, dec.degree]));
    if dec.degree > 0 && vertical.is_zero() {
        directions.push(AlgebraicDirection::Axis { sign: 1 });
        directions.push(AlgebraicDirection::Axis { sign: -1 });
    }
    directions.sort_by(|a, b| a.angular_cmp(b));
    Ok(CharacteristicSet { directions, source_degree: dec.degree })
}

/// Whether `P_m` has no real zero on the unit sphere.
///
/// Exact for `d = 2`. For `d > 2`, any characteristic direction in a
/// coordinate plane, or a sign change of a real principal part, certifies
/// non-ellipticity; otherwise a seeded sample of the sphere decides.
pub fn is_elliptic(p: &Polynomial) -> bool {
    let Ok(dec) = p.hom_decompose() else {
        return false;
    };
    let d = p.dimension();
    if dec.degree == 0 {
        return true;
    }
    if d == 1 {
        return true;
    }
    if d == 2 {
        return characteristic_set(p).map(|c| c.is_empty()).unwrap_or(false);
    }
    let pm = &dec.principal;
    for i in 0..d {
        for j in (i + 1)..d {
            let mut plane = Polynomial::zero(2);
            for (a, c) in pm.terms() {
                if a.0.iter().enumerate().all(|(k, e)| k == i || k == j || *e == 0) {
                    plane.add_term(crate::polynomial::MultiIndex(vec![a.0[i], a.0[j]]), c.clone());
                }
            }
            if plane.is_zero() {
                return false;
            }
            if !is_elliptic(&plane) {
                return false;
            }
        }
    }
    let real = pm.terms().all(|(_, c)| c.im.is_zero());
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut pos, mut neg) = (false, false);
    let mut min_abs = f64::INFINITY;
    for _ in 0..4000 {
        let v: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if n < 1e-3 {
            continue;
        }
        let u: Vec<f64> = v.iter().map(|x| x / n).collect();
        let z = pm.eval_f64(&u);
        min_abs = min_abs.min(z.norm());
        pos |= z.re > 0.0;
        neg |= z.re < 0.0;
    }
    if real && pos && neg {
        return false;
    }
    min_abs > 1e-9
}
