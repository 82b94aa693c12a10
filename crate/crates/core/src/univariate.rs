//! Univariate polynomials over ℚ, Sturm sequences and isolated real roots.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::number::{int, rational_string, to_f64, Rational};

/// Dense coefficients, lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UPoly(Vec<Rational>);

impl UPoly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self(coeffs)
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&v| int(v)).collect())
    }

    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.0.len() as isize - 1
    }

    pub fn leading(&self) -> Rational {
        self.0.last().cloned().unwrap_or_else(Rational::zero)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        let mut acc = Rational::zero();
        for c in self.0.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.0.iter().rev().fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn sign_at(&self, x: &Rational) -> Ordering {
        self.eval(x).cmp(&Rational::zero())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.0
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * int(k as i64))
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|c| -c).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.0.len().max(o.0.len());
        Self::new(
            (0..n)
                .map(|k| {
                    self.0.get(k).cloned().unwrap_or_else(Rational::zero)
                        + o.0.get(k).cloned().unwrap_or_else(Rational::zero)
                })
                .collect(),
        )
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::zero();
        }
        let mut out = vec![Rational::zero(); self.0.len() + o.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in o.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, q: &Rational) -> Self {
        Self::new(self.0.iter().map(|c| c * q).collect())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let mut rem = self.0.clone();
        let dd = d.0.len();
        if rem.len() < dd {
            return (Self::zero(), self.clone());
        }
        let lc = d.leading();
        let mut quot = vec![Rational::zero(); rem.len() - dd + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd - 1] / &lc;
            if !c.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd - 1);
        (Self::new(quot), Self::new(rem))
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.scale(&(Rational::one() / self.leading()))
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let (_, r) = a.divrem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn squarefree_part(&self) -> Self {
        if self.degree() < 1 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.divrem(&g).0.monic()
    }

    /// Integer multiple with coprime integer coefficients and positive lead.
    pub fn primitive_integer(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let lcm = self
            .0
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> = self.0.iter().map(|c| (c * Rational::from_integer(lcm.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
        let sign = if ints.last().is_some_and(|c| c.is_negative()) { -BigInt::one() } else { BigInt::one() };
        ints.into_iter().map(|c| &c / &g * &sign).collect()
    }

    /// `x^n p(-1/x)`: maps the roots `s` of `p` to `-1/s`.
    pub fn neg_reciprocal(&self) -> Self {
        let n = self.0.len();
        let mut out = vec![Rational::zero(); n];
        for (k, c) in self.0.iter().enumerate() {
            let v = if k % 2 == 1 { -c } else { c.clone() };
            out[n - 1 - k] = v;
        }
        Self::new(out)
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Self {
        Self(
            self.0
                .iter()
                .enumerate()
                .map(|(k, c)| if k % 2 == 1 { -c } else { c.clone() })
                .collect(),
        )
    }

    /// Cauchy bound: every root has modulus `< bound`.
    pub fn root_bound(&self) -> Rational {
        let lc = self.leading().abs();
        let m = self
            .0
            .iter()
            .take(self.0.len().saturating_sub(1))
            .map(|c| c.abs() / &lc)
            .max()
            .unwrap_or_else(Rational::zero);
        m + int(1)
    }

    fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(rational_string).collect()
    }
}

impl fmt::Display for UPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| match k {
                0 => rational_string(c),
                1 => format!("{}*s", rational_string(c)),
                _ => format!("{}*s^{}", rational_string(c), k),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Sturm chain of a squarefree polynomial.
#[derive(Clone, Debug)]
pub struct SturmSequence(Vec<UPoly>);

impl SturmSequence {
    pub fn new(p: &UPoly) -> Self {
        let mut seq = vec![p.clone()];
        if p.degree() < 1 {
            return Self(seq);
        }
        seq.push(p.derivative());
        loop {
            let n = seq.len();
            let (_, r) = seq[n - 2].divrem(&seq[n - 1]);
            if r.is_zero() {
                break;
            }
            seq.push(r.neg());
        }
        Self(seq)
    }

    pub fn variations(&self, x: &Rational) -> usize {
        let signs: Vec<Ordering> = self
            .0
            .iter()
            .map(|p| p.sign_at(x))
            .filter(|s| *s != Ordering::Equal)
            .collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Number of distinct roots in `(a, b]`.
    pub fn count(&self, a: &Rational, b: &Rational) -> usize {
        self.variations(a).saturating_sub(self.variations(b))
    }
}

/// A real algebraic number: either rational, or the unique root of a
/// squarefree polynomial inside an open rational interval whose endpoints
/// are not roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RealAlgebraic {
    Rational(Rational),
    Root { poly: UPoly, lo: Rational, hi: Rational },
}

/// Width below which isolating intervals are considered tight enough for
/// binary64 approximations.
fn target_width() -> Rational {
    Rational::new(BigInt::one(), BigInt::one() << 64)
}

impl RealAlgebraic {
    pub fn is_rational(&self) -> bool {
        matches!(self, Self::Rational(_))
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        match self {
            Self::Rational(q) => Some(q),
            Self::Root { .. } => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Self::Rational(q) => to_f64(q),
            Self::Root { lo, hi, .. } => to_f64(&((lo + hi) / int(2))),
        }
    }

    /// Closed enclosing interval.
    pub fn interval(&self) -> (Rational, Rational) {
        match self {
            Self::Rational(q) => (q.clone(), q.clone()),
            Self::Root { lo, hi, .. } => (lo.clone(), hi.clone()),
        }
    }

    /// Halves the isolating interval once.
    pub fn refined(&self) -> Self {
        match self {
            Self::Rational(_) => self.clone(),
            Self::Root { poly, lo, hi } => {
                let mid = (lo + hi) / int(2);
                let s_mid = poly.sign_at(&mid);
                if s_mid == Ordering::Equal {
                    return Self::Rational(mid);
                }
                if poly.sign_at(lo) == s_mid {
                    Self::Root { poly: poly.clone(), lo: mid, hi: hi.clone() }
                } else {
                    Self::Root { poly: poly.clone(), lo: lo.clone(), hi: mid }
                }
            }
        }
    }

    pub fn refined_to(&self, width: &Rational) -> Self {
        let mut cur = self.clone();
        while let Self::Root { lo, hi, .. } = &cur {
            if &(hi - lo) <= width {
                break;
            }
            cur = cur.refined();
        }
        cur
    }

    /// Sign of `self − c`.
    pub fn cmp_rational(&self, c: &Rational) -> Ordering {
        match self {
            Self::Rational(q) => q.cmp(c),
            Self::Root { poly, lo, hi } => {
                if c <= lo {
                    return Ordering::Greater;
                }
                if c >= hi {
                    return Ordering::Less;
                }
                let sc = poly.sign_at(c);
                if sc == Ordering::Equal {
                    Ordering::Equal
                } else if poly.sign_at(lo) == sc {
                    Ordering::Greater
                } else {
                    Ordering::Less
                }
            }
        }
    }

    /// Sign of `a0 + a1·self`.
    pub fn sign_linear(&self, a0: &Rational, a1: &Rational) -> Ordering {
        if a1.is_zero() {
            return a0.cmp(&Rational::zero());
        }
        let c = -(a0 / a1);
        let ord = self.cmp_rational(&c);
        if a1.is_positive() {
            ord
        } else {
            ord.reverse()
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Self::Rational(q) => Self::Rational(-q),
            Self::Root { poly, lo, hi } => Self::Root { poly: poly.reflect(), lo: -hi, hi: -lo },
        }
    }

    /// `−1/self`; `None` for zero.
    pub fn neg_recip(&self) -> Option<Self> {
        match self {
            Self::Rational(q) if q.is_zero() => None,
            Self::Rational(q) => Some(Self::Rational(-(Rational::one() / q))),
            Self::Root { .. } => {
                let mut cur = self.clone();
                loop {
                    match &cur {
                        Self::Rational(_) => return cur.neg_recip(),
                        Self::Root { poly, lo, hi } => {
                            if lo.is_positive() || hi.is_negative() {
                                let q = poly.neg_reciprocal();
                                let (a, b) = (-(Rational::one() / lo), -(Rational::one() / hi));
                                let (lo2, hi2) = if a < b { (a, b) } else { (b, a) };
                                return Some(Self::Root { poly: q, lo: lo2, hi: hi2 });
                            }
                            if poly.eval(&Rational::zero()).is_zero() {
                                return None;
                            }
                            cur = cur.refined();
                        }
                    }
                }
            }
        }
    }

    /// Total order on real algebraic numbers.
    pub fn cmp_alg(&self, other: &Self) -> Ordering {
        match (self, other) {
            (_, Self::Rational(q)) => self.cmp_rational(q),
            (Self::Rational(q), _) => other.cmp_rational(q).reverse(),
            (Self::Root { poly: p, .. }, Self::Root { poly: q, .. }) => {
                // common root inside both intervals means equality
                let g = p.gcd(q);
                if g.degree() >= 1 {
                    let (a1, b1) = self.interval();
                    let (a2, b2) = other.interval();
                    let lo = if a1 > a2 { a1 } else { a2 };
                    let hi = if b1 < b2 { b1 } else { b2 };
                    if lo < hi {
                        let sq = g.squarefree_part();
                        let seq = SturmSequence::new(&sq);
                        let in_self = seq.count(&self.interval().0, &self.interval().1);
                        if in_self == 1 {
                            let in_both = seq.count(&lo, &hi) == 1 && sq.sign_at(&hi) != Ordering::Equal;
                            let in_other = seq.count(&other.interval().0, &other.interval().1) == 1;
                            if in_both && in_other {
                                return Ordering::Equal;
                            }
                        }
                    }
                }
                let mut a = self.clone();
                let mut b = other.clone();
                loop {
                    let (a_lo, a_hi) = a.interval();
                    let (b_lo, b_hi) = b.interval();
                    if a_hi < b_lo || (a_hi == b_lo && !a.is_rational()) {
                        return Ordering::Less;
                    }
                    if b_hi < a_lo || (b_hi == a_lo && !b.is_rational()) {
                        return Ordering::Greater;
                    }
                    if let (Self::Rational(x), Self::Rational(y)) = (&a, &b) {
                        return x.cmp(y);
                    }
                    a = a.refined();
                    b = b.refined();
                }
            }
        }
    }
}

impl fmt::Display for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Rational(q) => write!(f, "{}", rational_string(q)),
            Self::Root { poly, lo, hi } => write!(
                f,
                "root of {} in ({}, {}) ≈ {}",
                poly,
                rational_string(lo),
                rational_string(hi),
                self.to_f64()
            ),
        }
    }
}

/// Serializable view of a [`RealAlgebraic`].
#[derive(Clone, Debug, Serialize)]
pub struct RealAlgebraicRecord {
    pub approx: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rational: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defining_polynomial: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interval: Option<[String; 2]>,
}

impl From<&RealAlgebraic> for RealAlgebraicRecord {
    fn from(a: &RealAlgebraic) -> Self {
        match a {
            RealAlgebraic::Rational(q) => Self {
                approx: to_f64(q),
                rational: Some(rational_string(q)),
                defining_polynomial: None,
                interval: None,
            },
            RealAlgebraic::Root { poly, lo, hi } => Self {
                approx: a.to_f64(),
                rational: None,
                defining_polynomial: Some(poly.to_strings()),
                interval: Some([rational_string(lo), rational_string(hi)]),
            },
        }
    }
}

fn divisors(n: &BigInt, limit: u64) -> Option<Vec<BigInt>> {
    let n = n.abs().to_u64()?;
    if n > limit {
        return None;
    }
    let mut out = Vec::new();
    let mut k = 1u64;
    while k * k <= n {
        if n % k == 0 {
            out.push(BigInt::from(k));
            if k * k != n {
                out.push(BigInt::from(n / k));
            }
        }
        k += 1;
    }
    out.sort();
    Some(out)
}

/// Looks for a rational root of `p` in `[lo, hi]` with denominator dividing
/// the leading coefficient of the primitive integer form.
fn rational_root_in(p: &UPoly, root: &RealAlgebraic) -> Option<Rational> {
    let ints = p.primitive_integer();
    let lc = ints.last()?.clone();
    let divs = divisors(&lc, 1_000_000_000_000)?;
    // two rationals with denominators ≤ |lc| differ by at least 1/lc²
    let width = Rational::new(BigInt::one(), &lc * &lc * BigInt::from(2));
    let tight = root.refined_to(&width);
    if let RealAlgebraic::Rational(q) = tight {
        return Some(q);
    }
    let (lo, hi) = tight.interval();
    for b in divs {
        let bq = Rational::from_integer(b.clone());
        let a_lo = (&lo * &bq).ceil().to_integer();
        let a_hi = (&hi * &bq).floor().to_integer();
        let mut a = a_lo;
        while a <= a_hi {
            let cand = Rational::new(a.clone(), b.clone());
            if p.eval(&cand).is_zero() {
                return Some(cand);
            }
            a += 1;
        }
    }
    None
}

/// Isolates the distinct real roots of `p` (any non-zero polynomial),
/// returned in increasing order. Rational roots are detected and returned
/// exactly when the leading coefficient is small enough to enumerate.
pub fn real_roots(p: &UPoly) -> Vec<RealAlgebraic> {
    if p.degree() < 1 {
        return Vec::new();
    }
    let sq = p.squarefree_part();
    let seq = SturmSequence::new(&sq);
    let bound = sq.root_bound();
    let mut out = Vec::new();
    isolate(&sq, &seq, -bound.clone(), bound, &mut out);
    let width = target_width();
    out.into_iter()
        .map(|r| {
            if r.is_rational() {
                return r;
            }
            match rational_root_in(&sq, &r) {
                Some(q) => RealAlgebraic::Rational(q),
                None => r.refined_to(&width),
            }
        })
        .collect()
}

fn isolate(p: &UPoly, seq: &SturmSequence, lo: Rational, hi: Rational, out: &mut Vec<RealAlgebraic>) {
    // invariant: p(lo) != 0, p(hi) != 0
    let n = seq.count(&lo, &hi);
    if n == 0 {
        return;
    }
    if n == 1 {
        out.push(RealAlgebraic::Root { poly: p.clone(), lo, hi });
        return;
    }
    let mid = (&lo + &hi) / int(2);
    if p.eval(&mid).is_zero() {
        // split around the exact root with non-root endpoints
        let mut delta = (&hi - &lo) / int(4);
        loop {
            let a = &mid - &delta;
            let b = &mid + &delta;
            if !p.eval(&a).is_zero() && !p.eval(&b).is_zero() && seq.count(&a, &b) == 1 {
                isolate(p, seq, lo, a, out);
                out.push(RealAlgebraic::Rational(mid));
                isolate(p, seq, b, hi, out);
                return;
            }
            delta /= int(2);
        }
    }
    isolate(p, seq, lo, mid.clone(), out);
    isolate(p, seq, mid, hi, out);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::rat;

    #[test]
    fn gcd_and_squarefree() {
        // (s-1)^2 (s+2)
        let p = UPoly::from_ints(&[2, -3, 0, 1]);
        assert_eq!(p.squarefree_part(), UPoly::from_ints(&[-2, 1, 1]));
        let a = UPoly::from_ints(&[-1, 0, 1]);
        let b = UPoly::from_ints(&[1, 1]);
        assert_eq!(a.gcd(&b), UPoly::from_ints(&[1, 1]));
        // Re and Im of (1 + i s)^2 are coprime
        assert_eq!(UPoly::from_ints(&[1, 0, -1]).gcd(&UPoly::from_ints(&[0, 2])), UPoly::from_ints(&[1]));
    }

    #[test]
    fn isolates_rational_and_irrational_roots() {
        let roots = real_roots(&UPoly::from_ints(&[1, 0, -1]));
        assert_eq!(roots, vec![RealAlgebraic::Rational(int(-1)), RealAlgebraic::Rational(int(1))]);

        let roots = real_roots(&UPoly::from_ints(&[-2, 0, 1]));
        assert_eq!(roots.len(), 2);
        assert!((roots[1].to_f64() - 2f64.sqrt()).abs() < 1e-15);
        assert!(!roots[1].is_rational());

        let roots = real_roots(&UPoly::from_ints(&[0, -1, 0, 1]));
        assert_eq!(roots.len(), 3);
        assert_eq!(roots[1], RealAlgebraic::Rational(int(0)));

        // (3s - 1)(s^2 - 3)
        let roots = real_roots(&UPoly::from_ints(&[3, -9, -1, 3]));
        assert!(roots.contains(&RealAlgebraic::Rational(rat(1, 3))));
        assert!(real_roots(&UPoly::from_ints(&[1, 0, 1])).is_empty());
    }

    #[test]
    fn comparisons_and_transforms() {
        let sqrt2 = real_roots(&UPoly::from_ints(&[-2, 0, 1]))[1].clone();
        assert_eq!(sqrt2.cmp_rational(&rat(141, 100)), Ordering::Greater);
        assert_eq!(sqrt2.cmp_rational(&rat(142, 100)), Ordering::Less);
        // 3 - 2·√2 > 0
        assert_eq!(sqrt2.sign_linear(&int(3), &int(-2)), Ordering::Greater);
        let m = sqrt2.neg_recip().unwrap();
        assert!((m.to_f64() + 1.0 / 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(sqrt2.neg().neg(), sqrt2);
        let other = real_roots(&UPoly::from_ints(&[-4, 0, 0, 0, 1]))[1].clone();
        assert_eq!(sqrt2.cmp_alg(&other), Ordering::Equal);
        let sqrt3 = real_roots(&UPoly::from_ints(&[-3, 0, 1]))[1].clone();
        assert_eq!(sqrt2.cmp_alg(&sqrt3), Ordering::Less);
    }

    #[test]
    fn sturm_counts_are_stable_under_refinement() {
        let p = UPoly::from_ints(&[-5, 0, 0, 1, 1]);
        let seq = SturmSequence::new(&p.squarefree_part());
        for r in real_roots(&p) {
            let mut cur = r;
            for _ in 0..10 {
                if let RealAlgebraic::Root { lo, hi, .. } = &cur {
                    assert_eq!(seq.count(lo, hi), 1);
                }
                cur = cur.refined();
            }
        }
    }
}
