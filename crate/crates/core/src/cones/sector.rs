//! Convex cones in the plane as angular sectors with exact rational edges.

use std::cmp::Ordering;
use std::fmt;

use num_traits::Zero;
use serde_json::{json, Value};

use crate::characteristic::PlanarDirection;
use crate::error::{Error, Result};
use crate::number::{int, parse_rational, rational_string, Rational};

pub type Vec2 = [Rational; 2];

pub fn rot_ccw(v: &Vec2) -> Vec2 {
    [-v[1].clone(), v[0].clone()]
}

pub fn rot_cw(v: &Vec2) -> Vec2 {
    [v[1].clone(), -v[0].clone()]
}

pub fn neg2(v: &Vec2) -> Vec2 {
    [-v[0].clone(), -v[1].clone()]
}

pub fn det(a: &Vec2, b: &Vec2) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

pub fn dot(a: &Vec2, b: &Vec2) -> Rational {
    &a[0] * &b[0] + &a[1] * &b[1]
}

fn sign(q: &Rational) -> Ordering {
    q.cmp(&Rational::zero())
}

/// Same direction (positive multiples).
pub fn same_dir(a: &Vec2, b: &Vec2) -> bool {
    det(a, b).is_zero() && sign(&dot(a, b)) == Ordering::Greater
}

/// Opening of the counterclockwise arc from `a` to `b` compared with `π`.
pub(crate) fn opening_vs_pi(a: &Vec2, b: &Vec2) -> Ordering {
    match sign(&det(a, b)) {
        Ordering::Greater => Ordering::Less,
        Ordering::Less => Ordering::Greater,
        Ordering::Equal => {
            if sign(&dot(a, b)) == Ordering::Less {
                Ordering::Equal
            } else {
                // coincident edges: a full turn
                Ordering::Greater
            }
        }
    }
}

/// A cone in the plane. `Arc` runs counterclockwise from `start` to `end`
/// with opening in `(0, 2π)`; each edge ray may be open or closed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Sector2 {
    Zero,
    Ray(Vec2),
    Arc { start: Vec2, end: Vec2, start_closed: bool, end_closed: bool },
    Full,
}

impl Sector2 {
    pub fn closed(start: Vec2, end: Vec2) -> Result<Self> {
        Self::arc(start, end, true, true)
    }

    pub fn open(start: Vec2, end: Vec2) -> Result<Self> {
        Self::arc(start, end, false, false)
    }

    pub fn arc(start: Vec2, end: Vec2, start_closed: bool, end_closed: bool) -> Result<Self> {
        let zero = |v: &Vec2| v[0].is_zero() && v[1].is_zero();
        if zero(&start) || zero(&end) {
            return Err(Error::Parse("sector edge vectors must be non-zero".into()));
        }
        if same_dir(&start, &end) {
            return Err(Error::Parse("sector edges coincide; use a ray or the full plane".into()));
        }
        Ok(Self::Arc { start, end, start_closed, end_closed })
    }

    pub fn ray(d: Vec2) -> Result<Self> {
        if d[0].is_zero() && d[1].is_zero() {
            return Err(Error::Parse("ray direction must be non-zero".into()));
        }
        Ok(Self::Ray(d))
    }

    /// Closed half-plane `{v : ⟨v, n⟩ ≥ 0}`.
    pub fn closed_half_plane(n: &Vec2) -> Self {
        Self::Arc { start: rot_cw(n), end: rot_ccw(n), start_closed: true, end_closed: true }
    }

    /// Opening compared with `π`; `None` for `Zero`, `Ray` and `Full`.
    pub fn opening_vs_pi(&self) -> Option<Ordering> {
        match self {
            Self::Arc { start, end, .. } => Some(opening_vs_pi(start, end)),
            _ => None,
        }
    }

    pub fn is_half_plane(&self) -> bool {
        self.opening_vs_pi() == Some(Ordering::Equal)
    }

    pub fn is_convex(&self) -> bool {
        !matches!(self.opening_vs_pi(), Some(Ordering::Greater))
    }

    /// Contains no line.
    pub fn is_proper(&self) -> bool {
        match self {
            Self::Zero | Self::Ray(_) => true,
            Self::Arc { .. } => self.opening_vs_pi() == Some(Ordering::Less),
            Self::Full => false,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, Self::Zero)
    }

    /// Whether the direction `u` lies in the cone (exact).
    pub fn contains<D: PlanarDirection + ?Sized>(&self, u: &D) -> bool {
        match self {
            Self::Zero => false,
            Self::Full => true,
            Self::Ray(d) => u.cross_sign(d) == Ordering::Equal && u.dot_sign(d) == Ordering::Greater,
            Self::Arc { start, end, start_closed, end_closed } => {
                let on = |e: &Vec2| u.cross_sign(e) == Ordering::Equal && u.dot_sign(e) == Ordering::Greater;
                if on(start) {
                    return *start_closed;
                }
                if on(end) {
                    return *end_closed;
                }
                // det(start, u) and det(u, end)
                let after_start = u.cross_sign(start).reverse() == Ordering::Greater;
                let before_end = u.cross_sign(end) == Ordering::Greater;
                match opening_vs_pi(start, end) {
                    Ordering::Less => after_start && before_end,
                    Ordering::Equal => after_start,
                    Ordering::Greater => after_start || before_end,
                }
            }
        }
    }

    /// Contains the non-zero vector `v`.
    pub fn contains_vector(&self, v: &Vec2) -> bool {
        self.contains(v)
    }

    /// `{ξ : ⟨y, ξ⟩ ≥ 0 for all y in the cone}`; depends only on the closure.
    pub fn dual(&self) -> Result<Self> {
        match self {
            Self::Zero => Ok(Self::Full),
            Self::Full => Err(Error::ImproperCone("the full plane has dual {0}".into())),
            Self::Ray(d) => Ok(Self::closed_half_plane(d)),
            Self::Arc { start, end, .. } => match opening_vs_pi(start, end) {
                Ordering::Less => Ok(Self::Arc { start: rot_cw(end), end: rot_ccw(start), start_closed: true, end_closed: true }),
                Ordering::Equal => Ok(Self::Ray(rot_ccw(start))),
                Ordering::Greater => Err(Error::ImproperCone("sector is not convex".into())),
            },
        }
    }

    pub fn closure(&self) -> Self {
        match self {
            Self::Arc { start, end, .. } => Self::Arc { start: start.clone(), end: end.clone(), start_closed: true, end_closed: true },
            other => other.clone(),
        }
    }

    /// Topological interior (as a set of directions).
    pub fn interior(&self) -> Self {
        match self {
            Self::Arc { start, end, .. } => Self::Arc { start: start.clone(), end: end.clone(), start_closed: false, end_closed: false },
            Self::Ray(_) | Self::Zero => Self::Zero,
            Self::Full => Self::Full,
        }
    }

    /// Extreme rays of a closed convex proper sector.
    pub fn generators(&self) -> Vec<Vec2> {
        match self {
            Self::Zero | Self::Full => Vec::new(),
            Self::Ray(d) => vec![d.clone()],
            Self::Arc { start, end, .. } => vec![start.clone(), end.clone()],
        }
    }

    /// Closed-sector inequalities `⟨h, v⟩ ≥ 0`; a ray adds both signs of
    /// its normal.
    pub fn facet_normals(&self) -> Vec<Vec2> {
        match self {
            Self::Zero => vec![[int(1), int(0)], [int(-1), int(0)], [int(0), int(1)], [int(0), int(-1)]],
            Self::Full => Vec::new(),
            Self::Ray(d) => vec![d.clone(), rot_ccw(d), rot_cw(d)],
            Self::Arc { start, end, .. } => match opening_vs_pi(start, end) {
                Ordering::Greater => Vec::new(),
                // det(start, v) ≥ 0 and det(v, end) ≥ 0
                _ => vec![rot_ccw(start), rot_cw(end)],
            },
        }
    }

    /// Binary64 angles `(start, end)` in radians, `end > start`.
    pub fn angles(&self) -> Option<(f64, f64)> {
        match self {
            Self::Arc { start, end, .. } => {
                let a = start.unit_f64();
                let b = end.unit_f64();
                let sa = a[1].atan2(a[0]);
                let mut sb = b[1].atan2(b[0]);
                if sb <= sa {
                    sb += 2.0 * std::f64::consts::PI;
                }
                Some((sa, sb))
            }
            _ => None,
        }
    }

    pub fn to_json(&self) -> Value {
        let v = |x: &Vec2| json!([rational_string(&x[0]), rational_string(&x[1])]);
        match self {
            Self::Zero => json!({ "kind": "zero" }),
            Self::Full => json!({ "kind": "full" }),
            Self::Ray(d) => json!({ "kind": "ray", "direction": v(d) }),
            Self::Arc { start, end, start_closed, end_closed } => {
                let (a, b) = self.angles().unwrap_or((0.0, 0.0));
                json!({
                    "kind": if self.is_half_plane() { "half-plane" } else { "arc" },
                    "start": v(start),
                    "end": v(end),
                    "start_closed": start_closed,
                    "end_closed": end_closed,
                    "angles": [a, b],
                })
            }
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let kind = v.get("kind").and_then(Value::as_str).ok_or_else(|| Error::Parse("sector needs a \"kind\"".into()))?;
        let vec = |key: &str| -> Result<Vec2> {
            let arr = v
                .get(key)
                .and_then(Value::as_array)
                .filter(|a| a.len() == 2)
                .ok_or_else(|| Error::Parse(format!("sector field {key:?} must be a pair")))?;
            let parse = |x: &Value| match x {
                Value::String(s) => parse_rational(s),
                Value::Number(n) => parse_rational(&n.to_string()),
                other => Err(Error::Parse(format!("bad coordinate {other}"))),
            };
            Ok([parse(&arr[0])?, parse(&arr[1])?])
        };
        let flag = |key: &str| v.get(key).and_then(Value::as_bool).unwrap_or(true);
        match kind {
            "zero" => Ok(Self::Zero),
            "full" => Ok(Self::Full),
            "ray" => Self::ray(vec("direction")?),
            "arc" | "half-plane" => Self::arc(vec("start")?, vec("end")?, flag("start_closed"), flag("end_closed")),
            other => Err(Error::Parse(format!("unknown sector kind {other:?}"))),
        }
    }
}

impl fmt::Display for Sector2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v = |x: &Vec2| format!("({}, {})", rational_string(&x[0]), rational_string(&x[1]));
        match self {
            Self::Zero => write!(f, "{{0}}"),
            Self::Full => write!(f, "R^2"),
            Self::Ray(d) => write!(f, "ray {}", v(d)),
            Self::Arc { start, end, start_closed, end_closed } => write!(
                f,
                "{}{} -> {}{}",
                if *start_closed { "[" } else { "(" },
                v(start),
                v(end),
                if *end_closed { "]" } else { ")" }
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: i64, y: i64) -> Vec2 {
        [int(x), int(y)]
    }

    #[test]
    fn quadrant_is_self_dual() {
        let q = Sector2::closed(v(1, 0), v(0, 1)).unwrap();
        assert_eq!(q.dual().unwrap(), q);
        assert!(q.is_proper());
    }

    #[test]
    fn ray_dual_is_half_plane() {
        let r = Sector2::ray(v(0, 1)).unwrap();
        let h = r.dual().unwrap();
        assert!(h.is_half_plane());
        assert!(h.contains_vector(&v(1, 0)) && h.contains_vector(&v(-1, 0)) && h.contains_vector(&v(3, 1)));
        assert!(!h.contains_vector(&v(0, -1)));
        assert_eq!(h.dual().unwrap(), r);
        assert!(!h.is_proper());
    }

    #[test]
    fn membership_and_flags() {
        let s = Sector2::arc(v(1, 0), v(1, 1), false, true).unwrap();
        assert!(!s.contains_vector(&v(2, 0)));
        assert!(s.contains_vector(&v(2, 2)));
        assert!(s.contains_vector(&v(3, 1)));
        assert!(!s.contains_vector(&v(-1, -1)));
        let big = Sector2::closed(v(1, 0), v(0, -1)).unwrap();
        assert!(!big.is_convex());
        assert!(big.contains_vector(&v(-1, 0)) && !big.contains_vector(&v(1, -1)));
        assert!(big.dual().is_err());
        assert!(Sector2::Full.dual().is_err());
        assert_eq!(Sector2::Zero.dual().unwrap(), Sector2::Full);
        assert!(Sector2::Zero.is_proper() && Sector2::Zero.is_degenerate());
    }

    #[test]
    fn json_round_trip() {
        let s = Sector2::arc(v(1, 2), v(-1, 3), true, false).unwrap();
        assert_eq!(Sector2::from_json(&s.to_json()).unwrap(), s);
    }

    fn random_proper(rng: &mut rand_chacha::ChaCha8Rng) -> Sector2 {
        use rand::Rng;
        loop {
            let a = v(rng.gen_range(-9..=9), rng.gen_range(-9..=9));
            let b = v(rng.gen_range(-9..=9), rng.gen_range(-9..=9));
            if det(&a, &b) > Rational::zero() {
                return Sector2::closed(a, b).unwrap();
            }
        }
    }

    #[test]
    fn duality_is_an_involution() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        for _ in 0..1000 {
            let s = random_proper(&mut rng);
            assert_eq!(s.dual().unwrap().dual().unwrap(), s);
        }
        // opening atan(7/4) ≈ 0.3353π
        let third = Sector2::closed(v(1, 0), v(4, 7)).unwrap();
        assert!(third.is_proper());
    }

    #[test]
    fn duality_reverses_inclusion() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let mut checked = 0;
        while checked < 1000 {
            let big = random_proper(&mut rng);
            let p = v(rng.gen_range(-9..=9), rng.gen_range(-9..=9));
            let q = v(rng.gen_range(-9..=9), rng.gen_range(-9..=9));
            if !big.contains_vector(&p) || !big.contains_vector(&q) || det(&p, &q) <= Rational::zero() {
                continue;
            }
            let small = Sector2::closed(p, q).unwrap();
            let (db, ds) = (big.dual().unwrap(), small.dual().unwrap());
            assert!(db.generators().iter().all(|g| ds.contains_vector(g)));
            checked += 1;
        }
    }
}
