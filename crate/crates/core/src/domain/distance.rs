//! Boundary distance and the minimum principle along segments.

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use super::{dot, point_f64, sub, PlanarDomain, Point};
use crate::cones::lorentz::distance_to_lorentz;
use crate::error::{Error, Result};
use crate::number::{int, to_f64, Rational};
use crate::numeric::golden_min;

pub const DEFAULT_TOL: f64 = 1e-9;

/// Squared distance from `p` to `[a, b]` and the nearest point.
pub(crate) fn point_segment_sq(p: &Point, a: &Point, b: &Point) -> (Rational, Point) {
    let e = sub(b, a);
    let ee = dot(&e, &e);
    let mut t = dot(&sub(p, a), &e) / &ee;
    if t.is_negative() {
        t = Rational::zero();
    } else if t > int(1) {
        t = int(1);
    }
    let q = [&a[0] + &t * &e[0], &a[1] + &t * &e[1]];
    let d = sub(p, &q);
    (dot(&d, &d), q)
}

/// Exact `dist(x, Ωᶜ)²` for `x` in the open set.
pub fn boundary_distance_sq(domain: &PlanarDomain, x: &Point) -> Result<Rational> {
    if !domain.contains(x) {
        return Err(Error::OutsideDomain);
    }
    Ok(domain
        .edges()
        .map(|(_, a, b)| point_segment_sq(x, a, b).0)
        .min()
        .unwrap_or_else(Rational::zero))
}

pub fn boundary_distance(domain: &PlanarDomain, x: &Point) -> Result<f64> {
    Ok(to_f64(&boundary_distance_sq(domain, x)?).sqrt())
}

#[derive(Clone, Debug, PartialEq)]
pub struct MinPrinciple {
    pub holds: bool,
    pub m_interior: f64,
    pub m_boundary: f64,
    pub argmin: Vec<f64>,
    pub tol: f64,
}

impl MinPrinciple {
    pub fn to_json(&self) -> Value {
        json!({
            "status": if self.holds { "holds" } else { "violation" },
            "m_interior": self.m_interior,
            "m_boundary": self.m_boundary,
            "argmin": self.argmin,
            "tol": self.tol,
        })
    }
}

/// Compares `min_K d_Ω` with its minimum over the endpoints of `K = [a, b]`.
///
/// `K` misses every edge, so its distance to an edge is attained at an
/// endpoint of one of the two segments; the minimum over edges is exact.
pub fn min_principle_check(domain: &PlanarDomain, a: &Point, b: &Point, tol: f64) -> Result<MinPrinciple> {
    if !domain.contains_segment(a, b) {
        return Err(Error::SegmentNotInDomain);
    }
    let m_boundary = boundary_distance(domain, a)?.min(boundary_distance(domain, b)?);
    let mut best: Option<(Rational, Point)> = None;
    let mut consider = |d: Rational, q: Point| {
        if best.as_ref().is_none_or(|(bd, _)| d < *bd) {
            best = Some((d, q));
        }
    };
    for (_, c, d) in domain.edges() {
        for k in [a, b] {
            let (dist, _) = point_segment_sq(k, c, d);
            consider(dist, k.clone());
        }
        if a != b {
            for e in [c, d] {
                let (dist, q) = point_segment_sq(e, a, b);
                consider(dist, q);
            }
        }
    }
    let (d2, q) = best.ok_or_else(|| Error::InvalidDomain("domain has no edges".into()))?;
    let m_interior = to_f64(&d2).sqrt();
    Ok(MinPrinciple { holds: m_interior >= m_boundary - tol, m_interior, m_boundary, argmin: point_f64(&q).to_vec(), tol })
}

/// Same check for `Ω = ℝ^d ∖ L` with `L` the closed Lorentz cone. `d_Ω` is
/// the distance to a convex set, hence convex along `K`.
pub fn min_principle_lorentz(a: &[f64], b: &[f64], tol: f64) -> Result<MinPrinciple> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch { expected: a.len(), got: b.len() });
    }
    if a.len() < 2 {
        return Err(Error::UnsupportedDimension(a.len()));
    }
    let at = |t: f64| -> Vec<f64> { a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect() };
    let f = |t: f64| distance_to_lorentz(&at(t));
    let (t, v) = golden_min(f, 0.0, 1.0, 1e-12);
    let (fa, fb) = (f(0.0), f(1.0));
    let (t, m_interior) = [(0.0, fa), (1.0, fb), (t, v)].into_iter().fold((0.0, f64::INFINITY), |acc, c| if c.1 < acc.1 { c } else { acc });
    if m_interior <= 0.0 {
        return Err(Error::SegmentNotInDomain);
    }
    let m_boundary = fa.min(fb);
    Ok(MinPrinciple { holds: m_interior >= m_boundary - tol, m_interior, m_boundary, argmin: at(t), tol })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::number::rat;

    #[test]
    fn distances() {
        assert_eq!(boundary_distance(&unit_square(), &[rat(1, 2), rat(1, 2)]).unwrap(), 0.5);
        assert_eq!(boundary_distance_sq(&framed_square(), &[rat(1, 2), rat(3, 2)]).unwrap(), rat(1, 4));
        assert!(matches!(boundary_distance(&unit_square(), &[rat(1, 2), int(0)]), Err(Error::OutsideDomain)));
    }

    #[test]
    fn u_shape_violates() {
        let r = min_principle_check(&u_shape(), &[rat(1, 2), rat(1, 2)], &[rat(5, 2), rat(1, 2)], DEFAULT_TOL).unwrap();
        assert!(!r.holds);
        assert!((r.m_interior - 0.1).abs() < 1e-15);
        assert_eq!(r.m_boundary, 0.5);
        assert!(r.argmin[0] >= 1.0 && r.argmin[0] <= 2.0 && r.argmin[1] == 0.5);
    }

    #[test]
    fn convex_holds_and_bad_segments() {
        let r = min_principle_check(&unit_square(), &[rat(1, 10), rat(1, 5)], &[rat(9, 10), rat(7, 10)], DEFAULT_TOL).unwrap();
        assert!(r.holds);
        assert!(matches!(
            min_principle_check(&l_shape(), &[rat(1, 2), rat(3, 2)], &[rat(3, 2), rat(3, 2)], DEFAULT_TOL),
            Err(Error::SegmentNotInDomain)
        ));
    }

    #[test]
    fn lorentz_complement_violates() {
        let s3 = 3f64.sqrt();
        let r = min_principle_lorentz(&[-s3, 0.0, -1.0], &[s3, 0.0, -1.0], DEFAULT_TOL).unwrap();
        assert!(!r.holds);
        assert!((r.m_interior - 1.0).abs() < 1e-9);
        assert!((r.m_boundary - (s3 + 1.0) / 2f64.sqrt()).abs() < 1e-12);
        assert!(r.argmin[0].abs() < 1e-5);
        assert!(matches!(min_principle_lorentz(&[0.0, 0.0, -1.0], &[0.0, 0.0, 1.0], DEFAULT_TOL), Err(Error::SegmentNotInDomain)));
    }
}
