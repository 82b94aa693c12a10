//! Exterior cones at boundary points: an open convex cone `Γ ≠ ℝ²` with
//! `(x0 + Γ°) ∩ Ω = ∅` and no zero direction in `Γ`.

use std::cmp::Ordering;
use std::f64::consts::PI;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use super::{cross, dot, on_segment, point_json, sub, Location, PlanarDomain, Point};
use crate::characteristic::{AlgebraicDirection, PlanarDirection};
use crate::cones::sector::{opening_vs_pi, rot_ccw, Sector2};
use crate::error::{Error, Result};
use crate::number::{int, rat, Rational};

/// Whether the ray `x0 + t v`, `t > 0`, misses the open set.
///
/// Boundary hits split the ray into open pieces of constant membership;
/// one rational sample per piece decides.
pub(crate) fn ray_misses(domain: &PlanarDomain, x0: &Point, v: &Point) -> bool {
    let mut ts: Vec<Rational> = Vec::new();
    for (_, a, b) in domain.edges() {
        let e = sub(b, a);
        let w = sub(a, x0);
        let den = cross(v, &e);
        if den.is_zero() {
            if cross(&w, v).is_zero() {
                let vv = dot(v, v);
                ts.push(dot(&w, v) / &vv);
                ts.push(dot(&sub(b, x0), v) / vv);
            }
            continue;
        }
        let t = cross(&w, &e) / &den;
        let s = cross(&w, v) / &den;
        if !s.is_negative() && s <= int(1) {
            ts.push(t);
        }
    }
    ts.retain(Signed::is_positive);
    ts.sort();
    ts.dedup();
    let mut samples = Vec::with_capacity(ts.len() + 1);
    let mut prev = Rational::zero();
    for t in &ts {
        samples.push((&prev + t) * rat(1, 2));
        prev = t.clone();
    }
    samples.push(prev + int(1));
    samples.iter().all(|t| domain.locate(&[&x0[0] + t * &v[0], &x0[1] + t * &v[1]]) != Location::Inside)
}

/// Closed arcs of directions whose rays from `x0` miss the domain.
fn avoidance_arcs(domain: &PlanarDomain, x0: &Point) -> Vec<(Point, Point, bool)> {
    let mut crit: Vec<(Point, AlgebraicDirection)> = Vec::new();
    let mut push = |v: Point| {
        if let Some(d) = AlgebraicDirection::from_rational(&v) {
            if !crit.iter().any(|(_, e)| e.same_as(&d)) {
                crit.push((v, d));
            }
        }
    };
    for p in domain.vertices() {
        if p != x0 {
            push(sub(p, x0));
        }
    }
    for (_, a, b) in domain.edges() {
        if on_segment(x0, a, b) && x0 != a && x0 != b {
            push(sub(b, a));
            push(sub(a, b));
        }
    }
    crit.sort_by(|a, b| a.1.angular_cmp(&b.1));
    let k = crit.len();
    // item 2i: direction i; item 2i+1: open arc from direction i to i+1
    let status: Vec<bool> = (0..2 * k)
        .map(|j| {
            let i = j / 2;
            let v = if j % 2 == 0 {
                crit[i].0.clone()
            } else {
                let (a, b) = (&crit[i].0, &crit[(i + 1) % k].0);
                if k > 1 && cross(a, b).is_positive() {
                    [&a[0] + &b[0], &a[1] + &b[1]]
                } else {
                    rot_ccw(a)
                }
            };
            ray_misses(domain, x0, &v)
        })
        .collect();
    let Some(first_false) = status.iter().position(|s| !s) else {
        return vec![(crit[0].0.clone(), crit[0].0.clone(), true)];
    };
    let n = 2 * k;
    let mut arcs = Vec::new();
    let mut j = 0;
    while j < n {
        let idx = (first_false + j) % n;
        if !status[idx] {
            j += 1;
            continue;
        }
        let start = idx;
        let mut end = idx;
        while j + 1 < n && status[(first_false + j + 1) % n] {
            j += 1;
            end = (first_false + j) % n;
        }
        j += 1;
        let p = crit[start / 2].0.clone();
        let q = if end % 2 == 0 { crit[end / 2].0.clone() } else { crit[(end / 2 + 1) % k].0.clone() };
        let full_turn = k == 1 && start == end && start % 2 == 1;
        arcs.push((p, q, full_turn));
    }
    arcs
}

/// A candidate `Γ°` and its `Γ`, with the zero direction inside `Γ`, if any.
#[derive(Clone, Debug)]
pub struct ConeCandidate {
    pub gamma_dual: Sector2,
    pub gamma: Sector2,
    pub blocking: Option<AlgebraicDirection>,
    pub margin: f64,
}

impl ConeCandidate {
    fn to_json(&self) -> Value {
        json!({
            "gamma_dual": self.gamma_dual.to_json(),
            "gamma": self.gamma.to_json(),
            "blocking": self.blocking.as_ref().map(|b| b.record()),
            "margin": self.margin,
        })
    }
}

#[derive(Clone, Debug)]
pub enum ExteriorDiagnostic {
    Pass { best: ConeCandidate, avoidance: Vec<Sector2> },
    Fail { tried: Vec<ConeCandidate>, avoidance: Vec<Sector2> },
}

impl ExteriorDiagnostic {
    pub fn passed(&self) -> bool {
        matches!(self, Self::Pass { .. })
    }

    pub fn to_json(&self, x0: &Point) -> Value {
        match self {
            Self::Pass { best, avoidance } => json!({
                "point": point_json(x0),
                "status": "pass",
                "cone": best.to_json(),
                "avoidance_set": avoidance.iter().map(Sector2::to_json).collect::<Vec<_>>(),
            }),
            Self::Fail { tried, avoidance } => json!({
                "point": point_json(x0),
                "status": "fail",
                "tried": tried.iter().map(ConeCandidate::to_json).collect::<Vec<_>>(),
                "avoidance_set": avoidance.iter().map(Sector2::to_json).collect::<Vec<_>>(),
            }),
        }
    }
}

fn angle(u: [f64; 2]) -> f64 {
    u[1].atan2(u[0])
}

fn circular_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

/// Angular distance from the nearest zero direction to `Γ`.
fn margin(gamma: &Sector2, zeros: &[AlgebraicDirection]) -> f64 {
    let Some((a, b)) = gamma.angles() else {
        return 0.0;
    };
    zeros
        .iter()
        .map(|z| {
            let t = angle(z.unit_f64());
            if gamma.contains(z) {
                0.0
            } else {
                circular_gap(t, a).min(circular_gap(t, b))
            }
        })
        .fold(PI, f64::min)
}

fn candidate(gamma_dual: Sector2, zeros: &[AlgebraicDirection]) -> Result<ConeCandidate> {
    let gamma = gamma_dual.dual()?.interior();
    let blocking = zeros.iter().find(|z| gamma.contains(*z)).cloned();
    let margin = margin(&gamma, zeros);
    Ok(ConeCandidate { gamma_dual, gamma, blocking, margin })
}

/// `[p, e]` with `e` just past `p + π/2`, so that `Γ` is a thin open arc
/// ending at `p + π/2` that misses every zero direction. Rotations use
/// `cos δ = (k² − 1)/(k² + 1)`, `sin δ = 2k/(k² + 1)`.
fn wide_candidate(p: &Point, zeros: &[AlgebraicDirection]) -> Result<ConeCandidate> {
    let top = rot_ccw(p);
    let mut k: i64 = 2;
    loop {
        let k2 = Rational::from_integer((k as i128 * k as i128).into());
        let den = &k2 + int(1);
        let c = (&k2 - int(1)) / &den;
        let s = Rational::from_integer((2 * k).into()) / &den;
        let r: Point = [&c * &top[0] + &s * &top[1], -(&s * &top[0]) + &c * &top[1]];
        let thin = Sector2::open(r.clone(), top.clone())?;
        if !zeros.iter().any(|z| thin.contains(z)) || k > 1 << 40 {
            return candidate(Sector2::closed(p.clone(), rot_ccw(&r))?, zeros);
        }
        k *= 2;
    }
}

/// Searches the maximal admissible `Γ°` inside the avoidance set of `x0`.
pub fn exterior_cone_diagnostic(domain: &PlanarDomain, x0: &Point, zeros: &[AlgebraicDirection]) -> Result<ExteriorDiagnostic> {
    if !domain.on_boundary(x0) {
        return Err(Error::NotOnBoundary);
    }
    let mut all: Vec<AlgebraicDirection> = Vec::new();
    for z in zeros {
        for d in [z.clone(), z.neg()] {
            if !all.iter().any(|e| e.same_as(&d)) {
                all.push(d);
            }
        }
    }
    let mut avoidance = Vec::new();
    let mut tried = Vec::new();
    for (p, q, full_turn) in avoidance_arcs(domain, x0) {
        let same = AlgebraicDirection::from_rational(&p).zip(AlgebraicDirection::from_rational(&q)).is_some_and(|(a, b)| a.same_as(&b));
        let cand = if same && !full_turn {
            avoidance.push(Sector2::Ray(p.clone()));
            candidate(Sector2::Ray(p), &all)?
        } else if full_turn || opening_vs_pi(&p, &q) != Ordering::Less {
            avoidance.push(if full_turn { Sector2::Full } else { Sector2::closed(p.clone(), q.clone())? });
            wide_candidate(&p, &all)?
        } else {
            let s = Sector2::closed(p, q)?;
            avoidance.push(s.clone());
            candidate(s, &all)?
        };
        tried.push(cand);
    }
    let best = tried
        .iter()
        .filter(|c| c.blocking.is_none())
        .max_by(|a, b| a.margin.partial_cmp(&b.margin).unwrap_or(Ordering::Equal))
        .cloned();
    Ok(match best {
        Some(best) => ExteriorDiagnostic::Pass { best, avoidance },
        None => ExteriorDiagnostic::Fail { tried, avoidance },
    })
}

/// Vertices plus three interior points per edge.
pub fn boundary_samples(domain: &PlanarDomain) -> Vec<Point> {
    let mut out: Vec<Point> = Vec::new();
    for (_, a, b) in domain.edges() {
        out.push(a.clone());
        for j in 1..=3 {
            let t = rat(j, 4);
            out.push([&a[0] + &t * (&b[0] - &a[0]), &a[1] + &t * (&b[1] - &a[1])]);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::characteristic::characteristic_set;
    use crate::polynomial::Polynomial;

    fn zeros(terms: &[(&[u32], i64, i64)]) -> Vec<AlgebraicDirection> {
        characteristic_set(&Polynomial::from_int_terms(2, terms)).unwrap().directions
    }

    #[test]
    fn convex_corner_passes() {
        let wave = zeros(&[(&[2, 0], 1, 0), (&[0, 2], -1, 0)]);
        let d = exterior_cone_diagnostic(&unit_square(), &p(1, 1), &wave).unwrap();
        let ExteriorDiagnostic::Pass { best, avoidance } = d else { panic!("corner should pass") };
        assert_eq!(avoidance.len(), 1);
        let (a, b) = avoidance[0].angles().unwrap();
        assert!((b - a - 1.5 * PI).abs() < 1e-12);
        assert!(best.margin > 0.0);
        assert!(!wave.iter().any(|z| best.gamma.contains(z)));
    }

    #[test]
    fn reflex_corner() {
        let wave = zeros(&[(&[2, 0], 1, 0), (&[0, 2], -1, 0)]);
        let ExteriorDiagnostic::Fail { tried, avoidance } = exterior_cone_diagnostic(&l_shape(), &p(1, 1), &wave).unwrap() else {
            panic!("reflex corner should fail for diagonal zeros");
        };
        assert_eq!(avoidance, vec![Sector2::closed(p(1, 0), p(0, 1)).unwrap()]);
        assert!(tried[0].blocking.as_ref().unwrap().same_as(&AlgebraicDirection::from_ints(1, 1).unwrap()));

        let hyper = zeros(&[(&[1, 1], 1, 0)]);
        let ExteriorDiagnostic::Pass { best, .. } = exterior_cone_diagnostic(&l_shape(), &p(1, 1), &hyper).unwrap() else {
            panic!("axes avoid the open quadrant");
        };
        assert_eq!(best.gamma, Sector2::open(p(1, 0), p(0, 1)).unwrap());
    }

    #[test]
    fn edge_point_and_errors() {
        let wave = zeros(&[(&[2, 0], 1, 0), (&[0, 2], -1, 0)]);
        let mid = [rat(1, 2), int(0)];
        assert!(exterior_cone_diagnostic(&unit_square(), &mid, &wave).unwrap().passed());
        assert!(matches!(
            exterior_cone_diagnostic(&unit_square(), &[rat(1, 2), rat(1, 2)], &wave),
            Err(Error::NotOnBoundary)
        ));
    }

    #[test]
    fn rays_re_entering_the_domain_are_excluded() {
        // rays from a hole corner cross the hole and re-enter
        let d = framed_square();
        assert!(!ray_misses(&d, &p(1, 1), &p(0, 1)));
        assert!(!ray_misses(&d, &p(1, 1), &[rat(1, 3), rat(1, 2)]));
        assert!(ray_misses(&unit_square(), &p(1, 1), &[rat(1, 3), rat(1, 2)]));
    }
}
