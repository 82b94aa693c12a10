//! Exact sweeps: does every line `⟨x, N⟩ = α` meet the domain in at most
//! one open interval?

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::{orient, point_f64, point_json, EdgeId, PlanarDomain, Point};
use crate::characteristic::{AlgebraicDirection, PlanarDirection};
use crate::error::Result;
use crate::number::rat;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
pub enum ConvexityMode {
    /// Zero directions of the principal part.
    #[default]
    #[serde(rename = "supports")]
    Supports,
    /// Zero directions of `σ_P`.
    #[serde(rename = "singular")]
    SingularSupports,
}

impl ConvexityMode {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Supports => "supports",
            Self::SingularSupports => "singular",
        }
    }
}

impl std::str::FromStr for ConvexityMode {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "supports" => Ok(Self::Supports),
            "singular" | "singular-supports" => Ok(Self::SingularSupports),
            other => Err(crate::error::Error::Parse(format!("unknown mode {other:?} (expected supports or singular)"))),
        }
    }
}

/// Where a sample line crosses an edge.
#[derive(Clone, Debug)]
pub struct Crossing {
    pub edge: EdgeId,
    /// Edge endpoints ordered so that `⟨b − a, N⟩ > 0`.
    pub a: Point,
    pub b: Point,
}

impl Crossing {
    /// Exact intersection point for rational directions.
    pub fn exact_point(&self, n: &AlgebraicDirection, on_line: &Point) -> Option<Point> {
        let nv = n.rational_vector()?;
        let da = super::dot(&nv, &super::sub(on_line, &self.a));
        let db = super::dot(&nv, &super::sub(&self.b, &self.a));
        let lam = da / db;
        Some([&self.a[0] + &lam * (&self.b[0] - &self.a[0]), &self.a[1] + &lam * (&self.b[1] - &self.a[1])])
    }

    pub fn point_f64(&self, n: &AlgebraicDirection, on_line: &Point) -> [f64; 2] {
        if let Some(p) = self.exact_point(n, on_line) {
            return point_f64(&p);
        }
        let u = n.unit_f64();
        let (a, b, m) = (point_f64(&self.a), point_f64(&self.b), point_f64(on_line));
        let da = u[0] * (m[0] - a[0]) + u[1] * (m[1] - a[1]);
        let db = u[0] * (b[0] - a[0]) + u[1] * (b[1] - a[1]);
        let lam = da / db;
        [a[0] + lam * (b[0] - a[0]), a[1] + lam * (b[1] - a[1])]
    }

    fn to_json(&self, n: &AlgebraicDirection, on_line: &Point) -> Value {
        json!({
            "edge": { "region": self.edge.region, "ring": self.edge.ring, "index": self.edge.edge },
            "point": self.point_f64(n, on_line),
            "exact": self.exact_point(n, on_line).map(|p| point_json(&p)),
        })
    }
}

/// Position of `e2`'s crossing relative to `e1`'s along `rot₊₉₀(N)`.
///
/// Edges crossing the same open slab never meet inside it, so one of them
/// lies in a closed half-plane of the other's supporting line; for `e1`
/// with `⟨b − a, N⟩ > 0`, `det(b − a, p − a)` has the sign of the
/// coordinate of `p` along `rot₊₉₀(N)` relative to `e1 ∩ line`.
fn cmp_along(e1: &Crossing, e2: &Crossing) -> Ordering {
    fn side(e: &Crossing, f: &Crossing) -> Option<Ordering> {
        let oa = orient(&e.a, &e.b, &f.a);
        let ob = orient(&e.a, &e.b, &f.b);
        if oa == ob.reverse() && oa != Ordering::Equal {
            return None;
        }
        Some(if oa != Ordering::Equal { oa } else { ob })
    }
    match side(e1, e2) {
        Some(o) => o.reverse(),
        None => side(e2, e1).unwrap_or(Ordering::Equal),
    }
}

#[derive(Clone, Debug)]
pub struct Chord {
    pub start: Crossing,
    pub end: Crossing,
}

/// Two disjoint chords of one line `⟨x, N⟩ = α` inside the domain.
#[derive(Clone, Debug)]
pub struct SweepWitness {
    pub direction: AlgebraicDirection,
    /// A rational point on the line.
    pub point: Point,
    /// `α` for the unit normal.
    pub offset: f64,
    pub chords: [Chord; 2],
    pub chord_count: usize,
}

impl SweepWitness {
    /// Recounts the chords of the witness line exactly.
    pub fn replay(&self, domain: &PlanarDomain) -> usize {
        crossings(domain, &self.direction, &self.point).len() / 2
    }

    /// Binary64 chord endpoints.
    pub fn chord_points(&self) -> [[[f64; 2]; 2]; 2] {
        let f = |c: &Crossing| c.point_f64(&self.direction, &self.point);
        [
            [f(&self.chords[0].start), f(&self.chords[0].end)],
            [f(&self.chords[1].start), f(&self.chords[1].end)],
        ]
    }

    pub fn to_json(&self) -> Value {
        let chord = |c: &Chord| {
            json!({
                "start": c.start.to_json(&self.direction, &self.point),
                "end": c.end.to_json(&self.direction, &self.point),
            })
        };
        json!({
            "direction": self.direction.record(),
            "point_on_line": point_json(&self.point),
            "offset": self.offset,
            "chord_count": self.chord_count,
            "chords": [chord(&self.chords[0]), chord(&self.chords[1])],
        })
    }
}

#[derive(Clone, Debug)]
pub enum SweepOutcome {
    Pass,
    Fail(Box<SweepWitness>),
}

impl SweepOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, Self::Pass)
    }
}

/// Edges crossed by the line through `m` with normal `n`, sorted along it.
/// `m` must not share its projection with any vertex.
fn crossings(domain: &PlanarDomain, n: &AlgebraicDirection, m: &Point) -> Vec<Crossing> {
    let mut out = Vec::new();
    for (id, a, b) in domain.edges() {
        let sa = n.cmp_projection(a, m);
        let sb = n.cmp_projection(b, m);
        if sa == Ordering::Equal || sb == Ordering::Equal || sa == sb {
            continue;
        }
        let (a, b) = if sa == Ordering::Less { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
        out.push(Crossing { edge: id, a, b });
    }
    out.sort_by(cmp_along);
    out
}

fn midpoint(a: &Point, b: &Point) -> Point {
    let h = rat(1, 2);
    [(&a[0] + &b[0]) * &h, (&a[1] + &b[1]) * &h]
}

/// Vertex projections split the lines into finitely many open slabs in
/// which the chord count is constant; one exact sample line per slab
/// decides. Lines through a vertex cannot split the domain unless an
/// adjacent slab does.
pub fn direction_convexity(domain: &PlanarDomain, n: &AlgebraicDirection) -> Result<SweepOutcome> {
    let mut events: Vec<&Point> = domain.vertices().collect();
    events.sort_by(|a, b| n.cmp_projection(a, b));
    events.dedup_by(|a, b| n.cmp_projection(a, b) == Ordering::Equal);
    for w in events.windows(2) {
        let m = midpoint(w[0], w[1]);
        let cs = crossings(domain, n, &m);
        let count = cs.len() / 2;
        if count >= 2 {
            let u = n.unit_f64();
            let mf = point_f64(&m);
            let mut it = cs.into_iter();
            let mut chord = || Chord { start: it.next().unwrap(), end: it.next().unwrap() };
            let chords = [chord(), chord()];
            return Ok(SweepOutcome::Fail(Box::new(SweepWitness {
                direction: n.clone(),
                offset: u[0] * mf[0] + u[1] * mf[1],
                point: m,
                chords,
                chord_count: count,
            })));
        }
    }
    Ok(SweepOutcome::Pass)
}

#[derive(Clone, Debug)]
pub struct DirectionCheck {
    pub direction: AlgebraicDirection,
    pub component: usize,
    pub passed: bool,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub passed: bool,
    pub witnesses: Vec<SweepWitness>,
    pub checked: Vec<DirectionCheck>,
    pub mode: ConvexityMode,
}

impl Verdict {
    pub fn status(&self) -> &'static str {
        if self.passed {
            "pass"
        } else {
            "fail"
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "status": self.status(),
            "mode": self.mode.label(),
            "witnesses": self.witnesses.iter().map(SweepWitness::to_json).collect::<Vec<_>>(),
            "checked_directions": self.checked.iter().map(|c| json!({
                "direction": c.direction.record(),
                "component": c.component,
                "status": if c.passed { "pass" } else { "fail" },
            })).collect::<Vec<_>>(),
        })
    }
}

/// One representative of each antipodal pair.
pub(crate) fn antipodal_representatives(dirs: &[AlgebraicDirection]) -> Vec<AlgebraicDirection> {
    let mut out: Vec<AlgebraicDirection> = Vec::new();
    for d in dirs {
        let rep = if d.is_upper() { d.clone() } else { d.neg() };
        if !out.iter().any(|o| o.same_as(&rep)) {
            out.push(rep);
        }
    }
    out.sort_by(|a, b| a.angular_cmp(b));
    out
}

/// Sweeps every component along every zero direction.
pub fn convexity_verdict(domain: &PlanarDomain, zeros: &[AlgebraicDirection], mode: ConvexityMode) -> Result<Verdict> {
    let dirs = antipodal_representatives(zeros);
    let mut witnesses = Vec::new();
    let mut checked = Vec::new();
    for (ci, comp) in domain.components().iter().enumerate() {
        for n in &dirs {
            let outcome = direction_convexity(comp, n)?;
            checked.push(DirectionCheck { direction: n.clone(), component: ci, passed: outcome.passed() });
            if let SweepOutcome::Fail(mut w) = outcome {
                for ch in w.chords.iter_mut() {
                    ch.start.edge.region = ci;
                    ch.end.edge.region = ci;
                }
                witnesses.push(*w);
            }
        }
    }
    Ok(Verdict { passed: witnesses.is_empty(), witnesses, checked, mode })
}

#[cfg(test)]
mod tests {
    use super::super::fixtures::*;
    use super::*;
    use crate::characteristic::characteristic_set;
    use crate::number::int;
    use crate::polynomial::Polynomial;

    fn dir(x: i64, y: i64) -> AlgebraicDirection {
        AlgebraicDirection::from_ints(x, y).unwrap()
    }

    #[test]
    fn l_shape_diagonal_fails() {
        let SweepOutcome::Fail(w) = direction_convexity(&l_shape(), &dir(1, 1)).unwrap() else {
            panic!("expected a witness");
        };
        assert!((w.offset - 2.5 / 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(w.replay(&l_shape()), 2);
        let pts = w.chord_points();
        let xs: Vec<f64> = pts.iter().flat_map(|c| c.iter().map(|p| p[0])).collect();
        // ordered along (−1, 1)
        assert_eq!(xs, vec![2.0, 1.5, 1.0, 0.5]);
        // endpoints are exact
        let e = w.chords[0].start.exact_point(&w.direction, &w.point).unwrap();
        assert_eq!(e, [int(2), crate::number::rat(1, 2)]);
    }

    #[test]
    fn passes() {
        assert!(direction_convexity(&l_shape(), &dir(1, 0)).unwrap().passed());
        assert!(direction_convexity(&l_shape(), &dir(0, 1)).unwrap().passed());
        for n in [dir(1, 0), dir(1, 1), dir(2, -7), dir(0, 1)] {
            assert!(direction_convexity(&unit_square(), &n).unwrap().passed());
        }
        assert!(!direction_convexity(&framed_square(), &dir(1, 0)).unwrap().passed());
    }

    #[test]
    fn verdicts() {
        let wave = Polynomial::from_int_terms(2, &[(&[2, 0], 1, 0), (&[0, 2], -1, 0)]);
        let cs = characteristic_set(&wave).unwrap();
        let v = convexity_verdict(&l_shape(), &cs.directions, ConvexityMode::Supports).unwrap();
        assert!(!v.passed);
        assert_eq!(v.witnesses.len(), 1);
        assert_eq!(v.checked.len(), 2);
        let hyper = Polynomial::from_int_terms(2, &[(&[1, 1], 1, 0)]);
        let cs = characteristic_set(&hyper).unwrap();
        assert!(convexity_verdict(&l_shape(), &cs.directions, ConvexityMode::Supports).unwrap().passed);
        let v = convexity_verdict(&l_shape(), &[], ConvexityMode::Supports).unwrap();
        assert!(v.passed && v.checked.is_empty());
    }

    #[test]
    fn irrational_direction() {
        // x1² − 2 x2²: slopes ±1/√2
        let p = Polynomial::from_int_terms(2, &[(&[2, 0], 1, 0), (&[0, 2], -2, 0)]);
        let cs = characteristic_set(&p).unwrap();
        let v = convexity_verdict(&l_shape(), &cs.directions, ConvexityMode::Supports).unwrap();
        assert!(!v.passed);
        let w = &v.witnesses[0];
        assert_eq!(w.replay(&l_shape()), 2);
        assert!(w.chords[0].start.exact_point(&w.direction, &w.point).is_none());
    }
}
