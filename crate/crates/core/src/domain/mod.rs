//! Bounded polygonal domains with holes in the plane.

pub mod distance;
pub mod exterior;
pub mod sweep;

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::cones::sector::Vec2;
use crate::error::{Error, Result};
use crate::number::{bigint_to_json, parse_rational, rational_from_parts, to_f64, Rational};

pub use distance::{boundary_distance, boundary_distance_sq, min_principle_check, min_principle_lorentz, MinPrinciple};
pub use exterior::{exterior_cone_diagnostic, ExteriorDiagnostic};
pub use sweep::{convexity_verdict, direction_convexity, ConvexityMode, SweepOutcome, SweepWitness, Verdict};

pub type Point = Vec2;

pub(crate) fn sub(a: &Point, b: &Point) -> Point {
    [&a[0] - &b[0], &a[1] - &b[1]]
}

pub(crate) fn cross(u: &Point, v: &Point) -> Rational {
    &u[0] * &v[1] - &u[1] * &v[0]
}

pub(crate) fn dot(u: &Point, v: &Point) -> Rational {
    &u[0] * &v[0] + &u[1] * &v[1]
}

/// Sign of `det(b − a, c − a)`.
pub(crate) fn orient(a: &Point, b: &Point, c: &Point) -> Ordering {
    cross(&sub(b, a), &sub(c, a)).cmp(&Rational::zero())
}

pub(crate) fn on_segment(p: &Point, a: &Point, b: &Point) -> bool {
    orient(a, b, p) == Ordering::Equal && !dot(&sub(p, a), &sub(p, b)).is_positive()
}

/// Closed segments `[a, b]` and `[c, d]` share a point.
pub(crate) fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let o1 = orient(a, b, c);
    let o2 = orient(a, b, d);
    let o3 = orient(c, d, a);
    let o4 = orient(c, d, b);
    if o1 != o2 && o3 != o4 && o1 != Ordering::Equal && o2 != Ordering::Equal && o3 != Ordering::Equal && o4 != Ordering::Equal {
        return true;
    }
    on_segment(c, a, b) || on_segment(d, a, b) || on_segment(a, c, d) || on_segment(b, c, d)
}

pub(crate) fn point_f64(p: &Point) -> [f64; 2] {
    [to_f64(&p[0]), to_f64(&p[1])]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// A closed polygonal curve; the last vertex connects back to the first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring(pub Vec<Point>);

impl Ring {
    pub fn vertices(&self) -> &[Point] {
        &self.0
    }

    pub fn edges(&self) -> impl Iterator<Item = (&Point, &Point)> {
        let n = self.0.len();
        (0..n).map(move |i| (&self.0[i], &self.0[(i + 1) % n]))
    }

    /// Twice the signed area.
    pub fn signed_area2(&self) -> Rational {
        self.edges().map(|(a, b)| cross(a, b)).sum()
    }

    pub fn locate(&self, p: &Point) -> Location {
        let mut inside = false;
        for (a, b) in self.edges() {
            if on_segment(p, a, b) {
                return Location::Boundary;
            }
            if (a[1] > p[1]) != (b[1] > p[1]) {
                let x = &a[0] + (&p[1] - &a[1]) * (&b[0] - &a[0]) / (&b[1] - &a[1]);
                if p[0] < x {
                    inside = !inside;
                }
            }
        }
        if inside {
            Location::Inside
        } else {
            Location::Outside
        }
    }

    fn validate(&self, what: &str) -> Result<()> {
        let v = &self.0;
        let n = v.len();
        if n < 3 {
            return Err(Error::InvalidDomain(format!("{what} has fewer than 3 vertices")));
        }
        for i in 0..n {
            if v[i] == v[(i + 1) % n] {
                return Err(Error::InvalidDomain(format!("{what} repeats vertex {i}")));
            }
        }
        if self.signed_area2().is_zero() {
            return Err(Error::InvalidDomain(format!("{what} has zero area")));
        }
        for i in 0..n {
            let (a, b) = (&v[i], &v[(i + 1) % n]);
            // adjacent edges may only share their common vertex
            let c = &v[(i + 2) % n];
            if orient(a, b, c) == Ordering::Equal && dot(&sub(b, a), &sub(c, b)).is_negative() {
                return Err(Error::InvalidDomain(format!("{what} folds back at vertex {}", (i + 1) % n)));
            }
            for j in i + 2..n {
                if i == 0 && j == n - 1 {
                    continue;
                }
                if segments_intersect(a, b, &v[j], &v[(j + 1) % n]) {
                    return Err(Error::InvalidDomain(format!("{what} is not simple: edges {i} and {j} meet")));
                }
            }
        }
        Ok(())
    }

    fn oriented(mut self, ccw: bool) -> Self {
        if self.signed_area2().is_positive() != ccw {
            self.0.reverse();
        }
        self
    }

    fn crosses(&self, other: &Ring) -> bool {
        self.edges().any(|(a, b)| other.edges().any(|(c, d)| segments_intersect(a, b, c, d)))
    }
}

/// Interior of `outer` minus the closed holes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Region {
    pub outer: Ring,
    pub holes: Vec<Ring>,
}

impl Region {
    pub fn locate(&self, p: &Point) -> Location {
        match self.outer.locate(p) {
            Location::Inside => {}
            other => return other,
        }
        for h in &self.holes {
            match h.locate(p) {
                Location::Outside => {}
                Location::Boundary => return Location::Boundary,
                Location::Inside => return Location::Outside,
            }
        }
        Location::Inside
    }

    pub fn rings(&self) -> impl Iterator<Item = &Ring> {
        std::iter::once(&self.outer).chain(self.holes.iter())
    }
}

/// `(region, ring, edge)`; ring 0 is the outer ring, ring `k > 0` hole `k − 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct EdgeId {
    pub region: usize,
    pub ring: usize,
    pub edge: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanarDomain {
    regions: Vec<Region>,
}

impl PlanarDomain {
    /// Validates and orients the rings: outer rings counterclockwise,
    /// holes clockwise.
    pub fn new(regions: Vec<Region>) -> Result<Self> {
        if regions.is_empty() {
            return Err(Error::InvalidDomain("no regions".into()));
        }
        let mut out = Vec::with_capacity(regions.len());
        for (r, reg) in regions.into_iter().enumerate() {
            reg.outer.validate(&format!("region {r} outer ring"))?;
            let outer = reg.outer.oriented(true);
            let mut holes: Vec<Ring> = Vec::new();
            for (h, ring) in reg.holes.into_iter().enumerate() {
                let what = format!("region {r} hole {h}");
                ring.validate(&what)?;
                let ring = ring.oriented(false);
                if ring.0.iter().any(|p| outer.locate(p) != Location::Inside) || ring.crosses(&outer) {
                    return Err(Error::InvalidDomain(format!("{what} is not strictly inside its outer ring")));
                }
                for (k, other) in holes.iter().enumerate() {
                    if ring.crosses(other) || other.locate(&ring.0[0]) != Location::Outside || ring.locate(&other.0[0]) != Location::Outside {
                        return Err(Error::InvalidDomain(format!("{what} meets hole {k}")));
                    }
                }
                holes.push(ring);
            }
            out.push(Region { outer, holes });
        }
        for i in 0..out.len() {
            for j in i + 1..out.len() {
                let (a, b) = (&out[i], &out[j]);
                let touch = a.rings().any(|ra| b.rings().any(|rb| ra.crosses(rb)));
                if touch || a.locate(&b.outer.0[0]) == Location::Inside || b.locate(&a.outer.0[0]) == Location::Inside {
                    return Err(Error::InvalidDomain(format!("regions {i} and {j} are not disjoint")));
                }
            }
        }
        Ok(Self { regions: out })
    }

    pub fn polygon(vertices: Vec<Point>) -> Result<Self> {
        Self::new(vec![Region { outer: Ring(vertices), holes: Vec::new() }])
    }

    pub fn regions(&self) -> &[Region] {
        &self.regions
    }

    /// Connected components; each region is one.
    pub fn components(&self) -> Vec<PlanarDomain> {
        self.regions.iter().map(|r| Self { regions: vec![r.clone()] }).collect()
    }

    pub fn locate(&self, p: &Point) -> Location {
        let mut best = Location::Outside;
        for r in &self.regions {
            match r.locate(p) {
                Location::Inside => return Location::Inside,
                Location::Boundary => best = Location::Boundary,
                Location::Outside => {}
            }
        }
        best
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.locate(p) == Location::Inside
    }

    pub fn vertices(&self) -> impl Iterator<Item = &Point> {
        self.regions.iter().flat_map(|r| r.rings()).flat_map(|ring| ring.0.iter())
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &Point, &Point)> {
        self.regions.iter().enumerate().flat_map(|(ri, r)| {
            r.rings().enumerate().flat_map(move |(k, ring)| {
                ring.edges().enumerate().map(move |(e, (a, b))| (EdgeId { region: ri, ring: k, edge: e }, a, b))
            })
        })
    }

    pub fn on_boundary(&self, p: &Point) -> bool {
        self.edges().any(|(_, a, b)| on_segment(p, a, b))
    }

    /// Closed segment `[a, b]` lies in the open set.
    pub fn contains_segment(&self, a: &Point, b: &Point) -> bool {
        self.contains(a) && self.contains(b) && !self.edges().any(|(_, c, d)| segments_intersect(a, b, c, d))
    }

    /// Binary64 bounding box `[xmin, ymin, xmax, ymax]`.
    pub fn bbox(&self) -> [f64; 4] {
        let mut b = [f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY];
        for p in self.vertices() {
            let [x, y] = point_f64(p);
            b = [b[0].min(x), b[1].min(y), b[2].max(x), b[3].max(y)];
        }
        b
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let regions = v
            .get("regions")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("domain needs a \"regions\" array".into()))?;
        let ring = |r: &Value| -> Result<Ring> {
            let pts = r.as_array().ok_or_else(|| Error::Parse("ring must be an array of points".into()))?;
            Ok(Ring(pts.iter().map(parse_point).collect::<Result<_>>()?))
        };
        let mut out = Vec::new();
        for reg in regions {
            let outer = ring(reg.get("outer").ok_or_else(|| Error::Parse("region needs \"outer\"".into()))?)?;
            let holes = match reg.get("holes") {
                None | Some(Value::Null) => Vec::new(),
                Some(Value::Array(hs)) => hs.iter().map(ring).collect::<Result<_>>()?,
                Some(_) => return Err(Error::Parse("\"holes\" must be an array".into())),
            };
            out.push(Region { outer, holes });
        }
        Self::new(out)
    }

    pub fn to_json(&self) -> Value {
        let ring = |r: &Ring| r.0.iter().map(point_json).collect::<Vec<_>>();
        json!({
            "regions": self.regions.iter().map(|r| json!({
                "outer": ring(&r.outer),
                "holes": r.holes.iter().map(ring).collect::<Vec<_>>(),
            })).collect::<Vec<_>>()
        })
    }
}

/// `[xn, xd, yn, yd]`, or `[x, y]` with decimal or `p/q` entries.
pub fn parse_point(v: &Value) -> Result<Point> {
    let arr = v.as_array().ok_or_else(|| Error::Parse(format!("point must be an array, got {v}")))?;
    let scalar = |x: &Value| match x {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        other => Err(Error::Parse(format!("bad coordinate {other}"))),
    };
    match arr.len() {
        4 => Ok([rational_from_parts(&arr[0], &arr[1])?, rational_from_parts(&arr[2], &arr[3])?]),
        2 => Ok([scalar(&arr[0])?, scalar(&arr[1])?]),
        n => Err(Error::Parse(format!("point needs 2 or 4 entries, got {n}"))),
    }
}

pub fn point_json(p: &Point) -> Value {
    json!([bigint_to_json(p[0].numer()), bigint_to_json(p[0].denom()), bigint_to_json(p[1].numer()), bigint_to_json(p[1].denom())])
}

impl fmt::Display for PlanarDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let holes: usize = self.regions.iter().map(|r| r.holes.len()).sum();
        write!(f, "{} region(s), {} hole(s)", self.regions.len(), holes)
    }
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;
    use crate::number::{int, rat};

    pub fn p(x: i64, y: i64) -> Point {
        [int(x), int(y)]
    }

    pub fn square(lo: i64, hi: i64) -> Ring {
        Ring(vec![p(lo, lo), p(hi, lo), p(hi, hi), p(lo, hi)])
    }

    pub fn unit_square() -> PlanarDomain {
        PlanarDomain::polygon(square(0, 1).0).unwrap()
    }

    pub fn l_shape() -> PlanarDomain {
        PlanarDomain::polygon(vec![p(0, 0), p(2, 0), p(2, 1), p(1, 1), p(1, 2), p(0, 2)]).unwrap()
    }

    pub fn framed_square() -> PlanarDomain {
        PlanarDomain::new(vec![Region { outer: square(0, 3), holes: vec![square(1, 2)] }]).unwrap()
    }

    pub fn u_shape() -> PlanarDomain {
        let q = |x: i64, y: Rational| [int(x), y];
        PlanarDomain::polygon(vec![
            p(0, 0),
            p(3, 0),
            p(3, 3),
            p(2, 3),
            q(2, rat(3, 5)),
            q(1, rat(3, 5)),
            p(1, 3),
            p(0, 3),
        ])
        .unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::fixtures::*;
    use super::*;
    use crate::number::rat;

    #[test]
    fn validation() {
        let bow = PlanarDomain::polygon(vec![p(0, 0), p(2, 2), p(2, 0), p(0, 2)]);
        assert!(matches!(bow, Err(Error::InvalidDomain(_))));
        let flat = PlanarDomain::polygon(vec![p(0, 0), p(1, 0), p(2, 0)]);
        assert!(matches!(flat, Err(Error::InvalidDomain(_))));
        let touching_hole = PlanarDomain::new(vec![Region { outer: square(0, 3), holes: vec![square(0, 1)] }]);
        assert!(matches!(touching_hole, Err(Error::InvalidDomain(_))));
        let overlapping = PlanarDomain::new(vec![
            Region { outer: square(0, 2), holes: vec![] },
            Region { outer: square(1, 3), holes: vec![] },
        ]);
        assert!(matches!(overlapping, Err(Error::InvalidDomain(_))));
        // an island inside a hole is a separate component
        let island = PlanarDomain::new(vec![
            Region { outer: square(0, 9), holes: vec![square(2, 7)] },
            Region { outer: square(3, 6), holes: vec![] },
        ])
        .unwrap();
        assert_eq!(island.components().len(), 2);
        assert!(island.contains(&p(4, 4)) && !island.contains(&[rat(5, 2), rat(5, 2)]));
    }

    #[test]
    fn orientation_is_normalized() {
        let cw = PlanarDomain::polygon(vec![p(0, 0), p(0, 1), p(1, 1), p(1, 0)]).unwrap();
        assert!(cw.regions()[0].outer.signed_area2().is_positive());
        assert!(framed_square().regions()[0].holes[0].signed_area2().is_negative());
    }

    #[test]
    fn location() {
        let d = framed_square();
        assert_eq!(d.locate(&[rat(1, 2), rat(3, 2)]), Location::Inside);
        assert_eq!(d.locate(&[rat(3, 2), rat(3, 2)]), Location::Outside);
        assert_eq!(d.locate(&p(1, 1)), Location::Boundary);
        assert_eq!(d.locate(&p(3, 2)), Location::Boundary);
        assert!(l_shape().contains_segment(&[rat(1, 2), rat(3, 2)], &[rat(1, 2), rat(1, 2)]));
        assert!(!l_shape().contains_segment(&[rat(1, 2), rat(3, 2)], &[rat(3, 2), rat(1, 2)]));
        assert!(!l_shape().contains_segment(&[rat(1, 2), rat(3, 2)], &[rat(3, 2), rat(3, 2)]));
    }

    #[test]
    fn json_round_trip() {
        let d = u_shape();
        assert_eq!(PlanarDomain::from_json(&d.to_json()).unwrap(), d);
        let text = r#"{"regions":[{"outer":[[0,1,0,1],[2,1,0,1],["2","1/2"],[0,1,1,2]]}]}"#;
        let d = PlanarDomain::from_json(&serde_json::from_str(text).unwrap()).unwrap();
        assert!(d.contains(&[rat(1, 1), rat(1, 4)]));
    }
}
