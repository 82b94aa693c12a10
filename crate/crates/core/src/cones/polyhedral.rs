//! Finitely generated cones in ℝ^d for small d, and polyhedra `{Ax ≤ b}`.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{self, dot, Vector};
use crate::number::{parse_rational, rational_string, to_f64, Rational};

pub const MAX_DIM: usize = 4;

/// Positive multiple with coprime integer entries.
pub fn primitive(v: &[Rational]) -> Vector {
    let l = v.iter().fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = v.iter().map(|c| (c * Rational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() {
        return v.to_vec();
    }
    ints.into_iter().map(|c| Rational::from_integer(c / &g)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyhedralCone {
    pub dim: usize,
    pub generators: Vec<Vector>,
}

impl PolyhedralCone {
    pub fn new(dim: usize, generators: Vec<Vector>) -> Result<Self> {
        if dim == 0 || dim > MAX_DIM {
            return Err(Error::UnsupportedDimension(dim));
        }
        let mut seen = BTreeSet::new();
        let mut gens = Vec::new();
        for g in generators {
            if g.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: g.len() });
            }
            if g.iter().all(Zero::is_zero) {
                continue;
            }
            let p = primitive(&g);
            if seen.insert(p.clone()) {
                gens.push(p);
            }
        }
        Ok(Self { dim, generators: gens })
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }

    /// Generators of `{h : ⟨g, h⟩ ≥ 0 for every generator g}`.
    ///
    /// Splits off the lineality space `L = ker G`, then enumerates the
    /// extreme rays of the pointed part inside `L^⊥`: each is cut out by
    /// `r − 1` tight generator constraints, `r = rank G`.
    pub fn dual(&self) -> Result<Self> {
        let d = self.dim;
        let lin = linalg::nullspace(&self.generators, d);
        let r = d - lin.len();
        let mut out: Vec<Vector> = Vec::new();
        for l in &lin {
            out.push(l.clone());
            out.push(l.iter().map(|x| -x).collect());
        }
        if r > 0 {
            for subset in combinations(self.generators.len(), r - 1) {
                let mut rows: Vec<Vector> = subset.iter().map(|&i| self.generators[i].clone()).collect();
                rows.extend(lin.iter().cloned());
                let ns = linalg::nullspace(&rows, d);
                if ns.len() != 1 {
                    continue;
                }
                for cand in [ns[0].clone(), ns[0].iter().map(|x| -x).collect::<Vector>()] {
                    if self.generators.iter().all(|g| !dot(g, &cand).is_negative()) {
                        out.push(cand);
                    }
                }
            }
        }
        Self::new(d, out)
    }

    /// Membership by Farkas: `x ∈ cone(G)` iff `⟨h, x⟩ ≥ 0` on the dual.
    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        Ok(self.dual()?.generators.iter().all(|h| !dot(h, x).is_negative()))
    }

    /// Contains no line iff the dual cone has interior, i.e. its
    /// generators span ℝ^d.
    pub fn is_proper(&self) -> Result<bool> {
        let dual = self.dual()?;
        Ok(linalg::rank(&dual.generators, self.dim) == self.dim)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "kind": "polyhedral",
            "dim": self.dim,
            "generators": self.generators.iter().map(|g| g.iter().map(rational_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let gens = v
            .get("generators")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::Parse("polyhedral cone needs \"generators\"".into()))?;
        let parsed: Vec<Vector> = gens
            .iter()
            .map(|g| {
                g.as_array()
                    .ok_or_else(|| Error::Parse("generator must be an array".into()))?
                    .iter()
                    .map(|x| match x {
                        Value::String(s) => parse_rational(s),
                        Value::Number(n) => parse_rational(&n.to_string()),
                        other => Err(Error::Parse(format!("bad coordinate {other}"))),
                    })
                    .collect::<Result<Vector>>()
            })
            .collect::<Result<_>>()?;
        let dim = match v.get("dim").and_then(Value::as_u64) {
            Some(d) => d as usize,
            None => parsed.first().map(Vec::len).ok_or_else(|| Error::Parse("cannot infer cone dimension".into()))?,
        };
        Self::new(dim, parsed)
    }
}

pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// A closed convex set given either by inequalities or as a shifted cone.
#[derive(Clone, Debug)]
pub enum ConvexSet {
    /// `{x : a_i·x ≤ b_i}`.
    HRep { a: Vec<Vector>, b: Vec<Rational> },
    /// `apex + cone`.
    Shifted { apex: Vector, cone: PolyhedralCone },
}

impl ConvexSet {
    pub fn dim(&self) -> usize {
        match self {
            Self::HRep { a, .. } => a.first().map_or(0, Vec::len),
            Self::Shifted { apex, .. } => apex.len(),
        }
    }

    pub fn contains(&self, x: &[Rational]) -> Result<bool> {
        match self {
            Self::HRep { a, b } => Ok(a.iter().zip(b).all(|(row, bi)| &dot(row, x) <= bi)),
            Self::Shifted { apex, cone } => {
                let shifted: Vector = x.iter().zip(apex).map(|(p, q)| p - q).collect();
                cone.contains(&shifted)
            }
        }
    }

    /// Generators of `{ω : x + tω ∈ C for all t ≥ 0}`.
    pub fn recession_cone(&self) -> Result<PolyhedralCone> {
        match self {
            Self::HRep { a, .. } => {
                let d = self.dim();
                let neg: Vec<Vector> = a.iter().map(|r| r.iter().map(|x| -x).collect()).collect();
                if neg.is_empty() {
                    return PolyhedralCone::new(d, Vec::new())?.dual();
                }
                PolyhedralCone::new(d, neg)?.dual()
            }
            Self::Shifted { cone, .. } => Ok(cone.clone()),
        }
    }
}

/// `ω` with `x + tω ∈ C` for all `t ≥ 0`, or `NoRecession` when `C` is bounded.
#[derive(Clone, Debug, PartialEq)]
pub enum Recession {
    Direction { generator: Vector, unit: Vec<f64> },
    NoRecession,
}

impl Recession {
    pub fn to_json(&self) -> Value {
        match self {
            Self::Direction { generator, unit } => json!({
                "kind": "direction",
                "generator": generator.iter().map(rational_string).collect::<Vec<_>>(),
                "unit": unit,
            }),
            Self::NoRecession => json!({ "kind": "no-recession" }),
        }
    }
}

pub fn recession_direction(c: &ConvexSet, x: &[Rational]) -> Result<Recession> {
    if x.len() != c.dim() {
        return Err(Error::DimensionMismatch { expected: c.dim(), got: x.len() });
    }
    if !c.contains(x)? {
        return Err(Error::PointNotInSet);
    }
    let rc = c.recession_cone()?;
    Ok(match rc.generators.first() {
        None => Recession::NoRecession,
        Some(g) => {
            let f: Vec<f64> = g.iter().map(to_f64).collect();
            let n = f.iter().map(|v| v * v).sum::<f64>().sqrt();
            Recession::Direction { generator: g.clone(), unit: f.into_iter().map(|v| v / n).collect() }
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::number::{int, rat};

    fn v(xs: &[i64]) -> Vector {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn quadrant_and_octant_are_self_dual() {
        let q = PolyhedralCone::new(2, vec![v(&[1, 0]), v(&[0, 1])]).unwrap();
        assert_eq!(q.dual().unwrap().generators.len(), 2);
        assert!(q.dual().unwrap().contains(&v(&[1, 1])).unwrap());
        let o = PolyhedralCone::new(3, vec![v(&[1, 0, 0]), v(&[0, 1, 0]), v(&[0, 0, 1])]).unwrap();
        let d = o.dual().unwrap();
        let mut g = d.generators.clone();
        g.sort();
        let mut want = o.generators.clone();
        want.sort();
        assert_eq!(g, want);
        assert!(o.is_proper().unwrap());
    }

    #[test]
    fn half_space_and_lines() {
        // a ray's dual is a half-space containing a line
        let r = PolyhedralCone::new(3, vec![v(&[0, 0, 1])]).unwrap();
        let d = r.dual().unwrap();
        assert!(!d.is_proper().unwrap());
        assert!(d.contains(&v(&[5, -7, 0])).unwrap());
        assert!(!d.contains(&v(&[0, 0, -1])).unwrap());
        let line = PolyhedralCone::new(2, vec![v(&[1, 0]), v(&[-1, 0])]).unwrap();
        assert!(!line.is_proper().unwrap());
        let square_pyramid = PolyhedralCone::new(3, vec![v(&[1, 1, 1]), v(&[1, -1, 1]), v(&[-1, 1, 1]), v(&[-1, -1, 1])]).unwrap();
        let dd = square_pyramid.dual().unwrap().dual().unwrap();
        let mut a = dd.generators.clone();
        a.sort();
        let mut b = square_pyramid.generators.clone();
        b.sort();
        assert_eq!(a, b);
    }

    #[test]
    fn recession_examples() {
        let shifted = ConvexSet::Shifted { apex: v(&[1, 1]), cone: PolyhedralCone::new(2, vec![v(&[1, 0]), v(&[0, 1])]).unwrap() };
        match recession_direction(&shifted, &v(&[1, 1])).unwrap() {
            Recession::Direction { generator, .. } => assert!(generator == v(&[1, 0]) || generator == v(&[0, 1])),
            Recession::NoRecession => panic!("unbounded"),
        }
        let strip = ConvexSet::HRep { a: vec![v(&[-1, 0]), v(&[0, 1]), v(&[0, -1])], b: vec![int(0), int(1), int(0)] };
        assert_eq!(
            recession_direction(&strip, &[int(5), rat(1, 2)]).unwrap(),
            Recession::Direction { generator: v(&[1, 0]), unit: vec![1.0, 0.0] }
        );
        let square = ConvexSet::HRep { a: vec![v(&[-1, 0]), v(&[1, 0]), v(&[0, -1]), v(&[0, 1])], b: vec![int(0), int(1), int(0), int(1)] };
        assert_eq!(recession_direction(&square, &[rat(1, 2), rat(1, 2)]).unwrap(), Recession::NoRecession);
        assert!(matches!(recession_direction(&square, &[int(2), int(0)]), Err(Error::PointNotInSet)));
    }
}
