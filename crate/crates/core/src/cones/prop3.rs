//! Four equivalent conditions on a closed proper cone `Γ°` and a normal `N`:
//!
//! * (i) `H_0 ∩ Γ° = {0}`,
//! * (ii) `N ∈ Γ` or `−N ∈ Γ`, where `Γ` is the interior of the dual of `Γ°`,
//! * (iii) `H_c ∩ (x + Γ°)` is bounded,
//! * (iv) `H_c ∩ (x + Γ°) = {x}` when `x ∈ H_c`,
//!
//! with `H_c = {y : ⟨y, N⟩ = c}`. Conditions (iii) and (iv) are evaluated at
//! the orthogonal projection `x′` of `x` onto `H_c`.

use num_traits::{Signed, Zero};
use serde_json::{json, Value};

use super::lorentz::is_zero_vec;
use super::polyhedral::{recession_direction, ConvexSet, PolyhedralCone, Recession};
use super::sector::{neg2, rot_ccw, Sector2, Vec2};
use super::Cone;
use crate::error::{Error, Result};
use crate::linalg::{dot, Vector};
use crate::number::{rational_string, Rational};

#[derive(Clone, Debug, PartialEq)]
pub struct Prop3Record {
    pub i: bool,
    pub ii: bool,
    pub iii: bool,
    pub iv: bool,
    pub x_projected: Vector,
}

impl Prop3Record {
    pub fn all_equal(&self) -> bool {
        self.i == self.ii && self.ii == self.iii && self.iii == self.iv
    }

    pub fn to_json(&self) -> Value {
        json!({
            "i": self.i,
            "ii": self.ii,
            "iii": self.iii,
            "iv": self.iv,
            "x_projected": self.x_projected.iter().map(rational_string).collect::<Vec<_>>(),
        })
    }
}

fn v2(v: &Vec2) -> Vector {
    v.to_vec()
}

/// `x + (c − ⟨x, N⟩)/|N|² · N`.
fn project(x: &[Rational], n: &[Rational], c: &Rational) -> Vector {
    let k = (c - dot(x, n)) / dot(n, n);
    x.iter().zip(n).map(|(xi, ni)| xi + &k * ni).collect()
}

/// `H_c ∩ (x′ + Γ°)` from the closed-cone inequalities `⟨f, v⟩ ≥ 0`.
fn slice(facets: &[Vector], n: &[Rational], c: &Rational, xp: &[Rational]) -> ConvexSet {
    let mut a = Vec::new();
    let mut b = Vec::new();
    for f in facets {
        let neg: Vector = f.iter().map(|v| -v).collect();
        b.push(dot(&neg, xp));
        a.push(neg);
    }
    a.push(n.to_vec());
    b.push(c.clone());
    a.push(n.iter().map(|v| -v).collect());
    b.push(-c);
    ConvexSet::HRep { a, b }
}

fn bounded(set: &ConvexSet, xp: &[Rational]) -> Result<bool> {
    Ok(recession_direction(set, xp)? == Recession::NoRecession)
}

/// A non-zero `v ∈ cone(G)` with `⟨v, N⟩ = 0` exists iff some generator lies
/// on `H_0` or two generators lie on opposite sides of it.
fn only_origin_on_hyperplane(gens: &[Vector], n: &[Rational]) -> bool {
    let vals: Vec<Rational> = gens.iter().map(|g| dot(g, n)).collect();
    for (i, a) in vals.iter().enumerate() {
        if a.is_zero() {
            return false;
        }
        for (j, b) in vals.iter().enumerate().skip(i + 1) {
            if a.is_positive() != b.is_positive() {
                let v: Vector = gens[i].iter().zip(&gens[j]).map(|(gi, gj)| gi * b.abs() + gj * a.abs()).collect();
                if !is_zero_vec(&v) {
                    return false;
                }
            }
        }
    }
    true
}

fn check_inputs(dim: usize, n: &[Rational], x: &[Rational]) -> Result<()> {
    for v in [n, x] {
        if v.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
        }
    }
    if is_zero_vec(n) {
        return Err(Error::Parse("normal N must be non-zero".into()));
    }
    Ok(())
}

fn sector_predicates(s: &Sector2, n: &[Rational], c: &Rational, x: &[Rational]) -> Result<Prop3Record> {
    check_inputs(2, n, x)?;
    let s = s.closure();
    if s.is_degenerate() {
        return Err(Error::DegenerateCone("Γ° = {0}".into()));
    }
    if !s.is_proper() || !s.is_convex() {
        return Err(Error::DegenerateCone(format!("{s} is not proper")));
    }
    let nv: Vec2 = [n[0].clone(), n[1].clone()];
    let along = rot_ccw(&nv);
    let i = !s.contains_vector(&along) && !s.contains_vector(&neg2(&along));
    let gamma = s.dual()?.interior();
    let ii = gamma.contains_vector(&nv) || gamma.contains_vector(&neg2(&nv));
    let xp = project(x, n, c);
    let facets: Vec<Vector> = s.facet_normals().iter().map(v2).collect();
    let iii = bounded(&slice(&facets, n, c, &xp), &xp)?;
    let gens: Vec<Vector> = s.generators().iter().map(v2).collect();
    let iv = only_origin_on_hyperplane(&gens, n);
    Ok(Prop3Record { i, ii, iii, iv, x_projected: xp })
}

fn polyhedral_predicates(p: &PolyhedralCone, n: &[Rational], c: &Rational, x: &[Rational]) -> Result<Prop3Record> {
    check_inputs(p.dim, n, x)?;
    if p.is_zero() {
        return Err(Error::DegenerateCone("Γ° = {0}".into()));
    }
    if !p.is_proper()? {
        return Err(Error::DegenerateCone("Γ° contains a line".into()));
    }
    let facets = p.dual()?.generators;

    // Γ° ∩ H_0 is the dual of cone(facets ∪ {±N})
    let mut with_n = facets.clone();
    with_n.push(n.to_vec());
    with_n.push(n.iter().map(|v| -v).collect());
    let i = PolyhedralCone::new(p.dim, with_n)?.dual()?.is_zero();

    // interior of the dual: strictly positive on the double dual's rays
    let rays = p.dual()?.dual()?.generators;
    let signs: Vec<Rational> = rays.iter().map(|g| dot(g, n)).collect();
    let ii = signs.iter().all(Signed::is_positive) || signs.iter().all(Signed::is_negative);

    let xp = project(x, n, c);
    let iii = bounded(&slice(&facets, n, c, &xp), &xp)?;
    let iv = only_origin_on_hyperplane(&p.generators, n);
    Ok(Prop3Record { i, ii, iii, iv, x_projected: xp })
}

/// Evaluates (i)–(iv) without cross-checking them.
pub fn prop3_evaluate(gamma_dual: &Cone, n: &[Rational], c: &Rational, x: &[Rational]) -> Result<Prop3Record> {
    match gamma_dual {
        Cone::Sector(s) => sector_predicates(s, n, c, x),
        Cone::Polyhedral(p) => polyhedral_predicates(p, n, c, x),
        Cone::Lorentz(_) => Err(Error::Parse("the four-predicate check needs a sector or polyhedral cone".into())),
    }
}

/// Evaluates (i)–(iv); disagreement is reported as an internal error.
pub fn prop3_predicates(gamma_dual: &Cone, n: &[Rational], c: &Rational, x: &[Rational]) -> Result<Prop3Record> {
    let rec = prop3_evaluate(gamma_dual, n, c, x)?;
    if !rec.all_equal() {
        return Err(Error::InternalInconsistency(format!(
            "predicates disagree: i={} ii={} iii={} iv={}",
            rec.i, rec.ii, rec.iii, rec.iv
        )));
    }
    Ok(rec)
}
