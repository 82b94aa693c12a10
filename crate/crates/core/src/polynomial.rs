//! Sparse multivariate polynomials with complex-rational coefficients.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, ToPrimitive, Zero};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::number::{ComplexRational, Rational};

/// Exponent vector `α`, with `|α| = Σ α_i`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn zero(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    pub fn unit(dim: usize, i: usize) -> Self {
        let mut e = vec![0; dim];
        e[i] = 1;
        Self(e)
    }

    pub fn order(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `α!`
    pub fn factorial(&self) -> BigInt {
        self.0.iter().map(|&k| factorial(k)).product()
    }

    fn add(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

pub(crate) fn factorial(k: u32) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

fn binomial(n: u32, k: u32) -> BigInt {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// A polynomial in `dimension` real variables.
///
/// No zero coefficient is ever stored. The zero polynomial is representable
/// (it arises as a difference), but every analysis entry point rejects it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<MultiIndex, ComplexRational>,
}

/// `P = Σ_j P_j` with `P_j` homogeneous of degree `j` or zero.
#[derive(Clone, Debug)]
pub struct HomogeneousDecomposition {
    pub degree: u32,
    pub components: Vec<Polynomial>,
    pub principal: Polynomial,
}

impl Polynomial {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(dim: usize, c: ComplexRational) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(MultiIndex::zero(dim), c);
        p
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, ComplexRational::one())
    }

    /// The coordinate function `x_i`.
    pub fn variable(dim: usize, i: usize) -> Self {
        Self::monomial(MultiIndex::unit(dim, i), ComplexRational::one())
    }

    pub fn monomial(alpha: MultiIndex, c: ComplexRational) -> Self {
        let mut p = Self::zero(alpha.dim());
        p.add_term(alpha, c);
        p
    }

    /// Sums coefficients of repeated exponents.
    pub fn from_terms(
        dim: usize,
        terms: impl IntoIterator<Item = (MultiIndex, ComplexRational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(dim);
        for (alpha, c) in terms {
            if alpha.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: alpha.dim(),
                });
            }
            p.add_term(alpha, c);
        }
        Ok(p)
    }

    /// Convenience constructor from `(exponents, re, im)` integer triples.
    pub fn from_int_terms(dim: usize, terms: &[(&[u32], i64, i64)]) -> Self {
        Self::from_terms(
            dim,
            terms
                .iter()
                .map(|(e, re, im)| (MultiIndex(e.to_vec()), ComplexRational::from_ints(*re, *im))),
        )
        .expect("exponent length matches dimension")
    }

    pub(crate) fn add_term(&mut self, alpha: MultiIndex, c: ComplexRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(alpha) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += &c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &ComplexRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> ComplexRational {
        self.terms.get(alpha).cloned().unwrap_or_default()
    }

    /// Total degree; zero for the zero polynomial.
    pub fn degree(&self) -> u32 {
        self.terms.keys().map(MultiIndex::order).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|a| a.order() == 0)
    }

    pub fn is_homogeneous_of(&self, j: u32) -> bool {
        self.terms.keys().all(|a| a.order() == j)
    }

    pub fn ensure_nonzero(&self) -> Result<()> {
        if self.is_zero() {
            Err(Error::ZeroPolynomial)
        } else {
            Ok(())
        }
    }

    fn check_dim(&self, got: usize) -> Result<()> {
        if got != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "adding polynomials of different dimension");
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            dim: self.dim,
            terms: self.terms.iter().map(|(a, c)| (a.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim, "multiplying polynomials of different dimension");
        let mut out = Self::zero(self.dim);
        for (a, c) in &self.terms {
            for (b, d) in &other.terms {
                out.add_term(a.add(b), c * d);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.dim);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn scale(&self, c: &ComplexRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Self {
            dim: self.dim,
            terms: self.terms.iter().map(|(a, v)| (a.clone(), v * c)).collect(),
        }
    }

    pub fn scale_rational(&self, q: &Rational) -> Self {
        self.scale(&ComplexRational::real(q.clone()))
    }

    pub fn eval(&self, x: &[ComplexRational]) -> Result<ComplexRational> {
        self.check_dim(x.len())?;
        let mut acc = ComplexRational::zero();
        for (a, c) in &self.terms {
            let mut term = c.clone();
            for (xi, &e) in x.iter().zip(&a.0) {
                if e > 0 {
                    term = &term * &xi.pow(e);
                }
            }
            acc += &term;
        }
        Ok(acc)
    }

    pub fn eval_rational(&self, x: &[Rational]) -> Result<ComplexRational> {
        let xc: Vec<ComplexRational> = x.iter().cloned().map(ComplexRational::real).collect();
        self.eval(&xc)
    }

    pub fn eval_f64(&self, x: &[f64]) -> Complex64 {
        debug_assert_eq!(x.len(), self.dim);
        self.terms
            .iter()
            .map(|(a, c)| {
                let m: f64 = x.iter().zip(&a.0).map(|(xi, &e)| xi.powi(e as i32)).product();
                c.to_c64() * m
            })
            .sum()
    }

    /// Exact `∂^α P`.
    pub fn derivative(&self, alpha: &MultiIndex) -> Result<Self> {
        self.check_dim(alpha.dim())?;
        let mut out = Self::zero(self.dim);
        for (a, c) in &self.terms {
            if a.0.iter().zip(&alpha.0).any(|(e, k)| e < k) {
                continue;
            }
            let mut factor = BigInt::one();
            let mut exps = Vec::with_capacity(self.dim);
            for (&e, &k) in a.0.iter().zip(&alpha.0) {
                factor *= factorial(e) / factorial(e - k);
                exps.push(e - k);
            }
            out.add_term(MultiIndex(exps), c.scale(&Rational::from_integer(factor)));
        }
        Ok(out)
    }

    /// Partial derivative in variable `i`.
    pub fn partial(&self, i: usize) -> Self {
        self.derivative(&MultiIndex::unit(self.dim, i))
            .expect("unit multi-index has matching dimension")
    }

    /// Substitutes polynomial `subs[i]` for `x_i`; the result lives in the
    /// dimension of the substituted polynomials.
    pub fn compose(&self, subs: &[Polynomial]) -> Result<Self> {
        self.check_dim(subs.len())?;
        let target = subs.first().map(|s| s.dim).unwrap_or(0);
        if let Some(s) = subs.iter().find(|s| s.dim != target) {
            return Err(Error::DimensionMismatch {
                expected: target,
                got: s.dim,
            });
        }
        let mut cache: BTreeMap<(usize, u32), Polynomial> = BTreeMap::new();
        let mut out = Self::zero(target);
        for (a, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (i, &e) in a.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = cache
                    .entry((i, e))
                    .or_insert_with(|| subs[i].pow(e))
                    .clone();
                term = term.mul(&pw);
            }
            out = out.add(&term);
        }
        Ok(out)
    }

    /// `P_ξ(η) = P(η + ξ)`, exact.
    pub fn translate(&self, xi: &[Rational]) -> Result<Self> {
        self.check_dim(xi.len())?;
        let mut out = Self::zero(self.dim);
        for (a, c) in &self.terms {
            // Π_i (η_i + ξ_i)^{a_i} expanded binomially
            let mut partial: Vec<(Vec<u32>, ComplexRational)> = vec![(Vec::new(), c.clone())];
            for (i, &e) in a.0.iter().enumerate() {
                let mut next = Vec::with_capacity(partial.len() * (e as usize + 1));
                for (exps, coef) in &partial {
                    for k in 0..=e {
                        let factor = Rational::from_integer(binomial(e, k))
                            * num_traits::pow(xi[i].clone(), (e - k) as usize);
                        if factor.is_zero() {
                            continue;
                        }
                        let mut ex = exps.clone();
                        ex.push(k);
                        next.push((ex, coef.scale(&factor)));
                    }
                }
                partial = next;
            }
            for (exps, coef) in partial {
                out.add_term(MultiIndex(exps), coef);
            }
        }
        Ok(out)
    }

    /// Translation by a shift whose entries are polynomials in a formal
    /// parameter `r`: returns `P(η + shift(r))` as a polynomial in
    /// `(η_1, …, η_d, r)`, i.e. the coefficients of `P_{shift(r)}` as
    /// polynomials in `r`. `shift[i][k]` is the coefficient of `r^k`.
    pub fn translate_parametric(&self, shift: &[Vec<Rational>]) -> Result<Self> {
        self.check_dim(shift.len())?;
        let ext = self.dim + 1;
        let subs: Vec<Polynomial> = shift
            .iter()
            .enumerate()
            .map(|(i, coeffs)| {
                let mut s = Self::variable(ext, i);
                for (k, q) in coeffs.iter().enumerate() {
                    let mut e = vec![0; ext];
                    e[self.dim] = k as u32;
                    s.add_term(MultiIndex(e), ComplexRational::real(q.clone()));
                }
                s
            })
            .collect();
        self.compose(&subs)
    }

    /// `P̌(ξ) = P(−ξ)`.
    pub fn reflect(&self) -> Self {
        Self {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (a.clone(), if a.order() % 2 == 1 { -c } else { c.clone() }))
                .collect(),
        }
    }

    pub fn hom_decompose(&self) -> Result<HomogeneousDecomposition> {
        self.ensure_nonzero()?;
        let m = self.degree();
        let mut components = vec![Self::zero(self.dim); m as usize + 1];
        for (a, c) in &self.terms {
            components[a.order() as usize].add_term(a.clone(), c.clone());
        }
        let principal = components[m as usize].clone();
        Ok(HomogeneousDecomposition {
            degree: m,
            components,
            principal,
        })
    }

    /// Principal part `P_m`.
    pub fn principal_part(&self) -> Result<Self> {
        Ok(self.hom_decompose()?.principal)
    }

    /// Coefficients `c_k` of the univariate polynomial `s ↦ P(ξ + s·y)`.
    pub fn restrict_to_line(&self, xi: &[Rational], y: &[Rational]) -> Result<Vec<ComplexRational>> {
        self.check_dim(xi.len())?;
        self.check_dim(y.len())?;
        let subs: Vec<Polynomial> = xi
            .iter()
            .zip(y)
            .map(|(a, b)| {
                Self::from_terms(
                    1,
                    [
                        (MultiIndex(vec![0]), ComplexRational::real(a.clone())),
                        (MultiIndex(vec![1]), ComplexRational::real(b.clone())),
                    ],
                )
                .expect("univariate")
            })
            .collect();
        let q = self.compose(&subs)?;
        let deg = q.degree() as usize;
        let mut coeffs = vec![ComplexRational::zero(); deg + 1];
        for (a, c) in &q.terms {
            coeffs[a.0[0] as usize] = c.clone();
        }
        Ok(coeffs)
    }

    /// `[d^k/ds^k P(ξ + s·y)]_{s=0}` for `k = 0..=m`.
    pub fn directional_jet(
        &self,
        y: &[Rational],
        xi: &[Rational],
        m: u32,
    ) -> Result<Vec<ComplexRational>> {
        let coeffs = self.restrict_to_line(xi, y)?;
        Ok((0..=m)
            .map(|k| {
                coeffs
                    .get(k as usize)
                    .map(|c| c.scale(&Rational::from_integer(factorial(k))))
                    .unwrap_or_default()
            })
            .collect())
    }

    /// `Σ_α |P^{(α)}(ξ)|²` exactly, with its binary64 square root.
    pub fn coeff_norm(&self, xi: &[Rational]) -> Result<(Rational, f64)> {
        let shifted = self.translate(xi)?;
        let square = shifted.coeff_norm_at_origin();
        let root = crate::number::to_f64(&square).sqrt();
        Ok((square, root))
    }

    pub(crate) fn coeff_norm_at_origin(&self) -> Rational {
        self.terms
            .iter()
            .map(|(a, c)| {
                let f = Rational::from_integer(a.factorial());
                c.norm_sqr() * &f * &f
            })
            .fold(Rational::zero(), |acc, x| acc + x)
    }

    /// Parses the term-list form `[[[e1,e2,...],[re_num,re_den,im_num,im_den]], ...]`.
    pub fn from_json(v: &Value) -> Result<Self> {
        let list = v
            .as_array()
            .ok_or_else(|| Error::Parse("polynomial must be a list of terms".into()))?;
        if list.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        let mut dim = None;
        let mut terms = BTreeMap::new();
        for t in list {
            let pair = t
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::Parse(format!("term must be [exponents, coefficient], got {t}")))?;
            let exps = pair[0]
                .as_array()
                .ok_or_else(|| Error::Parse(format!("exponents must be a list, got {}", pair[0])))?
                .iter()
                .map(|e| {
                    e.as_u64()
                        .and_then(|x| x.to_u32())
                        .ok_or_else(|| Error::Parse(format!("bad exponent {e}")))
                })
                .collect::<Result<Vec<u32>>>()?;
            match dim {
                None => dim = Some(exps.len()),
                Some(d) if d != exps.len() => {
                    return Err(Error::DimensionMismatch {
                        expected: d,
                        got: exps.len(),
                    })
                }
                _ => {}
            }
            let c = ComplexRational::from_json_quad(&pair[1])?;
            let key = MultiIndex(exps);
            if terms.insert(key.clone(), c).is_some() {
                return Err(Error::Parse(format!("duplicate exponent {:?}", key.0)));
            }
        }
        let dim = dim.unwrap_or(0);
        if dim == 0 {
            return Err(Error::Parse("polynomial dimension must be positive".into()));
        }
        let p = Self::from_terms(dim, terms)?;
        p.ensure_nonzero()?;
        Ok(p)
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.terms
                .iter()
                .map(|(a, c)| {
                    Value::Array(vec![
                        Value::Array(a.0.iter().map(|&e| Value::from(e)).collect()),
                        c.to_json_quad(),
                    ])
                })
                .collect(),
        )
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (a, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = a
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        format!("x{}", i + 1)
                    } else {
                        format!("x{}^{}", i + 1, e)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if *c == ComplexRational::one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "{}*{}", c, mono.join("*"))?;
            }
        }
        Ok(())
    }
}
