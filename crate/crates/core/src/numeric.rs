//! Binary64 helpers: float polynomials, real roots, 1-D maximization.

use num_complex::Complex64;

use crate::polynomial::Polynomial;

/// Float image of a [`Polynomial`], used only for estimates.
#[derive(Clone, Debug, PartialEq)]
pub struct FPoly {
    pub dim: usize,
    pub terms: Vec<(Vec<u32>, Complex64)>,
}

impl FPoly {
    pub fn from_poly(p: &Polynomial) -> Self {
        Self {
            dim: p.dimension(),
            terms: p.terms().map(|(a, c)| (a.0.clone(), c.to_c64())).collect(),
        }
    }

    pub fn scaled(&self, s: f64) -> Self {
        Self { dim: self.dim, terms: self.terms.iter().map(|(a, c)| (a.clone(), c * s)).collect() }
    }

    pub fn eval(&self, x: &[f64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(a, c)| a.iter().zip(x).fold(*c, |acc, (&e, &xi)| acc * xi.powi(e as i32)))
            .sum()
    }

    pub fn degree(&self) -> u32 {
        self.terms.iter().map(|(a, _)| a.iter().sum()).max().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(a, _)| a.iter().all(|&e| e == 0))
    }

    /// Coefficients of `λ ↦ Q(ξ + λ·y)`, lowest degree first.
    pub fn restrict_to_line(&self, xi: &[f64], y: &[f64]) -> Vec<Complex64> {
        let mut out = vec![Complex64::new(0.0, 0.0); self.degree() as usize + 1];
        for (a, c) in &self.terms {
            let mut acc = vec![*c];
            for (i, &e) in a.iter().enumerate() {
                for _ in 0..e {
                    // multiply by (ξ_i + λ y_i)
                    let mut next = vec![Complex64::new(0.0, 0.0); acc.len() + 1];
                    for (k, v) in acc.iter().enumerate() {
                        next[k] += v * xi[i];
                        next[k + 1] += v * y[i];
                    }
                    acc = next;
                }
            }
            for (k, v) in acc.into_iter().enumerate() {
                out[k] += v;
            }
        }
        out
    }

    /// `Q(ξ + ·)` as a float polynomial.
    pub fn translate(&self, xi: &[f64]) -> Self {
        let mut acc: std::collections::BTreeMap<Vec<u32>, Complex64> = Default::default();
        for (a, c) in &self.terms {
            let mut partial: Vec<(Vec<u32>, Complex64)> = vec![(Vec::new(), *c)];
            for (i, &e) in a.iter().enumerate() {
                let mut next = Vec::new();
                for (ex, coef) in &partial {
                    for k in 0..=e {
                        let f = binom(e, k) * xi[i].powi((e - k) as i32);
                        if f == 0.0 {
                            continue;
                        }
                        let mut ex2 = ex.clone();
                        ex2.push(k);
                        next.push((ex2, coef * f));
                    }
                }
                partial = next;
            }
            for (ex, coef) in partial {
                *acc.entry(ex).or_default() += coef;
            }
        }
        Self { dim: self.dim, terms: acc.into_iter().collect() }
    }
}

pub(crate) fn binom(n: u32, k: u32) -> f64 {
    (0..k).fold(1.0, |acc, j| acc * (n - j) as f64 / (j + 1) as f64)
}

pub fn horner(c: &[f64], x: f64) -> f64 {
    c.iter().rev().fold(0.0, |acc, v| acc * x + v)
}

pub fn horner_c(c: &[Complex64], x: f64) -> Complex64 {
    c.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, v| acc * x + v)
}

fn trim(c: &[f64]) -> &[f64] {
    let mut n = c.len();
    while n > 0 && c[n - 1] == 0.0 {
        n -= 1;
    }
    &c[..n]
}

fn deriv(c: &[f64]) -> Vec<f64> {
    c.iter().enumerate().skip(1).map(|(k, v)| v * k as f64).collect()
}

/// Real roots of a real polynomial in `[a, b]`, located by splitting at the
/// roots of the derivative and bisecting every monotone piece.
pub fn real_roots_in(c: &[f64], a: f64, b: f64) -> Vec<f64> {
    let c = trim(c);
    match c.len() {
        0 | 1 => return Vec::new(),
        2 => {
            let r = -c[0] / c[1];
            return if (a..=b).contains(&r) { vec![r] } else { Vec::new() };
        }
        _ => {}
    }
    let crit = real_roots_in(&deriv(c), a, b);
    let mut pts = Vec::with_capacity(crit.len() + 2);
    pts.push(a);
    pts.extend(crit.into_iter().filter(|&x| x > a && x < b));
    pts.push(b);
    let mut out: Vec<f64> = Vec::new();
    for w in pts.windows(2) {
        let (x0, x1) = (w[0], w[1]);
        let (f0, f1) = (horner(c, x0), horner(c, x1));
        if f0 == 0.0 {
            if out.last() != Some(&x0) {
                out.push(x0);
            }
            continue;
        }
        if f0.signum() != f1.signum() && f1 != 0.0 {
            out.push(bisect(c, x0, x1, f0));
        }
    }
    if horner(c, b) == 0.0 && out.last() != Some(&b) {
        out.push(b);
    }
    out
}

fn bisect(c: &[f64], mut lo: f64, mut hi: f64, f_lo: f64) -> f64 {
    let s_lo = f_lo.signum();
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let fm = horner(c, mid);
        if fm == 0.0 {
            return mid;
        }
        if fm.signum() == s_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// `|q|²` for complex coefficients `q`, as a real polynomial.
pub fn abs_sq_poly(q: &[Complex64]) -> Vec<f64> {
    if q.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0.0; 2 * q.len() - 1];
    for (k, a) in q.iter().enumerate() {
        for (l, b) in q.iter().enumerate() {
            out[k + l] += (a * b.conj()).re;
        }
    }
    out
}

/// Critical points of `|q|²` inside `[-t, t]`.
pub fn abs_sq_critical_points(q: &[Complex64], t: f64) -> Vec<f64> {
    let f = abs_sq_poly(q);
    real_roots_in(&deriv(&f), -t, t)
}

/// `sup_{|λ| ≤ t} |q(λ)|` via critical points of `|q|²` and the endpoints.
pub fn sup_abs_on_interval(q: &[Complex64], t: f64) -> f64 {
    sup_abs_with_critical(q, &abs_sq_critical_points(q, t), t)
}

/// Same, reusing critical points computed on a larger interval.
pub fn sup_abs_with_critical(q: &[Complex64], crit: &[f64], t: f64) -> f64 {
    let mut best = horner_c(q, t).norm().max(horner_c(q, -t).norm());
    for &c in crit {
        if c.abs() <= t {
            best = best.max(horner_c(q, c).norm());
        }
    }
    best
}

/// Golden-section maximization of a unimodal function on `[a, b]`.
pub fn golden_max<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - g * (b - a);
    let mut x2 = a + g * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while (b - a).abs() > tol {
        if f1 < f2 {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + g * (b - a);
            f2 = f(x2);
        } else {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - g * (b - a);
            f1 = f(x1);
        }
    }
    if f1 > f2 {
        (x1, f1)
    } else {
        (x2, f2)
    }
}

/// Golden-section minimization.
pub fn golden_min<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let (x, v) = golden_max(|x| -f(x), a, b, tol);
    (x, -v)
}
