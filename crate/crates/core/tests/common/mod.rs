#![allow(dead_code)]

use std::collections::BTreeMap;

use num_traits::Zero;
use pconvex::domain::{PlanarDomain, Point};
use pconvex::number::{int, rat, ComplexRational};
use pconvex::{MultiIndex, Polynomial, Rational};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn pt(x: Rational, y: Rational) -> Point {
    [x, y]
}

/// Histogram polygon over unit columns.
pub fn rectilinear(rng: &mut ChaCha8Rng) -> PlanarDomain {
    let w = rng.gen_range(2..=6);
    let hs: Vec<i64> = (0..w).map(|_| rng.gen_range(1..=6)).collect();
    let mut v = vec![pt(int(0), int(0)), pt(int(w), int(0))];
    for i in (0..w).rev() {
        v.push(pt(int(i + 1), int(hs[i as usize])));
        v.push(pt(int(i), int(hs[i as usize])));
    }
    v.dedup();
    // drop collinear repeats from equal neighbouring heights
    let mut clean: Vec<Point> = Vec::new();
    for p in v {
        clean.push(p);
        while clean.len() >= 3 {
            let n = clean.len();
            let (a, b, c) = (&clean[n - 3], &clean[n - 2], &clean[n - 1]);
            let cr = (&b[0] - &a[0]) * (&c[1] - &a[1]) - (&b[1] - &a[1]) * (&c[0] - &a[0]);
            if cr.is_zero() {
                clean.remove(n - 2);
            } else {
                break;
            }
        }
    }
    PlanarDomain::polygon(clean).unwrap()
}

/// A rectangle with triangular notches cut into its top and bottom edges.
pub fn notched(rng: &mut ChaCha8Rng) -> PlanarDomain {
    let w = 2 * rng.gen_range(3..=6);
    let h = rng.gen_range(4..=8);
    let mut bottom = vec![pt(int(0), int(0))];
    let mut top = vec![pt(int(w), int(h))];
    let mut x = 0;
    while x + 2 <= w {
        if rng.gen_bool(0.4) {
            let apex_x = rat(2 * x + rng.gen_range(1..=3), 2);
            bottom.push(pt(int(x), int(0)));
            bottom.push(pt(apex_x, rat(rng.gen_range(1..h), 2)));
            bottom.push(pt(int(x + 2), int(0)));
        }
        x += 2;
    }
    let mut x = w;
    while x >= 2 {
        if rng.gen_bool(0.4) {
            let apex_x = rat(2 * x - rng.gen_range(1..=3), 2);
            top.push(pt(int(x), int(h)));
            top.push(pt(apex_x, int(h) - rat(rng.gen_range(1..h), 2)));
            top.push(pt(int(x - 2), int(h)));
        }
        x -= 2;
    }
    let mut v = bottom;
    v.push(pt(int(w), int(0)));
    v.extend(top);
    v.push(pt(int(0), int(h)));
    v.dedup();
    PlanarDomain::polygon(v).unwrap()
}

pub fn random_domain(rng: &mut ChaCha8Rng, i: usize) -> PlanarDomain {
    if i % 2 == 0 {
        rectilinear(rng)
    } else {
        notched(rng)
    }
}

pub fn random_direction(rng: &mut ChaCha8Rng) -> [i64; 2] {
    loop {
        let v = [rng.gen_range(-3..=3), rng.gen_range(-3..=3)];
        if v != [0, 0] {
            return v;
        }
    }
}

pub fn proj(p: &Point, n: [i64; 2]) -> Rational {
    &p[0] * int(n[0]) + &p[1] * int(n[1])
}

/// Maximum number of chords over 1000 evenly spaced lines `⟨x, n⟩ = α`.
pub fn oracle_max_chords(d: &PlanarDomain, n: [i64; 2]) -> usize {
    let ps: Vec<Rational> = d.vertices().map(|p| proj(p, n)).collect();
    let edges: Vec<(Rational, Rational)> = d.edges().map(|(_, a, b)| (proj(a, n), proj(b, n))).collect();
    let lo = ps.iter().min().unwrap().clone();
    let hi = ps.iter().max().unwrap().clone();
    let lines = 1000;
    let mut best = 0;
    for k in 0..lines {
        let alpha = &lo + (&hi - &lo) * rat(2 * k + 1, 2 * lines);
        if ps.contains(&alpha) {
            continue;
        }
        let crossings = edges.iter().filter(|(pa, pb)| (*pa > alpha) != (*pb > alpha)).count();
        best = best.max(crossings / 2);
    }
    best
}

pub fn random_complex(rng: &mut ChaCha8Rng, bound: i64) -> ComplexRational {
    ComplexRational::new(
        rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=3)),
        rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=3)),
    )
}

/// Dense random polynomial of degree at most `m` in `d` variables.
pub fn random_poly(rng: &mut ChaCha8Rng, d: usize, m: u32, density: f64) -> Polynomial {
    loop {
        let mut terms = BTreeMap::new();
        let mut stack = vec![Vec::new()];
        while let Some(a) = stack.pop() {
            if a.len() == d {
                if rng.gen_bool(density) {
                    let c = random_complex(rng, 5);
                    if !c.is_zero() {
                        terms.insert(MultiIndex(a), c);
                    }
                }
                continue;
            }
            let used: u32 = a.iter().sum();
            for e in 0..=(m - used) {
                let mut b = a.clone();
                b.push(e);
                stack.push(b);
            }
        }
        let p = Polynomial::from_terms(d, terms).unwrap();
        if !p.is_zero() {
            return p;
        }
    }
}

fn linear(rng: &mut ChaCha8Rng) -> Polynomial {
    let n = random_direction(rng);
    Polynomial::from_int_terms(2, &[(&[1, 0], n[0], 0), (&[0, 1], n[1], 0)])
}

/// Planar symbol of degree at most 4 whose principal part is a complex
/// multiple of real linear factors, possibly times `x1² + x2²`, or an
/// elliptic or hypoelliptic model; lower-order terms are random.
pub fn random_symbol(rng: &mut ChaCha8Rng) -> Polynomial {
    let circle = Polynomial::from_int_terms(2, &[(&[2, 0], 1, 0), (&[0, 2], 1, 0)]);
    let principal = match rng.gen_range(0..10) {
        0 => circle.clone(),
        1 => Polynomial::from_int_terms(2, &[(&[1, 0], 0, 1), (&[0, 2], 1, 0)]),
        2 | 3 => linear(rng).mul(&circle),
        _ => {
            let mut p = linear(rng);
            for _ in 0..rng.gen_range(0..=3) {
                p = p.mul(&linear(rng));
            }
            p
        }
    };
    let m = principal.degree();
    let principal = principal.scale(&loop {
        let c = random_complex(rng, 3);
        if !c.is_zero() {
            break c;
        }
    });
    if m == 0 || rng.gen_bool(0.3) {
        return principal;
    }
    principal.add(&random_poly(rng, 2, m - 1, 0.4))
}
