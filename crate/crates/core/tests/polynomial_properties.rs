use std::collections::BTreeMap;

use pconvex::number::{rat, ComplexRational};
use pconvex::{MultiIndex, Polynomial, Rational};
use proptest::prelude::*;

fn coeff() -> impl Strategy<Value = ComplexRational> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4).prop_map(|(a, b, c, d)| ComplexRational::new(rat(a, b), rat(c, d)))
}

fn rational() -> impl Strategy<Value = Rational> {
    (-20i64..=20, 1i64..=7).prop_map(|(n, d)| rat(n, d))
}

/// Up to six terms of total degree at most 4 in `d` variables.
fn poly(d: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((prop::collection::vec(0u32..=2, d), coeff()), 1..6).prop_filter_map("zero polynomial", move |terms| {
        let mut map = BTreeMap::new();
        for (e, c) in terms {
            if e.iter().sum::<u32>() <= 4 && !c.is_zero() {
                map.insert(MultiIndex(e), c);
            }
        }
        let p = Polynomial::from_terms(d, map).ok()?;
        (!p.is_zero()).then_some(p)
    })
}

fn point(d: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec(rational(), d)
}

fn eval(p: &Polynomial, x: &[Rational]) -> ComplexRational {
    p.eval_rational(x).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn ring_laws(p in poly(2), q in poly(2), x in point(2)) {
        prop_assert_eq!(eval(&p.add(&q), &x), &eval(&p, &x) + &eval(&q, &x));
        prop_assert_eq!(eval(&p.mul(&q), &x), &eval(&p, &x) * &eval(&q, &x));
        prop_assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn ring_laws_in_three_variables(p in poly(3), q in poly(3), x in point(3)) {
        prop_assert_eq!(eval(&p.add(&q), &x), &eval(&p, &x) + &eval(&q, &x));
        prop_assert_eq!(eval(&p.mul(&q), &x), &eval(&p, &x) * &eval(&q, &x));
    }

    #[test]
    fn derivative_commutes_with_translation(p in poly(2), xi in point(2), a in 0u32..=2, b in 0u32..=2) {
        let alpha = MultiIndex(vec![a, b]);
        let lhs = p.translate(&xi).unwrap().derivative(&alpha).unwrap();
        let rhs = p.derivative(&alpha).unwrap().translate(&xi).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn homogeneous_components(p in poly(2), x in point(2), lambda in rational()) {
        let dec = p.hom_decompose().unwrap();
        let sum = dec.components.iter().fold(Polynomial::zero(2), |acc, c| acc.add(c));
        prop_assert_eq!(&sum, &p);
        let scaled: Vec<Rational> = x.iter().map(|v| v * &lambda).collect();
        for (j, c) in dec.components.iter().enumerate() {
            let factor = ComplexRational::real(num_traits::pow(lambda.clone(), j));
            prop_assert_eq!(eval(c, &scaled), &factor * &eval(c, &x));
        }
        prop_assert_eq!(&dec.principal, &dec.components[dec.degree as usize]);
    }

    #[test]
    fn reflection(p in poly(2)) {
        let r = p.reflect();
        prop_assert_eq!(&r.reflect(), &p);
        let (dp, dr) = (p.hom_decompose().unwrap(), r.hom_decompose().unwrap());
        for (j, (a, b)) in dp.components.iter().zip(&dr.components).enumerate() {
            let expected = if j % 2 == 1 { a.neg() } else { a.clone() };
            prop_assert_eq!(b, &expected);
        }
    }

    #[test]
    fn json_round_trip(p in poly(3)) {
        prop_assert_eq!(Polynomial::from_json(&p.to_json()).unwrap(), p);
    }
}
