mod common;

use num_bigint::BigInt;
use num_traits::Zero;
use pconvex::characteristic::{characteristic_set, AlgebraicDirection};
use pconvex::localization::{lineality_space, ray_localization, PathSpec};
use pconvex::norms::{norm_equivalence_constant, tilde_norm_ball, tilde_norm_line, NormMode};
use pconvex::number::{int, rat, to_f64};
use pconvex::sigma::{ProfileKind, SigmaCertificate, SigmaConfig, SigmaDirection, SigmaEngine};
use pconvex::{Polynomial, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{random_poly, random_symbol};

fn small_config() -> SigmaConfig {
    SigmaConfig { drifts: 3, sublinear_vectors: 2, t_points: 21, ..SigmaConfig::default() }
}

fn rational_direction(rng: &mut ChaCha8Rng) -> [Rational; 2] {
    loop {
        let v = [rat(rng.gen_range(-9..=9), rng.gen_range(1..=4)), rat(rng.gen_range(-9..=9), rng.gen_range(1..=4))];
        if !(v[0].is_zero() && v[1].is_zero()) {
            return v;
        }
    }
}

fn non_characteristic(rng: &mut ChaCha8Rng, p: &Polynomial) -> [Rational; 2] {
    let cs = characteristic_set(p).unwrap();
    loop {
        let v = rational_direction(rng);
        if !cs.contains(&AlgebraicDirection::from_rational(&v).unwrap()) {
            return v;
        }
    }
}

#[test]
fn non_characteristic_rays_give_constant_profiles() {
    let mut rng = ChaCha8Rng::seed_from_u64(21);
    for _ in 0..100 {
        let p = random_symbol(&mut rng);
        if p.degree() == 0 {
            continue;
        }
        let pm = p.principal_part().unwrap();
        let v = non_characteristic(&mut rng, &p);
        let n = AlgebraicDirection::from_rational(&v).unwrap();
        let w: Vec<BigInt> = n.primitive_integer().unwrap().to_vec();
        let prof = ray_localization(&p, &PathSpec::ray(w.clone()).unwrap()).unwrap();
        assert!(prof.is_constant(), "{p} along {w:?}");
        let wf: Vec<f64> = w.iter().map(|x| to_f64(&Rational::from_integer(x.clone()))).collect();
        let z = pm.eval_f64(&wf);
        let expected = z / z.norm();
        assert!((prof.constant_value().unwrap() - expected).norm() < 1e-9, "{p}: {:?} vs {expected}", prof.constant_value());
    }
}

#[test]
fn sigma_zeros_are_characteristic() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let cfg = small_config();
    let mut zeros = 0;
    for _ in 0..50 {
        let p = random_symbol(&mut rng);
        if p.degree() == 0 {
            continue;
        }
        let cs = characteristic_set(&p).unwrap();
        let engine = SigmaEngine::new(&p, &cfg).unwrap();
        for n in &cs.directions {
            let e = engine.estimate(&SigmaDirection::Planar(n.clone())).unwrap();
            if e.is_exact_zero() {
                zeros += 1;
                assert!(cs.contains(n));
            }
        }
        for _ in 0..64 {
            let v = non_characteristic(&mut rng, &p);
            let e = engine.estimate(&SigmaDirection::Vector(v.to_vec())).unwrap();
            assert!(matches!(e.certificate, SigmaCertificate::NumericPositive { .. } | SigmaCertificate::EllipticOne), "{p}: {v:?}");
            assert!(e.value > 0.0 && e.value <= 1.0);
        }
    }
    assert!(zeros > 0);
}

#[test]
fn reflection_symmetry() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    let cfg = small_config();
    for _ in 0..25 {
        let p = random_symbol(&mut rng);
        if p.degree() == 0 {
            continue;
        }
        let a = SigmaEngine::new(&p, &cfg).unwrap();
        let b = SigmaEngine::new(&p.reflect(), &cfg.mirrored()).unwrap();
        let mut ys: Vec<SigmaDirection> = characteristic_set(&p).unwrap().directions.into_iter().map(SigmaDirection::Planar).collect();
        ys.extend((0..6).map(|_| SigmaDirection::Vector(rational_direction(&mut rng).to_vec())));
        for y in &ys {
            let (ea, eb) = (a.estimate(y).unwrap(), b.estimate(y).unwrap());
            assert!((ea.value - eb.value).abs() < 1e-9, "{p}: {y:?} {} vs {}", ea.value, eb.value);
            assert_eq!(ea.is_exact_zero(), eb.is_exact_zero());
        }
    }
}

#[test]
fn range_and_grid_monotonicity() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    // nested grids: every point of a coarser grid is on the finer one
    let grids = [(1024.0, 11), (1_048_576.0, 21), (1_073_741_824.0, 31)];
    for _ in 0..25 {
        let p = random_symbol(&mut rng);
        if p.degree() == 0 {
            continue;
        }
        let engines: Vec<SigmaEngine> = grids
            .iter()
            .map(|&(t_max, t_points)| SigmaEngine::new(&p, &SigmaConfig { t_max, t_points, ..small_config() }).unwrap())
            .collect();
        for _ in 0..8 {
            let y = SigmaDirection::Vector(rational_direction(&mut rng).to_vec());
            let vals: Vec<f64> = engines.iter().map(|e| e.estimate(&y).unwrap().value).collect();
            for v in &vals {
                assert!((0.0..=1.0).contains(v));
            }
            assert!(vals.windows(2).all(|w| w[1] <= w[0]), "{p}: {vals:?}");
        }
    }
}

#[test]
fn lineality_space_is_translation_invariance() {
    let mut rng = ChaCha8Rng::seed_from_u64(25);
    let mut nontrivial = 0;
    for _ in 0..40 {
        let p = random_symbol(&mut rng);
        if p.degree() == 0 {
            continue;
        }
        let engine = SigmaEngine::new(&p, &small_config()).unwrap();
        for e in engine.profiles() {
            let ProfileKind::Localization { profile, lineality } = &e.kind else { continue };
            let q = &profile.profile;
            assert_eq!(lineality.lambda.len() + lineality.lambda_perp.len(), 2);
            let still = q.translate_parametric(&[vec![], vec![]]).unwrap();
            for eta in &lineality.lambda {
                nontrivial += 1;
                let moved = q.translate_parametric(&[vec![int(0), eta[0].clone()], vec![int(0), eta[1].clone()]]).unwrap();
                assert!(moved.sub(&still).is_zero(), "{q}: {eta:?}");
                for v in &lineality.lambda_perp {
                    assert!((&eta[0] * &v[0] + &eta[1] * &v[1]).is_zero());
                }
            }
            let recomputed = lineality_space(q);
            assert_eq!(recomputed.lambda.len(), lineality.lambda.len());
        }
    }
    assert!(nontrivial > 0);
}

#[test]
fn line_norm_is_dominated_by_ball_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(26);
    for _ in 0..30 {
        let p = random_symbol(&mut rng);
        if p.degree() == 0 {
            continue;
        }
        let engine = SigmaEngine::new(&p, &small_config()).unwrap();
        for e in engine.profiles() {
            let ProfileKind::Localization { profile, .. } = &e.kind else { continue };
            let q = &profile.profile;
            for _ in 0..4 {
                let y: Vec<f64> = rational_direction(&mut rng).iter().map(to_f64).collect();
                for t in [1.0, 3.0, 100.0, 1e5] {
                    for mode in [NormMode::Sup, NormMode::Deriv] {
                        let line = tilde_norm_line(q, &[0.0, 0.0], &y, t, mode).unwrap();
                        let ball = tilde_norm_ball(q, &[0.0, 0.0], t, mode).unwrap();
                        assert!(line <= ball * (1.0 + 1e-9), "{q}: {line} > {ball} at t={t}");
                    }
                }
            }
        }
    }
}

#[test]
fn norm_modes_are_equivalent() {
    let mut rng = ChaCha8Rng::seed_from_u64(27);
    for i in 0..500 {
        let m = (i % 5) as u32;
        let q = random_poly(&mut rng, 2, m, 0.6);
        let c = norm_equivalence_constant(q.degree()).unwrap();
        let xi = [rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0)];
        let y = [rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)];
        for t in [1.0, 2.0, 10.0] {
            let pairs = [
                (tilde_norm_line(&q, &xi, &y, t, NormMode::Deriv).unwrap(), tilde_norm_line(&q, &xi, &y, t, NormMode::Sup).unwrap()),
                (tilde_norm_ball(&q, &xi, t, NormMode::Deriv).unwrap(), tilde_norm_ball(&q, &xi, t, NormMode::Sup).unwrap()),
            ];
            for (deriv, sup) in pairs {
                if sup == 0.0 {
                    assert_eq!(deriv, 0.0);
                    continue;
                }
                let r = deriv / sup;
                assert!(r >= 1.0 - 1e-9 && r <= c, "{q}: ratio {r} at t={t}");
            }
        }
    }
}

#[test]
fn product_symbol_off_axis_is_stable_across_seeds() {
    let p = Polynomial::from_int_terms(2, &[(&[1, 1], 1, 0)]);
    let y = SigmaDirection::Vector(vec![int(1), int(1)]);
    let vals: Vec<f64> = [1u64, 2, 3, 4, 5]
        .iter()
        .map(|&seed| SigmaEngine::new(&p, &SigmaConfig { seed, ..SigmaConfig::default() }).unwrap().estimate(&y).unwrap().value)
        .collect();
    let c = norm_equivalence_constant(2).unwrap();
    // |<y, x_j>|^m / C^2 with x_j = e1 or e2
    let lower = 0.5 / (c * c);
    for v in &vals {
        assert!(*v >= lower && *v <= 1.0, "{vals:?}");
        assert!((v - vals[0]).abs() <= 0.1 * vals[0], "{vals:?}");
    }
}
