mod common;

use pconvex::analysis::{analyze, AnalysisConfig, CaveatPolicy, Conclusion, SingularBasis, VerdictStatus};
use pconvex::characteristic::characteristic_set;
use pconvex::domain::PlanarDomain;
use pconvex::Polynomial;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::{oracle_max_chords, random_domain, random_symbol};

/// Supports verdict from the line-sampling oracle, or `None` when some
/// characteristic direction is irrational.
fn oracle_supports(p: &Polynomial, d: &PlanarDomain) -> Option<bool> {
    let cs = characteristic_set(p).unwrap();
    let mut ok = true;
    for n in cs.representatives() {
        let w = n.primitive_integer()?;
        let w = [i64::try_from(&w[0]).unwrap(), i64::try_from(&w[1]).unwrap()];
        ok &= oracle_max_chords(d, w) <= 1;
    }
    Some(ok)
}

fn config() -> AnalysisConfig {
    let mut c = AnalysisConfig::default();
    c.sigma.drifts = 4;
    c.sigma.sublinear_vectors = 2;
    c
}

#[test]
fn conclusions_are_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let cfg = config();
    let mut seen = [0usize; 3];
    for i in 0..60 {
        let d = random_domain(&mut rng, i);
        let p = random_symbol(&mut rng);
        if p.degree() == 0 {
            continue;
        }
        let r = analyze(&p, &d, &cfg).unwrap();
        if let Some(expected) = oracle_supports(&p, &d) {
            assert_eq!(r.supports.passed, expected, "{p} on domain {i}");
        }
        assert!(!(r.supports.passed && r.singular.status == VerdictStatus::Fail));
        assert_eq!(r.smooth == Conclusion::Surjective, r.supports.passed);
        assert_eq!(r.smooth == Conclusion::NotSurjective, !r.supports.passed);
        if r.elliptic {
            assert_eq!(r.singular.basis, SingularBasis::Elliptic);
            assert_eq!((r.smooth, r.distributions), (Conclusion::Surjective, Conclusion::Surjective));
        }
        if r.singular.status == VerdictStatus::Fail {
            assert_eq!(r.distributions, Conclusion::NotSurjective);
            for w in &r.singular.sweep.witnesses {
                assert!(r.characteristic.iter().any(|n| n.same_as(&w.direction)));
                let rec = r.sigma.iter().find(|s| s.direction.same_as(&w.direction) || s.direction.same_as(&w.direction.neg()));
                assert!(rec.is_some_and(|s| s.estimate.is_exact_zero()));
            }
        }
        assert!(r.exterior_consistent(), "{p} on domain {i}");
        seen[r.exit_code() as usize] += 1;
    }
    assert!(seen[0] > 5 && seen[1] > 5, "{seen:?}");
}

#[test]
fn caveat_policy_only_affects_caveated_distributions() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let keep = AnalysisConfig { caveat_policy: CaveatPolicy::Keep, ..config() };
    let down = config();
    for i in 0..25 {
        let d = random_domain(&mut rng, i);
        let p = random_symbol(&mut rng);
        if p.degree() == 0 {
            continue;
        }
        let (a, b) = (analyze(&p, &d, &keep).unwrap(), analyze(&p, &d, &down).unwrap());
        assert_eq!(a.smooth, b.smooth);
        assert_eq!(a.singular.status, b.singular.status);
        if a.singular.status != VerdictStatus::PassWithCaveat || !a.supports.passed {
            assert_eq!(a.distributions, b.distributions);
        }
    }
}

#[test]
fn reports_are_deterministic() {
    let mut rng = ChaCha8Rng::seed_from_u64(33);
    let cfg = config();
    for i in 0..10 {
        let d = random_domain(&mut rng, i);
        let p = random_symbol(&mut rng);
        if p.degree() == 0 {
            continue;
        }
        let a = analyze(&p, &d, &cfg).unwrap().to_json();
        let b = analyze(&p, &d, &cfg).unwrap().to_json();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
    }
}

#[test]
fn scaling_the_symbol_changes_nothing() {
    let mut rng = ChaCha8Rng::seed_from_u64(34);
    let cfg = config();
    for i in 0..15 {
        let d = random_domain(&mut rng, i);
        let p = random_symbol(&mut rng);
        if p.degree() == 0 {
            continue;
        }
        let c = pconvex::number::ComplexRational::from_ints(rng.gen_range(1..=5), rng.gen_range(-5..=5));
        let (a, b) = (analyze(&p, &d, &cfg).unwrap(), analyze(&p.scale(&c), &d, &cfg).unwrap());
        assert_eq!((a.smooth, a.distributions), (b.smooth, b.distributions), "{p}");
        assert_eq!(a.supports.passed, b.supports.passed);
    }
}
