use pconvex::analysis::{analyze, AnalysisConfig, CaveatPolicy};
use pconvex::domain::PlanarDomain;
use pconvex::number::{int, ComplexRational};
use pconvex::Polynomial;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

fn validator() -> jsonschema::Validator {
    let path = concat!(env!("CARGO_MANIFEST_DIR"), "/../../schema/report.schema.json");
    let text = std::fs::read_to_string(path).unwrap();
    jsonschema::validator_for(&serde_json::from_str::<Value>(&text).unwrap()).unwrap()
}

fn histogram(rng: &mut ChaCha8Rng) -> PlanarDomain {
    let w = rng.gen_range(2..=5);
    let hs: Vec<i64> = (0..w).map(|_| rng.gen_range(1..=4)).collect();
    let mut v = vec![[int(0), int(0)], [int(w), int(0)]];
    for i in (0..w as usize).rev() {
        if i + 1 == w as usize || hs[i] != hs[i + 1] {
            v.push([int(i as i64 + 1), int(hs[i])]);
        }
        if i == 0 || hs[i] != hs[i - 1] {
            v.push([int(i as i64), int(hs[i])]);
        }
    }
    PlanarDomain::polygon(v).unwrap()
}

fn symbol(rng: &mut ChaCha8Rng) -> Polynomial {
    let mut p = Polynomial::one(2);
    for _ in 0..rng.gen_range(1..=3) {
        let (a, b) = loop {
            let ab = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
            if ab != (0, 0) {
                break ab;
            }
        };
        p = p.mul(&Polynomial::from_int_terms(2, &[(&[1, 0], a, 0), (&[0, 1], b, 0)]));
    }
    if rng.gen_bool(0.3) {
        p = p.mul(&Polynomial::from_int_terms(2, &[(&[2, 0], 1, 0), (&[0, 2], 1, 0)]));
    }
    if rng.gen_bool(0.5) {
        p = p.add(&Polynomial::from_int_terms(2, &[(&[1, 0], rng.gen_range(-3..=3), rng.gen_range(-3..=3))]));
    }
    p.scale(&ComplexRational::from_ints(rng.gen_range(1..=3), rng.gen_range(-3..=3)))
}

#[test]
fn random_reports_match_the_schema() {
    let v = validator();
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    let mut cfg = AnalysisConfig::default();
    cfg.sigma.drifts = 3;
    for i in 0..30 {
        cfg.caveat_policy = if i % 2 == 0 { CaveatPolicy::Downgrade } else { CaveatPolicy::Keep };
        let d = histogram(&mut rng);
        let p = symbol(&mut rng);
        let report = analyze(&p, &d, &cfg).unwrap().to_json();
        let errors: Vec<String> = v.iter_errors(&report).map(|e| format!("{e} at {}", e.instance_path)).collect();
        assert!(errors.is_empty(), "{p}: {errors:#?}");
    }
}
