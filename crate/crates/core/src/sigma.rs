//! Estimates of `σ_P(span{y})` from localizations along a path family.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::characteristic::{
    characteristic_set, dehomogenized, is_elliptic, slope_polynomial, AlgebraicDirection, CharacteristicSet,
    PlanarDirection,
};
use crate::error::{Error, Result};
use crate::localization::{lineality_space, ray_localization, LinealitySpace, LocalizationProfile, PathSpec, Sublinear};
use crate::norms::{ball_deriv, ball_sup, NormMode};
use crate::number::{int, rat, to_f64, Rational};
use crate::numeric::{abs_sq_critical_points, sup_abs_with_critical, FPoly};
use crate::polynomial::{MultiIndex, Polynomial};
use crate::univariate::{RealAlgebraic, SturmSequence};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SigmaConfig {
    pub seed: u64,
    /// Random affine drifts per rational characteristic direction.
    pub drifts: usize,
    pub drift_numerator_bound: i64,
    pub drift_denominator_bound: i64,
    /// Exponents `p/q` of sublinear drifts.
    pub sublinear_exponents: Vec<[u32; 2]>,
    /// Random sublinear drift vectors per exponent.
    pub sublinear_vectors: usize,
    /// Also drift along `±x_j`, the rotation of the direction by 90°.
    pub companion_drifts: bool,
    pub t_max: f64,
    pub t_points: usize,
    pub threshold: f64,
    pub mode: NormMode,
    /// Negate every path; pairs `P` with `P̌`.
    pub mirror: bool,
    /// Entry bound for integer candidate directions when `d > 2`.
    pub candidate_box: i64,
}

impl Default for SigmaConfig {
    fn default() -> Self {
        Self {
            seed: 20_240_917,
            drifts: 8,
            drift_numerator_bound: 5,
            drift_denominator_bound: 3,
            sublinear_exponents: vec![[1, 2], [2, 3]],
            sublinear_vectors: 4,
            companion_drifts: true,
            t_max: 1_048_576.0,
            t_points: 41,
            threshold: 1e-3,
            mode: NormMode::Sup,
            mirror: false,
            candidate_box: 1,
        }
    }
}

impl SigmaConfig {
    /// Geometric grid `t_k = t_max^{k/(n−1)}`, `k = 0..n`.
    pub fn t_grid(&self) -> Vec<f64> {
        let n = self.t_points.max(1);
        if n == 1 {
            return vec![1.0];
        }
        (0..n).map(|k| self.t_max.powf(k as f64 / (n - 1) as f64)).collect()
    }

    pub fn mirrored(&self) -> Self {
        Self { mirror: !self.mirror, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.t_max >= 1.0) || self.t_points == 0 {
            return Err(Error::Parse("sigma config needs t_max >= 1 and t_points >= 1".into()));
        }
        if self.drift_denominator_bound < 1 || self.drift_numerator_bound < 0 {
            return Err(Error::Parse("sigma config drift bounds must be positive".into()));
        }
        for [p, q] in &self.sublinear_exponents {
            if *p == 0 || p >= q {
                return Err(Error::Parse(format!("sublinear exponent {p}/{q} must lie in (0, 1)")));
            }
        }
        if !(self.threshold > 0.0) {
            return Err(Error::Parse("sigma threshold must be positive".into()));
        }
        Ok(())
    }
}

/// The `y` of `σ_P(span{y})`.
#[derive(Clone, Debug)]
pub enum SigmaDirection {
    Vector(Vec<Rational>),
    Planar(AlgebraicDirection),
}

impl SigmaDirection {
    pub fn dim(&self) -> usize {
        match self {
            Self::Vector(v) => v.len(),
            Self::Planar(_) => 2,
        }
    }

    pub fn unit_f64(&self) -> Vec<f64> {
        match self {
            Self::Vector(v) => {
                let f: Vec<f64> = v.iter().map(to_f64).collect();
                let n = f.iter().map(|x| x * x).sum::<f64>().sqrt();
                f.into_iter().map(|x| x / n).collect()
            }
            Self::Planar(d) => d.unit_f64().to_vec(),
        }
    }

    fn rational(&self) -> Option<Vec<Rational>> {
        match self {
            Self::Vector(v) => Some(v.clone()),
            Self::Planar(d) => d.rational_vector().map(|v| v.to_vec()),
        }
    }

    fn planar(&self) -> Option<AlgebraicDirection> {
        match self {
            Self::Planar(d) => Some(d.clone()),
            Self::Vector(v) if v.len() == 2 => AlgebraicDirection::from_rational(&[v[0].clone(), v[1].clone()]),
            Self::Vector(_) => None,
        }
    }

    fn is_zero(&self) -> bool {
        match self {
            Self::Vector(v) => v.iter().all(Zero::is_zero),
            Self::Planar(_) => false,
        }
    }
}

/// How a characteristic direction contributed localizations.
#[derive(Clone, Debug)]
pub enum FamilyStatus {
    /// Rational direction; profiles from the path family.
    Paths,
    /// Irrational simple zero of `P_m`: the ray profile
    /// `⟨∇P_m(N), η⟩ + P_{m−1}(N)` is known in closed form.
    SimpleCharacteristic,
    /// Irrational multiple zero: no profile computed.
    Unresolved,
}

#[derive(Clone, Debug)]
pub enum FamilyDirection {
    Planar(AlgebraicDirection),
    Vector(Vec<BigInt>),
}

impl FamilyDirection {
    fn unit_f64(&self) -> Vec<f64> {
        match self {
            Self::Planar(d) => d.unit_f64().to_vec(),
            Self::Vector(w) => {
                let f: Vec<f64> = w.iter().map(|c| to_f64(&Rational::from_integer(c.clone()))).collect();
                let n = f.iter().map(|x| x * x).sum::<f64>().sqrt();
                f.into_iter().map(|x| x / n).collect()
            }
        }
    }

    fn record(&self) -> Value {
        match self {
            Self::Planar(d) => serde_json::to_value(d.record()).unwrap_or(Value::Null),
            Self::Vector(w) => json!({ "vector": w.iter().map(|c| c.to_string()).collect::<Vec<_>>(), "unit": self.unit_f64() }),
        }
    }
}

#[derive(Clone, Debug)]
pub struct DirectionFamily {
    pub direction: FamilyDirection,
    pub status: FamilyStatus,
    pub paths: usize,
    /// Indices into the engine's deduplicated profile list.
    pub profiles: Vec<usize>,
}

#[derive(Clone, Debug)]
pub enum ProfileKind {
    Localization { profile: LocalizationProfile, lineality: LinealitySpace },
    SimpleCharacteristic { direction: AlgebraicDirection },
}

#[derive(Clone, Debug)]
pub struct ProfileEntry {
    pub kind: ProfileKind,
    /// Float coefficients with coefficient norm 1.
    pub float: FPoly,
    pub constant: bool,
    perp: Vec<Vec<f64>>,
    ball: Vec<f64>,
}

impl ProfileEntry {
    pub fn record(&self) -> Value {
        match &self.kind {
            ProfileKind::Localization { profile, lineality } => json!({
                "kind": "localization",
                "localization": profile.record(),
                "lineality": lineality.record(),
            }),
            ProfileKind::SimpleCharacteristic { direction } => json!({
                "kind": "simple-characteristic",
                "direction": direction.record(),
                "float_normalized": self.float.terms.iter().map(|(a, c)| (a.clone(), [c.re, c.im])).collect::<Vec<_>>(),
                "lineality": { "lambda": [direction.unit_f64()] },
            }),
        }
    }

    fn contains(&self, y: &SigmaDirection) -> bool {
        if self.constant {
            return false;
        }
        match &self.kind {
            ProfileKind::Localization { lineality, .. } => match y.rational() {
                Some(v) => v.len() == lineality.lambda.first().map_or(v.len(), |b| b.len()) && lineality.contains(&v),
                None => false,
            },
            ProfileKind::SimpleCharacteristic { direction } => match y.planar() {
                Some(n) => n.same_as(direction) || n.same_as(&direction.neg()),
                None => false,
            },
        }
    }
}

#[derive(Clone, Debug)]
pub enum SigmaCertificate {
    EllipticOne,
    /// `y ∈ Λ(Q)` for the non-constant profile `profiles[index]`.
    ExactZero { profile: usize },
    NumericPositive {
        lower_estimate: f64,
        samples: usize,
        /// Below the threshold, or `y` is an unresolved characteristic direction.
        inconclusive: bool,
        argmin: Option<(usize, f64)>,
    },
}

#[derive(Clone, Debug)]
pub struct SigmaEstimate {
    pub value: f64,
    pub certificate: SigmaCertificate,
    pub witness: Option<Value>,
    pub mode: NormMode,
    pub config: SigmaConfig,
}

impl SigmaEstimate {
    pub fn is_exact_zero(&self) -> bool {
        matches!(self.certificate, SigmaCertificate::ExactZero { .. })
    }

    pub fn is_inconclusive(&self) -> bool {
        matches!(self.certificate, SigmaCertificate::NumericPositive { inconclusive: true, .. })
    }

    pub fn to_json(&self) -> Value {
        let certificate = match &self.certificate {
            SigmaCertificate::EllipticOne => json!({ "kind": "elliptic-one" }),
            SigmaCertificate::ExactZero { .. } => json!({ "kind": "exact-zero", "witness": self.witness }),
            SigmaCertificate::NumericPositive { lower_estimate, samples, inconclusive, argmin } => json!({
                "kind": if *inconclusive { "inconclusive-positive" } else { "numeric-positive" },
                "lower_estimate": lower_estimate,
                "samples": samples,
                "argmin_t": argmin.map(|(_, t)| t),
                "argmin_profile": self.witness,
            }),
        };
        json!({
            "value": self.value,
            "certificate": certificate,
            "norm_mode": self.mode,
            "path_family_approximation": !matches!(self.certificate, SigmaCertificate::EllipticOne),
            "config": self.config,
        })
    }
}

/// Localization data for one symbol, reusable across many `y`.
#[derive(Clone, Debug)]
pub struct SigmaEngine {
    poly: Polynomial,
    config: SigmaConfig,
    elliptic: bool,
    characteristic: Option<CharacteristicSet>,
    families: Vec<DirectionFamily>,
    profiles: Vec<ProfileEntry>,
    t_grid: Vec<f64>,
    mode: NormMode,
}

impl SigmaEngine {
    pub fn new(p: &Polynomial, config: &SigmaConfig) -> Result<Self> {
        p.ensure_nonzero()?;
        config.validate()?;
        let d = p.dimension();
        let mode = if d != 2 { NormMode::Deriv } else { config.mode };
        let elliptic = is_elliptic(p);
        let characteristic = if d == 2 { Some(characteristic_set(p)?) } else { None };
        let mut engine = Self {
            poly: p.clone(),
            config: config.clone(),
            elliptic,
            characteristic,
            families: Vec::new(),
            profiles: Vec::new(),
            t_grid: config.t_grid(),
            mode,
        };
        if !elliptic {
            engine.collect_profiles()?;
        }
        Ok(engine)
    }

    pub fn is_elliptic(&self) -> bool {
        self.elliptic
    }

    pub fn characteristic_set(&self) -> Option<&CharacteristicSet> {
        self.characteristic.as_ref()
    }

    pub fn families(&self) -> &[DirectionFamily] {
        &self.families
    }

    pub fn profiles(&self) -> &[ProfileEntry] {
        &self.profiles
    }

    pub fn mode(&self) -> NormMode {
        self.mode
    }

    pub fn config(&self) -> &SigmaConfig {
        &self.config
    }

    fn collect_profiles(&mut self) -> Result<()> {
        let dirs: Vec<FamilyDirection> = match &self.characteristic {
            Some(c) => c.directions.iter().cloned().map(FamilyDirection::Planar).collect(),
            None => candidate_directions(&self.poly, self.config.candidate_box)?
                .into_iter()
                .map(FamilyDirection::Vector)
                .collect(),
        };
        let mut seen: HashMap<Polynomial, usize> = HashMap::new();
        for (index, dir) in dirs.into_iter().enumerate() {
            let w = match &dir {
                FamilyDirection::Vector(w) => Some(w.clone()),
                FamilyDirection::Planar(n) => n.primitive_integer().map(|v| v.to_vec()),
            };
            let mut family = DirectionFamily { direction: dir.clone(), status: FamilyStatus::Paths, paths: 0, profiles: Vec::new() };
            match w {
                Some(w) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
                    for path in path_family(&w, &self.config, &mut rng)? {
                        let path = if self.config.mirror { path.mirrored() } else { path };
                        let prof = ray_localization(&self.poly, &path)?;
                        family.paths += 1;
                        let idx = match seen.get(&prof.profile) {
                            Some(&i) => i,
                            None => {
                                let key = prof.profile.clone();
                                let i = self.push_localization(prof);
                                seen.insert(key, i);
                                i
                            }
                        };
                        if !family.profiles.contains(&idx) {
                            family.profiles.push(idx);
                        }
                    }
                }
                None => {
                    let FamilyDirection::Planar(n) = &dir else { unreachable!("vector directions are rational") };
                    if is_simple_zero(&self.poly, n)? {
                        family.status = FamilyStatus::SimpleCharacteristic;
                        family.paths = 1;
                        let i = self.push_simple(n)?;
                        family.profiles.push(i);
                    } else {
                        family.status = FamilyStatus::Unresolved;
                    }
                }
            }
            self.families.push(family);
        }
        Ok(())
    }

    fn push_localization(&mut self, prof: LocalizationProfile) -> usize {
        let lineality = lineality_space(&prof.profile);
        let perp: Vec<Vec<f64>> = lineality.lambda_perp.iter().map(|v| v.iter().map(to_f64).collect()).collect();
        let float = FPoly {
            dim: prof.profile.dimension(),
            terms: prof.float_normalized.iter().map(|(a, c)| (a.0.clone(), *c)).collect(),
        };
        let constant = prof.is_constant();
        self.push_entry(ProfileEntry { kind: ProfileKind::Localization { profile: prof, lineality }, float, constant, perp, ball: Vec::new() })
    }

    fn push_simple(&mut self, n: &AlgebraicDirection) -> Result<usize> {
        let dec = self.poly.hom_decompose()?;
        let m = dec.degree as usize;
        let u = n.unit_f64();
        let grad: Vec<Complex64> = (0..2).map(|i| FPoly::from_poly(&dec.principal.partial(i)).eval(&u)).collect();
        let c0 = if m >= 1 { FPoly::from_poly(&dec.components[m - 1]).eval(&u) } else { Complex64::new(0.0, 0.0) };
        let norm = (grad[0].norm_sqr() + grad[1].norm_sqr() + c0.norm_sqr()).sqrt();
        let mut terms = vec![(vec![1, 0], grad[0] / norm), (vec![0, 1], grad[1] / norm)];
        if c0 != Complex64::new(0.0, 0.0) {
            terms.insert(0, (vec![0, 0], c0 / norm));
        }
        let float = FPoly { dim: 2, terms };
        let c = n.orthogonal_companion().unit_f64();
        Ok(self.push_entry(ProfileEntry {
            kind: ProfileKind::SimpleCharacteristic { direction: n.clone() },
            float,
            constant: false,
            perp: vec![c.to_vec()],
            ball: Vec::new(),
        }))
    }

    fn push_entry(&mut self, mut e: ProfileEntry) -> usize {
        if !e.constant {
            let origin = vec![0.0; e.float.dim];
            e.ball = self
                .t_grid
                .iter()
                .map(|&t| match self.mode {
                    NormMode::Sup => ball_sup(&e.float, &origin, t, &e.perp),
                    NormMode::Deriv => ball_deriv(&e.float, &origin, t),
                })
                .collect();
        }
        self.profiles.push(e);
        self.profiles.len() - 1
    }

    /// Characteristic directions whose localizations could not be computed.
    pub fn unresolved(&self) -> Vec<&AlgebraicDirection> {
        self.families
            .iter()
            .filter(|f| matches!(f.status, FamilyStatus::Unresolved))
            .filter_map(|f| match &f.direction {
                FamilyDirection::Planar(n) => Some(n),
                FamilyDirection::Vector(_) => None,
            })
            .collect()
    }

    pub fn estimate(&self, y: &SigmaDirection) -> Result<SigmaEstimate> {
        if y.dim() != self.poly.dimension() {
            return Err(Error::DimensionMismatch { expected: self.poly.dimension(), got: y.dim() });
        }
        if y.is_zero() {
            return Err(Error::Parse("direction y must be non-zero".into()));
        }
        let base = |value, certificate, witness| SigmaEstimate { value, certificate, witness, mode: self.mode, config: self.config.clone() };
        if self.elliptic {
            return Ok(base(1.0, SigmaCertificate::EllipticOne, None));
        }
        if let Some(i) = self.profiles.iter().position(|e| e.contains(y)) {
            return Ok(base(0.0, SigmaCertificate::ExactZero { profile: i }, Some(self.profiles[i].record())));
        }
        let yu = y.unit_f64();
        let mut best = 1.0f64;
        let mut argmin = None;
        let mut samples = 0;
        let t_max = *self.t_grid.last().unwrap_or(&1.0);
        for (i, e) in self.profiles.iter().enumerate() {
            samples += self.t_grid.len();
            if e.constant {
                continue;
            }
            let origin = vec![0.0; yu.len()];
            let q = e.float.restrict_to_line(&origin, &yu);
            let crit = match self.mode {
                NormMode::Sup => abs_sq_critical_points(&q, t_max),
                NormMode::Deriv => Vec::new(),
            };
            for (k, &t) in self.t_grid.iter().enumerate() {
                let line = match self.mode {
                    NormMode::Sup => sup_abs_with_critical(&q, &crit, t),
                    NormMode::Deriv => q.iter().enumerate().map(|(j, c)| c.norm() * t.powi(j as i32)).sum(),
                };
                let ratio = if e.ball[k] > 0.0 { (line / e.ball[k]).min(1.0) } else { 1.0 };
                if ratio < best {
                    best = ratio;
                    argmin = Some((i, t));
                }
            }
        }
        let unresolved = y.planar().is_some_and(|n| self.unresolved().iter().any(|u| u.same_as(&n) || u.same_as(&n.neg())));
        let witness = argmin.map(|(i, _)| self.profiles[i].record());
        Ok(base(
            best,
            SigmaCertificate::NumericPositive { lower_estimate: best, samples, inconclusive: best < self.config.threshold || unresolved, argmin },
            witness,
        ))
    }
}

pub fn sigma_estimate(p: &Polynomial, y: &SigmaDirection, config: &SigmaConfig) -> Result<SigmaEstimate> {
    SigmaEngine::new(p, config)?.estimate(y)
}

fn random_rational(rng: &mut ChaCha8Rng, cfg: &SigmaConfig) -> Rational {
    let n = rng.gen_range(-cfg.drift_numerator_bound..=cfg.drift_numerator_bound);
    let d = rng.gen_range(1..=cfg.drift_denominator_bound);
    rat(n, d)
}

/// Pure ray, random affine drifts, and sublinear drifts along `w`.
pub fn path_family(w: &[BigInt], cfg: &SigmaConfig, rng: &mut ChaCha8Rng) -> Result<Vec<PathSpec>> {
    let d = w.len();
    let zero = vec![Rational::zero(); d];
    let mut out = vec![PathSpec::ray(w.to_vec())?];
    for _ in 0..cfg.drifts {
        let b: Vec<Rational> = (0..d).map(|_| random_rational(rng, cfg)).collect();
        out.push(PathSpec::new(w.to_vec(), b, None)?);
    }
    let mut vs: Vec<Vec<Rational>> = Vec::new();
    for _ in 0..cfg.sublinear_vectors {
        let v: Vec<Rational> = loop {
            let v: Vec<Rational> = (0..d).map(|_| int(rng.gen_range(-3..=3))).collect();
            if v.iter().any(|c| !c.is_zero()) {
                break v;
            }
        };
        vs.push(v);
    }
    if cfg.companion_drifts && d == 2 {
        let c = vec![Rational::from_integer(-w[1].clone()), Rational::from_integer(w[0].clone())];
        vs.push(c.iter().map(|x| -x).collect());
        vs.push(c);
    }
    for [p, q] in &cfg.sublinear_exponents {
        for v in &vs {
            out.push(PathSpec::new(w.to_vec(), zero.clone(), Some(Sublinear { p: *p, q: *q, v: v.clone() }))?);
        }
    }
    Ok(out)
}

/// Primitive integer vectors with entries in `[-k, k]` on which `P_m`
/// vanishes exactly (used when `d > 2`).
pub fn candidate_directions(p: &Polynomial, k: i64) -> Result<Vec<Vec<BigInt>>> {
    let pm = p.principal_part()?;
    let d = p.dimension();
    let mut out = Vec::new();
    let mut cur = vec![-k; d];
    loop {
        let g = cur.iter().fold(0i64, |acc, &x| num_integer::gcd(acc, x));
        if g == 1 {
            let v: Vec<Rational> = cur.iter().map(|&x| int(x)).collect();
            if pm.eval_rational(&v)?.is_zero() {
                out.push(cur.iter().map(|&x| BigInt::from(x)).collect());
            }
        }
        let mut i = 0;
        while i < d {
            if cur[i] < k {
                cur[i] += 1;
                break;
            }
            cur[i] = -k;
            i += 1;
        }
        if i == d {
            break;
        }
    }
    Ok(out)
}

/// Whether `∇P_m(N) ≠ 0` at a characteristic direction `N` (`d = 2`).
pub fn is_simple_zero(p: &Polynomial, n: &AlgebraicDirection) -> Result<bool> {
    let dec = p.hom_decompose()?;
    let m = dec.degree;
    match n {
        AlgebraicDirection::Axis { .. } => {
            // ∂₂P_m(0,1) = m·c_{0,m} = 0 here, so only ∂₁ can be non-zero
            Ok(m >= 1 && !dec.principal.coeff(&MultiIndex(vec![1, m - 1])).is_zero())
        }
        AlgebraicDirection::Slope { slope, .. } => {
            // by Euler's identity ∇P_m(1,s) = 0 iff p'(s) = 0 for p(s) = P_m(1,s)
            let (re, im) = dehomogenized(&dec.principal);
            let dp = re.derivative().gcd(&im.derivative());
            let g = slope_polynomial(&dec.principal);
            let h = if dp.is_zero() { g.clone() } else { g.gcd(&dp) };
            if h.degree() < 1 {
                return Ok(true);
            }
            match slope {
                RealAlgebraic::Rational(s) => Ok(!h.eval(s).is_zero()),
                RealAlgebraic::Root { lo, hi, .. } => {
                    let seq = SturmSequence::new(&h.squarefree_part());
                    Ok(seq.count(lo, hi) == 0)
                }
            }
        }
    }
}

/// Outcome of probing whether all localizations are constant.
#[derive(Clone, Debug)]
pub enum HypoellipticityVerdict {
    Elliptic,
    CertifiedNonHypoelliptic { witness: Value },
    /// Every computed profile is constant and every `σ` estimate at a
    /// characteristic direction exceeds the threshold. Not a proof.
    LikelyHypoelliptic { profiles_checked: usize, min_sigma: f64 },
    /// Some characteristic direction could not be resolved.
    Inconclusive { reason: String },
}

impl HypoellipticityVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Elliptic => "elliptic",
            Self::CertifiedNonHypoelliptic { .. } => "certified-non-hypoelliptic",
            Self::LikelyHypoelliptic { .. } => "likely-hypoelliptic",
            Self::Inconclusive { .. } => "inconclusive",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Self::Elliptic => json!({ "class": self.label() }),
            Self::CertifiedNonHypoelliptic { witness } => json!({ "class": self.label(), "witness": witness }),
            Self::LikelyHypoelliptic { profiles_checked, min_sigma } => json!({
                "class": self.label(),
                "certified": false,
                "profiles_checked": profiles_checked,
                "min_sigma": min_sigma,
            }),
            Self::Inconclusive { reason } => json!({ "class": self.label(), "reason": reason }),
        }
    }
}

pub fn hypoellipticity_probe(p: &Polynomial, config: &SigmaConfig) -> Result<HypoellipticityVerdict> {
    let engine = SigmaEngine::new(p, config)?;
    probe_with(&engine)
}

pub fn probe_with(engine: &SigmaEngine) -> Result<HypoellipticityVerdict> {
    if engine.is_elliptic() {
        return Ok(HypoellipticityVerdict::Elliptic);
    }
    if let Some(e) = engine.profiles().iter().find(|e| !e.constant) {
        return Ok(HypoellipticityVerdict::CertifiedNonHypoelliptic { witness: e.record() });
    }
    if !engine.unresolved().is_empty() {
        return Ok(HypoellipticityVerdict::Inconclusive { reason: "irrational multiple characteristic direction".into() });
    }
    let mut min_sigma = 1.0f64;
    let directions: Vec<SigmaDirection> = engine
        .families()
        .iter()
        .map(|f| match &f.direction {
            FamilyDirection::Planar(n) => SigmaDirection::Planar(n.clone()),
            FamilyDirection::Vector(w) => SigmaDirection::Vector(w.iter().map(|c| Rational::from_integer(c.clone())).collect()),
        })
        .collect();
    for y in &directions {
        let est = engine.estimate(y)?;
        min_sigma = min_sigma.min(est.value);
    }
    if min_sigma > engine.config().threshold {
        Ok(HypoellipticityVerdict::LikelyHypoelliptic { profiles_checked: engine.profiles().len(), min_sigma })
    } else {
        Ok(HypoellipticityVerdict::Inconclusive { reason: format!("sigma estimate {min_sigma:e} below threshold") })
    }
}

/// Summary of one family for reports.
pub fn family_record(engine: &SigmaEngine, f: &DirectionFamily) -> Value {
    json!({
        "direction": f.direction.record(),
        "status": match f.status {
            FamilyStatus::Paths => "paths",
            FamilyStatus::SimpleCharacteristic => "simple-characteristic",
            FamilyStatus::Unresolved => "unresolved",
        },
        "paths": f.paths,
        "distinct_profiles": f.profiles.len(),
        "non_constant_profiles": f.profiles.iter().filter(|&&i| !engine.profiles()[i].constant).count(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2(terms: &[(&[u32], i64, i64)]) -> Polynomial {
        Polynomial::from_int_terms(2, terms)
    }

    fn vec_dir(v: &[i64]) -> SigmaDirection {
        SigmaDirection::Vector(v.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn wave_in_three_variables_has_zero_along_e3() {
        let p = Polynomial::from_int_terms(3, &[(&[2, 0, 0], 1, 0), (&[0, 2, 0], -1, 0), (&[0, 0, 2], -1, 0)]);
        let est = sigma_estimate(&p, &vec_dir(&[0, 0, 1]), &SigmaConfig::default()).unwrap();
        assert_eq!(est.value, 0.0);
        assert!(est.is_exact_zero());
    }

    #[test]
    fn product_symbol_zero_and_positive() {
        let p = p2(&[(&[1, 1], 1, 0)]);
        let engine = SigmaEngine::new(&p, &SigmaConfig::default()).unwrap();
        let e1 = engine.estimate(&vec_dir(&[1, 0])).unwrap();
        assert!(e1.is_exact_zero());
        let diag = engine.estimate(&vec_dir(&[1, 1])).unwrap();
        assert!(matches!(diag.certificate, SigmaCertificate::NumericPositive { inconclusive: false, .. }));
        // lower bound with m = 2: |⟨y, x_j⟩|² = 1/2
        assert!(diag.value > 0.1 && diag.value <= 1.0);
        let other = SigmaEngine::new(&p, &SigmaConfig { seed: 99, ..SigmaConfig::default() }).unwrap();
        let v2 = other.estimate(&vec_dir(&[1, 1])).unwrap().value;
        assert!((v2 - diag.value).abs() <= 0.1 * diag.value);
    }

    #[test]
    fn elliptic_gives_one() {
        let est = sigma_estimate(&p2(&[(&[2, 0], 1, 0), (&[0, 2], 1, 0)]), &vec_dir(&[1, 0]), &SigmaConfig::default()).unwrap();
        assert_eq!(est.value, 1.0);
        assert!(matches!(est.certificate, SigmaCertificate::EllipticOne));
    }

    #[test]
    fn irrational_simple_direction_is_certified() {
        let p = p2(&[(&[2, 0], 1, 0), (&[0, 2], -2, 0)]);
        let engine = SigmaEngine::new(&p, &SigmaConfig::default()).unwrap();
        for n in &engine.characteristic_set().unwrap().directions.clone() {
            assert!(engine.estimate(&SigmaDirection::Planar(n.clone())).unwrap().is_exact_zero());
        }
        assert!(!engine.estimate(&vec_dir(&[1, 0])).unwrap().is_exact_zero());
    }

    #[test]
    fn probe_classes() {
        let cfg = SigmaConfig::default();
        assert!(matches!(hypoellipticity_probe(&p2(&[(&[2, 0], 1, 0), (&[0, 2], 1, 0)]), &cfg).unwrap(), HypoellipticityVerdict::Elliptic));
        assert!(matches!(
            hypoellipticity_probe(&p2(&[(&[1, 1], 1, 0)]), &cfg).unwrap(),
            HypoellipticityVerdict::CertifiedNonHypoelliptic { .. }
        ));
        // i·x1 + x2²: the heat symbol under D = −i∂
        assert!(matches!(
            hypoellipticity_probe(&p2(&[(&[1, 0], 0, 1), (&[0, 2], 1, 0)]), &cfg).unwrap(),
            HypoellipticityVerdict::LikelyHypoelliptic { .. }
        ));
        // x1 − x2² localizes to η2 along r·e1 + r^{1/2}·e2
        assert!(matches!(
            hypoellipticity_probe(&p2(&[(&[1, 0], 1, 0), (&[0, 2], -1, 0)]), &cfg).unwrap(),
            HypoellipticityVerdict::CertifiedNonHypoelliptic { .. }
        ));
    }

    #[test]
    fn simple_zero_detection() {
        let wave = p2(&[(&[2, 0], 1, 0), (&[0, 2], -1, 0)]);
        for n in characteristic_set(&wave).unwrap().directions {
            assert!(is_simple_zero(&wave, &n).unwrap());
        }
        // x2² has a double zero at ±e1
        let sq = p2(&[(&[0, 2], 1, 0)]);
        assert!(!is_simple_zero(&sq, &AlgebraicDirection::from_ints(1, 0).unwrap()).unwrap());
        // x1² has a double zero at ±e2
        let sq = p2(&[(&[2, 0], 1, 0)]);
        assert!(!is_simple_zero(&sq, &AlgebraicDirection::from_ints(0, 1).unwrap()).unwrap());
    }
}
