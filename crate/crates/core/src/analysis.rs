//! The full decision pipeline for a symbol on a planar domain.

use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::characteristic::AlgebraicDirection;
use crate::domain::exterior::boundary_samples;
use crate::domain::sweep::antipodal_representatives;
use crate::domain::{
    convexity_verdict, exterior_cone_diagnostic, ConvexityMode, ExteriorDiagnostic, PlanarDomain, Point, Verdict,
};
use crate::error::{Error, Result};
use crate::io::read_json;
use crate::polynomial::Polynomial;
use crate::sigma::{probe_with, HypoellipticityVerdict, SigmaConfig, SigmaDirection, SigmaEngine, SigmaEstimate};

pub const CONFIG_VERSION: u32 = 1;
pub const REPORT_SCHEMA: &str = "pconvex-report/1";

/// What a `pass-with-caveat` singular verdict does to the `D′` conclusion.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum CaveatPolicy {
    #[default]
    Downgrade,
    Keep,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct AnalysisConfig {
    pub version: u32,
    pub sigma: SigmaConfig,
    pub caveat_policy: CaveatPolicy,
    /// Run the exterior-cone diagnostic at boundary samples.
    pub exterior_diagnostics: bool,
    pub min_principle_tol: f64,
    pub report: Option<String>,
    pub svg: Option<String>,
}

impl Default for AnalysisConfig {
    fn default() -> Self {
        Self {
            version: CONFIG_VERSION,
            sigma: SigmaConfig::default(),
            caveat_policy: CaveatPolicy::Downgrade,
            exterior_diagnostics: true,
            min_principle_tol: crate::domain::distance::DEFAULT_TOL,
            report: None,
            svg: None,
        }
    }
}

impl AnalysisConfig {
    pub fn from_json(v: &Value) -> Result<Self> {
        let cfg: Self = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("config: {e}")))?;
        if cfg.version != CONFIG_VERSION {
            return Err(Error::Parse(format!("config version {} is not supported (expected {CONFIG_VERSION})", cfg.version)));
        }
        cfg.sigma.validate()?;
        Ok(cfg)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&read_json(path)?)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("config serializes")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictStatus {
    Pass,
    PassWithCaveat,
    Fail,
}

impl VerdictStatus {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Pass => "pass",
            Self::PassWithCaveat => "pass-with-caveat",
            Self::Fail => "fail",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Conclusion {
    Surjective,
    NotSurjective,
    Inconclusive,
}

impl Conclusion {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Surjective => "surjective",
            Self::NotSurjective => "not-surjective",
            Self::Inconclusive => "inconclusive",
        }
    }
}

/// How the singular-supports verdict was reached.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SingularBasis {
    /// `σ_P` never vanishes.
    Elliptic,
    /// Every computed localization is constant.
    Hypoelliptic,
    /// Sweep over the certified zeros of `σ_P`.
    Sweep,
}

impl SingularBasis {
    pub fn label(&self) -> &'static str {
        match self {
            Self::Elliptic => "elliptic",
            Self::Hypoelliptic => "hypoelliptic-vacuous",
            Self::Sweep => "sigma-zero-sweep",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SingularVerdict {
    pub status: VerdictStatus,
    pub basis: SingularBasis,
    /// Sweep over the certified `σ_P` zeros.
    pub sweep: Verdict,
    /// Directions with inconclusive `σ` estimates and a failing sweep.
    pub caveat_directions: Vec<AlgebraicDirection>,
}

#[derive(Clone, Debug)]
pub struct SigmaRecord {
    pub direction: AlgebraicDirection,
    pub estimate: SigmaEstimate,
}

#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub config: AnalysisConfig,
    pub symbol: Polynomial,
    pub domain: PlanarDomain,
    pub elliptic: bool,
    pub hypoellipticity: HypoellipticityVerdict,
    pub characteristic: Vec<AlgebraicDirection>,
    pub sigma: Vec<SigmaRecord>,
    pub supports: Verdict,
    pub singular: SingularVerdict,
    pub smooth: Conclusion,
    pub distributions: Conclusion,
    pub caveats: Vec<String>,
    pub exterior_samples: usize,
    /// Boundary samples with no admissible exterior cone.
    pub exterior_failures: Vec<(Point, ExteriorDiagnostic)>,
}

impl AnalysisReport {
    pub fn exit_code(&self) -> i32 {
        if self.smooth == Conclusion::NotSurjective || self.distributions == Conclusion::NotSurjective {
            1
        } else if self.smooth == Conclusion::Inconclusive || self.distributions == Conclusion::Inconclusive {
            2
        } else {
            0
        }
    }

    /// A passing sweep must leave every boundary sample with an admissible cone.
    pub fn exterior_consistent(&self) -> bool {
        !self.supports.passed || self.exterior_failures.is_empty()
    }

    pub fn to_json(&self) -> Value {
        let mut cfg = self.config.to_json();
        if let Some(o) = cfg.as_object_mut() {
            // output paths do not affect the analysis
            o.remove("report");
            o.remove("svg");
        }
        let sigma: Vec<Value> = self
            .sigma
            .iter()
            .map(|s| {
                let mut est = s.estimate.to_json();
                if let Some(o) = est.as_object_mut() {
                    o.remove("config");
                }
                json!({ "direction": s.direction.record(), "estimate": est })
            })
            .collect();
        let certified: Vec<Value> =
            self.sigma.iter().filter(|s| s.estimate.is_exact_zero()).map(|s| json!(s.direction.record())).collect();
        let mut singular = self.singular.sweep.to_json();
        if let Some(o) = singular.as_object_mut() {
            o.insert("status".into(), json!(self.singular.status.label()));
            o.insert("basis".into(), json!(self.singular.basis.label()));
            o.insert(
                "caveat_directions".into(),
                json!(self.singular.caveat_directions.iter().map(|d| d.record()).collect::<Vec<_>>()),
            );
        }
        json!({
            "schema": REPORT_SCHEMA,
            "config": cfg,
            "symbol": {
                "terms": self.symbol.to_json(),
                "display": self.symbol.to_string(),
                "degree": self.symbol.degree(),
            },
            "domain": self.domain.to_json(),
            "classification": {
                "elliptic": self.elliptic,
                "hypoellipticity": self.hypoellipticity.to_json(),
            },
            "characteristic_set": self.characteristic.iter().map(|d| d.record()).collect::<Vec<_>>(),
            "sigma": {
                "path_family_approximation": !self.elliptic,
                "estimates": sigma,
                "certified_zeros": certified,
            },
            "supports": self.supports.to_json(),
            "singular_supports": singular,
            "surjectivity": {
                "smooth": self.smooth.label(),
                "distributions": self.distributions.label(),
            },
            "consistency": {
                "supports_implies_singular": true,
                "exterior_diagnostic_agrees": self.exterior_consistent(),
            },
            "exterior_diagnostics": {
                "applicable": !self.elliptic && self.config.exterior_diagnostics,
                "samples": self.exterior_samples,
                "failures": self.exterior_failures.iter().map(|(x, d)| d.to_json(x)).collect::<Vec<_>>(),
            },
            "caveats": self.caveats,
            "exit_code": self.exit_code(),
        })
    }
}

fn empty_verdict(mode: ConvexityMode) -> Verdict {
    Verdict { passed: true, witnesses: Vec::new(), checked: Vec::new(), mode }
}

/// Decides surjectivity of `P(D)` on `C^∞(Ω)` and `D′(Ω)` for a planar `Ω`.
pub fn analyze(p: &Polynomial, domain: &PlanarDomain, config: &AnalysisConfig) -> Result<AnalysisReport> {
    p.ensure_nonzero()?;
    if p.dimension() != 2 {
        return Err(Error::UnsupportedDimension(p.dimension()));
    }
    let engine = SigmaEngine::new(p, &config.sigma)?;
    let hypo = probe_with(&engine)?;
    let mut caveats = Vec::new();

    if engine.is_elliptic() {
        return finish(Partial {
            config,
            p,
            domain,
            elliptic: true,
            hypo,
            characteristic: Vec::new(),
            sigma: Vec::new(),
            supports: empty_verdict(ConvexityMode::Supports),
            singular: SingularVerdict {
                status: VerdictStatus::Pass,
                basis: SingularBasis::Elliptic,
                sweep: empty_verdict(ConvexityMode::SingularSupports),
                caveat_directions: Vec::new(),
            },
            caveats,
        });
    }

    let characteristic = engine
        .characteristic_set()
        .map(|c| c.directions.clone())
        .ok_or(Error::UnsupportedDimension(p.dimension()))?;
    let supports = convexity_verdict(domain, &characteristic, ConvexityMode::Supports)?;

    // σ_P can only vanish at characteristic directions
    let mut sigma = Vec::new();
    for n in antipodal_representatives(&characteristic) {
        let estimate = engine.estimate(&SigmaDirection::Planar(n.clone()))?;
        sigma.push(SigmaRecord { direction: n, estimate });
    }

    let singular = if let HypoellipticityVerdict::LikelyHypoelliptic { .. } = hypo {
        SingularVerdict {
            status: VerdictStatus::Pass,
            basis: SingularBasis::Hypoelliptic,
            sweep: empty_verdict(ConvexityMode::SingularSupports),
            caveat_directions: Vec::new(),
        }
    } else {
        let zeros: Vec<AlgebraicDirection> =
            sigma.iter().filter(|s| s.estimate.is_exact_zero()).map(|s| s.direction.clone()).collect();
        let sweep = convexity_verdict(domain, &zeros, ConvexityMode::SingularSupports)?;
        let mut caveat_directions = Vec::new();
        for s in sigma.iter().filter(|s| s.estimate.is_inconclusive()) {
            let v = convexity_verdict(domain, std::slice::from_ref(&s.direction), ConvexityMode::SingularSupports)?;
            caveats.push(format!(
                "sigma at direction {} is inconclusive (estimate {:e}); sweep along it {}",
                s.direction,
                s.estimate.value,
                if v.passed { "passes" } else { "fails" }
            ));
            if !v.passed {
                caveat_directions.push(s.direction.clone());
            }
        }
        let status = if !sweep.passed {
            VerdictStatus::Fail
        } else if caveat_directions.is_empty() {
            VerdictStatus::Pass
        } else {
            VerdictStatus::PassWithCaveat
        };
        SingularVerdict { status, basis: SingularBasis::Sweep, sweep, caveat_directions }
    };
    if let HypoellipticityVerdict::Inconclusive { reason } = &hypo {
        caveats.push(format!("hypoellipticity probe inconclusive: {reason}"));
    }

    finish(Partial { config, p, domain, elliptic: false, hypo, characteristic, sigma, supports, singular, caveats })
}

struct Partial<'a> {
    config: &'a AnalysisConfig,
    p: &'a Polynomial,
    domain: &'a PlanarDomain,
    elliptic: bool,
    hypo: HypoellipticityVerdict,
    characteristic: Vec<AlgebraicDirection>,
    sigma: Vec<SigmaRecord>,
    supports: Verdict,
    singular: SingularVerdict,
    caveats: Vec<String>,
}

fn finish(r: Partial<'_>) -> Result<AnalysisReport> {
    if r.supports.passed && r.singular.status == VerdictStatus::Fail {
        return Err(Error::InternalInconsistency(
            "domain passes the supports sweep but fails the singular-supports sweep".into(),
        ));
    }
    let smooth = if r.supports.passed { Conclusion::Surjective } else { Conclusion::NotSurjective };
    // strong P-convexity includes P-convexity
    let distributions = match (smooth, r.singular.status) {
        (Conclusion::NotSurjective, _) | (_, VerdictStatus::Fail) => Conclusion::NotSurjective,
        (_, VerdictStatus::Pass) => Conclusion::Surjective,
        (_, VerdictStatus::PassWithCaveat) => match r.config.caveat_policy {
            CaveatPolicy::Downgrade => Conclusion::Inconclusive,
            CaveatPolicy::Keep => Conclusion::Surjective,
        },
    };
    let mut exterior_samples = 0;
    let mut exterior_failures = Vec::new();
    if !r.elliptic && r.config.exterior_diagnostics {
        for x0 in boundary_samples(r.domain) {
            exterior_samples += 1;
            let d = exterior_cone_diagnostic(r.domain, &x0, &r.characteristic)?;
            if !d.passed() {
                exterior_failures.push((x0, d));
            }
        }
    }
    Ok(AnalysisReport {
        config: r.config.clone(),
        symbol: r.p.clone(),
        domain: r.domain.clone(),
        elliptic: r.elliptic,
        hypoellipticity: r.hypo,
        characteristic: r.characteristic,
        sigma: r.sigma,
        supports: r.supports,
        singular: r.singular,
        smooth,
        distributions,
        caveats: r.caveats,
        exterior_samples,
        exterior_failures,
    })
}
