//! Cones: planar sectors, small polyhedral cones and the Lorentz cone.

pub mod avoid;
pub mod lorentz;
pub mod polyhedral;
pub mod prop3;
pub mod sector;

use serde_json::Value;

use crate::error::{Error, Result};

pub use avoid::{cone_avoids_zeroset, Avoidance, OpenCone, ZeroSet};
pub use lorentz::{distance_to_lorentz, LorentzCone};
pub use polyhedral::{recession_direction, ConvexSet, PolyhedralCone, Recession};
pub use prop3::{prop3_evaluate, prop3_predicates, Prop3Record};
pub use sector::Sector2;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cone {
    Sector(Sector2),
    Polyhedral(PolyhedralCone),
    Lorentz(LorentzCone),
}

impl Cone {
    pub fn dual(&self) -> Result<Self> {
        Ok(match self {
            Self::Sector(s) => Self::Sector(s.dual()?),
            Self::Polyhedral(p) => Self::Polyhedral(p.dual()?),
            Self::Lorentz(l) => Self::Lorentz(l.dual()),
        })
    }

    pub fn is_proper(&self) -> Result<bool> {
        match self {
            Self::Sector(s) => Ok(s.is_proper()),
            Self::Polyhedral(p) => p.is_proper(),
            Self::Lorentz(l) => Ok(l.is_proper()),
        }
    }

    pub fn is_degenerate(&self) -> bool {
        match self {
            Self::Sector(s) => s.is_degenerate(),
            Self::Polyhedral(p) => p.is_zero(),
            Self::Lorentz(_) => false,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            Self::Sector(s) => s.to_json(),
            Self::Polyhedral(p) => p.to_json(),
            Self::Lorentz(l) => l.to_json(),
        }
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        match v.get("kind").and_then(Value::as_str) {
            Some("polyhedral") => Ok(Self::Polyhedral(PolyhedralCone::from_json(v)?)),
            Some("lorentz") => Ok(Self::Lorentz(LorentzCone::from_json(v)?)),
            Some(_) => Ok(Self::Sector(Sector2::from_json(v)?)),
            None => Err(Error::Parse("cone needs a \"kind\"".into())),
        }
    }
}
