pub mod error;
pub mod number;
pub mod polynomial;
pub mod univariate;
pub mod linalg;
pub mod characteristic;
pub mod cones;
pub mod domain;
pub mod numeric;
pub mod localization;
pub mod norms;
pub mod sigma;
pub mod io;
pub mod analysis;
pub mod svg;

pub use error::{Error, Result};
pub use number::{ComplexRational, Rational};
pub use polynomial::{MultiIndex, Polynomial};
