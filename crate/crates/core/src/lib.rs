//! Koecher-type acceleration of zeta-like series, with exact and
//! arbitrary-precision verification of the resulting Markov–Apéry identities.

pub mod error;
pub mod euler_sums;
pub mod identities;
pub mod kernel;
pub mod markov_apery;
pub mod pi_powers;
pub mod report;
pub mod sequences;
pub mod transform;
pub mod truncation;

pub use error::{Error, Result};
pub use kernel::{BigReal, Float, IntPolynomial, PrecisionContext};
pub use report::{IdentityReport, ReportStatus};
pub use sequences::ZSequence;
pub use transform::TransformInstance;
pub use truncation::{SeriesValue, TailRule};
