//! Arbitrary-precision substrate shared by every other module.

mod bernoulli;
mod constants;
mod context;
mod digamma;
pub(crate) mod float;
mod poly;
mod quadrature;
pub mod rational;
mod real;
mod zeta;

pub use bernoulli::{bernoulli, zeta_even_closed_form};
pub use constants::{ln2_reference, pi_float, pi_reference};
pub use context::{guard_digits_for, pow10_neg, PrecisionContext, DEFAULT_MAX_TERMS};
pub use digamma::digamma;
pub use float::Float;
pub use poly::{interpolate_rational, mul_linear, product_of_linear, IntPolynomial};
pub use quadrature::{de_quadrature, de_quadrature_semi_infinite, Integrand};
pub use real::BigReal;
pub use zeta::{hurwitz, zeta_int, zeta_reference};
#[allow(unused_imports)]
pub(crate) use zeta::rational_power_neg;
