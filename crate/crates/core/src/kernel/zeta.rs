//! Hurwitz and Riemann zeta values by Euler–Maclaurin summation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

use super::bernoulli::bernoulli;
use super::rational::{factorial, rat_int};
use super::{BigReal, Float, PrecisionContext};
use crate::error::{Error, Result};

/// `x^(-s)` for positive rational `x`.
pub(crate) fn rational_power_neg(x: &BigRational, s: &BigRational, prec: u32) -> BigReal {
    BigReal::from_rational(x, prec + 8).pow_rational(&-s).with_prec(prec)
}

/// `sum_{n>=0} (n + a)^(-s)` for rational `s > 1` and `a > 0`.
///
/// Terms are summed directly until the shifted argument is large enough for
/// the asymptotic expansion to reach working precision; the remainder after
/// the last Bernoulli correction is bounded by that correction's magnitude
/// (the derivatives of `x^(-s)` have constant sign).
pub fn hurwitz(s: &BigRational, a: &BigRational, ctx: &PrecisionContext) -> Result<BigReal> {
    if s <= &BigRational::one() {
        return Err(Error::Domain(format!("hurwitz zeta needs s > 1, got {s}")));
    }
    if !a.is_positive() {
        return Err(Error::Domain(format!("hurwitz zeta needs a > 0, got {a}")));
    }
    let prec = ctx.bits() + 16;
    let sf = s.to_f64().unwrap_or(f64::MAX);
    let af = a.to_f64().unwrap_or(f64::MAX);
    let need = prec as f64 * std::f64::consts::LN_2 / (2.0 * std::f64::consts::PI) * 1.2
        + sf / std::f64::consts::PI
        + 5.0;
    let shift = if af >= need { 0 } else { (need - af).ceil() as i64 };

    let mut sum = BigReal::zero(prec);
    for n in 0..shift {
        sum = sum + rational_power_neg(&(a + rat_int(n)), s, prec);
    }

    let big_a = a + rat_int(shift);
    let a_real = BigReal::from_rational(&big_a, prec);
    // p = A^(1-s)
    let p = BigReal::from_rational(&big_a, prec + 8)
        .pow_rational(&(BigRational::one() - s))
        .with_prec(prec);
    let s_real = BigReal::from_rational(s, prec);
    let one = BigReal::from_i64(1, prec);
    sum = sum + &p / (&s_real - &one);
    let a_neg_s = &p / &a_real;
    sum = sum + &a_neg_s / BigReal::from_i64(2, prec);

    let inv_a2 = (&a_real * &a_real).recip();
    let threshold = Float::pow2(-(prec as i64));
    // rising factorial s (s+1) ... (s+2j-2), kept exact
    let mut rising = s.clone();
    let mut power = &p * &inv_a2; // A^(1-s-2j) at j = 1
    let mut last_mag = Float::zero();
    let mut j = 1u32;
    loop {
        let coeff = bernoulli(2 * j)? * &rising
            / BigRational::from_integer(factorial(2 * j as u64));
        let term = BigReal::from_rational(&coeff, prec) * &power;
        let mag = term.upper_abs();
        if j > 2 && mag > last_mag {
            return Err(Error::accuracy(
                "Euler–Maclaurin terms stopped decreasing",
                sum.with_added_err(&last_mag),
            ));
        }
        sum = sum + term;
        last_mag = mag;
        if last_mag < threshold {
            break;
        }
        let jr = rat_int(j as i64 * 2);
        rising = rising * (s + &jr - BigRational::one()) * (s + &jr);
        power = &power * &inv_a2;
        j += 1;
    }
    Ok(sum.with_added_err(&last_mag).with_prec(ctx.bits()))
}

/// `ζ(s)` for rational `s > 1`.
pub fn zeta_reference(s: &BigRational, ctx: &PrecisionContext) -> Result<BigReal> {
    if s <= &BigRational::one() {
        return Err(Error::Domain(format!("zeta needs s > 1, got {s}")));
    }
    hurwitz(s, &BigRational::one(), ctx)
}

/// `ζ(n)` for an integer `n >= 2`.
pub fn zeta_int(n: i64, ctx: &PrecisionContext) -> Result<BigReal> {
    zeta_reference(&BigRational::from_integer(BigInt::from(n)), ctx)
}
