//! Reference constants computed independently of the series under test.

use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{BigReal, Float, PrecisionContext};

/// `atan(1/m) * 2^wp` in fixed point, truncated term by term.
/// Returns the value and the number of terms (each contributes at most one
/// unit of truncation error).
fn atan_recip_fixed(m: u64, wp: u32) -> (BigInt, u64) {
    let m2 = BigInt::from(m * m);
    let mut power = (BigInt::one() << wp as u64) / m;
    let mut sum = BigInt::zero();
    let mut k = 0u64;
    while !power.is_zero() {
        let term = &power / (2 * k + 1);
        if k.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        power /= &m2;
        k += 1;
    }
    (sum, k + 1)
}

static PI_CACHE: Mutex<Option<(u32, Float)>> = Mutex::new(None);

/// π to `prec` bits (truncated; error below `2^(2 - prec)`), via Machin's
/// formula `π = 16 atan(1/5) - 4 atan(1/239)`.
pub fn pi_float(prec: u32) -> Float {
    let mut guard = PI_CACHE.lock().unwrap_or_else(|e| e.into_inner());
    if let Some((p, v)) = guard.as_ref() {
        if *p >= prec + 8 {
            return v.round(prec);
        }
    }
    let wp = prec + 40;
    let (a, _) = atan_recip_fixed(5, wp);
    let (b, _) = atan_recip_fixed(239, wp);
    let fixed: BigInt = a * 16 - b * 4;
    let value = Float::from_bigint(fixed).mul_2k(-(wp as i64));
    *guard = Some((wp - 16, value.clone()));
    value.round(prec)
}

/// π at the working precision of `ctx`.
pub fn pi_reference(ctx: &PrecisionContext) -> BigReal {
    let prec = ctx.bits();
    let v = pi_float(prec);
    // fixed-point truncation (< 2^-(wp-10)) plus the final rounding
    BigReal::new(v, Float::pow2(-(prec as i64) + 4), prec)
}

/// `ln 2` at the working precision of `ctx`.
pub fn ln2_reference(ctx: &PrecisionContext) -> BigReal {
    let prec = ctx.bits();
    BigReal::new(super::float::ln2(prec), Float::pow2(-(prec as i64) + 3), prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pi_digits() {
        let ctx = PrecisionContext::new(30);
        let pi = pi_reference(&ctx);
        assert_eq!(pi.to_fixed_string(29), "3.14159265358979323846264338328");
        assert!(pi.err_f64() < 1e-40);
    }

    #[test]
    fn cached_and_fresh_agree() {
        let hi = pi_float(2000);
        let lo = pi_float(300);
        assert_eq!(hi.round(300), lo);
    }
}
