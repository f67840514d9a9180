use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::bernoulli::bernoulli;
use super::rational::rat_int;
use super::{BigReal, Float, PrecisionContext};
use crate::error::{Error, Result};

/// `ψ(z)` for rational `z > 0`.
///
/// The argument is pushed up with `ψ(z) = ψ(z + 1) - 1/z` (the reciprocals
/// summed exactly) until it reaches `max(20, working_digits / 2)`, then the
/// asymptotic series `ln w - 1/(2w) - sum B_2j / (2j w^2j)` is applied. Its
/// remainder is bounded by the first omitted term.
pub fn digamma(z: &BigRational, ctx: &PrecisionContext) -> Result<BigReal> {
    if !z.is_positive() {
        return Err(Error::Domain(format!("digamma needs z > 0, got {z}")));
    }
    let prec = ctx.bits() + 16;
    let threshold = 20f64.max(ctx.working_digits() as f64 / 2.0);
    let zf = z.to_f64().unwrap_or(f64::MAX);
    let shift = if zf >= threshold { 0 } else { (threshold - zf).ceil() as i64 };
    let mut recips = BigRational::zero();
    for i in 0..shift {
        recips += (z + rat_int(i)).recip();
    }
    let w = z + rat_int(shift);
    let wr = BigReal::from_rational(&w, prec);
    let mut sum = wr.ln() - (&wr * BigReal::from_i64(2, prec)).recip();
    let inv_w2 = (&wr * &wr).recip();
    let mut power = inv_w2.clone();
    let eps = Float::pow2(-(prec as i64));
    let mut j = 1u32;
    let remainder = loop {
        let c = bernoulli(2 * j)? / rat_int(2 * j as i64);
        let term = BigReal::from_rational(&c, prec) * &power;
        if term.upper_abs() < eps {
            break term.upper_abs();
        }
        if j > 400 {
            return Err(Error::accuracy("digamma asymptotic series did not settle", sum));
        }
        sum = sum - term;
        power = &power * &inv_w2;
        j += 1;
    };
    let value = sum - BigReal::from_rational(&recips, prec);
    Ok(value.with_added_err(&remainder).with_prec(ctx.bits()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::constants::ln2_reference;
    use crate::kernel::rational::rat;

    #[test]
    fn euler_gamma() {
        let ctx = PrecisionContext::new(30);
        let g = digamma(&rat(1, 1), &ctx).unwrap();
        assert_eq!(g.to_fixed_string(30), "-0.577215664901532860606512090082");
        let two = digamma(&rat(2, 1), &ctx).unwrap();
        let diff = two - g;
        assert!(diff.agrees_with(&BigReal::from_i64(1, ctx.bits()), 1));
    }

    #[test]
    fn duplication_at_three_halves() {
        let ctx = PrecisionContext::new(30);
        let p3 = digamma(&rat(3, 1), &ctx).unwrap();
        let a = digamma(&rat(3, 2), &ctx).unwrap();
        let b = digamma(&rat(2, 1), &ctx).unwrap();
        let half = BigReal::from_rational(&rat(1, 2), ctx.bits());
        let rhs = &half * &(a + b) + ln2_reference(&ctx);
        assert!(p3.agrees_with(&rhs, 1));
    }

    #[test]
    fn poles_rejected() {
        let ctx = PrecisionContext::new(10);
        assert!(digamma(&rat(0, 1), &ctx).is_err());
        assert!(digamma(&rat(-3, 2), &ctx).is_err());
    }
}
