//! Double-exponential quadrature (tanh-sinh on finite intervals, exp-sinh
//! on half-lines) with level doubling.
//!
//! The error estimate is ten times the change between the last two levels.
//! It is heuristic; callers cross-check against independent oracles.

use num_rational::BigRational;

use super::constants::pi_float;
use super::{BigReal, Float, PrecisionContext};
use crate::error::{Error, Result};

const MAX_LEVEL: u32 = 12;
const MIN_LEVEL: u32 = 3;

/// Integrand evaluated at a node, at the given precision in bits.
pub trait Integrand: Fn(&Float, u32) -> Float {}
impl<F: Fn(&Float, u32) -> Float> Integrand for F {}

struct Rule {
    prec: u32,
    half_pi: Float,
}

impl Rule {
    fn new(prec: u32) -> Self {
        Rule { prec, half_pi: pi_float(prec + 8).mul_2k(-1) }
    }

    /// `(exp(t), exp(-t))`.
    fn exps(&self, t: &Float) -> (Float, Float) {
        let e = t.exp(self.prec);
        let r = e.recip(self.prec);
        (e, r)
    }

    fn sinh_cosh(&self, t: &Float) -> (Float, Float) {
        let (e, r) = self.exps(t);
        (e.sub(&r, self.prec).mul_2k(-1), e.add(&r, self.prec).mul_2k(-1))
    }
}

fn t_max(prec: u32) -> f64 {
    (2.0 * (prec as f64 + 20.0) * std::f64::consts::LN_2 / std::f64::consts::PI).asinh()
}

/// Runs level doubling over `t` in `[lo, hi]`. `node(t)` returns the weighted
/// integrand value `w(t) f(x(t))` (zero if negligible).
fn level_doubling(
    lo: f64,
    hi: f64,
    prec: u32,
    tol: &Float,
    node: &dyn Fn(&Float) -> Float,
) -> Result<BigReal> {
    let t_at = |j: i64, level: u32| Float::from_i64(j).mul_2k(-(level as i64));
    // level 0 uses step 1 over the integer grid
    let mut raw = Float::zero();
    let mut count = 0u64;
    let mut peak = Float::zero();
    let add = |raw: &mut Float, v: Float, peak: &mut Float, count: &mut u64| {
        let a = v.abs();
        if a > *peak {
            *peak = a;
        }
        *raw = raw.add(&v, prec + 16);
        *count += 1;
    };
    for j in (lo.ceil() as i64)..=(hi.floor() as i64) {
        let v = node(&t_at(j, 0));
        add(&mut raw, v, &mut peak, &mut count);
    }
    let mut prev = raw.clone();
    for level in 1..=MAX_LEVEL {
        let scale = 1i64 << level;
        let first = (lo * scale as f64).ceil() as i64;
        let last = (hi * scale as f64).floor() as i64;
        let mut j = if first % 2 == 0 { first + 1 } else { first };
        while j <= last {
            let v = node(&t_at(j, level));
            add(&mut raw, v, &mut peak, &mut count);
            j += 2;
        }
        let current = raw.mul_2k(-(level as i64));
        let diff = current.sub(&prev, prec).abs().mul_i64(10, 64);
        // accumulated rounding of the node sum
        let rounding = peak.mul_i64(count as i64 + 1, 64).mul_2k(-(prec as i64) + 4);
        let err = diff.add(&rounding, 64);
        if level >= MIN_LEVEL && err <= *tol {
            return Ok(BigReal::new(current, err, prec));
        }
        if level == MAX_LEVEL {
            return Err(Error::accuracy(
                format!("quadrature did not converge after {MAX_LEVEL} levels"),
                BigReal::new(current, err, prec),
            ));
        }
        prev = current;
    }
    unreachable!()
}

/// `∫_a^b f(x) dx` by tanh-sinh quadrature.
pub fn de_quadrature<F: Integrand>(
    f: F,
    a: &BigRational,
    b: &BigRational,
    ctx: &PrecisionContext,
) -> Result<BigReal> {
    if a >= b {
        return Err(Error::Domain(format!("empty interval [{a}, {b}]")));
    }
    let prec = ctx.bits() + 16;
    let rule = Rule::new(prec);
    let fa = Float::from_rational(a, prec);
    let fb = Float::from_rational(b, prec);
    let width = fb.sub(&fa, prec);
    let tm = t_max(prec);
    let node = |t: &Float| -> Float {
        let (sh, ch) = rule.sinh_cosh(t);
        let u = rule.half_pi.mul(&sh, prec);
        // q = 1 / (exp(2u) + 1); the abscissa sits at distance width*q from an end
        let (tanh_near_a, qv) = if u.is_negative() {
            let e = u.neg().mul_2k(1).exp(prec);
            (true, Float::one().div(&e.add(&Float::one(), prec), prec))
        } else {
            let e = u.mul_2k(1).exp(prec);
            (false, Float::one().div(&e.add(&Float::one(), prec), prec))
        };
        let offset = width.mul(&qv, prec);
        let x = if tanh_near_a { fa.add(&offset, prec) } else { fb.sub(&offset, prec) };
        if x <= fa || x >= fb {
            return Float::zero();
        }
        let one_minus_q = Float::one().sub(&qv, prec);
        let w = width
            .mul(&rule.half_pi, prec)
            .mul(&ch, prec)
            .mul(&qv, prec)
            .mul(&one_minus_q, prec)
            .mul_2k(1);
        w.mul(&f(&x, prec), prec)
    };
    let tol = ctx.tolerance();
    level_doubling(-tm, tm, prec, &tol, &node).map(|r| r.with_prec(ctx.bits()))
}

/// `∫_a^∞ f(x) dx` by exp-sinh quadrature, `x = a + exp((π/2) sinh t)`.
///
/// The integrand must decay; the upper end of the `t` range is placed just
/// past the last scan point where the weighted integrand is above working
/// precision.
pub fn de_quadrature_semi_infinite<F: Integrand>(
    f: F,
    a: &BigRational,
    ctx: &PrecisionContext,
) -> Result<BigReal> {
    let prec = ctx.bits() + 16;
    let rule = Rule::new(prec);
    let fa = Float::from_rational(a, prec);
    let node = |t: &Float| -> Float {
        let (sh, ch) = rule.sinh_cosh(t);
        let u = rule.half_pi.mul(&sh, prec);
        let e = u.exp(prec);
        let x = fa.add(&e, prec);
        if x <= fa {
            return Float::zero();
        }
        let w = rule.half_pi.mul(&ch, prec).mul(&e, prec);
        w.mul(&f(&x, prec), prec)
    };
    let lo = -t_max(prec);
    // scan the whole range: integrands peaking far out are quiet near 0
    let eps = Float::pow2(-(prec as i64) - 10);
    let mut last_loud = None;
    let mut t = 0.0f64;
    while t < 7.0 {
        t += 0.125;
        if node(&Float::from_f64(t)).abs() >= eps {
            last_loud = Some(t);
        }
    }
    let hi = match last_loud {
        Some(t) if t >= 7.0 => {
            return Err(Error::Domain("integrand does not decay on the half-line".into()));
        }
        Some(t) => t + 0.375,
        None => 0.375,
    };
    let tol = ctx.tolerance();
    level_doubling(lo, hi, prec, &tol, &node).map(|r| r.with_prec(ctx.bits()))
}
