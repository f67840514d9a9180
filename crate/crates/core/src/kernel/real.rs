use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::Float;
use crate::error::{Error, Result};

const ERR_PREC: u32 = 62;

/// Round a nonnegative error quantity upward.
fn up(x: Float) -> Float {
    if x.is_zero() {
        return x;
    }
    let r = x.abs().round(ERR_PREC);
    r.add(&r.ulp(ERR_PREC), ERR_PREC + 2)
}

fn e_add(a: &Float, b: &Float) -> Float {
    up(a.add(b, ERR_PREC + 2))
}

fn e_mul(a: &Float, b: &Float) -> Float {
    up(a.mul(b, ERR_PREC + 2))
}

fn e_div(a: &Float, b: &Float) -> Float {
    up(a.div(b, ERR_PREC + 2))
}

/// Rounding allowance for a result rounded to `prec` bits; `slack` extra
/// bits cover library routines that are accurate to a few ulp.
fn rounding(r: &Float, prec: u32, slack: i64) -> Float {
    if r.is_zero() {
        Float::zero()
    } else {
        Float::pow2(r.msb() - prec as i64 + 1 + slack)
    }
}

/// An arbitrary-precision real together with a rigorous absolute error bound.
#[derive(Clone)]
pub struct BigReal {
    value: Float,
    err: Float,
    prec: u32,
}

impl fmt::Debug for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ± {}", self.value.to_sci_string(25), self.err.to_sci_string(3))
    }
}

impl fmt::Display for BigReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or(30);
        write!(f, "{} ± {}", self.value.to_sci_string(sig), self.err.to_sci_string(3))
    }
}

impl BigReal {
    pub fn new(value: Float, err: Float, prec: u32) -> Self {
        assert!(!err.is_negative(), "negative error bound");
        let value = value.round(prec);
        BigReal { value, err: up(err), prec }
    }

    /// A value known exactly (it must fit in `prec` bits, as small integers do).
    pub fn exact(value: Float, prec: u32) -> Self {
        let rounded = value.round(prec);
        let err = if rounded == value { Float::zero() } else { rounding(&value, prec, 0) };
        BigReal { value: rounded, err, prec }
    }

    pub fn zero(prec: u32) -> Self {
        BigReal { value: Float::zero(), err: Float::zero(), prec }
    }

    pub fn from_i64(v: i64, prec: u32) -> Self {
        BigReal::exact(Float::from_i64(v), prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        let value = Float::from_rational(q, prec);
        let exact = value.to_rational() == *q;
        let err = if exact { Float::zero() } else { rounding(&value, prec, 0) };
        BigReal { value, err, prec }
    }

    pub fn value(&self) -> &Float {
        &self.value
    }

    pub fn err(&self) -> &Float {
        &self.err
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn err_f64(&self) -> f64 {
        self.err.to_f64()
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero() && self.err.is_zero()
    }

    /// Same value at a different working precision.
    pub fn with_prec(&self, prec: u32) -> Self {
        let value = self.value.round(prec);
        let err = if value == self.value {
            self.err.clone()
        } else {
            e_add(&self.err, &rounding(&self.value, prec, 0))
        };
        BigReal { value, err, prec }
    }

    pub fn with_added_err(&self, extra: &Float) -> Self {
        BigReal { value: self.value.clone(), err: e_add(&self.err, &extra.abs()), prec: self.prec }
    }

    pub fn abs(&self) -> Self {
        BigReal { value: self.value.abs(), err: self.err.clone(), prec: self.prec }
    }

    /// `|value| + err`.
    pub fn upper_abs(&self) -> Float {
        e_add(&self.value.abs(), &self.err)
    }

    /// `|value| - err`, possibly negative.
    pub fn lower_abs(&self) -> Float {
        self.value.abs().sub(&self.err, self.prec + 8)
    }

    /// `|self - other|` of the central values.
    pub fn abs_diff(&self, other: &BigReal) -> Float {
        self.value.sub(&other.value, self.prec.max(other.prec) + 8).abs()
    }

    pub fn combined_err(&self, other: &BigReal) -> Float {
        e_add(&self.err, &other.err)
    }

    /// Whether the two enclosures overlap after widening both by `factor`.
    pub fn agrees_with(&self, other: &BigReal, factor: i64) -> bool {
        let slack = self.combined_err(other).mul_i64(factor, ERR_PREC);
        self.abs_diff(other) <= slack
    }

    pub fn try_div(&self, rhs: &BigReal) -> Result<BigReal> {
        let low = rhs.lower_abs();
        if low.signum() <= 0 {
            return Err(Error::Conditioning(format!(
                "division by an enclosure containing zero ({rhs:?})"
            )));
        }
        let prec = self.prec.max(rhs.prec);
        let value = self.value.div(&rhs.value, prec);
        // |a/b - A/B| <= (ea + |a/b| eb) / (|b| - eb)
        let num = e_add(&self.err, &e_mul(&value.abs(), &rhs.err));
        let err = e_add(&e_div(&num, &low), &rounding(&value, prec, 0));
        Ok(BigReal { value, err, prec })
    }

    pub fn recip(&self) -> BigReal {
        BigReal::from_i64(1, self.prec) / self
    }

    pub fn sqrt(&self) -> BigReal {
        assert!(!self.value.is_negative(), "sqrt of negative value");
        let value = self.value.sqrt(self.prec);
        let low = self.lower_abs();
        let prop = if self.err.is_zero() {
            Float::zero()
        } else if low.signum() > 0 {
            e_div(&self.err, &low.sqrt(ERR_PREC))
        } else {
            up(self.err.sqrt(ERR_PREC))
        };
        let err = e_add(&prop, &rounding(&value, self.prec, 0));
        BigReal { value, err, prec: self.prec }
    }

    pub fn exp(&self) -> BigReal {
        let value = self.value.exp(self.prec);
        let e = self.err.to_f64();
        let factor = if e <= 1.0 {
            e_mul(&self.err, &Float::from_i64(2))
        } else {
            Float::from_f64(e.exp())
        };
        let err = e_add(&e_mul(&value.abs(), &factor), &rounding(&value, self.prec, 2));
        BigReal { value, err, prec: self.prec }
    }

    pub fn ln(&self) -> BigReal {
        let low = self.lower_abs();
        assert!(
            self.value.signum() > 0 && low.signum() > 0,
            "ln of an enclosure reaching non-positive values"
        );
        let value = self.value.ln(self.prec);
        let err = e_add(&e_div(&self.err, &low), &rounding(&value, self.prec, 2));
        BigReal { value, err, prec: self.prec }
    }

    pub fn powi(&self, n: i64) -> BigReal {
        if n < 0 {
            return self.powi(-n).recip();
        }
        if n == 0 {
            return BigReal::from_i64(1, self.prec);
        }
        let value = self.value.powi(n, self.prec);
        // |(v+d)^n - v^n| <= n d (|v|+d)^(n-1)
        let prop = if self.err.is_zero() {
            Float::zero()
        } else {
            let base = self.upper_abs();
            let grown = up(base.powi(n - 1, ERR_PREC));
            e_mul(&e_mul(&self.err, &Float::from_i64(n)), &grown)
        };
        let err = e_add(&prop, &rounding(&value, self.prec, 2));
        BigReal { value, err, prec: self.prec }
    }

    /// `self^y` for a positive base and an exact rational exponent.
    pub fn pow_rational(&self, y: &BigRational) -> BigReal {
        if y.is_integer() {
            if let Some(n) = y.numer().to_i64() {
                return self.powi(n);
            }
        }
        let ln = self.ln();
        let y = BigReal::from_rational(y, self.prec + 16);
        let prod = &ln.with_prec(self.prec + 16) * &y;
        prod.exp().with_prec(self.prec)
    }

    pub fn to_sci_string(&self, sig: usize) -> String {
        self.value.to_sci_string(sig)
    }

    pub fn to_fixed_string(&self, frac: usize) -> String {
        self.value.to_fixed_string(frac)
    }
}

/// Precision large enough that a single add or multiply is exact.
const EXACT: u32 = u32::MAX / 4;

/// Rounds an exact result, returning the rounding allowance (zero if exact).
fn round_exact(exact: Float, prec: u32) -> (Float, Float) {
    let value = exact.round(prec);
    let err = if value == exact { Float::zero() } else { rounding(&value, prec, 0) };
    (value, err)
}

fn add_impl(a: &BigReal, b: &BigReal, negate_b: bool) -> BigReal {
    let prec = a.prec.max(b.prec);
    let far_apart = !a.value.is_zero()
        && !b.value.is_zero()
        && (a.value.msb() - b.value.msb()).abs() > 4 * prec as i64;
    // operands far apart in magnitude are rounded directly rather than
    // materialising a huge exact sum
    let p = if far_apart { prec } else { EXACT };
    let exact = if negate_b { a.value.sub(&b.value, p) } else { a.value.add(&b.value, p) };
    let (value, mut round) = round_exact(exact, prec);
    if far_apart {
        round = rounding(&value, prec, 0);
    }
    let err = e_add(&e_add(&a.err, &b.err), &round);
    BigReal { value, err, prec }
}

fn mul_impl(a: &BigReal, b: &BigReal) -> BigReal {
    let prec = a.prec.max(b.prec);
    let (value, mut err) = round_exact(a.value.mul(&b.value, EXACT), prec);
    if !a.err.is_zero() || !b.err.is_zero() {
        let cross = e_add(&e_mul(&a.value.abs(), &b.err), &e_mul(&b.value.abs(), &a.err));
        err = e_add(&e_add(&cross, &e_mul(&a.err, &b.err)), &err);
    }
    BigReal { value, err, prec }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $body:expr) => {
        impl $trait<&BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                let f: fn(&BigReal, &BigReal) -> BigReal = $body;
                f(self, rhs)
            }
        }
        impl $trait<BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&BigReal> for BigReal {
            type Output = BigReal;
            fn $method(self, rhs: &BigReal) -> BigReal {
                (&self).$method(rhs)
            }
        }
        impl $trait<BigReal> for &BigReal {
            type Output = BigReal;
            fn $method(self, rhs: BigReal) -> BigReal {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| add_impl(a, b, false));
forward_binop!(Sub, sub, |a, b| add_impl(a, b, true));
forward_binop!(Mul, mul, mul_impl);
forward_binop!(Div, div, |a, b| a.try_div(b).expect("BigReal division"));

impl Neg for BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        BigReal { value: self.value.neg(), err: self.err, prec: self.prec }
    }
}

impl Neg for &BigReal {
    type Output = BigReal;
    fn neg(self) -> BigReal {
        self.clone().neg()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::rat;

    const P: u32 = 160;

    #[test]
    fn exact_integers_have_zero_error() {
        let a = BigReal::from_i64(7, P);
        let b = BigReal::from_i64(5, P);
        let s = &a * &b - BigReal::from_i64(35, P);
        assert!(s.is_zero());
    }

    #[test]
    fn error_bounds_cover_true_value() {
        let third = BigReal::from_rational(&rat(1, 3), P);
        assert!(!third.err().is_zero());
        let sum = &(&third + &third) + &third;
        let one = BigReal::from_i64(1, P);
        assert!(sum.abs_diff(&one) <= *sum.err());
    }

    #[test]
    fn division_guard() {
        let z = BigReal::new(Float::zero(), Float::from_f64(1e-10), P);
        assert!(BigReal::from_i64(1, P).try_div(&z).is_err());
    }

    #[test]
    fn transcendental_propagation() {
        let x = BigReal::from_rational(&rat(3, 2), P);
        let back = x.exp().ln();
        assert!(back.agrees_with(&x, 1));
        let r = BigReal::from_i64(2, P).pow_rational(&rat(1, 2));
        let s = BigReal::from_i64(2, P).sqrt();
        assert!(r.agrees_with(&s, 1));
    }
}
