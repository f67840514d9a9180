//! Binary floating-point numbers with an arbitrary-size mantissa.
//!
//! A [`Float`] is `man * 2^exp`. Rounding operations take a precision in bits
//! and truncate the mantissa toward zero, so one rounding step perturbs a
//! result `r` by less than `|r| * 2^(1 - prec)`. Error accounting on top of
//! these values lives in [`BigReal`](super::BigReal).

use std::cmp::Ordering;
use std::fmt;
use std::sync::Mutex;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, Default)]
pub struct Float {
    man: BigInt,
    exp: i64,
}

impl fmt::Debug for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Float({})", self.to_sci_string(20))
    }
}

impl fmt::Display for Float {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sig = f.precision().unwrap_or(20);
        f.write_str(&self.to_sci_string(sig))
    }
}

fn shift_toward_zero(man: &BigInt, s: u64) -> BigInt {
    if man.is_negative() {
        -((-man) >> s)
    } else {
        man >> s
    }
}

impl Float {
    pub fn zero() -> Self {
        Float { man: BigInt::zero(), exp: 0 }
    }

    pub fn one() -> Self {
        Float::from_i64(1)
    }

    pub fn from_i64(v: i64) -> Self {
        Float::from_bigint(BigInt::from(v))
    }

    pub fn from_bigint(v: BigInt) -> Self {
        Float { man: v, exp: 0 }.strip()
    }

    /// Exact conversion; every finite `f64` is dyadic.
    pub fn from_f64(v: f64) -> Self {
        assert!(v.is_finite(), "non-finite f64 {v}");
        if v == 0.0 {
            return Float::zero();
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 0 { 1i64 } else { -1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & 0x000f_ffff_ffff_ffff;
        let (m, e) = if raw_exp == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        Float { man: BigInt::from(m) * sign, exp: e }.strip()
    }

    /// `num / den` rounded to `prec` bits.
    pub fn from_ratio(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        assert!(!den.is_zero(), "division by zero");
        if num.is_zero() {
            return Float::zero();
        }
        let shift = prec as i64 + 2 + den.bits() as i64 - num.bits() as i64;
        let q = if shift >= 0 {
            (num << shift as u64) / den
        } else {
            num / (den << (-shift) as u64)
        };
        Float::round_parts(q, -shift, prec)
    }

    pub fn from_rational(q: &BigRational, prec: u32) -> Self {
        Float::from_ratio(q.numer(), q.denom(), prec)
    }

    /// Exact rational value of this float.
    pub fn to_rational(&self) -> BigRational {
        if self.exp >= 0 {
            BigRational::from_integer(&self.man << self.exp as u64)
        } else {
            BigRational::new(self.man.clone(), BigInt::one() << (-self.exp) as u64)
        }
    }

    fn strip(self) -> Self {
        if self.man.is_zero() {
            return Float::zero();
        }
        let tz = self.man.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            self
        } else {
            Float { man: &self.man >> tz, exp: self.exp + tz as i64 }
        }
    }

    fn round_parts(man: BigInt, exp: i64, prec: u32) -> Self {
        let b = man.bits();
        if b > prec as u64 {
            let s = b - prec as u64;
            Float { man: shift_toward_zero(&man, s), exp: exp + s as i64 }
        } else if man.is_zero() {
            Float::zero()
        } else {
            Float { man, exp }
        }
    }

    /// Truncate to `prec` bits.
    pub fn round(&self, prec: u32) -> Self {
        Float::round_parts(self.man.clone(), self.exp, prec)
    }

    pub fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    pub fn signum(&self) -> i32 {
        match self.man.sign() {
            Sign::Minus => -1,
            Sign::NoSign => 0,
            Sign::Plus => 1,
        }
    }

    /// Smallest `m` with `|self| < 2^m`. Meaningless for zero.
    pub fn msb(&self) -> i64 {
        self.man.bits() as i64 + self.exp
    }

    pub fn neg(&self) -> Self {
        Float { man: -&self.man, exp: self.exp }
    }

    pub fn abs(&self) -> Self {
        Float { man: self.man.abs(), exp: self.exp }
    }

    /// Exact multiplication by `2^k`.
    pub fn mul_2k(&self, k: i64) -> Self {
        if self.is_zero() {
            return Float::zero();
        }
        Float { man: self.man.clone(), exp: self.exp + k }
    }

    /// `2^k`.
    pub fn pow2(k: i64) -> Self {
        Float { man: BigInt::one(), exp: k }
    }

    /// Upper bound on the truncation error of rounding `self` to `prec` bits.
    pub fn ulp(&self, prec: u32) -> Self {
        if self.is_zero() {
            return Float::zero();
        }
        Float::pow2(self.msb() - prec as i64)
    }

    pub fn add(&self, other: &Float, prec: u32) -> Self {
        if self.is_zero() {
            return other.round(prec);
        }
        if other.is_zero() {
            return self.round(prec);
        }
        let (ma, mb) = (self.msb(), other.msb());
        let gap = prec as i64 + 2;
        if ma > mb + gap {
            return self.round(prec);
        }
        if mb > ma + gap {
            return other.round(prec);
        }
        let e = self.exp.min(other.exp);
        let a = &self.man << (self.exp - e) as u64;
        let b = &other.man << (other.exp - e) as u64;
        Float::round_parts(a + b, e, prec)
    }

    pub fn sub(&self, other: &Float, prec: u32) -> Self {
        self.add(&other.neg(), prec)
    }

    pub fn mul(&self, other: &Float, prec: u32) -> Self {
        if self.is_zero() || other.is_zero() {
            return Float::zero();
        }
        Float::round_parts(&self.man * &other.man, self.exp + other.exp, prec)
    }

    pub fn mul_i64(&self, k: i64, prec: u32) -> Self {
        Float::round_parts(&self.man * BigInt::from(k), self.exp, prec)
    }

    pub fn div(&self, other: &Float, prec: u32) -> Self {
        assert!(!other.is_zero(), "Float division by zero");
        if self.is_zero() {
            return Float::zero();
        }
        let shift = prec as i64 + 2 + other.man.bits() as i64 - self.man.bits() as i64;
        let q = if shift >= 0 {
            (&self.man << shift as u64) / &other.man
        } else {
            &self.man / (&other.man << (-shift) as u64)
        };
        Float::round_parts(q, self.exp - other.exp - shift, prec)
    }

    pub fn div_i64(&self, k: i64, prec: u32) -> Self {
        self.div(&Float::from_i64(k), prec)
    }

    pub fn recip(&self, prec: u32) -> Self {
        Float::one().div(self, prec)
    }

    pub fn sqrt(&self, prec: u32) -> Self {
        assert!(!self.is_negative(), "sqrt of negative Float");
        if self.is_zero() {
            return Float::zero();
        }
        let bits = self.man.bits() as i64;
        let mut s = (2 * prec as i64 + 4 - bits).max(0);
        if (self.exp - s).rem_euclid(2) != 0 {
            s += 1;
        }
        let m = (&self.man << s as u64).sqrt();
        Float::round_parts(m, (self.exp - s) / 2, prec)
    }

    pub fn powi(&self, n: i64, prec: u32) -> Self {
        if n == 0 {
            return Float::one();
        }
        let wp = prec + 8 + 64 - (n.unsigned_abs()).leading_zeros();
        let mut base = self.round(wp);
        let mut acc = Float::one();
        let mut k = n.unsigned_abs();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base, wp);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base, wp);
            }
        }
        if n < 0 {
            acc.recip(prec)
        } else {
            acc.round(prec)
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let b = self.man.bits();
        let (m, e) = if b > 60 {
            let s = b - 60;
            (shift_toward_zero(&self.man, s), self.exp + s as i64)
        } else {
            (self.man.clone(), self.exp)
        };
        let mf = m.to_f64().unwrap_or(0.0);
        let e = e.clamp(-2200, 2200) as i32;
        // split to avoid intermediate underflow
        mf * 2f64.powi(e / 2) * 2f64.powi(e - e / 2)
    }

    /// Integer part, truncated toward zero.
    pub fn trunc_to_bigint(&self) -> BigInt {
        if self.exp >= 0 {
            &self.man << self.exp as u64
        } else {
            shift_toward_zero(&self.man, (-self.exp) as u64)
        }
    }

    fn cmp_value(&self, other: &Float) -> Ordering {
        let (sa, sb) = (self.signum(), other.signum());
        if sa != sb {
            return sa.cmp(&sb);
        }
        if sa == 0 {
            return Ordering::Equal;
        }
        let mag = {
            let (ma, mb) = (self.msb(), other.msb());
            if ma != mb {
                ma.cmp(&mb)
            } else {
                let e = self.exp.min(other.exp);
                let a = self.man.abs() << (self.exp - e) as u64;
                let b = other.man.abs() << (other.exp - e) as u64;
                a.cmp(&b)
            }
        };
        if sa > 0 {
            mag
        } else {
            mag.reverse()
        }
    }

    pub fn max(self, other: Float) -> Float {
        if self >= other {
            self
        } else {
            other
        }
    }

    /// `round(|self| * 10^k)` as a nonnegative integer, ties away from zero.
    fn scaled_decimal(&self, k: i64) -> BigInt {
        let mut num = self.man.abs();
        let mut den = BigInt::one();
        if k >= 0 {
            num *= num_traits::pow(BigInt::from(10), k as usize);
        } else {
            den *= num_traits::pow(BigInt::from(10), (-k) as usize);
        }
        if self.exp >= 0 {
            num <<= self.exp as u64;
        } else {
            den <<= (-self.exp) as u64;
        }
        let twice: BigInt = num * 2 + &den;
        twice.div_floor(&(den * 2))
    }

    /// Scientific notation with `sig` significant digits, e.g. `1.2020e0`.
    pub fn to_sci_string(&self, sig: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let sig = sig.max(1);
        let e10 = ((self.msb() - 1) as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let mut k = sig as i64 - 1 - e10;
        let mut n = self.scaled_decimal(k);
        loop {
            let len = n.to_string().len();
            if len > sig {
                k -= 1;
                n = self.scaled_decimal(k);
                if n.to_string().len() <= sig {
                    break;
                }
            } else if len < sig {
                k += 1;
                n = self.scaled_decimal(k);
                if n.to_string().len() >= sig {
                    break;
                }
            } else {
                break;
            }
        }
        let digits = n.to_string();
        let exponent = digits.len() as i64 - 1 - k;
        let sign = if self.is_negative() { "-" } else { "" };
        if digits.len() == 1 {
            format!("{sign}{digits}e{exponent}")
        } else {
            format!("{sign}{}.{}e{exponent}", &digits[..1], &digits[1..])
        }
    }

    /// Fixed-point notation with `frac` digits after the decimal point.
    pub fn to_fixed_string(&self, frac: usize) -> String {
        let n = self.scaled_decimal(frac as i64);
        let mut digits = n.to_string();
        if digits.len() <= frac {
            digits = format!("{}{}", "0".repeat(frac + 1 - digits.len()), digits);
        }
        let split = digits.len() - frac;
        let sign = if self.is_negative() && !n.is_zero() { "-" } else { "" };
        if frac == 0 {
            format!("{sign}{digits}")
        } else {
            format!("{sign}{}.{}", &digits[..split], &digits[split..])
        }
    }

    /// `sum_{k odd} t^k / k`, accurate to about `2^-wp` for `|t| <= 1/2`.
    fn atanh_series(t: &Float, wp: u32) -> Float {
        if t.is_zero() {
            return Float::zero();
        }
        let t2 = t.mul(t, wp);
        let mut power = t.clone();
        let mut sum = t.clone();
        let cutoff = t.msb() - wp as i64 - 4;
        let mut k = 3i64;
        loop {
            power = power.mul(&t2, wp);
            if power.is_zero() || power.msb() < cutoff {
                break;
            }
            let term = power.div_i64(k, wp);
            sum = sum.add(&term, wp);
            k += 2;
        }
        sum
    }

    pub fn exp(&self, prec: u32) -> Float {
        if self.is_zero() {
            return Float::one();
        }
        let xf = self.to_f64();
        assert!(xf.abs() < 1e15, "exp argument out of range: {xf}");
        let n = (xf / std::f64::consts::LN_2).round() as i64;
        let nbits = 64 - n.unsigned_abs().leading_zeros();
        let reduce = 8 + ((prec as f64).sqrt() / 2.0) as u32;
        let wp = prec + 40 + reduce + nbits;
        let ln2 = ln2(wp + nbits);
        let r = self.sub(&ln2.mul_i64(n, wp + nbits), wp).mul_2k(-(reduce as i64));
        let cutoff = -(wp as i64) - 4;
        let mut sum = Float::one();
        let mut term = Float::one();
        let mut i = 1i64;
        loop {
            term = term.mul(&r, wp).div_i64(i, wp);
            if term.is_zero() || term.msb() < cutoff {
                break;
            }
            sum = sum.add(&term, wp);
            i += 1;
        }
        for _ in 0..reduce {
            sum = sum.mul(&sum, wp);
        }
        sum.mul_2k(n).round(prec)
    }

    /// Natural logarithm of a positive value.
    pub fn ln(&self, prec: u32) -> Float {
        assert!(self.signum() > 0, "ln of non-positive Float");
        let mut e = self.msb();
        let mut m = self.mul_2k(-e);
        // m in [1/2, 1); move to [1/sqrt 2, sqrt 2)
        if m.mul(&m, prec + 8) < Float::pow2(-1) {
            m = m.mul_2k(1);
            e -= 1;
        }
        let ebits = 64 - e.unsigned_abs().leading_zeros();
        let wp = prec + 40 + ebits;
        let one = Float::one();
        let dist = m.sub(&one, wp);
        let mut halvings = 0u32;
        if wp > 150 && !dist.is_zero() && dist.msb() > -4 {
            halvings = 3;
            for _ in 0..halvings {
                m = m.sqrt(wp + 8);
            }
        }
        let y = m.sub(&one, wp + 8).div(&m.add(&one, wp + 8), wp + 8);
        let ln_m = Float::atanh_series(&y, wp + 8).mul_2k(1 + halvings as i64);
        if e == 0 {
            ln_m.round(prec)
        } else {
            ln_m.add(&ln2(wp).mul_i64(e, wp), wp).round(prec)
        }
    }

    /// `ln(1 + self)`, accurate for small arguments.
    pub fn ln1p(&self, prec: u32) -> Float {
        if self.is_zero() {
            return Float::zero();
        }
        if self.msb() <= -2 {
            let wp = prec + 16;
            let t = self.div(&Float::from_i64(2).add(self, wp), wp);
            Float::atanh_series(&t, wp).mul_2k(1).round(prec)
        } else {
            self.add(&Float::one(), prec + 64).ln(prec)
        }
    }

    /// `self^y` for positive `self`.
    pub fn pow(&self, y: &Float, prec: u32) -> Float {
        if y.is_zero() {
            return Float::one();
        }
        let mag = self.ln(prec + 16).mul(y, prec + 16);
        let extra = mag.msb().max(0) as u32;
        self.ln(prec + 16 + extra).mul(y, prec + 16 + extra).exp(prec)
    }
}

impl PartialEq for Float {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(other) == Ordering::Equal
    }
}

impl Eq for Float {}

impl PartialOrd for Float {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Float {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cmp_value(other)
    }
}

struct ConstCache {
    prec: u32,
    value: Float,
}

static LN2_CACHE: Mutex<Option<ConstCache>> = Mutex::new(None);

/// `ln 2` to `prec` bits, from `2 atanh(1/3)`.
pub fn ln2(prec: u32) -> Float {
    let mut guard = LN2_CACHE.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(c) = guard.as_ref() {
        if c.prec >= prec + 8 {
            return c.value.round(prec);
        }
    }
    let wp = (prec + 64).max(guard.as_ref().map_or(0, |c| c.prec * 2));
    let third = Float::from_ratio(&BigInt::one(), &BigInt::from(3), wp + 8);
    let value = Float::atanh_series(&third, wp + 8).mul_2k(1).round(wp);
    let out = value.round(prec);
    *guard = Some(ConstCache { prec: wp, value });
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const P: u32 = 200;

    fn close(a: &Float, b: &Float, bits: i64) -> bool {
        let d = a.sub(b, P + 20);
        d.is_zero() || d.msb() < -bits
    }

    #[test]
    fn f64_round_trip() {
        for v in [1.0, -2.5, 0.1, 1e-300, 3.0e200, -7.0 / 3.0] {
            assert_eq!(Float::from_f64(v).to_f64(), v);
        }
    }

    #[test]
    fn ratio_and_decimal_output() {
        let third = Float::from_ratio(&BigInt::from(1), &BigInt::from(3), P);
        assert_eq!(third.to_fixed_string(10), "0.3333333333");
        assert_eq!(third.to_sci_string(5), "3.3333e-1");
        let x = Float::from_i64(-12345);
        assert_eq!(x.to_sci_string(3), "-1.23e4");
        assert_eq!(Float::from_f64(0.5).to_fixed_string(0), "1");
        assert_eq!(Float::from_i64(1).to_sci_string(1), "1e0");
    }

    #[test]
    fn exp_ln_inverse() {
        for v in [0.5, 1.0, 2.0, 10.0, 1e-12, 37.25, -3.5] {
            let x = Float::from_f64(v);
            let y = x.exp(P).ln(P);
            assert!(close(&x, &y, 180), "v={v}");
        }
    }

    #[test]
    fn known_constants() {
        let l = ln2(P);
        let s = l.to_fixed_string(40);
        assert_eq!(s, "0.6931471805599453094172321214581765680755");
        let e = Float::one().exp(P).to_fixed_string(40);
        assert_eq!(e, "2.7182818284590452353602874713526624977572");
        let r2 = Float::from_i64(2).sqrt(P).to_fixed_string(40);
        assert_eq!(r2, "1.4142135623730950488016887242096980785697");
    }

    #[test]
    fn ln1p_small_argument_is_relative_accurate() {
        let y = Float::pow2(-100);
        let l = y.ln1p(P);
        // ln(1+y) = y - y^2/2 + ...
        let expect = y.sub(&y.mul(&y, P).mul_2k(-1), P);
        assert!(close(&l, &expect, 380));
    }

    #[test]
    fn ordering() {
        let a = Float::from_f64(1.5);
        let b = Float::from_f64(-2.0);
        assert!(a > b);
        assert!(b.abs() > a);
        assert_eq!(Float::from_i64(4), Float::from_f64(4.0));
    }

    #[test]
    fn pow_matches_powi() {
        let x = Float::from_f64(1.75);
        let a = x.pow(&Float::from_i64(7), P);
        let b = x.powi(7, P);
        assert!(close(&a, &b, 185));
    }
}
