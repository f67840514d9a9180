//! Alternating Euler sums, hyperharmonic numbers and the digamma generating
//! function built from them.
//!
//! Sums of the shape `ζ(k+2 bar, {1}^(m-1))` are evaluated through the integral
//! representation
//!
//! ```text
//! ζ(k+2 bar, {1}^(m-1)) = (-1)^m / (m! k!) ∫_0^∞ t^k log(1 + e^-t)^m dt
//! ```
//!
//! (the `x = e^-t` form of the `∫_0^1 (log x)^k log(1+x)^m dx/x` integral).
//! Nested direct summation is kept as a low-precision oracle.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::kernel::rational::{factorial, rat, rat_int};
use crate::kernel::{
    de_quadrature, de_quadrature_semi_infinite, digamma, BigReal, Float,
    PrecisionContext,
};

/// `H_K(m) = sum_{K >= k_1 > ... > k_m >= 1} 1/(k_1 ... k_m)` for all
/// `K <= k_max`, `m <= depth_max`.
#[derive(Clone, Debug, PartialEq)]
pub struct HyperharmonicTable {
    pub k_max: usize,
    pub depth_max: usize,
    values: Vec<Vec<BigRational>>,
}

impl HyperharmonicTable {
    pub fn build(k_max: usize, depth_max: usize) -> Self {
        let mut values: Vec<Vec<BigRational>> = Vec::with_capacity(k_max + 1);
        let mut row = vec![BigRational::zero(); depth_max + 1];
        row[0] = BigRational::one();
        values.push(row);
        for k in 1..=k_max {
            let prev = &values[k - 1];
            let inv = rat(1, k as i64);
            let mut row = prev.clone();
            for m in 1..=depth_max {
                row[m] = &prev[m] + &prev[m - 1] * &inv;
            }
            values.push(row);
        }
        HyperharmonicTable { k_max, depth_max, values }
    }

    pub fn get(&self, k: usize, m: usize) -> Option<&BigRational> {
        self.values.get(k).and_then(|r| r.get(m))
    }

    pub fn row(&self, k: usize) -> &[BigRational] {
        &self.values[k]
    }
}

/// The hyperharmonic number `H_K(m)`, with `H_K(0) = 1`.
pub fn hyperharmonic(k: usize, m: usize) -> Result<BigRational> {
    if k == 0 {
        return Err(Error::Domain("hyperharmonic needs K >= 1".into()));
    }
    if m > k {
        return Ok(BigRational::zero());
    }
    let t = HyperharmonicTable::build(k, m);
    Ok(t.values[k][m].clone())
}

/// `H_K(m)` by enumerating the nested sum; reference for the recurrence.
pub fn hyperharmonic_enumerated(k: usize, m: usize) -> BigRational {
    fn walk(top: usize, left: usize) -> BigRational {
        if left == 0 {
            return BigRational::one();
        }
        (left..=top).map(|j| rat(1, j as i64) * walk(j - 1, left - 1)).sum()
    }
    walk(k, m)
}

/// Coefficients (low to high) of `(-1)^(k-1) (k-1)! sum_ν (-1)^ν H_{k-1}(ν) x^ν`,
/// which expands `prod_{l=1}^{k-1} (x - l)`.
pub fn falling_product_via_hyperharmonic(k: usize) -> Result<Vec<BigInt>> {
    if k == 0 {
        return Err(Error::Domain("need k >= 1".into()));
    }
    let n = k - 1;
    let table = HyperharmonicTable::build(n.max(1), n);
    let scale = BigRational::from_integer(factorial(n as u64));
    let sign = |e: usize| if e.is_multiple_of(2) { BigRational::one() } else { -BigRational::one() };
    let row: &[BigRational] = if n == 0 { &[] } else { table.row(n) };
    (0..=n)
        .map(|nu| {
            let h = if n == 0 { BigRational::one() } else { row[nu].clone() };
            let c = sign(n) * sign(nu) * &scale * h;
            if c.is_integer() {
                Ok(c.to_integer())
            } else {
                Err(Error::Consistency(format!("non-integral coefficient {c}")))
            }
        })
        .collect()
}

/// A nested sum index; a `true` flag marks an alternating slot.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MzvIndex {
    entries: Vec<(u32, bool)>,
}

impl MzvIndex {
    pub fn new(entries: Vec<(u32, bool)>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::Domain("empty index".into()));
        }
        if entries.iter().any(|&(s, _)| s == 0) {
            return Err(Error::Domain("exponents must be >= 1".into()));
        }
        let (s1, alt1) = entries[0];
        if s1 < 2 && !alt1 {
            return Err(Error::Domain("divergent: first slot is 1 without sign".into()));
        }
        Ok(MzvIndex { entries })
    }

    /// `ζ(k+2 bar, {1}^(m-1))`.
    pub fn euler_shape(k: u32, m: u32) -> Result<Self> {
        if m == 0 {
            return Err(Error::Domain("m must be >= 1".into()));
        }
        let mut e = vec![(k + 2, true)];
        e.extend(std::iter::repeat_n((1, false), (m - 1) as usize));
        Self::new(e)
    }

    pub fn entries(&self) -> &[(u32, bool)] {
        &self.entries
    }

    pub fn depth(&self) -> usize {
        self.entries.len()
    }

    pub fn weight(&self) -> u32 {
        self.entries.iter().map(|e| e.0).sum()
    }

    /// `(k, m)` when the index has the shape handled by the integral evaluator.
    pub fn shape(&self) -> Option<(u32, u32)> {
        let (s1, alt) = self.entries[0];
        if !alt || s1 < 2 {
            return None;
        }
        if self.entries[1..].iter().all(|&e| e == (1, false)) {
            Some((s1 - 2, self.entries.len() as u32))
        } else {
            None
        }
    }
}

impl fmt::Display for MzvIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .entries
            .iter()
            .map(|&(s, alt)| if alt { format!("-{s}") } else { s.to_string() })
            .collect();
        write!(f, "z({})", parts.join(","))
    }
}

impl FromStr for MzvIndex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix("z(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected z(...), got {s:?}")))?;
        let entries = inner
            .split(',')
            .map(|p| {
                let p = p.trim();
                let (alt, digits) = match p.strip_prefix('-') {
                    Some(d) => (true, d),
                    None => (false, p),
                };
                digits
                    .parse::<u32>()
                    .map(|v| (v, alt))
                    .map_err(|_| Error::Parse(format!("bad exponent {p:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        MzvIndex::new(entries)
    }
}

/// Beyond this `t` every integrand below is under `2^-(2 prec)` and is
/// returned as zero, which also keeps `exp` away from huge arguments.
fn negligible(t: &Float, prec: u32) -> bool {
    t.to_f64() > 4.0 * prec as f64
}

/// `log(1 + e^-t)`.
fn log1p_exp_neg(t: &Float, prec: u32) -> Float {
    t.neg().exp(prec).ln1p(prec)
}

/// `ζ(k+2 bar, {1}^(m-1))` by quadrature.
pub fn euler_sum_integral(k: u32, m: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    if m == 0 {
        return Err(Error::Domain("m must be >= 1".into()));
    }
    // the factorials go inside so the quadrature tolerance applies to the sum itself
    let den = factorial(m as u64) * factorial(k as u64);
    let scale = Float::from_ratio(&BigInt::one(), &den, ctx.bits() + 32);
    let integral = de_quadrature_semi_infinite(
        |t: &Float, prec: u32| {
            if negligible(t, prec) {
                return Float::zero();
            }
            let l = log1p_exp_neg(t, prec);
            t.powi(k as i64, prec).mul(&l.powi(m as i64, prec), prec).mul(&scale, prec)
        },
        &BigRational::zero(),
        ctx,
    )?;
    Ok(if m.is_multiple_of(2) { integral } else { -integral })
}

/// Any supported index through [`euler_sum_integral`].
pub fn euler_sum(index: &MzvIndex, ctx: &PrecisionContext) -> Result<BigReal> {
    let (k, m) = index
        .shape()
        .ok_or_else(|| Error::Unsupported(format!("{index} is not of the form z(-(k+2),1,...,1)")))?;
    euler_sum_integral(k, m, ctx)
}

/// Nested partial sum over `K >= k_1 > ... >= 1`, with one averaging pass on
/// an alternating outer index. Oracle grade only.
///
/// The error is ten times the averaging correction when the outer slot
/// alternates, and otherwise a crude integral bound on the omitted tail.
pub fn euler_sum_direct(index: &MzvIndex, terms: u64, ctx: &PrecisionContext) -> Result<BigReal> {
    if terms < 2 {
        return Err(Error::Domain("need at least two terms".into()));
    }
    if terms > ctx.max_terms {
        return Err(Error::Domain(format!("{terms} terms exceed max_terms = {}", ctx.max_terms)));
    }
    let prec = ctx.bits();
    let e = index.entries();
    let d = e.len();
    // partial[j] = sum over the slots j.. with the slot-j variable below the current k
    let mut partial = vec![Float::zero(); d + 1];
    partial[d] = Float::one();
    let mut previous_total = Float::zero();
    for k in 1..=terms {
        previous_total = partial[0].clone();
        let kf = Float::from_i64(k as i64);
        for j in 0..d {
            let (s, alt) = e[j];
            let mut t = partial[j + 1].div(&kf.powi(s as i64, prec), prec);
            if alt && k % 2 == 1 {
                t = t.neg();
            }
            partial[j] = partial[j].add(&t, prec);
        }
    }
    let last = partial[0].clone();
    let (s1, alt1) = e[0];
    if alt1 {
        let avg = last.add(&previous_total, prec).mul_2k(-1);
        let correction = last.sub(&previous_total, prec).abs().mul_2k(-1);
        Ok(BigReal::new(avg, correction.mul_i64(10, 64), prec))
    } else {
        let kf = terms as f64;
        let bound = 2.0 * (1.0 + kf.ln()).powi(d as i32 - 1) * kf.powf(1.0 - s1 as f64)
            / (s1 as f64 - 1.0);
        Ok(BigReal::new(last, Float::from_f64(bound), prec))
    }
}

fn sign(e: u32) -> BigRational {
    if e.is_multiple_of(2) {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// `2 ζ(2 bar, {1}^(n-2)) + sum_{j=3}^{n-1} (-1)^j ζ(j bar, {1}^(n-j))`.
fn s_n_euler_sums(n: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    let prec = ctx.bits();
    let mut total = euler_sum_integral(0, n - 1, ctx)? * BigReal::from_i64(2, prec);
    for j in 3..n {
        let term = euler_sum_integral(j - 2, n - j + 1, ctx)?;
        total = total + term * BigReal::from_rational(&sign(j), prec);
    }
    Ok(total)
}

/// The right-hand side `(-2)^(n-1) S_n` of the generalized Euler identity
/// for `ζ(n)`, `n >= 3`.
pub fn theorem41_rhs(n: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    if n < 3 {
        return Err(Error::Unsupported(
            "theorem41 is restricted to n >= 3; at n = 2 the formula reads -4 ζ(2 bar) = 2 ζ(2)"
                .into(),
        ));
    }
    let inner = ctx.raised(3);
    let s = s_n_euler_sums(n, &inner)?;
    let factor = BigInt::from(-2).pow(n - 1);
    Ok((s * BigReal::from_rational(&BigRational::from_integer(factor), inner.bits()))
        .with_prec(ctx.bits()))
}

/// What the formula produces at `n = 2`, for reporting.
#[derive(Clone, Debug)]
pub struct N2Diagnostic {
    /// `ζ(2)`.
    pub zeta2: BigReal,
    /// `-4 ζ(2 bar)`, the literal right-hand side.
    pub literal_rhs: BigReal,
    /// `literal_rhs / zeta2`, which is 2 rather than 1.
    pub ratio: BigReal,
}

impl fmt::Display for N2Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n = 2 is not supported: lhs zeta(2) = {}, literal rhs -4*zeta(-2) = {} (ratio {})",
            self.zeta2.to_sci_string(20),
            self.literal_rhs.to_sci_string(20),
            self.ratio.to_sci_string(6)
        )
    }
}

pub fn theorem41_n2_diagnostic(ctx: &PrecisionContext) -> Result<N2Diagnostic> {
    let prec = ctx.bits();
    let zeta2 = crate::kernel::zeta_int(2, ctx)?;
    let literal_rhs = euler_sum_integral(0, 1, ctx)? * BigReal::from_i64(-4, prec);
    let ratio = literal_rhs.try_div(&zeta2)?;
    Ok(N2Diagnostic { zeta2, literal_rhs, ratio })
}

/// Route used by [`s_n`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SnMethod {
    /// Sum of alternating Euler sums.
    EulerSums,
    /// One combined integrand.
    Integral,
}

/// `S_n` by the chosen route.
///
/// The combined integrand, after `x = e^-t` and with `L = log(1 + e^-t)`, is
/// `(-L)^(n-1) + sum_{i=2}^{n-1} C(n-1, i) (-L)^i (-t)^(n-1-i)` over `t > 0`,
/// divided by `(n-1)!`. Expanding first removes the cancelling terms that do
/// not decay at infinity.
pub fn s_n(n: u32, method: SnMethod, ctx: &PrecisionContext) -> Result<BigReal> {
    if n < 2 {
        return Err(Error::Domain("S_n needs n >= 2".into()));
    }
    match method {
        SnMethod::EulerSums => s_n_euler_sums(n, ctx),
        SnMethod::Integral => {
            let p = n - 1;
            // C(p, i)/p! = 1/(i! (p-i)!), so the integral is S_n itself
            let bits = ctx.bits() + 32;
            let weights: Vec<Float> = (0..=p)
                .map(|i| {
                    let den = factorial(i as u64) * factorial((p - i) as u64);
                    Float::from_ratio(&BigInt::one(), &den, bits)
                })
                .collect();
            de_quadrature_semi_infinite(
                |t: &Float, prec: u32| {
                    if negligible(t, prec) {
                        return Float::zero();
                    }
                    let ml = log1p_exp_neg(t, prec).neg();
                    let mt = t.neg();
                    let mut acc = ml.powi(p as i64, prec).mul(&weights[p as usize], prec);
                    for i in 2..=p {
                        let term = ml
                            .powi(i as i64, prec)
                            .mul(&mt.powi((p - i) as i64, prec), prec)
                            .mul(&weights[i as usize], prec);
                        acc = acc.add(&term, prec);
                    }
                    acc
                },
                &BigRational::zero(),
                ctx,
            )
        }
    }
}

/// A truncated generating-function value.
#[derive(Clone, Debug)]
pub struct GenFunValue {
    /// `sum_{n=2}^{n_max} S_n z^(n-1)`; its error covers only the terms kept.
    pub value: BigReal,
    /// Bound on the omitted terms from `|S_n| <= 2^(2-n)`.
    pub tail_estimate: Float,
    pub n_max: u32,
}

/// Smallest `n_max` with `2^(2-n_max) |z|^(n_max-1) <= tol / 10`.
pub fn theorem42_default_n_max(z: &BigRational, ctx: &PrecisionContext) -> Result<u32> {
    let az = z.abs();
    if az.is_zero() || az > BigRational::one() {
        return Err(Error::Domain(format!("need 0 < |z| <= 1, got {z}")));
    }
    let limit = rat(1, 10) * BigRational::new(BigInt::one(), BigInt::from(10).pow(ctx.target_digits));
    let mut n = 2u32;
    let mut bound = az.clone(); // 2^(2-n) |z|^(n-1) at n = 2
    while bound > limit {
        n += 1;
        bound = bound * &az / rat_int(2);
    }
    Ok(n)
}

/// `H(z) = sum_{n>=2} S_n z^(n-1)` truncated at `n_max`; compare with
/// `ψ(1) - ψ(1 + z/2)`.
pub fn theorem42_genfun(
    z: &BigRational,
    n_max: Option<u32>,
    ctx: &PrecisionContext,
) -> Result<GenFunValue> {
    let default = theorem42_default_n_max(z, ctx)?;
    let n_max = n_max.unwrap_or(default);
    if n_max < 2 {
        return Err(Error::Domain("n_max must be >= 2".into()));
    }
    let prec = ctx.bits();
    let zf = BigReal::from_rational(z, prec);
    let mut value = BigReal::zero(prec);
    let mut zpow = zf.clone();
    for n in 2..=n_max {
        value = value + s_n(n, SnMethod::Integral, ctx)? * zpow.clone();
        zpow = zpow * zf.clone();
    }
    // sum_{n > N} 2^(2-n) |z|^(n-1) = 2 |z/2|^N / (1 - |z|/2)
    let half = z.abs() / rat_int(2);
    let tail = rat_int(2) * crate::kernel::rational::rat_pow(&half, n_max as i32)
        / (BigRational::one() - &half);
    Ok(GenFunValue { value, tail_estimate: Float::from_rational(&tail, 64), n_max })
}

/// `ψ(1) - ψ(1 + z/2)`.
pub fn theorem42_reference(z: &BigRational, ctx: &PrecisionContext) -> Result<BigReal> {
    let one = BigRational::one();
    Ok(digamma(&one, ctx)? - digamma(&(one + z / rat_int(2)), ctx)?)
}

/// `I(z) = ∫_0^1 ((1 + x^z)/(1 + x)^z - 1) dx/x`, which equals `ψ(1) - ψ(z)`.
pub fn lemma43_integral(z: &BigRational, ctx: &PrecisionContext) -> Result<BigReal> {
    if !z.is_positive() {
        return Err(Error::Domain(format!("need z > 0, got {z}")));
    }
    let prec0 = ctx.bits() + 16;
    let zf = Float::from_rational(z, prec0);
    de_quadrature(
        |x: &Float, prec: u32| {
            let xz = zf.mul(&x.ln(prec), prec).exp(prec);
            let damp = zf.mul(&x.ln1p(prec), prec).neg().exp(prec);
            Float::one().add(&xz, prec).mul(&damp, prec).sub(&Float::one(), prec).div(x, prec)
        },
        &BigRational::zero(),
        &BigRational::one(),
        ctx,
    )
}

/// `ψ(1) - ψ(z)`.
pub fn lemma43_reference(z: &BigRational, ctx: &PrecisionContext) -> Result<BigReal> {
    Ok(digamma(&BigRational::one(), ctx)? - digamma(z, ctx)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{pi_reference, zeta_int};

    fn close(a: &BigReal, b: &BigReal, tol: f64) {
        let d = a.abs_diff(b).to_f64();
        assert!(d <= tol, "diff {d:e} > {tol:e}: {} vs {}", a.to_sci_string(20), b.to_sci_string(20));
    }

    #[test]
    fn hyperharmonic_examples() {
        assert_eq!(hyperharmonic(7, 0).unwrap(), rat_int(1));
        assert_eq!(hyperharmonic(3, 1).unwrap(), rat(11, 6));
        assert_eq!(hyperharmonic(3, 2).unwrap(), rat_int(1));
        assert_eq!(hyperharmonic(3, 4).unwrap(), rat_int(0));
        assert!(hyperharmonic(0, 1).is_err());
    }

    #[test]
    fn hyperharmonic_matches_enumeration() {
        let t = HyperharmonicTable::build(8, 4);
        for k in 1..=8 {
            for m in 0..=4 {
                assert_eq!(t.get(k, m).unwrap(), &hyperharmonic_enumerated(k, m), "K={k} m={m}");
            }
        }
    }

    #[test]
    fn falling_product_identity() {
        for k in 1..=10usize {
            let mut direct = vec![BigInt::one()];
            for l in 1..k {
                let mut next = vec![BigInt::zero(); direct.len() + 1];
                for (i, c) in direct.iter().enumerate() {
                    next[i + 1] += c;
                    next[i] -= c * BigInt::from(l);
                }
                direct = next;
            }
            assert_eq!(falling_product_via_hyperharmonic(k).unwrap(), direct, "k={k}");
        }
    }

    #[test]
    fn index_text_form() {
        let i: MzvIndex = "z(-2,1,1)".parse().unwrap();
        assert_eq!(i.shape(), Some((0, 3)));
        assert_eq!(i.to_string(), "z(-2,1,1)");
        assert_eq!("z(4)".parse::<MzvIndex>().unwrap().shape(), None);
        assert!("z(1,2)".parse::<MzvIndex>().is_err());
        assert!("z(-1)".parse::<MzvIndex>().is_ok());
        assert!("(2)".parse::<MzvIndex>().is_err());
        assert_eq!(MzvIndex::euler_shape(1, 2).unwrap().to_string(), "z(-3,1)");
    }

    #[test]
    fn integral_examples() {
        let ctx = PrecisionContext::new(25);
        let p = ctx.bits();
        let z3 = zeta_int(3, &ctx).unwrap();
        close(
            &euler_sum_integral(0, 2, &ctx).unwrap(),
            &(z3.clone() * BigReal::from_rational(&rat(1, 8), p)),
            1e-24,
        );
        let pi = pi_reference(&ctx);
        close(
            &euler_sum_integral(0, 1, &ctx).unwrap(),
            &(pi.clone() * pi * BigReal::from_rational(&rat(-1, 12), p)),
            1e-24,
        );
        close(
            &euler_sum_integral(1, 1, &ctx).unwrap(),
            &(z3 * BigReal::from_rational(&rat(-3, 4), p)),
            1e-24,
        );
    }

    #[test]
    fn direct_oracle() {
        let ctx = PrecisionContext::new(12);
        let p = ctx.bits();
        let z3 = zeta_int(3, &ctx).unwrap();
        let idx: MzvIndex = "z(-2,1)".parse().unwrap();
        let d = euler_sum_direct(&idx, 20_000, &ctx).unwrap();
        let expect = z3 * BigReal::from_rational(&rat(1, 8), p);
        assert!(d.abs_diff(&expect) <= d.combined_err(&expect));
        assert!(d.err_f64() < 1e-6);
        let z4 = euler_sum_direct(&"z(4)".parse().unwrap(), 20_000, &ctx).unwrap();
        let expect4 = zeta_int(4, &ctx).unwrap();
        assert!(z4.abs_diff(&expect4) <= z4.combined_err(&expect4));
    }

    #[test]
    fn theorem41_small_n() {
        let ctx = PrecisionContext::new(20);
        for n in 3..=5 {
            close(&theorem41_rhs(n, &ctx).unwrap(), &zeta_int(n as i64, &ctx).unwrap(), 1e-19);
        }
        assert!(matches!(theorem41_rhs(2, &ctx), Err(Error::Unsupported(_))));
        let diag = theorem41_n2_diagnostic(&ctx).unwrap();
        assert!((diag.ratio.to_f64() - 2.0).abs() < 1e-15);
    }

    #[test]
    fn s_n_routes() {
        let ctx = PrecisionContext::new(15);
        let p = ctx.bits();
        for n in 3..=6u32 {
            let a = s_n(n, SnMethod::EulerSums, &ctx).unwrap();
            let b = s_n(n, SnMethod::Integral, &ctx).unwrap();
            close(&a, &b, 1e-14);
            let expect = zeta_int(n as i64, &ctx).unwrap()
                * BigReal::from_rational(
                    &BigRational::new(BigInt::one(), BigInt::from(-2).pow(n - 1)),
                    p,
                );
            close(&b, &expect, 1e-14);
        }
        // at n = 2 the two routes differ by a factor of two
        let a = s_n(2, SnMethod::EulerSums, &ctx).unwrap();
        let b = s_n(2, SnMethod::Integral, &ctx).unwrap();
        assert!((a.to_f64() / b.to_f64() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn generating_function() {
        let ctx = PrecisionContext::new(10);
        let z = rat(1, 2);
        let h = theorem42_genfun(&z, Some(25), &ctx).unwrap();
        let r = theorem42_reference(&z, &ctx).unwrap();
        assert!(h.value.abs_diff(&r).to_f64() <= 1e-8 + h.tail_estimate.to_f64());
        assert_eq!(theorem42_default_n_max(&rat(1, 2), &ctx).unwrap(), 20);
        assert!(theorem42_genfun(&rat(3, 2), None, &ctx).is_err());
    }

    #[test]
    fn lemma43_examples() {
        let ctx = PrecisionContext::new(14);
        let i1 = lemma43_integral(&rat_int(1), &ctx).unwrap();
        assert!(i1.to_f64().abs() < 1e-13);
        let i2 = lemma43_integral(&rat_int(2), &ctx).unwrap();
        close(&i2, &BigReal::from_i64(-1, ctx.bits()), 1e-13);
        let a = lemma43_integral(&rat(3, 2), &ctx).unwrap();
        let b = lemma43_integral(&rat(5, 2), &ctx).unwrap();
        close(&(b - a), &BigReal::from_rational(&rat(-2, 3), ctx.bits()), 1e-13);
    }
}
