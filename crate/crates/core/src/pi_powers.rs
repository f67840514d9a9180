//! Even powers of π from the half-square sequence `z_n = (n + 1/2)^2` with
//! `α = 0`: odd-index harmonic sums, the closed tail and its Gauss
//! hypergeometric decomposition, and the resulting central-binomial series.

use std::sync::Mutex;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::kernel::rational::{binomial, factorial, rat, rat_int};
use crate::kernel::{pi_reference, zeta_even_closed_form, BigReal, PrecisionContext};
use crate::report::{Comparison, IdentityReport};
use crate::truncation::{sum_series, SeriesValue};

/// Rows `H̃_K(0..=depth)` for `K = 0, 1, ...`, grown on demand.
struct OddHarmonicCache {
    depth: usize,
    rows: Vec<Vec<BigRational>>,
}

static ODD_CACHE: Mutex<OddHarmonicCache> =
    Mutex::new(OddHarmonicCache { depth: 0, rows: Vec::new() });

/// Table of `H̃_K(ν) = sum_{K >= k_1 > ... > k_ν >= 1} prod 1/(2k_i + 1)^2`.
#[derive(Clone, Debug, PartialEq)]
pub struct OddHarmonicTable {
    pub k_max: usize,
    pub depth_max: usize,
    /// `values[K][ν]`.
    pub values: Vec<Vec<BigRational>>,
}

impl OddHarmonicTable {
    /// Builds the table by `H̃_K(ν) = H̃_{K-1}(ν) + H̃_{K-1}(ν-1)/(2K+1)^2`.
    pub fn build(k_max: usize, depth_max: usize) -> Self {
        let mut values = Vec::with_capacity(k_max + 1);
        let mut row = vec![BigRational::zero(); depth_max + 1];
        row[0] = BigRational::one();
        values.push(row.clone());
        for k in 1..=k_max {
            let w = rat(1, ((2 * k + 1) * (2 * k + 1)) as i64);
            let mut next = row.clone();
            for nu in 1..=depth_max {
                next[nu] = &row[nu] + &row[nu - 1] * &w;
            }
            values.push(next.clone());
            row = next;
        }
        OddHarmonicTable { k_max, depth_max, values }
    }

    pub fn get(&self, k: usize, nu: usize) -> BigRational {
        if nu > self.depth_max || k > self.k_max {
            panic!("odd harmonic table lookup ({k}, {nu}) out of range");
        }
        self.values[k][nu].clone()
    }
}

/// `H̃_K(ν)`, exact. `H̃_K(0) = 1` and `H̃_K(ν) = 0` for `ν > K`.
pub fn odd_harmonic(k: usize, nu: usize) -> BigRational {
    let mut cache = ODD_CACHE.lock().unwrap_or_else(|e| e.into_inner());
    if nu > cache.depth || cache.rows.len() <= k {
        let depth = nu.max(cache.depth).max(4);
        let k_max = k.max(cache.rows.len()).max(16);
        let t = OddHarmonicTable::build(k_max, depth);
        cache.depth = depth;
        cache.rows = t.values;
    }
    cache.rows[k][nu].clone()
}

/// Brute-force `H̃_K(ν)` by enumerating the strictly decreasing index tuples.
pub fn odd_harmonic_enumerated(k: usize, nu: usize) -> BigRational {
    fn rec(max: usize, left: usize) -> BigRational {
        if left == 0 {
            return BigRational::one();
        }
        (1..=max)
            .map(|i| rat(1, ((2 * i + 1) * (2 * i + 1)) as i64) * rec(i - 1, left - 1))
            .sum()
    }
    rec(k, nu)
}

/// `₂F₁(a, b; c; 1) = Γ(c)Γ(c-a-b) / (Γ(c-a)Γ(c-b))` for integer `a >= 0`,
/// evaluated as the finite product `prod_{i<a} (c-a+i)/(c-a-b+i)`.
pub fn gauss_2f1_unit_exact(a: u32, b: u32, c: &BigRational) -> Result<BigRational> {
    let cab = c - rat_int(a as i64) - rat_int(b as i64);
    if !cab.is_positive() {
        return Err(Error::Domain(format!(
            "Gauss summation needs c - a - b > 0 (a={a}, b={b}, c={c})"
        )));
    }
    let mut v = BigRational::one();
    for i in 0..a as i64 {
        v *= (c - rat_int(a as i64) + rat_int(i)) / (&cab + rat_int(i));
    }
    Ok(v)
}

/// [`gauss_2f1_unit_exact`] as a real.
pub fn gauss_2f1_unit(a: u32, b: u32, c: &BigRational, ctx: &PrecisionContext) -> Result<BigReal> {
    Ok(BigReal::from_rational(&gauss_2f1_unit_exact(a, b, c)?, ctx.bits()))
}

/// Pieces of the tail sum for one `k`, each from a Gauss evaluation.
#[derive(Clone, Debug, PartialEq)]
pub struct Lemma63Parts {
    /// `sum_{n>=0} n!/(n+2k+2)!`.
    pub s0: BigRational,
    /// `sum_{n>=0} n n!/(n+2k+2)!`.
    pub s1: BigRational,
    /// `sum_{n>=0} n^2 n!/(n+2k+2)!`.
    pub s2: BigRational,
    /// `s2 + (2k+3) s1 + (k+1)(k+2) s0`.
    pub total: BigRational,
}

/// Decomposes `sum_{n>k} 1/(n;k)` (with `(n;k) = (n+k+1)!/(n(n+1)(n-k-1)!)`)
/// after shifting `n` by `k + 1`, evaluating each piece by Gauss's theorem.
pub fn lemma63_parts(k: u32) -> Result<Lemma63Parts> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let ki = k as i64;
    let top = BigRational::from_integer(factorial(2 * k as u64 + 2));
    let c = rat_int(2 * ki + 3);
    // sum (n+j)!/(n+2k+2)! = j! 2F1(1, j+1; 2k+3; 1)/(2k+2)!
    let t0 = gauss_2f1_unit_exact(1, 1, &c)? / &top;
    let t1 = gauss_2f1_unit_exact(1, 2, &c)? / &top;
    let t2 = gauss_2f1_unit_exact(1, 3, &c)? * rat_int(2) / &top;
    let s0 = t0;
    // n = (n+1) - 1
    let s1 = &t1 - &s0;
    // n^2 = (n+1)(n+2) - 3(n+1) + 1
    let s2 = &t2 - rat_int(3) * &t1 + &s0;
    let total = &s2 + rat_int(2 * ki + 3) * &s1 + rat_int((ki + 1) * (ki + 2)) * &s0;
    Ok(Lemma63Parts { s0, s1, s2, total })
}

/// `sum_{n>k} 1/(n;k)` for `z_n = (n + 1/2)^2`, `α = 0`:
/// `(2k^3 + 5k^2 + 3k + 1)/((2k-1)(2k+1)(2k+1)!)`.
pub fn lemma63_sum(k: u32) -> Result<BigRational> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let ki = k as i64;
    Ok(BigRational::new(
        BigInt::from(2 * ki * ki * ki + 5 * ki * ki + 3 * ki + 1),
        BigInt::from((2 * ki - 1) * (2 * ki + 1)) * factorial(2 * k as u64 + 1),
    ))
}

/// `(n;k)` for the half-square sequence at `α = 0`, in closed form.
pub fn half_square_product(n: u64, k: u64) -> Result<BigRational> {
    if k >= n {
        return Err(Error::Domain(format!("closed form needs k < n (n={n}, k={k})")));
    }
    Ok(BigRational::new(
        factorial(n + k + 1),
        BigInt::from(n) * BigInt::from(n + 1) * factorial(n - k - 1),
    ))
}

/// Exact bracket for the tail: the partial sum over `k < n <= n_max`, and
/// that sum plus `1/((2k-1)(n_max-k)^(2k-1))`.
///
/// Cancelling `n(n+1)` leaves `2k` factors `n+i` with `i >= -k` in the
/// denominator of each term, so a term is at most `(n-k)^(-2k)`, and the
/// rest is below the integral of `t^(-2k)` from `n_max - k`.
pub fn lemma63_bracket(k: u32, n_max: u64) -> Result<(BigRational, BigRational)> {
    let k64 = k as u64;
    if k == 0 || n_max <= 2 * k64 {
        return Err(Error::Domain("need k >= 1 and n_max > 2k".into()));
    }
    let mut lo = BigRational::zero();
    for n in k64 + 1..=n_max {
        lo += half_square_product(n, k64)?.recip();
    }
    let rest = BigRational::new(
        BigInt::one(),
        BigInt::from(2 * k64 - 1) * num_traits::pow(BigInt::from(n_max - k64), 2 * k as usize - 1),
    );
    let hi = &lo + rest;
    Ok((lo, hi))
}

/// `(-1)^(k-1) (2k)!^2/(4^(2k-1) k!^2) sum_ν (-4)^ν H̃_{k-1}(ν) x^ν`, the
/// expanded form of `prod_{l=1..k-1} (x - (l + 1/2)^2)`, low to high.
pub fn half_square_product_poly(k: usize) -> Vec<BigRational> {
    let pre = BigRational::new(
        factorial(2 * k as u64).pow(2),
        num_traits::pow(BigInt::from(4), 2 * k - 1) * factorial(k as u64).pow(2),
    );
    let sign = if k % 2 == 1 { rat_int(1) } else { rat_int(-1) };
    (0..k)
        .map(|nu| {
            let p = num_traits::pow(rat_int(-4), nu);
            &pre * &sign * p * odd_harmonic(k - 1, nu)
        })
        .collect()
}

fn central_weight(k: i64) -> BigRational {
    BigRational::new(
        binomial(2 * k, k),
        num_traits::pow(BigInt::from(16), k as usize) * BigInt::from((2 * k + 1) * (2 * k + 1)),
    )
}

/// The `k`-th term of the `μ` series, exact.
fn theorem61_term(mu: usize, k: i64) -> BigRational {
    let h = |nu: usize| odd_harmonic((k - 1) as usize, nu);
    let mut bracket = rat_int(10 * k * k * k + 9 * k * k - k + 1) / rat_int(2 * k - 1) * h(mu);
    let odd2 = rat_int((2 * k + 1) * (2 * k + 1));
    let mut inner = BigRational::zero();
    let mut pow = BigRational::one();
    for j in 1..=mu {
        pow /= &odd2;
        let t = h(mu - j) * &pow;
        inner += if j % 2 == 0 { t } else { -t };
    }
    bracket += rat_int(4 * k * (k + 1)) * inner;
    let sign = if (k + mu as i64 - 1) % 2 == 0 { 1 } else { -1 };
    central_weight(k) * bracket * rat_int(sign)
}

/// `1 + sum_k (-1)^(k+μ-1) C(2k,k)/(16^k (2k+1)^2) [...]`, equal to
/// `(1 - 4^(-μ-1)) ζ(2μ+2)`.
pub fn theorem61_rhs(mu: u32, ctx: &PrecisionContext) -> Result<SeriesValue> {
    if mu > 8 {
        return Err(Error::Domain(format!("μ = {mu} exceeds the supported range 0..=8")));
    }
    let prec = ctx.bits();
    let mut v = sum_series(ctx, 1, |k| {
        Ok(BigReal::from_rational(&theorem61_term(mu as usize, k as i64), prec))
    })?;
    v.value = v.value + BigReal::from_i64(1, prec);
    Ok(v)
}

/// `(1 - 4^(-μ-1)) ζ(2μ+2)` from the Bernoulli closed form.
pub fn theorem61_lhs(mu: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    let z = zeta_even_closed_form(mu + 1, ctx)?;
    let f = BigRational::one() - BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(4), mu as usize + 1));
    Ok(z * BigReal::from_rational(&f, ctx.bits()))
}

/// Variant of the `μ = 1` series with the `4k(k-1)` factor in place of
/// `4k(k+1)`, kept to show numerically that only the latter is right.
pub fn theorem61_rhs_mu1_km1(ctx: &PrecisionContext) -> Result<SeriesValue> {
    let prec = ctx.bits();
    let mut v = sum_series(ctx, 1, |k| {
        let k = k as i64;
        let h1 = odd_harmonic((k - 1) as usize, 1);
        let bracket = rat_int(4 * k * (k - 1)) / rat_int((2 * k + 1) * (2 * k + 1))
            - rat_int(10 * k * k * k + 9 * k * k - k + 1) / rat_int(2 * k - 1) * h1;
        let sign = if k % 2 == 1 { 1 } else { -1 };
        Ok(BigReal::from_rational(&(central_weight(k) * bracket * rat_int(sign)), prec))
    })?;
    v.value = v.value + BigReal::from_i64(1, prec);
    Ok(v)
}

/// The two comparison series for `π²/10` (`μ = 0`) and `π⁴/96` (`μ = 1`),
/// whose inner sum runs over all odd squares up to `(2k-1)^2`.
pub fn leshchiner_series(mu: u32, ctx: &PrecisionContext) -> Result<SeriesValue> {
    let prec = ctx.bits();
    let mut v = match mu {
        0 => sum_series(ctx, 1, |k| {
            let k = k as i64;
            let t = BigRational::new(
                binomial(2 * k, k),
                num_traits::pow(BigInt::from(16), k as usize) * BigInt::from((2 * k + 1) * (2 * k + 1)),
            );
            Ok(BigReal::from_rational(&if k % 2 == 0 { t } else { -t }, prec))
        })?,
        1 => {
            let mut inner = BigRational::zero();
            sum_series(ctx, 1, |k| {
                let k = k as i64;
                inner += rat(1, (2 * k - 1) * (2 * k - 1));
                let odd2 = rat_int((2 * k + 1) * (2 * k + 1));
                let bracket = odd2.recip() - rat(5, 4) * &inner;
                let t = BigRational::new(
                    binomial(2 * k, k),
                    num_traits::pow(BigInt::from(16), k as usize),
                ) / odd2
                    * bracket;
                Ok(BigReal::from_rational(&if k % 2 == 0 { t } else { -t }, prec))
            })?
        }
        _ => return Err(Error::Domain(format!("only μ = 0 and μ = 1 are available, got {mu}"))),
    };
    v.value = v.value + BigReal::from_i64(1, prec);
    Ok(v)
}

/// `π²/10` or `π⁴/96` from the reference π.
pub fn leshchiner_lhs(mu: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    let pi = pi_reference(ctx);
    let p = ctx.bits();
    match mu {
        0 => Ok(&pi * &pi / BigReal::from_i64(10, p)),
        1 => Ok(pi.powi(4) / BigReal::from_i64(96, p)),
        _ => Err(Error::Domain(format!("only μ = 0 and μ = 1 are available, got {mu}"))),
    }
}

pub fn leshchiner_check(mu: u32, ctx: &PrecisionContext) -> Result<IdentityReport> {
    let started = Instant::now();
    let lhs = leshchiner_lhs(mu, ctx)?;
    let rhs = leshchiner_series(mu, ctx)?;
    Ok(IdentityReport::compare(
        Comparison {
            identity_id: "leshchiner",
            parameters: vec![("mu", mu.to_string())],
            lhs: &lhs,
            rhs: &rhs.value,
            terms_used: rhs.terms_used,
            tail_rule: rhs.rule,
            started,
        },
        ctx,
    ))
}
