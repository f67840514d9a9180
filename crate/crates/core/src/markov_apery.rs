//! Shifted-square tails, the triangular partial-fraction system behind them,
//! the integer polynomials `P_c(k)` and the `ζ_c(3)` series they produce.
//!
//! For `z_n = (n + c)^2` and `α = 1/2` the tail `sum_{n>k} 1/(n;k)` equals
//! `sum_{n>=1} Q_n` with
//!
//! ```text
//! Q_n = prod_{i=0..2c, i != c} (n+k+i) / prod_{i=0..2k+2c} (n+i),
//! ```
//!
//! a proper rational function in `n` whose partial fractions over blocks of
//! `2k + 1` consecutive factors telescope. The block coefficients `A_j`
//! solve a lower-triangular system with right-hand side `B_j`, where
//! `B_j = (-1)^j (2k)! Res_{n = -(2k+2c-j)} Q_n`.
//!
//! The literal closed form for `B_j` is valid only for `j < k`. For `k <= c`
//! it has a removable `0/0` at `j = k + c`, whose limit is
//! `(-1)^c (2k)! c!^2 / (k+c)!^2`; dropping that term (treating `1/(-c-1)!`
//! as zero before dividing by `k + c - j = 0`) gives wrong tails, for example
//! `23/96` instead of `11/96` at `k = c = 1`. [`b_coefficients`] uses the
//! residue, and [`TailReading`] keeps the other readings available for audit.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::kernel::rational::{binomial, factorial, rat_int, recip_factorial};
use crate::kernel::{zeta_reference, BigReal, IntPolynomial, PrecisionContext};
use crate::report::{Comparison, IdentityReport};
use crate::transform::telescoping_tail;
use crate::truncation::{sum_series, SeriesValue};

fn fact(n: i64) -> BigRational {
    BigRational::from_integer(factorial(n as u64))
}

/// `ζ_c(s) = ζ(s) - sum_{j=1..c} j^(-s)`, the Hurwitz zeta function `ζ(s, c+1)`.
pub fn hurwitz_zeta_c(c: u32, s: &BigRational, ctx: &PrecisionContext) -> Result<BigReal> {
    let z = zeta_reference(s, ctx)?;
    let prec = ctx.bits();
    if c == 0 {
        return Ok(z);
    }
    if s.is_integer() {
        let e = s.to_integer().to_i32().ok_or_else(|| Error::Domain("exponent too large".into()))?;
        let head: BigRational = (1..=c as i64)
            .map(|j| crate::kernel::rational::rat_pow(&rat_int(j), -e))
            .sum();
        return Ok(z - BigReal::from_rational(&head, prec));
    }
    let mut head = BigReal::zero(prec);
    for j in 1..=c as i64 {
        head = head + crate::kernel::rational_power_neg(&rat_int(j), s, prec);
    }
    Ok(z - head)
}

/// `Q_n` at an integer `n >= 1`, exactly.
pub fn q_value(k: u32, c: u32, n: i64) -> BigRational {
    let (k, c) = (k as i64, c as i64);
    let mut num = BigInt::one();
    for i in (0..=2 * c).filter(|&i| i != c) {
        num *= n + k + i;
    }
    let mut den = BigInt::one();
    for i in 0..=2 * k + 2 * c {
        den *= n + i;
    }
    BigRational::new(num, den)
}

/// `B_0..B_2c`, from the residues of `Q_n`.
pub fn b_coefficients(k: u32, c: u32) -> Result<Vec<BigRational>> {
    check_kc(k, c)?;
    let (ki, ci) = (k as i64, c as i64);
    let two_k_fact = fact(2 * ki);
    Ok((0..=2 * ci)
        .map(|j| {
            let m = 2 * ki + 2 * ci - j; // pole at n = -m
            let mut num = BigInt::one();
            for i in (0..=2 * ci).filter(|&i| i != ci) {
                num *= ki + i - m;
            }
            if num.is_zero() {
                return BigRational::zero();
            }
            let mut den = BigInt::one();
            for i in (0..=2 * ki + 2 * ci).filter(|&i| i != m) {
                den *= i - m;
            }
            let sign = if j % 2 == 0 { 1 } else { -1 };
            BigRational::new(num, den) * &two_k_fact * rat_int(sign)
        })
        .collect())
}

/// The literal closed form of `B_j` with every `1/(negative)!` set to zero
/// before the isolated factor `1/(k+c-j)` is applied.
pub fn b_coefficients_vanishing(k: u32, c: u32) -> Result<Vec<BigRational>> {
    check_kc(k, c)?;
    let (k, c) = (k as i64, c as i64);
    Ok((0..=2 * c)
        .map(|j| {
            let rf = recip_factorial(k - 1 - j);
            if rf.is_zero() {
                return rf;
            }
            rf * fact(k + 2 * c - j) * fact(2 * k)
                / (fact(2 * k + 2 * c - j) * fact(j) * rat_int(k + c - j))
        })
        .collect())
}

fn check_kc(k: u32, c: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    if c > 64 {
        return Err(Error::Domain(format!("c = {c} is beyond the supported range")));
    }
    Ok(())
}

/// Lower-triangular system matrix: row `j` holds `(-1)^i C(2k, j-i)` at column `i <= j`.
pub fn system_matrix(k: u32, c: u32) -> Vec<Vec<BigInt>> {
    let n = 2 * c as usize + 1;
    let k2 = 2 * k as i64;
    (0..n)
        .map(|j| {
            (0..n)
                .map(|i| {
                    if i > j {
                        BigInt::zero()
                    } else {
                        let b = binomial(k2, (j - i) as i64);
                        if i % 2 == 0 { b } else { -b }
                    }
                })
                .collect()
        })
        .collect()
}

/// Claimed inverse: column `l` holds `(-1)^l C(2k-1+i-l, i-l)` at row `i >= l`.
pub fn inverse_matrix(k: u32, c: u32) -> Vec<Vec<BigInt>> {
    let n = 2 * c as usize + 1;
    let k2 = 2 * k as i64;
    (0..n)
        .map(|i| {
            (0..n)
                .map(|l| {
                    if l > i {
                        BigInt::zero()
                    } else {
                        let b = binomial(k2 - 1 + (i - l) as i64, (i - l) as i64);
                        if l % 2 == 0 { b } else { -b }
                    }
                })
                .collect()
        })
        .collect()
}

/// Partial-fraction data for one `(k, c)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PartialFractionSolution {
    pub k: u32,
    pub c: u32,
    /// Block coefficients `A_0..A_2c`.
    pub a: Vec<BigRational>,
    /// Right-hand side `B_0..B_2c`.
    pub b: Vec<BigRational>,
    pub m: Vec<Vec<BigInt>>,
    pub m_inv: Vec<Vec<BigInt>>,
}

impl PartialFractionSolution {
    /// `sum_j A_j / ((n+2k+2c-j) ... (n+2c-j))`, which should equal `Q_n`.
    pub fn reconstruct(&self, n: i64) -> BigRational {
        let (k, c) = (self.k as i64, self.c as i64);
        self.a
            .iter()
            .enumerate()
            .map(|(j, a)| {
                let j = j as i64;
                let mut den = BigInt::one();
                for i in 0..=2 * k {
                    den *= n + 2 * c - j + i;
                }
                a / BigRational::from_integer(den)
            })
            .sum()
    }

    /// `M * M_inv`, for auditing the inverse.
    pub fn product(&self) -> Vec<Vec<BigInt>> {
        let n = self.m.len();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| (0..n).map(|l| &self.m[i][l] * &self.m_inv[l][j]).sum())
                    .collect()
            })
            .collect()
    }
}

/// Solves the triangular system through the explicit inverse.
pub fn solve_partial_fraction(k: u32, c: u32) -> Result<PartialFractionSolution> {
    let b = b_coefficients(k, c)?;
    let m = system_matrix(k, c);
    let m_inv = inverse_matrix(k, c);
    let a = apply(&m_inv, &b);
    Ok(PartialFractionSolution { k, c, a, b, m, m_inv })
}

fn apply(mat: &[Vec<BigInt>], v: &[BigRational]) -> Vec<BigRational> {
    mat.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .map(|(m, x)| x * BigRational::from_integer(m.clone()))
                .sum()
        })
        .collect()
}

/// Alternative readings of the tail formula, kept for auditing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TailReading {
    /// `B_j` from the residues of `Q_n` (correct for every `k`, `c`).
    Residue,
    /// Literal `B_j` with vanishing reciprocal factorials, so the `j = k + c`
    /// term is dropped.
    VanishingConvention,
    /// Literal closed form for `A_j` whose isolated factor reads
    /// `1/(k+c-j)` (outer index) instead of `1/(k+c-nu)`.
    OuterIndexFactor,
}

/// `sum_{n>k} 1/(n;k)` for `z_n = (n+c)^2`, `α = 1/2`, exactly.
pub fn tail_sum_shifted_square(k: u32, c: u32) -> Result<BigRational> {
    tail_sum_reading(k, c, TailReading::Residue)
}

/// The tail under a chosen reading of the coefficient formulas.
pub fn tail_sum_reading(k: u32, c: u32, reading: TailReading) -> Result<BigRational> {
    let a = match reading {
        TailReading::Residue => solve_partial_fraction(k, c)?.a,
        TailReading::VanishingConvention => {
            apply(&inverse_matrix(k, c), &b_coefficients_vanishing(k, c)?)
        }
        TailReading::OuterIndexFactor => a_outer_index(k, c)?,
    };
    Ok(a.iter()
        .enumerate()
        .map(|(j, aj)| aj * telescoping_tail(2 * c as u64 - j as u64, k as u64))
        .sum())
}

fn a_outer_index(k: u32, c: u32) -> Result<Vec<BigRational>> {
    check_kc(k, c)?;
    let (k, c) = (k as i64, c as i64);
    (0..=2 * c)
        .map(|j| {
            let mut s = BigRational::zero();
            for nu in 0..=j {
                let rf = recip_factorial(k - 1 - nu);
                if rf.is_zero() {
                    continue;
                }
                let t = rf * fact(2 * k + j - 1 - nu) * fact(k + 2 * c - nu)
                    / (fact(j - nu) * fact(2 * k + 2 * c - nu) * fact(nu));
                s += if nu % 2 == 0 { t } else { -t };
            }
            if k + c == j {
                if s.is_zero() {
                    return Ok(s);
                }
                return Err(Error::Domain(format!(
                    "outer-index factor 1/(k+c-j) is 1/0 at j = {j}"
                )));
            }
            Ok(s * rat_int(2 * k) / rat_int(k + c - j))
        })
        .collect()
}

/// The tail as a single double sum over `(j, nu)`, with the removable
/// singularity of `1/((k+c-nu) (k-1-nu)!)` at `nu = k + c` replaced by its
/// limit `(-1)^c c!`.
pub fn tail_sum_double_sum(k: u32, c: u32) -> Result<BigRational> {
    check_kc(k, c)?;
    let (k, c) = (k as i64, c as i64);
    let singular = |nu: i64| -> BigRational {
        if nu < k {
            recip_factorial(k - 1 - nu) / rat_int(k + c - nu)
        } else if nu == k + c {
            let s = if c % 2 == 0 { 1 } else { -1 };
            fact(c) * rat_int(s)
        } else {
            BigRational::zero()
        }
    };
    let mut total = BigRational::zero();
    for j in 0..=2 * c {
        let mut inner = BigRational::zero();
        for nu in 0..=j {
            let l = singular(nu);
            if l.is_zero() {
                continue;
            }
            let t = l * fact(2 * k + j - 1 - nu) * fact(k + 2 * c - nu)
                / (fact(j - nu) * fact(2 * k + 2 * c - nu) * fact(nu));
            inner += if nu % 2 == 0 { t } else { -t };
        }
        total += inner * fact(2 * c - j) / fact(2 * k + 2 * c - j);
    }
    Ok(total)
}

/// `(n;k)` for `z_n = (n+c)^2`, `α = 1/2`, as an integer.
fn shifted_square_product(k: i64, c: i64, n: i64) -> BigInt {
    let mut p = BigInt::from(n + c);
    for i in 1..=k {
        p *= (n - i) * (n + i + 2 * c);
    }
    p
}

/// Exact bracket `[lo, hi]` for the tail: partial sum over `k < n <= n_max`,
/// plus at most `1/(2k (n_max - k)^(2k))` since `(n;k) >= (n-k)^(2k+1)`.
pub fn tail_bracket(k: u32, c: u32, n_max: u64) -> Result<(BigRational, BigRational)> {
    check_kc(k, c)?;
    let (k, c, n_max) = (k as i64, c as i64, n_max as i64);
    if n_max <= 2 * k {
        return Err(Error::Domain("n_max must exceed 2k".into()));
    }
    let mut lo = BigRational::zero();
    for n in k + 1..=n_max {
        lo += BigRational::new(BigInt::one(), shifted_square_product(k, c, n));
    }
    let bound = BigRational::new(
        BigInt::one(),
        BigInt::from(2 * k) * num_traits::pow(BigInt::from(n_max - k), 2 * k as usize),
    );
    let hi = &lo + bound;
    Ok((lo, hi))
}

/// `P_c(k)` at a single `k` from its defining factorial expression.
pub fn pc_value(c: u32, k: u32) -> Result<BigRational> {
    check_kc(k, c)?;
    let tail = tail_sum_shifted_square(k, c)?;
    let (k, c) = (k as i64, c as i64);
    let first = rat_int(4) * fact(k + 2 * c) * fact(k + c - 1)
        / (rat_int(k + c) * fact(k - 1) * fact(k - 1));
    let scaled = rat_int(2) * fact(k + c) * fact(2 * k + 2 * c) / fact(k - 1) * tail;
    Ok(first + scaled)
}

/// `P_c(k)` as an integer polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcPolynomial {
    pub c: u32,
    pub poly: IntPolynomial,
}

/// Largest `c` accepted by [`pc_polynomial`].
pub const PC_MAX: u32 = 12;

/// Interpolates `P_c` through `k = 1..3c+1` and confirms it against the
/// defining expression at nine further points.
pub fn pc_polynomial(c: u32) -> Result<PcPolynomial> {
    if c > PC_MAX {
        return Err(Error::Domain(format!("c = {c} exceeds the cap {PC_MAX}")));
    }
    let pts: Vec<(BigInt, BigRational)> = (1..=3 * c + 1)
        .map(|k| Ok((BigInt::from(k), pc_value(c, k)?)))
        .collect::<Result<_>>()?;
    let poly = IntPolynomial::interpolate(&pts)?;
    for k in 3 * c + 2..=3 * c + 10 {
        let direct = pc_value(c, k)?;
        let fitted = BigRational::from_integer(poly.eval(&BigInt::from(k)));
        if direct != fitted {
            return Err(Error::Consistency(format!(
                "interpolated P_{c} disagrees with the direct value at k = {k}"
            )));
        }
    }
    Ok(PcPolynomial { c, poly })
}

/// Outcome of checking one structural claim.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum AuditVerdict {
    Confirmed,
    Violated,
}

impl std::fmt::Display for AuditVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            AuditVerdict::Confirmed => "CONFIRMED",
            AuditVerdict::Violated => "VIOLATED",
        })
    }
}

/// Degree `3c`, leading coefficient 5 and (for `c >= 1`) constant
/// coefficient `c! (2c)!`, checked against the computed polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureAudit {
    pub c: u32,
    pub degree: usize,
    pub leading: BigInt,
    pub constant: BigInt,
    pub degree_ok: bool,
    pub leading_ok: bool,
    pub constant_ok: bool,
}

impl ConjectureAudit {
    pub fn verdict(&self) -> AuditVerdict {
        if self.degree_ok && self.leading_ok && self.constant_ok {
            AuditVerdict::Confirmed
        } else {
            AuditVerdict::Violated
        }
    }
}

/// Audits a computed `P_c`. Integrality is already enforced by
/// [`pc_polynomial`], which fails otherwise.
pub fn conjecture_audit(p: &PcPolynomial) -> ConjectureAudit {
    let c = p.c;
    let degree = p.poly.degree().unwrap_or(0);
    let leading = p.poly.leading();
    let constant = p.poly.constant();
    let expected_const = factorial(c as u64) * factorial(2 * c as u64);
    ConjectureAudit {
        c,
        degree,
        degree_ok: degree == 3 * c as usize,
        leading_ok: leading == BigInt::from(5),
        constant_ok: c == 0 || constant == expected_const,
        leading,
        constant,
    }
}

/// `k`-th term of the `ζ_c(3)` series, without the `1/(2 c!^2)` prefactor.
fn theorem51_term(p: &IntPolynomial, c: i64, k: i64) -> BigRational {
    let mut den = binomial(2 * k + 2 * c, k + c) * BigInt::from(k + c) * BigInt::from(k + c);
    for i in 0..=c {
        den *= k + i;
    }
    let v = BigRational::new(p.eval(&BigInt::from(k)), den);
    if k % 2 == 1 { v } else { -v }
}

/// `(1/(2 c!^2)) sum_k (-1)^(k-1) P_c(k) / (C(2k+2c, k+c) (k+c)^2 k (k+1)...(k+c))`.
pub fn theorem51_series(c: u32, ctx: &PrecisionContext) -> Result<SeriesValue> {
    let p = pc_polynomial(c)?;
    let ci = c as i64;
    let pre = BigRational::new(BigInt::one(), factorial(c as u64).pow(2) * 2);
    let prec = ctx.bits();
    sum_series(ctx, 1, |k| {
        Ok(BigReal::from_rational(&(theorem51_term(&p.poly, ci, k as i64) * &pre), prec))
    })
}

/// Compares `ζ_c(3)` with its central-binomial series.
pub fn verify_theorem51(c: u32, ctx: &PrecisionContext) -> Result<IdentityReport> {
    if c > 8 {
        return Err(Error::Domain(format!("c = {c} exceeds the supported range 0..=8")));
    }
    let started = Instant::now();
    let lhs = hurwitz_zeta_c(c, &rat_int(3), ctx)?;
    let rhs = theorem51_series(c, ctx)?;
    Ok(IdentityReport::compare(
        Comparison {
            identity_id: "thm51",
            parameters: vec![("c", c.to_string())],
            lhs: &lhs,
            rhs: &rhs.value,
            terms_used: rhs.terms_used,
            tail_rule: rhs.rule,
            started,
        },
        ctx,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::rat;
    use crate::kernel::zeta_int;

    #[test]
    fn zeta_c_values() {
        let ctx = PrecisionContext::new(30);
        let z3 = zeta_int(3, &ctx).unwrap();
        let three = rat_int(3);
        assert!(hurwitz_zeta_c(0, &three, &ctx).unwrap().agrees_with(&z3, 1));
        let one = BigReal::from_i64(1, ctx.bits());
        assert!(hurwitz_zeta_c(1, &three, &ctx).unwrap().agrees_with(&(&z3 - &one), 1));
        let expect = &z3 - &BigReal::from_rational(&rat(9, 8), ctx.bits());
        assert!(hurwitz_zeta_c(2, &three, &ctx).unwrap().agrees_with(&expect, 1));
    }

    #[test]
    fn b_examples() {
        for k in 1..6 {
            assert_eq!(b_coefficients(k, 0).unwrap(), vec![rat_int(1)]);
        }
        let b = b_coefficients(1, 1).unwrap();
        assert_eq!(b[0], rat(1, 4));
        assert_eq!(b[1], rat_int(0));
        // removable singularity at j = k + c
        assert_eq!(b[2], rat(-1, 2));
        let literal = b_coefficients_vanishing(1, 1).unwrap();
        assert_eq!(literal, vec![rat(1, 4), rat_int(0), rat_int(0)]);
    }

    #[test]
    fn literal_b_agrees_when_k_exceeds_c() {
        for c in 0..4 {
            for k in c + 1..7 {
                assert_eq!(b_coefficients(k, c).unwrap(), b_coefficients_vanishing(k, c).unwrap());
            }
        }
    }

    #[test]
    fn inverse_and_reconstruction() {
        for (k, c) in [(1, 1), (2, 2), (3, 1)] {
            let s = solve_partial_fraction(k, c).unwrap();
            let p = s.product();
            for (i, row) in p.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    assert_eq!(*v, BigInt::from((i == j) as i64));
                }
            }
        }
        let s = solve_partial_fraction(2, 1).unwrap();
        for n in 3..=22 {
            assert_eq!(s.reconstruct(n), q_value(2, 1, n));
        }
        assert_eq!(solve_partial_fraction(4, 0).unwrap().a, vec![rat_int(1)]);
    }

    #[test]
    fn tails_pinned() {
        assert_eq!(tail_sum_shifted_square(1, 0).unwrap(), rat(1, 4));
        assert_eq!(tail_sum_shifted_square(1, 1).unwrap(), rat(11, 96));
        assert_eq!(tail_sum_shifted_square(2, 1).unwrap(), rat(17, 4320));
        assert_eq!(tail_sum_shifted_square(3, 2).unwrap(), rat(209, 6_048_000));
        assert_eq!(tail_sum_reading(1, 1, TailReading::VanishingConvention).unwrap(), rat(23, 96));
        assert!(tail_sum_reading(1, 1, TailReading::OuterIndexFactor).is_err());
    }

    #[test]
    fn routes_agree() {
        for k in 1..=4 {
            for c in 0..=3 {
                assert_eq!(
                    tail_sum_shifted_square(k, c).unwrap(),
                    tail_sum_double_sum(k, c).unwrap(),
                    "k={k} c={c}"
                );
            }
        }
    }

    #[test]
    fn brute_force_brackets_small_case() {
        let (lo, hi) = tail_bracket(1, 1, 300).unwrap();
        let t = tail_sum_shifted_square(1, 1).unwrap();
        assert!(lo <= t && t <= hi);
    }

    #[test]
    fn pc_small() {
        assert_eq!(pc_polynomial(0).unwrap().poly, IntPolynomial::from_i64(&[5]));
        assert_eq!(pc_polynomial(1).unwrap().poly, IntPolynomial::from_i64(&[2, 4, 12, 5]));
        let p3 = pc_polynomial(3).unwrap();
        assert_eq!(p3.poly.constant(), BigInt::from(4320));
        assert_eq!(conjecture_audit(&p3).verdict(), AuditVerdict::Confirmed);
        assert!(pc_polynomial(13).is_err());
    }

    #[test]
    fn series_c1_short() {
        let ctx = PrecisionContext::new(20);
        let r = verify_theorem51(1, &ctx).unwrap();
        assert!(r.pass, "{r}");
    }
}
