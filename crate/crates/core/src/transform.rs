//! The acceleration transform
//!
//! ```text
//! sum_n 1/((z_n - x) z_n^α) = sum_k γ_k(x) prod_{l<k} (x - z_l),
//! γ_k(x) = 1/((z_k - x) (k;k-1)) + sum_{n>k} 1/(n;k),
//! ```
//!
//! together with the direct left-hand side, the remainders `φ_k`, and power
//! series coefficients in `x` of the right-hand side.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::kernel::rational::{factorial, rat, rat_int};
use crate::kernel::{BigReal, PrecisionContext};
use crate::markov_apery::tail_sum_shifted_square;
use crate::pi_powers::lemma63_sum;
use crate::sequences::{
    pochhammer_diagonal, pochhammer_exact, rational_tail, z_power, SequenceKind, ZSequence,
};
use crate::truncation::{SeriesValue, TailRule, Truncator};

/// Largest supported expansion order.
pub const MAX_ORDER: usize = 10;

/// A sequence, an exponent and a real evaluation point inside the disk
/// where the transform is certified.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TransformInstance {
    pub seq: ZSequence,
    pub alpha: BigRational,
    pub x: BigRational,
}

impl TransformInstance {
    /// Validates the domain:
    ///
    /// * power, shifted-square and half-square kinds need `|x| < min(1, z_1)`;
    /// * the linear kind `z_n = n + c` needs `α > max(0, c)`, `|x| < z_1` and
    ///   `|x| <= (α - max(c, 0))/2`.
    pub fn new(seq: ZSequence, alpha: BigRational, x: BigRational) -> Result<Self> {
        seq.check_alpha(&alpha)?;
        let z1 = match seq.kind() {
            SequenceKind::Custom { .. } => {
                return Err(Error::Unsupported(
                    "custom sequences have no certified transform domain".into(),
                ))
            }
            _ => seq.z_rational(1)?,
        };
        let ax = x.abs();
        match seq.kind() {
            SequenceKind::Linear { c } => {
                let c_pos = if c.is_positive() { c.clone() } else { BigRational::zero() };
                if alpha <= c_pos || !alpha.is_positive() {
                    return Err(Error::Domain(format!(
                        "linear kind needs alpha > max(0, c); got alpha={alpha}, c={c}"
                    )));
                }
                let radius = (&alpha - &c_pos) / rat_int(2);
                if ax > radius {
                    return Err(Error::Domain(format!(
                        "linear kind needs |x| <= (alpha - max(c,0))/2 = {radius}, got x={x}"
                    )));
                }
                if let Some(z1) = &z1 {
                    if &ax >= z1 {
                        return Err(Error::Domain(format!("|x| must be below z_1 = {z1}")));
                    }
                }
            }
            _ => {
                if ax >= BigRational::one() {
                    return Err(Error::Domain(format!("|x| must be below 1, got {x}")));
                }
                // irrational z_1 only arises for beta non-integer, where z_1 >= 1
                if let Some(z1) = &z1 {
                    if &ax >= z1 {
                        return Err(Error::Domain(format!("|x| must be below z_1 = {z1}")));
                    }
                }
            }
        }
        Ok(TransformInstance { seq, alpha, x })
    }

    /// `z_n = n^2`, `α = 1/2` at the point `t^2`, so that the left-hand side
    /// is `sum 1/(n (n^2 - t^2))`.
    pub fn koecher(t: &BigRational) -> Result<Self> {
        TransformInstance::new(ZSequence::squares(), rat(1, 2), t * t)
    }
}

/// `r!/(2k (2k+r)!)`, the sum over `n > k` of
/// `1/((n+r+k)(n+r+k-1)...(n+r-k))`.
pub fn telescoping_tail(r: u64, k: u64) -> BigRational {
    assert!(k >= 1, "k must be at least 1");
    BigRational::new(factorial(r), BigInt::from(2 * k) * factorial(2 * k + r))
}

/// The same sum restricted to `k < n <= n_max`.
pub fn telescoping_partial(r: u64, k: u64, n_max: u64) -> Result<BigRational> {
    if k == 0 || n_max <= k {
        return Err(Error::Domain(format!("need k >= 1 and N > k (k={k}, N={n_max})")));
    }
    let (r, k) = (r as i64, k as i64);
    let mut s = BigRational::zero();
    for n in k + 1..=n_max as i64 {
        let mut den = BigInt::one();
        for i in n + r - k..=n + r + k {
            den *= i;
        }
        s += BigRational::new(BigInt::one(), den);
    }
    Ok(s)
}

/// `(1/2k) / ((N+r+k)...(N+r-k+1))`, the part of the infinite sum beyond `N`.
pub fn telescoping_remainder(r: u64, k: u64, n_max: u64) -> BigRational {
    let (r, k, n) = (r as i64, k as i64, n_max as i64);
    let mut den = BigInt::from(2 * k);
    for i in n + r - k + 1..=n + r + k {
        den *= i;
    }
    BigRational::new(BigInt::one(), den)
}

/// Which closed form, if any, supplies `sum_{n>k} 1/(n;k)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum TailSource {
    Squares,
    ShiftedSquare(u32),
    HalfSquareZero,
    LinearUnit,
    Generic,
}

fn tail_source(seq: &ZSequence, alpha: &BigRational) -> TailSource {
    let half = rat(1, 2);
    if let Some(c) = seq.square_shift() {
        if *alpha == half {
            return if c == 0 { TailSource::Squares } else { TailSource::ShiftedSquare(c) };
        }
    }
    match seq.kind() {
        SequenceKind::HalfSquare if alpha.is_zero() => TailSource::HalfSquareZero,
        SequenceKind::Linear { c } if c.is_zero() && alpha.is_one() => TailSource::LinearUnit,
        _ => TailSource::Generic,
    }
}

/// `sum_{n>k} 1/(n;k)` exactly, when a closed form is known.
pub fn series_tail_exact(seq: &ZSequence, alpha: &BigRational, k: u64) -> Result<Option<BigRational>> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    Ok(match tail_source(seq, alpha) {
        TailSource::Squares => Some(telescoping_tail(0, k)),
        TailSource::ShiftedSquare(c) => Some(tail_sum_shifted_square(k as u32, c)?),
        TailSource::HalfSquareZero => Some(lemma63_sum(k as u32)?),
        TailSource::LinearUnit => {
            Some(BigRational::new(BigInt::one(), BigInt::from(k) * factorial(k)))
        }
        TailSource::Generic => None,
    })
}

/// `sum_{n>k} 1/(n;k)`, by closed form where available and otherwise by
/// the power-series expansion of the summand in `1/z_n`.
pub fn series_tail(
    seq: &ZSequence,
    alpha: &BigRational,
    k: u64,
    ctx: &PrecisionContext,
) -> Result<SeriesValue> {
    seq.check_alpha(alpha)?;
    if let Some(q) = series_tail_exact(seq, alpha, k)? {
        return Ok(SeriesValue::exact(BigReal::from_rational(&q, ctx.bits()), TailRule::ClosedForm));
    }
    generic_tail(seq, alpha, k, ctx)
}

fn generic_tail(
    seq: &ZSequence,
    alpha: &BigRational,
    k: u64,
    ctx: &PrecisionContext,
) -> Result<SeriesValue> {
    let prec = ctx.bits();
    let roots: Vec<BigReal> = (1..=k).map(|i| seq.z_at(i, prec)).collect::<Result<_>>()?;
    let (value, direct) = rational_tail(seq, alpha, &roots, k, ctx)?;
    let tail_bound = value.err().clone();
    Ok(SeriesValue { value, terms_used: direct, tail_bound, rule: TailRule::ZetaExpansion })
}

fn check_conditioning(zk: &BigReal, x: &BigReal, ctx: &PrecisionContext) -> Result<BigReal> {
    let d = zk - x;
    let scale = zk.value().abs().mul(&crate::kernel::pow10_neg(ctx.guard_digits, 64), 64);
    if d.lower_abs() <= scale {
        return Err(Error::Conditioning(format!(
            "x = {} is too close to z_k = {}",
            x.to_sci_string(12),
            zk.to_sci_string(12)
        )));
    }
    Ok(d)
}

/// `γ_k(x)` exactly, when every ingredient is rational.
pub fn gamma_k_exact(inst: &TransformInstance, k: u64) -> Result<Option<BigRational>> {
    let Some(tail) = series_tail_exact(&inst.seq, &inst.alpha, k)? else { return Ok(None) };
    let Some(diag) = pochhammer_exact(&inst.seq, &inst.alpha, k, k - 1)? else { return Ok(None) };
    let zk = inst.seq.z_rational(k)?.expect("rational diagonal implies rational z");
    let d = zk - &inst.x;
    if d.is_zero() {
        return Err(Error::Conditioning(format!("x coincides with z_{k}")));
    }
    Ok(Some((d * diag).recip() + tail))
}

/// `γ_k(x) = 1/((z_k - x)(k;k-1)) + sum_{n>k} 1/(n;k)`.
pub fn gamma_k(inst: &TransformInstance, k: u64, ctx: &PrecisionContext) -> Result<BigReal> {
    if k == 0 {
        return Err(Error::Domain("k must be at least 1".into()));
    }
    let prec = ctx.bits();
    let zk = inst.seq.z_at(k, prec)?;
    let x = BigReal::from_rational(&inst.x, prec);
    let d = check_conditioning(&zk, &x, ctx)?;
    if let Some(g) = gamma_k_exact(inst, k)? {
        return Ok(BigReal::from_rational(&g, prec));
    }
    let diag = pochhammer_diagonal(&inst.seq, &inst.alpha, k, prec)?;
    let tail = series_tail(&inst.seq, &inst.alpha, k, ctx)?;
    Ok(BigReal::from_i64(1, prec).try_div(&(d * diag))? + tail.value)
}

/// `(k+1;k)/(k;k-1)`.
fn diagonal_ratio(seq: &ZSequence, alpha: &BigRational, k: u64, prec: u32) -> Result<BigReal> {
    let kk = k as i64;
    let base: Option<BigRational> = match seq.kind() {
        SequenceKind::Linear { .. } => Some(rat_int(kk)),
        SequenceKind::ShiftedSquare { c } => {
            let c = *c as i64;
            Some(rat_int(kk * (2 * kk + 2 * c) * (2 * kk + 2 * c + 1)) / rat_int(kk + 2 * c + 1))
        }
        SequenceKind::HalfSquare => {
            Some(rat_int(kk * (2 * kk + 1) * (2 * kk + 2)) / rat_int(kk + 2))
        }
        _ => None,
    };
    match base {
        Some(b) => {
            let zr = z_power(seq, k + 1, alpha, prec + 8)?.try_div(&z_power(seq, k, alpha, prec + 8)?)?;
            Ok((zr * BigReal::from_rational(&b, prec + 8)).with_prec(prec))
        }
        None => pochhammer_diagonal(seq, alpha, k + 1, prec)?
            .try_div(&pochhammer_diagonal(seq, alpha, k, prec)?),
    }
}

/// Per-`k` ingredients of the right-hand side.
struct KoecherState<'a> {
    seq: &'a ZSequence,
    alpha: &'a BigRational,
    source: TailSource,
    ctx: PrecisionContext,
    k: u64,
    diag: BigReal,
}

struct KoecherStep {
    zk: BigReal,
    diag: BigReal,
    tail: BigReal,
}

impl<'a> KoecherState<'a> {
    fn new(seq: &'a ZSequence, alpha: &'a BigRational, ctx: &PrecisionContext) -> Result<Self> {
        let prec = ctx.bits();
        Ok(KoecherState {
            seq,
            alpha,
            source: tail_source(seq, alpha),
            ctx: *ctx,
            k: 0,
            diag: pochhammer_diagonal(seq, alpha, 1, prec)?,
        })
    }

    fn next(&mut self) -> Result<KoecherStep> {
        let prec = self.ctx.bits();
        if self.k > 0 {
            self.diag = &self.diag * &diagonal_ratio(self.seq, self.alpha, self.k, prec)?;
        }
        self.k += 1;
        let k = self.k;
        let zk = self.seq.z_at(k, prec)?;
        let tail = match self.source {
            // 1/(k k!) with k! = (k;k-1), avoiding a fresh factorial per step
            TailSource::LinearUnit => (&self.diag * &BigReal::from_i64(k as i64, prec)).recip(),
            TailSource::Generic => generic_tail(self.seq, self.alpha, k, &self.ctx)?.value,
            _ => BigReal::from_rational(
                &series_tail_exact(self.seq, self.alpha, k)?.expect("closed form"),
                prec,
            ),
        };
        Ok(KoecherStep { zk, diag: self.diag.clone(), tail })
    }
}

/// `sum_k γ_k(x) prod_{l<k} (x - z_l)` under the truncation policy.
pub fn accelerated_sum(inst: &TransformInstance, ctx: &PrecisionContext) -> Result<SeriesValue> {
    let prec = ctx.bits();
    let x = BigReal::from_rational(&inst.x, prec);
    let mut state = KoecherState::new(&inst.seq, &inst.alpha, ctx)?;
    let mut prod = BigReal::from_i64(1, prec);
    let mut trunc = Truncator::new(ctx);
    loop {
        let step = state.next()?;
        let d = check_conditioning(&step.zk, &x, ctx)?;
        let gamma = (&d * &step.diag).recip() + &step.tail;
        if trunc.push(&gamma * &prod)? {
            return Ok(trunc.into_result().expect("settled"));
        }
        prod = &prod * &(&x - &step.zk);
    }
}

/// `sum_n 1/((z_n - x) z_n^α)`, by the expansion of the summand in `x/z_n`
/// past a short direct prefix.
pub fn lhs_sum(inst: &TransformInstance, ctx: &PrecisionContext) -> Result<SeriesValue> {
    let x = BigReal::from_rational(&inst.x, ctx.bits());
    let (value, direct) = rational_tail(&inst.seq, &inst.alpha, &[x], 0, ctx)?;
    let tail_bound = value.err().clone();
    Ok(SeriesValue { value, terms_used: direct, tail_bound, rule: TailRule::ZetaExpansion })
}

/// `φ_k(x) = sum_{n>k} 1/((z_n - x)(n;k))`.
pub fn phi_k(inst: &TransformInstance, k: u64, ctx: &PrecisionContext) -> Result<BigReal> {
    let prec = ctx.bits();
    let mut roots = vec![BigReal::from_rational(&inst.x, prec)];
    for i in 1..=k {
        roots.push(inst.seq.z_at(i, prec)?);
    }
    Ok(rational_tail(&inst.seq, &inst.alpha, &roots, k, ctx)?.0)
}

/// `prod_{l<=n} (x - z_l)` at a real point.
pub fn partial_product(seq: &ZSequence, x: &BigRational, n: u64, ctx: &PrecisionContext) -> Result<BigReal> {
    let prec = ctx.bits();
    let xr = BigReal::from_rational(x, prec);
    let mut p = BigReal::from_i64(1, prec);
    for l in 1..=n {
        p = p * (&xr - &seq.z_at(l, prec)?);
    }
    Ok(p)
}

/// Coefficients of `x^0..x^order` of the right-hand side, each summed over
/// `k` under the truncation policy. Coefficient `m` approximates
/// `ζ_z(m + α + 1)`.
///
/// `γ_k(x)` expands as `tail_k + sum_i x^i / ((k;k-1) z_k^(i+1))`, and
/// `prod_{l<k}(x - z_l)` is carried as a truncated polynomial.
pub fn expand_coefficients(
    seq: &ZSequence,
    alpha: &BigRational,
    order: usize,
    ctx: &PrecisionContext,
) -> Result<Vec<SeriesValue>> {
    if order > MAX_ORDER {
        return Err(Error::Domain(format!("order {order} exceeds {MAX_ORDER}")));
    }
    if let SequenceKind::Custom { .. } = seq.kind() {
        return Err(Error::Unsupported("expansion needs a parametric sequence".into()));
    }
    seq.check_alpha(alpha)?;
    let prec = ctx.bits();
    let mut state = KoecherState::new(seq, alpha, ctx)?;
    let mut poly: Vec<BigReal> = vec![BigReal::from_i64(1, prec)];
    let mut truncs: Vec<Truncator> = (0..=order).map(|_| Truncator::new(ctx)).collect();
    loop {
        let step = state.next()?;
        let inv_z = step.zk.recip();
        let mut g = Vec::with_capacity(order + 1);
        let mut pw = (&step.diag * &step.zk).recip();
        for i in 0..=order {
            if i == 0 {
                g.push(&pw + &step.tail);
            } else {
                g.push(pw.clone());
            }
            pw = &pw * &inv_z;
        }
        let mut all_done = true;
        for (m, t) in truncs.iter_mut().enumerate() {
            if t.is_done() {
                continue;
            }
            let mut coeff = BigReal::zero(prec);
            for (j, p) in poly.iter().enumerate().take(m + 1) {
                coeff = coeff + &g[m - j] * p;
            }
            if !t.push(coeff)? {
                all_done = false;
            }
        }
        if all_done {
            break;
        }
        // poly *= (x - z_k), truncated
        let mut next = vec![BigReal::zero(prec); (poly.len() + 1).min(order + 1)];
        for (i, p) in poly.iter().enumerate() {
            next[i] = &next[i] - &(p * &step.zk);
            if i < order {
                next[i + 1] = &next[i + 1] + p;
            }
        }
        poly = next;
    }
    Ok(truncs.into_iter().map(|t| t.into_result().expect("settled")).collect())
}

/// `Float` magnitude helper used by tests and the CLI.
pub fn ratio_f64(a: &BigReal, b: &BigReal) -> f64 {
    if b.is_zero() {
        return f64::INFINITY;
    }
    a.value().div(b.value(), 64).to_f64()
}
