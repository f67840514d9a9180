//! Increasing sequences `z_1 < z_2 < ...`, their generalized products
//! `(n;k)`, sequence zeta functions, and the shared tail-summation machinery.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::kernel::rational::{parse_rational, rat, rat_int};
use crate::kernel::{hurwitz, BigReal, Float, PrecisionContext};

/// Parametric families of sequences.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SequenceKind {
    /// `z_n = (n + c)^beta + d` with `c > -1`, `d >= 0`, `beta > 1`.
    PowerShift { c: BigRational, d: BigRational, beta: BigRational },
    /// `z_n = n + c` with `c > -1`.
    Linear { c: BigRational },
    /// `z_n = (n + c)^2` for an integer `c >= 0`.
    ShiftedSquare { c: u32 },
    /// `z_n = (n + 1/2)^2`.
    HalfSquare,
    /// A finite, strictly increasing prefix with a declared growth constant.
    Custom { values: Vec<BigRational>, growth_epsilon: BigRational },
}

/// A validated sequence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZSequence {
    kind: SequenceKind,
}

impl ZSequence {
    pub fn power_shift(c: BigRational, d: BigRational, beta: BigRational) -> Result<Self> {
        if c <= rat_int(-1) || d.is_negative() || beta <= BigRational::one() {
            return Err(Error::Domain(format!(
                "power sequence needs c > -1, d >= 0, beta > 1 (got c={c}, d={d}, beta={beta})"
            )));
        }
        Ok(ZSequence { kind: SequenceKind::PowerShift { c, d, beta } })
    }

    pub fn linear(c: BigRational) -> Result<Self> {
        if c <= rat_int(-1) {
            return Err(Error::Domain(format!("linear sequence needs c > -1, got {c}")));
        }
        Ok(ZSequence { kind: SequenceKind::Linear { c } })
    }

    pub fn shifted_square(c: u32) -> Self {
        ZSequence { kind: SequenceKind::ShiftedSquare { c } }
    }

    pub fn half_square() -> Self {
        ZSequence { kind: SequenceKind::HalfSquare }
    }

    /// `z_n = n^2`.
    pub fn squares() -> Self {
        ZSequence::shifted_square(0)
    }

    pub fn custom(values: Vec<BigRational>, growth_epsilon: BigRational) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Domain("custom sequence needs at least one value".into()));
        }
        if !growth_epsilon.is_positive() {
            return Err(Error::Domain("growth epsilon must be positive".into()));
        }
        if !values[0].is_positive() {
            return Err(Error::Domain("sequence values must be positive".into()));
        }
        for (i, w) in values.windows(2).enumerate() {
            if w[1] <= w[0] {
                return Err(Error::Domain(format!(
                    "sequence not strictly increasing at n = {}",
                    i + 2
                )));
            }
        }
        for (i, v) in values.iter().enumerate() {
            if v < &(&growth_epsilon * rat_int(i as i64 + 1)) {
                return Err(Error::Domain(format!("z_{} violates z_n >= eps * n", i + 1)));
            }
        }
        Ok(ZSequence { kind: SequenceKind::Custom { values, growth_epsilon } })
    }

    pub fn kind(&self) -> &SequenceKind {
        &self.kind
    }

    /// Whether `z_n` is the `n`-th term of `n^2` (the classical case).
    pub fn is_plain_squares(&self) -> bool {
        match &self.kind {
            SequenceKind::ShiftedSquare { c: 0 } => true,
            SequenceKind::PowerShift { c, d, beta } => {
                c.is_zero() && d.is_zero() && *beta == rat_int(2)
            }
            _ => false,
        }
    }

    /// The shift `c` when the sequence is `(n + c)^2` with integer `c >= 0`.
    pub fn square_shift(&self) -> Option<u32> {
        match &self.kind {
            SequenceKind::ShiftedSquare { c } => Some(*c),
            SequenceKind::PowerShift { c, d, beta }
                if d.is_zero() && *beta == rat_int(2) && c.is_integer() && !c.is_negative() =>
            {
                c.to_integer().to_u32()
            }
            _ => None,
        }
    }

    /// Number of stored terms for custom sequences, `None` if infinite.
    pub fn len(&self) -> Option<usize> {
        match &self.kind {
            SequenceKind::Custom { values, .. } => Some(values.len()),
            _ => None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == Some(0)
    }

    /// Declared growth constant `eps` with `z_n >= eps * n`. Advisory only
    /// (a floating value suffices for choosing bounds).
    pub fn growth_epsilon(&self) -> f64 {
        let f = |q: &BigRational| q.to_f64().unwrap_or(f64::NAN);
        match &self.kind {
            SequenceKind::PowerShift { c, beta, .. } => {
                let one_c = 1.0 + f(c);
                one_c.powf(f(beta) - 1.0) * one_c.min(1.0)
            }
            SequenceKind::Linear { c } => (1.0 + f(c)).min(1.0),
            SequenceKind::ShiftedSquare { .. } | SequenceKind::HalfSquare => 1.0,
            SequenceKind::Custom { growth_epsilon, .. } => f(growth_epsilon),
        }
    }

    /// Exponent `e` such that `z_n` grows like `n^e`.
    pub fn growth_exponent(&self) -> Option<BigRational> {
        match &self.kind {
            SequenceKind::PowerShift { beta, .. } => Some(beta.clone()),
            SequenceKind::Linear { .. } => Some(BigRational::one()),
            SequenceKind::ShiftedSquare { .. } | SequenceKind::HalfSquare => Some(rat_int(2)),
            SequenceKind::Custom { .. } => None,
        }
    }

    fn check_index(&self, n: u64) -> Result<()> {
        if n == 0 {
            return Err(Error::Domain("sequence index starts at 1".into()));
        }
        if let Some(len) = self.len() {
            if n as usize > len {
                return Err(Error::IndexOutOfRange { index: n as usize, len });
            }
        }
        Ok(())
    }

    /// Exact `z_n` when it is rational.
    pub fn z_rational(&self, n: u64) -> Result<Option<BigRational>> {
        self.check_index(n)?;
        let nn = rat_int(n as i64);
        Ok(match &self.kind {
            SequenceKind::PowerShift { c, d, beta } => {
                if beta.is_integer() {
                    let b = beta.to_integer().to_i32().expect("beta fits in i32");
                    Some(crate::kernel::rational::rat_pow(&(nn + c), b) + d)
                } else {
                    None
                }
            }
            SequenceKind::Linear { c } => Some(nn + c),
            SequenceKind::ShiftedSquare { c } => {
                let m = nn + rat_int(*c as i64);
                Some(&m * &m)
            }
            SequenceKind::HalfSquare => {
                let m = nn + rat(1, 2);
                Some(&m * &m)
            }
            SequenceKind::Custom { values, .. } => Some(values[n as usize - 1].clone()),
        })
    }

    /// `z_n` at the working precision of `ctx`.
    pub fn z_value(&self, n: u64, ctx: &PrecisionContext) -> Result<BigReal> {
        self.z_at(n, ctx.bits())
    }

    pub(crate) fn z_at(&self, n: u64, prec: u32) -> Result<BigReal> {
        if let Some(q) = self.z_rational(n)? {
            return Ok(BigReal::from_rational(&q, prec));
        }
        match &self.kind {
            SequenceKind::PowerShift { c, d, beta } => {
                let base = BigReal::from_rational(&(rat_int(n as i64) + c), prec + 16);
                let p = base.pow_rational(beta).with_prec(prec);
                Ok(p + BigReal::from_rational(d, prec))
            }
            _ => unreachable!("non-rational value for a rational kind"),
        }
    }

    /// Checks the exponent `alpha` admitted by the generating function:
    /// `alpha > 0`, or `alpha = 0` with `sum 1/z_n` convergent.
    pub fn check_alpha(&self, alpha: &BigRational) -> Result<()> {
        if alpha.is_negative() {
            return Err(Error::Domain(format!("alpha must be >= 0, got {alpha}")));
        }
        if alpha.is_zero() {
            match self.growth_exponent() {
                Some(e) if e > BigRational::one() => {}
                Some(_) => {
                    return Err(Error::Domain(
                        "alpha = 0 needs sum 1/z_n convergent, which fails for linear growth"
                            .into(),
                    ))
                }
                None => {
                    return Err(Error::Unsupported(
                        "convergence of sum 1/z_n cannot be certified for a finite prefix".into(),
                    ))
                }
            }
        }
        Ok(())
    }

    /// Whether `sum z_n^(-s)` converges.
    pub fn converges_at(&self, s: &BigRational) -> Result<bool> {
        match self.growth_exponent() {
            Some(e) => Ok(&e * s > BigRational::one()),
            None => Err(Error::Unsupported(
                "a finite custom prefix cannot bound the tail of its zeta function".into(),
            )),
        }
    }
}

impl fmt::Display for ZSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            SequenceKind::PowerShift { c, d, beta } => write!(f, "power:c={c},d={d},beta={beta}"),
            SequenceKind::Linear { c } => write!(f, "linear:c={c}"),
            SequenceKind::ShiftedSquare { c } => write!(f, "sqshift:c={c}"),
            SequenceKind::HalfSquare => write!(f, "halfsq"),
            SequenceKind::Custom { values, .. } => write!(f, "custom[{}]", values.len()),
        }
    }
}

impl FromStr for ZSequence {
    type Err = Error;

    /// Grammar: `power:c=<r>,d=<r>,beta=<r>`, `linear:c=<r>`,
    /// `sqshift:c=<int>`, `halfsq`. Parameters are parsed exactly.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (name, params) = s.split_once(':').unwrap_or((s, ""));
        let mut c = None;
        let mut d = None;
        let mut beta = None;
        for part in params.split(',').filter(|p| !p.trim().is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected key=value, got {part:?}")))?;
            let slot = match key.trim() {
                "c" => &mut c,
                "d" => &mut d,
                "beta" => &mut beta,
                other => return Err(Error::Parse(format!("unknown sequence parameter {other:?}"))),
            };
            *slot = Some(value.trim().to_string());
        }
        let get = |v: &Option<String>, key: &str| -> Result<BigRational> {
            v.as_deref()
                .map(parse_rational)
                .unwrap_or_else(|| Err(Error::Parse(format!("missing parameter {key}"))))
        };
        let no_extra = |allowed: &[&str]| -> Result<()> {
            for (key, v) in [("c", &c), ("d", &d), ("beta", &beta)] {
                if v.is_some() && !allowed.contains(&key) {
                    return Err(Error::Parse(format!("parameter {key} not valid for {name}")));
                }
            }
            Ok(())
        };
        match name {
            "power" => {
                no_extra(&["c", "d", "beta"])?;
                let c = c.as_ref().map_or(Ok(BigRational::zero()), |v| parse_rational(v))?;
                let d = d.as_ref().map_or(Ok(BigRational::zero()), |v| parse_rational(v))?;
                ZSequence::power_shift(c, d, get(&beta, "beta")?)
            }
            "linear" => {
                no_extra(&["c"])?;
                let c = c.as_ref().map_or(Ok(BigRational::zero()), |v| parse_rational(v))?;
                ZSequence::linear(c)
            }
            "sqshift" => {
                no_extra(&["c"])?;
                let c = c.as_ref().map_or(Ok(BigRational::zero()), |v| parse_rational(v))?;
                if !c.is_integer() || c.is_negative() {
                    return Err(Error::Parse(format!("sqshift needs an integer c >= 0, got {c}")));
                }
                let c = c
                    .to_integer()
                    .to_u32()
                    .ok_or_else(|| Error::Parse("sqshift shift too large".into()))?;
                Ok(ZSequence::shifted_square(c))
            }
            "halfsq" => {
                no_extra(&[])?;
                Ok(ZSequence::half_square())
            }
            other => Err(Error::Parse(format!("unknown sequence kind {other:?}"))),
        }
    }
}

/// `z_n^alpha`, exactly when possible.
pub(crate) fn z_power(
    seq: &ZSequence,
    n: u64,
    alpha: &BigRational,
    prec: u32,
) -> Result<BigReal> {
    if alpha.is_zero() {
        return Ok(BigReal::from_i64(1, prec));
    }
    if let Some(z) = seq.z_rational(n)? {
        if let Some(p) = exact_rational_power(&z, alpha) {
            return Ok(BigReal::from_rational(&p, prec));
        }
        return Ok(BigReal::from_rational(&z, prec + 16).pow_rational(alpha).with_prec(prec));
    }
    Ok(seq.z_at(n, prec + 16)?.pow_rational(alpha).with_prec(prec))
}

/// `q^alpha` as an exact rational, if it is one (only roots of perfect powers).
pub fn exact_rational_power(q: &BigRational, alpha: &BigRational) -> Option<BigRational> {
    let den = alpha.denom().to_u32()?;
    let num = alpha.numer().to_i32()?;
    if q.is_negative() {
        return None;
    }
    let root = |v: &BigInt| -> Option<BigInt> {
        let r = v.nth_root(den);
        (num_traits::pow(r.clone(), den as usize) == *v).then_some(r)
    };
    let base = BigRational::new(root(q.numer())?, root(q.denom())?);
    Some(crate::kernel::rational::rat_pow(&base, num))
}

/// `(n;k) = z_n^alpha * prod_{i=1..k} (z_n - z_i)`.
pub fn pochhammer_product(
    seq: &ZSequence,
    alpha: &BigRational,
    n: u64,
    k: u64,
    ctx: &PrecisionContext,
) -> Result<BigReal> {
    let prec = ctx.bits();
    if let Some(q) = pochhammer_exact(seq, alpha, n, k)? {
        return Ok(BigReal::from_rational(&q, prec));
    }
    let zn = seq.z_at(n, prec)?;
    let mut acc = z_power(seq, n, alpha, prec)?;
    for i in 1..=k {
        acc = acc * (&zn - &seq.z_at(i, prec)?);
    }
    Ok(acc)
}

/// `(n;k)` as an exact rational when `z` and `z_n^alpha` are rational.
pub fn pochhammer_exact(
    seq: &ZSequence,
    alpha: &BigRational,
    n: u64,
    k: u64,
) -> Result<Option<BigRational>> {
    let Some(zn) = seq.z_rational(n)? else { return Ok(None) };
    let Some(mut acc) = exact_rational_power(&zn, alpha) else { return Ok(None) };
    for i in 1..=k {
        let zi = seq.z_rational(i)?.expect("rational kind");
        acc *= &zn - zi;
    }
    Ok(Some(acc))
}

/// `(k;k-1)`, using closed forms for the rational kinds.
pub(crate) fn pochhammer_diagonal(
    seq: &ZSequence,
    alpha: &BigRational,
    k: u64,
    prec: u32,
) -> Result<BigReal> {
    use crate::kernel::rational::factorial;
    let closed: Option<BigRational> = match seq.kind() {
        SequenceKind::Linear { .. } => {
            // prod (z_k - z_i) = (k-1)!
            Some(BigRational::from_integer(factorial(k - 1)))
        }
        SequenceKind::ShiftedSquare { c } => {
            // prod (k - i)(k + i + 2c) = (k-1)! (2k+2c-1)! / (k+2c)!
            let c = *c as u64;
            Some(BigRational::new(
                factorial(k - 1) * factorial(2 * k + 2 * c - 1),
                factorial(k + 2 * c),
            ))
        }
        SequenceKind::HalfSquare => {
            // prod (k - i)(k + i + 1) = (k-1)! (2k)! / (k+1)!
            Some(BigRational::new(factorial(k - 1) * factorial(2 * k), factorial(k + 1)))
        }
        _ => None,
    };
    match closed {
        Some(prod) => {
            let zk = seq.z_rational(k)?.expect("rational kind");
            if let Some(p) = exact_rational_power(&zk, alpha) {
                Ok(BigReal::from_rational(&(prod * p), prec))
            } else {
                Ok(z_power(seq, k, alpha, prec)? * BigReal::from_rational(&prod, prec))
            }
        }
        None => {
            let zk = seq.z_at(k, prec)?;
            let mut acc = z_power(seq, k, alpha, prec)?;
            for i in 1..k {
                acc = acc * (&zk - &seq.z_at(i, prec)?);
            }
            Ok(acc)
        }
    }
}

/// Verdict of the boundedness diagnostic.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PnVerdict {
    BoundedLooking,
    Suspect,
}

#[derive(Clone, Debug)]
pub struct PnDiagnostic {
    /// `(N, P_N)` for `N = 1..N_max`.
    pub values: Vec<(u64, BigReal)>,
    pub verdict: PnVerdict,
}

/// `P_N = prod_{j=1..N} (z_1 + z_j) / (z_{N+1} - z_j)` for `N = 1..n_max`,
/// with a trend verdict over the last half of the range. Advisory only.
pub fn pn_bound_diagnostic(
    seq: &ZSequence,
    n_max: u64,
    ctx: &PrecisionContext,
) -> Result<PnDiagnostic> {
    if n_max < 2 {
        return Err(Error::Domain("pn diagnostic needs N_max >= 2".into()));
    }
    let prec = ctx.bits();
    let z: Vec<BigReal> = (1..=n_max + 1).map(|n| seq.z_at(n, prec)).collect::<Result<_>>()?;
    let mut values = Vec::with_capacity(n_max as usize);
    for big_n in 1..=n_max as usize {
        let mut p = BigReal::from_i64(1, prec);
        for j in 0..big_n {
            p = p * (&z[0] + &z[j]) / (&z[big_n] - &z[j]);
        }
        values.push((big_n as u64, p));
    }
    let start = (n_max as usize) / 2;
    let non_increasing = values[start.saturating_sub(1)..]
        .windows(2)
        .all(|w| w[1].1.value() <= w[0].1.value());
    let verdict = if non_increasing { PnVerdict::BoundedLooking } else { PnVerdict::Suspect };
    Ok(PnDiagnostic { values, verdict })
}

/// `sum_{n > n0} z_n^(-s)`, with the error of the underlying zeta evaluation.
pub fn power_tail(
    seq: &ZSequence,
    s: &BigRational,
    n0: u64,
    ctx: &PrecisionContext,
) -> Result<BigReal> {
    if !seq.converges_at(s)? {
        return Err(Error::Domain(format!("sum z_n^(-s) diverges at s = {s}")));
    }
    let first = rat_int(n0 as i64 + 1);
    match seq.kind() {
        SequenceKind::Linear { c } => hurwitz(s, &(first + c), ctx),
        SequenceKind::ShiftedSquare { c } => {
            hurwitz(&(s * rat_int(2)), &(first + rat_int(*c as i64)), ctx)
        }
        SequenceKind::HalfSquare => hurwitz(&(s * rat_int(2)), &(first + rat(1, 2)), ctx),
        SequenceKind::PowerShift { c, d, beta } => {
            if d.is_zero() {
                hurwitz(&(s * beta), &(first + c), ctx)
            } else {
                power_shift_tail(seq, c, d, beta, s, n0, ctx)
            }
        }
        SequenceKind::Custom { .. } => Err(Error::Unsupported(
            "a finite custom prefix cannot bound its tail".into(),
        )),
    }
}

/// Tail of `sum ((n+c)^beta + d)^(-s)` through the binomial series in
/// `d / (n+c)^beta`, after summing directly until that ratio is below 1/4.
fn power_shift_tail(
    seq: &ZSequence,
    c: &BigRational,
    d: &BigRational,
    beta: &BigRational,
    s: &BigRational,
    n0: u64,
    ctx: &PrecisionContext,
) -> Result<BigReal> {
    let prec = ctx.bits() + 8;
    let inner = ctx.raised(3);
    let df = d.to_f64().unwrap_or(f64::MAX);
    let cf = c.to_f64().unwrap_or(0.0);
    let bf = beta.to_f64().unwrap_or(2.0);
    let mut start = n0;
    let mut sum = BigReal::zero(prec);
    while (start as f64 + 1.0 + cf).powf(bf) < 4.0 * df {
        start += 1;
        let z = seq.z_at(start, prec)?;
        sum = sum + z.pow_rational(&-s);
    }
    let base = BigReal::from_rational(&(rat_int(start as i64 + 1) + c), prec)
        .pow_rational(beta);
    let d_real = BigReal::from_rational(d, prec);
    let rho = &d_real / &base; // at most 1/4
    let t0 = hurwitz(&(s * beta), &(rat_int(start as i64 + 1) + c), &inner)?;
    let eps = Float::pow2(-(prec as i64));
    // coefficient C(-s, j) d^j, exact
    let mut coeff = BigRational::one();
    let mut j = 0i64;
    loop {
        let term_t = if j == 0 {
            t0.clone()
        } else {
            hurwitz(&(beta * (s + rat_int(j))), &(rat_int(start as i64 + 1) + c), &inner)?
        };
        sum = sum + BigReal::from_rational(&coeff, prec) * term_t;
        // next coefficient: C(-s, j+1) d^(j+1) = C(-s, j) d^j * (-(s+j)/(j+1)) * d
        coeff = coeff * -(s + rat_int(j)) / rat_int(j + 1) * d;
        j += 1;
        // remaining terms are bounded by |C(-s,j)| rho^j T0 / (1 - q) with
        // q = rho (s+j)/(j+1) the ratio of consecutive coefficient bounds
        let abs_coeff = BigReal::from_rational(&coeff.abs(), prec);
        let bound = &abs_coeff / &base.powi(j) * t0.abs();
        let sj = (s + rat_int(j)).to_f64().unwrap_or(f64::MAX);
        let q = rho.to_f64() * sj / (j as f64 + 1.0);
        if q < 0.5 && bound.upper_abs().mul_i64(2, 64) < eps {
            return Ok(sum.with_added_err(&bound.upper_abs().mul_i64(2, 64)).with_prec(ctx.bits()));
        }
        if j > 10_000 {
            return Err(Error::accuracy("binomial tail expansion did not settle", sum));
        }
    }
}

/// `sum_{n > n0} z_n^(-alpha) prod_r 1/(z_n - r)` for real `roots`.
///
/// Terms are summed directly until every root is at most an eighth of
/// `z_{n+1}`; the rest is expanded as `sum_j h_j(roots) T(alpha + k + j)`,
/// where `h_j` are the complete homogeneous symmetric polynomials and `T` the
/// power tail. The expansion is cut once the bound
/// `T(alpha + k) * sum_{j >= J} C(j+k-1, k-1) rho^j` drops below working
/// precision. Returns the value and the number of directly summed terms.
pub fn rational_tail(
    seq: &ZSequence,
    alpha: &BigRational,
    roots: &[BigReal],
    n0: u64,
    ctx: &PrecisionContext,
) -> Result<(BigReal, u64)> {
    let prec = ctx.bits() + 8;
    let k = roots.len() as i64;
    let s0 = alpha + rat_int(k);
    if !seq.converges_at(&s0)? {
        return Err(Error::Domain(format!("series with exponent {s0} diverges")));
    }
    let max_root = roots.iter().map(|r| r.upper_abs()).fold(Float::zero(), Float::max);
    let mut sum = BigReal::zero(prec);
    let mut n = n0;
    let mut direct = 0u64;
    loop {
        let z_next = seq.z_at(n + 1, prec)?;
        if max_root.mul_i64(8, 64) <= *z_next.value() {
            break;
        }
        n += 1;
        direct += 1;
        if direct > ctx.max_terms {
            return Err(Error::accuracy("direct part of the tail exceeded max_terms", sum));
        }
        let mut term = z_power(seq, n, alpha, prec)?.recip();
        for r in roots {
            let diff = &z_next - r;
            term = term.try_div(&diff)?;
        }
        sum = sum + term;
    }
    let z_first = seq.z_at(n + 1, prec)?;
    let rho = max_root.div(z_first.value(), 64).to_f64();
    let inner = ctx.raised(3);
    let eps = Float::pow2(-(prec as i64));
    // h_j for j = 0.. built incrementally; start with the empty product
    let t_base = power_tail(seq, &s0, n, &inner)?;
    let mut j: i64 = 0;
    let mut h_prev: Vec<BigReal> = Vec::new();
    loop {
        let h = complete_homogeneous(roots, j as usize, &mut h_prev, prec);
        let t = if j == 0 { t_base.clone() } else { power_tail(seq, &(&s0 + rat_int(j)), n, &inner)? };
        sum = sum + &h * &t;
        j += 1;
        // sum_{i >= j} C(i+k-1, k-1) rho^i, bounded via the ratio at i = j
        let bound = if k == 0 {
            0.0
        } else {
            let coeff = binomial_f64(j + k - 1, k - 1) * rho.powi(j as i32);
            let ratio = rho * (j + k) as f64 / (j + 1) as f64;
            if ratio >= 0.75 {
                f64::INFINITY
            } else {
                coeff / (1.0 - ratio)
            }
        };
        if k == 0 {
            return Ok((sum.with_prec(ctx.bits()), direct));
        }
        if bound.is_finite() {
            let b = t_base.upper_abs().mul(&Float::from_f64(bound), 64).mul_i64(2, 64);
            if b < eps {
                return Ok((sum.with_added_err(&b).with_prec(ctx.bits()), direct));
            }
        }
        if j > 20_000 {
            return Err(Error::accuracy("tail expansion did not settle", sum));
        }
    }
}

fn binomial_f64(n: i64, k: i64) -> f64 {
    if k < 0 || k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Returns `h_j(roots)`; `state` holds `h_{j-1}` restricted to the first
/// `i` roots for each `i` (the usual `h_j(r_1..r_i) = h_j(r_1..r_{i-1}) +
/// r_i h_{j-1}(r_1..r_i)` recurrence, one degree per call).
fn complete_homogeneous(
    roots: &[BigReal],
    j: usize,
    state: &mut Vec<BigReal>,
    prec: u32,
) -> BigReal {
    if j == 0 {
        *state = vec![BigReal::from_i64(1, prec); roots.len() + 1];
        return BigReal::from_i64(1, prec);
    }
    // state[i] = h_{j-1}(r_1..r_i); compute h_j prefix by prefix
    let mut next = Vec::with_capacity(roots.len() + 1);
    next.push(BigReal::zero(prec)); // h_j() = 0 for j > 0
    for (i, r) in roots.iter().enumerate() {
        let v = &next[i] + &(r * &state[i + 1]);
        next.push(v);
    }
    let out = next[roots.len()].clone();
    *state = next;
    out
}

/// `zeta_z(s) = sum_{n >= 1} z_n^(-s)`.
pub fn zeta_z(seq: &ZSequence, s: &BigRational, ctx: &PrecisionContext) -> Result<BigReal> {
    power_tail(seq, s, 0, ctx)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::zeta_int;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(30)
    }

    #[test]
    fn values() {
        let c = ctx();
        let sq = ZSequence::power_shift(rat_int(0), rat_int(0), rat_int(2)).unwrap();
        assert_eq!(sq.z_rational(3).unwrap(), Some(rat_int(9)));
        let lin = ZSequence::linear(rat_int(0)).unwrap();
        assert_eq!(lin.z_value(5, &c).unwrap().to_f64(), 5.0);
        assert_eq!(ZSequence::half_square().z_rational(1).unwrap(), Some(rat(9, 4)));
        let cu = ZSequence::custom(vec![rat_int(1), rat_int(3)], rat(1, 2)).unwrap();
        assert!(matches!(cu.z_rational(3), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn parses_spec_strings() {
        let s: ZSequence = "power:c=0.5,d=0,beta=2.5".parse().unwrap();
        assert_eq!(s.to_string(), "power:c=1/2,d=0,beta=5/2");
        assert_eq!("sqshift:c=2".parse::<ZSequence>().unwrap(), ZSequence::shifted_square(2));
        assert_eq!("halfsq".parse::<ZSequence>().unwrap(), ZSequence::half_square());
        assert!("sqshift:c=1.5".parse::<ZSequence>().is_err());
        assert!("linear:c=-1".parse::<ZSequence>().is_err());
        assert!("linear:beta=2".parse::<ZSequence>().is_err());
    }

    #[test]
    fn products() {
        let c = ctx();
        let sq = ZSequence::squares();
        let half = rat(1, 2);
        let p = pochhammer_product(&sq, &half, 3, 2, &c).unwrap();
        assert_eq!(p.to_f64(), 120.0);
        let hs = ZSequence::half_square();
        let q = pochhammer_exact(&hs, &rat_int(0), 2, 1).unwrap().unwrap();
        assert_eq!(q, rat_int(4));
        for k in 1..8u64 {
            let d = pochhammer_diagonal(&sq, &half, k, c.bits()).unwrap();
            let e = pochhammer_exact(&sq, &half, k, k - 1).unwrap().unwrap();
            assert!(d.agrees_with(&BigReal::from_rational(&e, c.bits()), 1));
        }
    }

    #[test]
    fn zeta_of_sequences() {
        let c = ctx();
        let z3 = zeta_int(3, &c).unwrap();
        let sq = ZSequence::squares();
        assert!(zeta_z(&sq, &rat(3, 2), &c).unwrap().agrees_with(&z3, 1));
        let lin = ZSequence::linear(rat_int(0)).unwrap();
        assert!(zeta_z(&lin, &rat_int(3), &c).unwrap().agrees_with(&z3, 1));
        assert!(zeta_z(&lin, &rat_int(1), &c).is_err());
    }

    #[test]
    fn shifted_power_tail_uses_binomial_series() {
        let c = PrecisionContext::new(20);
        // z_n = n^2 + 1: sum 1/(n^2+1) = (pi coth(pi) - 1)/2 = 1.07667404746858117...
        let seq = ZSequence::power_shift(rat_int(0), rat_int(1), rat_int(2)).unwrap();
        let v = zeta_z(&seq, &rat_int(1), &c).unwrap();
        assert_eq!(v.to_fixed_string(17), "1.07667404746858117");
    }

    #[test]
    fn pn_diagnostic() {
        let c = PrecisionContext::new(15);
        let d = pn_bound_diagnostic(&ZSequence::squares(), 50, &c).unwrap();
        assert!((d.values[0].1.to_f64() - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(d.verdict, PnVerdict::BoundedLooking);
        let lin = ZSequence::linear(rat_int(0)).unwrap();
        assert_eq!(pn_bound_diagnostic(&lin, 50, &c).unwrap().verdict, PnVerdict::Suspect);
    }
}
