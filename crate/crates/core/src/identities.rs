//! Registry of checkable identities and their verification runs.
//!
//! Every entry binds a stable id and a parameter schema to a routine that
//! produces an [`IdentityReport`]. Identities that are exact rational
//! statements report a bracket instead of a floating tolerance.

use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::euler_sums::{
    lemma43_integral, lemma43_reference, theorem41_n2_diagnostic, theorem41_rhs, theorem42_genfun,
    theorem42_reference,
};
use crate::kernel::rational::{binomial, parse_rational, rat, rat_int};
use crate::kernel::{pi_reference, zeta_int, BigReal, Float, PrecisionContext};
use crate::markov_apery::verify_theorem51;
use crate::pi_powers::{leshchiner_check, lemma63_bracket, lemma63_sum, theorem61_lhs, theorem61_rhs};
use crate::report::{Comparison, IdentityReport, ReportStatus};
use crate::transform::{
    accelerated_sum, lhs_sum, telescoping_partial, telescoping_remainder, telescoping_tail,
    TransformInstance,
};
use crate::truncation::{sum_series, SeriesValue, TailRule};

/// Accepted values of one parameter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum ParamKind {
    Integer { min: i64, max: i64 },
    /// Decimal or fraction between two bounds.
    Rational { lower: &'static str, upper: &'static str, lower_inclusive: bool, upper_inclusive: bool },
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct ParamSpec {
    pub name: &'static str,
    pub kind: ParamKind,
    pub description: &'static str,
}

/// One registered identity.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct IdentityEntry {
    pub id: &'static str,
    pub description: &'static str,
    pub params: &'static [ParamSpec],
    /// The `module::operation` doing the work.
    pub binding: &'static str,
    /// Parameter sets run by `verify --all`.
    pub standard_runs: &'static [&'static [(&'static str, &'static str)]],
}

const fn int(name: &'static str, min: i64, max: i64, description: &'static str) -> ParamSpec {
    ParamSpec { name, kind: ParamKind::Integer { min, max }, description }
}

const X_OPEN_UNIT: ParamKind =
    ParamKind::Rational { lower: "-1", upper: "1", lower_inclusive: false, upper_inclusive: false };
const Z_POSITIVE: ParamKind =
    ParamKind::Rational { lower: "0", upper: "1000", lower_inclusive: false, upper_inclusive: true };
const Z_GENFUN: ParamKind =
    ParamKind::Rational { lower: "-1", upper: "1", lower_inclusive: true, upper_inclusive: true };

static REGISTRY: &[IdentityEntry] = &[
    IdentityEntry {
        id: "eq1.1",
        description: "zeta(3) = 5/2 sum (-1)^(k-1) / (C(2k,k) k^3)",
        params: &[],
        binding: "identities::markov_series",
        standard_runs: &[&[]],
    },
    IdentityEntry {
        id: "eq1.3",
        description: "sum 1/(n(n^2-x^2)) against its accelerated central-binomial form",
        params: &[ParamSpec { name: "x", kind: X_OPEN_UNIT, description: "real point, |x| < 1" }],
        binding: "transform::accelerated_sum",
        standard_runs: &[&[("x", "0.1")], &[("x", "0.25")], &[("x", "0.5")]],
    },
    IdentityEntry {
        id: "eq1.4",
        description: "zeta(5) from two central-binomial series with H^(2)_(k-1)",
        params: &[],
        binding: "identities::zeta5_series",
        standard_runs: &[&[]],
    },
    IdentityEntry {
        id: "thm41",
        description: "zeta(n) as a signed combination of alternating Euler sums",
        params: &[int("n", 2, 12, "weight; n = 2 is rejected with a diagnostic")],
        binding: "euler_sums::theorem41_rhs",
        standard_runs: &[
            &[("n", "3")],
            &[("n", "4")],
            &[("n", "5")],
            &[("n", "6")],
            &[("n", "7")],
            &[("n", "8")],
        ],
    },
    IdentityEntry {
        id: "thm42",
        description: "truncated sum S_n z^(n-1) against psi(1) - psi(1 + z/2)",
        params: &[ParamSpec { name: "z", kind: Z_GENFUN, description: "0 < |z| <= 1" }],
        binding: "euler_sums::theorem42_genfun",
        standard_runs: &[&[("z", "1/4")], &[("z", "1/2")], &[("z", "3/4")]],
    },
    IdentityEntry {
        id: "lemma43",
        description: "int_0^1 ((1+x^z)/(1+x)^z - 1) dx/x = psi(1) - psi(z)",
        params: &[ParamSpec { name: "z", kind: Z_POSITIVE, description: "z > 0" }],
        binding: "euler_sums::lemma43_integral",
        standard_runs: &[
            &[("z", "1/2")],
            &[("z", "1")],
            &[("z", "2")],
            &[("z", "3.7")],
            &[("z", "10")],
        ],
    },
    IdentityEntry {
        id: "lemma24",
        description: "sum_{n>k} 1/((n+r+k)...(n+r-k)) = r!/(2k (2k+r)!), exact",
        params: &[int("r", 0, 20, "shift r >= 0"), int("k", 1, 20, "order k >= 1")],
        binding: "transform::telescoping_partial",
        standard_runs: &[
            &[("r", "0"), ("k", "1")],
            &[("r", "2"), ("k", "3")],
            &[("r", "4"), ("k", "5")],
        ],
    },
    IdentityEntry {
        id: "thm51",
        description: "zeta(3) minus its first c terms as a central-binomial series with P_c(k)",
        params: &[int("c", 0, 8, "number of removed terms")],
        binding: "markov_apery::verify_theorem51",
        standard_runs: &[
            &[("c", "0")],
            &[("c", "1")],
            &[("c", "2")],
            &[("c", "3")],
            &[("c", "4")],
            &[("c", "5")],
        ],
    },
    IdentityEntry {
        id: "eq5.3",
        description: "zeta(3) = 1 + 1/4 sum (-1)^(k-1) (5k^3+12k^2+4k+2) / (C(2k,k) k (k+1)^2 (2k+1))",
        params: &[],
        binding: "identities::eq53_series",
        standard_runs: &[&[]],
    },
    IdentityEntry {
        id: "eq5.4",
        description: "zeta(3) = 1 + 1/8 + 1/16 sum (-1)^(k-1) P_2(k) / (C(2k+2,k+1) k (k+1) (k+2)^2 (2k+3))",
        params: &[],
        binding: "identities::eq54_series",
        standard_runs: &[&[]],
    },
    IdentityEntry {
        id: "eq6.2",
        description: "(1 - 4^(-mu-1)) zeta(2mu+2) as a series with odd harmonic sums",
        params: &[int("mu", 0, 8, "exponent parameter")],
        binding: "pi_powers::theorem61_rhs",
        standard_runs: &[&[("mu", "0")], &[("mu", "1")], &[("mu", "2")], &[("mu", "3")], &[("mu", "4")]],
    },
    IdentityEntry {
        id: "eq6.3",
        description: "pi^2/8 = 1 + sum (-1)^(k-1) C(2k,k) (10k^3+9k^2-k+1) / (16^k (2k-1) (2k+1)^2)",
        params: &[],
        binding: "identities::eq63_series",
        standard_runs: &[&[]],
    },
    IdentityEntry {
        id: "eq6.4",
        description: "pi^4/96 as a central-binomial series with inner odd-square sums",
        params: &[],
        binding: "identities::eq64_series",
        standard_runs: &[&[]],
    },
    IdentityEntry {
        id: "lemma63",
        description: "sum_{n>k} 1/(n;k) for z_n = (n+1/2)^2, exact bracket around the closed form",
        params: &[int("k", 1, 30, "order k >= 1")],
        binding: "pi_powers::lemma63_bracket",
        standard_runs: &[
            &[("k", "1")],
            &[("k", "2")],
            &[("k", "3")],
            &[("k", "4")],
            &[("k", "5")],
            &[("k", "6")],
        ],
    },
    IdentityEntry {
        id: "leshchiner",
        description: "pi^2/10 (mu = 0) and pi^4/96 (mu = 1) central-binomial comparison series",
        params: &[int("mu", 0, 1, "0 or 1")],
        binding: "pi_powers::leshchiner_check",
        standard_runs: &[&[("mu", "0")], &[("mu", "1")]],
    },
];

pub fn registry() -> &'static [IdentityEntry] {
    REGISTRY
}

pub fn lookup(id: &str) -> Option<&'static IdentityEntry> {
    REGISTRY.iter().find(|e| e.id == id)
}

/// Validated parameter values, keyed by name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Params {
    values: BTreeMap<String, String>,
}

impl Params {
    /// Checks raw `name=value` pairs against an entry's schema. Integers are
    /// canonicalized; rationals keep their text.
    pub fn parse<I, S>(entry: &IdentityEntry, raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut values = BTreeMap::new();
        for item in raw {
            let item = item.as_ref();
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("expected name=value, got {item:?}")))?;
            let (name, value) = (name.trim(), value.trim());
            let spec = entry.params.iter().find(|p| p.name == name).ok_or_else(|| {
                Error::Parse(format!("{} takes no parameter {name:?}", entry.id))
            })?;
            let canonical = check_value(spec, value)?;
            if values.insert(name.to_string(), canonical).is_some() {
                return Err(Error::Parse(format!("parameter {name:?} given twice")));
            }
        }
        for p in entry.params {
            if !values.contains_key(p.name) {
                return Err(Error::Parse(format!("{} needs parameter {}", entry.id, p.name)));
            }
        }
        Ok(Params { values })
    }

    pub fn from_pairs(entry: &IdentityEntry, pairs: &[(&str, &str)]) -> Result<Self> {
        Self::parse(entry, pairs.iter().map(|(k, v)| format!("{k}={v}")))
    }

    pub fn get(&self, name: &str) -> Option<&str> {
        self.values.get(name).map(String::as_str)
    }

    fn int(&self, name: &str) -> u32 {
        self.values[name].parse().expect("validated")
    }

    fn rational(&self, name: &str) -> BigRational {
        parse_rational(&self.values[name]).expect("validated")
    }

    fn pairs(&self) -> Vec<(&str, String)> {
        self.values.iter().map(|(k, v)| (k.as_str(), v.clone())).collect()
    }
}

impl fmt::Display for Params {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let v: Vec<String> = self.values.iter().map(|(k, v)| format!("{k}={v}")).collect();
        f.write_str(&v.join(" "))
    }
}

fn check_value(spec: &ParamSpec, value: &str) -> Result<String> {
    match spec.kind {
        ParamKind::Integer { min, max } => {
            let v: i64 = value
                .parse()
                .map_err(|_| Error::Parse(format!("{} must be an integer, got {value:?}", spec.name)))?;
            if v < min || v > max {
                return Err(Error::Parse(format!("{} = {v} outside {min}..={max}", spec.name)));
            }
            Ok(v.to_string())
        }
        ParamKind::Rational { lower, upper, lower_inclusive, upper_inclusive } => {
            let v = parse_rational(value)?;
            let lo = parse_rational(lower).expect("static bound");
            let hi = parse_rational(upper).expect("static bound");
            let above = if lower_inclusive { v >= lo } else { v > lo };
            let below = if upper_inclusive { v <= hi } else { v < hi };
            if !above || !below {
                return Err(Error::Parse(format!("{} = {value} outside the allowed range", spec.name)));
            }
            Ok(value.to_string())
        }
    }
}

fn series_report(
    id: &str,
    params: &Params,
    lhs: &BigReal,
    rhs: &SeriesValue,
    ctx: &PrecisionContext,
    started: Instant,
) -> IdentityReport {
    IdentityReport::compare(
        Comparison {
            identity_id: id,
            parameters: params.pairs(),
            lhs,
            rhs: &rhs.value,
            terms_used: rhs.terms_used,
            tail_rule: rhs.rule,
            started,
        },
        ctx,
    )
}

/// Report for an exact statement `lo <= value <= hi`. The right-hand side is
/// the bracket midpoint and the tolerance its half-width, so `pass` is
/// equivalent to the bracket holding.
#[allow(clippy::too_many_arguments)]
fn bracket_report(
    id: &str,
    params: &Params,
    value: &BigRational,
    lo: &BigRational,
    hi: &BigRational,
    terms: u64,
    ctx: &PrecisionContext,
    started: Instant,
) -> IdentityReport {
    let prec = ctx.bits();
    let two = rat_int(2);
    let mid = (lo + hi) / &two;
    let half = (hi - lo) / &two;
    let diff = (value - &mid).abs();
    let inside = lo <= value && value <= hi;
    let sig = ctx.target_digits as usize + 1;
    let f = |q: &BigRational, s: usize| Float::from_rational(q, prec).to_sci_string(s);
    IdentityReport {
        identity_id: id.to_string(),
        parameters: params.values.clone(),
        digits: ctx.target_digits,
        lhs: f(value, sig),
        rhs: f(&mid, sig),
        lhs_err: "0".into(),
        rhs_err: f(&half, 3),
        abs_diff: f(&diff, 3),
        tolerance: f(&half, 3),
        terms_used: terms,
        tail_rule: TailRule::Exact,
        elapsed_ms: started.elapsed().as_millis() as u64,
        pass: inside,
        status: if inside { ReportStatus::Pass } else { ReportStatus::Fail },
        note: Some("exact rational bracket".into()),
    }
}

fn central(k: i64) -> BigInt {
    binomial(2 * k, k)
}

fn alt(k: i64, v: BigRational) -> BigRational {
    if k % 2 == 1 {
        v
    } else {
        -v
    }
}

/// `5/2 sum (-1)^(k-1) / (C(2k,k) k^3)`.
pub fn markov_series(ctx: &PrecisionContext) -> Result<SeriesValue> {
    let prec = ctx.bits();
    sum_series(ctx, 1, |k| {
        let k = k as i64;
        let t = BigRational::new(BigInt::from(5), central(k) * BigInt::from(2 * k * k * k));
        Ok(BigReal::from_rational(&alt(k, t), prec))
    })
}

/// `2 sum (-1)^(k-1)/(C(2k,k) k^5) - 5/2 sum (-1)^(k-1) H^(2)_(k-1)/(C(2k,k) k^3)`,
/// summed termwise with the harmonic factors kept exact.
pub fn zeta5_series(ctx: &PrecisionContext) -> Result<SeriesValue> {
    let prec = ctx.bits();
    let mut h2 = BigRational::zero();
    sum_series(ctx, 1, |k| {
        let k = k as i64;
        if k > 1 {
            h2 += rat(1, (k - 1) * (k - 1));
        }
        let c = BigRational::from_integer(central(k));
        let k3 = rat_int(k * k * k);
        let t = rat_int(2) / (&c * &k3 * rat_int(k * k)) - rat(5, 2) * &h2 / (&c * &k3);
        Ok(BigReal::from_rational(&alt(k, t), prec))
    })
}

/// `H^(2)_n = sum_{j<=n} 1/j^2`, exact.
pub fn harmonic2(n: u64) -> BigRational {
    (1..=n as i64).map(|j| rat(1, j * j)).sum()
}

pub fn eq53_series(ctx: &PrecisionContext) -> Result<SeriesValue> {
    let prec = ctx.bits();
    let mut v = sum_series(ctx, 1, |k| {
        let k = k as i64;
        let num = rat_int(5 * k * k * k + 12 * k * k + 4 * k + 2);
        let den = BigRational::from_integer(
            central(k) * BigInt::from(4 * k * (k + 1) * (k + 1) * (2 * k + 1)),
        );
        Ok(BigReal::from_rational(&alt(k, num / den), prec))
    })?;
    v.value = v.value + BigReal::from_i64(1, prec);
    Ok(v)
}

/// Reference coefficients of `P_2(k)`, high to low.
pub const P2_COEFFS: [i64; 7] = [5, 49, 171, 271, 232, 128, 48];

pub fn eq54_series(ctx: &PrecisionContext) -> Result<SeriesValue> {
    let prec = ctx.bits();
    let mut v = sum_series(ctx, 1, |k| {
        let k = k as i64;
        let p2 = P2_COEFFS.iter().fold(BigInt::zero(), |acc, &c| acc * k + c);
        let den = binomial(2 * k + 2, k + 1)
            * BigInt::from(16 * k * (k + 1) * (k + 2) * (k + 2) * (2 * k + 3));
        Ok(BigReal::from_rational(&alt(k, BigRational::new(p2, den)), prec))
    })?;
    v.value = v.value + BigReal::from_rational(&rat(9, 8), prec);
    Ok(v)
}

fn sixteen_pow(k: i64) -> BigInt {
    num_traits::pow(BigInt::from(16), k as usize)
}

pub fn eq63_series(ctx: &PrecisionContext) -> Result<SeriesValue> {
    let prec = ctx.bits();
    let mut v = sum_series(ctx, 1, |k| {
        let k = k as i64;
        let t = BigRational::new(
            central(k) * BigInt::from(10 * k * k * k + 9 * k * k - k + 1),
            sixteen_pow(k) * BigInt::from((2 * k - 1) * (2 * k + 1) * (2 * k + 1)),
        );
        Ok(BigReal::from_rational(&alt(k, t), prec))
    })?;
    v.value = v.value + BigReal::from_i64(1, prec);
    Ok(v)
}

pub fn eq64_series(ctx: &PrecisionContext) -> Result<SeriesValue> {
    let prec = ctx.bits();
    let mut inner = BigRational::zero();
    let mut v = sum_series(ctx, 1, |k| {
        let k = k as i64;
        if k > 1 {
            inner += rat(1, (2 * k - 1) * (2 * k - 1));
        }
        let odd2 = rat_int((2 * k + 1) * (2 * k + 1));
        let bracket = rat_int(4 * k * (k + 1)) / &odd2
            - rat_int(10 * k * k * k + 9 * k * k - k + 1) / rat_int(2 * k - 1) * &inner;
        let t = BigRational::new(central(k), sixteen_pow(k)) / odd2 * bracket;
        Ok(BigReal::from_rational(&alt(k, t), prec))
    })?;
    v.value = v.value + BigReal::from_i64(1, prec);
    Ok(v)
}

fn pi_power_over(power: i64, den: i64, ctx: &PrecisionContext) -> BigReal {
    let pi = pi_reference(ctx);
    pi.powi(power) / BigReal::from_i64(den, ctx.bits())
}

/// Runs the verification bound to `id`.
///
/// `thm41` with `n = 2` fails with [`Error::Unsupported`] whose message
/// carries the numerical diagnostic.
pub fn verify(id: &str, params: &Params, ctx: &PrecisionContext) -> Result<IdentityReport> {
    let entry = lookup(id).ok_or_else(|| Error::Parse(format!("unknown identity {id:?}")))?;
    let started = Instant::now();
    let report = match entry.id {
        "eq1.1" => {
            let lhs = zeta_int(3, ctx)?;
            series_report(id, params, &lhs, &markov_series(ctx)?, ctx, started)
        }
        "eq1.3" => {
            let inst = TransformInstance::koecher(&params.rational("x"))?;
            let lhs = lhs_sum(&inst, ctx)?;
            let rhs = accelerated_sum(&inst, ctx)?;
            series_report(id, params, &lhs.value, &rhs, ctx, started)
        }
        "eq1.4" => {
            let lhs = zeta_int(5, ctx)?;
            series_report(id, params, &lhs, &zeta5_series(ctx)?, ctx, started)
        }
        "thm41" => {
            let n = params.int("n");
            if n == 2 {
                let diag = theorem41_n2_diagnostic(ctx)?;
                return Err(Error::Unsupported(diag.to_string()));
            }
            let lhs = zeta_int(n as i64, ctx)?;
            let rhs = theorem41_rhs(n, ctx)?;
            let rhs = SeriesValue {
                value: rhs,
                terms_used: (n - 2) as u64,
                tail_bound: Float::zero(),
                rule: TailRule::Quadrature,
            };
            series_report(id, params, &lhs, &rhs, ctx, started)
                .with_note("terms_used counts the Euler-sum integrals")
        }
        "thm42" => {
            let z = params.rational("z");
            let h = theorem42_genfun(&z, None, ctx)?;
            let reference = theorem42_reference(&z, ctx)?;
            let tol = ctx.tolerance().add(&h.tail_estimate, 64);
            IdentityReport::compare_with_tolerance(
                Comparison {
                    identity_id: id,
                    parameters: params.pairs(),
                    lhs: &reference,
                    rhs: &h.value,
                    terms_used: (h.n_max - 1) as u64,
                    tail_rule: TailRule::Quadrature,
                    started,
                },
                ctx,
                &tol,
            )
            .with_note(format!(
                "n_max = {}, geometric tail estimate {}",
                h.n_max,
                h.tail_estimate.to_sci_string(3)
            ))
        }
        "lemma43" => {
            let z = params.rational("z");
            let lhs = lemma43_reference(&z, ctx)?;
            let rhs = SeriesValue::exact(lemma43_integral(&z, ctx)?, TailRule::Quadrature);
            series_report(id, params, &lhs, &rhs, ctx, started)
        }
        "lemma24" => {
            let (r, k) = (params.int("r") as u64, params.int("k") as u64);
            let n_max = k + 50;
            let closed = telescoping_tail(r, k);
            let sum = telescoping_partial(r, k, n_max)? + telescoping_remainder(r, k, n_max);
            bracket_report(id, params, &closed, &sum, &sum, n_max - k, ctx, started)
        }
        "thm51" => {
            let mut r = verify_theorem51(params.int("c"), ctx)?;
            r.elapsed_ms = started.elapsed().as_millis() as u64;
            r
        }
        "eq5.3" => series_report(id, params, &zeta_int(3, ctx)?, &eq53_series(ctx)?, ctx, started),
        "eq5.4" => series_report(id, params, &zeta_int(3, ctx)?, &eq54_series(ctx)?, ctx, started),
        "eq6.2" => {
            let mu = params.int("mu");
            let lhs = theorem61_lhs(mu, ctx)?;
            series_report(id, params, &lhs, &theorem61_rhs(mu, ctx)?, ctx, started)
        }
        "eq6.3" => {
            series_report(id, params, &pi_power_over(2, 8, ctx), &eq63_series(ctx)?, ctx, started)
        }
        "eq6.4" => {
            series_report(id, params, &pi_power_over(4, 96, ctx), &eq64_series(ctx)?, ctx, started)
        }
        "lemma63" => {
            let k = params.int("k");
            let n_max = 2 * k as u64 + 40;
            let (lo, hi) = lemma63_bracket(k, n_max)?;
            let closed = lemma63_sum(k)?;
            bracket_report(id, params, &closed, &lo, &hi, n_max - k as u64, ctx, started)
        }
        "leshchiner" => leshchiner_check(params.int("mu"), ctx)?,
        other => return Err(Error::Unsupported(format!("no binding for {other}"))),
    };
    Ok(report)
}

/// Every standard run, in registry order.
pub fn standard_runs() -> Vec<(&'static IdentityEntry, Params)> {
    REGISTRY
        .iter()
        .flat_map(|e| {
            e.standard_runs
                .iter()
                .map(move |pairs| (e, Params::from_pairs(e, pairs).expect("registry params valid")))
        })
        .collect()
}

/// Direct counterpart of an accelerated identity series, for benchmarking.
#[derive(Clone, Copy, Debug)]
pub struct BenchPair {
    pub id: &'static str,
    /// What the direct route sums.
    pub direct_description: &'static str,
    /// `sum_{n>=1} 1/(a n + b)^s` with these `(a, b, s)`.
    direct: (i64, i64, u32),
}

static BENCH_PAIRS: &[BenchPair] = &[
    BenchPair {
        id: "eq1.1",
        direct_description: "sum 1/n^3",
        direct: (1, 0, 3),
    },
    BenchPair {
        id: "eq1.4",
        direct_description: "sum 1/n^5",
        direct: (1, 0, 5),
    },
    BenchPair {
        id: "eq6.3",
        direct_description: "sum 1/(2n-1)^2",
        direct: (2, -1, 2),
    },
    BenchPair {
        id: "eq6.4",
        direct_description: "sum 1/(2n-1)^4",
        direct: (2, -1, 4),
    },
];

pub fn bench_pairs() -> &'static [BenchPair] {
    BENCH_PAIRS
}

pub fn bench_pair(id: &str) -> Option<&'static BenchPair> {
    BENCH_PAIRS.iter().find(|p| p.id == id)
}

/// Outcome of an acceleration benchmark.
#[derive(Clone, Debug, Serialize)]
pub struct BenchRecord {
    pub identity_id: String,
    pub digits: u32,
    pub accelerated_terms: u64,
    pub accelerated_ms: u64,
    pub accelerated_value: String,
    pub direct_description: String,
    /// Terms the direct sum needs for its tail to drop below the tolerance.
    pub direct_terms_estimate: f64,
    /// `None` when the estimate exceeds `max_terms`.
    pub direct_terms: Option<u64>,
    pub direct_ms: Option<u64>,
    pub direct_value: Option<String>,
    pub feasible: bool,
    /// Direct over accelerated term count.
    pub acceleration_ratio: f64,
}

impl fmt::Display for BenchRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "identity            {}", self.identity_id)?;
        writeln!(f, "digits              {}", self.digits)?;
        writeln!(
            f,
            "accelerated         {} terms, {} ms",
            self.accelerated_terms, self.accelerated_ms
        )?;
        writeln!(f, "direct ({})  estimated {:.3e} terms", self.direct_description, self.direct_terms_estimate)?;
        match (self.direct_terms, self.direct_ms) {
            (Some(n), Some(ms)) => writeln!(f, "direct run          {n} terms, {ms} ms")?,
            _ => writeln!(f, "direct run          infeasible")?,
        }
        write!(f, "acceleration ratio  {:.3e}", self.acceleration_ratio)
    }
}

/// Terms `N` with `sum_{n>N} 1/(a n + b)^s <= tol`, from the integral bound
/// `1/(a (s-1) (a N + b)^(s-1))`.
pub fn direct_terms_estimate(a: i64, b: i64, s: u32, digits: u32) -> f64 {
    let (a, b, s) = (a as f64, b as f64, s as f64);
    let inv_tol = 10f64.powi(digits as i32);
    let base = (inv_tol / (a * (s - 1.0))).powf(1.0 / (s - 1.0));
    ((base - b) / a).ceil().max(1.0)
}

/// Direct partial sum of `1/(a n + b)^s` for `n <= terms`, with the integral
/// tail bound as error.
pub fn direct_sum(a: i64, b: i64, s: u32, terms: u64, ctx: &PrecisionContext) -> BigReal {
    let prec = ctx.bits();
    let mut acc = Float::zero();
    for n in 1..=terms as i64 {
        let d = Float::from_i64(a * n + b).powi(s as i64, prec);
        acc = acc.add(&d.recip(prec), prec);
    }
    let last = (a * terms as i64 + b) as f64;
    let tail = 1.0 / (a as f64 * (s as f64 - 1.0) * last.powi(s as i32 - 1));
    BigReal::new(acc, Float::from_f64(tail * 1.01), prec)
}

fn accelerated_for(id: &str, ctx: &PrecisionContext) -> Result<SeriesValue> {
    match id {
        "eq1.1" => markov_series(ctx),
        "eq1.4" => zeta5_series(ctx),
        "eq6.3" => eq63_series(ctx),
        "eq6.4" => eq64_series(ctx),
        other => Err(Error::Unsupported(format!("{other} has no benchmark pair"))),
    }
}

/// Times the accelerated series and, when affordable, the direct sum.
pub fn bench(id: &str, ctx: &PrecisionContext) -> Result<BenchRecord> {
    let pair = bench_pair(id)
        .ok_or_else(|| Error::Unsupported(format!("{id} has no benchmark pair")))?;
    let sig = ctx.target_digits as usize + 1;
    let t0 = Instant::now();
    let acc = accelerated_for(id, ctx)?;
    let accelerated_ms = t0.elapsed().as_millis() as u64;
    let (a, b, s) = pair.direct;
    let estimate = direct_terms_estimate(a, b, s, ctx.target_digits);
    let feasible = estimate <= ctx.max_terms as f64;
    let (direct_terms, direct_ms, direct_value) = if feasible {
        let t1 = Instant::now();
        let n = estimate as u64;
        let v = direct_sum(a, b, s, n, ctx);
        (Some(n), Some(t1.elapsed().as_millis() as u64), Some(v.to_sci_string(sig)))
    } else {
        (None, None, None)
    };
    Ok(BenchRecord {
        identity_id: id.to_string(),
        digits: ctx.target_digits,
        accelerated_terms: acc.terms_used,
        accelerated_ms,
        accelerated_value: acc.value.to_sci_string(sig),
        direct_description: pair.direct_description.to_string(),
        direct_terms_estimate: estimate,
        direct_terms,
        direct_ms,
        direct_value,
        feasible,
        acceleration_ratio: estimate / acc.terms_used.max(1) as f64,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(id: &str, pairs: &[(&str, &str)], digits: u32) -> IdentityReport {
        let e = lookup(id).unwrap();
        let p = Params::from_pairs(e, pairs).unwrap();
        verify(id, &p, &PrecisionContext::new(digits)).unwrap()
    }

    #[test]
    fn registry_ids_unique_and_runs_valid() {
        let mut ids: Vec<_> = registry().iter().map(|e| e.id).collect();
        ids.sort();
        ids.dedup();
        assert_eq!(ids.len(), registry().len());
        assert!(standard_runs().len() > registry().len());
    }

    #[test]
    fn params_are_validated() {
        let e = lookup("thm51").unwrap();
        assert!(Params::parse(e, ["c=9"]).is_err());
        assert!(Params::parse(e, ["d=1"]).is_err());
        assert!(Params::parse(e, Vec::<String>::new()).is_err());
        assert_eq!(Params::parse(e, ["c=+2"]).unwrap().get("c"), Some("2"));
        let x = lookup("eq1.3").unwrap();
        assert!(Params::parse(x, ["x=1"]).is_err());
        assert!(Params::parse(x, ["x=0.5"]).is_ok());
    }

    #[test]
    fn series_identities_pass() {
        for id in ["eq1.1", "eq1.4", "eq5.3", "eq5.4", "eq6.3", "eq6.4"] {
            let r = run(id, &[], 30);
            assert!(r.pass, "{r}");
        }
    }

    #[test]
    fn exact_identities_pass() {
        assert!(run("lemma24", &[("r", "3"), ("k", "2")], 30).pass);
        assert!(run("lemma63", &[("k", "2")], 30).pass);
    }

    #[test]
    fn thm41_n2_is_rejected() {
        let e = lookup("thm41").unwrap();
        let p = Params::from_pairs(e, &[("n", "2")]).unwrap();
        let err = verify("thm41", &p, &PrecisionContext::new(10)).unwrap_err();
        assert!(matches!(err, Error::Unsupported(ref m) if m.contains("ratio")));
    }

    #[test]
    fn harmonic2_small() {
        assert_eq!(harmonic2(0), rat_int(0));
        assert_eq!(harmonic2(2), rat(5, 4));
    }

    #[test]
    fn markov_terms_within_budget() {
        let v = markov_series(&PrecisionContext::new(30)).unwrap();
        assert!(v.terms_used <= 80, "{}", v.terms_used);
    }

    #[test]
    fn direct_estimate_and_feasibility() {
        let est = direct_terms_estimate(1, 0, 3, 30);
        assert!(est > 1e14);
        let rec = bench("eq1.1", &PrecisionContext::new(8)).unwrap();
        assert!(rec.feasible);
        let direct: f64 = rec.direct_value.unwrap().parse().unwrap();
        let acc: f64 = rec.accelerated_value.parse().unwrap();
        assert!((direct - acc).abs() < 1e-7);
        assert!(!bench("eq1.1", &PrecisionContext::new(30)).unwrap().feasible);
    }
}
