//! Truncation policy for rapidly convergent series whose tails have no
//! effective bound.
//!
//! A series is cut once the latest term is below `10^-working_digits` and
//! each of the last ten term ratios is below 0.9; the tail is then bounded by
//! geometric extrapolation of the largest observed ratio. Slowly convergent
//! alternating series fall back to the alternating-series bound once their
//! terms have alternated in sign with non-increasing size for ten steps and
//! the latest term is below a tenth of the target tolerance.

use std::collections::VecDeque;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernel::{BigReal, Float, PrecisionContext};

const WINDOW: usize = 10;
const RATIO_LIMIT: f64 = 0.9;

/// Which rule supplied the tail bound of a computed value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TailRule {
    /// Finite computation, no tail.
    Exact,
    /// Closed-form evaluation in exact rationals.
    ClosedForm,
    /// Observed geometric decay over the last ten terms.
    Geometric,
    /// Alternating terms of non-increasing size.
    Alternating,
    /// Power-series expansion of the tail in Hurwitz zeta values.
    ZetaExpansion,
    /// Double-exponential quadrature with level-doubling error estimate.
    Quadrature,
    /// Euler–Maclaurin summation with Bernoulli remainder.
    EulerMaclaurin,
    /// Direct summation with an integral or averaging bound.
    Direct,
}

impl TailRule {
    pub fn as_str(&self) -> &'static str {
        match self {
            TailRule::Exact => "exact",
            TailRule::ClosedForm => "closed-form",
            TailRule::Geometric => "geometric",
            TailRule::Alternating => "alternating",
            TailRule::ZetaExpansion => "zeta-expansion",
            TailRule::Quadrature => "quadrature",
            TailRule::EulerMaclaurin => "euler-maclaurin",
            TailRule::Direct => "direct",
        }
    }
}

impl fmt::Display for TailRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A summed series with its bookkeeping.
#[derive(Clone, Debug)]
pub struct SeriesValue {
    /// Value whose error bound already includes `tail_bound`.
    pub value: BigReal,
    pub terms_used: u64,
    pub tail_bound: Float,
    pub rule: TailRule,
}

impl SeriesValue {
    pub fn exact(value: BigReal, rule: TailRule) -> Self {
        SeriesValue { value, terms_used: 0, tail_bound: Float::zero(), rule }
    }
}

/// Incremental summation state implementing the truncation policy.
pub struct Truncator {
    sum: BigReal,
    recent: VecDeque<BigReal>,
    terms: u64,
    cutoff: Float,
    alt_cutoff: Float,
    max_terms: u64,
    done: Option<SeriesValue>,
}

impl Truncator {
    pub fn new(ctx: &PrecisionContext) -> Self {
        Truncator {
            sum: BigReal::zero(ctx.bits()),
            recent: VecDeque::with_capacity(WINDOW + 1),
            terms: 0,
            cutoff: ctx.working_tolerance(),
            alt_cutoff: ctx.tolerance().div_i64(10, 64),
            max_terms: ctx.max_terms,
            done: None,
        }
    }

    pub fn is_done(&self) -> bool {
        self.done.is_some()
    }

    pub fn terms(&self) -> u64 {
        self.terms
    }

    /// Adds the next term; returns `Ok(true)` once the series is settled.
    /// Terms pushed after that are ignored.
    pub fn push(&mut self, term: BigReal) -> Result<bool> {
        if self.done.is_some() {
            return Ok(true);
        }
        self.sum = &self.sum + &term;
        self.terms += 1;
        self.recent.push_back(term);
        if self.recent.len() > WINDOW + 1 {
            self.recent.pop_front();
        }
        if let Some(v) = self.check() {
            self.done = Some(v);
            return Ok(true);
        }
        if self.terms >= self.max_terms {
            let last = self.recent.back().map(|t| t.upper_abs()).unwrap_or_default();
            return Err(Error::accuracy(
                format!("series not settled after max_terms = {} terms", self.max_terms),
                self.sum.with_added_err(&last),
            ));
        }
        Ok(false)
    }

    fn check(&self) -> Option<SeriesValue> {
        if self.recent.len() < WINDOW + 1 {
            return None;
        }
        let last = self.recent.back().unwrap();
        let last_mag = last.value().abs();
        // geometric rule
        if last_mag < self.cutoff {
            let mut worst = 0f64;
            let mut ok = true;
            for w in self.recent.iter().collect::<Vec<_>>().windows(2) {
                let (a, b) = (w[0].value().abs(), w[1].value().abs());
                let r = if b.is_zero() {
                    0.0
                } else if a.is_zero() {
                    f64::INFINITY
                } else {
                    b.div(&a, 64).to_f64()
                };
                if r >= RATIO_LIMIT {
                    ok = false;
                    break;
                }
                worst = worst.max(r);
            }
            if ok {
                let factor = worst / (1.0 - worst);
                let tail = last.upper_abs().mul(&Float::from_f64(factor), 64);
                return Some(self.finish(tail, TailRule::Geometric));
            }
        }
        // alternating fallback
        if last_mag < self.alt_cutoff {
            let alternating = self.recent.iter().collect::<Vec<_>>().windows(2).all(|w| {
                let (a, b) = (w[0].value(), w[1].value());
                a.signum() * b.signum() < 0 && b.abs() <= a.abs()
            });
            if alternating {
                return Some(self.finish(last.upper_abs(), TailRule::Alternating));
            }
        }
        None
    }

    fn finish(&self, tail: Float, rule: TailRule) -> SeriesValue {
        SeriesValue {
            value: self.sum.with_added_err(&tail),
            terms_used: self.terms,
            tail_bound: tail,
            rule,
        }
    }

    /// The settled value, if any.
    pub fn result(&self) -> Option<&SeriesValue> {
        self.done.as_ref()
    }

    pub fn into_result(self) -> Option<SeriesValue> {
        self.done
    }
}

/// Sums `term(k)` for `k = first, first + 1, ...` under the truncation policy.
pub fn sum_series<F>(ctx: &PrecisionContext, first: u64, mut term: F) -> Result<SeriesValue>
where
    F: FnMut(u64) -> Result<BigReal>,
{
    let mut t = Truncator::new(ctx);
    let mut k = first;
    loop {
        if t.push(term(k)?)? {
            return Ok(t.into_result().expect("settled"));
        }
        k += 1;
    }
}
