use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::constants::pi_reference;
use super::rational::{binomial, factorial};
use super::{BigReal, PrecisionContext};
use crate::error::{Error, Result};

static CACHE: Mutex<Vec<BigRational>> = Mutex::new(Vec::new());

/// Fills `table` with B_0..B_n from `sum_{j<=m} C(m+1, j) B_j = 0`.
fn extend(table: &mut Vec<BigRational>, n: usize) {
    while table.len() <= n {
        let m = table.len();
        if m == 0 {
            table.push(BigRational::one());
            continue;
        }
        if m > 1 && m % 2 == 1 {
            table.push(BigRational::zero());
            continue;
        }
        let mut acc = BigRational::zero();
        for (j, b) in table.iter().enumerate() {
            if !b.is_zero() {
                acc += b * BigRational::from_integer(binomial(m as i64 + 1, j as i64));
            }
        }
        table.push(-acc / BigRational::from_integer(BigInt::from(m as u64 + 1)));
    }
}

/// Exact Bernoulli number `B_n` for even `n` (also `n = 1`, giving -1/2).
pub fn bernoulli(n: u32) -> Result<BigRational> {
    if n > 1 && n % 2 == 1 {
        return Err(Error::Domain(format!("bernoulli index {n} is odd")));
    }
    let mut table = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    extend(&mut table, n as usize);
    Ok(table[n as usize].clone())
}

/// `ζ(2n) = (-1)^(n-1) 2^(2n-1) B_2n π^(2n) / (2n)!`.
pub fn zeta_even_closed_form(n: u32, ctx: &PrecisionContext) -> Result<BigReal> {
    if n == 0 {
        return Err(Error::Domain("zeta_even_closed_form needs n >= 1".into()));
    }
    let b = bernoulli(2 * n)?;
    let sign = if n % 2 == 1 { 1 } else { -1 };
    let coeff = b * BigRational::new(BigInt::from(sign) << (2 * n - 1), factorial(2 * n as u64));
    let inner = ctx.raised(4 + n);
    let pi = pi_reference(&inner);
    let value = BigReal::from_rational(&coeff, inner.bits()) * pi.powi(2 * n as i64);
    Ok(value.with_prec(ctx.bits()))
}
