use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Polynomial in one variable with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_default()
    }

    pub fn constant(&self) -> BigInt {
        self.coeffs.first().cloned().unwrap_or_default()
    }

    pub fn eval(&self, k: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * k + c)
    }

    pub fn eval_rational(&self, k: &BigRational) -> BigRational {
        self.coeffs
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * k + BigRational::from_integer(c.clone()))
    }

    /// The unique polynomial of degree below `points.len()` through the
    /// given `(k, value)` pairs, provided every coefficient is an integer.
    pub fn interpolate(points: &[(BigInt, BigRational)]) -> Result<Self> {
        let coeffs = interpolate_rational(points)?;
        let mut out = Vec::with_capacity(coeffs.len());
        for (i, c) in coeffs.into_iter().enumerate() {
            if !c.is_integer() {
                return Err(Error::Consistency(format!(
                    "interpolated coefficient of k^{i} is {c}, not an integer"
                )));
            }
            out.push(c.to_integer());
        }
        Ok(IntPolynomial::new(out))
    }
}

impl fmt::Display for IntPolynomial {
    /// Coefficients low to high, comma separated (`0` for the zero polynomial).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// Newton divided differences, converted to monomial coefficients.
pub fn interpolate_rational(points: &[(BigInt, BigRational)]) -> Result<Vec<BigRational>> {
    let n = points.len();
    let xs: Vec<BigRational> =
        points.iter().map(|(x, _)| BigRational::from_integer(x.clone())).collect();
    let mut table: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let dx = &xs[i] - &xs[i - level];
            if dx.is_zero() {
                return Err(Error::Domain("repeated interpolation node".into()));
            }
            table[i] = (&table[i] - &table[i - 1]) / dx;
        }
    }
    // Horner on the Newton form: p = c0 + (x - x0)(c1 + (x - x1)(c2 + ...))
    let mut poly: Vec<BigRational> = Vec::new();
    for i in (0..n).rev() {
        poly = mul_linear(&poly, &xs[i]);
        if poly.is_empty() {
            poly.push(BigRational::zero());
        }
        poly[0] += &table[i];
    }
    while poly.last().is_some_and(|c| c.is_zero()) {
        poly.pop();
    }
    Ok(poly)
}

/// `p(x) * (x - r)` for a rational coefficient vector (low to high).
pub fn mul_linear(p: &[BigRational], r: &BigRational) -> Vec<BigRational> {
    if p.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); p.len() + 1];
    for (i, c) in p.iter().enumerate() {
        out[i + 1] += c;
        out[i] -= c * r;
    }
    out
}

/// `prod (x - r)` over the given roots, low to high.
pub fn product_of_linear(roots: &[BigRational]) -> Vec<BigRational> {
    roots.iter().fold(vec![BigRational::one()], |acc, r| mul_linear(&acc, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rational::{int, rat, rat_int};

    #[test]
    fn normalizes_and_evaluates() {
        let p = IntPolynomial::from_i64(&[2, 4, 12, 5, 0, 0]);
        assert_eq!(p.degree(), Some(3));
        assert_eq!(p.eval(&int(1)), int(23));
        assert_eq!(p.to_string(), "2,4,12,5");
        assert_eq!(IntPolynomial::zero().degree(), None);
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let p = IntPolynomial::from_i64(&[7, -3, 0, 2]);
        let pts: Vec<_> =
            (1..=4).map(|k| (int(k), BigRational::from_integer(p.eval(&int(k))))).collect();
        assert_eq!(IntPolynomial::interpolate(&pts).unwrap(), p);
    }

    #[test]
    fn non_integer_rejected() {
        let pts = vec![(int(0), rat_int(0)), (int(2), rat_int(1))];
        assert!(matches!(IntPolynomial::interpolate(&pts), Err(Error::Consistency(_))));
    }

    #[test]
    fn linear_products() {
        let p = product_of_linear(&[rat_int(1), rat_int(2)]);
        assert_eq!(p, vec![rat_int(2), rat_int(-3), rat_int(1)]);
        assert_eq!(mul_linear(&[rat(1, 2)], &rat_int(0)), vec![rat_int(0), rat(1, 2)]);
    }
}
