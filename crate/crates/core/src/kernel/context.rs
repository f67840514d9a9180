use num_bigint::BigInt;
use num_traits::One;

use super::Float;

/// Accuracy request shared by every numeric operation.
///
/// Work is carried out at `target_digits + guard_digits` decimal digits;
/// `max_terms` caps any single truncated summation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrecisionContext {
    pub target_digits: u32,
    pub guard_digits: u32,
    pub max_terms: u64,
}

pub const DEFAULT_MAX_TERMS: u64 = 1_000_000;

/// Guard digits needed so that `max_terms` roundings stay below the target.
pub fn guard_digits_for(max_terms: u64) -> u32 {
    let log = (max_terms.max(1) as f64).log10().ceil() as u32;
    (10 + log).max(20)
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext { target_digits: 50, guard_digits: 20, max_terms: DEFAULT_MAX_TERMS }
    }
}

impl PrecisionContext {
    pub fn new(target_digits: u32) -> Self {
        assert!(target_digits > 0, "target_digits must be positive");
        PrecisionContext {
            target_digits,
            guard_digits: guard_digits_for(DEFAULT_MAX_TERMS),
            max_terms: DEFAULT_MAX_TERMS,
        }
    }

    pub fn with_max_terms(mut self, max_terms: u64) -> Self {
        assert!(max_terms > 0, "max_terms must be positive");
        self.max_terms = max_terms;
        self.guard_digits = self.guard_digits.max(guard_digits_for(max_terms));
        self
    }

    pub fn with_guard_digits(mut self, guard_digits: u32) -> Self {
        assert!(guard_digits >= 10, "guard_digits must be at least 10");
        self.guard_digits = guard_digits;
        self
    }

    /// Same context asking for `extra` more target digits.
    pub fn raised(&self, extra: u32) -> Self {
        PrecisionContext { target_digits: self.target_digits + extra, ..*self }
    }

    pub fn working_digits(&self) -> u32 {
        self.target_digits + self.guard_digits
    }

    /// Working precision in bits.
    pub fn bits(&self) -> u32 {
        (self.working_digits() as f64 * std::f64::consts::LOG2_10).ceil() as u32 + 8
    }

    /// `10^-target_digits`.
    pub fn tolerance(&self) -> Float {
        pow10_neg(self.target_digits, self.bits())
    }

    /// `10^-working_digits`, the truncation threshold for summed terms.
    pub fn working_tolerance(&self) -> Float {
        pow10_neg(self.working_digits(), self.bits())
    }
}

pub fn pow10_neg(d: u32, prec: u32) -> Float {
    Float::from_ratio(&BigInt::one(), &num_traits::pow(BigInt::from(10), d as usize), prec)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults() {
        let c = PrecisionContext::default();
        assert_eq!(c.working_digits(), 70);
        assert!(c.guard_digits >= 10);
        assert_eq!(guard_digits_for(10u64.pow(12)), 22);
        assert!(c.bits() >= 233);
    }

    #[test]
    fn tolerance_value() {
        let c = PrecisionContext::new(30);
        assert_eq!(c.tolerance().to_sci_string(5), "1.0000e-30");
    }
}
