//! Shared cases for the acceleration benchmarks.
//!
//! Each case pairs an accelerated series with the direct sum it replaces, so
//! a benchmark can time the former and, at low precision, the latter.

use koecher::identities::{self, BenchRecord};
use koecher::{PrecisionContext, Result};

/// Identity ids with a direct counterpart.
pub fn cases() -> Vec<&'static str> {
    identities::bench_pairs().iter().map(|p| p.id).collect()
}

/// Runs one comparison at `digits`, with the direct run capped at `max_terms`.
pub fn run(id: &str, digits: u32, max_terms: u64) -> Result<BenchRecord> {
    identities::bench(id, &PrecisionContext::new(digits).with_max_terms(max_terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_case_runs_at_low_precision() {
        for id in cases() {
            let r = run(id, 6, 1_000_000).unwrap();
            assert!(r.feasible, "{id}");
            assert!(r.accelerated_terms < r.direct_terms.unwrap(), "{id}");
        }
    }

    #[test]
    fn markov_series_is_infeasible_directly_at_30_digits() {
        let r = run("eq1.1", 30, 1_000_000).unwrap();
        assert!(!r.feasible);
        assert!(r.accelerated_terms <= 80);
        assert!(r.direct_terms_estimate > 1e14);
    }
}
