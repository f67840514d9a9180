//! Property tests for exact identities and enclosure invariants, plus
//! cross-route consistency of the Euler-sum evaluations.

use koecher::euler_sums::{euler_sum_direct, euler_sum_integral, hyperharmonic, hyperharmonic_enumerated, s_n, MzvIndex, SnMethod};
use koecher::kernel::digamma;
use koecher::kernel::rational::{parse_rational, rat};
use koecher::markov_apery::{q_value, solve_partial_fraction};
use koecher::pi_powers::{odd_harmonic, odd_harmonic_enumerated};
use koecher::transform::{telescoping_partial, telescoping_remainder, telescoping_tail};
use koecher::{BigReal, PrecisionContext};
use num_rational::BigRational;
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn telescoping_splits_exactly(r in 0u64..6, k in 1u64..6, extra in 1u64..30) {
        let n = k + extra;
        let whole = telescoping_partial(r, k, n).unwrap() + telescoping_remainder(r, k, n);
        prop_assert_eq!(whole, telescoping_tail(r, k));
    }

    #[test]
    fn hyperharmonic_recurrence_matches_enumeration(k in 1usize..9, m in 0usize..5) {
        prop_assert_eq!(hyperharmonic(k, m).unwrap(), hyperharmonic_enumerated(k, m));
        prop_assert_eq!(odd_harmonic(k, m), odd_harmonic_enumerated(k, m));
    }

    #[test]
    fn partial_fractions_reconstruct(k in 1u32..6, c in 0u32..4, shift in 1i64..40) {
        let sol = solve_partial_fraction(k, c).unwrap();
        let n = k as i64 + shift;
        prop_assert_eq!(sol.reconstruct(n), q_value(k, c, n));
    }

    #[test]
    fn digamma_recurrence(p in 1i64..200, q in 1i64..50) {
        let ctx = PrecisionContext::new(20);
        let z = rat(p, q);
        let lhs = digamma(&(&z + rat(1, 1)), &ctx).unwrap();
        let rhs = digamma(&z, &ctx).unwrap() + BigReal::from_rational(&rat(q, p), ctx.bits());
        prop_assert!(lhs.agrees_with(&rhs, 1), "{} vs {}", lhs, rhs);
    }

    #[test]
    fn enclosures_survive_arithmetic(a in -10_000i64..10_000, b in 1i64..10_000, c in -10_000i64..10_000, d in 1i64..10_000) {
        let prec = 96;
        let x = rat(a, b);
        let y = rat(c, d);
        let bx = BigReal::from_rational(&x, prec);
        let by = BigReal::from_rational(&y, prec);
        let exact = |q: &BigRational| BigReal::from_rational(q, prec + 64);
        prop_assert!((&bx + &by).agrees_with(&exact(&(&x + &y)), 1));
        prop_assert!((&bx * &by).agrees_with(&exact(&(&x * &y)), 1));
        prop_assert!((&bx - &by).agrees_with(&exact(&(&x - &y)), 1));
        if c != 0 {
            prop_assert!(bx.try_div(&by).unwrap().agrees_with(&exact(&(&x / &y)), 1));
        }
    }

    #[test]
    fn rationals_round_trip_through_text(a in -1_000_000i64..1_000_000, b in 1i64..1_000_000) {
        let q = rat(a, b);
        prop_assert_eq!(parse_rational(&q.to_string()).unwrap(), q);
    }

    #[test]
    fn index_text_round_trips(entries in prop::collection::vec((1u32..6, any::<bool>()), 1..5)) {
        prop_assume!(entries[0].0 >= 2 || entries[0].1);
        let idx = MzvIndex::new(entries).unwrap();
        let back: MzvIndex = idx.to_string().parse().unwrap();
        prop_assert_eq!(back, idx);
    }
}

#[test]
fn euler_sum_routes_agree() {
    let ctx = PrecisionContext::new(15);
    for k in 0..=4u32 {
        for m in 1..=(6 - k) {
            let integral = euler_sum_integral(k, m, &ctx).unwrap();
            let direct = euler_sum_direct(&MzvIndex::euler_shape(k, m).unwrap(), 20_000, &ctx).unwrap();
            assert!(integral.agrees_with(&direct, 1), "k={k} m={m}: {integral} vs {direct}");
        }
    }
}

#[test]
fn s_n_routes_agree_from_three() {
    let ctx = PrecisionContext::new(20);
    for n in 3..=8 {
        let a = s_n(n, SnMethod::EulerSums, &ctx).unwrap();
        let b = s_n(n, SnMethod::Integral, &ctx).unwrap();
        assert!(a.agrees_with(&b, 1), "n={n}: {a} vs {b}");
    }
}
