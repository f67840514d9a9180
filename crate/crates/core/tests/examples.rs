//! Worked examples checked against oracles computed outside the library:
//! hard-coded decimal constants, brute-force rational sums and hand algebra.

use koecher::euler_sums::{euler_sum, euler_sum_direct, hyperharmonic, MzvIndex};
use koecher::kernel::rational::{binomial, factorial, parse_rational, rat, rat_int};
use koecher::kernel::{bernoulli, de_quadrature, digamma, pi_reference, zeta_reference, Float};
use koecher::markov_apery::{b_coefficients, hurwitz_zeta_c, pc_polynomial, solve_partial_fraction, tail_sum_double_sum, tail_sum_shifted_square};
use koecher::pi_powers::{gauss_2f1_unit_exact, odd_harmonic};
use koecher::sequences::{pn_bound_diagnostic, pochhammer_product, zeta_z, PnVerdict};
use koecher::transform::{accelerated_sum, gamma_k_exact, lhs_sum, series_tail_exact, telescoping_partial, TransformInstance};
use koecher::{BigReal, PrecisionContext, ZSequence};
use num_rational::BigRational;
use num_traits::{One, Zero};

const ZETA3: &str = "1.20205690315959428539973816151144999076498629234049888";
const PI: &str = "3.14159265358979323846264338327950288419716939937510582";
const GAMMA: &str = "0.57721566490153286060651209008240243104215933593992360";
const LN2: &str = "0.69314718055994530941723212145817656807550013436025525";

fn ctx(d: u32) -> PrecisionContext {
    PrecisionContext::new(d)
}

fn dec(s: &str, c: &PrecisionContext) -> BigReal {
    BigReal::from_rational(&parse_rational(s).unwrap(), c.bits())
}

fn assert_close(a: &BigReal, b: &BigReal, digits: i32) {
    let diff = a.abs_diff(b).to_f64().abs();
    assert!(diff <= 10f64.powi(-digits), "{a} vs {b}: diff {diff:e}");
}

fn pi_pow(n: i64, c: &PrecisionContext) -> BigReal {
    dec(PI, c).powi(n)
}

#[test]
fn zeta_values_against_closed_forms_and_constants() {
    let c = ctx(40);
    assert_close(&zeta_reference(&rat_int(2), &c).unwrap(), &(pi_pow(2, &c) / BigReal::from_i64(6, c.bits())), 45);
    assert_close(&zeta_reference(&rat_int(4), &c).unwrap(), &(pi_pow(4, &c) / BigReal::from_i64(90, c.bits())), 45);
    assert_close(&zeta_reference(&rat_int(3), &c).unwrap(), &dec(ZETA3, &c), 45);
}

#[test]
fn digamma_special_values() {
    let c = ctx(40);
    assert_close(&digamma(&rat_int(1), &c).unwrap(), &-dec(GAMMA, &c), 45);
    // duplication at y = 3/2
    let lhs = digamma(&rat_int(3), &c).unwrap();
    let rhs = (digamma(&rat(3, 2), &c).unwrap() + digamma(&rat_int(2), &c).unwrap()) / BigReal::from_i64(2, c.bits())
        + dec(LN2, &c);
    assert_close(&lhs, &rhs, 45);
}

#[test]
fn pi_to_thirty_digits() {
    let c = ctx(30);
    assert_eq!(pi_reference(&c).to_fixed_string(29), "3.14159265358979323846264338328");
}

#[test]
fn bernoulli_numbers() {
    assert_eq!(bernoulli(4).unwrap(), rat(-1, 30));
    assert_eq!(bernoulli(6).unwrap(), rat(1, 42));
    // independent recurrence sum_{k<n+1} C(n+1,k) B_k = 0 at n = 10
    let n = 10i64;
    let total: BigRational = (0..=n)
        .filter(|&k| k < 2 || k % 2 == 0)
        .map(|k| BigRational::from_integer(binomial(n + 1, k)) * bernoulli(k as u32).unwrap())
        .sum();
    assert!(total.is_zero());
}

#[test]
fn quadrature_of_logarithmic_integrands() {
    let c = ctx(25);
    let f = |x: &Float, p: u32| x.ln1p(p).div(x, p);
    let v = de_quadrature(f, &rat_int(0), &rat_int(1), &c).unwrap();
    assert_close(&v, &(pi_pow(2, &c) / BigReal::from_i64(12, c.bits())), 24);
    let g = |x: &Float, p: u32| x.ln1p(p);
    let v = de_quadrature(g, &rat_int(0), &rat_int(1), &c).unwrap();
    let want = dec(LN2, &c) * BigReal::from_i64(2, c.bits()) - BigReal::from_i64(1, c.bits());
    assert_close(&v, &want, 24);
}

#[test]
fn diagonal_products() {
    let c = ctx(20);
    let sq = ZSequence::squares();
    let v = pochhammer_product(&sq, &rat(1, 2), 3, 2, &c).unwrap();
    assert_close(&v, &BigReal::from_i64(120, c.bits()), 18);
    let hs = ZSequence::half_square();
    let v = pochhammer_product(&hs, &rat_int(0), 2, 1, &c).unwrap();
    assert_close(&v, &BigReal::from_i64(4, c.bits()), 18);
    // k = 0 gives z_n^alpha
    let v = pochhammer_product(&sq, &rat(1, 2), 7, 0, &c).unwrap();
    assert_close(&v, &BigReal::from_i64(7, c.bits()), 18);
}

#[test]
fn zeta_of_sequences() {
    let c = ctx(30);
    let v = zeta_z(&ZSequence::squares(), &rat(3, 2), &c).unwrap();
    assert_close(&v, &dec(ZETA3, &c), 30);
    // half squares at s = 2: 15 zeta(4) - 16
    let v = zeta_z(&ZSequence::half_square(), &rat_int(2), &c).unwrap();
    let want = pi_pow(4, &c) * BigReal::from_i64(15, c.bits()) / BigReal::from_i64(90, c.bits()) - BigReal::from_i64(16, c.bits());
    assert_close(&v, &want, 28);
}

#[test]
fn growth_diagnostic_verdicts() {
    let c = ctx(15);
    assert_eq!(pn_bound_diagnostic(&ZSequence::squares(), 50, &c).unwrap().verdict, PnVerdict::BoundedLooking);
    let lin = ZSequence::linear(rat_int(0)).unwrap();
    assert_eq!(pn_bound_diagnostic(&lin, 50, &c).unwrap().verdict, PnVerdict::Suspect);
}

#[test]
fn telescoping_brute_force() {
    // 1/(3*2*1) + ... for r = 0, k = 1, n = 2..5
    let brute: BigRational = (2..=5).map(|n: i64| rat(1, (n + 1) * n * (n - 1))).sum();
    assert_eq!(telescoping_partial(0, 1, 5).unwrap(), brute);
    assert_eq!(brute, rat(1, 4) - rat(1, 60));
    assert_eq!(telescoping_partial(1, 1, 3).unwrap(), rat(7, 120));
}

#[test]
fn tails_and_gamma_coefficients() {
    let sq = ZSequence::squares();
    assert_eq!(series_tail_exact(&sq, &rat(1, 2), 1).unwrap(), Some(rat(1, 4)));
    let lin = ZSequence::linear(rat_int(0)).unwrap();
    assert_eq!(series_tail_exact(&lin, &rat_int(1), 3).unwrap(), Some(rat(1, 18)));
    let inst = TransformInstance::new(sq, rat(1, 2), rat_int(0)).unwrap();
    assert_eq!(gamma_k_exact(&inst, 1).unwrap(), Some(rat(5, 4)));
    let inst = TransformInstance::new(lin, rat_int(1), rat_int(0)).unwrap();
    assert_eq!(gamma_k_exact(&inst, 2).unwrap(), Some(rat(1, 2)));
}

#[test]
fn accelerated_sums_at_zero() {
    let c = ctx(30);
    let inst = TransformInstance::new(ZSequence::squares(), rat(1, 2), rat_int(0)).unwrap();
    assert_close(&accelerated_sum(&inst, &c).unwrap().value, &dec(ZETA3, &c), 30);
    let c = ctx(12);
    let inst = TransformInstance::new(ZSequence::half_square(), rat_int(0), rat_int(0)).unwrap();
    let want = pi_pow(2, &c) / BigReal::from_i64(2, c.bits()) - BigReal::from_i64(4, c.bits());
    assert_close(&accelerated_sum(&inst, &c).unwrap().value, &want, 12);
    let inst = TransformInstance::koecher(&rat(1, 4)).unwrap();
    let a = accelerated_sum(&inst, &c).unwrap();
    let l = lhs_sum(&inst, &c).unwrap();
    assert_close(&a.value, &l.value, 11);
}

#[test]
fn alternating_euler_sums() {
    let c = ctx(25);
    let z21 = euler_sum(&MzvIndex::euler_shape(0, 2).unwrap(), &c).unwrap();
    assert_close(&(z21 * BigReal::from_i64(8, c.bits())), &dec(ZETA3, &c), 24);
    let z2 = euler_sum(&"z(-2)".parse().unwrap(), &c).unwrap();
    assert_close(&z2, &-(pi_pow(2, &c) / BigReal::from_i64(12, c.bits())), 24);
    let z3 = euler_sum(&MzvIndex::euler_shape(1, 1).unwrap(), &c).unwrap();
    let want = -(dec(ZETA3, &c) * BigReal::from_i64(3, c.bits()) / BigReal::from_i64(4, c.bits()));
    assert_close(&z3, &want, 24);
}

#[test]
fn direct_nested_sums() {
    let c = ctx(20);
    let z4 = euler_sum_direct(&"z(4)".parse().unwrap(), 100_000, &c).unwrap();
    let want = pi_pow(4, &c) / BigReal::from_i64(90, c.bits());
    assert!(z4.agrees_with(&want, 1), "{z4}");
    assert_close(&z4, &want, 8);
    let z21 = euler_sum_direct(&"z(-2,1)".parse().unwrap(), 100_000, &c).unwrap();
    let want = dec(ZETA3, &c) / BigReal::from_i64(8, c.bits());
    assert!(z21.agrees_with(&want, 1), "{z21}");
    assert_close(&z21, &want, 8);
}

#[test]
fn zeta_four_from_alternating_sums() {
    let c = ctx(20);
    let e = |k, m| euler_sum(&MzvIndex::euler_shape(k, m).unwrap(), &c).unwrap();
    let v = e(0, 3) * BigReal::from_i64(-16, c.bits()) + e(1, 2) * BigReal::from_i64(8, c.bits());
    assert_close(&v, &(pi_pow(4, &c) / BigReal::from_i64(90, c.bits())), 19);
}

#[test]
fn hyperharmonic_convention() {
    for k in 1..6 {
        assert!(hyperharmonic(k, 0).unwrap().is_one());
        assert!(odd_harmonic(k, 0).is_one());
    }
    assert_eq!(odd_harmonic(3, 2), rat(1, 9 * 25) + rat(1, 9 * 49) + rat(1, 25 * 49));
}

#[test]
fn hurwitz_shifts() {
    let c = ctx(25);
    assert_close(&hurwitz_zeta_c(1, &rat_int(3), &c).unwrap(), &(dec(ZETA3, &c) - BigReal::from_i64(1, c.bits())), 24);
    assert_close(&hurwitz_zeta_c(0, &rat_int(3), &c).unwrap(), &dec(ZETA3, &c), 24);
}

#[test]
fn partial_fraction_small_cases() {
    for k in 1..5 {
        assert_eq!(b_coefficients(k, 0).unwrap(), vec![BigRational::one()]);
        assert_eq!(solve_partial_fraction(k, 0).unwrap().a, vec![BigRational::one()]);
    }
    assert_eq!(b_coefficients(1, 1).unwrap()[0], rat(1, 4));
    // (2, 1) reconstruction over n = 3..22
    let sol = solve_partial_fraction(2, 1).unwrap();
    for n in 3..23i64 {
        let mut num = BigRational::one();
        for i in [0i64, 2] {
            num *= rat_int(n + 2 + i);
        }
        let den: BigRational = (0..=6).map(|i| rat_int(n + i)).product();
        assert_eq!(sol.reconstruct(n), num / den);
    }
}

#[test]
fn tail_routes_agree_and_match_brute_force() {
    assert_eq!(tail_sum_shifted_square(1, 0).unwrap(), rat(1, 4));
    for k in 1..=4 {
        for c in 0..=3 {
            assert_eq!(tail_sum_shifted_square(k, c).unwrap(), tail_sum_double_sum(k, c).unwrap(), "k={k} c={c}");
        }
    }
    // c = 1, k = 1: terms (n+1)^2/((n-1)(n+3)(n+1)^2...) summed directly with a crude tail bound
    let v = tail_sum_shifted_square(1, 1).unwrap();
    let brute: BigRational = (2..=2000i64)
        .map(|n| {
            let zn = (n + 1) * (n + 1);
            let prod = (zn - 4) * (n + 1);
            rat(1, prod)
        })
        .sum();
    let gap = (&v - &brute).to_f64_lossy();
    assert!(gap > 0.0 && gap < 1e-6, "gap {gap}");
}

trait Lossy {
    fn to_f64_lossy(&self) -> f64;
}

impl Lossy for BigRational {
    fn to_f64_lossy(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(self).unwrap()
    }
}

#[test]
fn pc_polynomials_low_orders() {
    let p0 = pc_polynomial(0).unwrap();
    assert_eq!(p0.poly.coeffs().len(), 1);
    let p1 = pc_polynomial(1).unwrap();
    let vals: Vec<i64> = p1.poly.coeffs().iter().map(|c| c.try_into().unwrap()).collect();
    assert_eq!(vals, vec![2, 4, 12, 5]);
    let p3 = pc_polynomial(3).unwrap();
    assert_eq!(p3.poly.constant(), factorial(3) * factorial(6));
}

#[test]
fn gauss_unit_values() {
    assert_eq!(gauss_2f1_unit_exact(1, 1, &rat_int(5)).unwrap(), rat(4, 3));
    assert_eq!(gauss_2f1_unit_exact(1, 2, &rat_int(7)).unwrap(), rat(3, 2));
}
