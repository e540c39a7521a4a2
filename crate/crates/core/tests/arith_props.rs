use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ternexp::arith::{self, cmp_scaled_log, factorize, radical, square_kernel};

#[test]
fn factorization_reconstructs_every_m_up_to_10_4() {
    for m in 2..=10_000u64 {
        let f = factorize(m).unwrap();
        let mut prod = 1u64;
        for &(p, e) in f.factors() {
            assert!(ternexp::arith::prime::is_prime_u64(p), "{m}: {p} not prime");
            prod *= p.pow(e);
        }
        assert_eq!(prod, m);
        assert_eq!(*f.value(), BigUint::from(m));
        let primes: Vec<u64> = f.primes().collect();
        assert!(primes.windows(2).all(|w| w[0] < w[1]), "{m}: {primes:?}");
    }
}

#[test]
fn square_kernel_exceeds_one_and_leaves_a_square() {
    assert_eq!(square_kernel(1).unwrap(), 1);
    for m in 1..=10_000u64 {
        let k = square_kernel(m).unwrap();
        if m > 1 {
            assert!(k > 1, "R({m}) = {k}");
        }
        assert_eq!(m % k, 0);
        let q = m / k;
        let r = q.sqrt();
        assert_eq!(r * r, q, "m / R(m) not square for m = {m}");
    }
}

/// Every positive m' <= limit whose primes all divide m, built from the
/// primes of m rather than by filtering.
fn s_smooth_up_to(primes: &[u64], limit: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    for &p in primes {
        let mut next = Vec::new();
        for &base in &out {
            let mut v = base;
            while v <= limit {
                next.push(v);
                match v.checked_mul(p) {
                    Some(w) => v = w,
                    None => break,
                }
            }
        }
        out = next;
    }
    out.sort_unstable();
    out
}

#[test]
fn square_kernel_of_s_members_bounded_by_radical_squared() {
    for m in 2..=500u64 {
        let primes: Vec<u64> = factorize(m).unwrap().primes().collect();
        let rm = radical(m).unwrap();
        for mp in s_smooth_up_to(&primes, 1_000_000) {
            assert!(arith::in_s_set(&BigInt::from(mp), m).unwrap());
            assert!(square_kernel(mp).unwrap() <= rm * rm, "m = {m}, m' = {mp}");
        }
    }
}

#[test]
fn s_membership_rejects_foreign_primes() {
    for m in 2..=200u64 {
        let primes: Vec<u64> = factorize(m).unwrap().primes().collect();
        for mp in 1..=2_000u64 {
            let expected = factorize(mp).unwrap().primes().all(|p| primes.contains(&p));
            assert_eq!(
                arith::in_s_set(&BigInt::from(mp), m).unwrap(),
                expected,
                "{m} {mp}"
            );
            assert_eq!(arith::in_s_set(&-BigInt::from(mp), m).unwrap(), expected);
        }
    }
}

#[test]
fn radical_and_kernel_are_multiplicative_on_coprime_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0004);
    let mut done = 0;
    while done < 1000 {
        let m1 = rng.gen_range(1..=1_000_000u64);
        let m2 = rng.gen_range(1..=1_000_000u64);
        if m1.gcd(&m2) != 1 {
            continue;
        }
        done += 1;
        assert_eq!(
            radical(m1 * m2).unwrap(),
            radical(m1).unwrap() * radical(m2).unwrap()
        );
        assert_eq!(
            square_kernel(m1 * m2).unwrap(),
            square_kernel(m1).unwrap() * square_kernel(m2).unwrap()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn factorize_large_u64(m in 2u64..u64::MAX) {
        let f = factorize(m).unwrap();
        let prod: BigUint = f.factors().iter().map(|&(p, e)| BigUint::from(p).pow(e)).product();
        prop_assert_eq!(prod, BigUint::from(m));
    }

    #[test]
    fn perfect_squares_detected(r in 0u64..u64::MAX, bump in 1u64..1000) {
        let sq = BigUint::from(r) * BigUint::from(r);
        prop_assert_eq!(arith::is_perfect_square(&sq), Some(BigUint::from(r)));
        if r > 0 {
            prop_assert_eq!(arith::is_perfect_square(&(&sq + bump.min(r.saturating_mul(2)))), None);
        }
    }

    #[test]
    fn exact_power_round_trip(base in 2u64..10_000, e in 1u32..40, off in 1u64..3) {
        let b = BigUint::from(base);
        prop_assert_eq!(arith::exact_power_of(&b.pow(e), &b), Some(e));
        prop_assert_eq!(arith::exact_power_of(&(b.pow(e) + off), &b), None);
    }
}

// ---- independent high-precision logarithm ----
//
// Decimal fixed point at 10^SCALE. ln is obtained by Newton's method on
// exp (Taylor series with argument halving), which shares nothing with the
// library's atanh-based binary fixed point.

const SCALE: u32 = 220;

fn one() -> BigInt {
    BigInt::from(10u32).pow(SCALE)
}

fn fx_mul(a: &BigInt, b: &BigInt) -> BigInt {
    (a * b) / one()
}

fn fx_exp(y: &BigInt) -> BigInt {
    const HALVINGS: u32 = 12;
    let r = y / BigInt::from(1u32 << HALVINGS);
    let mut term = one();
    let mut sum = one();
    let mut k = 1u32;
    while !term.is_zero() {
        term = fx_mul(&term, &r) / k;
        sum += &term;
        k += 1;
    }
    for _ in 0..HALVINGS {
        sum = fx_mul(&sum, &sum);
    }
    sum
}

fn fx_ln(m: &BigUint) -> BigInt {
    let x = BigInt::from(m.clone()) * one();
    let guess = m.to_f64().unwrap().ln();
    let mut y = BigInt::from((guess * 1e15) as i64) * BigInt::from(10u32).pow(SCALE - 15);
    for _ in 0..12 {
        let ey = fx_exp(&y);
        let step = (&x - &ey) * BigInt::from(2) * one() / (&x + &ey);
        if step.abs() < BigInt::from(10u32).pow(10) {
            y += step;
            break;
        }
        y += step;
    }
    y
}

fn rand_rational(rng: &mut ChaCha8Rng) -> BigRational {
    BigRational::new(
        BigInt::from(rng.gen_range(1..=10_000u64)),
        BigInt::from(rng.gen_range(1..=10_000u64)),
    )
}

#[test]
fn oracle_ln_is_accurate() {
    // ln 2 to 50 places
    let ln2 = fx_ln(&BigUint::from(2u32));
    let expected = "0.69314718055994530941723212145817656807550013436025";
    let digits = (&ln2 / BigInt::from(10u32).pow(SCALE - 50)).to_string();
    assert_eq!(format!("0.{digits}"), expected);
}

#[test]
fn cmp_scaled_log_agrees_with_decimal_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0010);
    let tolerance = BigInt::from(10u32).pow(SCALE - 190);
    let mut decided = 0;
    for i in 0..1000 {
        let (c1, m1, c2, m2) = if i % 4 == 0 {
            // near ties: m1 = r^p, m2 = r^q with coefficients close to q : p
            let r = rng.gen_range(2..=50u64);
            let p = rng.gen_range(1..=6u32);
            let q = rng.gen_range(1..=6u32);
            let c1 = BigRational::new(
                BigInt::from(q) * 1000 + rng.gen_range(-1..=1i64),
                BigInt::from(1000),
            );
            let c2 = BigRational::from_integer(BigInt::from(p));
            (c1, BigUint::from(r).pow(p), c2, BigUint::from(r).pow(q))
        } else {
            let m1 = BigUint::from(rng.gen_range(2..=1_000_000_000_000u64));
            let m2 = BigUint::from(rng.gen_range(2..=1_000_000_000_000u64));
            (rand_rational(&mut rng), m1, rand_rational(&mut rng), m2)
        };
        let got = cmp_scaled_log(&c1, &m1, &c2, &m2).unwrap();

        // c1 ln m1 - c2 ln m2 scaled by the common denominator q1 q2
        let (p1, q1) = (c1.numer(), c1.denom());
        let (p2, q2) = (c2.numer(), c2.denom());
        let diff = p1 * q2 * fx_ln(&m1) - p2 * q1 * fx_ln(&m2);
        let err = (p1 * q2 + p2 * q1).abs() * &tolerance;
        if diff.abs() > err {
            decided += 1;
            let expected = if diff.is_positive() {
                Ordering::Greater
            } else {
                Ordering::Less
            };
            assert_eq!(got, expected, "c1={c1} m1={m1} c2={c2} m2={m2}");
        } else {
            // inside the oracle's error band only an exact tie is consistent
            assert_eq!(got, Ordering::Equal, "c1={c1} m1={m1} c2={c2} m2={m2}");
        }
    }
    assert!(decided > 900, "oracle decided only {decided} cases");
}

#[test]
fn cmp_scaled_log_exact_ties() {
    let r = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    let u = |n: u64| BigUint::from(n);
    assert_eq!(
        cmp_scaled_log(&r(3, 1), &u(4), &r(2, 1), &u(8)).unwrap(),
        Ordering::Equal
    );
    assert_eq!(
        cmp_scaled_log(&r(1, 2), &u(9), &r(1, 1), &u(3)).unwrap(),
        Ordering::Equal
    );
    // 2^(10^6) against 3^630929 and 3^630930, beyond the direct-power range
    let below = cmp_scaled_log(&r(1_000_000, 1), &u(2), &r(630_929, 1), &u(3)).unwrap();
    let above = cmp_scaled_log(&r(1_000_000, 1), &u(2), &r(630_930, 1), &u(3)).unwrap();
    assert_eq!((below, above), (Ordering::Greater, Ordering::Less));
    assert!(cmp_scaled_log(&r(1, 1), &u(1), &r(1, 1), &u(3)).is_err());
    assert!(cmp_scaled_log(&r(-1, 1), &u(2), &r(1, 1), &u(3)).is_err());
}
