use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use proptest::prelude::*;
use ternexp::arith::factorize;
use ternexp::lucas::{self, make_params, LucasParams};

fn valid(u: i64, v: i64) -> Option<LucasParams> {
    make_params(u, v).ok()
}

/// Primitive divisors by definition: factor L_n and drop every prime that
/// divides v or an earlier term. Only usable while the terms fit in u64.
fn primitive_by_factoring(p: &LucasParams, n: u32) -> Option<Option<u64>> {
    let seq = lucas::lucas_sequence(p, n);
    let target = seq[n as usize].magnitude().to_u64()?;
    let f = factorize(target).ok()?;
    let earlier: Vec<BigUint> = std::iter::once(BigUint::from(p.v().unsigned_abs()))
        .chain(seq[1..n as usize].iter().map(|t| t.magnitude().clone()))
        .collect();
    let first = f
        .primes()
        .find(|&q| earlier.iter().all(|t| !(t % q).is_zero()));
    Some(first)
}

#[test]
fn table_parameters_keep_lucas_numbers_coprime_to_w() {
    for e in lucas::defective_table() {
        let p = make_params(e.u, e.v).unwrap();
        let w = BigInt::from(p.w());
        for (n, l) in lucas::lucas_sequence(&p, 60).iter().enumerate().skip(1) {
            assert!(l.gcd(&w) == BigInt::from(1), "({}, {}) n={n}", e.u, e.v);
        }
    }
}

#[test]
fn table_entries_are_defective_in_both_orientations() {
    for e in lucas::defective_table() {
        let p = make_params(e.u, e.v).unwrap();
        assert!(lucas::is_defective(&p, e.n).unwrap(), "{e:?}");
        assert!(lucas::is_defective(&p.negated(), e.n).unwrap(), "{e:?}");
        assert_eq!(lucas::primitive_divisor(&p, e.n).unwrap(), None);
    }
}

#[test]
fn defectiveness_is_equivalence_invariant() {
    for u in 1..=8i64 {
        for v in -80..=12i64 {
            let (Some(p), Some(q)) = (valid(u, v), valid(-u, v)) else {
                continue;
            };
            for n in 2..=30 {
                assert_eq!(
                    lucas::is_defective(&p, n).unwrap(),
                    lucas::is_defective(&q, n).unwrap(),
                    "({u}, {v}) n={n}"
                );
            }
        }
    }
}

#[test]
fn primitive_divisor_matches_factoring_definition() {
    let mut checked = 0;
    for u in -10..=10i64 {
        for v in -60..=20i64 {
            let Some(p) = valid(u, v) else { continue };
            for n in 2..=40 {
                let Some(expected) = primitive_by_factoring(&p, n) else {
                    break;
                };
                let got = lucas::primitive_divisor(&p, n).unwrap();
                assert_eq!(got, expected.map(BigUint::from), "({u}, {v}) n={n}");
                checked += 1;
            }
        }
    }
    assert!(checked > 5_000, "only {checked} cases fit in u64");
}

#[test]
fn degenerate_parameters_rejected() {
    // alpha / beta a root of unity: (1, -3), (2, 0), (1, 1) ...
    for (u, v) in [
        (1, -3),
        (2, -4),
        (1, 1),
        (3, -3),
        (0, -4),
        (2, 0),
        (2, 4),
        (4, 0),
    ] {
        assert!(make_params(u, v).is_err(), "({u}, {v})");
    }
    // gcd(u, w) != 1
    assert!(make_params(2, -12).is_err());
    // u^2 - v not divisible by 4
    assert!(make_params(1, 2).is_err());
}

#[test]
fn index_guard() {
    let p = make_params(1, 5).unwrap();
    assert!(lucas::primitive_divisor(&p, 1).is_err());
    assert!(lucas::is_defective(&p, 0).is_err());
    assert!(lucas::scan_defective(6, 1..=2, -5..=5).is_err());
    assert!(lucas::scan_defective(4, 1..=2, -5..=5).is_err());
}

fn any_params() -> impl Strategy<Value = LucasParams> {
    (-20i64..=20, -20i64..=20).prop_filter_map("not a Lucas pair", |(u, v)| valid(u, v))
}

proptest! {
    #![proptest_config(ProptestConfig { failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn recurrence_equals_closed_form(p in any_params(), n in 0u32..=40) {
        prop_assert_eq!(lucas::lucas_number(&p, n), lucas::lucas_closed_form(&p, n));
    }

    #[test]
    fn nonzero_and_signed_equivalence(p in any_params(), n in 1u32..=100) {
        let l = lucas::lucas_number(&p, n);
        prop_assert!(!l.is_zero());
        let m = lucas::lucas_number(&p.negated(), n);
        prop_assert_eq!(l.abs(), m.abs());
        // L_n(-alpha, -beta) = (-1)^(n-1) L_n(alpha, beta)
        let sign = if n % 2 == 1 { 1 } else { -1 };
        prop_assert_eq!(m, l * sign);
    }

    #[test]
    fn sequence_prefix_matches_single_terms(p in any_params(), n in 0u32..=50) {
        let seq = lucas::lucas_sequence(&p, n);
        prop_assert_eq!(seq.len(), n as usize + 1);
        prop_assert_eq!(&seq[n as usize], &lucas::lucas_number(&p, n));
    }
}
