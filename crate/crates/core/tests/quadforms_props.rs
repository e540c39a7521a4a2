use num_integer::Integer;
use ternexp::quadforms::{self, class_number, reduced_forms, QuadForm};

/// Second enumeration: loop over `b >= 0`, then over the divisors `a` of
/// `ac = (b^2 + 4D) / 4`, counting `+-b` as separate forms except on the
/// boundary cases.
fn class_number_by_b(d: i64) -> usize {
    let mut count = 0;
    let mut b = 0i64;
    while 3 * b * b <= 4 * d {
        let ac = (b * b + 4 * d) / 4;
        let mut a = b.max(1);
        while a * a <= ac {
            if ac % a == 0 {
                let c = ac / a;
                if b <= a && a <= c && a.gcd(&b).gcd(&c) == 1 {
                    let one_sided = b == 0 || b == a || a == c;
                    count += if one_sided { 1 } else { 2 };
                }
            }
            a += 1;
        }
        b += 2;
    }
    count
}

#[test]
fn every_form_is_reduced_primitive_and_of_the_right_discriminant() {
    for d in 1..=10_000u64 {
        let forms = reduced_forms(d);
        assert!(!forms.is_empty());
        assert_eq!(
            forms[0],
            QuadForm {
                a: 1,
                b: 0,
                c: d as i64
            }
        );
        for f in &forms {
            assert_eq!(f.discriminant(), -4 * d as i64, "{f} for D={d}");
            assert!(
                f.is_primitive() && f.is_reduced() && f.is_positive_definite(),
                "{f}"
            );
        }
        assert!(forms
            .windows(2)
            .all(|w| (w[0].a, w[0].b) < (w[1].a, w[1].b)));
    }
}

#[test]
fn agrees_with_divisor_enumeration() {
    for d in 1..=3_000u64 {
        assert_eq!(
            class_number(d) as usize,
            class_number_by_b(d as i64),
            "D={d}"
        );
    }
}

#[test]
fn fixed_small_values() {
    let ds = [1u64, 2, 3, 4, 5, 6, 7, 10, 13, 14];
    let oracle: Vec<usize> = ds.iter().map(|&d| class_number_by_b(d as i64)).collect();
    let got: Vec<usize> = ds.iter().map(|&d| class_number(d) as usize).collect();
    assert_eq!(got, oracle);
    assert_eq!(got, vec![1, 1, 1, 1, 2, 2, 1, 2, 2, 4]);
    assert_eq!(class_number(6), 2);
    assert_eq!(class_number(14), 4);
}

#[test]
fn class_number_one_only_for_known_discriminants() {
    // -4, -8, -12, -16, -28 are the only class number one discriminants of the form -4D
    let ones: Vec<u64> = (1..=10_000u64).filter(|&d| class_number(d) == 1).collect();
    assert_eq!(ones, vec![1, 2, 3, 4, 7]);
}

#[test]
fn class_bound_holds_on_a_prefix() {
    for d in 1..=500u64 {
        let b = quadforms::class_bound(d);
        assert!(b.holds, "{b:?}");
        assert_eq!(b.class_number, class_number(d));
    }
}
