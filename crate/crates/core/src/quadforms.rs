//! Reduced positive definite binary quadratic forms of discriminant `-4D`
//! and the class number `h(-4D)`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use serde::Serialize;

use crate::arith::certified::{self, Bounds};

/// The form `a x^2 + b xy + c y^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct QuadForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl QuadForm {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_primitive(&self) -> bool {
        self.a.gcd(&self.b).gcd(&self.c) == 1
    }

    /// `|b| <= a <= c`, with `b >= 0` on the boundary cases `|b| = a` or `a = c`.
    pub fn is_reduced(&self) -> bool {
        let QuadForm { a, b, c } = *self;
        b.abs() <= a && a <= c && (b >= 0 || (b.abs() != a && a != c))
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a > 0 && self.discriminant() < 0
    }
}

impl std::fmt::Display for QuadForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.a, self.b, self.c)
    }
}

/// All reduced primitive forms of discriminant `-4D`, ordered by `a` then `b`.
///
/// Reduction gives `3a^2 <= 4D`, and `b` is even because `b^2 = -4D + 4ac`.
pub fn reduced_forms(d: u64) -> Vec<QuadForm> {
    assert!(d >= 1, "D must be positive");
    let d = d as i64;
    let mut out = Vec::new();
    let mut a = 1i64;
    while 3 * a * a <= 4 * d {
        let b_start = -a + (a & 1); // smallest even b >= -a
        for b in (b_start..=a).step_by(2) {
            let num = b * b + 4 * d;
            if num % (4 * a) != 0 {
                continue;
            }
            let f = QuadForm {
                a,
                b,
                c: num / (4 * a),
            };
            if f.is_reduced() && f.is_primitive() {
                out.push(f);
            }
        }
        a += 1;
    }
    out
}

/// `h(-4D)`.
pub fn class_number(d: u64) -> u64 {
    reduced_forms(d).len() as u64
}

/// Certified comparison of `h(-4D)` with `(4/pi) sqrt(D) log(2 e sqrt(D))`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassBound {
    pub d: u64,
    pub class_number: u64,
    /// Proven lower bound of the right-hand side.
    #[serde(serialize_with = "crate::arith::ser::rational")]
    pub bound_lower: BigRational,
    /// Bits of precision at which the inequality was settled.
    pub precision: u32,
    pub holds: bool,
}

fn bound_enclosure(d: u64, prec: u32) -> Bounds {
    let (pi_lo, pi_hi) = certified::pi_sandwich();
    let (e_lo, e_hi) = certified::e_sandwich();
    let sqrt_d = Bounds::integer(&BigUint::from(d), prec).sqrt();
    let four = Bounds::integer(&BigUint::from(4u32), prec);
    let two = Bounds::integer(&BigUint::from(2u32), prec);
    let coefficient = four.div(&Bounds::between(&pi_lo, &pi_hi, prec));
    let log_arg = two.mul(&Bounds::between(&e_lo, &e_hi, prec)).mul(&sqrt_d);
    coefficient.mul(&sqrt_d).mul(&log_arg.ln())
}

/// Decides `h(-4D) < (4/pi) sqrt(D) log(2 e sqrt(D))`, escalating precision
/// until the verdict is proven. `holds` is `true` only when the lower
/// enclosure of the bound exceeds `h`.
pub fn class_bound(d: u64) -> ClassBound {
    let h = class_number(d);
    let h_bounds = |prec| Bounds::integer(&BigUint::from(h), prec);
    match certified::decide(|prec| (h_bounds(prec), bound_enclosure(d, prec))) {
        Some((ord, _, rhs)) => ClassBound {
            d,
            class_number: h,
            bound_lower: rhs.lower(),
            precision: rhs.precision(),
            holds: ord == std::cmp::Ordering::Less,
        },
        None => {
            // h sits inside the enclosure at maximum precision: not proven
            let rhs = bound_enclosure(d, certified::MAX_PRECISION);
            ClassBound {
                d,
                class_number: h,
                bound_lower: rhs.lower(),
                precision: certified::MAX_PRECISION,
                holds: false,
            }
        }
    }
}

/// `true` iff the class number bound is proven for `D`.
pub fn check_class_bound(d: u64) -> bool {
    class_bound(d).holds
}
