//! Certified real bounds in fixed point.
//!
//! A [`Bounds`] value is a closed interval `[lo, hi] / 2^prec` known to contain
//! the real quantity it stands for. Every operation rounds `lo` down and `hi`
//! up, so the enclosure survives arbitrary composition. Only non-negative
//! quantities are supported, which is all the inequality checks need.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Guard bits used inside `ln` before rounding back to the caller's precision.
const GUARD_BITS: u32 = 24;

/// Precision ladder used by [`decide`].
pub const START_PRECISION: u32 = 64;
pub const MAX_PRECISION: u32 = 1 << 16;

fn ratio_u64(num: u64, den: u64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational enclosure of pi: 3.14159265358979 < pi < 3.14159265358980.
pub fn pi_sandwich() -> (BigRational, BigRational) {
    (
        ratio_u64(314_159_265_358_979, 100_000_000_000_000),
        ratio_u64(314_159_265_358_980, 100_000_000_000_000),
    )
}

/// Rational enclosure of e: 2.71828182845904 < e < 2.71828182845905.
pub fn e_sandwich() -> (BigRational, BigRational) {
    (
        ratio_u64(271_828_182_845_904, 100_000_000_000_000),
        ratio_u64(271_828_182_845_905, 100_000_000_000_000),
    )
}

fn floor_div(a: &BigInt, b: &BigInt) -> BigInt {
    a.div_floor(b)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -((-a).div_floor(b))
}

fn floor_shr(a: &BigInt, s: u32) -> BigInt {
    a >> s as usize
}

fn ceil_shr(a: &BigInt, s: u32) -> BigInt {
    -((-a) >> s as usize)
}

fn ceil_sqrt(a: &BigInt) -> BigInt {
    let r = a.sqrt();
    if &r * &r == *a {
        r
    } else {
        r + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bounds {
    lo: BigInt,
    hi: BigInt,
    prec: u32,
}

impl Bounds {
    pub fn precision(&self) -> u32 {
        self.prec
    }

    /// An exactly representable non-negative integer.
    pub fn integer(n: &BigUint, prec: u32) -> Bounds {
        let v = BigInt::from(n.clone()) << prec as usize;
        Bounds {
            lo: v.clone(),
            hi: v,
            prec,
        }
    }

    /// Encloses a non-negative rational.
    pub fn rational(r: &BigRational, prec: u32) -> Bounds {
        Bounds::between(r, r, prec)
    }

    /// Encloses every value of the rational interval `[lo, hi]`.
    pub fn between(lo: &BigRational, hi: &BigRational, prec: u32) -> Bounds {
        assert!(
            !lo.is_negative() && lo <= hi,
            "non-negative ordered endpoints required"
        );
        let scaled_lo = lo.numer() << prec as usize;
        let scaled_hi = hi.numer() << prec as usize;
        Bounds {
            lo: floor_div(&scaled_lo, lo.denom()),
            hi: ceil_div(&scaled_hi, hi.denom()),
            prec,
        }
    }

    pub fn add(&self, other: &Bounds) -> Bounds {
        assert_eq!(self.prec, other.prec);
        Bounds {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
            prec: self.prec,
        }
    }

    pub fn mul(&self, other: &Bounds) -> Bounds {
        assert_eq!(self.prec, other.prec);
        assert!(!self.lo.is_negative() && !other.lo.is_negative());
        Bounds {
            lo: floor_shr(&(&self.lo * &other.lo), self.prec),
            hi: ceil_shr(&(&self.hi * &other.hi), self.prec),
            prec: self.prec,
        }
    }

    /// Division by a strictly positive enclosure.
    pub fn div(&self, other: &Bounds) -> Bounds {
        assert_eq!(self.prec, other.prec);
        assert!(
            other.lo.is_positive(),
            "divisor enclosure must exclude zero"
        );
        let p = self.prec as usize;
        Bounds {
            lo: floor_div(&(&self.lo << p), &other.hi),
            hi: ceil_div(&(&self.hi << p), &other.lo),
            prec: self.prec,
        }
    }

    pub fn sqrt(&self) -> Bounds {
        let p = self.prec as usize;
        Bounds {
            lo: (&self.lo << p).sqrt(),
            hi: ceil_sqrt(&(&self.hi << p)),
            prec: self.prec,
        }
    }

    /// Natural logarithm of an enclosure lying in `[1, inf)`.
    pub fn ln(&self) -> Bounds {
        let one = BigInt::one() << self.prec as usize;
        assert!(self.lo >= one, "ln is only provided on [1, inf)");
        let lo = ln_fixed(&self.lo, self.prec).0;
        let hi = ln_fixed(&self.hi, self.prec).1;
        Bounds {
            lo,
            hi,
            prec: self.prec,
        }
    }

    /// Lower endpoint as an exact rational.
    pub fn lower(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::one() << self.prec as usize)
    }

    /// Upper endpoint as an exact rational.
    pub fn upper(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::one() << self.prec as usize)
    }

    /// `Some(ordering)` when the two enclosures are disjoint.
    pub fn compare(&self, other: &Bounds) -> Option<Ordering> {
        assert_eq!(self.prec, other.prec);
        if self.hi < other.lo {
            Some(Ordering::Less)
        } else if self.lo > other.hi {
            Some(Ordering::Greater)
        } else {
            None
        }
    }
}

/// Evaluates `build` at increasing precision until the two enclosures it
/// returns separate. `None` when they still overlap at [`MAX_PRECISION`].
pub fn decide<F>(build: F) -> Option<(Ordering, Bounds, Bounds)>
where
    F: Fn(u32) -> (Bounds, Bounds),
{
    let mut prec = START_PRECISION;
    while prec <= MAX_PRECISION {
        let (left, right) = build(prec);
        if let Some(ord) = left.compare(&right) {
            return Some((ord, left, right));
        }
        prec *= 2;
    }
    None
}

/// Lower and upper bounds (scaled by `2^w`) of `atanh(num/den)` for
/// `0 <= num/den <= 1/3`.
fn atanh_fixed(num: &BigInt, den: &BigInt, w: u32) -> (BigInt, BigInt) {
    let ws = w as usize;
    let y_lo = floor_div(&(num << ws), den);
    let y_hi = ceil_div(&(num << ws), den);
    let y2_lo = floor_shr(&(&y_lo * &y_lo), w);
    let y2_hi = ceil_shr(&(&y_hi * &y_hi), w);

    let mut pow_lo = y_lo;
    let mut pow_hi = y_hi;
    let mut sum_lo = BigInt::zero();
    let mut sum_hi = BigInt::zero();
    let mut odd = BigInt::one();
    let one = BigInt::one();
    while pow_hi > one {
        sum_lo += floor_div(&pow_lo, &odd);
        sum_hi += ceil_div(&pow_hi, &odd);
        pow_lo = floor_shr(&(&pow_lo * &y2_lo), w);
        pow_hi = ceil_shr(&(&pow_hi * &y2_hi), w);
        odd += 2;
    }
    // Remaining terms are bounded by pow_hi / (odd (1 - y^2)) <= 9/8 ulp.
    sum_hi += 2;
    (sum_lo, sum_hi)
}

/// Bounds of `ln(x)` for `x = value / 2^prec >= 1`, returned at scale `2^prec`.
fn ln_fixed(value: &BigInt, prec: u32) -> (BigInt, BigInt) {
    debug_assert!(value.sign() == Sign::Plus);
    let w = prec + GUARD_BITS;
    let bits = value.bits();
    // x = value / 2^prec lies in [2^k, 2^(k+1))
    let k = bits - 1 - prec as u64;
    let m = BigInt::one() << (prec as u64 + k) as usize;
    let num = value - &m;
    let den = value + &m;
    let (t_lo, t_hi) = atanh_fixed(&num, &den, w);
    let (l2_lo, l2_hi) = atanh_fixed(&BigInt::one(), &BigInt::from(3), w);
    let kb = BigInt::from(k);
    let lo = &kb * (l2_lo * 2) + t_lo * 2;
    let hi = &kb * (l2_hi * 2) + t_hi * 2;
    (floor_shr(&lo, GUARD_BITS), ceil_shr(&hi, GUARD_BITS))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn to_f64(r: &BigRational) -> f64 {
        use num_traits::ToPrimitive;
        r.to_f64().unwrap()
    }

    #[test]
    fn ln_encloses_known_values() {
        for &(x, ln) in &[
            (1u64, 0.0f64),
            (2, std::f64::consts::LN_2),
            (10, std::f64::consts::LN_10),
            (1000, 6.907_755_278_982_137),
        ] {
            let b = Bounds::integer(&BigUint::from(x), 80).ln();
            assert!(to_f64(&b.lower()) <= ln + 1e-15, "{x}");
            assert!(to_f64(&b.upper()) >= ln - 1e-15, "{x}");
            assert!(to_f64(&(b.upper() - b.lower())) < 1e-18, "{x}");
        }
    }

    #[test]
    fn sqrt_and_division_are_directed() {
        let two = Bounds::integer(&BigUint::from(2u32), 64);
        let s = two.sqrt();
        assert!(s.lower() * s.lower() <= BigRational::from_integer(2.into()));
        assert!(s.upper() * s.upper() >= BigRational::from_integer(2.into()));
        let third =
            Bounds::integer(&BigUint::one(), 64).div(&Bounds::integer(&BigUint::from(3u32), 64));
        let exact = ratio_u64(1, 3);
        assert!(third.lower() <= exact && exact <= third.upper());
    }

    #[test]
    fn sandwiches_are_ordered_and_tight() {
        let (lo, hi) = pi_sandwich();
        assert!(lo < hi);
        assert!(to_f64(&lo) <= std::f64::consts::PI && std::f64::consts::PI <= to_f64(&hi));
        let (lo, hi) = e_sandwich();
        assert!(to_f64(&lo) <= std::f64::consts::E && std::f64::consts::E <= to_f64(&hi));
    }

    #[test]
    fn decide_separates_close_values() {
        // ln 3 = 1.0986.. vs 11/10
        let out = decide(|p| {
            (
                Bounds::integer(&BigUint::from(3u32), p).ln(),
                Bounds::rational(&ratio_u64(11, 10), p),
            )
        });
        assert_eq!(out.map(|o| o.0), Some(Ordering::Less));
    }
}
