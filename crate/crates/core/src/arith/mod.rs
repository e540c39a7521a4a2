//! Integer foundations: factorization, the radical `r(m)`, the square kernel
//! `R(m)`, membership in the S-unit set `S(m)`, perfect powers, and exact
//! comparison of scaled logarithms.

pub mod certified;
pub mod prime;

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::{Error, Result};
use certified::Bounds;

/// Canonical prime factorization of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Factorization {
    #[serde(serialize_with = "crate::arith::ser::decimal")]
    value: BigUint,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// The factorization of 1.
    pub fn unit() -> Factorization {
        Factorization {
            value: BigUint::one(),
            factors: Vec::new(),
        }
    }

    /// Builds a factorization from prime powers, validating every invariant.
    pub fn from_prime_powers(mut factors: Vec<(u64, u32)>) -> Result<Factorization> {
        factors.sort_unstable();
        for w in factors.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::Precondition(format!("repeated prime {}", w[0].0)));
            }
        }
        if let Some(&(p, e)) = factors
            .iter()
            .find(|&&(p, e)| e == 0 || !prime::is_prime_u64(p))
        {
            return Err(Error::Precondition(format!("invalid prime power {p}^{e}")));
        }
        let value = product(&factors);
        Ok(Factorization { value, factors })
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    /// Exponent of `p` (zero when `p` does not divide the value).
    pub fn valuation(&self, p: u64) -> u32 {
        self.factors
            .binary_search_by_key(&p, |&(q, _)| q)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    /// Factorization of `value^e`. `e = 0` gives the unit.
    pub fn pow(&self, e: u32) -> Factorization {
        if e == 0 {
            return Factorization::unit();
        }
        let factors: Vec<_> = self.factors.iter().map(|&(p, t)| (p, t * e)).collect();
        Factorization {
            value: num_traits::pow(self.value.clone(), e as usize),
            factors,
        }
    }

    /// Factorization of the product of two values.
    pub fn mul(&self, other: &Factorization) -> Factorization {
        let mut merged: Vec<(u64, u32)> =
            Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        while i < self.factors.len() || j < other.factors.len() {
            match (self.factors.get(i), other.factors.get(j)) {
                (Some(&(p, s)), Some(&(q, t))) if p == q => {
                    merged.push((p, s + t));
                    i += 1;
                    j += 1;
                }
                (Some(&(p, s)), Some(&(q, _))) if p < q => {
                    merged.push((p, s));
                    i += 1;
                }
                (Some(_), Some(&(q, t))) => {
                    merged.push((q, t));
                    j += 1;
                }
                (Some(&f), None) => {
                    merged.push(f);
                    i += 1;
                }
                (None, Some(&f)) => {
                    merged.push(f);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Factorization {
            value: &self.value * &other.value,
            factors: merged,
        }
    }

    /// `r(m)`, the product of the distinct primes.
    pub fn radical(&self) -> BigUint {
        self.factors
            .iter()
            .map(|&(p, _)| BigUint::from(p))
            .product()
    }

    /// `R(m)`: each prime kept with exponent 2 when its multiplicity is even
    /// and 1 when odd.
    pub fn square_kernel(&self) -> Factorization {
        let factors: Vec<_> = self
            .factors
            .iter()
            .map(|&(p, t)| (p, if t % 2 == 0 { 2 } else { 1 }))
            .collect();
        Factorization {
            value: product(&factors),
            factors,
        }
    }
}

fn product(factors: &[(u64, u32)]) -> BigUint {
    factors
        .iter()
        .map(|&(p, e)| num_traits::pow(BigUint::from(p), e as usize))
        .product()
}

/// Factorizes `m >= 1` by wheel trial division, stopping early once the
/// remaining cofactor is prime.
pub fn factorize(m: u64) -> Result<Factorization> {
    if m == 0 {
        return Err(Error::Zero("factorize"));
    }
    let mut rest = m;
    let mut factors = Vec::new();
    let mut divide_out = |p: u64, rest: &mut u64| -> bool {
        let mut e = 0;
        while (*rest).is_multiple_of(p) {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
        e > 0
    };
    for p in [2u64, 3, 5] {
        divide_out(p, &mut rest);
    }
    // 30-wheel: residues coprime to 2, 3, 5
    const STEPS: [u64; 8] = [4, 2, 4, 2, 4, 6, 2, 6];
    let mut p = 7u64;
    let mut i = 0;
    let mut rest_is_prime = prime::is_prime_u64(rest);
    while rest > 1 && !rest_is_prime && p.saturating_mul(p) <= rest {
        if divide_out(p, &mut rest) {
            rest_is_prime = prime::is_prime_u64(rest);
        }
        p += STEPS[i];
        i = (i + 1) % STEPS.len();
    }
    if rest > 1 {
        factors.push((rest, 1));
    }
    Ok(Factorization {
        value: BigUint::from(m),
        factors,
    })
}

/// `r(m)`, the product of the distinct prime divisors; `r(1) = 1`.
pub fn radical(m: u64) -> Result<u64> {
    let f = factorize(m)?;
    f.radical().to_u64().ok_or(Error::Overflow("radical"))
}

/// `R(m)`; `m / R(m)` is always a perfect square and `R(1) = 1`.
pub fn square_kernel(m: u64) -> Result<u64> {
    let f = factorize(m)?;
    f.square_kernel()
        .value
        .to_u64()
        .ok_or(Error::Overflow("square_kernel"))
}

/// Whether every prime divisor of `|candidate|` divides `m`, i.e. whether
/// `candidate` lies in `S(m)`. Signs are ignored.
pub fn in_s_set(candidate: &BigInt, m: u64) -> Result<bool> {
    if candidate.is_zero() {
        return Err(Error::Zero("in_s_set candidate"));
    }
    let f = factorize(m)?;
    Ok(in_s_set_of(candidate.magnitude(), &f))
}

/// [`in_s_set`] against an already factorized `m`.
pub fn in_s_set_of(candidate: &BigUint, m: &Factorization) -> bool {
    let mut rest = candidate.clone();
    for p in m.primes() {
        let p = BigUint::from(p);
        loop {
            let (q, r) = rest.div_rem(&p);
            if !r.is_zero() {
                break;
            }
            rest = q;
        }
    }
    rest.is_one()
}

/// Square root of `m` when `m` is a perfect square.
pub fn is_perfect_square(m: &BigUint) -> Option<BigUint> {
    let r = m.sqrt();
    (&r * &r == *m).then_some(r)
}

/// The exponent `e` with `base^e = value`, found by repeated exact division.
pub fn exact_power_of(value: &BigUint, base: &BigUint) -> Option<u32> {
    if value.is_zero() || *base < BigUint::from(2u32) {
        return None;
    }
    let mut rest = value.clone();
    let mut e = 0u32;
    while !rest.is_one() {
        let (q, r) = rest.div_rem(base);
        if !r.is_zero() {
            return None;
        }
        rest = q;
        e += 1;
    }
    Some(e)
}

/// Exponent products above this many bits are compared through certified
/// logarithm enclosures instead of explicit powers.
const DIRECT_POWER_BITS: u64 = 1 << 16;

/// Exact ordering of `c1 * ln(m1)` against `c2 * ln(m2)` for positive
/// rationals `c1`, `c2` and integers `m1, m2 >= 2`.
///
/// With `c1 = p1/q1`, `c2 = p2/q2` this is the ordering of `m1^(p1 q2)` and
/// `m2^(p2 q1)`. Equality is settled exactly by reducing the exponents and
/// testing for a common integer root. Unequal sides are ordered by comparing
/// the powers directly when they are small, and otherwise by separating
/// certified logarithm enclosures.
pub fn cmp_scaled_log(
    c1: &BigRational,
    m1: &BigUint,
    c2: &BigRational,
    m2: &BigUint,
) -> Result<Ordering> {
    let two = BigUint::from(2u32);
    for m in [m1, m2] {
        if *m < two {
            return Err(Error::LogArgument(m.to_string()));
        }
    }
    for c in [c1, c2] {
        if !c.is_positive() {
            return Err(Error::Precondition(format!(
                "coefficient {c} must be positive"
            )));
        }
    }
    let (p1, q1) = (c1.numer().magnitude(), c1.denom().magnitude());
    let (p2, q2) = (c2.numer().magnitude(), c2.denom().magnitude());
    let a = p1 * q2;
    let b = p2 * q1;

    if powers_equal(m1, &a, m2, &b) {
        return Ok(Ordering::Equal);
    }

    let small = |e: &BigUint, m: &BigUint| {
        e.to_u64()
            .is_some_and(|e| e.saturating_mul(m.bits()) <= DIRECT_POWER_BITS)
    };
    if small(&a, m1) && small(&b, m2) {
        let lhs = m1.pow(a.to_u32().expect("bounded by DIRECT_POWER_BITS"));
        let rhs = m2.pow(b.to_u32().expect("bounded by DIRECT_POWER_BITS"));
        return Ok(lhs.cmp(&rhs));
    }

    certified::decide(|prec| {
        (
            Bounds::rational(c1, prec).mul(&Bounds::integer(m1, prec).ln()),
            Bounds::rational(c2, prec).mul(&Bounds::integer(m2, prec).ln()),
        )
    })
    .map(|(ord, _, _)| ord)
    .ok_or_else(|| {
        Error::Precondition("logarithm comparison not separated at maximum precision".into())
    })
}

/// Decides `m1^a == m2^b` without forming the powers.
///
/// With `g = gcd(a, b)`, `a = g a'`, `b = g b'` and `gcd(a', b') = 1`, the
/// equality holds iff `m1 = r^b'` and `m2 = r^a'` for some integer `r`.
fn powers_equal(m1: &BigUint, a: &BigUint, m2: &BigUint, b: &BigUint) -> bool {
    let g = a.gcd(b);
    let a_red = a / &g;
    let b_red = b / &g;
    // r >= 2 forces r^b' >= 2^b', which exceeds m1 once b' >= bits(m1)
    let (Some(ar), Some(br)) = (a_red.to_u32(), b_red.to_u32()) else {
        return false;
    };
    if br as u64 >= m1.bits() || ar as u64 >= m2.bits() {
        return false;
    }
    let r = m1.nth_root(br);
    r.pow(br) == *m1 && r.pow(ar) == *m2
}

pub(crate) mod ser {
    use num_bigint::{BigInt, BigUint};
    use num_rational::BigRational;
    use serde::Serializer;

    pub fn decimal<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn decimal_signed<S: Serializer>(v: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(v)
    }

    pub fn rational<S: Serializer>(v: &BigRational, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(&format_args!("{}/{}", v.numer(), v.denom()))
    }
}
