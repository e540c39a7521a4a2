//! Lucas sequences `L_n = (alpha^n - beta^n) / (alpha - beta)` given by their
//! parameters `(u, v)`, primitive divisors, and n-defective pairs.

use std::ops::RangeInclusive;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::prime;
use crate::{Error, Result};

/// Parameters of a Lucas pair: `u = alpha + beta`, `v = (alpha - beta)^2`,
/// and the derived `w = alpha beta = (u^2 - v) / 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct LucasParams {
    u: i64,
    v: i64,
    w: i64,
}

impl LucasParams {
    pub fn u(&self) -> i64 {
        self.u
    }

    pub fn v(&self) -> i64 {
        self.v
    }

    pub fn w(&self) -> i64 {
        self.w
    }

    /// The parameters of the equivalent pair `(-alpha, -beta)`.
    pub fn negated(&self) -> LucasParams {
        LucasParams {
            u: -self.u,
            ..*self
        }
    }
}

/// Validates `(u, v)` as the parameters of a Lucas pair.
///
/// `alpha / beta` is a root of unity exactly when `(u^2 - 2w) / w` is an
/// integer in `[-2, 2]`; since `gcd(u, w) = 1` this only happens for `w = 1`
/// and `u^2 <= 4`.
pub fn make_params(u: i64, v: i64) -> Result<LucasParams> {
    let err = |reason| Err(Error::LucasParams { u, v, reason });
    let disc = (u as i128) * (u as i128) - v as i128;
    if disc.rem_euclid(4) != 0 {
        return err("u^2 - v is not divisible by 4");
    }
    let w = disc / 4;
    let Ok(w) = i64::try_from(w) else {
        return err("w does not fit in 64 bits");
    };
    if u == 0 || w == 0 {
        return err("alpha + beta and alpha beta must be nonzero");
    }
    if v == 0 {
        return err("alpha = beta");
    }
    if u.unsigned_abs().gcd(&w.unsigned_abs()) != 1 {
        return err("gcd(u, w) != 1");
    }
    let u2 = (u as i128) * (u as i128);
    if u2 % (w as i128) == 0 && (0..=4).contains(&(u2 / w as i128)) {
        return err("alpha / beta is a root of unity");
    }
    Ok(LucasParams { u, v, w })
}

/// `L_0, ..., L_n` by the recurrence `L_k = u L_{k-1} - w L_{k-2}`.
pub fn lucas_sequence(p: &LucasParams, n: u32) -> Vec<BigInt> {
    let u = BigInt::from(p.u);
    let w = BigInt::from(p.w);
    let mut seq = Vec::with_capacity(n as usize + 1);
    seq.push(BigInt::zero());
    if n >= 1 {
        seq.push(BigInt::one());
    }
    for k in 2..=n as usize {
        let next = &u * &seq[k - 1] - &w * &seq[k - 2];
        seq.push(next);
    }
    seq
}

/// `L_n` by the recurrence.
pub fn lucas_number(p: &LucasParams, n: u32) -> BigInt {
    let u = BigInt::from(p.u);
    let w = BigInt::from(p.w);
    let (mut prev, mut cur) = (BigInt::zero(), BigInt::one());
    if n == 0 {
        return prev;
    }
    for _ in 1..n {
        let next = &u * &cur - &w * &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// `L_n` from the closed form, computed in `Z[(1 + sqrt v)/2]`.
///
/// Elements are held as `(a + b sqrt v) / 2`. With `alpha = (u + sqrt v)/2`
/// and `alpha^n = (a_n + b_n sqrt v)/2` one has
/// `alpha^n - beta^n = b_n sqrt v` and `alpha - beta = sqrt v`, so
/// `L_n = b_n`. This route shares nothing with the recurrence.
pub fn lucas_closed_form(p: &LucasParams, n: u32) -> BigInt {
    let v = BigInt::from(p.v);
    let mul = |(a1, b1): &(BigInt, BigInt), (a2, b2): &(BigInt, BigInt)| -> (BigInt, BigInt) {
        let a: BigInt = a1 * a2 + &v * b1 * b2;
        let b: BigInt = a1 * b2 + a2 * b1;
        debug_assert!(a.is_even() && b.is_even());
        (a / 2, b / 2)
    };
    let mut acc = (BigInt::from(2), BigInt::zero());
    let mut base = (BigInt::from(p.u), BigInt::one());
    let mut e = n;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(&acc, &base);
        }
        base = mul(&base, &base);
        e >>= 1;
    }
    acc.1
}

/// Part of `|L_n|` coprime to `v L_1 ... L_{n-1}`; its prime factors are
/// exactly the primitive divisors of `L_n`.
fn primitive_residue(p: &LucasParams, n: u32) -> BigUint {
    let seq = lucas_sequence(p, n);
    let mut rest = seq[n as usize].magnitude().clone();
    let earlier = std::iter::once(BigUint::from(p.v.unsigned_abs()))
        .chain(seq[1..n as usize].iter().map(|t| t.magnitude().clone()));
    for term in earlier {
        loop {
            if rest.is_one() {
                return rest;
            }
            let g = rest.gcd(&term);
            if g.is_one() {
                break;
            }
            rest /= g;
        }
    }
    rest
}

fn check_index(n: u32) -> Result<()> {
    if n < 2 {
        return Err(Error::Index(n, "primitive divisors are defined for n > 1"));
    }
    Ok(())
}

/// Smallest prime `q` with `q | L_n` and `q` coprime to `v L_1 ... L_{n-1}`.
pub fn primitive_divisor(p: &LucasParams, n: u32) -> Result<Option<BigUint>> {
    check_index(n)?;
    Ok(prime::smallest_prime_factor(&primitive_residue(p, n)))
}

/// Whether `L_n` has no primitive divisor.
pub fn is_defective(p: &LucasParams, n: u32) -> Result<bool> {
    check_index(n)?;
    Ok(primitive_residue(p, n).is_one())
}

/// One row of the table of n-defective Lucas pairs for `4 < n <= 30`,
/// `n != 6`, listed up to equivalence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct DefectiveEntry {
    pub n: u32,
    pub u: i64,
    pub v: i64,
}

const DEFECTIVE_TABLE: [(u32, i64, i64); 23] = [
    (5, 1, 5),
    (5, 1, -7),
    (5, 2, -40),
    (5, 1, -11),
    (5, 1, -15),
    (5, 12, -76),
    (5, 12, -1364),
    (7, 1, -7),
    (7, 1, -19),
    (8, 2, -24),
    (8, 1, -7),
    (10, 2, -8),
    (10, 5, -3),
    (10, 5, -47),
    (12, 1, 5),
    (12, 1, -7),
    (12, 1, -11),
    (12, 2, -56),
    (12, 1, -15),
    (12, 1, -19),
    (13, 1, -7),
    (18, 1, -7),
    (30, 1, -7),
];

/// Every n-defective parameter pair with `4 < n <= 30`, `n != 6`, up to
/// equivalence, in the literature's order.
pub fn defective_table() -> Vec<DefectiveEntry> {
    DEFECTIVE_TABLE
        .iter()
        .map(|&(n, u, v)| DefectiveEntry { n, u, v })
        .collect()
}

/// Table rows for one index.
pub fn defective_table_for(n: u32) -> Vec<(i64, i64)> {
    DEFECTIVE_TABLE
        .iter()
        .filter(|e| e.0 == n)
        .map(|&(_, u, v)| (u, v))
        .collect()
}

/// All n-defective pairs `(u, v)` in the box, one per equivalence class
/// (`u >= 1`), in lexicographic order.
///
/// The `u` rows are scanned in parallel; the result does not depend on the
/// number of worker threads.
pub fn scan_defective(
    n: u32,
    u_range: RangeInclusive<i64>,
    v_range: RangeInclusive<i64>,
) -> Result<Vec<(i64, i64)>> {
    if n <= 4 || n == 6 {
        return Err(Error::Index(n, "the defective scan covers n > 4, n != 6"));
    }
    let u_lo = (*u_range.start()).max(1);
    let u_hi = *u_range.end();
    if u_lo > u_hi {
        return Ok(Vec::new());
    }
    let rows: Vec<Vec<(i64, i64)>> = (u_lo..=u_hi)
        .into_par_iter()
        .map(|u| {
            v_range
                .clone()
                .filter(|&v| {
                    make_params(u, v)
                        .map(|p| primitive_residue(&p, n).is_one())
                        .unwrap_or(false)
                })
                .map(|v| (u, v))
                .collect()
        })
        .collect();
    Ok(rows.into_iter().flatten().collect())
}
