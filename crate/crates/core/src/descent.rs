//! Primitive solutions of `X^2 + D Y^2 = k^Z`, their descent to a power of a
//! fundamental solution, and the bound `Z <= 6 h(-4D)` for solutions whose
//! `Y` is supported on the primes of `D`.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{self, prime, Factorization};
use crate::lucas::{self, LucasParams};
use crate::quadforms;
use crate::{Error, Result, Verdict};

/// `(D, k)` with `D, k > 1` and `gcd(2D, k) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormContext {
    d: u64,
    k: u64,
    k_factors: Factorization,
    class_number: u64,
}

impl NormContext {
    pub fn new(d: u64, k: u64) -> Result<NormContext> {
        let err = |reason| Err(Error::NormContext { d, k, reason });
        if d <= 1 || k <= 1 {
            return err("D and k must exceed 1");
        }
        if (2 * d as u128).gcd(&(k as u128)) != 1 {
            return err("gcd(2D, k) must be 1");
        }
        Ok(NormContext {
            d,
            k,
            k_factors: arith::factorize(k)?,
            class_number: quadforms::class_number(d),
        })
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// `h(-4D)`.
    pub fn class_number(&self) -> u64 {
        self.class_number
    }

    /// `k^z`.
    pub fn level(&self, z: u32) -> BigUint {
        BigUint::from(self.k).pow(z)
    }

    fn norm(&self, x: &BigInt, y: &BigInt) -> BigInt {
        x * x + BigInt::from(self.d) * y * y
    }
}

/// A solution of `X^2 + D Y^2 = k^Z` with `gcd(X, Y) = 1` and `Z > 0`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct NormSolution {
    #[serde(serialize_with = "crate::arith::ser::decimal_signed")]
    pub x: BigInt,
    #[serde(serialize_with = "crate::arith::ser::decimal_signed")]
    pub y: BigInt,
    pub z: u32,
}

impl NormSolution {
    /// Validates `(x, y, z)` against the context.
    pub fn new(ctx: &NormContext, x: BigInt, y: BigInt, z: u32) -> Result<NormSolution> {
        let fail = |reason| {
            Err(Error::NotASolution {
                x: x.to_string(),
                y: y.to_string(),
                z,
                reason,
            })
        };
        if z == 0 {
            return fail("Z must be positive");
        }
        if !x.gcd(&y).is_one() {
            return fail("gcd(X, Y) != 1");
        }
        if ctx.norm(&x, &y) != BigInt::from(ctx.level(z)) {
            return fail("X^2 + D Y^2 != k^Z");
        }
        Ok(NormSolution { x, y, z })
    }
}

/// `p + q sqrt(-D)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadRingElem {
    pub p: BigInt,
    pub q: BigInt,
    d: u64,
}

impl QuadRingElem {
    pub fn new(p: BigInt, q: BigInt, d: u64) -> QuadRingElem {
        QuadRingElem { p, q, d }
    }

    pub fn one(d: u64) -> QuadRingElem {
        QuadRingElem::new(BigInt::one(), BigInt::zero(), d)
    }

    pub fn mul(&self, other: &QuadRingElem) -> QuadRingElem {
        assert_eq!(self.d, other.d, "elements of different rings");
        let d = BigInt::from(self.d);
        QuadRingElem {
            p: &self.p * &other.p - d * &self.q * &other.q,
            q: &self.p * &other.q + &other.p * &self.q,
            d: self.d,
        }
    }

    pub fn pow(&self, mut e: u32) -> QuadRingElem {
        let mut acc = QuadRingElem::one(self.d);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    pub fn conj(&self) -> QuadRingElem {
        QuadRingElem::new(self.p.clone(), -&self.q, self.d)
    }

    pub fn neg(&self) -> QuadRingElem {
        QuadRingElem::new(-&self.p, -&self.q, self.d)
    }

    pub fn norm(&self) -> BigInt {
        &self.p * &self.p + BigInt::from(self.d) * &self.q * &self.q
    }
}

/// `X + Y sqrt(-D) = l1 (X1 + l2 Y1 sqrt(-D))^t` with `Z = Z1 t`,
/// `X1^2 + D Y1^2 = k^Z1` and `Z1 | h(-4D)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DescentRep {
    #[serde(serialize_with = "crate::arith::ser::decimal")]
    pub x1: BigUint,
    #[serde(serialize_with = "crate::arith::ser::decimal")]
    pub y1: BigUint,
    pub z1: u32,
    pub t: u32,
    pub lambda1: i8,
    pub lambda2: i8,
}

impl DescentRep {
    /// `lambda1 (X1 + lambda2 Y1 sqrt(-D))^t`.
    pub fn expand(&self, ctx: &NormContext) -> QuadRingElem {
        let q = BigInt::from(self.y1.clone()) * self.lambda2;
        let base = QuadRingElem::new(self.x1.clone().into(), q, ctx.d);
        let power = base.pow(self.t);
        if self.lambda1 < 0 {
            power.neg()
        } else {
            power
        }
    }

    /// Rechecks every invariant of the representation against `s`.
    pub fn verify(&self, ctx: &NormContext, s: &NormSolution) -> bool {
        let x1 = BigInt::from(self.x1.clone());
        let y1 = BigInt::from(self.y1.clone());
        let signs_ok = [self.lambda1, self.lambda2].iter().all(|l| l.abs() == 1);
        let expanded = signs_ok.then(|| self.expand(ctx));
        self.x1 > BigUint::zero()
            && self.y1 > BigUint::zero()
            && self.z1 > 0
            && x1.gcd(&y1).is_one()
            && ctx.norm(&x1, &y1) == BigInt::from(ctx.level(self.z1))
            && self.z1.checked_mul(self.t) == Some(s.z)
            && ctx.class_number.is_multiple_of(self.z1 as u64)
            && expanded.is_some_and(|e| e.p == s.x && e.q == s.y)
    }
}

/// Square roots of `-D` modulo an odd prime `p` not dividing `D`.
fn sqrt_minus_d_mod_prime(d: u64, p: u64) -> Vec<u64> {
    let a = (p - d % p) % p;
    if a == 0 {
        return vec![0];
    }
    if prime::pow_mod(a, (p - 1) / 2, p) != 1 {
        return Vec::new();
    }
    // Tonelli-Shanks
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let mut z = 2;
    while prime::pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = prime::pow_mod(z, q, p);
    let mut t = prime::pow_mod(a, q, p);
    let mut r = prime::pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = prime::mul_mod(t2, t2, p);
            i += 1;
        }
        let b = prime::pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = prime::mul_mod(b, b, p);
        t = prime::mul_mod(t, c, p);
        r = prime::mul_mod(r, b, p);
    }
    let mut roots = vec![r, p - r];
    roots.sort_unstable();
    roots.dedup();
    roots
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let eg = a.mod_floor(m).extended_gcd(m);
    debug_assert!(eg.gcd.is_one());
    eg.x.mod_floor(m)
}

/// Lifts a root of `r^2 = -D (mod p)` to `mod p^e` by Newton steps.
fn hensel_lift(root: u64, d: u64, p: u64, e: u32) -> BigInt {
    let p = BigInt::from(p);
    let d = BigInt::from(d);
    let target = p.pow(e);
    let mut r = BigInt::from(root);
    let mut modulus = p.clone();
    while modulus < target {
        modulus = (&modulus * &modulus).min(target.clone());
        let f = &r * &r + &d;
        let df = &r * 2;
        r = (&r - f * mod_inverse(&df, &modulus)).mod_floor(&modulus);
    }
    r
}

/// All `r` in `[0, k^z)` with `r^2 = -D (mod k^z)`, ascending.
fn sqrt_minus_d_mod_level(ctx: &NormContext, z: u32) -> Vec<BigInt> {
    let mut roots = vec![BigInt::zero()];
    let mut modulus = BigInt::one();
    for &(p, e) in ctx.k_factors.factors() {
        let local: Vec<BigInt> = sqrt_minus_d_mod_prime(ctx.d, p)
            .into_iter()
            .map(|r| hensel_lift(r, ctx.d, p, e * z))
            .collect();
        if local.is_empty() {
            return Vec::new();
        }
        let pe = BigInt::from(p).pow(e * z);
        let inv = mod_inverse(&modulus, &pe);
        let mut next = Vec::with_capacity(roots.len() * local.len());
        for a in &roots {
            for b in &local {
                let step = ((b - a) * &inv).mod_floor(&pe);
                next.push(a + &modulus * step);
            }
        }
        modulus *= pe;
        roots = next;
    }
    roots.sort();
    roots
}

/// Cornacchia's reduction for one root: the solution `(x, y)` of
/// `x^2 + D y^2 = n` attached to `r`, if it exists.
fn cornacchia(d: &BigInt, n: &BigInt, r: &BigInt) -> Option<(BigInt, BigInt)> {
    let (mut a, mut b) = (n.clone(), r.clone());
    while &b * &b >= *n {
        let rem = &a % &b;
        a = std::mem::replace(&mut b, rem);
    }
    let rest = n - &b * &b;
    if !rest.is_multiple_of(d) {
        return None;
    }
    let y2 = rest / d;
    let y = y2.sqrt();
    (&y * &y == y2).then_some((b, y))
}

/// Primitive solutions at exactly level `z`, with `X, Y >= 0`, by `Y`.
pub fn solve_level(ctx: &NormContext, z: u32) -> Vec<NormSolution> {
    let n = BigInt::from(ctx.level(z));
    let d = BigInt::from(ctx.d);
    let mut found: Vec<NormSolution> = sqrt_minus_d_mod_level(ctx, z)
        .iter()
        .filter_map(|r| cornacchia(&d, &n, r))
        .filter(|(x, y)| x.gcd(y).is_one())
        .map(|(x, y)| NormSolution { x, y, z })
        .collect();
    found.sort_by(|a, b| (&a.y, &a.x).cmp(&(&b.y, &b.x)));
    found.dedup();
    found
}

/// All solutions with `1 <= Z <= z_max` and `X, Y >= 0`, ordered by `(Z, Y)`.
///
/// A primitive solution has `gcd(Y, k) = 1`, so `X / Y` is a square root of
/// `-D` modulo `k^Z`; every such root is run through Cornacchia's reduction.
/// Levels are solved in parallel and merged in order.
pub fn solve_norm_equation(ctx: &NormContext, z_max: u32) -> Vec<NormSolution> {
    let levels: Vec<Vec<NormSolution>> = (1..=z_max)
        .into_par_iter()
        .map(|z| solve_level(ctx, z))
        .collect();
    levels.into_iter().flatten().collect()
}

/// Reference solver: scans every `Y` up to `sqrt(k^Z / D)`. Exponential in
/// `Z`; kept for cross-checking [`solve_norm_equation`] on small levels.
pub fn solve_norm_equation_scan(ctx: &NormContext, z_max: u32) -> Vec<NormSolution> {
    let d = BigUint::from(ctx.d);
    let mut out = Vec::new();
    for z in 1..=z_max {
        let n = ctx.level(z);
        let y_max = (&n / &d).sqrt();
        let mut y = BigUint::zero();
        while y <= y_max {
            let rest = &n - &d * &y * &y;
            if let Some(x) = arith::is_perfect_square(&rest) {
                if x.gcd(&y).is_one() {
                    out.push(NormSolution {
                        x: x.into(),
                        y: y.clone().into(),
                        z,
                    });
                }
            }
            y += 1u32;
        }
    }
    out
}

const LAMBDA_ORDER: [(i8, i8); 4] = [(1, 1), (1, -1), (-1, 1), (-1, -1)];

/// Finds the representation of `s` with the smallest `Z1`, then the first
/// fundamental solution (by `Y1`), then signs in the order
/// `(+,+), (+,-), (-,+), (-,-)`.
///
/// `Ok(None)` means no representation exists, which would contradict the
/// descent lemma; callers report it as a failed verification.
pub fn decompose(ctx: &NormContext, s: &NormSolution) -> Result<Option<DescentRep>> {
    let s = NormSolution::new(ctx, s.x.clone(), s.y.clone(), s.z)?;
    for z1 in (1..=s.z).filter(|z1| s.z % z1 == 0 && ctx.class_number.is_multiple_of(*z1 as u64)) {
        let t = s.z / z1;
        for fundamental in solve_level(ctx, z1) {
            let base = QuadRingElem::new(fundamental.x.clone(), fundamental.y.clone(), ctx.d);
            let power = base.pow(t);
            for (lambda1, lambda2) in LAMBDA_ORDER {
                let oriented = if lambda2 > 0 {
                    power.clone()
                } else {
                    power.conj()
                };
                let signed = if lambda1 > 0 {
                    oriented
                } else {
                    oriented.neg()
                };
                if signed.p == s.x && signed.q == s.y {
                    return Ok(Some(DescentRep {
                        x1: fundamental.x.magnitude().clone(),
                        y1: fundamental.y.magnitude().clone(),
                        z1,
                        t,
                        lambda1,
                        lambda2,
                    }));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LinkOutcome {
    Holds,
    Fails,
    /// `(2 X1, -4 D Y1^2)` is not a Lucas pair or does not fit the parameter type.
    Inapplicable,
}

/// The Lucas parameters `(2 X1, -4 D Y1^2)` attached to a representation.
pub fn link_params(ctx: &NormContext, rep: &DescentRep) -> Option<LucasParams> {
    let x1 = rep.x1.to_i64()?;
    let y1 = rep.y1.to_i64()?;
    let u = x1.checked_mul(2)?;
    let v = y1
        .checked_mul(y1)?
        .checked_mul(i64::try_from(ctx.d).ok()?)?
        .checked_mul(-4)?;
    lucas::make_params(u, v).ok()
}

/// Checks `|Y| = Y1 |L_t|` for the Lucas pair `(X1 + Y1 sqrt(-D), X1 - Y1 sqrt(-D))`.
pub fn lucas_link(ctx: &NormContext, rep: &DescentRep, s: &NormSolution) -> LinkOutcome {
    let Some(params) = link_params(ctx, rep) else {
        return LinkOutcome::Inapplicable;
    };
    let l_t = lucas::lucas_number(&params, rep.t);
    if BigInt::from(rep.y1.clone()) * l_t.abs() == s.y.abs() {
        LinkOutcome::Holds
    } else {
        LinkOutcome::Fails
    }
}

/// The two pairs with `t > 6` that survive the table of defective Lucas
/// pairs: `(D, k, X1, Y1, Z1, t)`.
pub const EXCEPTIONAL_TUPLES: [(u64, u64, u64, u64, u32, u32); 2] =
    [(6, 7, 1, 1, 1, 8), (14, 15, 1, 1, 1, 12)];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExponentCase {
    /// `t <= 6`.
    Small,
    /// One of [`EXCEPTIONAL_TUPLES`].
    Exceptional,
    /// Neither; impossible for `Y` in `S(D)` when `D > 2`.
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma25Item {
    pub solution: NormSolution,
    pub y_in_s_d: bool,
    pub decomposition: Option<DescentRep>,
    pub representation_valid: bool,
    pub lucas_link: LinkOutcome,
    pub exponent_case: Option<ExponentCase>,
    pub within_bound: bool,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma25Report {
    pub d: u64,
    pub k: u64,
    pub z_max: u32,
    pub class_number: u64,
    /// `6 h(-4D)`.
    pub bound: u64,
    pub solutions: usize,
    pub qualifying: usize,
    pub items: Vec<Lemma25Item>,
    pub verdict: Verdict,
}

/// Default search depth: `6 h(-4D) + 6`, past the bound being tested.
pub fn default_z_max(ctx: &NormContext) -> u32 {
    (6 * ctx.class_number + 6) as u32
}

/// Solves up to `z_max`, decomposes every solution, checks the Lucas link,
/// and for solutions with `Y` in `S(D)` checks `Z <= 6 h(-4D)` together with
/// the `t <= 6` / exceptional split used to derive it.
pub fn verify_lemma_2_5(ctx: &NormContext, z_max: u32) -> Result<Lemma25Report> {
    if ctx.d <= 2 {
        return Err(Error::Precondition(format!(
            "the bound needs D > 2, got D = {}",
            ctx.d
        )));
    }
    let bound = 6 * ctx.class_number;
    let d_factors = arith::factorize(ctx.d)?;
    let solutions = solve_norm_equation(ctx, z_max);
    let items: Vec<Lemma25Item> = solutions
        .par_iter()
        .map(|s| -> Result<Lemma25Item> {
            let y_in_s_d = !s.y.is_zero() && arith::in_s_set_of(s.y.magnitude(), &d_factors);
            let decomposition = decompose(ctx, s)?;
            let representation_valid = decomposition.as_ref().is_some_and(|r| r.verify(ctx, s));
            let lucas_link = decomposition
                .as_ref()
                .map_or(LinkOutcome::Inapplicable, |r| lucas_link(ctx, r, s));
            let exponent_case = decomposition.as_ref().map(|r| exponent_case(ctx, r));
            let within_bound = s.z as u64 <= bound;
            let mut verdict = Verdict::Pass;
            if !representation_valid || lucas_link == LinkOutcome::Fails {
                verdict = Verdict::Fail;
            }
            if y_in_s_d && (!within_bound || exponent_case == Some(ExponentCase::Other)) {
                verdict = Verdict::Counterexample;
            }
            Ok(Lemma25Item {
                solution: s.clone(),
                y_in_s_d,
                decomposition,
                representation_valid,
                lucas_link,
                exponent_case,
                within_bound,
                verdict,
            })
        })
        .collect::<Result<_>>()?;
    let verdict = items
        .iter()
        .fold(Verdict::Pass, |acc, i| acc.worst(i.verdict));
    Ok(Lemma25Report {
        d: ctx.d,
        k: ctx.k,
        z_max,
        class_number: ctx.class_number,
        bound,
        solutions: items.len(),
        qualifying: items.iter().filter(|i| i.y_in_s_d).count(),
        items,
        verdict,
    })
}

fn exponent_case(ctx: &NormContext, rep: &DescentRep) -> ExponentCase {
    if rep.t <= 6 {
        return ExponentCase::Small;
    }
    let exceptional = EXCEPTIONAL_TUPLES.iter().any(|&(d, k, x1, y1, z1, t)| {
        (d, k, z1, t) == (ctx.d, ctx.k, rep.z1, rep.t)
            && rep.x1 == BigUint::from(x1)
            && rep.y1 == BigUint::from(y1)
    });
    if exceptional {
        ExponentCase::Exceptional
    } else {
        ExponentCase::Other
    }
}
