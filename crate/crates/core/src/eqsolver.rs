//! Bounded exhaustive search of `(an)^x + (bn)^y = ((a+b)n)^z`, the structure
//! of its non-trivial solutions, and the verification of the `x > z > y`
//! impossibility for `(A^2 n)^x + (B^2 n)^y = ((A^2 + B^2) n)^z` when
//! `A > 8 B^3`.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::certified::{self, Bounds};
use crate::arith::{self, Factorization};
use crate::{Error, Result, Verdict};

/// An instance `(a, b, n)` with `min{a, b} > 1`, `gcd(a, b) = 1`, `n > 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct EqInstance {
    a: u64,
    b: u64,
    n: u64,
}

impl EqInstance {
    pub fn new(a: u64, b: u64, n: u64) -> Result<EqInstance> {
        if a.min(b) <= 1 {
            return Err(Error::Instance(format!(
                "min(a, b) must exceed 1, got a={a}, b={b}"
            )));
        }
        if a.gcd(&b) != 1 {
            return Err(Error::Instance(format!(
                "gcd(a, b) must be 1, got a={a}, b={b}"
            )));
        }
        if n <= 1 {
            return Err(Error::Instance(format!("n must exceed 1, got {n}")));
        }
        if a.checked_add(b).and_then(|s| s.checked_mul(n)).is_none() {
            return Err(Error::Overflow("(a + b) n"));
        }
        Ok(EqInstance { a, b, n })
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn b(&self) -> u64 {
        self.b
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    fn bases(&self) -> (BigUint, BigUint, BigUint) {
        let n = BigUint::from(self.n);
        (
            BigUint::from(self.a) * &n,
            BigUint::from(self.b) * &n,
            BigUint::from(self.a + self.b) * &n,
        )
    }

    /// Exact evaluation of the equation at `s`.
    pub fn is_solution(&self, s: &SolutionTriple) -> bool {
        let (an, bn, cn) = self.bases();
        an.pow(s.x) + bn.pow(s.y) == cn.pow(s.z)
    }
}

/// An instance `(A, B, n)` of the square case: `a = A^2`, `b = B^2`, with
/// `min{A, B} > 1`, `gcd(A, B) = 1`, `AB` even and `n > 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SquareEqInstance {
    #[serde(rename = "A")]
    a_root: u64,
    #[serde(rename = "B")]
    b_root: u64,
    n: u64,
}

impl SquareEqInstance {
    pub fn new(a_root: u64, b_root: u64, n: u64) -> Result<SquareEqInstance> {
        let inst = SquareEqInstance::without_parity(a_root, b_root, n)?;
        if !inst.parity_holds() {
            return Err(Error::Instance(format!(
                "A B must be even, got A={a_root}, B={b_root}"
            )));
        }
        Ok(inst)
    }

    /// Checks every hypothesis except the parity of `AB`.
    fn without_parity(a_root: u64, b_root: u64, n: u64) -> Result<SquareEqInstance> {
        if a_root.min(b_root) <= 1 {
            return Err(Error::Instance(format!(
                "min(A, B) must exceed 1, got A={a_root}, B={b_root}"
            )));
        }
        if a_root.gcd(&b_root) != 1 {
            return Err(Error::Instance(format!(
                "gcd(A, B) must be 1, got A={a_root}, B={b_root}"
            )));
        }
        if a_root.checked_mul(a_root).is_none() || b_root.checked_mul(b_root).is_none() {
            return Err(Error::Overflow("A^2, B^2"));
        }
        EqInstance::new(a_root * a_root, b_root * b_root, n)?;
        Ok(SquareEqInstance { a_root, b_root, n })
    }

    pub fn a_root(&self) -> u64 {
        self.a_root
    }

    pub fn b_root(&self) -> u64 {
        self.b_root
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn parity_holds(&self) -> bool {
        (self.a_root * self.b_root).is_even()
    }

    /// `A > 8 B^3`.
    pub fn large_a(&self) -> bool {
        (self.a_root as u128) > 8 * (self.b_root as u128).pow(3)
    }

    /// The induced instance `(A^2, B^2, n)`.
    pub fn instance(&self) -> EqInstance {
        EqInstance {
            a: self.a_root * self.a_root,
            b: self.b_root * self.b_root,
            n: self.n,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct SolutionTriple {
    pub x: u32,
    pub y: u32,
    pub z: u32,
}

impl SolutionTriple {
    pub const IDENTITY: SolutionTriple = SolutionTriple { x: 1, y: 1, z: 1 };

    pub fn new(x: u32, y: u32, z: u32) -> SolutionTriple {
        SolutionTriple { x, y, z }
    }
}

/// Exponent box `[1, x_max] x [1, y_max] x [1, z_max]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SearchBox {
    pub x_max: u32,
    pub y_max: u32,
    pub z_max: u32,
}

impl SearchBox {
    pub fn cube(side: u32) -> SearchBox {
        SearchBox {
            x_max: side,
            y_max: side,
            z_max: side,
        }
    }

    pub fn contains(&self, s: &SolutionTriple) -> bool {
        (1..=self.x_max).contains(&s.x)
            && (1..=self.y_max).contains(&s.y)
            && (1..=self.z_max).contains(&s.z)
    }
}

/// Every solution in the box, sorted by `(z, x, y)`.
///
/// For each `z` the target `C = ((a+b)n)^z` is fixed; each `x` with
/// `(an)^x < C` leaves a residual that is tested for being an exact power of
/// `bn` by repeated division. `z` levels run in parallel and are merged in
/// order.
pub fn search(inst: &EqInstance, bx: SearchBox) -> Vec<SolutionTriple> {
    let (an, bn, cn) = inst.bases();
    let levels: Vec<Vec<SolutionTriple>> = (1..=bx.z_max)
        .into_par_iter()
        .map(|z| {
            let target = cn.pow(z);
            let mut found = Vec::new();
            let mut left = an.clone();
            for x in 1..=bx.x_max {
                if left >= target {
                    break;
                }
                let residual = &target - &left;
                if let Some(y) = arith::exact_power_of(&residual, &bn) {
                    if (1..=bx.y_max).contains(&y) {
                        found.push(SolutionTriple { x, y, z });
                    }
                }
                left *= &an;
            }
            found
        })
        .collect();
    levels.into_iter().flatten().collect()
}

/// `b = part * rest` with `part > 1`, `gcd(part, rest) = 1` and
/// `part^e = n^f` (for the `b` side `e = y`, `f = z - y`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SplitWitness {
    pub part: u64,
    pub rest: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Classification {
    /// `(1, 1, 1)`.
    Trivial,
    /// `x > z > y` with `b = b1 b2`, `b1^y = n^(z-y)`.
    #[serde(rename = "x_gt_z_gt_y")]
    XzY { witness: SplitWitness },
    /// `y > z > x` with `a = a1 a2`, `a1^x = n^(z-x)`.
    #[serde(rename = "y_gt_z_gt_x")]
    YzX { witness: SplitWitness },
    /// `min{a, b} < 4`: the structure theorem does not apply.
    Inapplicable,
    /// A non-trivial solution with no valid witness.
    Violation,
}

impl Classification {
    pub fn verdict(&self) -> Verdict {
        match self {
            Classification::Violation => Verdict::Fail,
            Classification::Inapplicable => Verdict::Inapplicable,
            _ => Verdict::Pass,
        }
    }
}

/// The largest divisor of `m` supported on the primes of `n`; it is coprime
/// to its cofactor.
fn unitary_part_on(m: u64, n: u64) -> Result<(u64, u64)> {
    let nf = arith::factorize(n)?;
    let mut part = 1u64;
    let mut rest = m;
    for p in nf.primes() {
        while rest.is_multiple_of(p) {
            rest /= p;
            part *= p;
        }
    }
    Ok((part, rest))
}

fn split_witness(m: u64, n: u64, e: u32, f: u32) -> Result<Option<SplitWitness>> {
    let (part, rest) = unitary_part_on(m, n)?;
    let ok =
        part > 1 && part.gcd(&rest) == 1 && BigUint::from(part).pow(e) == BigUint::from(n).pow(f);
    Ok(ok.then_some(SplitWitness { part, rest }))
}

/// Classifies a solution by the two shapes allowed for non-trivial solutions
/// when `min{a, b} >= 4`.
pub fn classify(inst: &EqInstance, s: &SolutionTriple) -> Result<Classification> {
    if !inst.is_solution(s) {
        return Err(Error::NotASolution {
            x: s.x.to_string(),
            y: s.y.to_string(),
            z: s.z,
            reason: "(an)^x + (bn)^y != ((a+b)n)^z",
        });
    }
    if *s == SolutionTriple::IDENTITY {
        return Ok(Classification::Trivial);
    }
    if inst.a.min(inst.b) < 4 {
        return Ok(Classification::Inapplicable);
    }
    let SolutionTriple { x, y, z } = *s;
    if x > z && z > y {
        if let Some(witness) = split_witness(inst.b, inst.n, y, z - y)? {
            return Ok(Classification::XzY { witness });
        }
    } else if y > z && z > x {
        if let Some(witness) = split_witness(inst.a, inst.n, x, z - x)? {
            return Ok(Classification::YzX { witness });
        }
    }
    Ok(Classification::Violation)
}

/// The chain of substitutions that turns an `x > z > y` solution of the
/// square case into a solution of `X^2 + D Y^2 = (A^2 + B^2)^Z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReductionRecord {
    #[serde(rename = "B1")]
    pub b1: u64,
    #[serde(rename = "B2")]
    pub b2: u64,
    /// `B1 > 1` and `gcd(B1, B2) = 1`.
    pub split_valid: bool,
    /// `B1^(2y) = n^(z-y)`, the relation used downstream.
    pub b1_relation: bool,
    /// `B^(2y) = n^(z-y)`, the relation as printed; reported, not required.
    pub b_relation_as_printed: bool,
    /// `A^(2x) n^(x-z) + B2^(2y) = (A^2 + B^2)^z`.
    pub reduced_equation: bool,
    /// `D = R(A^(2x) n^(x-z))`.
    #[serde(rename = "D", serialize_with = "crate::arith::ser::decimal")]
    pub d: BigUint,
    pub d_factors: Vec<(u64, u32)>,
    /// `D = R(A^(2x)) R(n^(x-z))`.
    pub d_splits: bool,
    pub d_exceeds_two: bool,
    /// `gcd(2D, A^2 + B^2) = 1`.
    pub d_coprime: bool,
    /// `(X, Y, Z) = (B2^y, sqrt(A^(2x) n^(x-z) / D), z)`.
    pub norm_solution: Option<(String, String, u32)>,
    /// The triple solves `X^2 + D Y^2 = (A^2 + B^2)^Z` with `gcd(X, Y) = 1`.
    pub norm_solution_valid: bool,
    pub y_in_s_d: bool,
    /// `D <= A^2 B1^2`.
    pub d_bound: bool,
    pub verdict: Verdict,
}

/// Runs every reduction step for `(A, B, n)` and exponents `x > z > y`
/// without requiring the exponents to solve the equation, recording which
/// steps hold.
pub fn reduce_from_parts(
    a_root: u64,
    b_root: u64,
    n: u64,
    s: &SolutionTriple,
) -> Result<ReductionRecord> {
    let SolutionTriple { x, y, z } = *s;
    if !(x > z && z > y && y >= 1) {
        return Err(Error::Precondition(format!(
            "need x > z > y >= 1, got ({x}, {y}, {z})"
        )));
    }
    let (b1, b2) = unitary_part_on(b_root, n)?;
    let split_valid = b1 > 1 && b1.gcd(&b2) == 1;
    let n_pow = BigUint::from(n).pow(z - y);
    let b1_relation = BigUint::from(b1).pow(2 * y) == n_pow;
    let b_relation_as_printed = BigUint::from(b_root).pow(2 * y) == n_pow;

    let a_big = BigUint::from(a_root);
    let sum_sq = &a_big * &a_big + BigUint::from(b_root) * BigUint::from(b_root);
    let rhs = sum_sq.pow(z);
    let x_term = BigUint::from(b2).pow(y);
    let a_part = arith::factorize(a_root)?.pow(2 * x);
    let n_part = arith::factorize(n)?.pow(x - z);
    let product = a_part.mul(&n_part);
    let reduced_equation = product.value() + &x_term * &x_term == rhs;

    let kernel: Factorization = product.square_kernel();
    let d = kernel.value().clone();
    let d_splits = d == a_part.square_kernel().value() * n_part.square_kernel().value();
    let d_exceeds_two = d > BigUint::from(2u32);
    let d_coprime = (&d * 2u32).gcd(&sum_sq).is_one();

    let quotient = product.value() / &d;
    let exact_quotient = &quotient * &d == *product.value();
    let y_term = exact_quotient
        .then(|| arith::is_perfect_square(&quotient))
        .flatten();
    let (norm_solution, norm_solution_valid, y_in_s_d) = match &y_term {
        Some(y_val) => {
            let valid = &x_term * &x_term + &d * y_val * y_val == rhs && x_term.gcd(y_val).is_one();
            let in_s = !y_val.is_zero() && arith::in_s_set_of(y_val, &kernel);
            (
                Some((x_term.to_string(), y_val.to_string(), z)),
                valid,
                in_s,
            )
        }
        None => (None, false, false),
    };
    let d_bound = d <= &a_big * &a_big * BigUint::from(b1) * BigUint::from(b1);

    let all = split_valid
        && b1_relation
        && reduced_equation
        && d_splits
        && d_exceeds_two
        && d_coprime
        && norm_solution_valid
        && y_in_s_d
        && d_bound;
    Ok(ReductionRecord {
        b1,
        b2,
        split_valid,
        b1_relation,
        b_relation_as_printed,
        reduced_equation,
        d,
        d_factors: kernel.factors().to_vec(),
        d_splits,
        d_exceeds_two,
        d_coprime,
        norm_solution,
        norm_solution_valid,
        y_in_s_d,
        d_bound,
        verdict: if all { Verdict::Pass } else { Verdict::Fail },
    })
}

/// Reduction of an actual `x > z > y` solution of the square case. Rejects
/// triples that do not solve the equation or have another ordering.
pub fn reduce_case_xzy(inst: &SquareEqInstance, s: &SolutionTriple) -> Result<ReductionRecord> {
    if !inst.instance().is_solution(s) {
        return Err(Error::NotASolution {
            x: s.x.to_string(),
            y: s.y.to_string(),
            z: s.z,
            reason: "(A^2 n)^x + (B^2 n)^y != ((A^2 + B^2) n)^z",
        });
    }
    reduce_from_parts(inst.a_root, inst.b_root, inst.n, s)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainLink {
    pub name: &'static str,
    pub statement: String,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChainReport {
    #[serde(rename = "A")]
    pub a_root: u64,
    #[serde(rename = "B")]
    pub b_root: u64,
    #[serde(rename = "B1")]
    pub b1: u64,
    pub n: u64,
    #[serde(serialize_with = "crate::arith::ser::rational")]
    pub pi_lower: BigRational,
    #[serde(serialize_with = "crate::arith::ser::rational")]
    pub pi_upper: BigRational,
    #[serde(serialize_with = "crate::arith::ser::rational")]
    pub e_lower: BigRational,
    #[serde(serialize_with = "crate::arith::ser::rational")]
    pub e_upper: BigRational,
    pub links: Vec<ChainLink>,
    /// Certified upper bound of `(24/pi) A B1 log(2 e A B1)`.
    pub lhs_upper: Option<String>,
    /// Certified lower bound of `8 A B log(A^2 n)`.
    pub rhs_lower: Option<String>,
    /// The enclosures separate with the left side below the right.
    pub ordering_certified: bool,
    /// `(24/pi_lo) A B1 log(6 A B1) < 8 A B log(A^2 n)` by exact log comparison.
    pub ordering_relaxed: bool,
    pub verdict: Verdict,
}

fn rat(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn rat_str(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Checks, for one `(A, B, B1, n)`, each inequality used to show that
/// `(24/pi) A B1 log(2 e A B1) > 8 A B log(A^2 n)` is false, and then the
/// ordering of the two sides itself.
pub fn inequality_chain(a_root: u64, b_root: u64, b1: u64, n: u64) -> Result<ChainReport> {
    let a = a_root as u128;
    let b = b_root as u128;
    if b_root == 0 || a_root == 0 || a <= 8 * b.pow(3) {
        return Err(Error::Precondition(format!(
            "A > 8 B^3 fails for A={a_root}, B={b_root}"
        )));
    }
    if b1 == 0 || b1 > b_root {
        return Err(Error::Precondition(format!(
            "need 1 <= B1 <= B, got B1={b1}, B={b_root}"
        )));
    }
    if n <= 1 {
        return Err(Error::Precondition(format!("n must exceed 1, got {n}")));
    }
    let (pi_lo, pi_hi) = certified::pi_sandwich();
    let (e_lo, e_hi) = certified::e_sandwich();
    let ab1 = a_root * b1;
    let ab = a_root * b_root;
    let a_sq_n = BigUint::from(a_root).pow(2) * n;

    let mut links = Vec::new();
    let mut link = |name, statement: String, holds| {
        links.push(ChainLink {
            name,
            statement,
            holds,
        })
    };
    link(
        "24/pi < 8",
        format!("24 < 8 pi_lo with pi_lo = {}", rat_str(&pi_lo)),
        rat(24) < rat(8) * &pi_lo,
    );
    link("A B1 <= A B", format!("{ab1} <= {ab}"), ab1 <= ab);
    let two_e_ab1 = rat(2) * &e_hi * rat(ab1);
    let eight_ab3 = 8 * a * b.pow(3);
    link(
        "2 e A B1 < 8 A B^3",
        format!("{} < {eight_ab3}", rat_str(&two_e_ab1)),
        two_e_ab1 < BigRational::from_integer(BigInt::from(eight_ab3)),
    );
    link(
        "8 A B^3 < A^2",
        format!("{eight_ab3} < {}", a * a),
        eight_ab3 < a * a,
    );
    link(
        "A^2 < A^2 n",
        format!("{} < {a_sq_n}", a * a),
        BigUint::from(a * a) < a_sq_n,
    );
    link(
        "2 e < 6",
        format!("2 e_hi = {} < 6", rat_str(&(rat(2) * &e_hi))),
        rat(2) * &e_hi < rat(6),
    );

    let ab1_big = BigUint::from(ab1);
    let decided = certified::decide(|prec| {
        let lhs = Bounds::integer(&BigUint::from(24u32), prec)
            .div(&Bounds::between(&pi_lo, &pi_hi, prec))
            .mul(&Bounds::integer(&ab1_big, prec))
            .mul(
                &Bounds::integer(&BigUint::from(2u32), prec)
                    .mul(&Bounds::between(&e_lo, &e_hi, prec))
                    .mul(&Bounds::integer(&ab1_big, prec))
                    .ln(),
            );
        let rhs =
            Bounds::integer(&BigUint::from(8 * ab), prec).mul(&Bounds::integer(&a_sq_n, prec).ln());
        (lhs, rhs)
    });
    let (ordering_certified, lhs_upper, rhs_lower) = match decided {
        Some((ord, lhs, rhs)) => (
            ord == Ordering::Less,
            Some(rat_str(&lhs.upper())),
            Some(rat_str(&rhs.lower())),
        ),
        None => (false, None, None),
    };

    let c1 = rat(24) * rat(ab1) / &pi_lo;
    let c2 = rat(8 * ab);
    let ordering_relaxed =
        arith::cmp_scaled_log(&c1, &(BigUint::from(6u32) * ab1), &c2, &a_sq_n)? == Ordering::Less;

    let all = links.iter().all(|l| l.holds) && ordering_certified && ordering_relaxed;
    Ok(ChainReport {
        a_root,
        b_root,
        b1,
        n,
        pi_lower: pi_lo,
        pi_upper: pi_hi,
        e_lower: e_lo,
        e_upper: e_hi,
        links,
        lhs_upper,
        rhs_lower,
        ordering_certified,
        ordering_relaxed,
        verdict: if all { Verdict::Pass } else { Verdict::Fail },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TheoremReport {
    #[serde(rename = "A")]
    pub a_root: u64,
    #[serde(rename = "B")]
    pub b_root: u64,
    pub n: u64,
    #[serde(rename = "box")]
    pub bx: SearchBox,
    /// `AB` even. When false the scan extends past the statement's hypotheses.
    pub parity_hypothesis: bool,
    pub solutions: Vec<SolutionTriple>,
    pub counterexamples: Vec<SolutionTriple>,
    pub verdict: Verdict,
}

/// Scans the box for solutions with `x > z > y`, which must not exist when
/// `A > 8 B^3`.
///
/// Instances violating only the parity of `AB` are still scanned; the report
/// records the failed hypothesis.
pub fn verify_theorem_1_1(
    a_root: u64,
    b_root: u64,
    n: u64,
    bx: SearchBox,
) -> Result<TheoremReport> {
    let inst = SquareEqInstance::without_parity(a_root, b_root, n)?;
    if !inst.large_a() {
        return Err(Error::Precondition(format!(
            "A > 8 B^3 fails for A={a_root}, B={b_root}"
        )));
    }
    let solutions = search(&inst.instance(), bx);
    let counterexamples: Vec<_> = solutions
        .iter()
        .copied()
        .filter(|s| s.x > s.z && s.z > s.y)
        .collect();
    let verdict = if counterexamples.is_empty() {
        Verdict::Pass
    } else {
        Verdict::Counterexample
    };
    Ok(TheoremReport {
        a_root,
        b_root,
        n,
        bx,
        parity_hypothesis: inst.parity_holds(),
        solutions,
        counterexamples,
        verdict,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CorollaryReport {
    #[serde(rename = "A")]
    pub a_root: u64,
    #[serde(rename = "B")]
    pub b_root: u64,
    pub n: u64,
    #[serde(rename = "box")]
    pub bx: SearchBox,
    pub solutions: Vec<SolutionTriple>,
    pub verdict: Verdict,
}

/// Checks that the box holds no solution other than `(1, 1, 1)` when
/// `A > 8 B^3` and `B = 2 (mod 4)`.
pub fn verify_corollary_1_1(inst: &SquareEqInstance, bx: SearchBox) -> Result<CorollaryReport> {
    if !inst.large_a() {
        return Err(Error::Precondition(format!(
            "A > 8 B^3 fails for A={}, B={}",
            inst.a_root, inst.b_root
        )));
    }
    if inst.b_root % 4 != 2 {
        return Err(Error::Precondition(format!(
            "B = 2 (mod 4) fails for B={}",
            inst.b_root
        )));
    }
    let solutions = search(&inst.instance(), bx);
    let expected: Vec<_> = bx
        .contains(&SolutionTriple::IDENTITY)
        .then_some(SolutionTriple::IDENTITY)
        .into_iter()
        .collect();
    let verdict = if solutions == expected {
        Verdict::Pass
    } else {
        Verdict::Counterexample
    };
    Ok(CorollaryReport {
        a_root: inst.a_root,
        b_root: inst.b_root,
        n: inst.n,
        bx,
        solutions,
        verdict,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(x: u32, y: u32, z: u32) -> SolutionTriple {
        SolutionTriple::new(x, y, z)
    }

    #[test]
    fn instance_validation() {
        assert!(EqInstance::new(9, 4, 2).is_ok());
        assert!(EqInstance::new(1, 4, 2).is_err());
        assert!(EqInstance::new(6, 4, 2).is_err());
        assert!(EqInstance::new(9, 4, 1).is_err());
        assert!(SquareEqInstance::new(65, 2, 2).is_ok());
        assert!(SquareEqInstance::new(217, 3, 2).is_err());
        assert!(SquareEqInstance::new(4, 2, 3).is_err());
    }

    #[test]
    fn search_examples() {
        let bx = SearchBox::cube(8);
        assert!(search(&EqInstance::new(9, 4, 2).unwrap(), bx).contains(&t(1, 1, 1)));
        assert!(search(&EqInstance::new(4, 9, 2).unwrap(), bx).contains(&t(1, 1, 1)));
        assert_eq!(
            search(&EqInstance::new(4225, 4, 2).unwrap(), SearchBox::cube(6)),
            vec![t(1, 1, 1)]
        );
    }

    #[test]
    fn search_finds_non_trivial_solutions() {
        // 4^3 + 6^2 = 10^2
        let inst = EqInstance::new(2, 3, 2).unwrap();
        let found = search(&inst, SearchBox::cube(7));
        assert_eq!(found, vec![t(1, 1, 1), t(3, 2, 2)]);
        assert_eq!(
            classify(&inst, &t(3, 2, 2)).unwrap(),
            Classification::Inapplicable
        );
        // 9 + 6^3 = 15^2
        let inst = EqInstance::new(3, 2, 3).unwrap();
        assert_eq!(
            search(&inst, SearchBox::cube(7)),
            vec![t(1, 1, 1), t(1, 3, 2)]
        );
    }

    #[test]
    fn classify_examples() {
        let inst = EqInstance::new(9, 4, 2).unwrap();
        assert_eq!(
            classify(&inst, &t(1, 1, 1)).unwrap(),
            Classification::Trivial
        );
        assert!(matches!(
            classify(&inst, &t(3, 1, 2)),
            Err(Error::NotASolution { .. })
        ));
        let small = EqInstance::new(2, 3, 5).unwrap();
        assert_eq!(
            classify(&small, &t(1, 1, 1)).unwrap(),
            Classification::Trivial
        );
    }

    #[test]
    fn reduce_guard_and_round_trip() {
        let inst = SquareEqInstance::new(65, 2, 2).unwrap();
        assert!(matches!(
            reduce_case_xzy(&inst, &t(3, 1, 2)),
            Err(Error::NotASolution { .. })
        ));
        // B1 = 2, y = 1, z = 3, n = 2: B1^(2y) = 4 = n^(z-y)
        let rec = reduce_from_parts(65, 2, 2, &t(4, 1, 3)).unwrap();
        assert_eq!((rec.b1, rec.b2), (2, 1));
        // here B1 = B, so both forms of the relation agree
        assert!(rec.split_valid && rec.b1_relation && rec.b_relation_as_printed);
        assert_eq!(rec.d, BigUint::from(65u32 * 65 * 2));
        assert!(rec.d_splits && rec.d_exceeds_two && rec.d_coprime && rec.d_bound && rec.y_in_s_d);
        assert!(rec.d <= BigUint::from(16_900u32));
        // the exponents do not solve the equation, so the chain stops there
        assert!(!rec.reduced_equation && !rec.norm_solution_valid);
        assert_eq!(rec.verdict, Verdict::Fail);
        assert_eq!(
            rec.norm_solution.as_ref().map(|s| s.1.clone()),
            Some(BigUint::from(65u32).pow(3).to_string())
        );
    }

    #[test]
    fn chain_examples() {
        let r = inequality_chain(65, 2, 2, 2).unwrap();
        assert_eq!(r.verdict, Verdict::Pass, "{r:?}");
        assert!(inequality_chain(17, 2, 2, 2).is_err());
        assert_eq!(
            inequality_chain(217, 3, 3, 2).unwrap().verdict,
            Verdict::Pass
        );
        assert!(inequality_chain(65, 2, 3, 2).is_err());
    }

    #[test]
    fn theorem_and_corollary_examples() {
        for (a, b, n, side) in [(65, 2, 2, 6), (65, 2, 5, 6), (217, 3, 2, 5)] {
            let r = verify_theorem_1_1(a, b, n, SearchBox::cube(side)).unwrap();
            assert_eq!(r.verdict, Verdict::Pass);
        }
        assert!(
            !verify_theorem_1_1(217, 3, 2, SearchBox::cube(2))
                .unwrap()
                .parity_hypothesis
        );
        assert!(verify_theorem_1_1(17, 2, 2, SearchBox::cube(2)).is_err());
        for (a, b, n, side) in [(65, 2, 2, 6), (65, 2, 3, 6), (433, 2, 2, 4)] {
            let inst = SquareEqInstance::new(a, b, n).unwrap();
            let r = verify_corollary_1_1(&inst, SearchBox::cube(side)).unwrap();
            assert_eq!(r.solutions, vec![t(1, 1, 1)]);
            assert_eq!(r.verdict, Verdict::Pass);
        }
        let wrong_b = SquareEqInstance::new(1025, 4, 3).unwrap();
        assert!(verify_corollary_1_1(&wrong_b, SearchBox::cube(2)).is_err());
    }
}
