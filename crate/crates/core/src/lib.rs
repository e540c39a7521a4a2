//! Exact-arithmetic toolkit for the ternary purely exponential equation
//! `(an)^x + (bn)^y = ((a+b)n)^z` and the machinery around it: Lucas
//! sequences and their primitive divisors, class numbers `h(-4D)`, and the
//! descent for `X^2 + D Y^2 = k^Z`.
//!
//! Every verdict produced here is computed with integers or rationals. Where
//! `pi`, `e` or logarithms appear, values are bracketed by certified
//! fixed-point intervals so that a "holds" answer is a proof for the given
//! inputs.

pub mod arith;
pub mod descent;
pub mod eqsolver;
mod error;
pub mod lucas;
pub mod quadforms;
pub mod verdict;

pub use error::{Error, Result};
pub use verdict::Verdict;
