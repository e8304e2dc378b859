//! Exact arithmetic backbone: rationals, sparse polynomials in `x, y, t`,
//! univariate polynomials and rational functions in `t`, matrices over exact
//! rings, resultants, Groebner bases and fraction-free linear algebra.
//!
//! Floating point only appears in [`eval`] and [`roots`], at the boundary
//! where exact objects are handed to numerics.

mod eval;
mod gcd;
mod groebner;
mod linsolve;
mod matrix;
mod poly;
mod ratfunc;
mod resultant;
pub mod roots;
mod text;
mod unipoly;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use eval::{eval_complex, eval_complex_with_precision, CompiledPoly, EvalPrecision};
pub use gcd::poly_gcd;
pub use groebner::{groebner_basis, normal_form, MonomialOrder};
pub use linsolve::{exact_linear_solve, LinearSolution, SparseSystem};
pub use matrix::{ExactRing, Matrix};
pub use poly::{Monomial, MultiPoly, Var};
pub use ratfunc::RatFunc;
pub use resultant::{resultant, sylvester_matrix};
pub use text::{parse_polynomial, ParseError};
pub use unipoly::UniPoly;

/// Arbitrary-precision rational; always reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Matrix of polynomials in `x, y, t`.
pub type PolyMatrix = Matrix<MultiPoly>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AlgebraError {
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("linear system is inconsistent")]
    Inconsistent,
    #[error("division by the zero polynomial")]
    DivisionByZeroPolynomial,
}

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Correctly rounded enough for evaluation purposes: the quotient is formed
/// from the top 64 significant bits of numerator and denominator.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let (n, d) = (r.numer(), r.denom());
    if let (Some(a), Some(b)) = (n.to_f64(), d.to_f64()) {
        if a.is_finite() && b.is_finite() && a.abs() < 2f64.powi(53) && b < 2f64.powi(53) {
            return a / b;
        }
    }
    let nb = n.bits() as i64;
    let db = d.bits() as i64;
    let shift_n = (nb - 64).max(0);
    let shift_d = (db - 64).max(0);
    let nn = (n.abs() >> shift_n as usize).to_f64().unwrap_or(f64::INFINITY);
    let dd = (d >> shift_d as usize).to_f64().unwrap_or(f64::INFINITY);
    let v = nn / dd * 2f64.powi((shift_n - shift_d) as i32);
    if n.is_negative() {
        -v
    } else {
        v
    }
}

/// Exact rational value of a finite `f64`.
pub fn f64_to_rational(x: f64) -> Option<Rational> {
    Rational::from_float(x)
}

/// Least common multiple of the denominators of `values`.
pub fn common_denominator<'a, I: IntoIterator<Item = &'a Rational>>(values: I) -> BigInt {
    values.into_iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_invariants_hold() {
        let r = Rational::new(BigInt::from(6), BigInt::from(-4));
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
    }

    #[test]
    fn big_rational_to_f64() {
        let big = Rational::new(BigInt::from(10).pow(400) + 1, BigInt::from(10).pow(399));
        assert!((rational_to_f64(&big) - 10.0).abs() < 1e-12);
        assert_eq!(rational_to_f64(&rat(-1, 3)), -1.0 / 3.0);
    }
}
