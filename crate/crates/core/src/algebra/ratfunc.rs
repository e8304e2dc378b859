//! Rational functions in `t` over `Q`.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::{AlgebraError, MultiPoly, Rational, UniPoly, Var};

/// `num / den` with `gcd(num, den) = 1` and `den` monic. Zero is `0 / 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZeroPolynomial);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides");
        let mut den = den.div_exact(&g).expect("gcd divides");
        let lc = den.leading_coeff();
        if !lc.is_one() {
            let inv = lc.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Ok(RatFunc { num, den })
    }

    /// Normalize a quotient of polynomials in `t` given as [`MultiPoly`].
    pub fn normalize(num: &MultiPoly, den: &MultiPoly) -> Result<Self, AlgebraError> {
        let n = UniPoly::from_multipoly(num, Var::T)
            .ok_or(AlgebraError::DegenerateInput("numerator must involve t only"))?;
        let d = UniPoly::from_multipoly(den, Var::T)
            .ok_or(AlgebraError::DegenerateInput("denominator must involve t only"))?;
        RatFunc::new(n, d)
    }

    pub fn zero() -> Self {
        RatFunc {
            num: UniPoly::zero(),
            den: UniPoly::one(),
        }
    }

    pub fn one() -> Self {
        RatFunc::from_poly(UniPoly::one())
    }

    pub fn from_poly(p: UniPoly) -> Self {
        RatFunc {
            num: p,
            den: UniPoly::one(),
        }
    }

    pub fn constant(c: Rational) -> Self {
        RatFunc::from_poly(UniPoly::constant(c))
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn num_poly(&self) -> MultiPoly {
        self.num.to_multipoly(Var::T)
    }

    pub fn den_poly(&self) -> MultiPoly {
        self.den.to_multipoly(Var::T)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The same function written with coprime integer coefficients in both
    /// parts and a positive leading denominator coefficient.
    pub fn integral_parts(&self) -> (UniPoly, UniPoly) {
        let all = self.num.coeffs().iter().chain(self.den.coeffs().iter());
        let l = Rational::from_integer(super::common_denominator(all));
        let n = self.num.scale(&l);
        let d = self.den.scale(&l);
        let g = n.to_multipoly(Var::T).content().numer().clone();
        let gd = d.to_multipoly(Var::T).content().numer().clone();
        let g = num_integer::Integer::gcd(&g, &gd);
        let g = if g.is_zero() { num_bigint::BigInt::one() } else { g };
        let gr = Rational::from_integer(g).recip();
        (n.scale(&gr), d.scale(&gr))
    }

    pub fn derivative(&self) -> RatFunc {
        let n = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFunc::new(n, &self.den * &self.den).expect("nonzero denominator")
    }

    pub fn recip(&self) -> Result<RatFunc, AlgebraError> {
        RatFunc::new(self.den.clone(), self.num.clone())
    }

    pub fn eval_complex(&self, t: Complex64) -> Complex64 {
        self.num.eval_complex(t) / self.den.eval_complex(t)
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc, AlgebraError> {
        RatFunc::new(&self.num * &rhs.den, &self.den * &rhs.num)
    }
}

impl From<UniPoly> for RatFunc {
    fn from(p: UniPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.integral_parts();
        if d.is_constant() && d.leading_coeff().is_one() {
            return write!(f, "{}", n);
        }
        let n_s = n.to_string();
        let d_s = d.to_string();
        let wrap = |s: String, p: &UniPoly| {
            if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({})", s)
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(n_s, &n), wrap(d_s, &d))
    }
}

impl<'a> Add<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.den == rhs.den {
            return RatFunc::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        RatFunc::new(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den).expect("nonzero")
    }
}

impl<'a> Sub<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero")
    }
}

impl<'a> Div<&'a RatFunc> for &'a RatFunc {
    type Output = RatFunc;
    /// Panics when dividing by zero; see [`RatFunc::checked_div`].
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero rational function")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}
