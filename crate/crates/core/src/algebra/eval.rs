//! Floating-point evaluation of exact polynomials.

use num_complex::Complex64;
use num_traits::Zero;

use super::{f64_to_rational, rational_to_f64, MultiPoly, Rational};

/// Working precision for [`eval_complex_with_precision`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EvalPrecision {
    pub bits: u32,
}

impl Default for EvalPrecision {
    fn default() -> Self {
        EvalPrecision { bits: 53 }
    }
}

impl EvalPrecision {
    /// Reads `PFZERO_PRECISION_BITS`, falling back to 53.
    pub fn from_env() -> Self {
        std::env::var("PFZERO_PRECISION_BITS")
            .ok()
            .and_then(|s| s.trim().parse().ok())
            .filter(|b: &u32| *b > 0)
            .map(|bits| EvalPrecision { bits })
            .unwrap_or_default()
    }
}

/// Dense nested-Horner form of a polynomial with `f64` coefficients.
#[derive(Clone, Debug)]
pub struct CompiledPoly {
    dims: [usize; 3],
    coeffs: Vec<f64>,
}

impl CompiledPoly {
    pub fn new(p: &MultiPoly) -> Self {
        let dims = [
            p.degree_in(super::Var::X) + 1,
            p.degree_in(super::Var::Y) + 1,
            p.degree_in(super::Var::T) + 1,
        ];
        let mut coeffs = vec![0.0; dims[0] * dims[1] * dims[2]];
        for (m, c) in p.terms() {
            let idx = (m.0[0] as usize * dims[1] + m.0[1] as usize) * dims[2] + m.0[2] as usize;
            coeffs[idx] = rational_to_f64(c);
        }
        CompiledPoly { dims, coeffs }
    }

    pub fn eval(&self, x: Complex64, y: Complex64, t: Complex64) -> Complex64 {
        let [dx, dy, dt] = self.dims;
        let mut acc_x = Complex64::zero();
        for a in (0..dx).rev() {
            let mut acc_y = Complex64::zero();
            for b in (0..dy).rev() {
                let base = (a * dy + b) * dt;
                let mut acc_t = Complex64::zero();
                for c in (0..dt).rev() {
                    acc_t = acc_t * t + self.coeffs[base + c];
                }
                acc_y = acc_y * y + acc_t;
            }
            acc_x = acc_x * x + acc_y;
        }
        acc_x
    }

    pub fn eval_real(&self, x: f64, y: f64, t: f64) -> f64 {
        let [dx, dy, dt] = self.dims;
        let mut acc_x = 0.0;
        for a in (0..dx).rev() {
            let mut acc_y = 0.0;
            for b in (0..dy).rev() {
                let base = (a * dy + b) * dt;
                let mut acc_t = 0.0;
                for c in (0..dt).rev() {
                    acc_t = acc_t * t + self.coeffs[base + c];
                }
                acc_y = acc_y * y + acc_t;
            }
            acc_x = acc_x * x + acc_y;
        }
        acc_x
    }
}

/// Horner evaluation in binary64 at `(x, y, t)`.
pub fn eval_complex(p: &MultiPoly, point: &[Complex64; 3]) -> Complex64 {
    CompiledPoly::new(p).eval(point[0], point[1], point[2])
}

/// Evaluation with a configurable working precision. Up to 53 bits this is
/// plain Horner; above, the point is converted exactly to rationals, the
/// polynomial is evaluated exactly over `Q(i)`, and the result is rounded
/// once.
pub fn eval_complex_with_precision(p: &MultiPoly, point: &[Complex64; 3], precision: EvalPrecision) -> Complex64 {
    if precision.bits <= 53 {
        return eval_complex(p, point);
    }
    let to_q = |v: f64| f64_to_rational(v).unwrap_or_else(Rational::zero);
    let pt: Vec<(Rational, Rational)> = point.iter().map(|z| (to_q(z.re), to_q(z.im))).collect();
    let mut re = Rational::zero();
    let mut im = Rational::zero();
    for (m, c) in p.terms() {
        let (mut tr, mut ti) = (c.clone(), Rational::zero());
        for (i, (zr, zi)) in pt.iter().enumerate() {
            for _ in 0..m.0[i] {
                let nr = &tr * zr - &ti * zi;
                let ni = &tr * zi + &ti * zr;
                tr = nr;
                ti = ni;
            }
        }
        re += tr;
        im += ti;
    }
    Complex64::new(rational_to_f64(&re), rational_to_f64(&im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse_polynomial;
    use proptest::prelude::*;

    const I: Complex64 = Complex64::new(0.0, 1.0);

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn spec_points() {
        let p = parse_polynomial("x^2+y^2").unwrap();
        assert!(eval_complex(&p, &[c(1.0), I, c(0.0)]).norm() < 1e-15);
        let q = parse_polynomial("t^2+1").unwrap();
        assert!(eval_complex(&q, &[c(0.0), c(0.0), I]).norm() < 1e-15);
        assert_eq!(eval_complex(&q, &[c(0.0), c(0.0), c(2.0)]), c(5.0));
    }

    #[test]
    fn extended_precision_agrees() {
        let p = parse_polynomial("1/3*x^5 - 7*x*y^2*t + 2").unwrap();
        let pt = [Complex64::new(0.3, -1.1), Complex64::new(1.7, 0.2), c(-0.4)];
        let a = eval_complex(&p, &pt);
        let b = eval_complex_with_precision(&p, &pt, EvalPrecision { bits: 200 });
        assert!((a - b).norm() < 1e-13 * b.norm());
    }

    fn small_poly() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(((0u32..4, 0u32..4, 0u32..3), -1000i64..1000), 1..6).prop_map(|ts| {
            MultiPoly::from_terms(
                ts.into_iter()
                    .map(|((a, b, cc), n)| (super::super::Monomial::new(a, b, cc), super::super::int(n))),
            )
        })
    }

    proptest! {
        #[test]
        fn multiplicative(a in small_poly(), b in small_poly(),
                          pts in prop::array::uniform6(-1.4f64..1.4)) {
            let pt = [Complex64::new(pts[0], pts[1]), Complex64::new(pts[2], pts[3]),
                      Complex64::new(pts[4], pts[5])];
            let ab = &a * &b;
            let lhs = eval_complex(&ab, &pt);
            let rhs = eval_complex(&a, &pt) * eval_complex(&b, &pt);
            // relative to the natural scale of the product of absolute sums
            let scale = eval_abs(&a, &pt) * eval_abs(&b, &pt);
            prop_assert!((lhs - rhs).norm() <= 1e-12 * scale.max(1e-300));
        }
    }

    fn eval_abs(p: &MultiPoly, pt: &[Complex64; 3]) -> f64 {
        p.terms()
            .map(|(m, c)| rational_to_f64(c).abs() * (0..3).map(|i| pt[i].norm().powi(m.0[i] as i32)).product::<f64>())
            .sum()
    }
}
