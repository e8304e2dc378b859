//! Multivariate polynomial gcd by recursive primitive remainder sequences.

use super::{AlgebraError, MultiPoly, Var};

/// Monic (in grevlex) greatest common divisor; `gcd(a, 0)` is `a` made
/// monic and the gcd of two nonzero constants is 1.
pub fn poly_gcd(a: &MultiPoly, b: &MultiPoly) -> Result<MultiPoly, AlgebraError> {
    if a.is_zero() && b.is_zero() {
        return Err(AlgebraError::DegenerateInput("gcd of two zero polynomials"));
    }
    Ok(gcd_rec(a, b).monic())
}

fn gcd_rec(a: &MultiPoly, b: &MultiPoly) -> MultiPoly {
    if a.is_zero() {
        return normalize(b);
    }
    if b.is_zero() {
        return normalize(a);
    }
    let main = Var::ALL.into_iter().find(|v| a.involves(*v) || b.involves(*v));
    let Some(v) = main else {
        return MultiPoly::one();
    };
    let (ca, pa) = split_content(a, v);
    let (cb, pb) = split_content(b, v);
    let c = gcd_rec(&ca, &cb);
    let pp = primitive_gcd(pa, pb, v);
    normalize(&(&c * &pp))
}

fn normalize(p: &MultiPoly) -> MultiPoly {
    if p.is_zero() {
        return MultiPoly::zero();
    }
    p.monic()
}

/// Content with respect to `v` (a polynomial free of `v`) and primitive part.
fn split_content(p: &MultiPoly, v: Var) -> (MultiPoly, MultiPoly) {
    let coeffs = p.coefficients_in(v);
    let mut c = MultiPoly::zero();
    for k in coeffs.iter().rev() {
        if k.is_zero() {
            continue;
        }
        c = gcd_rec(&c, k);
        if c.is_constant() {
            break;
        }
    }
    let c = normalize(&c);
    let pp = p.div_exact(&c).expect("content divides");
    (c, scale_primitive(&pp))
}

fn scale_primitive(p: &MultiPoly) -> MultiPoly {
    let c = p.content();
    let q = p.scale(&c.recip());
    if q.leading_coeff() < super::Rational::from_integer(0.into()) {
        -q
    } else {
        q
    }
}

fn lead_in(p: &MultiPoly, v: Var) -> MultiPoly {
    p.coefficients_in(v).pop().unwrap_or_default()
}

/// Sparse pseudo-remainder of `a` by `b` in `v`.
fn pseudo_rem(a: &MultiPoly, b: &MultiPoly, v: Var) -> MultiPoly {
    let db = b.degree_in(v);
    let lb = lead_in(b, v);
    let mut r = a.clone();
    while !r.is_zero() && r.degree_in(v) >= db {
        let dr = r.degree_in(v);
        let lr = lead_in(&r, v);
        let mut shift = MultiPoly::var(v).pow((dr - db) as u32);
        shift = &shift * &lr;
        r = &(&lb * &r) - &(&shift * b);
        r = scale_primitive(&r);
    }
    r
}

fn primitive_gcd(a: MultiPoly, b: MultiPoly, v: Var) -> MultiPoly {
    let (mut r0, mut r1) = if a.degree_in(v) >= b.degree_in(v) {
        (a, b)
    } else {
        (b, a)
    };
    if r1.degree_in(v) == 0 {
        return MultiPoly::one();
    }
    loop {
        let r = pseudo_rem(&r0, &r1, v);
        if r.is_zero() {
            return r1;
        }
        if r.degree_in(v) == 0 {
            return MultiPoly::one();
        }
        r0 = r1;
        r1 = split_content(&r, v).1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_polynomial, resultant};
    use proptest::prelude::*;

    fn p(s: &str) -> MultiPoly {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(poly_gcd(&p("x^2-y^2"), &p("x-y")).unwrap(), p("x-y"));
        assert_eq!(poly_gcd(&p("2*x"), &p("2*y")).unwrap(), p("1"));
        assert_eq!(poly_gcd(&p("x^3"), &p("x^2")).unwrap(), p("x^2"));
        assert_eq!(poly_gcd(&p("3*x+3"), &p("0")).unwrap(), p("x+1"));
        assert!(poly_gcd(&p("0"), &p("0")).is_err());
    }

    #[test]
    fn trivariate_common_factor() {
        let f = p("x*y - t^2 + 1");
        let a = &f * &p("x + 2*t");
        let b = &f * &p("y^2 - x*t");
        assert_eq!(poly_gcd(&a, &b).unwrap(), f.monic());
    }

    fn uni() -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec(-3i64..4, 1..5).prop_map(|cs| {
            let mut q = MultiPoly::zero();
            for (k, c) in cs.iter().enumerate() {
                q = &q + &MultiPoly::var(Var::X).pow(k as u32).scale(&crate::algebra::int(*c));
            }
            q
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(100))]
        #[test]
        fn resultant_vanishes_iff_common_factor(a in uni(), b in uni(), c in uni()) {
            // degree <= 6 by construction
            let f = &a * &c;
            let g = &b * &c;
            prop_assume!(f.degree_in(Var::X) > 0 && g.degree_in(Var::X) > 0);
            let r = resultant(&f, &g, Var::X).unwrap();
            let common = !poly_gcd(&f, &g).unwrap().is_constant();
            prop_assert_eq!(r.is_zero(), common);
        }
    }
}
