//! Outward-rounded interval arithmetic on `f64`, real and rectangular complex.

use num_complex::Complex64;

use crate::algebra::{rational_to_f64, Rational, UniPoly};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub fn point(v: f64) -> Self {
        Interval { lo: v, hi: v }
    }

    pub fn new(lo: f64, hi: f64) -> Self {
        Interval {
            lo: lo.min(hi),
            hi: lo.max(hi),
        }
    }

    /// Smallest interval we can vouch for around a value computed with a
    /// few roundings.
    pub fn around(v: f64, ulps: u32) -> Self {
        let (mut lo, mut hi) = (v, v);
        for _ in 0..ulps {
            lo = lo.next_down();
            hi = hi.next_up();
        }
        Interval { lo, hi }
    }

    /// Enclosure of an exact rational.
    pub fn of_rational(r: &Rational) -> Self {
        let v = rational_to_f64(r);
        match crate::algebra::f64_to_rational(v) {
            Some(exact) if &exact == r => Interval::point(v),
            _ => Interval::around(v, 4),
        }
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lo <= v && v <= self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    /// Smallest absolute value over the interval.
    pub fn mig(&self) -> f64 {
        if self.contains(0.0) {
            0.0
        } else {
            self.lo.abs().min(self.hi.abs())
        }
    }

    /// Largest absolute value over the interval.
    pub fn mag(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn add(self, o: Interval) -> Interval {
        Interval {
            lo: (self.lo + o.lo).next_down(),
            hi: (self.hi + o.hi).next_up(),
        }
    }

    pub fn sub(self, o: Interval) -> Interval {
        Interval {
            lo: (self.lo - o.hi).next_down(),
            hi: (self.hi - o.lo).next_up(),
        }
    }

    pub fn mul(self, o: Interval) -> Interval {
        let p = [self.lo * o.lo, self.lo * o.hi, self.hi * o.lo, self.hi * o.hi];
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Interval {
            lo: lo.next_down(),
            hi: hi.next_up(),
        }
    }

    pub fn hull(self, o: Interval) -> Interval {
        Interval {
            lo: self.lo.min(o.lo),
            hi: self.hi.max(o.hi),
        }
    }
}

/// Axis-aligned rectangle in the complex plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ComplexInterval {
    pub re: Interval,
    pub im: Interval,
}

impl ComplexInterval {
    pub fn point(z: Complex64) -> Self {
        ComplexInterval {
            re: Interval::point(z.re),
            im: Interval::point(z.im),
        }
    }

    /// Rectangle containing the straight segment between two points that
    /// were each computed with at most a few roundings.
    pub fn segment_hull(a: Complex64, b: Complex64) -> Self {
        ComplexInterval {
            re: Interval::around(a.re, 2).hull(Interval::around(b.re, 2)),
            im: Interval::around(a.im, 2).hull(Interval::around(b.im, 2)),
        }
    }

    pub fn add(self, o: ComplexInterval) -> Self {
        ComplexInterval {
            re: self.re.add(o.re),
            im: self.im.add(o.im),
        }
    }

    pub fn mul(self, o: ComplexInterval) -> Self {
        ComplexInterval {
            re: self.re.mul(o.re).sub(self.im.mul(o.im)),
            im: self.re.mul(o.im).add(self.im.mul(o.re)),
        }
    }

    /// Upper bound for `|z|` over the rectangle.
    pub fn mag(&self) -> f64 {
        let (a, b) = (self.re.mag(), self.im.mag());
        (a * a + b * b).sqrt().next_up().next_up()
    }

    /// Lower bound for `|z|` over the rectangle.
    pub fn mig(&self) -> f64 {
        let (a, b) = (self.re.mig(), self.im.mig());
        (a * a + b * b).sqrt().next_down().next_down().max(0.0)
    }
}

/// A polynomial in `t` with interval coefficients.
#[derive(Clone, Debug)]
pub struct IntervalPoly {
    coeffs: Vec<Interval>,
}

impl IntervalPoly {
    pub fn new(p: &UniPoly) -> Self {
        IntervalPoly {
            coeffs: p.coeffs().iter().map(Interval::of_rational).collect(),
        }
    }

    /// Horner enclosure of the range over `z`.
    pub fn eval(&self, z: ComplexInterval) -> ComplexInterval {
        let mut acc = ComplexInterval::point(Complex64::new(0.0, 0.0));
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(z).add(ComplexInterval {
                re: *c,
                im: Interval::point(0.0),
            });
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use proptest::prelude::*;

    #[test]
    fn rational_enclosure() {
        let third = Interval::of_rational(&rat(1, 3));
        assert!(third.lo < 1.0 / 3.0 + 1e-15 && third.hi > 1.0 / 3.0 - 1e-15);
        assert!(third.width() > 0.0);
        assert_eq!(Interval::of_rational(&rat(1, 2)), Interval::point(0.5));
    }

    proptest! {
        #[test]
        fn polynomial_enclosure_contains_samples(
            cs in prop::collection::vec(-20i64..20, 1..6),
            re in -2.0f64..2.0, im in -2.0f64..2.0, w in 0.0f64..0.5, s in 0.0f64..1.0,
        ) {
            let p = UniPoly::from_ints(&cs);
            let ip = IntervalPoly::new(&p);
            let a = Complex64::new(re, im);
            let b = Complex64::new(re + w, im - w);
            let enc = ip.eval(ComplexInterval::segment_hull(a, b));
            let v = p.eval_complex(a + (b - a) * s);
            prop_assert!(enc.re.lo - 1e-9 <= v.re && v.re <= enc.re.hi + 1e-9);
            prop_assert!(enc.mag() + 1e-9 >= v.norm());
            prop_assert!(enc.mig() <= v.norm() + 1e-9);
        }
    }
}
