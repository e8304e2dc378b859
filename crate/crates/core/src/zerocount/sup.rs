//! Rigorous suprema of ODE coefficients along segments.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use super::interval::{ComplexInterval, IntervalPoly};
use super::{SegmentSet, ZeroCountError};
use crate::pfsystem::ScalarODE;

struct Piece {
    upper: f64,
    seg: usize,
    s0: f64,
    s1: f64,
}

impl PartialEq for Piece {
    fn eq(&self, o: &Self) -> bool {
        self.upper == o.upper
    }
}
impl Eq for Piece {}
impl PartialOrd for Piece {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Piece {
    fn cmp(&self, o: &Self) -> Ordering {
        self.upper.total_cmp(&o.upper)
    }
}

/// Coefficients of an ODE prepared for enclosure.
pub struct CoefficientEnclosure {
    parts: Vec<(IntervalPoly, IntervalPoly)>,
    exact: Vec<crate::algebra::RatFunc>,
}

impl CoefficientEnclosure {
    pub fn new(ode: &ScalarODE) -> Self {
        CoefficientEnclosure {
            parts: ode
                .coeffs
                .iter()
                .map(|c| (IntervalPoly::new(c.num()), IntervalPoly::new(c.den())))
                .collect(),
            exact: ode.coeffs.clone(),
        }
    }

    /// Upper bound of `max_j |c_j|` over the rectangle, or `None` when a
    /// denominator enclosure contains zero.
    pub fn upper(&self, z: ComplexInterval) -> Option<f64> {
        let mut best = 0.0f64;
        for (n, d) in &self.parts {
            let den = d.eval(z).mig();
            if den <= 0.0 {
                return None;
            }
            best = best.max((n.eval(z).mag() / den).next_up());
        }
        Some(best)
    }

    /// `max_j |c_j(t)|` in plain floating point.
    pub fn value(&self, t: Complex64) -> f64 {
        self.exact.iter().map(|c| c.eval_complex(t).norm()).fold(0.0, f64::max)
    }
}

/// Largest number of pieces examined per call.
pub const MAX_PIECES: usize = 200_000;

/// Upper bound `C` for `max_j |c_j(t)|` over all segments, refined by
/// best-first bisection until `C - (best sampled value) <= tol * C`.
pub fn coefficient_sup(ode: &ScalarODE, segs: &SegmentSet, tol: f64) -> Result<f64, ZeroCountError> {
    coefficient_sup_on(ode, &segs.segments, tol)
}

pub fn coefficient_sup_on(
    ode: &ScalarODE,
    segments: &[(Complex64, Complex64)],
    tol: f64,
) -> Result<f64, ZeroCountError> {
    if ode.coeffs.is_empty() || segments.is_empty() {
        return Ok(0.0);
    }
    for &(a, b) in segments {
        for p in &ode.pole_set {
            if super::domain::segment_distance(p.value, a, b) <= p.radius {
                return Err(ZeroCountError::PoleOnSegment { pole: p.value });
            }
        }
    }
    let enc = CoefficientEnclosure::new(ode);
    let at = |seg: usize, s: f64| {
        let (a, b) = segments[seg];
        a + (b - a) * s
    };
    let mut lower = 0.0f64;
    let mut heap = BinaryHeap::new();
    let push = |heap: &mut BinaryHeap<Piece>, lower: &mut f64, seg: usize, s0: f64, s1: f64| {
        let (p0, p1) = (at(seg, s0), at(seg, s1));
        *lower = lower
            .max(enc.value(p0))
            .max(enc.value(p1))
            .max(enc.value(at(seg, 0.5 * (s0 + s1))));
        let upper = enc
            .upper(ComplexInterval::segment_hull(p0, p1))
            .unwrap_or(f64::INFINITY);
        heap.push(Piece { upper, seg, s0, s1 });
    };
    for seg in 0..segments.len() {
        push(&mut heap, &mut lower, seg, 0.0, 1.0);
    }
    let mut examined = 0usize;
    loop {
        let top = heap.pop().expect("nonempty");
        if (top.upper.is_finite() && top.upper - lower <= tol * top.upper) || examined >= MAX_PIECES {
            if !top.upper.is_finite() {
                return Err(ZeroCountError::PoleOnSegment {
                    pole: at(top.seg, 0.5 * (top.s0 + top.s1)),
                });
            }
            return Ok(top.upper);
        }
        if top.s1 - top.s0 < 1e-14 {
            if !top.upper.is_finite() {
                return Err(ZeroCountError::PoleOnSegment {
                    pole: at(top.seg, top.s0),
                });
            }
            return Ok(top.upper);
        }
        examined += 1;
        let mid = 0.5 * (top.s0 + top.s1);
        push(&mut heap, &mut lower, top.seg, top.s0, mid);
        push(&mut heap, &mut lower, top.seg, mid, top.s1);
    }
}
