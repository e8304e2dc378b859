//! Variation-of-argument bound along the segments of a simple domain.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::calculators::CalculatorReport;
use super::sup::coefficient_sup_on;
use super::winding::{winding_on_polygon, WindingOptions};
use super::{decompose_simple_domain, SegmentSet, SimpleDomain, ZeroCountError};
use crate::pfsystem::ScalarODE;

/// `ln(3/2)`.
pub const LN_THREE_HALVES: f64 = 0.405_465_108_108_164_4;

pub const DEFAULT_TOLERANCE: f64 = 1e-6;

/// Bound on the variation of argument of a solution of an order `n` linear
/// ODE along a segment of length `l` where the coefficients are bounded by
/// `c`. Values of `c` below 1 are raised to 1.
pub fn yakovenko_varbound(n: usize, l: f64, c: f64) -> f64 {
    PI * (n as f64 + 1.0) * (1.0 + l * c.max(1.0) / LN_THREE_HALVES)
}

/// `floor(sum / 2pi)`.
pub fn total_from_varbounds(varbounds: &[f64]) -> u64 {
    let s: f64 = varbounds.iter().sum();
    (s / (2.0 * PI)).floor() as u64
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ZeroBoundReport {
    pub segments: SegmentSet,
    pub per_segment_sup: Vec<f64>,
    pub per_segment_varbound: Vec<f64>,
    pub total_bound: u64,
    pub numeric_count: Option<i64>,
    pub calculators: Option<CalculatorReport>,
}

impl ZeroBoundReport {
    /// `numeric_count <= total_bound` whenever a count is attached.
    pub fn is_consistent(&self) -> bool {
        self.numeric_count.is_none_or(|n| n <= self.total_bound as i64)
    }

    /// Count zeros of `f` inside the segment polygon by the argument
    /// principle and attach the result.
    pub fn attach_numeric_count<F: FnMut(Complex64) -> Complex64>(
        &mut self,
        f: F,
        opts: &WindingOptions,
    ) -> Result<i64, ZeroCountError> {
        let n = if self.segments.segments.is_empty() {
            0
        } else {
            winding_on_polygon(&self.segments.vertices(), f, opts)?
        };
        self.numeric_count = Some(n);
        Ok(n)
    }
}

/// Decompose `dom`, bound the coefficients on each segment and add up the
/// per-segment variation bounds.
pub fn zero_count_bound(ode: &ScalarODE, dom: &SimpleDomain, tol: f64) -> Result<ZeroBoundReport, ZeroCountError> {
    let mut poles: Vec<Complex64> = ode.pole_set.iter().map(|r| r.value).collect();
    for &s in &dom.sigma {
        if poles.iter().all(|p| (p - s).norm() > 1e-12) {
            poles.push(s);
        }
    }
    let segments = decompose_simple_domain(dom, &poles)?;
    let mut per_segment_sup = Vec::with_capacity(segments.segments.len());
    let mut per_segment_varbound = Vec::with_capacity(segments.segments.len());
    for &(a, b) in &segments.segments {
        let c = coefficient_sup_on(ode, &[(a, b)], tol)?;
        per_segment_sup.push(c);
        per_segment_varbound.push(yakovenko_varbound(ode.order, (b - a).norm(), c));
    }
    Ok(ZeroBoundReport {
        total_bound: total_from_varbounds(&per_segment_varbound),
        segments,
        per_segment_sup,
        per_segment_varbound,
        numeric_count: None,
        calculators: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{RatFunc, UniPoly};
    use crate::hamiltonian::SingularSet;
    use crate::zerocount::Region;

    #[test]
    fn varbound_values() {
        assert!((yakovenko_varbound(1, 1.0, 1.0) - 21.7792).abs() < 1e-3);
        assert!((yakovenko_varbound(1, 0.0, 1.0) - 2.0 * PI).abs() < 1e-12);
        assert!((yakovenko_varbound(2, 2.0, 5.0) - 3.0 * PI * (1.0 + 10.0 / 1.5f64.ln())).abs() < 1e-9);
        assert_eq!(yakovenko_varbound(1, 1.0, 0.2), yakovenko_varbound(1, 1.0, 1.0));
        assert!((LN_THREE_HALVES - 1.5f64.ln()).abs() < 1e-16);
    }

    #[test]
    fn floor_of_single_segment() {
        assert_eq!(total_from_varbounds(&[21.7792]), 3);
        assert_eq!(total_from_varbounds(&[]), 0);
    }

    fn reciprocal_ode() -> ScalarODE {
        ScalarODE::new(
            vec![RatFunc::new(UniPoly::from_ints(&[-1]), UniPoly::t()).unwrap()],
            SingularSet::empty(),
        )
    }

    #[test]
    fn linear_solutions_have_no_zeros_in_a_cut_disc() {
        let ode = reciprocal_ode();
        let mut dom = SimpleDomain::with_auto_rays(
            vec![Complex64::new(0.0, 0.0)],
            Region::Disc {
                center: Complex64::new(1.0, 0.0),
                radius: 0.4,
            },
            0.5,
        )
        .unwrap();
        dom.relaxed_bounds = true;
        let mut report = zero_count_bound(&ode, &dom, DEFAULT_TOLERANCE).unwrap();
        let n = report
            .attach_numeric_count(|t| t * 3.0, &WindingOptions::default())
            .unwrap();
        assert_eq!(n, 0);
        assert!(report.is_consistent());
        assert_eq!(report.total_bound, total_from_varbounds(&report.per_segment_varbound));
    }

    #[test]
    fn degenerate_region_gives_zero() {
        let ode = reciprocal_ode();
        let dom = SimpleDomain::with_auto_rays(
            vec![],
            Region::Disc {
                center: Complex64::new(0.5, 0.0),
                radius: 0.0,
            },
            0.1,
        )
        .unwrap();
        let report = zero_count_bound(&ode, &dom, DEFAULT_TOLERANCE).unwrap();
        assert!(report.segments.segments.is_empty());
        assert_eq!(report.total_bound, 0);
    }
}
