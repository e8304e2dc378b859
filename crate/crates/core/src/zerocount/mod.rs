//! Zero counting in simple domains: segment decomposition, coefficient
//! suprema, variation-of-argument bounds, winding numbers and the closed-form
//! asymptotic bounds.

use num_complex::Complex64;
use thiserror::Error;

mod bound;
pub mod calculators;
mod domain;
pub mod interval;
mod sup;
mod winding;

pub use bound::{
    total_from_varbounds, yakovenko_varbound, zero_count_bound, ZeroBoundReport, DEFAULT_TOLERANCE, LN_THREE_HALVES,
};
pub use calculators::{
    asymptotic_bound_calculators, double_exponential_bound, polynomial_data_bound, CalculatorConstants,
    CalculatorReport, CalculatorValue,
};
pub use domain::{
    decompose_simple_domain, rays_intersect, Provenance, Region, SegmentSet, SimpleDomain, CLEARANCE_CONSTANT,
    SEGMENT_CAP_FACTOR,
};
pub use sup::{coefficient_sup, coefficient_sup_on, CoefficientEnclosure, MAX_PIECES};
pub use winding::{
    winding_count, winding_from_samples, winding_on_circle, winding_on_polygon, WindingOptions, MAX_INCREMENT,
    MAX_RESIDUAL,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ZeroCountError {
    #[error("cut rays intersect")]
    InvalidRays,
    #[error("clearance cannot be achieved: {0}")]
    InfeasibleClearance(&'static str),
    #[error("invalid domain: {0}")]
    InvalidDomain(&'static str),
    #[error("rho = {0} is outside the admissible range")]
    InvalidRho(f64),
    #[error("segment meets the pole at {pole}")]
    PoleOnSegment { pole: Complex64 },
    #[error("winding number is inconclusive (residual {residual})")]
    Inconclusive { residual: f64 },
    #[error("function vanishes on the contour near parameter {at}")]
    ZeroOnContour { at: f64 },
}
