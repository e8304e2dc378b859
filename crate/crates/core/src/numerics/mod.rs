//! Floating-point oracle for the symbolic pipeline: closed cycles on level
//! curves, period integrals, continuation of periods in `t`, and residual
//! checks of Picard-Fuchs systems.

mod cycles;
pub mod dopri;
mod periods;

use num_complex::Complex64;
use thiserror::Error;

use crate::hamiltonian::HamiltonianError;

pub use cycles::{gauss_legendre, trace_cycle, CycleContext, CycleDescriptor, CyclePolyline, Lasso, PathPiece};
pub use periods::{
    fd_step, integrate_linear_system, integrate_pf_numeric, period_quadrature, periods_on, residual_check,
    residual_check_with, resolve_cycle, CompiledForm, ContinuationOptions, CycleChoice, PeriodSample, ResidualReport,
    ResidualSample, RESIDUAL_FLOOR,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum NumericsError {
    #[error(transparent)]
    Hamiltonian(#[from] HamiltonianError),
    #[error("level {t} is too close to the critical value {critical}")]
    NearCritical { t: Complex64, critical: Complex64 },
    #[error("the level curve through the seed at t = {t} leaves the bounding box")]
    NotCompactComponent { t: f64 },
    #[error("the seed cannot be projected onto the level curve")]
    DegenerateSeed,
    #[error("real ovals need a real level, got {t}")]
    ComplexLevelForOval { t: Complex64 },
    #[error("lifting a loop to the level curve at t = {t} failed")]
    LiftFailed { t: Complex64 },
    #[error("the lifted path at t = {t} does not close")]
    OpenLift { t: Complex64 },
    #[error("no usable cycle found at t = {t}")]
    NoCycle { t: Complex64 },
    #[error("path segment {segment} passes too close to the pole {pole}")]
    PathTooClose { segment: usize, pole: Complex64 },
    #[error("step size underflow near t = {t}")]
    StiffnessFailure { t: Complex64 },
    #[error("expected {expected} initial values, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
}
