//! `PFZERO_PRECISION_BITS`: working precision for checking sampled points
//! against their level curve.

use num_complex::Complex64;
use pfzero_core::algebra::{eval_complex_with_precision, EvalPrecision};
use pfzero_core::hamiltonian::Hamiltonian;
use pfzero_core::numerics::CyclePolyline;

use crate::error::CliError;

pub const PRECISION_ENV: &str = "PFZERO_PRECISION_BITS";
pub const DEFAULT_BITS: u32 = 53;

pub fn precision_from_env() -> Result<u32, CliError> {
    match std::env::var(PRECISION_ENV) {
        Err(_) => Ok(DEFAULT_BITS),
        Ok(v) => match v.trim().parse::<u32>() {
            Ok(b) if (24..=4096).contains(&b) => Ok(b),
            _ => Err(CliError::Usage(format!(
                "{PRECISION_ENV} must be an integer in [24, 4096], got {v:?}"
            ))),
        },
    }
}

/// Largest `|H(p) - t|` over the nodes of `cycle`, evaluated at `bits`.
pub fn level_error(h: &Hamiltonian, cycle: &CyclePolyline, bits: u32) -> f64 {
    let prec = EvalPrecision { bits };
    cycle
        .points
        .iter()
        .map(|&(x, y)| {
            (eval_complex_with_precision(h.poly(), &[x, y, Complex64::new(0.0, 0.0)], prec) - cycle.level).norm()
        })
        .fold(0.0, f64::max)
}
