//! Period integrals by quadrature, their continuation through a linear
//! system, and residual checks of symbolic systems against quadrature.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::cycles::{segment_distance, CycleContext, CycleDescriptor, CyclePolyline};
use super::dopri::{Dopri5, StepStats};
use super::NumericsError;
use crate::algebra::roots::isolate_roots;
use crate::algebra::{rational_to_f64, CompiledPoly, UniPoly};
use crate::petrov::OneForm;
use crate::pfsystem::{LinearSystem, PFSystem};

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// Periods of a list of forms over one cycle at level `t`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PeriodSample {
    pub t: Complex64,
    pub periods: Vec<Complex64>,
    pub error_estimate: f64,
}

/// A one-form compiled for floating-point evaluation.
#[derive(Clone, Debug)]
pub struct CompiledForm {
    p: CompiledPoly,
    q: CompiledPoly,
}

impl CompiledForm {
    pub fn new(form: &OneForm) -> Self {
        CompiledForm {
            p: CompiledPoly::new(&form.p),
            q: CompiledPoly::new(&form.q),
        }
    }
}

/// `P dx + Q dy` summed over the quadrature nodes of the cycle.
pub fn period_quadrature(cycle: &CyclePolyline, omega: &OneForm) -> Complex64 {
    quadrature_many(cycle, &[CompiledForm::new(omega)])[0]
}

fn quadrature_many(cycle: &CyclePolyline, forms: &[CompiledForm]) -> Vec<Complex64> {
    let mut out = vec![ZERO; forms.len()];
    for ((&(x, y), &(dx, dy)), &w) in cycle.points.iter().zip(&cycle.tangents).zip(&cycle.weights) {
        for (o, f) in out.iter_mut().zip(forms) {
            *o += (f.p.eval(x, y, ZERO) * dx + f.q.eval(x, y, ZERO) * dy) * w;
        }
    }
    out
}

/// Periods of `forms` over the cycle `desc` at level `t`, doubling the
/// number of nodes until two successive values agree to `rel_tol` relative
/// to the largest period; the last difference is the error estimate.
pub fn periods_on(
    ctx: &CycleContext,
    t: Complex64,
    desc: &CycleDescriptor,
    forms: &[OneForm],
    rel_tol: f64,
) -> Result<PeriodSample, NumericsError> {
    let compiled: Vec<CompiledForm> = forms.iter().map(CompiledForm::new).collect();
    let mut prev = quadrature_many(&ctx.build(t, desc, 0)?, &compiled);
    for refinement in 1..=MAX_REFINEMENT {
        let periods = quadrature_many(&ctx.build(t, desc, refinement)?, &compiled);
        let err = periods
            .iter()
            .zip(&prev)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        let scale = periods.iter().map(|p| p.norm()).fold(1e-300, f64::max);
        if err <= rel_tol * scale || refinement == MAX_REFINEMENT {
            return Ok(PeriodSample {
                t,
                periods,
                error_estimate: err,
            });
        }
        prev = periods;
    }
    unreachable!()
}

const MAX_REFINEMENT: u32 = 8;

/// How to pick the cycle for quadrature.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CycleChoice {
    /// The first lifted loop with a period vector that is not negligible.
    #[default]
    Auto,
    /// The real oval through the given seed.
    RealOval { seed: [f64; 2] },
    /// The `index`-th entry of [`CycleContext::candidate_cycles`].
    Candidate { index: usize },
}

/// Resolves `choice` into a concrete cycle family at level `t`.
pub fn resolve_cycle(
    ctx: &CycleContext,
    t: Complex64,
    choice: &CycleChoice,
    forms: &[OneForm],
) -> Result<CycleDescriptor, NumericsError> {
    match *choice {
        CycleChoice::RealOval { seed } => Ok(CycleDescriptor::Oval { seed }),
        CycleChoice::Candidate { index } => ctx
            .candidate_cycles(t)?
            .into_iter()
            .nth(index)
            .ok_or(NumericsError::NoCycle { t }),
        CycleChoice::Auto => {
            for desc in ctx.candidate_cycles(t)? {
                let Ok(sample) = periods_on(ctx, t, &desc, forms, 1e-12) else {
                    continue;
                };
                let size = sample.periods.iter().map(|p| p.norm()).fold(0.0, f64::max);
                if size > 1e-6 && sample.error_estimate < 1e-9 * size {
                    return Ok(desc);
                }
            }
            Err(NumericsError::NoCycle { t })
        }
    }
}

/// Settings for continuing periods through a linear system.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContinuationOptions {
    pub rtol: f64,
    pub atol: f64,
    /// Minimal distance between the path and any root of `a`, beyond its
    /// isolation radius.
    pub margin: f64,
}

impl Default for ContinuationOptions {
    fn default() -> Self {
        ContinuationOptions {
            rtol: 1e-10,
            atol: 1e-14,
            margin: 1e-3,
        }
    }
}

fn compile_uni(p: &UniPoly) -> Vec<f64> {
    p.coeffs().iter().map(rational_to_f64).collect()
}

fn horner(c: &[f64], t: Complex64) -> Complex64 {
    c.iter().rev().fold(ZERO, |acc, &v| acc * t + v)
}

/// Integrates `I' = (A / a) I` along the polyline `path`, starting from
/// `initial` at `path[0]`; returns one sample per vertex.
pub fn integrate_linear_system(
    sys: &LinearSystem,
    path: &[Complex64],
    initial: &PeriodSample,
    opts: &ContinuationOptions,
) -> Result<Vec<PeriodSample>, NumericsError> {
    let n = sys.dim();
    if initial.periods.len() != n {
        return Err(NumericsError::DimensionMismatch {
            expected: n,
            found: initial.periods.len(),
        });
    }
    let poles = isolate_roots(&sys.a);
    for (i, w) in path.windows(2).enumerate() {
        for r in &poles {
            if segment_distance(r.value, w[0], w[1]) <= r.radius + opts.margin {
                return Err(NumericsError::PathTooClose {
                    segment: i,
                    pole: r.value,
                });
            }
        }
    }
    let a = compile_uni(&sys.a);
    let entries: Vec<Vec<f64>> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| compile_uni(sys.matrix.get(i, j)))
        .collect();
    let solver = Dopri5 {
        rtol: opts.rtol,
        atol: opts.atol,
        max_steps: 1_000_000,
    };
    let mut out = vec![PeriodSample {
        t: path.first().copied().unwrap_or(initial.t),
        periods: initial.periods.clone(),
        error_estimate: initial.error_estimate,
    }];
    let mut y = initial.periods.clone();
    let mut err = initial.error_estimate;
    for w in path.windows(2) {
        let (t0, dt) = (w[0], w[1] - w[0]);
        let mut f = |s: f64, v: &[Complex64]| {
            let t = t0 + dt * s;
            let scale = dt / horner(&a, t);
            (0..n)
                .map(|i| {
                    let row: Complex64 = (0..n).map(|j| horner(&entries[i * n + j], t) * v[j]).sum();
                    row * scale
                })
                .collect()
        };
        let mut stats = StepStats::default();
        y = solver
            .integrate(&mut f, 0.0, &y, 1.0, &mut stats)
            .map_err(|e| NumericsError::StiffnessFailure { t: t0 + dt * e.at })?;
        let size = y.iter().map(|v| v.norm()).fold(0.0, f64::max);
        err += stats.error_sum * opts.rtol * size;
        out.push(PeriodSample {
            t: w[1],
            periods: y.clone(),
            error_estimate: err,
        });
    }
    Ok(out)
}

/// Continues the periods of the basis forms of `sys` along `path`.
pub fn integrate_pf_numeric(
    sys: &PFSystem,
    path: &[Complex64],
    initial: &PeriodSample,
    opts: &ContinuationOptions,
) -> Result<Vec<PeriodSample>, NumericsError> {
    integrate_linear_system(&sys.system, path, initial, opts)
}

/// Residual of `a I' - A I` at one level.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualSample {
    pub t: f64,
    pub residual: f64,
    pub period_norm: f64,
    pub quadrature_error: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub samples: Vec<ResidualSample>,
    pub max_residual: f64,
    pub cycles: Vec<CycleDescriptor>,
}

/// Absolute floor added to the denominator of the relative residual.
pub const RESIDUAL_FLOOR: f64 = 1e-14;

/// Central-difference step at `t`.
pub fn fd_step(t: f64) -> f64 {
    1e-5 * t.abs().max(1.0)
}

/// Compares `a(t) I'(t)` with `A(t) I(t)` for periods computed by
/// quadrature, with `I'` from central differences.
pub fn residual_check(
    sys: &PFSystem,
    t_samples: &[f64],
    choice: &CycleChoice,
) -> Result<ResidualReport, NumericsError> {
    let ctx = CycleContext::new(&sys.hamiltonian)?;
    residual_check_with(&ctx, sys, t_samples, choice)
}

pub fn residual_check_with(
    ctx: &CycleContext,
    sys: &PFSystem,
    t_samples: &[f64],
    choice: &CycleChoice,
) -> Result<ResidualReport, NumericsError> {
    let mut samples = Vec::new();
    let mut cycles = Vec::new();
    let n = sys.dim();
    for &t in t_samples {
        let tc = Complex64::new(t, 0.0);
        let desc = resolve_cycle(ctx, tc, choice, &sys.forms)?;
        let h = fd_step(t);
        let mid = periods_on(ctx, tc, &desc, &sys.forms, 1e-14)?;
        let plus = periods_on(ctx, Complex64::new(t + h, 0.0), &desc, &sys.forms, 1e-14)?;
        let minus = periods_on(ctx, Complex64::new(t - h, 0.0), &desc, &sys.forms, 1e-14)?;
        let (a, m) = sys.system.eval(tc);
        let mut num = 0.0f64;
        let mut den = 0.0f64;
        for i in 0..n {
            let deriv = (plus.periods[i] - minus.periods[i]) / (2.0 * h);
            let ai: Complex64 = (0..n).map(|j| m[i][j] * mid.periods[j]).sum();
            num += (a * deriv - ai).norm_sqr();
            den += ai.norm_sqr();
        }
        samples.push(ResidualSample {
            t,
            residual: num.sqrt() / (den.sqrt() + RESIDUAL_FLOOR),
            period_norm: mid.periods.iter().map(|p| p.norm_sqr()).sum::<f64>().sqrt(),
            quadrature_error: mid.error_estimate.max(plus.error_estimate).max(minus.error_estimate),
        });
        cycles.push(desc);
    }
    let max_residual = samples.iter().map(|s| s.residual).fold(0.0, f64::max);
    Ok(ResidualReport {
        samples,
        max_residual,
        cycles,
    })
}
