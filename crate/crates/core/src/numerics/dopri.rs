//! Dormand-Prince 5(4) integrator for complex-valued systems with a real
//! independent variable.

use num_complex::Complex64;

const C: [f64; 7] = [0.0, 0.2, 0.3, 0.8, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [0.2, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Dopri5 {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for Dopri5 {
    fn default() -> Self {
        Dopri5 {
            rtol: 1e-10,
            atol: 1e-14,
            max_steps: 1_000_000,
        }
    }
}

/// Counters accumulated over one or more integrations.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct StepStats {
    pub accepted: usize,
    pub rejected: usize,
    /// Sum of accepted local error estimates, in the scaled norm.
    pub error_sum: f64,
    /// Last accepted step size, reused as the next initial guess.
    pub last_step: f64,
}

/// The step size collapsed, at the given value of the independent variable.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StepFailure {
    pub at: f64,
}

fn axpy(y: &[Complex64], h: f64, ks: &[Vec<Complex64>], coeffs: &[f64]) -> Vec<Complex64> {
    let mut out = y.to_vec();
    for (k, &c) in ks.iter().zip(coeffs) {
        if c != 0.0 {
            for (o, v) in out.iter_mut().zip(k) {
                *o += v * (h * c);
            }
        }
    }
    out
}

impl Dopri5 {
    /// One step of size `h`; returns the fifth-order solution and the
    /// embedded error vector.
    pub fn step<F>(&self, f: &mut F, s: f64, y: &[Complex64], h: f64) -> (Vec<Complex64>, Vec<Complex64>)
    where
        F: FnMut(f64, &[Complex64]) -> Vec<Complex64>,
    {
        let mut ks: Vec<Vec<Complex64>> = Vec::with_capacity(7);
        ks.push(f(s, y));
        for i in 1..7 {
            let yi = axpy(y, h, &ks, &A[i][..i]);
            ks.push(f(s + C[i] * h, &yi));
        }
        let ynew = axpy(y, h, &ks[..6], &A[6]);
        let mut err = vec![Complex64::new(0.0, 0.0); y.len()];
        for (k, &e) in ks.iter().zip(&E) {
            for (o, v) in err.iter_mut().zip(k) {
                *o += v * (h * e);
            }
        }
        (ynew, err)
    }

    fn error_norm(&self, y: &[Complex64], ynew: &[Complex64], err: &[Complex64]) -> f64 {
        y.iter()
            .zip(ynew)
            .zip(err)
            .map(|((a, b), e)| e.norm() / (self.atol + self.rtol * a.norm().max(b.norm())))
            .fold(0.0, f64::max)
    }

    /// Integrates from `s0` to `s1` (either direction).
    pub fn integrate<F>(
        &self,
        f: &mut F,
        s0: f64,
        y0: &[Complex64],
        s1: f64,
        stats: &mut StepStats,
    ) -> Result<Vec<Complex64>, StepFailure>
    where
        F: FnMut(f64, &[Complex64]) -> Vec<Complex64>,
    {
        let span = s1 - s0;
        if span == 0.0 {
            return Ok(y0.to_vec());
        }
        let dir = span.signum();
        let mut s = s0;
        let mut y = y0.to_vec();
        let mut h = if stats.last_step > 0.0 {
            stats.last_step.min(span.abs())
        } else {
            span.abs() * 1e-2
        };
        let h_min = 1e-14 * span.abs().max(s0.abs()).max(1e-300);
        let mut steps = 0usize;
        while (s1 - s) * dir > 0.0 {
            steps += 1;
            if steps > self.max_steps || h < h_min {
                return Err(StepFailure { at: s });
            }
            let last = h >= (s1 - s).abs();
            let hs = if last { s1 - s } else { h * dir };
            let (ynew, err) = self.step(f, s, &y, hs);
            let en = self.error_norm(&y, &ynew, &err);
            if !en.is_finite() {
                h *= 0.2;
                stats.rejected += 1;
                continue;
            }
            let fac = if en == 0.0 {
                5.0
            } else {
                (0.9 * en.powf(-0.2)).clamp(0.2, 5.0)
            };
            if en <= 1.0 {
                s = if last { s1 } else { s + hs };
                y = ynew;
                stats.accepted += 1;
                stats.error_sum += en;
                stats.last_step = hs.abs();
                h = hs.abs() * fac;
            } else {
                stats.rejected += 1;
                h = hs.abs() * fac.min(1.0);
            }
        }
        Ok(y)
    }
}
