//! Argument-principle zero counting along closed contours.

use std::f64::consts::PI;

use num_complex::Complex64;

use super::ZeroCountError;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WindingOptions {
    pub initial_samples: usize,
    pub max_samples: usize,
    /// Samples with `|f|` below this fraction of the largest initial sample
    /// count as zeros on the contour.
    pub relative_floor: f64,
}

impl Default for WindingOptions {
    fn default() -> Self {
        WindingOptions {
            initial_samples: 64,
            max_samples: 1 << 20,
            relative_floor: 1e-12,
        }
    }
}

/// Largest accepted phase increment between neighbouring samples.
pub const MAX_INCREMENT: f64 = PI / 2.0;

/// Largest accepted distance of the total turn count from an integer.
pub const MAX_RESIDUAL: f64 = 0.25;

/// Winding number around the origin of `s -> f(s)`, `s` in `[0, 1]`, for a
/// closed contour (`f(0) = f(1)`). Intervals whose phase increment reaches
/// `pi/2` are bisected by calling `f` again.
pub fn winding_count<F: FnMut(f64) -> Complex64>(mut f: F, opts: &WindingOptions) -> Result<i64, ZeroCountError> {
    let n0 = opts.initial_samples.max(4);
    let mut pts: Vec<(f64, Complex64)> = (0..=n0)
        .map(|k| {
            let s = k as f64 / n0 as f64;
            (s, f(s))
        })
        .collect();
    let scale = pts.iter().map(|p| p.1.norm()).fold(0.0, f64::max);
    let floor = opts.relative_floor * scale;
    let check = |s: f64, v: Complex64| {
        if !(v.norm() > floor) || !v.is_finite() {
            Err(ZeroCountError::ZeroOnContour { at: s })
        } else {
            Ok(())
        }
    };
    for &(s, v) in &pts {
        check(s, v)?;
    }
    let mut total = 0.0;
    let mut stack: Vec<((f64, Complex64), (f64, Complex64))> = pts.windows(2).rev().map(|w| (w[0], w[1])).collect();
    pts.clear();
    let mut count = n0;
    while let Some((a, b)) = stack.pop() {
        let inc = (b.1 / a.1).arg();
        if inc.abs() < MAX_INCREMENT {
            total += inc;
            continue;
        }
        count += 1;
        if count > opts.max_samples || b.0 - a.0 < 1e-15 {
            return Err(ZeroCountError::Inconclusive { residual: 0.5 });
        }
        let sm = 0.5 * (a.0 + b.0);
        let vm = f(sm);
        check(sm, vm)?;
        stack.push(((sm, vm), b));
        stack.push((a, (sm, vm)));
    }
    let turns = total / (2.0 * PI);
    let rounded = turns.round();
    let residual = (turns - rounded).abs();
    if residual >= MAX_RESIDUAL {
        return Err(ZeroCountError::Inconclusive { residual });
    }
    Ok(rounded as i64)
}

/// Winding number of a closed sequence of samples (the last sample is
/// joined back to the first). Fails with `Inconclusive` when some phase
/// increment reaches `pi/2`, so the caller can resample more densely.
pub fn winding_from_samples(values: &[Complex64], relative_floor: f64) -> Result<i64, ZeroCountError> {
    if values.is_empty() {
        return Ok(0);
    }
    let scale = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let n = values.len();
    for (k, v) in values.iter().enumerate() {
        if !(v.norm() > relative_floor * scale) || !v.is_finite() {
            return Err(ZeroCountError::ZeroOnContour {
                at: k as f64 / n as f64,
            });
        }
    }
    let mut total = 0.0;
    for k in 0..n {
        let inc = (values[(k + 1) % n] / values[k]).arg();
        if inc.abs() >= MAX_INCREMENT {
            return Err(ZeroCountError::Inconclusive { residual: 0.5 });
        }
        total += inc;
    }
    let turns = total / (2.0 * PI);
    let residual = (turns - turns.round()).abs();
    if residual >= MAX_RESIDUAL {
        return Err(ZeroCountError::Inconclusive { residual });
    }
    Ok(turns.round() as i64)
}

/// Winding number of `f` along the closed polygon through `vertices`.
pub fn winding_on_polygon<F: FnMut(Complex64) -> Complex64>(
    vertices: &[Complex64],
    mut f: F,
    opts: &WindingOptions,
) -> Result<i64, ZeroCountError> {
    let n = vertices.len();
    if n < 2 {
        return Ok(0);
    }
    let lens: Vec<f64> = (0..n).map(|i| (vertices[(i + 1) % n] - vertices[i]).norm()).collect();
    let total: f64 = lens.iter().sum();
    let point = move |s: f64| {
        let mut target = s.clamp(0.0, 1.0) * total;
        for i in 0..n {
            if target <= lens[i] || i == n - 1 {
                let u = if lens[i] > 0.0 {
                    (target / lens[i]).min(1.0)
                } else {
                    0.0
                };
                return vertices[i] + (vertices[(i + 1) % n] - vertices[i]) * u;
            }
            target -= lens[i];
        }
        vertices[0]
    };
    winding_count(|s| f(point(s)), opts)
}

/// Winding number of `f` along the circle `|t - center| = radius`.
pub fn winding_on_circle<F: FnMut(Complex64) -> Complex64>(
    center: Complex64,
    radius: f64,
    mut f: F,
    opts: &WindingOptions,
) -> Result<i64, ZeroCountError> {
    winding_count(|s| f(center + Complex64::from_polar(radius, 2.0 * PI * s)), opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn double_zero() {
        let o = WindingOptions::default();
        assert_eq!(
            winding_on_circle(c(1.0, 0.0), 0.5, |t| (t - 1.0) * (t - 1.0), &o).unwrap(),
            2
        );
    }

    #[test]
    fn linear_period_outside() {
        let o = WindingOptions::default();
        assert_eq!(winding_on_circle(c(1.0, 0.0), 0.4, |t| t * PI, &o).unwrap(), 0);
        assert_eq!(winding_on_circle(c(0.0, 0.0), 1.0, |t| t, &o).unwrap(), 1);
    }

    #[test]
    fn sampled_values() {
        let pts: Vec<Complex64> = (0..32)
            .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 32.0))
            .collect();
        let sq: Vec<Complex64> = pts.iter().map(|z| z * z).collect();
        assert_eq!(winding_from_samples(&sq, 1e-12).unwrap(), 2);
        let coarse: Vec<Complex64> = pts.iter().step_by(8).map(|z| z.powi(3)).collect();
        assert!(matches!(
            winding_from_samples(&coarse, 1e-12),
            Err(ZeroCountError::Inconclusive { .. })
        ));
    }

    #[test]
    fn zero_on_contour() {
        let o = WindingOptions::default();
        assert!(matches!(
            winding_on_circle(c(0.0, 0.0), 1.0, |t| t - 1.0, &o),
            Err(ZeroCountError::ZeroOnContour { .. })
        ));
    }

    #[test]
    fn poles_count_negatively() {
        let o = WindingOptions::default();
        assert_eq!(
            winding_on_circle(c(0.0, 0.0), 1.0, |t| (t - 0.5) / (t * t * t), &o).unwrap(),
            -2
        );
    }

    #[test]
    fn halving_the_step_is_stable() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let coarse = WindingOptions {
            initial_samples: 16,
            ..WindingOptions::default()
        };
        let fine = WindingOptions {
            initial_samples: 32,
            ..WindingOptions::default()
        };
        for _ in 0..50 {
            let zeros: Vec<Complex64> = (0..rng.gen_range(0..=5))
                .map(|_| c(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)))
                .collect();
            let poles: Vec<Complex64> = (0..rng.gen_range(0..=2))
                .map(|_| c(rng.gen_range(-1.5..1.5), rng.gen_range(-1.5..1.5)))
                .collect();
            if zeros.iter().chain(&poles).any(|z| (z.norm() - 1.0).abs() < 0.05) {
                continue;
            }
            let f = |t: Complex64| {
                zeros.iter().map(|z| t - z).product::<Complex64>() / poles.iter().map(|p| t - p).product::<Complex64>()
            };
            let truth = zeros.iter().filter(|z| z.norm() < 1.0).count() as i64
                - poles.iter().filter(|p| p.norm() < 1.0).count() as i64;
            let a = winding_on_circle(c(0.0, 0.0), 1.0, f, &coarse).unwrap();
            let b = winding_on_circle(c(0.0, 0.0), 1.0, f, &fine).unwrap();
            assert_eq!(a, truth);
            assert_eq!(a, b);
        }
    }
}
