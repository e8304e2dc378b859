//! Numeric root finding for univariate polynomials.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{f64_to_rational, rational_to_f64, Rational, UniPoly};

/// A root approximation together with a disc radius that contains an exact
/// root, and the multiplicity of the squarefree factor it came from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct IsolatedRoot {
    pub value: Complex64,
    pub radius: f64,
    pub multiplicity: usize,
}

/// Minimal isolation radius reported.
pub const MIN_RADIUS: f64 = 1e-10;

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

fn trim(coeffs: &[Complex64]) -> &[Complex64] {
    let mut n = coeffs.len();
    while n > 0 && coeffs[n - 1] == Complex64::new(0.0, 0.0) {
        n -= 1;
    }
    &coeffs[..n]
}

/// All complex roots of `sum coeffs[k] z^k` by the Aberth-Ehrlich iteration.
pub fn aberth(coeffs: &[Complex64]) -> Vec<Complex64> {
    let c = trim(coeffs);
    if c.len() <= 1 {
        return Vec::new();
    }
    let n = c.len() - 1;
    let lead = c[n].norm();
    // Fujiwara-type bound for the root moduli
    let bound = (0..n)
        .map(|k| (c[k].norm() / lead).powf(1.0 / (n - k) as f64))
        .fold(0.0f64, f64::max)
        .max(1e-3);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| {
            let ang = 2.0 * std::f64::consts::PI * k as f64 / n as f64 + 0.4;
            Complex64::from_polar(0.5 * bound, ang)
        })
        .collect();
    aberth_refine(c, &mut z, 500);
    z
}

/// Aberth iteration from the given starting points; returns whether the
/// corrections became negligible.
pub fn aberth_refine(coeffs: &[Complex64], z: &mut [Complex64], max_iter: usize) -> bool {
    let c = trim(coeffs);
    let n = z.len();
    if n == 0 {
        return true;
    }
    for _ in 0..max_iter {
        let mut max_rel = 0.0f64;
        for i in 0..n {
            let (p, dp) = horner(c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..n {
                if j != i {
                    let d = z[i] - z[j];
                    if d.norm() > 0.0 {
                        s += d.inv();
                    }
                }
            }
            let w = ratio / (Complex64::new(1.0, 0.0) - ratio * s);
            if w.is_finite() {
                z[i] -= w;
                max_rel = max_rel.max(w.norm() / z[i].norm().max(1e-300));
            }
        }
        if max_rel < 1e-15 {
            return true;
        }
    }
    false
}

/// Radius of a disc around `z` guaranteed to contain a root of `coeffs`
/// (degree `n`): `n (|p(z)| + rounding) / |p'(z)|`.
pub fn inclusion_radius(coeffs: &[Complex64], z: Complex64) -> f64 {
    let c = trim(coeffs);
    let n = c.len().saturating_sub(1).max(1) as f64;
    let (p, dp) = horner(c, z);
    let scale: f64 = c
        .iter()
        .enumerate()
        .map(|(k, a)| a.norm() * z.norm().powi(k as i32))
        .sum();
    let err = 4.0 * n * f64::EPSILON * scale;
    if dp.norm() == 0.0 {
        return f64::INFINITY;
    }
    n * (p.norm() + err) / dp.norm()
}

fn newton_polish(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut z = z;
    for _ in 0..4 {
        let (p, dp) = horner(coeffs, z);
        if dp.norm() == 0.0 {
            break;
        }
        let step = p / dp;
        if !step.is_finite() {
            break;
        }
        let next = z - step;
        if horner(coeffs, next).0.norm() >= p.norm() {
            break;
        }
        z = next;
    }
    z
}

/// `p(z)` and `p'(z)` evaluated exactly at the binary point `z`, rounded at the end.
fn exact_horner(p: &UniPoly, z: Complex64) -> Option<(Complex64, Complex64)> {
    let zr = f64_to_rational(z.re)?;
    let zi = f64_to_rational(z.im)?;
    let zero = Rational::from_integer(0.into());
    let (mut pr, mut pi) = (zero.clone(), zero.clone());
    let (mut dr, mut di) = (zero.clone(), zero);
    for c in p.coeffs().iter().rev() {
        let nr = &dr * &zr - &di * &zi + &pr;
        let ni = &dr * &zi + &di * &zr + &pi;
        dr = nr;
        di = ni;
        let nr = &pr * &zr - &pi * &zi + c;
        let ni = &pr * &zi + &pi * &zr;
        pr = nr;
        pi = ni;
    }
    let f = |r: &Rational| rational_to_f64(r);
    Some((Complex64::new(f(&pr), f(&pi)), Complex64::new(f(&dr), f(&di))))
}

fn exact_polish(p: &UniPoly, z: Complex64) -> (Complex64, f64) {
    let n = p.degree().max(1) as f64;
    let radius_at = |v: Complex64, dv: Complex64| {
        if dv.norm() == 0.0 {
            f64::INFINITY
        } else {
            n * v.norm() / dv.norm() * (1.0 + 1e-12)
        }
    };
    let Some((mut v, mut dv)) = exact_horner(p, z) else {
        return (z, f64::INFINITY);
    };
    let mut z = z;
    for _ in 0..8 {
        if v.norm() == 0.0 || dv.norm() == 0.0 {
            break;
        }
        let next = z - v / dv;
        if !next.is_finite() || next == z {
            break;
        }
        let Some((nv, ndv)) = exact_horner(p, next) else { break };
        if nv.norm() >= v.norm() {
            break;
        }
        z = next;
        v = nv;
        dv = ndv;
    }
    (z, radius_at(v, dv))
}

/// Complex roots of an exact polynomial, grouped by squarefree factor and
/// merged when their discs overlap.
pub fn isolate_roots(p: &UniPoly) -> Vec<IsolatedRoot> {
    let mut out: Vec<IsolatedRoot> = Vec::new();
    for (factor, mult) in p.squarefree_decomposition() {
        let c: Vec<Complex64> = factor.to_f64().into_iter().map(|v| Complex64::new(v, 0.0)).collect();
        for z in aberth(&c) {
            let z = newton_polish(&c, z);
            let (z, exact_r) = exact_polish(&factor, z);
            let r = if exact_r.is_finite() {
                exact_r
            } else {
                inclusion_radius(&c, z)
            }
            .max(MIN_RADIUS);
            out.push(IsolatedRoot {
                value: z,
                radius: r,
                multiplicity: mult,
            });
        }
    }
    merge_overlapping(out)
}

fn merge_overlapping(mut roots: Vec<IsolatedRoot>) -> Vec<IsolatedRoot> {
    let mut merged = true;
    while merged {
        merged = false;
        'outer: for i in 0..roots.len() {
            for j in i + 1..roots.len() {
                let (a, b) = (roots[i], roots[j]);
                if (a.value - b.value).norm() <= a.radius + b.radius {
                    let w = (a.multiplicity + b.multiplicity) as f64;
                    let center = (a.value * a.multiplicity as f64 + b.value * b.multiplicity as f64) / w;
                    let radius = ((center - a.value).norm() + a.radius).max((center - b.value).norm() + b.radius);
                    roots[i] = IsolatedRoot {
                        value: center,
                        radius,
                        multiplicity: a.multiplicity + b.multiplicity,
                    };
                    roots.remove(j);
                    merged = true;
                    break 'outer;
                }
            }
        }
    }
    roots.sort_by(|a, b| {
        a.value
            .re
            .partial_cmp(&b.value.re)
            .unwrap_or(std::cmp::Ordering::Equal)
            .then(a.value.im.partial_cmp(&b.value.im).unwrap_or(std::cmp::Ordering::Equal))
    });
    roots
}
