//! Closed cycles on the level curves `{H = t}`: real ovals traced along the
//! Hamiltonian flow, and complex cycles lifted from loops in the `y`-plane.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::dopri::{Dopri5, StepStats};
use super::NumericsError;
use crate::algebra::roots::aberth;
use crate::algebra::{resultant, CompiledPoly, MultiPoly, Var};
use crate::hamiltonian::{critical_values, Hamiltonian, SingularSet};

/// Quadrature nodes on a closed curve on `{H = t}`: points, derivatives
/// with respect to the curve parameter, and weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CyclePolyline {
    pub points: Vec<(Complex64, Complex64)>,
    pub tangents: Vec<(Complex64, Complex64)>,
    /// Quadrature weight of each point.
    pub weights: Vec<f64>,
    /// Total length of the parameter interval.
    pub param_length: f64,
    pub closure_gap: f64,
    pub level: Complex64,
}

impl CyclePolyline {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The same nodes traversed backwards.
    pub fn reversed(&self) -> CyclePolyline {
        let n = self.points.len();
        let idx = |i: usize| (n - i) % n;
        CyclePolyline {
            points: (0..n).map(|i| self.points[idx(i)]).collect(),
            tangents: (0..n)
                .map(|i| {
                    let (a, b) = self.tangents[idx(i)];
                    (-a, -b)
                })
                .collect(),
            weights: (0..n).map(|i| self.weights[idx(i)]).collect(),
            param_length: self.param_length,
            closure_gap: self.closure_gap,
            level: self.level,
        }
    }

    /// Largest `|H(p) - t|` over the points.
    pub fn level_error(&self, h: &Hamiltonian) -> f64 {
        let ch = CompiledPoly::new(h.poly());
        let zero = Complex64::new(0.0, 0.0);
        self.points
            .iter()
            .map(|&(x, y)| (ch.eval(x, y, zero) - self.level).norm())
            .fold(0.0, f64::max)
    }
}

/// A piece of a path in the `y`-plane, parametrized by `s` in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PathPiece {
    Segment {
        from: Complex64,
        to: Complex64,
    },
    /// Full counterclockwise circle around `center` through `start`.
    Circle {
        center: Complex64,
        start: Complex64,
    },
}

impl PathPiece {
    /// Point and derivative with respect to `s`.
    pub fn at(&self, s: f64) -> (Complex64, Complex64) {
        match *self {
            PathPiece::Segment { from, to } => (from + (to - from) * s, to - from),
            PathPiece::Circle { center, start } => {
                let r = (start - center) * Complex64::from_polar(1.0, 2.0 * PI * s);
                (center + r, r * Complex64::new(0.0, 2.0 * PI))
            }
        }
    }
}

/// Path from `base` to a circle around `center`, once around it, and back.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Lasso {
    pub base: Complex64,
    pub center: Complex64,
    pub radius: f64,
}

impl Lasso {
    pub fn pieces(&self) -> [PathPiece; 3] {
        let dir = (self.base - self.center) / (self.base - self.center).norm();
        let p = self.center + dir * self.radius;
        [
            PathPiece::Segment { from: self.base, to: p },
            PathPiece::Circle {
                center: self.center,
                start: p,
            },
            PathPiece::Segment { from: p, to: self.base },
        ]
    }
}

/// A concrete cycle family, reproducible at nearby levels.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CycleDescriptor {
    /// The real oval through the projection of `seed`.
    Oval { seed: [f64; 2] },
    /// The lift of the concatenated lassos, starting at the point of the
    /// fiber over their base nearest to `start`.
    Lassos { lassos: Vec<Lasso>, start: Complex64 },
}

/// Nodes on `[0, 1]` and weights summing to one.
pub fn gauss_legendre(q: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = Vec::with_capacity(q);
    let mut weights = Vec::with_capacity(q);
    for i in 0..q {
        let mut x = (PI * (i as f64 + 0.75) / (q as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=q {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = q as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes.push(0.5 * (1.0 - x));
        weights.push(1.0 / ((1.0 - x * x) * dp * dp));
    }
    (nodes, weights)
}

const GL_ORDER: usize = 16;

pub(crate) fn segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_sqr();
    if len2 == 0.0 {
        return (p - a).norm();
    }
    let s = ((p - a) * ab.conj()).re / len2;
    (p - (a + ab * s.clamp(0.0, 1.0))).norm()
}

/// Precomputed data for tracing cycles of one Hamiltonian.
#[derive(Clone, Debug)]
pub struct CycleContext {
    pub hamiltonian: Hamiltonian,
    pub singular: SingularSet,
    h: CompiledPoly,
    hx: CompiledPoly,
    hy: CompiledPoly,
    /// Coefficients of `H` as a polynomial in `x`, each a polynomial in `y`.
    x_coeffs: Vec<CompiledPoly>,
    /// Coefficients in `y` of `Res_x(H - t, H_x)`, each a polynomial in `t`.
    disc_coeffs: Vec<CompiledPoly>,
    /// Values of `y` over which some sheet escapes to infinity.
    escape: Vec<Complex64>,
}

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

impl CycleContext {
    pub fn new(h: &Hamiltonian) -> Result<Self, NumericsError> {
        let singular = critical_values(h)?;
        let hx = h.hx();
        let shifted = h.poly() - &MultiPoly::var(Var::T);
        let disc_coeffs = if h.poly().degree_in(Var::X) >= 2 {
            resultant(&shifted, &hx, Var::X)
                .map(|d| d.coefficients_in(Var::Y).iter().map(CompiledPoly::new).collect())
                .unwrap_or_default()
        } else {
            Vec::new()
        };
        let xc = h.poly().coefficients_in(Var::X);
        let lead: Vec<Complex64> = xc
            .last()
            .map(|l| {
                l.coefficients_in(Var::Y)
                    .iter()
                    .map(|c| {
                        c.as_constant()
                            .map(|r| crate::algebra::rational_to_f64(&r))
                            .unwrap_or(0.0)
                    })
                    .map(|v| Complex64::new(v, 0.0))
                    .collect()
            })
            .unwrap_or_default();
        Ok(CycleContext {
            hamiltonian: h.clone(),
            singular,
            h: CompiledPoly::new(h.poly()),
            hx: CompiledPoly::new(&hx),
            hy: CompiledPoly::new(&h.hy()),
            x_coeffs: xc.iter().map(CompiledPoly::new).collect(),
            disc_coeffs,
            escape: aberth(&lead),
        })
    }

    fn check_level(&self, t: Complex64) -> Result<(), NumericsError> {
        let margin = 1e-8 * t.norm().max(1.0);
        for r in &self.singular.critical_values {
            if (r.value - t).norm() <= r.radius + margin {
                return Err(NumericsError::NearCritical { t, critical: r.value });
            }
        }
        Ok(())
    }

    fn grad_real(&self, x: f64, y: f64) -> (f64, f64) {
        (self.hx.eval_real(x, y, 0.0), self.hy.eval_real(x, y, 0.0))
    }

    fn project_real(&self, t: f64, mut p: [f64; 2]) -> Option<[f64; 2]> {
        for _ in 0..100 {
            let v = self.h.eval_real(p[0], p[1], 0.0) - t;
            if v.abs() <= 1e-15 * t.abs().max(1.0) {
                return Some(p);
            }
            let (gx, gy) = self.grad_real(p[0], p[1]);
            let g2 = gx * gx + gy * gy;
            if g2 == 0.0 || !g2.is_finite() {
                return None;
            }
            p = [p[0] - v * gx / g2, p[1] - v * gy / g2];
        }
        let v = self.h.eval_real(p[0], p[1], 0.0) - t;
        (v.abs() <= 1e-11 * t.abs().max(1.0)).then_some(p)
    }

    /// Bounding box half-width for tracing ovals at level `t`.
    pub fn bounding_box(&self, t: f64) -> f64 {
        let d = self.hamiltonian.degree() as f64;
        (4.0 * (1.0 + t.abs()).powf(1.0 / d)).max(10.0)
    }

    /// The real oval of `{H = t}` through the gradient projection of `seed`,
    /// oriented as the boundary of `{H < t}`, sampled at `n` points equally
    /// spaced in the Hamiltonian time.
    pub fn trace_oval(&self, t: f64, seed: [f64; 2], n: usize) -> Result<CyclePolyline, NumericsError> {
        let tc = Complex64::new(t, 0.0);
        self.check_level(tc)?;
        let p0 = self.project_real(t, seed).ok_or(NumericsError::DegenerateSeed)?;
        let bbox = self.bounding_box(t);
        let (gx, gy) = self.grad_real(p0[0], p0[1]);
        if gx.hypot(gy) < 1e-12 {
            return Err(NumericsError::DegenerateSeed);
        }
        let solver = Dopri5 {
            rtol: 1e-13,
            atol: 1e-15,
            max_steps: 2_000_000,
        };
        let mut field = |_s: f64, z: &[Complex64]| {
            let (gx, gy) = self.grad_real(z[0].re, z[1].re);
            vec![Complex64::new(-gy, 0.0), Complex64::new(gx, 0.0)]
        };
        let v0 = (-gy, gx);
        let section = |z: &[Complex64]| (z[0].re - p0[0]) * v0.0 + (z[1].re - p0[1]) * v0.1;
        let start = vec![Complex64::new(p0[0], 0.0), Complex64::new(p0[1], 0.0)];
        let mut stats = StepStats::default();
        let mut s = 0.0;
        let mut z = start.clone();
        let mut max_dist = 0.0f64;
        let mut was_negative = false;
        let speed0 = gx.hypot(gy);
        let period = loop {
            let (gx, gy) = self.grad_real(z[0].re, z[1].re);
            let speed = gx.hypot(gy).max(1e-3 * speed0);
            let chunk = 0.02 * (p0[0].hypot(p0[1])).max(0.1) / speed;
            let next = solver
                .integrate(&mut field, s, &z, s + chunk, &mut stats)
                .map_err(|_| NumericsError::NotCompactComponent { t })?;
            if next[0].re.abs() > bbox || next[1].re.abs() > bbox || s > 1e6 / speed0.max(1e-300) {
                return Err(NumericsError::NotCompactComponent { t });
            }
            let dist = (next[0].re - p0[0]).hypot(next[1].re - p0[1]);
            max_dist = max_dist.max(dist);
            let g_old = section(&z);
            let g_new = section(&next);
            if g_new < 0.0 {
                was_negative = true;
            }
            if was_negative && g_old < 0.0 && g_new >= 0.0 && dist < 0.25 * max_dist {
                let (mut lo, mut hi) = (0.0, chunk);
                for _ in 0..80 {
                    let mid = 0.5 * (lo + hi);
                    let mut st = StepStats::default();
                    let zm = solver
                        .integrate(&mut field, s, &z, s + mid, &mut st)
                        .map_err(|_| NumericsError::NotCompactComponent { t })?;
                    if section(&zm) < 0.0 {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                break s + 0.5 * (lo + hi);
            }
            s += chunk;
            z = next;
        };
        let n = n.max(8);
        let dt = period / n as f64;
        let mut points = Vec::with_capacity(n);
        let mut tangents = Vec::with_capacity(n);
        let mut z = start.clone();
        let mut stats = StepStats::default();
        for k in 0..n {
            let p = self.project_real(t, [z[0].re, z[1].re]).unwrap_or([z[0].re, z[1].re]);
            let (gx, gy) = self.grad_real(p[0], p[1]);
            points.push((Complex64::new(p[0], 0.0), Complex64::new(p[1], 0.0)));
            tangents.push((Complex64::new(-gy, 0.0), Complex64::new(gx, 0.0)));
            z = solver
                .integrate(&mut field, k as f64 * dt, &z, (k + 1) as f64 * dt, &mut stats)
                .map_err(|_| NumericsError::NotCompactComponent { t })?;
        }
        let closure_gap = (z[0].re - p0[0]).hypot(z[1].re - p0[1]);
        Ok(CyclePolyline {
            points,
            tangents,
            weights: vec![dt; n],
            param_length: period,
            closure_gap,
            level: tc,
        })
    }

    /// Roots in `y` of the discriminant of `H - t` with respect to `x`.
    pub fn branch_points(&self, t: Complex64) -> Vec<Complex64> {
        let coeffs: Vec<Complex64> = self.disc_coeffs.iter().map(|c| c.eval(ZERO, ZERO, t)).collect();
        aberth(&coeffs)
    }

    fn special_points(&self, t: Complex64) -> (Vec<Complex64>, usize) {
        let mut pts = self.branch_points(t);
        let nb = pts.len();
        pts.extend(self.escape.iter().copied());
        (pts, nb)
    }

    /// Lassos from a common base point around every branch or escape point
    /// at level `t`, in the order branch points then escape points. Entries
    /// whose tails pass too close to another point are `None`.
    pub fn lassos(&self, t: Complex64) -> Vec<Option<Lasso>> {
        let (pts, _) = self.special_points(t);
        if pts.is_empty() {
            return Vec::new();
        }
        let mean = pts.iter().sum::<Complex64>() / pts.len() as f64;
        let spread = pts.iter().map(|p| (p - mean).norm()).fold(0.0, f64::max);
        let base = mean + Complex64::from_polar(spread + 0.5, -1.1);
        pts.iter()
            .enumerate()
            .map(|(k, &c)| {
                let nearest = pts
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != k)
                    .map(|(_, q)| (q - c).norm())
                    .fold((c - base).norm(), f64::min);
                let radius = 0.3 * nearest;
                if radius <= 1e-9 * (1.0 + spread) {
                    return None;
                }
                let lasso = Lasso {
                    base,
                    center: c,
                    radius,
                };
                let clear = pts.iter().enumerate().filter(|(j, _)| *j != k).all(|(_, &q)| {
                    lasso.pieces().iter().all(|piece| match *piece {
                        PathPiece::Segment { from, to } => segment_distance(q, from, to) > 1e-3 * (spread + 0.5),
                        PathPiece::Circle { .. } => true,
                    })
                });
                clear.then_some(lasso)
            })
            .collect()
    }

    fn track_piece(&self, x: Complex64, piece: &PathPiece, s0: f64, s1: f64, t: Complex64) -> Option<Complex64> {
        let chords = match piece {
            PathPiece::Segment { .. } => 1,
            PathPiece::Circle { .. } => (((s1 - s0) * 64.0).ceil() as usize).max(1),
        };
        let mut x = x;
        for c in 0..chords {
            let a = s0 + (s1 - s0) * c as f64 / chords as f64;
            let b = s0 + (s1 - s0) * (c + 1) as f64 / chords as f64;
            x = self.track(x, piece.at(a).0, piece.at(b).0, t)?;
        }
        Some(x)
    }

    /// Sheet permutation of the fiber over the base point (as sorted by
    /// [`CycleContext::fiber`]) induced by lifting `lasso`.
    pub fn monodromy(&self, t: Complex64, lasso: &Lasso) -> Result<Vec<usize>, NumericsError> {
        let fiber = self.fiber(lasso.base, t);
        let mut perm = Vec::with_capacity(fiber.len());
        for &x0 in &fiber {
            let mut x = x0;
            for piece in lasso.pieces() {
                x = self
                    .track_piece(x, &piece, 0.0, 1.0, t)
                    .ok_or(NumericsError::LiftFailed { t })?;
            }
            let j = nearest(&fiber, x).ok_or(NumericsError::LiftFailed { t })?;
            perm.push(j);
        }
        Ok(perm)
    }

    /// Closed cycles at level `t`: pairs of lassos inducing the same
    /// transposition, lifted from the first sheet they move, followed by
    /// single lassos around escape points lifted from sheets they fix.
    pub fn candidate_cycles(&self, t: Complex64) -> Result<Vec<CycleDescriptor>, NumericsError> {
        self.check_level(t)?;
        let (_, nb) = self.special_points(t);
        let lassos = self.lassos(t);
        let mut perms = Vec::with_capacity(lassos.len());
        for l in &lassos {
            perms.push(match l {
                Some(l) => Some(self.monodromy(t, l)?),
                None => None,
            });
        }
        let Some(base) = lassos.iter().flatten().next().map(|l| l.base) else {
            return Ok(Vec::new());
        };
        let fiber = self.fiber(base, t);
        let mut out = Vec::new();
        for k in 0..lassos.len() {
            for l in k + 1..lassos.len() {
                let (Some(pk), Some(pl)) = (&perms[k], &perms[l]) else {
                    continue;
                };
                if pk != pl {
                    continue;
                }
                if let Some(i) = (0..pk.len()).find(|&i| pk[i] != i) {
                    out.push(CycleDescriptor::Lassos {
                        lassos: vec![lassos[k].unwrap(), lassos[l].unwrap()],
                        start: fiber[i],
                    });
                }
            }
        }
        for k in nb..lassos.len() {
            if let (Some(l), Some(p)) = (&lassos[k], &perms[k]) {
                for i in (0..p.len()).filter(|&i| p[i] == i) {
                    out.push(CycleDescriptor::Lassos {
                        lassos: vec![*l],
                        start: fiber[i],
                    });
                }
            }
        }
        Ok(out)
    }

    /// Roots `x` of `H(x, y) = t`, sorted by real then imaginary part.
    pub fn fiber(&self, y: Complex64, t: Complex64) -> Vec<Complex64> {
        let mut c: Vec<Complex64> = self.x_coeffs.iter().map(|p| p.eval(ZERO, y, ZERO)).collect();
        if let Some(c0) = c.first_mut() {
            *c0 -= t;
        }
        let mut r: Vec<Complex64> = aberth(&c)
            .into_iter()
            .map(|x| self.newton_x(x, y, t).unwrap_or(x))
            .collect();
        r.sort_by(|a, b| {
            a.re.partial_cmp(&b.re)
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.im.partial_cmp(&b.im).unwrap_or(std::cmp::Ordering::Equal))
        });
        r
    }

    fn newton_x(&self, mut x: Complex64, y: Complex64, t: Complex64) -> Option<Complex64> {
        for it in 0..30 {
            let f = self.h.eval(x, y, ZERO) - t;
            let df = self.hx.eval(x, y, ZERO);
            if df.norm() == 0.0 {
                return None;
            }
            let dx = f / df;
            x -= dx;
            if dx.norm() <= 1e-15 * (1.0 + x.norm()) {
                return Some(x);
            }
            if it > 20 && dx.norm() > 1e-9 * (1.0 + x.norm()) {
                return None;
            }
        }
        Some(x)
    }

    /// Follows the root `x` of `H(., y) = t` as `y` moves from `ya` to `yb`.
    fn track(&self, x: Complex64, ya: Complex64, yb: Complex64, t: Complex64) -> Option<Complex64> {
        let mut x = x;
        let mut s = 0.0f64;
        let mut ds = 1.0f64;
        let mut guard = 0;
        while s < 1.0 {
            guard += 1;
            if guard > 10_000 || ds < 1e-12 {
                return None;
            }
            let step = ds.min(1.0 - s);
            let y0 = ya + (yb - ya) * s;
            let y1 = ya + (yb - ya) * (s + step);
            let hx = self.hx.eval(x, y0, ZERO);
            let hy = self.hy.eval(x, y0, ZERO);
            let pred = x - hy / hx * (y1 - y0);
            let mut xn = pred;
            let mut ok = false;
            let mut first = f64::INFINITY;
            for it in 0..8 {
                let f = self.h.eval(xn, y1, ZERO) - t;
                let df = self.hx.eval(xn, y1, ZERO);
                let dx = f / df;
                if it == 0 {
                    first = dx.norm();
                }
                xn -= dx;
                if !xn.is_finite() {
                    break;
                }
                if dx.norm() <= 1e-14 * (1.0 + xn.norm()) {
                    ok = true;
                    break;
                }
            }
            let moved = (pred - x).norm();
            if ok && first <= 0.05 * moved.max(1e-12 * (1.0 + x.norm())) + 1e-13 {
                x = xn;
                s += step;
                ds = (step * 1.5).min(1.0);
            } else {
                ds = step * 0.25;
            }
        }
        Some(x)
    }

    /// Lifts the concatenation of `lassos` to `{H = t}` from the fiber point
    /// nearest to `start`, with `panels` Gauss-Legendre panels per piece.
    pub fn lift_lassos(
        &self,
        t: Complex64,
        lassos: &[Lasso],
        start: Complex64,
        panels: usize,
    ) -> Result<CyclePolyline, NumericsError> {
        self.check_level(t)?;
        let base = lassos.first().ok_or(NumericsError::NoCycle { t })?.base;
        let fiber = self.fiber(base, t);
        let x0 = fiber[nearest(&fiber, start).ok_or(NumericsError::LiftFailed { t })?];
        let (gn, gw) = gauss_legendre(GL_ORDER);
        let panels = panels.max(1);
        let mut points = Vec::new();
        let mut tangents = Vec::new();
        let mut weights = Vec::new();
        let mut x = x0;
        for lasso in lassos {
            for piece in lasso.pieces() {
                let mut s_prev = 0.0;
                for p in 0..panels {
                    for (&u, &w) in gn.iter().zip(&gw) {
                        let s = (p as f64 + u) / panels as f64;
                        x = self
                            .track_piece(x, &piece, s_prev, s, t)
                            .ok_or(NumericsError::LiftFailed { t })?;
                        s_prev = s;
                        let (y, dy) = piece.at(s);
                        let dx = -self.hy.eval(x, y, ZERO) / self.hx.eval(x, y, ZERO) * dy;
                        points.push((x, y));
                        tangents.push((dx, dy));
                        weights.push(w / panels as f64);
                    }
                }
                x = self
                    .track_piece(x, &piece, s_prev, 1.0, t)
                    .ok_or(NumericsError::LiftFailed { t })?;
            }
        }
        let closure_gap = (x - x0).norm();
        let sep = fiber
            .iter()
            .map(|r| (r - x0).norm())
            .filter(|&d| d > 0.0)
            .fold(f64::INFINITY, f64::min);
        if closure_gap > 1e-6 * (1.0 + x0.norm()) || closure_gap > 0.01 * sep {
            return Err(NumericsError::OpenLift { t });
        }
        Ok(CyclePolyline {
            points,
            tangents,
            weights,
            param_length: (3 * lassos.len()) as f64,
            closure_gap,
            level: t,
        })
    }

    /// Builds the cycle described by `desc` at level `t`; `refinement`
    /// doubles the number of quadrature nodes per step.
    pub fn build(&self, t: Complex64, desc: &CycleDescriptor, refinement: u32) -> Result<CyclePolyline, NumericsError> {
        match desc {
            CycleDescriptor::Oval { seed } => {
                if t.im != 0.0 {
                    return Err(NumericsError::ComplexLevelForOval { t });
                }
                self.trace_oval(t.re, *seed, 64 << refinement)
            }
            CycleDescriptor::Lassos { lassos, start } => self.lift_lassos(t, lassos, *start, 1 << refinement),
        }
    }
}

fn nearest(values: &[Complex64], x: Complex64) -> Option<usize> {
    values
        .iter()
        .enumerate()
        .min_by(|a, b| {
            (a.1 - x)
                .norm()
                .partial_cmp(&(b.1 - x).norm())
                .unwrap_or(std::cmp::Ordering::Equal)
        })
        .map(|(i, _)| i)
}

/// Traces the real oval of `{H = t}` through (the projection of) `seed`.
pub fn trace_cycle(h: &Hamiltonian, t: f64, seed: [f64; 2]) -> Result<CyclePolyline, NumericsError> {
    CycleContext::new(h)?.trace_oval(t, seed, 256)
}
