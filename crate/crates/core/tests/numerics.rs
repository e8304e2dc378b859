use std::f64::consts::PI;

use num_complex::Complex64;
use pfzero_core::algebra::{rat, Monomial, MultiPoly, UniPoly};
use pfzero_core::hamiltonian::Hamiltonian;
use pfzero_core::numerics::{
    integrate_pf_numeric, period_quadrature, periods_on, residual_check, resolve_cycle, trace_cycle,
    ContinuationOptions, CycleChoice, CycleContext, CycleDescriptor, NumericsError, PeriodSample,
};
use pfzero_core::petrov::{petrov_decompose, OneForm};
use pfzero_core::pfsystem::{assemble_pf_system, derive_scalar_ode};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn circle() -> Hamiltonian {
    Hamiltonian::parse("x^2 + y^2").unwrap()
}

fn start_at_one() -> PeriodSample {
    PeriodSample {
        t: c(1.0, 0.0),
        periods: vec![c(PI, 0.0)],
        error_estimate: 0.0,
    }
}

#[test]
fn continuation_along_real_axis() {
    let sys = assemble_pf_system(&circle()).unwrap();
    let path: Vec<Complex64> = (0..=6).map(|k| c(1.0 + 0.5 * k as f64, 0.0)).collect();
    let out = integrate_pf_numeric(&sys, &path, &start_at_one(), &ContinuationOptions::default()).unwrap();
    assert_eq!(out.len(), path.len());
    let last = out.last().unwrap();
    assert!((last.periods[0] - c(4.0 * PI, 0.0)).norm() < 1e-8);
    for s in &out {
        assert!(s.error_estimate.is_finite());
    }
}

#[test]
fn continuation_around_the_origin_closes() {
    let sys = assemble_pf_system(&circle()).unwrap();
    let path: Vec<Complex64> = (0..=64)
        .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 64.0))
        .collect();
    let out = integrate_pf_numeric(&sys, &path, &start_at_one(), &ContinuationOptions::default()).unwrap();
    assert!((out.last().unwrap().periods[0] - c(PI, 0.0)).norm() < 1e-8);
    let half = &out[32];
    assert!((half.periods[0] - c(-PI, 0.0)).norm() < 1e-8);
}

#[test]
fn path_through_pole_is_rejected() {
    let sys = assemble_pf_system(&circle()).unwrap();
    let path = [c(1.0, 0.0), c(-1.0, 0.0)];
    let r = integrate_pf_numeric(&sys, &path, &start_at_one(), &ContinuationOptions::default());
    assert!(matches!(r, Err(NumericsError::PathTooClose { segment: 0, .. })));
}

#[test]
fn circle_residuals() {
    let sys = assemble_pf_system(&circle()).unwrap();
    let report = residual_check(&sys, &[0.5, 1.0, 2.0], &CycleChoice::RealOval { seed: [1.0, 0.0] }).unwrap();
    assert_eq!(report.samples.len(), 3);
    assert!(report.max_residual < 1e-6, "{report:?}");
}

#[test]
fn residual_at_critical_value_fails() {
    let sys = assemble_pf_system(&circle()).unwrap();
    let r = residual_check(&sys, &[0.0], &CycleChoice::RealOval { seed: [1.0, 0.0] });
    assert!(matches!(r, Err(NumericsError::NearCritical { .. })));
}

#[test]
fn cubic_residuals_on_lifted_cycles() {
    let h = Hamiltonian::parse("x^3 - x*y^2 + y").unwrap();
    let sys = assemble_pf_system(&h).unwrap();
    let ts: Vec<f64> = (0..20).map(|k| 1.0 + 0.05 * k as f64).collect();
    let report = residual_check(&sys, &ts, &CycleChoice::Auto).unwrap();
    assert_eq!(report.samples.len(), 20);
    assert!(report.max_residual < 1e-6, "max residual {}", report.max_residual);
}

fn folium() -> Hamiltonian {
    Hamiltonian::parse("x^3 + y^3 - 3*x*y").unwrap()
}

#[test]
fn doubling_nodes_converges() {
    let h = folium();
    let sys = assemble_pf_system(&h).unwrap();
    let ctx = CycleContext::new(&h).unwrap();
    let desc = CycleDescriptor::Oval { seed: [1.3, 1.3] };
    let s = periods_on(&ctx, c(-0.5, 0.0), &desc, &sys.forms, 1e-13).unwrap();
    let size = s.periods.iter().map(|p| p.norm()).fold(0.0, f64::max);
    assert!(size > 1e-3);
    assert!(s.error_estimate < 1e-10 * size);
}

#[test]
fn continuation_matches_quadrature() {
    let h = folium();
    let sys = assemble_pf_system(&h).unwrap();
    let ctx = CycleContext::new(&h).unwrap();
    let desc = CycleDescriptor::Oval { seed: [1.3, 1.3] };
    let start = periods_on(&ctx, c(-0.8, 0.0), &desc, &sys.forms, 1e-13).unwrap();
    let path: Vec<Complex64> = (0..=6).map(|k| c(-0.8 + 0.1 * k as f64, 0.0)).collect();
    let out = integrate_pf_numeric(&sys, &path, &start, &ContinuationOptions::default()).unwrap();
    let direct = periods_on(&ctx, c(-0.2, 0.0), &desc, &sys.forms, 1e-13).unwrap();
    let got = &out.last().unwrap().periods;
    let err = got
        .iter()
        .zip(&direct.periods)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    let size = direct.periods.iter().map(|p| p.norm()).fold(0.0, f64::max);
    assert!(err < 1e-6 * size, "err {err} size {size}");
}

#[test]
fn complex_path_continuation_matches_quadrature() {
    let h = Hamiltonian::parse("x^3 - x*y^2 + y").unwrap();
    let sys = assemble_pf_system(&h).unwrap();
    let ctx = CycleContext::new(&h).unwrap();
    let t0 = c(1.0, 0.0);
    let desc = resolve_cycle(&ctx, t0, &CycleChoice::Auto, &sys.forms).unwrap();
    let start = periods_on(&ctx, t0, &desc, &sys.forms, 1e-13).unwrap();
    let t1 = c(1.05, 0.02);
    let out = integrate_pf_numeric(&sys, &[t0, t1], &start, &ContinuationOptions::default()).unwrap();
    let direct = periods_on(&ctx, t1, &desc, &sys.forms, 1e-13).unwrap();
    let err = out[1]
        .periods
        .iter()
        .zip(&direct.periods)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max);
    let size = direct.periods.iter().map(|p| p.norm()).fold(0.0, f64::max);
    assert!(err < 1e-6 * size, "err {err} size {size}");
}

#[test]
fn reversing_the_oval_negates_periods() {
    let h = folium();
    let sys = assemble_pf_system(&h).unwrap();
    let cyc = trace_cycle(&h, -0.5, [1.3, 1.3]).unwrap();
    let rev = cyc.reversed();
    for w in &sys.forms {
        let a = period_quadrature(&cyc, w);
        let b = period_quadrature(&rev, w);
        assert!((a + b).norm() <= 1e-12 * a.norm().max(1e-300));
    }
}

fn random_poly(rng: &mut ChaCha8Rng, deg: u32) -> MultiPoly {
    let mut terms = Vec::new();
    for i in 0..=deg {
        for j in 0..=(deg - i) {
            terms.push((Monomial::new(i, j, 0), rat(rng.gen_range(-5i64..=5), 1)));
        }
    }
    MultiPoly::from_terms(terms)
}

#[test]
fn petrov_bridge_exact_part_has_no_period() {
    let h = folium();
    let ctx = CycleContext::new(&h).unwrap();
    let sys = assemble_pf_system(&h).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let cycles = [
        ctx.build(c(-0.5, 0.0), &CycleDescriptor::Oval { seed: [1.3, 1.3] }, 2)
            .unwrap(),
        ctx.build(c(-0.3, 0.0), &CycleDescriptor::Oval { seed: [1.3, 1.3] }, 2)
            .unwrap(),
    ];
    for _ in 0..5 {
        let a = random_poly(&mut rng, 3);
        let b = random_poly(&mut rng, 1);
        let omega = OneForm::exact(&a).add(&OneForm::new(&b * &h.hx(), &b * &h.hy()));
        let dec = petrov_decompose(&omega, &h, &sys.forms).unwrap();
        assert!(dec.coeffs.iter().all(UniPoly::is_zero));
        for cyc in &cycles {
            assert!(period_quadrature(cyc, &omega).norm() <= 1e-8);
        }
    }
}

#[test]
fn scalar_ode_kills_quadrature_periods() {
    let h = Hamiltonian::parse("x^3 - x*y^2 + y").unwrap();
    let sys = assemble_pf_system(&h).unwrap();
    let ode = derive_scalar_ode(&sys, 0).unwrap();
    assert_eq!(ode.order, 3);
    let ctx = CycleContext::new(&h).unwrap();
    let t0 = 1.3;
    let desc = resolve_cycle(&ctx, c(t0, 0.0), &CycleChoice::Auto, &sys.forms).unwrap();
    let hstep = 1e-2;
    let vals: Vec<Complex64> = (-2..=2)
        .map(|k| {
            periods_on(&ctx, c(t0 + hstep * k as f64, 0.0), &desc, &sys.forms[..1], 1e-14)
                .unwrap()
                .periods[0]
        })
        .collect();
    let d1 = (vals[3] - vals[1]) / (2.0 * hstep);
    let d2 = (vals[3] - 2.0 * vals[2] + vals[1]) / (hstep * hstep);
    let d3 = (vals[4] - 2.0 * vals[3] + 2.0 * vals[1] - vals[0]) / (2.0 * hstep.powi(3));
    let co = ode.coefficient_values(c(t0, 0.0));
    let lhs = d3 + co[0] * d2 + co[1] * d1 + co[2] * vals[2];
    let scale = d3.norm() + (co[0] * d2).norm() + (co[1] * d1).norm() + (co[2] * vals[2]).norm();
    assert!(lhs.norm() < 1e-3 * scale, "{} vs {}", lhs.norm(), scale);
}
