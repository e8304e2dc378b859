//! End-to-end acceptance run. Each criterion prints one PASS/FAIL line; the
//! test fails if any criterion fails.

use std::collections::BTreeSet;
use std::f64::consts::PI;
use std::time::Instant;

use num_bigint::BigInt;
use num_complex::Complex64;
use pfzero_core::algebra::roots::isolate_roots;
use pfzero_core::algebra::{int, rat, rational_to_f64, Matrix, Monomial, MultiPoly, RatFunc, UniPoly};
use pfzero_core::hamiltonian::{is_regular_at_infinity, monomial_basis, Hamiltonian, SingularSet};
use pfzero_core::numerics::{integrate_pf_numeric, residual_check, ContinuationOptions, CycleChoice, PeriodSample};
use pfzero_core::petrov::{petrov_decompose, OneForm};
use pfzero_core::pfsystem::{assemble_pf_system, augment_and_reduce, derive_scalar_ode, make_basis_forms, ScalarODE};
use pfzero_core::zerocount::{
    double_exponential_bound, winding_on_circle, winding_on_polygon, yakovenko_varbound, zero_count_bound, Region,
    SimpleDomain, WindingOptions, DEFAULT_TOLERANCE,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn random_hamiltonian(rng: &mut ChaCha8Rng, d: u32) -> Hamiltonian {
    loop {
        let mut terms = Vec::new();
        for i in 0..=d {
            for j in 0..=(d - i) {
                terms.push((Monomial::new(i, j, 0), int(rng.gen_range(-5..=5))));
            }
        }
        if let Ok(h) = Hamiltonian::new(MultiPoly::from_terms(terms)) {
            if h.degree() == d as usize && is_regular_at_infinity(&h) {
                return h;
            }
        }
    }
}

fn random_poly(rng: &mut ChaCha8Rng, deg: u32, terms: usize) -> MultiPoly {
    MultiPoly::from_terms((0..terms).map(|_| {
        let total = rng.gen_range(0..=deg);
        let i = rng.gen_range(0..=total);
        (Monomial::new(i, total - i, 0), int(rng.gen_range(-5..=5)))
    }))
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let h = Hamiltonian::parse("x^2+y^2").map_err(|e| e.to_string())?;
    let sys = assemble_pf_system(&h).map_err(|e| e.to_string())?;
    check(
        sys.k == Matrix::from_rows(vec![vec![UniPoly::from_ints(&[0, 0, 4])]]),
        "K != [4t^2]",
    )?;
    check(
        sys.l == Matrix::from_rows(vec![vec![UniPoly::from_ints(&[0, 12])]]),
        "L != [12t]",
    )?;
    check(
        sys.a() == &UniPoly::t() && sys.matrix() == &Matrix::from_rows(vec![vec![UniPoly::one()]]),
        "A/a != 1/t",
    )?;
    let ode = derive_scalar_ode(&sys, 0).map_err(|e| e.to_string())?;
    let expected = RatFunc::new(UniPoly::from_ints(&[-1]), UniPoly::t()).map_err(|e| e.to_string())?;
    check(
        ode.order == 1 && ode.coeffs == vec![expected],
        format!("scalar ODE {ode}"),
    )?;
    let aug = augment_and_reduce(&sys, &[int(1)]).map_err(|e| e.to_string())?;
    check(
        aug.order == 2 && aug.coeffs.iter().all(RatFunc::is_zero),
        format!("augmented ODE {aug}"),
    )?;
    let secs = start.elapsed().as_secs_f64();
    check(secs < 1.0, format!("took {secs:.2} s"))?;
    Ok(format!("K=[4t^2], L=[12t], A/a=1/t, {ode}, {aug}; {secs:.3} s"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let (mut ok, mut failed) = (0, 0);
    for k in 0..200 {
        let d = 2 + (k % 3) as u32;
        let h = random_hamiltonian(&mut rng, d);
        let forms = make_basis_forms(&monomial_basis(&h).map_err(|e| e.to_string())?);
        let deg = rng.gen_range(1..=2 * d);
        let omega = OneForm::new(random_poly(&mut rng, deg, 4), random_poly(&mut rng, deg, 4));
        match petrov_decompose(&omega, &h, &forms) {
            Ok(dec) => {
                check(
                    dec.reconstruct(&h, &forms) == omega,
                    format!("reconstruction failed for H = {}", h.poly()),
                )?;
                let w = omega.degree();
                for (ci, wi) in dec.coeffs.iter().zip(&forms) {
                    if ci.is_zero() {
                        continue;
                    }
                    let bound = w.checked_sub(wi.degree()).map(|e| e / d as usize);
                    check(
                        bound.is_some_and(|b| ci.degree() <= b),
                        format!("degree bound fails for H = {}", h.poly()),
                    )?;
                }
                ok += 1;
            }
            Err(_) => failed += 1,
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(secs < 120.0, format!("took {secs:.1} s"))?;
    check(ok > 0, "no successful decomposition")?;
    Ok(format!(
        "{ok} exact reconstructions, {failed} decompositions not found; {secs:.1} s"
    ))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let h = Hamiltonian::parse("x^3 - x*y^2 + y").map_err(|e| e.to_string())?;
    let sys = assemble_pf_system(&h).map_err(|e| e.to_string())?;
    let ts: Vec<f64> = (0..20).map(|k| 1.0 + 0.05 * k as f64).collect();
    let report = residual_check(&sys, &ts, &CycleChoice::Auto).map_err(|e| e.to_string())?;
    let secs = start.elapsed().as_secs_f64();
    check(report.samples.len() >= 20, "fewer than 20 samples")?;
    check(
        report.max_residual < 1e-6,
        format!("max residual {:.3e}", report.max_residual),
    )?;
    check(secs < 60.0, format!("took {secs:.1} s"))?;
    Ok(format!(
        "max residual {:.3e} over {} samples; {secs:.1} s",
        report.max_residual,
        report.samples.len()
    ))
}

fn criterion_4() -> Outcome {
    let h = Hamiltonian::parse("x^3 - x*y^2").map_err(|e| e.to_string())?;
    let basis = monomial_basis(&h).map_err(|e| e.to_string())?;
    let got: BTreeSet<(u32, u32)> = basis.monomials.iter().copied().collect();
    let want: BTreeSet<(u32, u32)> = [(0, 0), (1, 0), (0, 1), (0, 2)].into_iter().collect();
    check(got == want, format!("basis {:?}", basis.monomials))?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for k in 0..50 {
        let d = 2 + (k % 3) as u32;
        let h = random_hamiltonian(&mut rng, d);
        let b = monomial_basis(&h).map_err(|e| e.to_string())?;
        let want = ((d - 1) * (d - 1)) as usize;
        check(
            b.len() == want,
            format!("H = {} has {} basis monomials", h.poly(), b.len()),
        )?;
    }
    Ok("{1, x, y, y^2}; 50 random Hamiltonians have (d-1)^2 monomials".into())
}

/// `f = P/Q` solves `(Q y)^(p + 1) = 0`, `p = deg P`.
fn rational_function_ode(q: &UniPoly, p_degree: usize) -> ScalarODE {
    let n = p_degree + 1;
    let mut derivs = vec![q.clone()];
    for _ in 0..n {
        let next = derivs.last().unwrap().derivative();
        derivs.push(next);
    }
    let mut binom = vec![int(1)];
    for k in 1..=n {
        let prev = binom[k - 1].clone();
        binom.push(prev * int((n + 1 - k) as i64) / int(k as i64));
    }
    let coeffs: Vec<RatFunc> = (1..=n)
        .map(|k| RatFunc::new(derivs[k].scale(&binom[k]), q.clone()).expect("nonzero"))
        .collect();
    let roots = isolate_roots(q);
    let singular = SingularSet {
        count_with_multiplicity: roots.iter().map(|r| r.multiplicity).sum(),
        critical_values: roots,
        atypical_warning: false,
    };
    ScalarODE::new(coeffs, singular)
}

fn random_roots(rng: &mut ChaCha8Rng, degree: usize) -> (UniPoly, Vec<Complex64>) {
    let mut poly = UniPoly::one();
    let mut roots = Vec::new();
    while roots.len() < degree {
        let a = rat(rng.gen_range(-12..=12), 8);
        let af = rational_to_f64(&a);
        if degree - roots.len() >= 2 && rng.gen_bool(0.5) {
            let b = rat(rng.gen_range(1..=12), 8);
            let bf = rational_to_f64(&b);
            let quad = UniPoly::new(vec![&a * &a + &b * &b, -(&a + &a), int(1)]);
            poly = &poly * &quad;
            roots.push(c(af, bf));
            roots.push(c(af, -bf));
        } else {
            poly = &poly * &UniPoly::new(vec![-a.clone(), int(1)]);
            roots.push(c(af, 0.0));
        }
    }
    (poly, roots)
}

fn eval(p: &[Complex64], q: &[Complex64], t: Complex64) -> Complex64 {
    p.iter().map(|z| t - z).product::<Complex64>() / q.iter().map(|z| t - z).product::<Complex64>()
}

fn inside(poly: &[Complex64], z: Complex64) -> bool {
    let n = poly.len();
    let mut w = false;
    for i in 0..n {
        let (a, b) = (poly[i], poly[(i + 1) % n]);
        if (a.im > z.im) != (b.im > z.im) && z.re < a.re + (z.im - a.im) / (b.im - a.im) * (b.re - a.re) {
            w = !w;
        }
    }
    w
}

fn distance_to_polygon(poly: &[Complex64], z: Complex64) -> f64 {
    let n = poly.len();
    (0..n)
        .map(|i| {
            let (a, b) = (poly[i], poly[(i + 1) % n]);
            let ab = b - a;
            let s = (((z - a) * ab.conj()).re / ab.norm_sqr()).clamp(0.0, 1.0);
            (a + ab * s - z).norm()
        })
        .fold(f64::INFINITY, f64::min)
}

fn criterion_5() -> Outcome {
    let opts = WindingOptions::default();
    let n = winding_on_circle(c(1.0, 0.0), 0.4, |t| t * PI, &opts).map_err(|e| e.to_string())?;
    check(n == 0, format!("winding of pi t on |t-1|=0.4 is {n}"))?;
    let circle = assemble_pf_system(&Hamiltonian::parse("x^2+y^2").unwrap()).map_err(|e| e.to_string())?;
    let ode = derive_scalar_ode(&circle, 0).map_err(|e| e.to_string())?;
    let mut dom = SimpleDomain::with_auto_rays(
        ode.true_singularities.values(),
        Region::Disc {
            center: c(1.0, 0.0),
            radius: 0.4,
        },
        0.5,
    )
    .map_err(|e| e.to_string())?;
    dom.relaxed_bounds = true;
    let mut report = zero_count_bound(&ode, &dom, DEFAULT_TOLERANCE).map_err(|e| e.to_string())?;
    let linear = report
        .attach_numeric_count(|t| t * PI, &opts)
        .map_err(|e| e.to_string())?;
    check(linear == 0 && report.is_consistent(), "pi t count on disc(1, 0.4)")?;
    let first_bound = report.total_bound;

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut done, mut tries, mut max_bound) = (0, 0, 0u64);
    while done < 50 {
        tries += 1;
        if tries > 2000 {
            return Err(format!("only {done} random instances were admissible"));
        }
        let p_deg = rng.gen_range(0..=5);
        let q_deg = rng.gen_range(0..=(5 - p_deg).min(2));
        let (_p, zeros) = random_roots(&mut rng, p_deg);
        let (q, poles) = random_roots(&mut rng, q_deg);
        let center = c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let radius = rng.gen_range(0.2..0.6);
        let rho = 0.1;
        if poles.iter().any(|p| (p - center).norm() < radius + rho) {
            continue;
        }
        let ode = rational_function_ode(&q, p_deg);
        let Ok(mut dom) =
            SimpleDomain::with_auto_rays(ode.true_singularities.values(), Region::Disc { center, radius }, rho)
        else {
            continue;
        };
        dom.relaxed_bounds = true;
        let Ok(mut rep) = zero_count_bound(&ode, &dom, DEFAULT_TOLERANCE) else {
            continue;
        };
        let vertices = rep.segments.vertices();
        if zeros
            .iter()
            .chain(&poles)
            .any(|z| distance_to_polygon(&vertices, *z) < 1e-3)
        {
            continue;
        }
        let truth = zeros.iter().filter(|z| inside(&vertices, **z)).count() as i64
            - poles.iter().filter(|z| inside(&vertices, **z)).count() as i64;
        let counted = rep
            .attach_numeric_count(|t| eval(&zeros, &poles, t), &opts)
            .map_err(|e| e.to_string())?;
        let direct = winding_on_polygon(&vertices, |t| eval(&zeros, &poles, t), &opts).map_err(|e| e.to_string())?;
        check(
            counted == truth && direct == truth,
            format!("counted {counted}, truth {truth}"),
        )?;
        check(
            rep.is_consistent(),
            format!("count {counted} exceeds bound {}", rep.total_bound),
        )?;
        max_bound = max_bound.max(rep.total_bound);
        done += 1;
    }
    Ok(format!(
        "pi t: 0 zeros, bound {first_bound}; 50 rational functions counted exactly, all within bounds (largest bound {max_bound})"
    ))
}

fn criterion_6() -> Outcome {
    let a = yakovenko_varbound(1, 1.0, 1.0);
    let b = yakovenko_varbound(1, 0.0, 1.0);
    let oracle = 2.0 * PI * (1.0 + 1.0 / 1.5f64.ln());
    check(
        (a - 21.7792).abs() < 1e-3 && (a - oracle).abs() < 1e-12,
        format!("(1,1,1) -> {a}"),
    )?;
    check(
        (b - 2.0 * PI).abs() <= 4.0 * f64::EPSILON * 2.0 * PI,
        format!("(1,0,1) -> {b}"),
    )?;
    Ok(format!("(1,1,1) -> {a:.6}, (1,0,1) -> {b:.15}"))
}

fn criterion_7() -> Outcome {
    let v = double_exponential_bound(2, &rat(1, 2), 1.0).map_err(|e| e.to_string())?;
    check(v.exact.as_deref() == Some("256"), format!("exact value {:?}", v.exact))?;
    let big = double_exponential_bound(3, &rat(1, 10), 2.0).map_err(|e| e.to_string())?;
    let got = big.log10.ok_or("no log10 output")?;
    let reference = BigInt::from(20).pow(512u32).to_string();
    let lead: f64 = format!("0.{}", &reference[..30]).parse().unwrap();
    let expect = reference.len() as f64 + lead.log10();
    let rel = (got - expect).abs() / expect;
    check(rel < 1e-9, format!("log10 {got} vs {expect}"))?;
    Ok(format!(
        "256 exactly; log10 at (3, 0.1, 2) = {got:.9} (relative error {rel:.1e})"
    ))
}

fn criterion_8() -> Outcome {
    let sys = assemble_pf_system(&Hamiltonian::parse("x^2+y^2").unwrap()).map_err(|e| e.to_string())?;
    let init = PeriodSample {
        t: c(1.0, 0.0),
        periods: vec![c(PI, 0.0)],
        error_estimate: 0.0,
    };
    let opts = ContinuationOptions::default();
    let out = integrate_pf_numeric(&sys, &[c(1.0, 0.0), c(4.0, 0.0)], &init, &opts).map_err(|e| e.to_string())?;
    let e1 = (out.last().unwrap().periods[0] - c(4.0 * PI, 0.0)).norm();
    let loop_path: Vec<Complex64> = (0..=64)
        .map(|k| Complex64::from_polar(1.0, 2.0 * PI * k as f64 / 64.0))
        .collect();
    let out = integrate_pf_numeric(&sys, &loop_path, &init, &opts).map_err(|e| e.to_string())?;
    let e2 = (out.last().unwrap().periods[0] - c(PI, 0.0)).norm();
    check(e1 < 1e-8 && e2 < 1e-8, format!("errors {e1:.2e}, {e2:.2e}"))?;
    Ok(format!("|I(4) - 4 pi| = {e1:.1e}, loop error {e2:.1e}"))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut full = 0;
    let mut lines = Vec::new();
    for _ in 0..10 {
        let h = random_hamiltonian(&mut rng, 3);
        let sys = match assemble_pf_system(&h) {
            Ok(s) => s,
            Err(e) => {
                lines.push(format!("{}: {e}", h.poly()));
                continue;
            }
        };
        let orders: Vec<usize> = (0..sys.dim())
            .map(|m| derive_scalar_ode(&sys, m).map(|o| o.order).unwrap_or(0))
            .collect();
        if orders.iter().any(|&k| k == 4) {
            full += 1;
        }
        lines.push(format!("{:?}", orders));
    }
    let summary = format!("{full}/10 reach k = 4; per-component orders {}", lines.join(" "));
    check(full > 8, summary.clone())?;
    Ok(summary)
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 9] = [
        ("d=2 exact pipeline", criterion_1),
        ("Petrov reconstruction", criterion_2),
        ("oracle residual", criterion_3),
        ("monomial basis", criterion_4),
        ("zero counting soundness", criterion_5),
        ("variation bound formula", criterion_6),
        ("calculators", criterion_7),
        ("continuation consistency", criterion_8),
        ("generic order", criterion_9),
    ];
    let mut failures = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let result = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("criterion {}: PASS ({name}) {detail}", i + 1),
            Err(detail) => {
                failures += 1;
                println!("criterion {}: FAIL ({name}) {detail}", i + 1);
            }
        }
    }
    if failures > 0 {
        eprintln!("{failures} acceptance criteria failed");
        std::process::exit(1);
    }
}
