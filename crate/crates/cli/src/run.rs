//! Command implementations.

use num_complex::Complex64;
use pfzero_core::algebra::roots::IsolatedRoot;
use pfzero_core::algebra::{f64_to_rational, parse_polynomial, rational_to_f64, Matrix, Rational, UniPoly};
use pfzero_core::hamiltonian::{
    critical_values, is_regular_at_infinity, monomial_basis, Hamiltonian, HamiltonianError, SingularSet,
};
use pfzero_core::numerics::{
    integrate_pf_numeric, periods_on, residual_check_with, resolve_cycle, ContinuationOptions, CycleChoice,
    CycleContext,
};
use pfzero_core::petrov::{petrov_decompose, OneForm};
use pfzero_core::pfsystem::{
    assemble_pf_system, augment_and_reduce, derive_scalar_ode, make_basis_forms, PFSystem, RatFuncText, ScalarODE,
};
use pfzero_core::zerocount::{
    asymptotic_bound_calculators, winding_from_samples, zero_count_bound, CalculatorConstants, Region, SimpleDomain,
    ZeroCountError, DEFAULT_TOLERANCE,
};
use serde_json::{json, Value};

use crate::config::*;
use crate::error::CliError;

pub enum Output {
    Json(Value),
    Csv(String),
}

pub const DEFAULT_RHO: f64 = 0.1;
pub const DEFAULT_DISC: (f64, f64, f64) = (0.5, 0.0, 0.3);

fn envelope(command: &str, artifact: &str, mut body: Value) -> Value {
    let obj = body.as_object_mut().expect("object body");
    obj.insert("schema_version".into(), json!(SCHEMA_VERSION));
    obj.insert("command".into(), json!(command));
    obj.insert("artifact".into(), json!(artifact));
    body
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn hamiltonian(args: &HArgs) -> Result<Hamiltonian, CliError> {
    let text = args
        .hamiltonian
        .as_deref()
        .ok_or_else(|| usage("missing --hamiltonian"))?;
    Ok(Hamiltonian::parse(text)?)
}

/// Integers, `p/q` and plain decimals such as `0.125`, all exact.
pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    let s = s.trim();
    let bad = || usage(format!("not a rational number: {s:?}"));
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let negative = int.starts_with('-');
        let digits: Rational = format!("{}{}", int.trim_start_matches(['-', '+']), frac)
            .parse()
            .map_err(|_| bad())?;
        let scale: Rational = format!("1{}", "0".repeat(frac.len())).parse().map_err(|_| bad())?;
        let v = digits / scale;
        return Ok(if negative { -v } else { v });
    }
    s.parse().map_err(|_| bad())
}

fn roots_json(roots: &[IsolatedRoot]) -> Value {
    Value::Array(
        roots
            .iter()
            .map(|r| json!({"re": r.value.re, "im": r.value.im, "radius": r.radius, "multiplicity": r.multiplicity}))
            .collect(),
    )
}

fn singular_json(s: &SingularSet) -> Value {
    json!({
        "critical_values": roots_json(&s.critical_values),
        "count_with_multiplicity": s.count_with_multiplicity,
        "atypical_warning": s.atypical_warning,
    })
}

fn matrix_json(m: &Matrix<UniPoly>) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array((0..m.cols()).map(|j| json!(m.get(i, j).to_string())).collect()))
            .collect(),
    )
}

fn form_json(w: &OneForm) -> Value {
    json!({"p": w.p.to_string(), "q": w.q.to_string()})
}

pub fn analyze(args: &HArgs) -> Result<Output, CliError> {
    let h = hamiltonian(args)?;
    if !is_regular_at_infinity(&h) {
        return Err(HamiltonianError::NotRegularAtInfinity.into());
    }
    let singular = critical_values(&h)?;
    let basis = monomial_basis(&h)?;
    let body = json!({
        "hamiltonian": h.poly().to_string(),
        "degree": h.degree(),
        "regular_at_infinity": true,
        "critical_values": roots_json(&singular.critical_values),
        "count_with_multiplicity": singular.count_with_multiplicity,
        "basis": basis.monomials.iter().map(|&(a, b)| json!({"a": a, "b": b})).collect::<Vec<_>>(),
        "leading_term_diagram": basis.leading_term_diagram.iter().map(|&(a, b)| json!({"a": a, "b": b})).collect::<Vec<_>>(),
    });
    Ok(Output::Json(envelope(
        "analyze",
        "critical values and quotient basis",
        body,
    )))
}

pub fn decompose(args: &DecomposeArgs) -> Result<Output, CliError> {
    let h = hamiltonian(&args.h)?;
    let p = parse_polynomial(args.p.as_deref().unwrap_or("0"))?;
    let q = parse_polynomial(args.q.as_deref().unwrap_or("0"))?;
    let omega = OneForm::new(p, q);
    let basis = monomial_basis(&h)?;
    let forms = make_basis_forms(&basis);
    let dec = petrov_decompose(&omega, &h, &forms)?;
    let exact = dec.reconstruct(&h, &forms) == omega;
    let body = json!({
        "hamiltonian": h.poly().to_string(),
        "omega": form_json(&omega),
        "basis_forms": forms.iter().map(form_json).collect::<Vec<_>>(),
        "coefficients": dec.coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "a": dec.a.to_string(),
        "b": dec.b.to_string(),
        "ansatz_degree": dec.ansatz_degree,
        "reconstruction_exact": exact,
    });
    Ok(Output::Json(envelope(
        "decompose",
        "Petrov decomposition omega = sum c_i(H) omega_i + dA + B dH",
        body,
    )))
}

pub fn pf_system(args: &HArgs) -> Result<Output, CliError> {
    let h = hamiltonian(args)?;
    let sys = assemble_pf_system(&h)?;
    let body = json!({
        "hamiltonian": h.poly().to_string(),
        "dim": sys.dim(),
        "basis": sys.basis.monomials.iter().map(|&(a, b)| json!({"a": a, "b": b})).collect::<Vec<_>>(),
        "forms": sys.forms.iter().map(form_json).collect::<Vec<_>>(),
        "K": matrix_json(&sys.k),
        "L": matrix_json(&sys.l),
        "a": sys.a().to_string(),
        "A_entries": matrix_json(sys.matrix()),
        "singular": singular_json(&sys.singular),
        "gelfand_leray_degree": sys.gelfand_leray_degree,
        "gelfand_leray_degree_hint": sys.gelfand_leray_degree_hint(),
    });
    Ok(Output::Json(envelope(
        "pf-system",
        "Picard-Fuchs system I' = (A/a) I",
        body,
    )))
}

enum Target {
    Component(usize),
    Weights(Vec<Rational>),
}

fn target(args: &OdeArgs) -> Result<Target, CliError> {
    match &args.mu {
        Some(mu) => Ok(Target::Weights(
            mu.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?,
        )),
        None => Ok(Target::Component(args.component.unwrap_or(0))),
    }
}

fn scalar_ode(sys: &PFSystem, target: &Target) -> Result<ScalarODE, CliError> {
    Ok(match target {
        Target::Component(m) => derive_scalar_ode(sys, *m)?,
        Target::Weights(mu) => augment_and_reduce(sys, mu)?,
    })
}

fn ode_json(ode: &ScalarODE) -> Value {
    json!({
        "order": ode.order,
        "equation": ode.to_string(),
        "coeffs": ode.coeffs.iter().map(|c| {
            let t = RatFuncText::from(c);
            json!({"num": t.num, "den": t.den})
        }).collect::<Vec<_>>(),
        "pole_set": roots_json(&ode.pole_set),
        "true_singularities": singular_json(&ode.true_singularities),
        "apparent_singularities": roots_json(&ode.apparent_singularities()),
        "row_degrees": ode.row_degrees,
    })
}

fn target_json(t: &Target) -> Value {
    match t {
        Target::Component(m) => json!({"component": m}),
        Target::Weights(mu) => json!({"mu": mu.iter().map(|r| r.to_string()).collect::<Vec<_>>()}),
    }
}

pub fn scalar_ode_cmd(args: &OdeArgs) -> Result<Output, CliError> {
    let h = hamiltonian(&args.h)?;
    let sys = assemble_pf_system(&h)?;
    let t = target(args)?;
    let ode = scalar_ode(&sys, &t)?;
    let artifact = match t {
        Target::Component(_) => "scalar equation for one basis period",
        Target::Weights(_) => "scalar equation for a combination of basis periods",
    };
    let body = json!({
        "hamiltonian": h.poly().to_string(),
        "target": target_json(&t),
        "ode": ode_json(&ode),
    });
    Ok(Output::Json(envelope("scalar-ode", artifact, body)))
}

fn floats(s: &str) -> Result<Vec<f64>, CliError> {
    s.split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| usage(format!("not a number: {v:?}")))
        })
        .collect()
}

fn parse_domain(s: &str) -> Result<Region, CliError> {
    if let Some(rest) = s.strip_prefix("disc:") {
        let v = floats(rest)?;
        if v.len() != 3 {
            return Err(usage("disc needs cx,cy,r"));
        }
        return Ok(Region::Disc {
            center: Complex64::new(v[0], v[1]),
            radius: v[2],
        });
    }
    if let Some(rest) = s.strip_prefix("poly:") {
        let vertices = rest
            .split(';')
            .map(|p| {
                let v = floats(p)?;
                if v.len() != 2 {
                    return Err(usage("polygon vertices are x,y pairs"));
                }
                Ok(Complex64::new(v[0], v[1]))
            })
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(Region::Polygon { vertices });
    }
    Err(usage(format!(
        "unknown domain {s:?}; expected disc:cx,cy,r or poly:x1,y1;..."
    )))
}

fn positive(name: &str, v: f64) -> Result<f64, CliError> {
    if v > 0.0 && v.is_finite() {
        Ok(v)
    } else {
        Err(usage(format!("{name} must be positive")))
    }
}

pub fn count_zeros(args: &CountArgs, notices: &mut Vec<String>) -> Result<Output, CliError> {
    let h = hamiltonian(&args.ode.h)?;
    let sys = assemble_pf_system(&h)?;
    let t = target(&args.ode)?;
    let ode = scalar_ode(&sys, &t)?;
    let rho = match args.rho {
        Some(r) => positive("--rho", r)?,
        None => {
            notices.push(format!("notice: no --rho given, using the default rho = {DEFAULT_RHO}"));
            DEFAULT_RHO
        }
    };
    let region = match args.domain.as_deref() {
        Some(s) => parse_domain(s)?,
        None => {
            let (cx, cy, r) = DEFAULT_DISC;
            notices.push(format!(
                "notice: no --domain given, using the default disc:{cx},{cy},{r}"
            ));
            Region::Disc {
                center: Complex64::new(cx, cy),
                radius: r,
            }
        }
    };
    let tol = positive("--tol", args.tol.unwrap_or(DEFAULT_TOLERANCE))?;
    let mode = args.mode.as_deref().unwrap_or("bound");
    if !matches!(mode, "bound" | "numeric" | "both") {
        return Err(usage("--mode is bound, numeric or both"));
    }
    let sigma = ode.true_singularities.values();
    let mut dom = match args.rays.as_deref().unwrap_or("auto") {
        "auto" => SimpleDomain::with_auto_rays(sigma, region, rho)?,
        s => {
            let angles = floats(
                s.strip_prefix("angles:")
                    .ok_or_else(|| usage("--rays is auto or angles:a1,..."))?,
            )?;
            if angles.len() != sigma.len() {
                return Err(usage(format!(
                    "{} ray angles given for {} critical values",
                    angles.len(),
                    sigma.len()
                )));
            }
            SimpleDomain {
                sigma,
                ray_directions: angles.iter().map(|&a| Complex64::from_polar(1.0, a)).collect(),
                region,
                rho,
                relaxed_bounds: false,
            }
        }
    };
    dom.relaxed_bounds = args.relaxed;
    dom.validate()?;
    let mut report = zero_count_bound(&ode, &dom, tol)?;
    if mode != "bound" {
        let n = numeric_zero_count(&sys, &t, &report.segments.vertices())?;
        report.numeric_count = Some(n);
    }
    let c_max = report.per_segment_sup.iter().copied().fold(1.0, f64::max);
    let d = h.degree();
    report.calculators = Some(asymptotic_bound_calculators(
        d,
        &rho_rational(rho)?,
        ode.order,
        &f64_to_rational(c_max.ceil()).unwrap_or_else(|| Rational::from_integer(1.into())),
        (d + 1) * (d + 2) / 2,
        CalculatorConstants::default(),
    )?);
    let consistent = report.is_consistent();
    let mut body = json!({
        "hamiltonian": h.poly().to_string(),
        "target": target_json(&t),
        "mode": mode,
        "tol": tol,
        "equation": ode.to_string(),
        "domain": serde_json::to_value(&dom)?,
        "consistent": consistent,
    });
    let rep = serde_json::to_value(&report)?;
    for (k, v) in rep.as_object().expect("object") {
        body.as_object_mut().expect("object").insert(k.clone(), v.clone());
    }
    Ok(Output::Json(envelope(
        "count-zeros",
        "zero bound in a simple domain",
        body,
    )))
}

fn rho_rational(rho: f64) -> Result<Rational, CliError> {
    parse_rational(&format!("{rho}")).or_else(|_| f64_to_rational(rho).ok_or(ZeroCountError::InvalidRho(rho).into()))
}

/// Zeros inside the closed polygon of the period `target`, by continuing the
/// periods around the polygon and counting windings of the sampled values.
fn numeric_zero_count(sys: &PFSystem, target: &Target, vertices: &[Complex64]) -> Result<i64, CliError> {
    if vertices.len() < 3 {
        return Ok(0);
    }
    let weights: Vec<Complex64> = match target {
        Target::Component(m) => (0..sys.dim())
            .map(|i| Complex64::new(if i == *m { 1.0 } else { 0.0 }, 0.0))
            .collect(),
        Target::Weights(mu) => mu.iter().map(|r| Complex64::new(rational_to_f64(r), 0.0)).collect(),
    };
    let ctx = CycleContext::new(&sys.hamiltonian)?;
    let t0 = vertices[0];
    let desc = resolve_cycle(&ctx, t0, &CycleChoice::Auto, &sys.forms)?;
    let initial = periods_on(&ctx, t0, &desc, &sys.forms, 1e-13)?;
    let opts = ContinuationOptions::default();
    let mut sub = 8;
    loop {
        let mut path = Vec::new();
        for (i, &a) in vertices.iter().enumerate() {
            let b = vertices[(i + 1) % vertices.len()];
            for k in 0..sub {
                path.push(a + (b - a) * (k as f64 / sub as f64));
            }
        }
        path.push(t0);
        let out = integrate_pf_numeric(sys, &path, &initial, &opts)?;
        let values: Vec<Complex64> = out
            .iter()
            .map(|s| s.periods.iter().zip(&weights).map(|(p, w)| p * w).sum())
            .collect();
        let (first, last) = (values[0], values[values.len() - 1]);
        if (first - last).norm() > 1e-6 * first.norm().max(1e-12) {
            return Err(ZeroCountError::Inconclusive { residual: 0.5 }.into());
        }
        match winding_from_samples(&values[..values.len() - 1], 1e-12) {
            Ok(n) => return Ok(n),
            Err(ZeroCountError::Inconclusive { .. }) if sub < 4096 => sub *= 2,
            Err(e) => return Err(e.into()),
        }
    }
}

fn cycle_choice(s: Option<&str>) -> Result<CycleChoice, CliError> {
    let s = s.unwrap_or("auto");
    if s == "auto" {
        return Ok(CycleChoice::Auto);
    }
    if let Some(rest) = s.strip_prefix("oval:") {
        let v = floats(rest)?;
        if v.len() == 2 {
            return Ok(CycleChoice::RealOval { seed: [v[0], v[1]] });
        }
    }
    if let Some(rest) = s.strip_prefix("candidate:") {
        if let Ok(index) = rest.trim().parse() {
            return Ok(CycleChoice::Candidate { index });
        }
    }
    Err(usage(format!(
        "unknown cycle {s:?}; expected auto, oval:x,y or candidate:k"
    )))
}

pub fn verify(args: &VerifyArgs, precision_bits: u32) -> Result<Output, CliError> {
    let h = hamiltonian(&args.h)?;
    let sys = assemble_pf_system(&h)?;
    let samples = args.samples.clone().ok_or_else(|| usage("missing --samples"))?;
    if samples.is_empty() {
        return Err(usage("--samples is empty"));
    }
    let choice = cycle_choice(args.cycle.as_deref())?;
    let ctx = CycleContext::new(&h)?;
    let report = residual_check_with(&ctx, &sys, &samples, &choice)?;
    let level_errors = report
        .samples
        .iter()
        .zip(&report.cycles)
        .map(|(s, desc)| {
            let cyc = ctx.build(Complex64::new(s.t, 0.0), desc, 0)?;
            Ok(crate::precision::level_error(&h, &cyc, precision_bits))
        })
        .collect::<Result<Vec<f64>, CliError>>()?;
    let rows: Vec<Value> = report
        .samples
        .iter()
        .zip(&level_errors)
        .map(|(s, e)| {
            json!({
                "t": s.t,
                "residual": s.residual,
                "period_norm": s.period_norm,
                "quadrature_error": s.quadrature_error,
                "level_error": e,
            })
        })
        .collect();
    let body = json!({
        "hamiltonian": h.poly().to_string(),
        "precision_bits": precision_bits,
        "samples": rows,
        "max_residual": report.max_residual,
        "cycles": serde_json::to_value(&report.cycles)?,
    });
    Ok(Output::Json(envelope(
        "verify",
        "residual of a(t) I' - A(t) I on quadrature periods",
        body,
    )))
}

fn parse_path(s: &str) -> Result<Vec<Complex64>, CliError> {
    s.split(';')
        .map(|p| {
            let v = floats(p)?;
            match v.len() {
                1 => Ok(Complex64::new(v[0], 0.0)),
                2 => Ok(Complex64::new(v[0], v[1])),
                _ => Err(usage("path vertices are re,im pairs")),
            }
        })
        .collect()
}

pub fn periods(args: &PeriodsArgs) -> Result<Output, CliError> {
    let h = hamiltonian(&args.h)?;
    let sys = assemble_pf_system(&h)?;
    let vertices = parse_path(args.path.as_deref().ok_or_else(|| usage("missing --path"))?)?;
    let choice = cycle_choice(args.cycle.as_deref())?;
    let sub = args.subdivisions.unwrap_or(1).max(1);
    let mut path = Vec::new();
    for w in vertices.windows(2) {
        for k in 0..sub {
            path.push(w[0] + (w[1] - w[0]) * (k as f64 / sub as f64));
        }
    }
    path.push(*vertices.last().expect("nonempty"));
    let ctx = CycleContext::new(&h)?;
    let desc = resolve_cycle(&ctx, path[0], &choice, &sys.forms)?;
    let initial = periods_on(&ctx, path[0], &desc, &sys.forms, 1e-13)?;
    let out = integrate_pf_numeric(&sys, &path, &initial, &ContinuationOptions::default())?;
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["t_re".to_string(), "t_im".to_string()];
    for i in 0..sys.dim() {
        header.push(format!("p{i}_re"));
        header.push(format!("p{i}_im"));
    }
    header.push("error".into());
    w.write_record(&header)?;
    for s in &out {
        let mut rec = vec![crate::output::format_float(s.t.re), crate::output::format_float(s.t.im)];
        for p in &s.periods {
            rec.push(crate::output::format_float(p.re));
            rec.push(crate::output::format_float(p.im));
        }
        rec.push(crate::output::format_float(s.error_estimate));
        w.write_record(&rec)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    Ok(Output::Csv(String::from_utf8(bytes).expect("utf8")))
}

pub fn bounds(args: &BoundsArgs) -> Result<Output, CliError> {
    let d = args.degree.ok_or_else(|| usage("missing -d"))?;
    if d < 2 {
        return Err(usage("-d must be at least 2"));
    }
    let rho = parse_rational(args.rho.as_deref().ok_or_else(|| usage("missing --rho"))?)?;
    let constants = CalculatorConstants {
        c: args.c.unwrap_or(1.0),
        c_p: args.c_p.unwrap_or(1.0),
    };
    let n = args.order.unwrap_or((d - 1).pow(2).max(1));
    let m = parse_rational(args.m.as_deref().unwrap_or("1"))?;
    let p = args.p.unwrap_or((d + 1) * (d + 2) / 2);
    let report = asymptotic_bound_calculators(d, &rho, n, &m, p, constants)?;
    let mut body = serde_json::to_value(&report)?;
    body.as_object_mut()
        .expect("object")
        .insert("inputs".into(), json!({"n": n, "M": m.to_string(), "p": p}));
    Ok(Output::Json(envelope(
        "bounds",
        "asymptotic zero bounds (theoretical, not a computed count)",
        body,
    )))
}
