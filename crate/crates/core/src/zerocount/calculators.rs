//! Closed-form asymptotic zero bounds, evaluated exactly when the numbers
//! are small enough and in base-10 logarithms otherwise. The universal
//! constants in the exponents are inputs.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::ZeroCountError;
use crate::algebra::{rational_to_f64, Rational};

/// Results above this many bits are only reported in log space.
pub const EXACT_BIT_LIMIT: u64 = 1 << 20;

pub const THEORETICAL_LABEL: &str = "theoretical, not a computed count";

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalculatorConstants {
    /// Exponent constant of the double-exponential bounds.
    pub c: f64,
    /// Exponent constant of the bound polynomial in the data.
    pub c_p: f64,
}

impl Default for CalculatorConstants {
    fn default() -> Self {
        CalculatorConstants { c: 1.0, c_p: 1.0 }
    }
}

/// A bound of the form `prefactor * base^exponent`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalculatorValue {
    pub formula: String,
    pub label: String,
    /// Exact decimal value (or fraction) when it is small enough.
    pub exact: Option<String>,
    pub log10: Option<f64>,
    pub log10_log10: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CalculatorReport {
    pub d: usize,
    pub rho: String,
    pub constants: CalculatorConstants,
    /// `(2/rho)^(2^(d^c))`.
    pub double_exponential: CalculatorValue,
    /// `n (M/rho)^(d^(c_p p^3))`.
    pub polynomial_data: CalculatorValue,
    /// `(2/rho)^(2^(d^c))` for the family-wide corollary, with its own constant.
    pub uniform: CalculatorValue,
}

fn log10_rational(r: &Rational) -> f64 {
    let f = rational_to_f64(r);
    if f.is_finite() && f > 0.0 && f > 1e-300 && f < 1e300 {
        return f.log10();
    }
    log10_big(r.numer()) - log10_big(r.denom())
}

fn log10_big(n: &BigInt) -> f64 {
    let digits = n.abs().to_string();
    let k = digits.len().min(17);
    let lead: f64 = digits[..k].parse().unwrap_or(1.0);
    lead.log10() + (digits.len() - k) as f64
}

fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `prefactor * base^(2^inner)` or `prefactor * base^inner`, where the
/// outer exponent is `exp2(inner_log2)` when `double` is set.
fn evaluate(
    formula: String,
    prefactor: &Rational,
    base: &Rational,
    exponent_log10: f64,
    exact_exponent: Option<u64>,
) -> CalculatorValue {
    let lb = log10_rational(base);
    let lp = log10_rational(prefactor);
    let loglog = if lb > 0.0 {
        Some(exponent_log10 + lb.log10())
    } else {
        None
    };
    let log10 = {
        let e = 10f64.powf(exponent_log10);
        let v = lp + e * lb;
        v.is_finite().then_some(v)
    };
    let exact = exact_exponent.and_then(|e| {
        let bits = (base.numer().bits().max(base.denom().bits())).saturating_mul(e);
        if bits > EXACT_BIT_LIMIT {
            return None;
        }
        let mut acc = Rational::one();
        let mut b = base.clone();
        let mut k = e;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &b;
            }
            b = &b * &b;
            k >>= 1;
        }
        Some(format_rational(&(prefactor * acc)))
    });
    CalculatorValue {
        formula,
        label: THEORETICAL_LABEL.to_string(),
        exact,
        log10,
        log10_log10: loglog,
    }
}

fn integral(c: f64) -> Option<u32> {
    (c >= 0.0 && c.fract() == 0.0 && c < 64.0).then_some(c as u32)
}

/// `(2/rho)^(2^(d^c))`.
pub fn double_exponential_bound(d: usize, rho: &Rational, c: f64) -> Result<CalculatorValue, ZeroCountError> {
    check_rho(rho)?;
    let base = Rational::from_integer(2.into()) / rho;
    let inner_log10 = c * (d as f64).log10();
    let exponent_log10 = 10f64.powf(inner_log10) * 2f64.log10();
    let exact = integral(c).and_then(|ci| {
        let inner = (d as u64).checked_pow(ci)?;
        (inner < 64).then(|| 1u64 << inner)
    });
    Ok(evaluate(
        format!("(2/rho)^(2^(d^c)), d = {d}, c = {c}"),
        &Rational::one(),
        &base,
        exponent_log10,
        exact,
    ))
}

/// `n (M/rho)^(d^(c_p p^3))`.
pub fn polynomial_data_bound(
    n: usize,
    m: &Rational,
    rho: &Rational,
    d: usize,
    p: usize,
    c_p: f64,
) -> Result<CalculatorValue, ZeroCountError> {
    check_rho(rho)?;
    let base = m / rho;
    let power = c_p * (p as f64).powi(3);
    let exponent_log10 = power * (d as f64).log10();
    let exact = integral(power).and_then(|pw| (d as u64).checked_pow(pw));
    Ok(evaluate(
        format!("n (M/rho)^(d^(c_p p^3)), n = {n}, d = {d}, p = {p}, c_p = {c_p}"),
        &Rational::from_integer(BigInt::from(n)),
        &base,
        exponent_log10,
        exact,
    ))
}

fn check_rho(rho: &Rational) -> Result<(), ZeroCountError> {
    if !rho.is_positive() || rho >= &Rational::one() || rho.is_zero() {
        return Err(ZeroCountError::InvalidRho(rational_to_f64(rho)));
    }
    Ok(())
}

/// All calculators at once.
pub fn asymptotic_bound_calculators(
    d: usize,
    rho: &Rational,
    n: usize,
    m: &Rational,
    p: usize,
    constants: CalculatorConstants,
) -> Result<CalculatorReport, ZeroCountError> {
    let mut uniform = double_exponential_bound(d, rho, constants.c)?;
    uniform.formula = format!("uniform over the family: {}", uniform.formula);
    Ok(CalculatorReport {
        d,
        rho: format_rational(rho),
        constants,
        double_exponential: double_exponential_bound(d, rho, constants.c)?,
        polynomial_data: polynomial_data_bound(n, m, rho, d, p, constants.c_p)?,
        uniform,
    })
}

/// Base-10 logarithm of an exact decimal integer string.
pub fn log10_of_decimal(s: &str) -> Option<f64> {
    let n: BigInt = s.parse().ok()?;
    if !n.is_positive() {
        return None;
    }
    Some(log10_big(&n))
}

/// Decimal digits of `v`, or `None` when it does not fit `u128`.
pub fn exact_as_u128(v: &CalculatorValue) -> Option<u128> {
    v.exact.as_ref()?.parse::<BigInt>().ok()?.to_u128()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    #[test]
    fn quadratic_half() {
        let v = double_exponential_bound(2, &rat(1, 2), 1.0).unwrap();
        assert_eq!(v.exact.as_deref(), Some("256"));
        assert!((v.log10.unwrap() - 256f64.log10()).abs() < 1e-12);
    }

    #[test]
    fn cubic_tenth() {
        let v = double_exponential_bound(3, &rat(1, 10), 1.0).unwrap();
        assert_eq!(exact_as_u128(&v), Some(25_600_000_000));
    }

    #[test]
    fn log_space_matches_exact() {
        let v = double_exponential_bound(3, &rat(1, 10), 2.0).unwrap();
        let l = v.log10.unwrap();
        assert!((l - 512.0 * 20f64.log10()).abs() < 1e-9 * l);
        let from_exact = log10_of_decimal(v.exact.as_deref().unwrap()).unwrap();
        assert!((l - from_exact).abs() <= 1e-9 * l);
    }

    #[test]
    fn huge_values_stay_in_log_space() {
        let v = double_exponential_bound(10, &rat(1, 10), 4.0).unwrap();
        assert!(v.exact.is_none());
        assert!(v.log10.is_none());
        let ll = v.log10_log10.unwrap();
        assert!((ll - (10000.0 * 2f64.log10() + 20f64.log10().log10())).abs() < 1e-9);
    }

    #[test]
    fn polynomial_bound() {
        let v = polynomial_data_bound(3, &rat(2, 1), &rat(1, 2), 2, 1, 1.0).unwrap();
        assert_eq!(v.exact.as_deref(), Some("48"));
    }

    #[test]
    fn rho_must_be_inside_unit_interval() {
        assert!(matches!(
            double_exponential_bound(2, &rat(3, 2), 1.0),
            Err(ZeroCountError::InvalidRho(_))
        ));
        assert!(double_exponential_bound(2, &rat(0, 1), 1.0).is_err());
    }
}
