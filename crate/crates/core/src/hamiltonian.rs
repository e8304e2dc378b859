//! Structure of a polynomial Hamiltonian `H(x, y)`: leading form, behavior
//! at infinity, critical values and a monomial basis of the Jacobian
//! quotient of the leading form.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::roots::{isolate_roots, IsolatedRoot};
use crate::algebra::{
    groebner_basis, normal_form, parse_polynomial, poly_gcd, Matrix, Monomial, MonomialOrder, MultiPoly, ParseError,
    Rational, UniPoly, Var,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HamiltonianError {
    #[error("unsupported degree {0}; a Hamiltonian needs total degree at least 2")]
    UnsupportedDegree(usize),
    #[error("a Hamiltonian may only involve x and y")]
    ForeignVariable,
    #[error("not regular at infinity: the leading form has a repeated linear factor")]
    NotRegularAtInfinity,
    #[error("critical points are not isolated: the partial derivatives share a common factor")]
    NonIsolatedCritical,
    #[error("quotient basis has {found} monomials, expected {expected}")]
    BasisCountMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Polynomial `H(x, y)` of degree `d >= 2` with its cached leading form.
#[derive(Clone, Debug, PartialEq)]
pub struct Hamiltonian {
    poly: MultiPoly,
    degree: usize,
    highest_part: MultiPoly,
}

/// Homogeneous component of maximal total degree.
pub fn highest_part(h: &MultiPoly) -> Result<MultiPoly, HamiltonianError> {
    let d = h.degree();
    if h.is_zero() || d < 2 {
        return Err(HamiltonianError::UnsupportedDegree(d));
    }
    Ok(h.homogeneous_part(d))
}

impl Hamiltonian {
    pub fn new(poly: MultiPoly) -> Result<Self, HamiltonianError> {
        if poly.involves(Var::T) {
            return Err(HamiltonianError::ForeignVariable);
        }
        let highest_part = highest_part(&poly)?;
        Ok(Hamiltonian {
            degree: poly.degree(),
            poly,
            highest_part,
        })
    }

    pub fn parse(text: &str) -> Result<Self, HamiltonianError> {
        Hamiltonian::new(parse_polynomial(text)?)
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn highest_part(&self) -> &MultiPoly {
        &self.highest_part
    }

    pub fn hx(&self) -> MultiPoly {
        self.poly.derive(Var::X)
    }

    pub fn hy(&self) -> MultiPoly {
        self.poly.derive(Var::Y)
    }

    /// `x H_x + y H_y`.
    pub fn euler_multiplier(&self) -> MultiPoly {
        let x = MultiPoly::var(Var::X);
        let y = MultiPoly::var(Var::Y);
        &(&x * &self.hx()) + &(&y * &self.hy())
    }

    /// `(d - 1)^2`.
    pub fn milnor_bound(&self) -> usize {
        (self.degree - 1) * (self.degree - 1)
    }

    /// `H(x, y) + c`.
    pub fn shifted(&self, c: &Rational) -> Hamiltonian {
        let poly = &self.poly + &MultiPoly::constant(c.clone());
        Hamiltonian::new(poly).expect("shift keeps the degree")
    }
}

impl fmt::Display for Hamiltonian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.poly)
    }
}

/// Whether the leading form splits into `d` pairwise distinct lines.
///
/// With `f(s) = H~(1, s)` the factor `x` occurs with multiplicity
/// `d - deg f`; every other line corresponds to a root of `f`.
pub fn is_regular_at_infinity(h: &Hamiltonian) -> bool {
    let d = h.degree();
    let f = dehomogenize(h.highest_part());
    let x_mult = d - f.degree();
    if x_mult > 1 {
        return false;
    }
    f.gcd(&f.derivative()).is_constant()
}

fn dehomogenize(form: &MultiPoly) -> UniPoly {
    let mut coeffs = vec![Rational::from_integer(0.into()); form.degree() + 1];
    for (m, c) in form.terms() {
        coeffs[m.exp(Var::Y) as usize] += c;
    }
    UniPoly::new(coeffs)
}

/// Complex critical values with isolation radii.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SingularSet {
    pub critical_values: Vec<IsolatedRoot>,
    pub count_with_multiplicity: usize,
    /// Set when `H` is not regular at infinity, so atypical values may
    /// exceed the critical values.
    pub atypical_warning: bool,
}

impl SingularSet {
    pub fn empty() -> Self {
        SingularSet {
            critical_values: Vec::new(),
            count_with_multiplicity: 0,
            atypical_warning: false,
        }
    }

    pub fn values(&self) -> Vec<Complex64> {
        self.critical_values.iter().map(|r| r.value).collect()
    }

    /// Distance from `t` to the nearest critical value, or infinity.
    pub fn distance(&self, t: Complex64) -> f64 {
        self.critical_values
            .iter()
            .map(|r| (r.value - t).norm())
            .fold(f64::INFINITY, f64::min)
    }

    /// Whether `t` lies within `margin` plus the isolation radius of a
    /// critical value.
    pub fn is_near(&self, t: Complex64, margin: f64) -> bool {
        self.critical_values
            .iter()
            .any(|r| (r.value - t).norm() <= r.radius + margin)
    }
}

/// Values `H(p)` at the complex zeros `p` of `(H_x, H_y)`.
///
/// The critical values are the eigenvalues of multiplication by `H` on
/// `Q[x, y] / <H_x, H_y>`, so they are the roots of its characteristic
/// polynomial, which is isolated numerically.
pub fn critical_values(h: &Hamiltonian) -> Result<SingularSet, HamiltonianError> {
    let hx = h.hx();
    let hy = h.hy();
    let g = poly_gcd(&hx, &hy).map_err(|_| HamiltonianError::NonIsolatedCritical)?;
    if !g.is_constant() {
        return Err(HamiltonianError::NonIsolatedCritical);
    }
    let gb = groebner_basis(&[hx, hy], MonomialOrder::GrevLex);
    let standard = standard_monomials(&gb).ok_or(HamiltonianError::NonIsolatedCritical)?;
    let n = standard.len();
    let mut set = SingularSet::empty();
    set.atypical_warning = !is_regular_at_infinity(h);
    if n == 0 {
        return Ok(set);
    }
    let index = |m: &Monomial| standard.iter().position(|s| s == m);
    let mut mult = Matrix::<Rational>::zeros(n, n);
    for (j, m) in standard.iter().enumerate() {
        let prod = h.poly().mul_monomial(m, &Rational::from_integer(1.into()));
        let nf = normal_form(&prod, &gb, MonomialOrder::GrevLex);
        for (mm, c) in nf.terms() {
            let i = index(mm).expect("normal form lies in the standard span");
            mult.set(i, j, c.clone());
        }
    }
    let char_poly = characteristic_polynomial(&mult);
    set.critical_values = isolate_roots(&char_poly);
    set.count_with_multiplicity = n;
    Ok(set)
}

/// `det(t I - M)` by fraction-free elimination over `Q[t]`.
pub fn characteristic_polynomial(m: &Matrix<Rational>) -> UniPoly {
    let n = m.rows();
    let mut tm = Matrix::<UniPoly>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut e = UniPoly::constant(-m.get(i, j).clone());
            if i == j {
                e = &e + &UniPoly::t();
            }
            tm.set(i, j, e);
        }
    }
    tm.determinant()
}

/// Monomials in `x, y` outside the staircase of `gb`, or `None` when there
/// are infinitely many.
fn standard_monomials(gb: &[MultiPoly]) -> Option<Vec<Monomial>> {
    let leads: Vec<Monomial> = gb.iter().map(|g| *g.leading_term().expect("nonzero").0).collect();
    let pure_x = leads
        .iter()
        .filter(|m| m.exp(Var::Y) == 0 && m.exp(Var::T) == 0)
        .map(|m| m.exp(Var::X))
        .min()?;
    let pure_y = leads
        .iter()
        .filter(|m| m.exp(Var::X) == 0 && m.exp(Var::T) == 0)
        .map(|m| m.exp(Var::Y))
        .min()?;
    let mut out = Vec::new();
    for a in 0..pure_x {
        for b in 0..pure_y {
            let m = Monomial::new(a, b, 0);
            if !leads.iter().any(|l| l.divides(&m)) {
                out.push(m);
            }
        }
    }
    out.sort_by(|p, q| p.degree().cmp(&q.degree()).then(q.exp(Var::X).cmp(&p.exp(Var::X))));
    Some(out)
}

/// Monomials `x^a y^b` spanning `Q[x, y] / <H~_x, H~_y>`, together with the
/// minimal generators of the leading-term staircase.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonomialBasis {
    pub monomials: Vec<(u32, u32)>,
    pub leading_term_diagram: Vec<(u32, u32)>,
}

impl MonomialBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn max_degree(&self) -> u32 {
        self.monomials.iter().map(|(a, b)| a + b).max().unwrap_or(0)
    }
}

pub fn monomial_basis(h: &Hamiltonian) -> Result<MonomialBasis, HamiltonianError> {
    if !is_regular_at_infinity(h) {
        return Err(HamiltonianError::NotRegularAtInfinity);
    }
    let form = h.highest_part();
    let gb = groebner_basis(&[form.derive(Var::X), form.derive(Var::Y)], MonomialOrder::GrevLex);
    let standard = standard_monomials(&gb).ok_or(HamiltonianError::NotRegularAtInfinity)?;
    let expected = h.milnor_bound();
    if standard.len() != expected {
        return Err(HamiltonianError::BasisCountMismatch {
            expected,
            found: standard.len(),
        });
    }
    let mut diagram: Vec<(u32, u32)> = gb
        .iter()
        .map(|g| {
            let m = g.leading_term().expect("nonzero").0;
            (m.exp(Var::X), m.exp(Var::Y))
        })
        .collect();
    diagram.sort_by(|p, q| (p.0 + p.1).cmp(&(q.0 + q.1)).then(q.0.cmp(&p.0)));
    Ok(MonomialBasis {
        monomials: standard.iter().map(|m| (m.exp(Var::X), m.exp(Var::Y))).collect(),
        leading_term_diagram: diagram,
    })
}
