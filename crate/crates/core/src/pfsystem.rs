//! Picard-Fuchs systems `I' = (A / a) I` for the periods of a basis of
//! forms, and scalar equations for single components.

use std::fmt;

use num_complex::Complex64;
use num_traits::Signed;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::roots::{isolate_roots, IsolatedRoot};
use crate::algebra::{Matrix, Monomial, MultiPoly, RatFunc, Rational, UniPoly};
use crate::hamiltonian::{
    critical_values, is_regular_at_infinity, monomial_basis, Hamiltonian, HamiltonianError, MonomialBasis, SingularSet,
};
use crate::petrov::{default_cap, ideal_representation, petrov_decompose, OneForm, PetrovError};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PfError {
    #[error(transparent)]
    Hamiltonian(#[from] HamiltonianError),
    #[error(transparent)]
    Petrov(#[from] PetrovError),
    #[error("the matrix K is singular; the basis periods are linearly dependent")]
    DegenerateK,
    #[error("coefficient c[{row}][{col}] has degree {degree} > {bound}")]
    DegreeBoundViolated {
        row: usize,
        col: usize,
        degree: usize,
        bound: usize,
    },
    #[error("decomposition failed its exact reconstruction check")]
    ReconstructionMismatch,
    #[error("component {index} out of range for a system of dimension {dim}")]
    ComponentOutOfRange { index: usize, dim: usize },
    #[error("expected {expected} weights, got {found}")]
    WeightCount { expected: usize, found: usize },
}

/// `omega_i = x^(a+1) y^b / (a+1) dy` for each basis monomial `x^a y^b`, so
/// that `d omega_i = x^a y^b dx ^ dy`.
pub fn make_basis_forms(basis: &MonomialBasis) -> Vec<OneForm> {
    basis
        .monomials
        .iter()
        .map(|&(a, b)| {
            OneForm::dy(MultiPoly::monomial(
                Monomial::new(a + 1, b, 0),
                Rational::new(1.into(), (a as i64 + 1).into()),
            ))
        })
        .collect()
}

/// A form `alpha` with `dH ^ alpha = d((x H_x + y H_y)^2 omega)`.
pub fn gelfand_leray_rhs(h: &Hamiltonian, omega: &OneForm) -> Result<OneForm, PfError> {
    let e = h.euler_multiplier();
    let target = omega.scale_poly(&(&e * &e));
    gelfand_leray(h, &target)
}

/// A form `alpha` with `dH ^ alpha = d omega`.
pub fn gelfand_leray(h: &Hamiltonian, omega: &OneForm) -> Result<OneForm, PfError> {
    let g = omega.exterior_derivative();
    let (a, b) = ideal_representation(&g, h, default_cap(h, g.degree()))?;
    let alpha = OneForm::new(a, b);
    if alpha.wedge_dh(h) != g {
        return Err(PfError::ReconstructionMismatch);
    }
    Ok(alpha)
}

/// `I' = (matrix / a) I` with polynomial entries in `t`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSystem {
    pub a: UniPoly,
    pub matrix: Matrix<UniPoly>,
}

impl LinearSystem {
    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `(A(t) / a(t))` evaluated in floating point.
    pub fn eval(&self, t: Complex64) -> (Complex64, Vec<Vec<Complex64>>) {
        let a = self.a.eval_complex(t);
        let n = self.dim();
        let m = (0..n)
            .map(|i| (0..n).map(|j| self.matrix.get(i, j).eval_complex(t)).collect())
            .collect();
        (a, m)
    }

    /// Roots of `a`.
    pub fn poles(&self) -> Vec<IsolatedRoot> {
        isolate_roots(&self.a)
    }
}

/// Picard-Fuchs system for the periods of the basis forms.
#[derive(Clone, Debug, PartialEq)]
pub struct PFSystem {
    pub hamiltonian: Hamiltonian,
    pub basis: MonomialBasis,
    pub forms: Vec<OneForm>,
    pub k: Matrix<UniPoly>,
    pub l: Matrix<UniPoly>,
    pub system: LinearSystem,
    pub singular: SingularSet,
    /// Largest degree of a Gelfand-Leray form used for `L`.
    pub gelfand_leray_degree: usize,
}

impl PFSystem {
    pub fn dim(&self) -> usize {
        self.system.dim()
    }

    pub fn a(&self) -> &UniPoly {
        &self.system.a
    }

    pub fn matrix(&self) -> &Matrix<UniPoly> {
        &self.system.matrix
    }

    /// The a priori degree `d (d - 1)` for the Gelfand-Leray forms.
    pub fn gelfand_leray_degree_hint(&self) -> usize {
        let d = self.hamiltonian.degree();
        d * (d - 1)
    }
}

pub fn assemble_pf_system(h: &Hamiltonian) -> Result<PFSystem, PfError> {
    if !is_regular_at_infinity(h) {
        return Err(HamiltonianError::NotRegularAtInfinity.into());
    }
    let basis = monomial_basis(h)?;
    let forms = make_basis_forms(&basis);
    assemble_with_forms(h, basis, forms)
}

/// Assemble over a caller-supplied list of forms; used to probe degenerate
/// choices such as repeated forms.
pub fn assemble_with_forms(h: &Hamiltonian, basis: MonomialBasis, forms: Vec<OneForm>) -> Result<PFSystem, PfError> {
    let n = forms.len();
    let e = h.euler_multiplier();
    let e2 = &e * &e;
    let d = h.degree();
    let mut k = Matrix::<UniPoly>::zeros(n, n);
    let mut l = Matrix::<UniPoly>::zeros(n, n);
    let mut gl_degree = 0;
    for (row, w) in forms.iter().enumerate() {
        let lhs = w.scale_poly(&e2);
        let dec = petrov_decompose(&lhs, h, &forms)?;
        if dec.reconstruct(h, &forms) != lhs {
            return Err(PfError::ReconstructionMismatch);
        }
        for (col, c) in dec.coeffs.into_iter().enumerate() {
            if !c.is_zero() && c.degree() > d {
                return Err(PfError::DegreeBoundViolated {
                    row,
                    col,
                    degree: c.degree(),
                    bound: d,
                });
            }
            k.set(row, col, c);
        }
        let alpha = gelfand_leray(h, &lhs)?;
        gl_degree = gl_degree.max(alpha.degree());
        let dec = petrov_decompose(&alpha, h, &forms)?;
        if dec.reconstruct(h, &forms) != alpha {
            return Err(PfError::ReconstructionMismatch);
        }
        for (col, c) in dec.coeffs.into_iter().enumerate() {
            l.set(row, col, c);
        }
    }
    let det = k.determinant();
    if det.is_zero() {
        return Err(PfError::DegenerateK);
    }
    let rhs = l.sub(&k.derivative());
    let mut matrix = k.adjugate().mul(&rhs);
    let mut a = det;
    let g = matrix.entries().fold(a.clone(), |g, e| g.gcd(e));
    if !g.is_constant() {
        a = a.div_exact(&g).expect("gcd divides");
        matrix = matrix.map(|e| e.div_exact(&g).expect("gcd divides"));
    }
    let lc = a.leading_coeff().recip();
    a = a.scale(&lc);
    matrix = matrix.map(|e| e.scale(&lc));
    Ok(PFSystem {
        hamiltonian: h.clone(),
        basis,
        forms,
        k,
        l,
        system: LinearSystem { a, matrix },
        singular: critical_values(h)?,
        gelfand_leray_degree: gl_degree,
    })
}

/// Monic linear ODE `y^(n) + coeffs[0] y^(n-1) + ... + coeffs[n-1] y = 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct ScalarODE {
    pub order: usize,
    pub coeffs: Vec<RatFunc>,
    pub pole_set: Vec<IsolatedRoot>,
    pub true_singularities: SingularSet,
    /// Maximal entry degree of each row `alpha_j` produced while reducing.
    pub row_degrees: Vec<usize>,
}

impl ScalarODE {
    /// Build from coefficients ordered from `y^(n-1)` down to `y`.
    pub fn new(coeffs: Vec<RatFunc>, true_singularities: SingularSet) -> Self {
        let mut den = UniPoly::one();
        for c in &coeffs {
            let g = den.gcd(c.den());
            den = &den * &c.den().div_exact(&g).expect("gcd divides");
        }
        ScalarODE {
            order: coeffs.len(),
            coeffs,
            pole_set: isolate_roots(&den),
            true_singularities,
            row_degrees: Vec::new(),
        }
    }

    /// Coefficient of `y^(j)`.
    pub fn coeff_of_derivative(&self, j: usize) -> &RatFunc {
        &self.coeffs[self.order - 1 - j]
    }

    /// Whether `y` solves the equation exactly.
    pub fn annihilates(&self, y: &RatFunc) -> bool {
        let mut derivs = vec![y.clone()];
        for _ in 0..self.order {
            let next = derivs.last().expect("nonempty").derivative();
            derivs.push(next);
        }
        let mut acc = derivs[self.order].clone();
        for j in 0..self.order {
            acc = &acc + &(self.coeff_of_derivative(j) * &derivs[j]);
        }
        acc.is_zero()
    }

    pub fn coefficient_values(&self, t: Complex64) -> Vec<Complex64> {
        self.coeffs.iter().map(|c| c.eval_complex(t)).collect()
    }

    /// Poles that are not within isolation radii of a critical value.
    pub fn apparent_singularities(&self) -> Vec<IsolatedRoot> {
        self.pole_set
            .iter()
            .filter(|p| !self.true_singularities.is_near(p.value, p.radius))
            .copied()
            .collect()
    }
}

fn derivative_symbol(j: usize) -> String {
    match j {
        0 => "y".to_string(),
        1..=3 => format!("y{}", "'".repeat(j)),
        _ => format!("y^({})", j),
    }
}

impl fmt::Display for ScalarODE {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", derivative_symbol(self.order))?;
        for j in (0..self.order).rev() {
            let c = self.coeff_of_derivative(j);
            if c.is_zero() {
                continue;
            }
            let negative = c.num().leading_coeff().is_negative();
            let mag = if negative { -c } else { c.clone() };
            f.write_str(if negative { " - " } else { " + " })?;
            if mag != RatFunc::one() {
                write!(f, "({}) ", mag)?;
            }
            f.write_str(&derivative_symbol(j))?;
        }
        f.write_str(" = 0")
    }
}

/// Scalar equation for component `m` of `sys`, from the first linear
/// dependence among the rows `alpha_j` of `a^j I^(j) = A_j I`.
pub fn derive_scalar_ode(sys: &PFSystem, m: usize) -> Result<ScalarODE, PfError> {
    reduce_component(&sys.system, m, sys.singular.clone())
}

/// Scalar equation for `I_0 = sum mu_l I_l` via the system extended by
/// `I_0' = mu (A / a) I`.
pub fn augment_and_reduce(sys: &PFSystem, mu: &[Rational]) -> Result<ScalarODE, PfError> {
    let n = sys.dim();
    if mu.len() != n {
        return Err(PfError::WeightCount {
            expected: n,
            found: mu.len(),
        });
    }
    let mu_poly: Vec<UniPoly> = mu.iter().map(|c| UniPoly::constant(c.clone())).collect();
    let top = sys.matrix().vec_mul(&mu_poly);
    let mut big = Matrix::<UniPoly>::zeros(n + 1, n + 1);
    for j in 0..n {
        big.set(0, j + 1, top[j].clone());
        for i in 0..n {
            big.set(i + 1, j + 1, sys.matrix().get(i, j).clone());
        }
    }
    let ext = LinearSystem {
        a: sys.a().clone(),
        matrix: big,
    };
    reduce_component(&ext, 0, sys.singular.clone())
}

/// Reduction of one component of a general linear system.
pub fn reduce_component(sys: &LinearSystem, m: usize, singular: SingularSet) -> Result<ScalarODE, PfError> {
    let n = sys.dim();
    if m >= n {
        return Err(PfError::ComponentOutOfRange { index: m, dim: n });
    }
    let a = &sys.a;
    let da = a.derivative();
    let mut rows: Vec<Vec<UniPoly>> = Vec::new();
    let mut current: Vec<UniPoly> = (0..n)
        .map(|j| if j == m { UniPoly::one() } else { UniPoly::zero() })
        .collect();
    let mut row_degrees = Vec::new();
    let k = loop {
        row_degrees.push(current.iter().map(UniPoly::degree).max().unwrap_or(0));
        rows.push(current.clone());
        let stacked = Matrix::from_rows(rows.clone());
        if stacked.rank() < rows.len() {
            break rows.len() - 1;
        }
        let j = rows.len() - 1;
        let times_a = sys.matrix.vec_mul(&current);
        let jda = da.scale(&Rational::from_integer((j as i64).into()));
        current = (0..n)
            .map(|i| &(&(a * &current[i].derivative()) + &times_a[i]) - &(&jda * &current[i]))
            .collect();
    };
    let to_rf = |p: &UniPoly| RatFunc::from_poly(p.clone());
    let cols = Matrix::from_rows((0..n).map(|i| (0..k).map(|l| to_rf(&rows[l][i])).collect()).collect());
    let rhs: Vec<RatFunc> = rows[k].iter().map(to_rf).collect();
    let w = if k == 0 {
        Vec::new()
    } else {
        cols.solve(&rhs).expect("dependence was detected exactly")
    };
    let mut coeffs = Vec::with_capacity(k);
    for l in (0..k).rev() {
        let den = RatFunc::from_poly(a.pow((k - l) as u32));
        coeffs.push(-&(&w[l] / &den));
    }
    let mut ode = ScalarODE::new(coeffs, singular);
    ode.row_degrees = row_degrees;
    Ok(ode)
}

/// JSON-friendly view of a rational function.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RatFuncText {
    pub num: String,
    pub den: String,
}

impl From<&RatFunc> for RatFuncText {
    fn from(r: &RatFunc) -> Self {
        let (n, d) = r.integral_parts();
        RatFuncText {
            num: n.to_string(),
            den: d.to_string(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, parse_polynomial};

    fn circle_system() -> PFSystem {
        assemble_pf_system(&Hamiltonian::parse("x^2+y^2").unwrap()).unwrap()
    }

    #[test]
    fn basis_forms() {
        let b = MonomialBasis {
            monomials: vec![(0, 0), (0, 2), (1, 0)],
            leading_term_diagram: vec![],
        };
        let f = make_basis_forms(&b);
        assert_eq!(f[0], OneForm::dy(parse_polynomial("x").unwrap()));
        assert_eq!(f[1], OneForm::dy(parse_polynomial("x*y^2").unwrap()));
        assert_eq!(f[2], OneForm::dy(parse_polynomial("1/2*x^2").unwrap()));
        for (w, &(a, bb)) in f.iter().zip(&b.monomials) {
            assert_eq!(
                w.exterior_derivative(),
                MultiPoly::monomial(Monomial::new(a, bb, 0), int(1))
            );
        }
    }

    #[test]
    fn gelfand_leray_examples() {
        let h = Hamiltonian::parse("x^2+y^2").unwrap();
        let p = |s: &str| parse_polynomial(s).unwrap();
        let a = gelfand_leray_rhs(&h, &OneForm::dy(p("x"))).unwrap();
        assert_eq!(a, OneForm::new(p("-2*y^3"), p("10*x^3+12*x*y^2")));
        let a = gelfand_leray_rhs(&h, &OneForm::dx(p("y"))).unwrap();
        assert_eq!(a, OneForm::new(p("10*y^3"), p("-2*x^3-12*x*y^2")));
    }

    #[test]
    fn circle_system_exact() {
        let s = circle_system();
        assert_eq!(s.k, Matrix::from_rows(vec![vec![UniPoly::from_ints(&[0, 0, 4])]]));
        assert_eq!(s.l, Matrix::from_rows(vec![vec![UniPoly::from_ints(&[0, 12])]]));
        assert_eq!(s.a(), &UniPoly::t());
        assert_eq!(s.matrix(), &Matrix::from_rows(vec![vec![UniPoly::one()]]));
        assert_eq!(s.gelfand_leray_degree, 3);
        assert_eq!(s.gelfand_leray_degree_hint(), 2);
    }

    #[test]
    fn repeated_forms_are_degenerate() {
        let h = Hamiltonian::parse("x^2+y^2").unwrap();
        let basis = monomial_basis(&h).unwrap();
        let w = make_basis_forms(&basis)[0].clone();
        assert_eq!(
            assemble_with_forms(&h, basis, vec![w.clone(), w]).unwrap_err(),
            PfError::DegenerateK
        );
    }

    #[test]
    fn circle_scalar_equations() {
        let s = circle_system();
        let ode = derive_scalar_ode(&s, 0).unwrap();
        assert_eq!(ode.order, 1);
        assert_eq!(ode.to_string(), "y' - (1/t) y = 0");
        let pi_t = RatFunc::from_poly(UniPoly::t());
        assert!(ode.annihilates(&pi_t));

        let aug = augment_and_reduce(&s, &[int(1)]).unwrap();
        assert_eq!(aug.order, 2);
        assert_eq!(aug.to_string(), "y'' = 0");
        assert!(aug.annihilates(&RatFunc::one()));
        assert!(aug.annihilates(&pi_t));

        let flat = augment_and_reduce(&s, &[int(0)]).unwrap();
        assert_eq!(flat.to_string(), "y' = 0");
    }

    #[test]
    fn cubic_system_order() {
        let h = Hamiltonian::parse("x^3 - x*y^2 + y").unwrap();
        let s = assemble_pf_system(&h).unwrap();
        assert_eq!(s.dim(), 4);
        for m in 0..4 {
            let ode = derive_scalar_ode(&s, m).unwrap();
            assert_eq!(ode.order, 3);
            let cap = s
                .a()
                .degree()
                .max(s.matrix().entries().map(UniPoly::degree).max().unwrap());
            for (j, deg) in ode.row_degrees.iter().enumerate() {
                assert!(*deg <= j * cap);
            }
        }
        let aug = augment_and_reduce(&s, &[int(1), int(-2), int(3), int(1)]).unwrap();
        assert!(aug.order <= 5);
        assert!(aug.annihilates(&RatFunc::one()));
    }

    #[test]
    fn dense_cubic_reaches_full_order() {
        let h = Hamiltonian::parse("x^3 + 2*x^2*y - x*y^2 + 3*y^3 - x^2 + x*y + 2*y - 1").unwrap();
        let s = assemble_pf_system(&h).unwrap();
        let orders: Vec<usize> = (0..4).map(|m| derive_scalar_ode(&s, m).unwrap().order).collect();
        assert_eq!(orders, vec![3, 4, 4, 4]);
        let first = derive_scalar_ode(&s, 0).unwrap();
        assert!(first.annihilates(&RatFunc::one()));
    }
}
