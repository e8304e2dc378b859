//! Polynomial 1-forms modulo `dA + B dH`: decomposition over a basis of
//! forms with coefficients in `Q[H]`, and representations in the ideal
//! `<H_x, H_y>`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, Monomial, MultiPoly, Rational, SparseSystem, UniPoly, Var};
use crate::hamiltonian::Hamiltonian;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PetrovError {
    #[error("polynomial is not in the ideal <H_x, H_y> up to degree {cap}")]
    NotInIdeal { cap: usize },
    #[error("no decomposition found with ansatz degree up to {cap}")]
    DecompositionFailed { cap: usize },
}

/// `P dx + Q dy`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OneForm {
    pub p: MultiPoly,
    pub q: MultiPoly,
}

impl OneForm {
    pub fn new(p: MultiPoly, q: MultiPoly) -> Self {
        OneForm { p, q }
    }

    pub fn zero() -> Self {
        OneForm::new(MultiPoly::zero(), MultiPoly::zero())
    }

    /// `Q dy`.
    pub fn dy(q: MultiPoly) -> Self {
        OneForm::new(MultiPoly::zero(), q)
    }

    /// `P dx`.
    pub fn dx(p: MultiPoly) -> Self {
        OneForm::new(p, MultiPoly::zero())
    }

    /// Exact differential `dF`.
    pub fn exact(f: &MultiPoly) -> Self {
        OneForm::new(f.derive(Var::X), f.derive(Var::Y))
    }

    /// `max(deg P, deg Q)`.
    pub fn degree(&self) -> usize {
        self.p.degree().max(self.q.degree())
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    /// The `dx ^ dy` coefficient of `d(self)`: `Q_x - P_y`.
    pub fn exterior_derivative(&self) -> MultiPoly {
        &self.q.derive(Var::X) - &self.p.derive(Var::Y)
    }

    /// The `dx ^ dy` coefficient of `dH ^ self`: `H_x Q - H_y P`.
    pub fn wedge_dh(&self, h: &Hamiltonian) -> MultiPoly {
        &(&h.hx() * &self.q) - &(&h.hy() * &self.p)
    }

    pub fn scale_poly(&self, f: &MultiPoly) -> Self {
        OneForm::new(f * &self.p, f * &self.q)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        OneForm::new(self.p.scale(c), self.q.scale(c))
    }

    pub fn add(&self, other: &OneForm) -> Self {
        OneForm::new(&self.p + &other.p, &self.q + &other.q)
    }

    pub fn sub(&self, other: &OneForm) -> Self {
        OneForm::new(&self.p - &other.p, &self.q - &other.q)
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) dx + ({}) dy", self.p, self.q)
    }
}

/// `omega = sum c_i(H) omega_i + dA + B dH`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PetrovDecomposition {
    pub coeffs: Vec<UniPoly>,
    pub a: MultiPoly,
    pub b: MultiPoly,
    /// Degree used for the `A`, `B` ansatz.
    pub ansatz_degree: usize,
}

impl PetrovDecomposition {
    /// `sum c_i(H) omega_i + dA + B dH`.
    pub fn reconstruct(&self, h: &Hamiltonian, basis: &[OneForm]) -> OneForm {
        let mut acc = OneForm::exact(&self.a).add(&OneForm::new(&self.b * &h.hx(), &self.b * &h.hy()));
        for (c, w) in self.coeffs.iter().zip(basis) {
            if c.is_zero() {
                continue;
            }
            let ch = compose_with(c, h.poly());
            acc = acc.add(&w.scale_poly(&ch));
        }
        acc
    }
}

/// `c(H(x, y))`.
pub fn compose_with(c: &UniPoly, h: &MultiPoly) -> MultiPoly {
    let mut acc = MultiPoly::zero();
    for k in c.coeffs().iter().rev() {
        acc = &(&acc * h) + &MultiPoly::constant(k.clone());
    }
    acc
}

fn monomials_up_to(deg: usize) -> Vec<Monomial> {
    let mut out = Vec::new();
    for total in 0..=deg as u32 {
        for a in (0..=total).rev() {
            out.push(Monomial::new(a, total - a, 0));
        }
    }
    out
}

/// Accumulates linear equations "coefficient of each monomial of a form
/// component equals a target".
struct FormEquations {
    rows: [BTreeMap<Monomial, Vec<(usize, Rational)>>; 2],
}

impl FormEquations {
    fn new() -> Self {
        FormEquations {
            rows: [BTreeMap::new(), BTreeMap::new()],
        }
    }

    fn add(&mut self, component: usize, col: usize, p: &MultiPoly) {
        for (m, c) in p.terms() {
            self.rows[component].entry(*m).or_default().push((col, c.clone()));
        }
    }

    fn into_system(self, ncols: usize, target: [&MultiPoly; 2]) -> SparseSystem {
        let mut sys = SparseSystem::new(ncols);
        for (k, rows) in self.rows.into_iter().enumerate() {
            let mut rows = rows;
            for (m, _) in target[k].terms() {
                rows.entry(*m).or_default();
            }
            for (m, entries) in rows {
                sys.push_row(entries, target[k].coeff(&m));
            }
        }
        sys
    }
}

/// Solve `H_x b - H_y a = g` with `deg a, deg b <= D`, raising `D` one step
/// at a time from `max(deg g - d + 1, 0)` to `deg_cap`.
pub fn ideal_representation(
    g: &MultiPoly,
    h: &Hamiltonian,
    deg_cap: usize,
) -> Result<(MultiPoly, MultiPoly), PetrovError> {
    if g.is_zero() {
        return Ok((MultiPoly::zero(), MultiPoly::zero()));
    }
    let hx = h.hx();
    let hy = h.hy();
    let start = (g.degree() + 1).saturating_sub(h.degree());
    for deg in start..=deg_cap.max(start) {
        let monos = monomials_up_to(deg);
        let n = monos.len();
        let mut eq = FormEquations::new();
        // b columns first, then a
        for (i, m) in monos.iter().enumerate() {
            eq.add(0, i, &hx.mul_monomial(m, &Rational::from_integer(1.into())));
            eq.add(0, n + i, &hy.mul_monomial(m, &Rational::from_integer((-1).into())));
        }
        let zero = MultiPoly::zero();
        let sys = eq.into_system(2 * n, [g, &zero]);
        match sys.solve() {
            Ok(sol) => {
                let b = MultiPoly::from_terms(monos.iter().copied().zip(sol.x[..n].iter().cloned()));
                let a = MultiPoly::from_terms(monos.iter().copied().zip(sol.x[n..].iter().cloned()));
                return Ok((a, b));
            }
            Err(AlgebraError::Inconsistent) => continue,
            Err(e) => unreachable!("unexpected solver failure: {e}"),
        }
    }
    Err(PetrovError::NotInIdeal { cap: deg_cap })
}

/// Default escalation cap `d^3 max(deg omega, d)`.
pub fn default_cap(h: &Hamiltonian, omega_degree: usize) -> usize {
    let d = h.degree();
    d * d * d * omega_degree.max(d)
}

/// Decompose `omega` over `basis` with the default ansatz schedule.
pub fn petrov_decompose(
    omega: &OneForm,
    h: &Hamiltonian,
    basis: &[OneForm],
) -> Result<PetrovDecomposition, PetrovError> {
    petrov_decompose_capped(omega, h, basis, default_cap(h, omega.degree()))
}

/// Decompose with `deg c_i <= floor((deg omega - deg omega_i) / d)` and an
/// `A`, `B` ansatz degree starting at `deg omega + d`, doubling up to `cap`.
pub fn petrov_decompose_capped(
    omega: &OneForm,
    h: &Hamiltonian,
    basis: &[OneForm],
    cap: usize,
) -> Result<PetrovDecomposition, PetrovError> {
    let d = h.degree();
    let w = omega.degree();
    let c_degrees: Vec<Option<usize>> = basis.iter().map(|b| w.checked_sub(b.degree()).map(|k| k / d)).collect();
    if omega.is_zero() {
        return Ok(PetrovDecomposition {
            coeffs: vec![UniPoly::zero(); basis.len()],
            a: MultiPoly::zero(),
            b: MultiPoly::zero(),
            ansatz_degree: 0,
        });
    }
    // c_i(H) omega_i terms do not depend on the A, B degree
    let hp: Vec<MultiPoly> = {
        let top = c_degrees.iter().flatten().copied().max().unwrap_or(0);
        let mut v = vec![MultiPoly::one()];
        for k in 1..=top {
            let next = &v[k - 1] * h.poly();
            v.push(next);
        }
        v
    };
    let hx = h.hx();
    let hy = h.hy();
    let one = Rational::from_integer(1.into());
    let mut deg = w + d;
    loop {
        let deg_now = deg.min(cap);
        let mut eq = FormEquations::new();
        let mut col = 0;
        let mut c_cols: Vec<Vec<usize>> = Vec::with_capacity(basis.len());
        for (bf, cd) in basis.iter().zip(&c_degrees) {
            let mut cols = Vec::new();
            if let Some(cd) = cd {
                for r in 0..=*cd {
                    eq.add(0, col, &(&hp[r] * &bf.p));
                    eq.add(1, col, &(&hp[r] * &bf.q));
                    cols.push(col);
                    col += 1;
                }
            }
            c_cols.push(cols);
        }
        let monos = monomials_up_to(deg_now);
        let a_monos: Vec<Monomial> = monos.iter().copied().filter(|m| *m != Monomial::ONE).collect();
        let a_start = col;
        for m in &a_monos {
            let f = MultiPoly::monomial(*m, one.clone());
            eq.add(0, col, &f.derive(Var::X));
            eq.add(1, col, &f.derive(Var::Y));
            col += 1;
        }
        let b_start = col;
        for m in &monos {
            eq.add(0, col, &hx.mul_monomial(m, &one));
            eq.add(1, col, &hy.mul_monomial(m, &one));
            col += 1;
        }
        let sys = eq.into_system(col, [&omega.p, &omega.q]);
        match sys.solve() {
            Ok(sol) => {
                let coeffs = c_cols
                    .iter()
                    .map(|cols| UniPoly::new(cols.iter().map(|&c| sol.x[c].clone()).collect()))
                    .collect();
                let a = MultiPoly::from_terms(a_monos.iter().copied().zip(sol.x[a_start..b_start].iter().cloned()));
                let b = MultiPoly::from_terms(monos.iter().copied().zip(sol.x[b_start..].iter().cloned()));
                return Ok(PetrovDecomposition {
                    coeffs,
                    a,
                    b,
                    ansatz_degree: deg_now,
                });
            }
            Err(AlgebraError::Inconsistent) => {
                if deg_now >= cap {
                    return Err(PetrovError::DecompositionFailed { cap });
                }
                deg *= 2;
            }
            Err(e) => unreachable!("unexpected solver failure: {e}"),
        }
    }
}
