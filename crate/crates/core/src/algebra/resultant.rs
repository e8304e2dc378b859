//! Sylvester resultants.

use super::{AlgebraError, MultiPoly, PolyMatrix, Var};

/// Sylvester matrix of `f` and `g` with respect to `v`: `deg g` shifted rows
/// of `f` coefficients followed by `deg f` shifted rows of `g`, highest
/// power first.
pub fn sylvester_matrix(f: &MultiPoly, g: &MultiPoly, v: Var) -> Result<PolyMatrix, AlgebraError> {
    if f.is_zero() || g.is_zero() {
        return Err(AlgebraError::DegenerateInput("resultant of a zero polynomial"));
    }
    let m = f.degree_in(v);
    let n = g.degree_in(v);
    if m == 0 || n == 0 {
        return Err(AlgebraError::DegenerateInput(
            "resultant needs positive degree in the eliminated variable",
        ));
    }
    let fc = f.coefficients_in(v);
    let gc = g.coefficients_in(v);
    let size = m + n;
    let mut s = PolyMatrix::zeros(size, size);
    for i in 0..n {
        for k in 0..=m {
            s.set(i, i + m - k, fc[k].clone());
        }
    }
    for i in 0..m {
        for k in 0..=n {
            s.set(n + i, i + n - k, gc[k].clone());
        }
    }
    Ok(s)
}

/// `Res_v(f, g) = det Sylvester(f, g)`.
pub fn resultant(f: &MultiPoly, g: &MultiPoly, v: Var) -> Result<MultiPoly, AlgebraError> {
    Ok(sylvester_matrix(f, g, v)?.determinant())
}
