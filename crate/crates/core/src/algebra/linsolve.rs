//! Sparse fraction-free linear solving over `Q`.
//!
//! Rows are scaled to primitive integer vectors. Each new row is reduced at
//! its leading column against the stored pivot row by the cross
//! multiplication `(p/g) r - (a/g) pivot` and divided by its content, so
//! every intermediate value is an integer. Back substitution runs over `Q`
//! with free variables set to zero.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{AlgebraError, Matrix, Rational};

/// Solution vector with the rank of the coefficient matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSolution {
    pub x: Vec<Rational>,
    pub rank: usize,
}

type SparseRow = Vec<(usize, BigInt)>;

/// Incrementally assembled sparse system `M x = v`.
#[derive(Clone, Debug, Default)]
pub struct SparseSystem {
    ncols: usize,
    rows: Vec<(Vec<(usize, Rational)>, Rational)>,
}

impl SparseSystem {
    pub fn new(ncols: usize) -> Self {
        SparseSystem {
            ncols,
            rows: Vec::new(),
        }
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Append an equation; repeated column indices are summed.
    pub fn push_row(&mut self, entries: Vec<(usize, Rational)>, rhs: Rational) {
        debug_assert!(entries.iter().all(|(c, _)| *c < self.ncols));
        self.rows.push((entries, rhs));
    }

    /// `M x - v` for a candidate `x`.
    pub fn residual(&self, x: &[Rational]) -> Vec<Rational> {
        self.rows
            .iter()
            .map(|(entries, rhs)| entries.iter().fold(-rhs.clone(), |acc, (c, a)| acc + a * &x[*c]))
            .collect()
    }

    pub fn solve(&self) -> Result<LinearSolution, AlgebraError> {
        let n = self.ncols;
        let mut pivots: HashMap<usize, SparseRow> = HashMap::new();
        for (entries, rhs) in &self.rows {
            let mut row = integer_row(entries, rhs, n);
            loop {
                let Some((lead, _)) = row.first() else {
                    break;
                };
                let lead = *lead;
                if lead == n {
                    return Err(AlgebraError::Inconsistent);
                }
                match pivots.get(&lead) {
                    Some(p) => {
                        row = eliminate(&row, p);
                    }
                    None => {
                        pivots.insert(lead, row);
                        break;
                    }
                }
            }
        }
        let rank = pivots.len();
        let mut cols: Vec<usize> = pivots.keys().copied().collect();
        cols.sort_unstable_by(|a, b| b.cmp(a));
        let mut x = vec![Rational::zero(); n];
        for c in cols {
            let row = &pivots[&c];
            let mut acc = Rational::zero();
            let mut lead = BigInt::zero();
            for (j, a) in row {
                if *j == c {
                    lead = a.clone();
                } else if *j == n {
                    acc += Rational::from_integer(a.clone());
                } else {
                    acc -= Rational::from_integer(a.clone()) * &x[*j];
                }
            }
            x[c] = acc / Rational::from_integer(lead);
        }
        Ok(LinearSolution { x, rank })
    }
}

fn integer_row(entries: &[(usize, Rational)], rhs: &Rational, n: usize) -> SparseRow {
    let mut acc: std::collections::BTreeMap<usize, Rational> = Default::default();
    for (c, a) in entries {
        *acc.entry(*c).or_insert_with(Rational::zero) += a;
    }
    if !rhs.is_zero() {
        acc.insert(n, rhs.clone());
    }
    acc.retain(|_, v| !v.is_zero());
    let l = super::common_denominator(acc.values());
    let row: SparseRow = acc
        .into_iter()
        .map(|(c, v)| (c, (v * Rational::from_integer(l.clone())).to_integer()))
        .collect();
    make_primitive(row)
}

fn make_primitive(mut row: SparseRow) -> SparseRow {
    let g = row.iter().fold(BigInt::zero(), |g, (_, a)| g.gcd(a));
    let neg = row.first().is_some_and(|(_, a)| a.is_negative());
    if !g.is_zero() && (!g.is_one() || neg) {
        let g = if neg { -g } else { g };
        for (_, a) in row.iter_mut() {
            *a /= &g;
        }
    }
    row
}

/// `(p/g) r - (a/g) pivot` where `p, a` are the leading entries.
fn eliminate(r: &SparseRow, pivot: &SparseRow) -> SparseRow {
    let a = &r[0].1;
    let p = &pivot[0].1;
    let g = a.gcd(p);
    let fr = p / &g;
    let fp = a / &g;
    let mut out = Vec::with_capacity(r.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < r.len() || j < pivot.len() {
        let ci = r.get(i).map(|e| e.0).unwrap_or(usize::MAX);
        let cj = pivot.get(j).map(|e| e.0).unwrap_or(usize::MAX);
        if ci < cj {
            out.push((ci, &fr * &r[i].1));
            i += 1;
        } else if cj < ci {
            out.push((cj, -(&fp * &pivot[j].1)));
            j += 1;
        } else {
            let v = &fr * &r[i].1 - &fp * &pivot[j].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    make_primitive(out)
}

/// Solve a dense rational system; see [`SparseSystem::solve`].
pub fn exact_linear_solve(m: &Matrix<Rational>, v: &[Rational]) -> Result<LinearSolution, AlgebraError> {
    assert_eq!(m.rows(), v.len(), "right-hand side length mismatch");
    let mut sys = SparseSystem::new(m.cols());
    for (i, rhs) in v.iter().enumerate() {
        let entries = m
            .row(i)
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(j, a)| (j, a.clone()))
            .collect();
        sys.push_row(entries, rhs.clone());
    }
    sys.solve()
}
