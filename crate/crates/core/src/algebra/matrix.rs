//! Dense matrices over exact commutative rings.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{MultiPoly, RatFunc, Rational, UniPoly};

/// Operations needed for fraction-free elimination.
pub trait ExactRing: Clone + PartialEq + fmt::Debug {
    fn zero_elem() -> Self;
    fn one_elem() -> Self;
    fn is_zero_elem(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
    /// `self / d` when `d` divides `self` exactly.
    fn div_exact(&self, d: &Self) -> Option<Self>;
}

macro_rules! ring_via_ops {
    ($t:ty, $zero:expr, $one:expr, $is_zero:expr, $div:expr) => {
        impl ExactRing for $t {
            fn zero_elem() -> Self {
                $zero
            }
            fn one_elem() -> Self {
                $one
            }
            fn is_zero_elem(&self) -> bool {
                ($is_zero)(self)
            }
            fn add_ref(&self, other: &Self) -> Self {
                self + other
            }
            fn sub_ref(&self, other: &Self) -> Self {
                self - other
            }
            fn mul_ref(&self, other: &Self) -> Self {
                self * other
            }
            fn neg_ref(&self) -> Self {
                -self
            }
            fn div_exact(&self, d: &Self) -> Option<Self> {
                ($div)(self, d)
            }
        }
    };
}

ring_via_ops!(
    Rational,
    <Rational as Zero>::zero(),
    <Rational as One>::one(),
    |a: &Rational| Zero::is_zero(a),
    |a: &Rational, d: &Rational| { (!Zero::is_zero(d)).then(|| a / d) }
);
ring_via_ops!(
    BigInt,
    <BigInt as Zero>::zero(),
    <BigInt as One>::one(),
    |a: &BigInt| Zero::is_zero(a),
    |a: &BigInt, d: &BigInt| {
        if Zero::is_zero(d) {
            return None;
        }
        let (q, r) = num_integer::Integer::div_rem(a, d);
        Zero::is_zero(&r).then_some(q)
    }
);
ring_via_ops!(
    UniPoly,
    UniPoly::zero(),
    UniPoly::one(),
    UniPoly::is_zero,
    |a: &UniPoly, d: &UniPoly| {
        if d.is_zero() {
            return None;
        }
        a.div_exact(d)
    }
);
ring_via_ops!(
    MultiPoly,
    MultiPoly::zero(),
    MultiPoly::one(),
    MultiPoly::is_zero,
    |a: &MultiPoly, d: &MultiPoly| {
        if d.is_zero() {
            return None;
        }
        a.div_exact(d)
    }
);
ring_via_ops!(
    RatFunc,
    RatFunc::zero(),
    RatFunc::one(),
    RatFunc::is_zero,
    |a: &RatFunc, d: &RatFunc| { a.checked_div(d).ok() }
);

/// Row-major dense matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: ExactRing> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero_elem(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m.set(i, i, T::one_elem());
        }
        m
    }

    /// Panics unless all rows have equal length.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn map<U: ExactRing>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        let mut out = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.get(i, j).clone());
            }
        }
        out
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add_ref(b)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub_ref(b)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        let mut out: Matrix<T> = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero_elem() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero_elem() {
                        continue;
                    }
                    let v = out.get(i, j).add_ref(&a.mul_ref(b));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn scale(&self, c: &T) -> Self {
        self.map(|a| a.mul_ref(c))
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero_elem(), |acc, (a, b)| acc.add_ref(&a.mul_ref(b)))
            })
            .collect()
    }

    /// Left multiplication of a row vector: `v^T M`.
    pub fn vec_mul(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.rows, v.len());
        (0..self.cols)
            .map(|j| (0..self.rows).fold(T::zero_elem(), |acc, i| acc.add_ref(&v[i].mul_ref(self.get(i, j)))))
            .collect()
    }

    /// Determinant by Bareiss fraction-free elimination; every division is
    /// exact. Panics on non-square input.
    pub fn determinant(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one_elem();
        }
        let mut m: Vec<Vec<T>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        let mut prev = T::one_elem();
        let mut negate = false;
        for k in 0..n - 1 {
            if m[k][k].is_zero_elem() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero_elem()) {
                    Some(i) => {
                        m.swap(k, i);
                        negate = !negate;
                    }
                    None => return T::zero_elem(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = m[k][k].mul_ref(&m[i][j]).sub_ref(&m[i][k].mul_ref(&m[k][j]));
                    m[i][j] = num.div_exact(&prev).expect("Bareiss division is exact");
                }
                m[i][k] = T::zero_elem();
            }
            prev = m[k][k].clone();
        }
        let d = m[n - 1][n - 1].clone();
        if negate {
            d.neg_ref()
        } else {
            d
        }
    }

    pub fn minor(&self, skip_row: usize, skip_col: usize) -> Self {
        let rows = (0..self.rows)
            .filter(|&i| i != skip_row)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| j != skip_col)
                    .map(|j| self.get(i, j).clone())
                    .collect()
            })
            .collect();
        Matrix::from_rows(rows)
    }

    /// Classical adjugate, so that `M adj(M) = det(M) I`.
    pub fn adjugate(&self) -> Self {
        assert!(self.is_square(), "adjugate of a non-square matrix");
        let n = self.rows;
        if n == 1 {
            return Matrix::identity(1);
        }
        let mut out = Matrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let c = self.minor(i, j).determinant();
                let c = if (i + j) % 2 == 1 { c.neg_ref() } else { c };
                out.set(j, i, c);
            }
        }
        out
    }
}

impl Matrix<RatFunc> {
    /// Solve `M x = b` over the field of rational functions. Returns one
    /// solution with free variables set to zero, or `None` if inconsistent.
    pub fn solve(&self, b: &[RatFunc]) -> Option<Vec<RatFunc>> {
        assert_eq!(self.rows, b.len());
        let n = self.cols;
        let mut aug: Vec<Vec<RatFunc>> = (0..self.rows)
            .map(|i| {
                let mut r = self.row(i).to_vec();
                r.push(b[i].clone());
                r
            })
            .collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            let Some(p) = (r..aug.len()).find(|&i| !aug[i][c].is_zero()) else {
                continue;
            };
            aug.swap(r, p);
            let inv = aug[r][c].recip().expect("nonzero pivot");
            for v in aug[r].iter_mut() {
                *v = &*v * &inv;
            }
            for i in 0..aug.len() {
                if i != r && !aug[i][c].is_zero() {
                    let f = aug[i][c].clone();
                    for j in c..=n {
                        let v = &aug[i][j] - &(&f * &aug[r][j]);
                        aug[i][j] = v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        if aug[r..].iter().any(|row| !row[n].is_zero()) {
            return None;
        }
        let mut x = vec![RatFunc::zero(); n];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = aug[i][n].clone();
        }
        Some(x)
    }
}

impl Matrix<UniPoly> {
    /// Rank over `Q(t)` by fraction-free elimination in `Q[t]`; each
    /// updated row is divided by the gcd of its entries.
    pub fn rank(&self) -> usize {
        let mut rows: Vec<Vec<UniPoly>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for row in rows.iter_mut().skip(rank + 1) {
                if row[c].is_zero() {
                    continue;
                }
                let f = row[c].clone();
                for j in c..self.cols {
                    row[j] = &(&pivot[c] * &row[j]) - &(&f * &pivot[j]);
                }
                let g = row.iter().fold(UniPoly::zero(), |g, e| g.gcd(e));
                if !g.is_zero() && !g.is_constant() {
                    for e in row.iter_mut() {
                        *e = e.div_exact(&g).expect("gcd divides");
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    pub fn derivative(&self) -> Self {
        self.map(UniPoly::derivative)
    }
}

impl<T: ExactRing + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}
