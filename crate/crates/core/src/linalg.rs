//! Dense matrices over [`Scalar`] with submatrix/minor selection and
//! deterministic determinant kernels.
//!
//! Exact determinants use fraction-free Bareiss elimination (denominators are
//! cleared per row first, so intermediate growth stays bounded); complex
//! determinants use LU with partial max-modulus pivoting and a fixed
//! lowest-index tie-break, so results are bit-identical across runs.

use rug::{Complete, Integer, Rational};

use crate::error::{Error, Result};
use crate::scalar::{CFloat, Scalar, ScalarKind};

/// Row-major dense matrix; all entries share one scalar backend.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>) -> Matrix {
        assert!(rows > 0 && cols > 0, "matrix dimensions must be positive");
        assert_eq!(entries.len(), rows * cols, "entry count mismatch");
        let kind = entries[0].kind();
        assert!(
            entries.iter().all(|e| e.kind() == kind),
            "entries must share one scalar backend and precision"
        );
        Matrix { rows, cols, entries }
    }

    /// Build from a generator over (row, col).
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Scalar) -> Matrix {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix::new(rows, cols, entries)
    }

    pub fn identity(kind: ScalarKind, n: usize) -> Matrix {
        Matrix::from_fn(n, n, |i, j| kind.from_i64(i64::from(i == j)))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn kind(&self) -> ScalarKind {
        self.entries[0].kind()
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        assert!(i < self.rows && j < self.cols, "index out of bounds");
        &mut self.entries[i * self.cols + j]
    }

    pub fn checked_at(&self, i: usize, j: usize) -> Result<&Scalar> {
        if i >= self.rows || j >= self.cols {
            return Err(Error::IndexOutOfBounds {
                row: i,
                col: j,
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(&self.entries[i * self.cols + j])
    }

    /// Matrix product; kinds must match.
    pub fn mul(&self, o: &Matrix) -> Matrix {
        assert_eq!(self.cols, o.rows, "inner dimension mismatch");
        let kind = self.kind();
        Matrix::from_fn(self.rows, o.cols, |i, j| {
            let mut acc = kind.zero();
            for k in 0..self.cols {
                acc = &acc + &(self.at(i, k) * o.at(k, j));
            }
            acc
        })
    }

    pub fn to_json(&self) -> serde_json::Value {
        let rows: Vec<serde_json::Value> = (0..self.rows)
            .map(|i| {
                serde_json::Value::Array((0..self.cols).map(|j| self.at(i, j).to_json()).collect())
            })
            .collect();
        serde_json::json!({ "rows": self.rows, "cols": self.cols, "entries": rows })
    }
}

/// Submatrix by explicit row/column index lists (duplicates permitted; a
/// duplicated index simply produces a singular minor).
pub fn submatrix(x: &Matrix, row_idx: &[usize], col_idx: &[usize]) -> Result<Matrix> {
    for &i in row_idx {
        if i >= x.rows() {
            return Err(Error::IndexOutOfBounds {
                row: i,
                col: 0,
                rows: x.rows(),
                cols: x.cols(),
            });
        }
    }
    for &j in col_idx {
        if j >= x.cols() {
            return Err(Error::IndexOutOfBounds {
                row: 0,
                col: j,
                rows: x.rows(),
                cols: x.cols(),
            });
        }
    }
    if row_idx.is_empty() || col_idx.is_empty() {
        // An empty selection carries no entries; callers wanting the empty
        // determinant convention go through minor_det.
        return Err(Error::IndexOutOfBounds {
            row: 0,
            col: 0,
            rows: x.rows(),
            cols: x.cols(),
        });
    }
    Ok(Matrix::from_fn(row_idx.len(), col_idx.len(), |a, b| {
        x.at(row_idx[a], col_idx[b]).clone()
    }))
}

/// Determinant of a square matrix.
pub fn det(x: &Matrix) -> Result<Scalar> {
    if x.rows() != x.cols() {
        return Err(Error::NotSquare(x.rows(), x.cols()));
    }
    match x.kind() {
        ScalarKind::Rational => Ok(det_bareiss(x)),
        ScalarKind::Complex(p) => Ok(det_lu(x, p)),
    }
}

/// Minor determinant det X[row_idx; col_idx]; empty index lists give 1
/// (empty determinant convention).
pub fn minor_det(x: &Matrix, row_idx: &[usize], col_idx: &[usize]) -> Result<Scalar> {
    if row_idx.len() != col_idx.len() {
        return Err(Error::LengthMismatch(row_idx.len(), col_idx.len()));
    }
    if row_idx.is_empty() {
        return Ok(x.kind().one());
    }
    det(&submatrix(x, row_idx, col_idx)?)
}

/// Fraction-free Bareiss determinant, exact over rationals. Denominators are
/// cleared row by row; the integer elimination keeps every intermediate entry
/// a true minor of the scaled matrix.
fn det_bareiss(x: &Matrix) -> Scalar {
    let n = x.rows();
    let mut scale = Rational::from(1);
    let mut a: Vec<Vec<Integer>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut lcm = Integer::from(1);
        for j in 0..n {
            let Scalar::Rational(r) = x.at(i, j) else {
                unreachable!()
            };
            lcm.lcm_mut(r.denom());
        }
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let Scalar::Rational(r) = x.at(i, j) else {
                unreachable!()
            };
            let v = (r * &lcm).complete();
            debug_assert_eq!(v.denom(), &1);
            row.push(v.into_numer_denom().0);
        }
        scale *= &lcm;
        a.push(row);
    }

    let mut sign = 1i64;
    let mut prev = Integer::from(1);
    for k in 0..n {
        if a[k][k] == 0 {
            // lowest-index nonzero pivot below; none means singular
            match (k + 1..n).find(|&l| a[l][k] != 0) {
                Some(l) => {
                    a.swap(k, l);
                    sign = -sign;
                }
                None => return Scalar::Rational(Rational::new()),
            }
        }
        if k == n - 1 {
            break;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = (&a[i][j] * &a[k][k]).complete() - (&a[i][k] * &a[k][j]).complete();
                let (q, r) = num.div_rem(prev.clone());
                debug_assert_eq!(r, 0, "Bareiss exact division failed");
                a[i][j] = q;
            }
            a[i][k] = Integer::new();
        }
        prev = a[k][k].clone();
    }
    let d = Rational::from((a[n - 1][n - 1].clone(), Integer::from(1)));
    Scalar::Rational(d * Rational::from(sign) / scale)
}

/// LU determinant with partial max-modulus pivoting; ties break to the lowest
/// row index so the elimination order is reproducible.
fn det_lu(x: &Matrix, prec: u32) -> Scalar {
    let n = x.rows();
    let mut a: Vec<Vec<CFloat>> = (0..n)
        .map(|i| (0..n).map(|j| x.at(i, j).to_cfloat(prec)).collect())
        .collect();
    let mut sign = 1i64;
    let mut detv = CFloat::from_i64(prec, 1);
    for k in 0..n {
        let mut piv = k;
        let mut best = a[k][k].abs();
        for l in k + 1..n {
            let m = a[l][k].abs();
            if m > best {
                best = m;
                piv = l;
            }
        }
        if a[piv][k].is_zero() {
            return Scalar::Complex(CFloat::zero(prec));
        }
        if piv != k {
            a.swap(k, piv);
            sign = -sign;
        }
        detv = detv.mul(&a[k][k]);
        for i in k + 1..n {
            let f = a[i][k].div(&a[k][k]);
            for j in k + 1..n {
                let t = f.mul(&a[k][j]);
                a[i][j] = a[i][j].sub(&t);
            }
            a[i][k] = CFloat::zero(prec);
        }
    }
    if sign < 0 {
        detv = detv.neg();
    }
    Scalar::Complex(detv)
}
