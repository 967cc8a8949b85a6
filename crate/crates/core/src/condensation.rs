//! Determinant condensation.
//!
//! Given a square matrix split into an `r x r` block of "active" rows/columns
//! and a shared `s x s` trailing core, three condensed matrices are supported:
//!
//! - fixed core: every entry borders the same trailing core,
//! - moving core: the bordering rows slide down with the row index,
//! - renormalized moving core: each row is divided by its own core minor, so
//!   the condensed determinant equals the original divided by the trailing
//!   core minor.
//!
//! Each identity has a checker that evaluates both sides independently and
//! returns an [`IdentityReport`]. The Jacobi (Desnanot) check relates the
//! four corner minors of a matrix to its determinant.

use crate::error::{Error, Result};
use crate::linalg::{det, submatrix, Matrix};
use crate::report::IdentityReport;
use crate::scalar::{EqPolicy, Scalar};

fn split(x: &Matrix, r: usize) -> Result<usize> {
    let n = x.rows();
    if x.rows() != x.cols() {
        return Err(Error::NotSquare(x.rows(), x.cols()));
    }
    if r == 0 || r > n {
        return Err(Error::BadSplit { r, n });
    }
    Ok(n - r)
}

fn range(lo: usize, hi: usize) -> Vec<usize> {
    (lo..hi).collect()
}

fn bordered(j: usize, core: &[usize]) -> Vec<usize> {
    let mut v = Vec::with_capacity(core.len() + 1);
    v.push(j);
    v.extend_from_slice(core);
    v
}

/// Trailing core minor det X[r..n; r..n], with the empty-core convention 1.
fn core_minor(x: &Matrix, r: usize) -> Result<Scalar> {
    let n = x.rows();
    if r == n {
        return Ok(x.kind().one());
    }
    det(&submatrix(x, &range(r, n), &range(r, n))?)
}

/// Condensed matrix with entries `y_ij = det X[{i} ∪ core; {j} ∪ core]`
/// where the core is the trailing `s x s` block.
pub fn condense_fixed_core(x: &Matrix, r: usize) -> Result<Matrix> {
    let _s = split(x, r)?;
    let n = x.rows();
    let core = range(r, n);
    let mut entries = Vec::with_capacity(r * r);
    for i in 0..r {
        for j in 0..r {
            entries.push(det(&submatrix(x, &bordered(i, &core), &bordered(j, &core))?)?);
        }
    }
    Ok(Matrix::new(r, r, entries))
}

/// Condensed matrix with entries `y_ij = det X[i..=i+s; {j} ∪ core]`.
pub fn condense_moving_core(x: &Matrix, r: usize) -> Result<Matrix> {
    let s = split(x, r)?;
    let n = x.rows();
    let core = range(r, n);
    let mut entries = Vec::with_capacity(r * r);
    for i in 0..r {
        let rows = range(i, i + s + 1);
        for j in 0..r {
            entries.push(det(&submatrix(x, &rows, &bordered(j, &core))?)?);
        }
    }
    Ok(Matrix::new(r, r, entries))
}

/// Core minor dividing row `i` in the renormalized condensation:
/// `det X[i+1..=i+s; core]`.
fn row_core_minor(x: &Matrix, r: usize, s: usize, i: usize) -> Result<Scalar> {
    if s == 0 {
        return Ok(x.kind().one());
    }
    det(&submatrix(x, &range(i + 1, i + s + 1), &range(r, x.rows()))?)
}

/// Moving-core condensation with each row divided by its own sliding core
/// minor. Fails with [`Error::SingularCoreMinor`] naming the offending row
/// window when a dividing minor vanishes.
pub fn condense_moving_core_renormalized(x: &Matrix, r: usize) -> Result<Matrix> {
    let s = split(x, r)?;
    let y = condense_moving_core(x, r)?;
    let mut entries = Vec::with_capacity(r * r);
    for i in 0..r {
        let d = row_core_minor(x, r, s, i)?;
        if d.is_zero() {
            return Err(Error::SingularCoreMinor { window: i });
        }
        for j in 0..r {
            entries.push(y.at(i, j) / &d);
        }
    }
    Ok(Matrix::new(r, r, entries))
}

/// Check `det Y = det X * (core minor)^(r-1)` for the fixed-core condensation.
pub fn check_fixed_core(x: &Matrix, r: usize, policy: &EqPolicy) -> Result<IdentityReport> {
    let _s = split(x, r)?;
    let lhs = det(&condense_fixed_core(x, r)?)?;
    let core = core_minor(x, r)?;
    let mut rhs = det(x)?;
    for _ in 1..r {
        rhs = &rhs * &core;
    }
    IdentityReport::compare("fixed-core", lhs, rhs, policy)
}

/// Check `det Y = det X * (product of interior sliding core minors)` for the
/// moving-core condensation.
pub fn check_moving_core(x: &Matrix, r: usize, policy: &EqPolicy) -> Result<IdentityReport> {
    let s = split(x, r)?;
    let lhs = det(&condense_moving_core(x, r)?)?;
    let mut rhs = det(x)?;
    for i in 0..r.saturating_sub(1) {
        rhs = &rhs * &row_core_minor(x, r, s, i)?;
    }
    IdentityReport::compare("moving-core", lhs, rhs, policy)
}

/// Check `det X = det Ỹ * (trailing core minor)` for the renormalized
/// moving-core condensation.
pub fn check_moving_core_renormalized(x: &Matrix, r: usize, policy: &EqPolicy) -> Result<IdentityReport> {
    let _s = split(x, r)?;
    let yt = condense_moving_core_renormalized(x, r)?;
    let lhs = det(x)?;
    let rhs = &det(&yt)? * &core_minor(x, r)?;
    IdentityReport::compare("moving-core-renormalized", lhs, rhs, policy)
}

/// Jacobi / Desnanot check: the four corner `(n-1)`-minors against
/// `det X` times the central `(n-2)`-minor.
pub fn jacobi_check(x: &Matrix, policy: &EqPolicy) -> Result<IdentityReport> {
    let n = x.rows();
    if x.rows() != x.cols() {
        return Err(Error::NotSquare(x.rows(), x.cols()));
    }
    if n < 3 {
        return Err(Error::TooSmall { need: 3, got: n });
    }
    let head = range(0, n - 1);
    let tail = range(1, n);
    let mid = range(1, n - 1);
    let m_hh = det(&submatrix(x, &head, &head)?)?;
    let m_tt = det(&submatrix(x, &tail, &tail)?)?;
    let m_ht = det(&submatrix(x, &head, &tail)?)?;
    let m_th = det(&submatrix(x, &tail, &head)?)?;
    let lhs = &(&m_hh * &m_tt) - &(&m_ht * &m_th);
    let rhs = &det(x)? * &det(&submatrix(x, &mid, &mid)?)?;
    IdentityReport::compare("jacobi", lhs, rhs, policy)
}
