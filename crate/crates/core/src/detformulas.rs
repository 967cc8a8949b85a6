//! Determinant evaluation formulas of Krattenthaler type.
//!
//! - the linear-fraction determinant with closed-form product evaluation,
//!   and its shifted-factorial and q-shifted-factorial specializations
//! - Warnaar's bracket (elliptic) extension and its delta-shifted special
//!   case
//! - the abstract factorized form `a_{ik} b_{jl} - a_{jk} b_{il} = p_{ij}
//!   q_{kl}` with its determinant evaluation and the bilinear tau identity
//!   that proves it
//!
//! Every closed-form product is computed in a fixed index order so float
//! comparisons are bit-deterministic.

use crate::error::{Error, Result};
use crate::linalg::{det, Matrix};
use crate::report::IdentityReport;
use crate::scalar::{scalar_eq, EqPolicy, Scalar};
use crate::series::{bracket, delta_shifted_factorial, near_zero, shifted_factorial, BracketKind};

fn binom2(m: usize) -> i64 {
    (m * (m.saturating_sub(1)) / 2) as i64
}

fn binom3(m: usize) -> i64 {
    if m < 3 {
        0
    } else {
        (m * (m - 1) * (m - 2) / 6) as i64
    }
}

/// Entry matrix with row i, column j holding
/// prod_{k<j} (alpha_k x_i + beta_k)/(gamma_k x_i + delta_k).
fn linear_ratio_matrix(
    x: &[Scalar],
    alpha: &[Scalar],
    beta: &[Scalar],
    gamma: &[Scalar],
    delta: &[Scalar],
) -> Result<Matrix> {
    let m = x.len() - 1;
    let kind = x[0].kind();
    let mut entries = Vec::with_capacity((m + 1) * (m + 1));
    for (i, xi) in x.iter().enumerate() {
        let mut acc = kind.one();
        entries.push(acc.clone());
        for k in 0..m {
            let den = &(&gamma[k] * xi) + &delta[k];
            if near_zero(&den) {
                return Err(Error::ZeroDenominatorEntry { i, k });
            }
            acc = &(&acc * &(&(&alpha[k] * xi) + &beta[k])) / &den;
            entries.push(acc.clone());
        }
    }
    Ok(Matrix::new(m + 1, m + 1, entries))
}

/// Direct determinant side of the linear-fraction formula.
pub fn krattenthaler_lhs(
    x: &[Scalar],
    alpha: &[Scalar],
    beta: &[Scalar],
    gamma: &[Scalar],
    delta: &[Scalar],
) -> Result<Scalar> {
    det(&linear_ratio_matrix(x, alpha, beta, gamma, delta)?)
}

/// Closed-form product side:
/// prod_{i<j}(x_j - x_i) prod_{k<=l<m}(alpha_k delta_l - beta_k gamma_l)
///   / prod_i prod_k (gamma_k x_i + delta_k).
pub fn krattenthaler_rhs(
    x: &[Scalar],
    alpha: &[Scalar],
    beta: &[Scalar],
    gamma: &[Scalar],
    delta: &[Scalar],
) -> Result<Scalar> {
    let m = x.len() - 1;
    let kind = x[0].kind();
    let mut num = kind.one();
    for i in 0..=m {
        for j in i + 1..=m {
            num = &num * &(&x[j] - &x[i]);
        }
    }
    for k in 0..m {
        for l in k..m {
            num = &num * &(&(&alpha[k] * &delta[l]) - &(&beta[k] * &gamma[l]));
        }
    }
    let mut den = kind.one();
    for (i, xi) in x.iter().enumerate() {
        for k in 0..m {
            let f = &(&gamma[k] * xi) + &delta[k];
            if near_zero(&f) {
                return Err(Error::ZeroDenominatorEntry { i, k });
            }
            den = &den * &f;
        }
    }
    Ok(&num / &den)
}

/// RHS of the shifted-factorial specialization
/// det((a+x_i)_j/(b+x_i)_j) = prod_{i<j}(x_j-x_i) prod_{k=1..m}(b-a)_k
///   / prod_i (b+x_i)_m.
pub fn shifted_ratio_det_rhs(a: &Scalar, b: &Scalar, x: &[Scalar]) -> Result<Scalar> {
    let m = x.len() - 1;
    let kind = a.kind();
    let mut num = kind.one();
    for i in 0..=m {
        for j in i + 1..=m {
            num = &num * &(&x[j] - &x[i]);
        }
    }
    let bma = b - a;
    for k in 1..=m {
        num = &num * &shifted_factorial(&bma, k);
    }
    let mut den = kind.one();
    for xi in x {
        let f = shifted_factorial(&(b + xi), m);
        if near_zero(&f) {
            return Err(Error::PoleInDenominator);
        }
        den = &den * &f;
    }
    Ok(&num / &den)
}

/// q-shifted factorial (a; q)_k = (1-a)(1-qa)...(1-q^{k-1}a).
pub fn q_shifted_factorial(a: &Scalar, q: &Scalar, k: usize) -> Scalar {
    let kind = a.kind();
    let one = kind.one();
    let mut acc = one.clone();
    let mut apow = a.clone();
    for _ in 0..k {
        acc = &acc * &(&one - &apow);
        apow = &apow * q;
    }
    acc
}

/// q-specializations checked against the direct determinant.
#[derive(Clone, Debug)]
pub enum QRatioCase {
    /// det(prod_{k<j} (a x_i; q)_j / (b x_i; q)_j) against the
    /// a^C(m+1,2) q^C(m+1,3) closed form.
    B {
        a: Scalar,
        b: Scalar,
        q: Scalar,
        x: Vec<Scalar>,
    },
    /// det((a z_i; p)_j (a c/z_i; p)_j / ((b z_i; q)_j (b c/z_i; q)_j))
    /// against the two-parameter closed form.
    C {
        a: Scalar,
        b: Scalar,
        c: Scalar,
        p: Scalar,
        q: Scalar,
        z: Vec<Scalar>,
    },
}

pub fn q_ratio_det_check(case: &QRatioCase, policy: &EqPolicy) -> Result<IdentityReport> {
    match case {
        QRatioCase::B { a, b, q, x } => {
            let m = x.len() - 1;
            let kind = a.kind();
            let mut entries = Vec::new();
            for (i, xi) in x.iter().enumerate() {
                for j in 0..=m {
                    let den = q_shifted_factorial(&(b * xi), q, j);
                    if near_zero(&den) {
                        return Err(Error::ZeroDenominatorEntry { i, k: j });
                    }
                    entries.push(&q_shifted_factorial(&(a * xi), q, j) / &den);
                }
            }
            let lhs = det(&Matrix::new(m + 1, m + 1, entries))?;
            let mut num = &a.pow_i64(binom2(m + 1)) * &q.pow_i64(binom3(m + 1));
            for i in 0..=m {
                for j in i + 1..=m {
                    num = &num * &(&x[i] - &x[j]);
                }
            }
            let boa = b / a;
            for k in 1..=m {
                num = &num * &q_shifted_factorial(&boa, q, k);
            }
            let mut den = kind.one();
            for xi in x {
                let f = q_shifted_factorial(&(b * xi), q, m);
                if near_zero(&f) {
                    return Err(Error::PoleInDenominator);
                }
                den = &den * &f;
            }
            IdentityReport::compare("q-ratio-b", lhs, &num / &den, policy)
        }
        QRatioCase::C { a, b, c, p, q, z } => {
            let m = z.len() - 1;
            let kind = a.kind();
            let one = kind.one();
            let mut entries = Vec::new();
            for (i, zi) in z.iter().enumerate() {
                let coz = c / zi;
                for j in 0..=m {
                    let den = &q_shifted_factorial(&(b * zi), q, j)
                        * &q_shifted_factorial(&(b * &coz), q, j);
                    if near_zero(&den) {
                        return Err(Error::ZeroDenominatorEntry { i, k: j });
                    }
                    let num = &q_shifted_factorial(&(a * zi), p, j)
                        * &q_shifted_factorial(&(a * &coz), p, j);
                    entries.push(&num / &den);
                }
            }
            let lhs = det(&Matrix::new(m + 1, m + 1, entries))?;
            let mut num = kind.one();
            for i in 0..=m {
                for j in i + 1..=m {
                    let pair = &(&z[j] - &z[i]) * &(&one - &(c / &(&z[i] * &z[j])));
                    num = &num * &pair;
                }
            }
            let abc = &(a * b) * c;
            for k in 0..m {
                for l in k..m {
                    let f1 = &(b * &q.pow_i64(l as i64)) - &(a * &p.pow_i64(k as i64));
                    let f2 = &one - &(&(&p.pow_i64(k as i64) * &q.pow_i64(l as i64)) * &abc);
                    num = &num * &(&f1 * &f2);
                }
            }
            let mut den = kind.one();
            for zi in z {
                let f = &q_shifted_factorial(&(b * zi), q, m)
                    * &q_shifted_factorial(&(b * &(c / zi)), q, m);
                if near_zero(&f) {
                    return Err(Error::PoleInDenominator);
                }
                den = &den * &f;
            }
            IdentityReport::compare("q-ratio-c", lhs, &num / &den, policy)
        }
    }
}

/// [p+q][p-q] under the given bracket.
fn pm(kind: &BracketKind, p: &Scalar, q: &Scalar) -> Result<Scalar> {
    Ok(&bracket(kind, &(p + q))? * &bracket(kind, &(p - q))?)
}

/// Warnaar's bracket extension:
/// det(prod_{k<j}[a_k±x_i]/[b_k±x_i]) =
///   prod_{i<j}[x_j±x_i] prod_{k<=l<m}[a_k±b_l] / prod_i prod_k [b_k±x_i].
pub fn warnaar_check(
    kind: &BracketKind,
    x: &[Scalar],
    a: &[Scalar],
    b: &[Scalar],
    policy: &EqPolicy,
) -> Result<IdentityReport> {
    let m = x.len() - 1;
    // bracket output kind (complex for trig/elliptic, rational otherwise)
    let unit = bracket(kind, &x[0])?.kind().one();
    let mut entries = Vec::new();
    for xi in x.iter() {
        let mut acc = unit.clone();
        for j in 0..=m {
            if j > 0 {
                let k = j - 1;
                let den = pm(kind, &b[k], xi)?;
                if near_zero(&den) {
                    return Err(Error::PoleInDenominator);
                }
                acc = &(&acc * &pm(kind, &a[k], xi)?) / &den;
            }
            entries.push(acc.clone());
        }
    }
    let lhs = det(&Matrix::new(m + 1, m + 1, entries))?;

    let out_kind = lhs.kind();
    let mut num = out_kind.one();
    for i in 0..=m {
        for j in i + 1..=m {
            num = &num * &pm(kind, &x[j], &x[i])?;
        }
    }
    for k in 0..m {
        for l in k..m {
            num = &num * &pm(kind, &a[k], &b[l])?;
        }
    }
    let mut den = out_kind.one();
    for xi in x {
        for bk in b {
            let f = pm(kind, bk, xi)?;
            if near_zero(&f) {
                return Err(Error::PoleInDenominator);
            }
            den = &den * &f;
        }
    }
    IdentityReport::compare("warnaar", lhs, &num / &den, policy)
}

/// [p+q]_j [p-q]_j under the delta-shifted factorial.
fn pm_fact(kind: &BracketKind, p: &Scalar, q: &Scalar, delta: &Scalar, j: usize) -> Result<Scalar> {
    Ok(&delta_shifted_factorial(kind, &(p + q), delta, j)?
        * &delta_shifted_factorial(kind, &(p - q), delta, j)?)
}

/// Shifted special case of Warnaar's formula with a_k = a + k delta,
/// b_k = b + k delta:
/// det([a±x_i]_j/[b±x_i]_j) = prod_{i<j}[x_i±x_j]
///   prod_{k=1..m}[b-a]_k[a+b+(k-1)delta]_k / prod_i [b±x_i]_m.
pub fn warnaar_shifted_check(
    kind: &BracketKind,
    a: &Scalar,
    b: &Scalar,
    delta: &Scalar,
    x: &[Scalar],
    policy: &EqPolicy,
) -> Result<IdentityReport> {
    let m = x.len() - 1;
    let mut entries = Vec::new();
    for xi in x {
        for j in 0..=m {
            let den = pm_fact(kind, b, xi, delta, j)?;
            if near_zero(&den) {
                return Err(Error::PoleInDenominator);
            }
            entries.push(&pm_fact(kind, a, xi, delta, j)? / &den);
        }
    }
    let lhs = det(&Matrix::new(m + 1, m + 1, entries))?;

    let out_kind = lhs.kind();
    let skind = x[0].kind();
    let mut num = out_kind.one();
    for i in 0..=m {
        for j in i + 1..=m {
            num = &num * &pm(kind, &x[i], &x[j])?;
        }
    }
    let apb = a + b;
    for k in 1..=m {
        num = &num * &delta_shifted_factorial(kind, &(b - a), delta, k)?;
        let arg = &apb + &(&skind.from_i64(k as i64 - 1) * delta);
        num = &num * &delta_shifted_factorial(kind, &arg, delta, k)?;
    }
    let mut den = out_kind.one();
    for xi in x {
        let f = pm_fact(kind, b, xi, delta, m)?;
        if near_zero(&f) {
            return Err(Error::PoleInDenominator);
        }
        den = &den * &f;
    }
    IdentityReport::compare("warnaar-shifted", lhs, &num / &den, policy)
}

/// Data for the abstract factorized determinant: `a`, `b` are (N+1) x N,
/// `p` is an antisymmetric (N+1) x (N+1) array, `q` an upper-triangular
/// N x N array, with `a_{ik} b_{jl} - a_{jk} b_{il} = p_{ij} q_{kl}`
/// validated on construction.
#[derive(Clone, Debug)]
pub struct FactorizedDetInput {
    pub a: Vec<Vec<Scalar>>,
    pub b: Vec<Vec<Scalar>>,
    pub p: Vec<Vec<Scalar>>,
    pub q: Vec<Vec<Scalar>>,
    pub n: usize,
}

impl FactorizedDetInput {
    pub fn new(
        a: Vec<Vec<Scalar>>,
        b: Vec<Vec<Scalar>>,
        p: Vec<Vec<Scalar>>,
        q: Vec<Vec<Scalar>>,
        policy: &EqPolicy,
    ) -> Result<FactorizedDetInput> {
        let n = a.len().saturating_sub(1);
        if n == 0
            || b.len() != n + 1
            || p.len() != n + 1
            || q.len() != n
            || a.iter().any(|r| r.len() != n)
            || b.iter().any(|r| r.len() != n)
            || p.iter().any(|r| r.len() != n + 1)
            || q.iter().any(|r| r.len() != n)
        {
            return Err(Error::InvalidInput(
                "factorized input needs a, b of shape (N+1)xN, p (N+1)x(N+1), q NxN".into(),
            ));
        }
        for (i, row) in b.iter().enumerate() {
            for (k, v) in row.iter().enumerate() {
                if near_zero(v) {
                    return Err(Error::ZeroDenominatorEntry { i, k });
                }
            }
        }
        for i in 0..=n {
            for j in 0..=n {
                let s = &p[i][j] + &p[j][i];
                let ok = match policy {
                    EqPolicy::Exact => s.is_zero(),
                    _ => near_zero(&s),
                };
                if !ok {
                    return Err(Error::NotAntisymmetric { i, j });
                }
            }
        }
        for i in 0..=n {
            for j in 0..=n {
                for k in 0..n {
                    for l in k..n {
                        let lhs = &(&a[i][k] * &b[j][l]) - &(&a[j][k] * &b[i][l]);
                        let rhs = &p[i][j] * &q[k][l];
                        if !scalar_eq(&lhs, &rhs, policy)? {
                            return Err(Error::FactorizationViolated { i, j, k, l });
                        }
                    }
                }
            }
        }
        Ok(FactorizedDetInput { a, b, p, q, n })
    }

    /// Instantiate from linear-fraction data: a_{ik} = alpha_k x_i + beta_k,
    /// b_{ik} = gamma_k x_i + delta_k, p_{ij} = x_i - x_j,
    /// q_{kl} = alpha_k delta_l - beta_k gamma_l.
    pub fn from_linear(
        x: &[Scalar],
        alpha: &[Scalar],
        beta: &[Scalar],
        gamma: &[Scalar],
        delta: &[Scalar],
        policy: &EqPolicy,
    ) -> Result<FactorizedDetInput> {
        let n = x.len() - 1;
        let a: Vec<Vec<Scalar>> = x
            .iter()
            .map(|xi| (0..n).map(|k| &(&alpha[k] * xi) + &beta[k]).collect())
            .collect();
        let b: Vec<Vec<Scalar>> = x
            .iter()
            .map(|xi| (0..n).map(|k| &(&gamma[k] * xi) + &delta[k]).collect())
            .collect();
        let p: Vec<Vec<Scalar>> = x
            .iter()
            .map(|xi| x.iter().map(|xj| xi - xj).collect())
            .collect();
        let q: Vec<Vec<Scalar>> = (0..n)
            .map(|k| {
                (0..n)
                    .map(|l| &(&alpha[k] * &delta[l]) - &(&beta[k] * &gamma[l]))
                    .collect()
            })
            .collect();
        FactorizedDetInput::new(a, b, p, q, policy)
    }

    /// Instantiate from bracket data: a_{ik} = [a_k±x_i], b_{ik} = [b_k±x_i],
    /// p_{ij} = [x_i±x_j], q_{kl} = [a_k±b_l].
    pub fn from_brackets(
        kind: &BracketKind,
        x: &[Scalar],
        av: &[Scalar],
        bv: &[Scalar],
        policy: &EqPolicy,
    ) -> Result<FactorizedDetInput> {
        let n = x.len() - 1;
        let mut a = Vec::new();
        let mut b = Vec::new();
        let mut p = Vec::new();
        for xi in x {
            a.push((0..n).map(|k| pm(kind, &av[k], xi)).collect::<Result<Vec<_>>>()?);
            b.push((0..n).map(|k| pm(kind, &bv[k], xi)).collect::<Result<Vec<_>>>()?);
            p.push(x.iter().map(|xj| pm(kind, xi, xj)).collect::<Result<Vec<_>>>()?);
        }
        let mut q = Vec::new();
        for k in 0..n {
            q.push(
                (0..n)
                    .map(|l| pm(kind, &av[k], &bv[l]))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        FactorizedDetInput::new(a, b, p, q, policy)
    }

    /// Window-shifted determinant
    /// s(r, c, m) = det(prod_{t<j} a_{r+i,c+t}/b_{r+i,c+t})_{i,j=0..m}.
    fn tau_shifted(&self, r: usize, c: usize, m: usize) -> Result<Scalar> {
        let kind = self.a[0][0].kind();
        let mut entries = Vec::with_capacity((m + 1) * (m + 1));
        for i in 0..=m {
            let mut acc = kind.one();
            for j in 0..=m {
                if j > 0 {
                    let t = j - 1;
                    acc = &acc * &(&self.a[r + i][c + t] / &self.b[r + i][c + t]);
                }
                entries.push(acc.clone());
            }
        }
        det(&Matrix::new(m + 1, m + 1, entries))
    }
}

/// Compare det X_m with the factorized product
/// prod_{i<j<=m} p_{ji} prod_{k<=l<m} q_{kl} / prod_{i<=m} prod_{k<m} b_{ik}.
pub fn abstract_factorized_det(
    input: &FactorizedDetInput,
    m: usize,
    policy: &EqPolicy,
) -> Result<IdentityReport> {
    if m > input.n {
        return Err(Error::InsufficientData { max: input.n });
    }
    let lhs = input.tau_shifted(0, 0, m)?;
    let kind = lhs.kind();
    let mut num = kind.one();
    for i in 0..=m {
        for j in i + 1..=m {
            num = &num * &input.p[j][i];
        }
    }
    for k in 0..m {
        for l in k..m {
            num = &num * &input.q[k][l];
        }
    }
    let mut den = kind.one();
    for i in 0..=m {
        for k in 0..m {
            den = &den * &input.b[i][k];
        }
    }
    IdentityReport::compare("abstract-factorized", lhs, &num / &den, policy)
}

/// Bilinear tau identity obtained by applying the Lewis–Carroll formula to
/// X_{m+1} and factoring the common first-column ratios out of the corner
/// minors:
///
/// `(a_{m+1,0}/b_{m+1,0}) τ_m s(1,1,m) − (a_{00}/b_{00}) s(1,0,m) s(0,1,m)
///    = τ_{m+1} s(1,1,m−1)`
///
/// where s(r, c, m) is the window-shifted tau determinant.
pub fn tau_bilinear_check(
    input: &FactorizedDetInput,
    m: usize,
    policy: &EqPolicy,
) -> Result<IdentityReport> {
    if m == 0 || m + 1 > input.n {
        return Err(Error::InsufficientData {
            max: input.n.saturating_sub(1),
        });
    }
    let tau_m = input.tau_shifted(0, 0, m)?;
    let tau_m1 = input.tau_shifted(0, 0, m + 1)?;
    let s11_m = input.tau_shifted(1, 1, m)?;
    let s11_m_1 = input.tau_shifted(1, 1, m - 1)?;
    let s10 = input.tau_shifted(1, 0, m)?;
    let s01 = input.tau_shifted(0, 1, m)?;
    let c_top = &input.a[m + 1][0] / &input.b[m + 1][0];
    let c_zero = &input.a[0][0] / &input.b[0][0];
    let lhs = &(&(&c_top * &tau_m) * &s11_m) - &(&(&c_zero * &s10) * &s01);
    let rhs = &tau_m1 * &s11_m_1;
    IdentityReport::compare("tau-bilinear", lhs, rhs, policy)
}
