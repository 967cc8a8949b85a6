//! Padé interpolation problems and their solution routes.
//!
//! A problem asks for P_m(x) = Σ p_j f_j(x) and Q_n(x) = Σ q_j g_j(x) with
//! P_m(u_k) : Q_n(u_k) = λ_k : μ_k at N+1 = m+n+1 nodes. Routes:
//!
//! - [`solve_bruteforce`]: universal (N+2)×(N+2) determinants; coefficients
//!   are signed cofactors of the symbolic top row.
//! - [`solve_condensed`]: (m+1)×(m+1) determinants whose entries are the
//!   condensed quantities U_ij / V_ij (ratios of minors of the node-value
//!   matrices), with explicit prefactors so the result equals the brute-force
//!   solution exactly.
//! - [`solve_hg_krattenthaler`] / [`solve_hg_saalschutz`]: closed-form routes
//!   for the shifted-factorial-ratio basis on an arithmetic node progression,
//!   with minors evaluated by Krattenthaler's formula or by the
//!   Saalschütz-powered anti-triangular L-matrix construction.
//! - [`solve_vwp_krattenthaler`] / [`solve_vwp_ft`]: the bracket (rational /
//!   trigonometric / elliptic) analogues, with very-well-poised series
//!   entries and the Frenkel–Turaev summation in place of Saalschütz.
//!
//! All routes produce coefficient vectors comparable with
//! [`solutions_proj_eq`]; [`verify_solution`] checks the interpolation
//! contract μ_k P(u_k) − λ_k Q(u_k) = 0 node by node plus off-node probes.

pub mod io;

use rug::Float;

use crate::error::{Error, Result};
use crate::linalg::{det, minor_det, submatrix, Matrix};
use crate::scalar::{scalar_eq, sign, EqPolicy, Scalar, ScalarKind};
use crate::series::{
    delta_shifted_factorial, eval_f, eval_v, near_zero, shifted_factorial, vwp_term,
    BracketKind,
};

/// Solution route identifier.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    BruteForce,
    Condensed,
    HgKrattenthaler,
    HgSaalschutz,
    VwpKrattenthaler,
    VwpFrenkelTuraev,
}

impl Route {
    pub fn name(&self) -> &'static str {
        match self {
            Route::BruteForce => "brute",
            Route::Condensed => "condensed",
            Route::HgKrattenthaler => "hg-k",
            Route::HgSaalschutz => "hg-s",
            Route::VwpKrattenthaler => "vwp-k",
            Route::VwpFrenkelTuraev => "vwp-ft",
        }
    }

    pub fn from_name(s: &str) -> Result<Route> {
        Ok(match s {
            "brute" => Route::BruteForce,
            "condensed" => Route::Condensed,
            "hg-k" => Route::HgKrattenthaler,
            "hg-s" => Route::HgSaalschutz,
            "vwp-k" => Route::VwpKrattenthaler,
            "vwp-ft" => Route::VwpFrenkelTuraev,
            other => return Err(Error::InvalidInput(format!("unknown route '{other}'"))),
        })
    }
}

/// Generator for the prescribed values v_k = λ_k / μ_k. λ_k collects the
/// numerator factors (and z^k), μ_k the denominator factors (and w^k), so the
/// gauge of the pair is fixed, not just the ratio.
#[derive(Clone, Debug)]
pub enum WeightSpec {
    /// v_k = (z/w)^k ∏ (s_i)_k / ∏ (t_i)_k.
    PlainSt {
        s: Vec<Scalar>,
        t: Vec<Scalar>,
        z: Scalar,
        w: Scalar,
    },
    /// v_k = (z/w)^k (b+u)_k (c+u)_k / ((a+u)_k (d+u)_k) · ∏ (s_i)_k / ∏ (t_i)_k.
    /// The a..d here are expected to match the problem parameters.
    SimplifiedSt {
        a: Scalar,
        b: Scalar,
        c: Scalar,
        d: Scalar,
        s: Vec<Scalar>,
        t: Vec<Scalar>,
        z: Scalar,
        w: Scalar,
    },
    /// v_k = (z/w)^k ∏ [u−e_s+δ]_k / [u+e_s]_k.
    VwpE {
        e: Vec<Scalar>,
        z: Scalar,
        w: Scalar,
    },
    /// v_k = (z/w)^k · [u−a+δ]_k[u+b]_k[u+c]_k[u−d+δ]_k
    ///       / ([u+a]_k[u−b+δ]_k[u−c+δ]_k[u+d]_k) · ∏ [u−e_s+δ]_k/[u+e_s]_k.
    VwpESimplified {
        a: Scalar,
        b: Scalar,
        c: Scalar,
        d: Scalar,
        e: Vec<Scalar>,
        z: Scalar,
        w: Scalar,
    },
    /// Weights given directly as (λ_k, μ_k) pairs.
    Explicit(Vec<(Scalar, Scalar)>),
}

/// Basis family of an interpolation problem.
#[derive(Clone, Debug)]
pub enum Family {
    /// f_j(x) = (a+x)_j/(b+x)_j, g_j(x) = (c+x)_j/(d+x)_j, nodes u_k = u+k.
    RationalHg {
        a: Scalar,
        b: Scalar,
        c: Scalar,
        d: Scalar,
        u: Scalar,
    },
    /// f_j(x) = [a±x]_j/[b±x]_j, g_j(x) = [c±x]_j/[d±x]_j, nodes u_k = u+kδ.
    Vwp {
        kind: BracketKind,
        a: Scalar,
        b: Scalar,
        c: Scalar,
        d: Scalar,
        u: Scalar,
        delta: Scalar,
    },
}

/// A fully validated interpolation problem.
#[derive(Clone, Debug)]
pub struct InterpolationProblem {
    m: usize,
    n: usize,
    family: Family,
    points: Vec<Scalar>,
    weights: Vec<(Scalar, Scalar)>,
    wspec: WeightSpec,
}

/// A solved problem: coefficient vectors plus the route that produced them.
#[derive(Clone, Debug)]
pub struct PadeSolution {
    pub p: Vec<Scalar>,
    pub q: Vec<Scalar>,
    pub route: Route,
    /// The overall constant this route multiplied its P-side cofactors by
    /// (one for the brute-force route).
    pub normalization: Scalar,
}

fn lift(s: &Scalar, kind: ScalarKind) -> Scalar {
    match kind {
        ScalarKind::Rational => s.clone(),
        ScalarKind::Complex(p) => Scalar::Complex(s.to_cfloat(p)),
    }
}

fn common_kind(scalars: &[&Scalar]) -> ScalarKind {
    for s in scalars {
        if let ScalarKind::Complex(p) = s.kind() {
            return ScalarKind::Complex(p);
        }
    }
    ScalarKind::Rational
}

/// [a+x]_j [a−x]_j with δ-shifted bracket factorials.
fn pm_dsf(bk: &BracketKind, a: &Scalar, x: &Scalar, delta: &Scalar, j: usize) -> Result<Scalar> {
    let plus = delta_shifted_factorial(bk, &(a + x), delta, j)?;
    let minus = delta_shifted_factorial(bk, &(a - x), delta, j)?;
    Ok(&plus * &minus)
}

fn weight_scalars(wspec: &WeightSpec) -> Vec<&Scalar> {
    let mut v = Vec::new();
    match wspec {
        WeightSpec::PlainSt { s, t, z, w } => {
            v.extend(s.iter().chain(t.iter()));
            v.push(z);
            v.push(w);
        }
        WeightSpec::SimplifiedSt { a, b, c, d, s, t, z, w } => {
            v.extend([a, b, c, d]);
            v.extend(s.iter().chain(t.iter()));
            v.push(z);
            v.push(w);
        }
        WeightSpec::VwpE { e, z, w } => {
            v.extend(e.iter());
            v.push(z);
            v.push(w);
        }
        WeightSpec::VwpESimplified { a, b, c, d, e, z, w } => {
            v.extend([a, b, c, d]);
            v.extend(e.iter());
            v.push(z);
            v.push(w);
        }
        WeightSpec::Explicit(pairs) => {
            for (l, m) in pairs {
                v.push(l);
                v.push(m);
            }
        }
    }
    v
}

fn lift_wspec(wspec: &WeightSpec, kind: ScalarKind) -> WeightSpec {
    let lv = |xs: &[Scalar]| xs.iter().map(|x| lift(x, kind)).collect::<Vec<_>>();
    match wspec {
        WeightSpec::PlainSt { s, t, z, w } => WeightSpec::PlainSt {
            s: lv(s),
            t: lv(t),
            z: lift(z, kind),
            w: lift(w, kind),
        },
        WeightSpec::SimplifiedSt { a, b, c, d, s, t, z, w } => WeightSpec::SimplifiedSt {
            a: lift(a, kind),
            b: lift(b, kind),
            c: lift(c, kind),
            d: lift(d, kind),
            s: lv(s),
            t: lv(t),
            z: lift(z, kind),
            w: lift(w, kind),
        },
        WeightSpec::VwpE { e, z, w } => WeightSpec::VwpE {
            e: lv(e),
            z: lift(z, kind),
            w: lift(w, kind),
        },
        WeightSpec::VwpESimplified { a, b, c, d, e, z, w } => WeightSpec::VwpESimplified {
            a: lift(a, kind),
            b: lift(b, kind),
            c: lift(c, kind),
            d: lift(d, kind),
            e: lv(e),
            z: lift(z, kind),
            w: lift(w, kind),
        },
        WeightSpec::Explicit(pairs) => WeightSpec::Explicit(
            pairs
                .iter()
                .map(|(l, m)| (lift(l, kind), lift(m, kind)))
                .collect(),
        ),
    }
}

/// Generate (λ_k, μ_k) for k = 0..=N from a weight spec. The rational
/// families use plain shifted factorials; the bracket families use δ-shifted
/// bracket factorials of the supplied bracket kind.
fn generate_weights(
    wspec: &WeightSpec,
    bk: Option<&BracketKind>,
    u: &Scalar,
    delta: &Scalar,
    nn: usize,
) -> Result<Vec<(Scalar, Scalar)>> {
    let kind = u.kind();
    let one = kind.one();
    let dsf = |x: &Scalar, k: usize| -> Result<Scalar> {
        let bk = bk.ok_or_else(|| {
            Error::InvalidInput("bracket weight family on a non-bracket problem".into())
        })?;
        delta_shifted_factorial(bk, x, delta, k)
    };
    let mut out = Vec::with_capacity(nn + 1);
    for k in 0..=nn {
        let (lam, mu) = match wspec {
            WeightSpec::Explicit(pairs) => {
                if pairs.len() != nn + 1 {
                    return Err(Error::LengthMismatch(pairs.len(), nn + 1));
                }
                pairs[k].clone()
            }
            WeightSpec::PlainSt { s, t, z, w } => {
                let mut lam = z.pow_i64(k as i64);
                for si in s {
                    lam = &lam * &shifted_factorial(si, k);
                }
                let mut mu = w.pow_i64(k as i64);
                for ti in t {
                    mu = &mu * &shifted_factorial(ti, k);
                }
                (lam, mu)
            }
            WeightSpec::SimplifiedSt { a, b, c, d, s, t, z, w } => {
                let mut lam = &z.pow_i64(k as i64)
                    * &(&shifted_factorial(&(b + u), k) * &shifted_factorial(&(c + u), k));
                for si in s {
                    lam = &lam * &shifted_factorial(si, k);
                }
                let mut mu = &w.pow_i64(k as i64)
                    * &(&shifted_factorial(&(a + u), k) * &shifted_factorial(&(d + u), k));
                for ti in t {
                    mu = &mu * &shifted_factorial(ti, k);
                }
                (lam, mu)
            }
            WeightSpec::VwpE { e, z, w } => {
                let mut lam = z.pow_i64(k as i64);
                let mut mu = w.pow_i64(k as i64);
                for es in e {
                    lam = &lam * &dsf(&(&(u - es) + delta), k)?;
                    mu = &mu * &dsf(&(u + es), k)?;
                }
                (lam, mu)
            }
            WeightSpec::VwpESimplified { a, b, c, d, e, z, w } => {
                let mut lam = z.pow_i64(k as i64);
                for x in [&(&(u - a) + delta), &(u + b), &(u + c), &(&(u - d) + delta)] {
                    lam = &lam * &dsf(x, k)?;
                }
                let mut mu = w.pow_i64(k as i64);
                for x in [&(u + a), &(&(u - b) + delta), &(&(u - c) + delta), &(u + d)] {
                    mu = &mu * &dsf(x, k)?;
                }
                for es in e {
                    lam = &lam * &dsf(&(&(u - es) + delta), k)?;
                    mu = &mu * &dsf(&(u + es), k)?;
                }
                (lam, mu)
            }
        };
        if near_zero(&lam) || near_zero(&mu) {
            return Err(Error::ZeroWeight { k });
        }
        let _ = &one;
        out.push((lam, mu));
    }
    Ok(out)
}

impl InterpolationProblem {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// N = m + n (index of the last node).
    pub fn big_n(&self) -> usize {
        self.m + self.n
    }

    pub fn kind(&self) -> ScalarKind {
        self.points[0].kind()
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn weight_spec(&self) -> &WeightSpec {
        &self.wspec
    }

    pub fn point(&self, k: usize) -> &Scalar {
        &self.points[k]
    }

    pub fn lambda(&self, k: usize) -> &Scalar {
        &self.weights[k].0
    }

    pub fn mu(&self, k: usize) -> &Scalar {
        &self.weights[k].1
    }

    pub fn weights(&self) -> &[(Scalar, Scalar)] {
        &self.weights
    }

    /// Evaluate the P-side basis function f_j at an arbitrary point.
    pub fn f_eval(&self, j: usize, x: &Scalar) -> Result<Scalar> {
        match &self.family {
            Family::RationalHg { a, b, .. } => {
                let num = shifted_factorial(&(a + x), j);
                let den = shifted_factorial(&(b + x), j);
                if near_zero(&den) {
                    return Err(Error::PoleInDenominator);
                }
                Ok(&num / &den)
            }
            Family::Vwp { kind, a, b, delta, .. } => {
                let num = pm_dsf(kind, a, x, delta, j)?;
                let den = pm_dsf(kind, b, x, delta, j)?;
                if near_zero(&den) {
                    return Err(Error::PoleInDenominator);
                }
                Ok(&num / &den)
            }
        }
    }

    /// Evaluate the Q-side basis function g_j at an arbitrary point.
    pub fn g_eval(&self, j: usize, x: &Scalar) -> Result<Scalar> {
        match &self.family {
            Family::RationalHg { c, d, .. } => {
                let num = shifted_factorial(&(c + x), j);
                let den = shifted_factorial(&(d + x), j);
                if near_zero(&den) {
                    return Err(Error::PoleInDenominator);
                }
                Ok(&num / &den)
            }
            Family::Vwp { kind, c, d, delta, .. } => {
                let num = pm_dsf(kind, c, x, delta, j)?;
                let den = pm_dsf(kind, d, x, delta, j)?;
                if near_zero(&den) {
                    return Err(Error::PoleInDenominator);
                }
                Ok(&num / &den)
            }
        }
    }

    /// Node-value matrix F = (f_j(u_i)), (N+1)×(m+1).
    pub fn node_matrix_f(&self) -> Result<Matrix> {
        let mut vals = Vec::new();
        for k in 0..=self.big_n() {
            for j in 0..=self.m {
                vals.push(self.f_eval(j, &self.points[k])?);
            }
        }
        Ok(Matrix::new(self.big_n() + 1, self.m + 1, vals))
    }

    /// Node-value matrix G = (g_j(u_i)), (N+1)×(n+1).
    pub fn node_matrix_g(&self) -> Result<Matrix> {
        let mut vals = Vec::new();
        for k in 0..=self.big_n() {
            for j in 0..=self.n {
                vals.push(self.g_eval(j, &self.points[k])?);
            }
        }
        Ok(Matrix::new(self.big_n() + 1, self.n + 1, vals))
    }

    /// Check that every consecutive-row maximal minor of F and G is nonzero
    /// (the hypothesis under which the condensed formulas are valid). The
    /// brute-force route does not need this.
    pub fn genericity_check(&self) -> Result<()> {
        let gmat = self.node_matrix_g()?;
        let gcols: Vec<usize> = (0..=self.n).collect();
        for i in 0..=self.m {
            let rows: Vec<usize> = (i..=i + self.n).collect();
            if near_zero(&minor_det(&gmat, &rows, &gcols)?) {
                return Err(Error::SingularCoreMinor { window: i });
            }
        }
        let fmat = self.node_matrix_f()?;
        let fcols: Vec<usize> = (0..=self.m).collect();
        for i in 0..=self.n {
            let rows: Vec<usize> = (i..=i + self.m).collect();
            if near_zero(&minor_det(&fmat, &rows, &fcols)?) {
                return Err(Error::SingularCoreMinor { window: i });
            }
        }
        Ok(())
    }

    /// Same problem with replacement weights (revalidated).
    pub fn with_weights(&self, weights: Vec<(Scalar, Scalar)>) -> Result<InterpolationProblem> {
        if weights.len() != self.big_n() + 1 {
            return Err(Error::LengthMismatch(weights.len(), self.big_n() + 1));
        }
        let kind = self.kind();
        let weights: Vec<(Scalar, Scalar)> = weights
            .iter()
            .map(|(l, m)| (lift(l, kind), lift(m, kind)))
            .collect();
        for (k, (l, m)) in weights.iter().enumerate() {
            if near_zero(l) || near_zero(m) {
                return Err(Error::ZeroWeight { k });
            }
        }
        let mut out = self.clone();
        out.wspec = WeightSpec::Explicit(weights.clone());
        out.weights = weights;
        Ok(out)
    }

    fn validate(&self) -> Result<()> {
        for i in 0..self.points.len() {
            for j in i + 1..self.points.len() {
                if (&self.points[i] - &self.points[j]).is_zero() {
                    return Err(Error::DuplicatePoints(i, j));
                }
            }
        }
        for k in 0..=self.big_n() {
            for j in 0..=self.m {
                if self.f_eval(j, &self.points[k]).is_err() {
                    return Err(Error::PoleAtNode { k });
                }
            }
            for j in 0..=self.n {
                if self.g_eval(j, &self.points[k]).is_err() {
                    return Err(Error::PoleAtNode { k });
                }
            }
        }
        Ok(())
    }
}

/// Build a problem over the shifted-factorial-ratio basis on nodes u_k = u+k.
pub fn build_rational_hg_problem(
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    d: &Scalar,
    u: &Scalar,
    m: usize,
    n: usize,
    wspec: &WeightSpec,
) -> Result<InterpolationProblem> {
    if matches!(wspec, WeightSpec::VwpE { .. } | WeightSpec::VwpESimplified { .. }) {
        return Err(Error::InvalidInput(
            "bracket weight families require a bracket problem".into(),
        ));
    }
    let mut probe: Vec<&Scalar> = vec![a, b, c, d, u];
    probe.extend(weight_scalars(wspec));
    let kind = common_kind(&probe);
    let wspec = lift_wspec(wspec, kind);
    let (a, b, c, d, u) = (
        lift(a, kind),
        lift(b, kind),
        lift(c, kind),
        lift(d, kind),
        lift(u, kind),
    );
    let nn = m + n;
    let points: Vec<Scalar> = (0..=nn).map(|k| &u + &kind.from_i64(k as i64)).collect();
    let one = kind.one();
    let weights = generate_weights(&wspec, None, &u, &one, nn)?;
    let prob = InterpolationProblem {
        m,
        n,
        family: Family::RationalHg { a, b, c, d, u },
        points,
        weights,
        wspec,
    };
    prob.validate()?;
    Ok(prob)
}

/// Build a problem over the bracket basis on nodes u_k = u+kδ.
#[allow(clippy::too_many_arguments)]
pub fn build_vwp_problem(
    kind: &BracketKind,
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    d: &Scalar,
    u: &Scalar,
    delta: &Scalar,
    m: usize,
    n: usize,
    wspec: &WeightSpec,
) -> Result<InterpolationProblem> {
    if matches!(wspec, WeightSpec::PlainSt { .. } | WeightSpec::SimplifiedSt { .. }) {
        return Err(Error::InvalidInput(
            "plain/simplified shifted-factorial weights require a rational problem".into(),
        ));
    }
    if delta.is_zero() {
        return Err(Error::ZeroDelta);
    }
    let mut probe: Vec<&Scalar> = vec![a, b, c, d, u, delta];
    probe.extend(weight_scalars(wspec));
    let skind = match kind.scalar_kind() {
        ScalarKind::Complex(p) => ScalarKind::Complex(p),
        ScalarKind::Rational => common_kind(&probe),
    };
    let wspec = lift_wspec(wspec, skind);
    let (a, b, c, d, u, delta) = (
        lift(a, skind),
        lift(b, skind),
        lift(c, skind),
        lift(d, skind),
        lift(u, skind),
        lift(delta, skind),
    );
    let nn = m + n;
    let points: Vec<Scalar> = (0..=nn)
        .map(|k| &u + &(&skind.from_i64(k as i64) * &delta))
        .collect();
    let weights = generate_weights(&wspec, Some(kind), &u, &delta, nn)?;
    let prob = InterpolationProblem {
        m,
        n,
        family: Family::Vwp {
            kind: kind.clone(),
            a,
            b,
            c,
            d,
            u,
            delta,
        },
        points,
        weights,
        wspec,
    };
    prob.validate()?;
    Ok(prob)
}

/// Coefficients c_j = pref · (−1)^j · det(rows with column j removed), for a
/// r×(r+1) matrix of row entries; r = 0 gives the single coefficient pref.
fn cofactor_coeffs(kind: ScalarKind, rows: &[Vec<Scalar>], pref: &Scalar) -> Result<Vec<Scalar>> {
    let r = rows.len();
    if r == 0 {
        return Ok(vec![pref.clone()]);
    }
    let mat = Matrix::from_fn(r, r + 1, |i, j| rows[i][j].clone());
    let all_rows: Vec<usize> = (0..r).collect();
    let mut out = Vec::with_capacity(r + 1);
    for j in 0..=r {
        let cols: Vec<usize> = (0..=r).filter(|&c| c != j).collect();
        let minor = det(&submatrix(&mat, &all_rows, &cols)?)?;
        out.push(&(&sign(kind, j as i64) * pref) * &minor);
    }
    Ok(out)
}

/// Evaluate P(x) = Σ p_j f_j(x) for a coefficient vector.
pub fn evaluate_p(prob: &InterpolationProblem, p: &[Scalar], x: &Scalar) -> Result<Scalar> {
    let mut acc = prob.kind().zero();
    for (j, c) in p.iter().enumerate() {
        acc = &acc + &(c * &prob.f_eval(j, x)?);
    }
    Ok(acc)
}

/// Evaluate Q(x) = Σ q_j g_j(x) for a coefficient vector.
pub fn evaluate_q(prob: &InterpolationProblem, q: &[Scalar], x: &Scalar) -> Result<Scalar> {
    let mut acc = prob.kind().zero();
    for (j, c) in q.iter().enumerate() {
        acc = &acc + &(c * &prob.g_eval(j, x)?);
    }
    Ok(acc)
}

/// R(x; λ, μ) = μ P(x) − λ Q(x); vanishes at node k for (λ_k, μ_k).
pub fn residual_r(
    prob: &InterpolationProblem,
    sol: &PadeSolution,
    x: &Scalar,
    lambda: &Scalar,
    mu: &Scalar,
) -> Result<Scalar> {
    let pv = evaluate_p(prob, &sol.p, x)?;
    let qv = evaluate_q(prob, &sol.q, x)?;
    Ok(&(mu * &pv) - &(lambda * &qv))
}

/// Universal route: the coefficients are signed cofactors of the symbolic top
/// row of the (N+2)×(N+2) determinant representations of P and Q.
pub fn solve_bruteforce(prob: &InterpolationProblem) -> Result<PadeSolution> {
    let (m, n) = (prob.m, prob.n);
    let nn = m + n;
    let kind = prob.kind();
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(nn + 1);
    for k in 0..=nn {
        let mut row = Vec::with_capacity(nn + 2);
        for j in 0..=m {
            row.push(prob.mu(k) * &prob.f_eval(j, prob.point(k))?);
        }
        for j in 0..=n {
            row.push(prob.lambda(k) * &prob.g_eval(j, prob.point(k))?);
        }
        rows.push(row);
    }
    let bmat = Matrix::from_fn(nn + 1, nn + 2, |i, j| rows[i][j].clone());
    let all_rows: Vec<usize> = (0..=nn).collect();
    let mut p = Vec::with_capacity(m + 1);
    for j in 0..=m {
        let cols: Vec<usize> = (0..nn + 2).filter(|&c| c != j).collect();
        let minor = det(&submatrix(&bmat, &all_rows, &cols)?)?;
        p.push(&sign(kind, j as i64) * &minor);
    }
    let mut q = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let cols: Vec<usize> = (0..nn + 2).filter(|&c| c != m + 1 + j).collect();
        let minor = det(&submatrix(&bmat, &all_rows, &cols)?)?;
        q.push(&sign(kind, (m + j) as i64) * &minor);
    }
    let sol = PadeSolution {
        p,
        q,
        route: Route::BruteForce,
        normalization: kind.one(),
    };
    // Proviso: the determinant solution is only meaningful if (P, Q) does not
    // vanish identically at some node.
    for k in 0..=nn {
        let pv = evaluate_p(prob, &sol.p, prob.point(k))?;
        let qv = evaluate_q(prob, &sol.q, prob.point(k))?;
        if near_zero(&pv) && near_zero(&qv) {
            return Err(Error::DegenerateSolution { k });
        }
    }
    Ok(sol)
}

fn g_window_det(prob: &InterpolationProblem, gmat: &Matrix, rows: &[usize]) -> Result<Scalar> {
    let cols: Vec<usize> = (0..=prob.n).collect();
    minor_det(gmat, rows, &cols)
}

fn f_window_det(prob: &InterpolationProblem, fmat: &Matrix, rows: &[usize]) -> Result<Scalar> {
    let cols: Vec<usize> = (0..=prob.m).collect();
    minor_det(fmat, rows, &cols)
}

/// Condensed entry U_ij as the (n+2)×(n+2) determinant form: first column
/// (μ_{i+t}/λ_{i+t}) f_j(u_{i+t}), remaining columns g_l(u_{i+t}), scaled by
/// λ_i/μ_i and divided by the core minor det G^{i+1..i+n+1}.
pub fn condensed_u(prob: &InterpolationProblem, i: usize, j: usize) -> Result<Scalar> {
    if i >= prob.m || j > prob.m {
        return Err(Error::IndexOutOfBounds {
            row: i,
            col: j,
            rows: prob.m,
            cols: prob.m + 1,
        });
    }
    let n = prob.n;
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(n + 2);
    for t in 0..=n + 1 {
        let k = i + t;
        let x = prob.point(k);
        let mut row = Vec::with_capacity(n + 2);
        row.push(&(prob.mu(k) / prob.lambda(k)) * &prob.f_eval(j, x)?);
        for l in 0..=n {
            row.push(prob.g_eval(l, x)?);
        }
        rows.push(row);
    }
    let mat = Matrix::from_fn(n + 2, n + 2, |r, c| rows[r][c].clone());
    let gmat = prob.node_matrix_g()?;
    let core_rows: Vec<usize> = (i + 1..=i + n + 1).collect();
    let core = g_window_det(prob, &gmat, &core_rows)?;
    if near_zero(&core) {
        return Err(Error::SingularCoreMinor { window: i });
    }
    let scale = prob.lambda(i) / prob.mu(i);
    Ok(&(&scale * &det(&mat)?) / &core)
}

/// U_ij as the expanded alternating sum over omitted rows — same value as
/// [`condensed_u`] with the determinant expanded along its first column.
pub fn condensed_u_sum(prob: &InterpolationProblem, i: usize, j: usize) -> Result<Scalar> {
    if i >= prob.m || j > prob.m {
        return Err(Error::IndexOutOfBounds {
            row: i,
            col: j,
            rows: prob.m,
            cols: prob.m + 1,
        });
    }
    let n = prob.n;
    let kind = prob.kind();
    let gmat = prob.node_matrix_g()?;
    let core_rows: Vec<usize> = (i + 1..=i + n + 1).collect();
    let core = g_window_det(prob, &gmat, &core_rows)?;
    if near_zero(&core) {
        return Err(Error::SingularCoreMinor { window: i });
    }
    let mut acc = kind.zero();
    for k in 0..=n + 1 {
        let rows: Vec<usize> = (i..=i + n + 1).filter(|&r| r != i + k).collect();
        let minor = g_window_det(prob, &gmat, &rows)?;
        let wr = &(prob.mu(i + k) * prob.lambda(i)) / &(prob.lambda(i + k) * prob.mu(i));
        let term = &(&sign(kind, k as i64) * &wr) * &prob.f_eval(j, prob.point(i + k))?;
        acc = &acc + &(&term * &minor);
    }
    Ok(&acc / &core)
}

/// Condensed entry V_ij (the dual of U with f↔g, λ↔μ, m↔n).
pub fn condensed_v(prob: &InterpolationProblem, i: usize, j: usize) -> Result<Scalar> {
    if i >= prob.n || j > prob.n {
        return Err(Error::IndexOutOfBounds {
            row: i,
            col: j,
            rows: prob.n,
            cols: prob.n + 1,
        });
    }
    let m = prob.m;
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(m + 2);
    for t in 0..=m + 1 {
        let k = i + t;
        let x = prob.point(k);
        let mut row = Vec::with_capacity(m + 2);
        row.push(&(prob.lambda(k) / prob.mu(k)) * &prob.g_eval(j, x)?);
        for l in 0..=m {
            row.push(prob.f_eval(l, x)?);
        }
        rows.push(row);
    }
    let mat = Matrix::from_fn(m + 2, m + 2, |r, c| rows[r][c].clone());
    let fmat = prob.node_matrix_f()?;
    let core_rows: Vec<usize> = (i + 1..=i + m + 1).collect();
    let core = f_window_det(prob, &fmat, &core_rows)?;
    if near_zero(&core) {
        return Err(Error::SingularCoreMinor { window: i });
    }
    let scale = prob.mu(i) / prob.lambda(i);
    Ok(&(&scale * &det(&mat)?) / &core)
}

/// V_ij as the expanded alternating sum (dual of [`condensed_u_sum`]).
pub fn condensed_v_sum(prob: &InterpolationProblem, i: usize, j: usize) -> Result<Scalar> {
    if i >= prob.n || j > prob.n {
        return Err(Error::IndexOutOfBounds {
            row: i,
            col: j,
            rows: prob.n,
            cols: prob.n + 1,
        });
    }
    let m = prob.m;
    let kind = prob.kind();
    let fmat = prob.node_matrix_f()?;
    let core_rows: Vec<usize> = (i + 1..=i + m + 1).collect();
    let core = f_window_det(prob, &fmat, &core_rows)?;
    if near_zero(&core) {
        return Err(Error::SingularCoreMinor { window: i });
    }
    let mut acc = kind.zero();
    for k in 0..=m + 1 {
        let rows: Vec<usize> = (i..=i + m + 1).filter(|&r| r != i + k).collect();
        let minor = f_window_det(prob, &fmat, &rows)?;
        let wr = &(prob.lambda(i + k) * prob.mu(i)) / &(prob.mu(i + k) * prob.lambda(i));
        let term = &(&sign(kind, k as i64) * &wr) * &prob.g_eval(j, prob.point(i + k))?;
        acc = &acc + &(&term * &minor);
    }
    Ok(&acc / &core)
}

fn epsilon_mn(kind: ScalarKind, m: usize, n: usize) -> Scalar {
    sign(kind, (m * n + m + n) as i64)
}

/// Condensed route: (m+1)×(m+1) and (n+1)×(n+1) determinants with entries
/// U_ij / V_ij and the explicit prefactors that make the result equal the
/// brute-force solution exactly.
pub fn solve_condensed(prob: &InterpolationProblem) -> Result<PadeSolution> {
    let (m, n) = (prob.m, prob.n);
    let kind = prob.kind();
    let gmat = prob.node_matrix_g()?;
    let grows: Vec<usize> = (m..=m + n).collect();
    let gm = g_window_det(prob, &gmat, &grows)?;
    if near_zero(&gm) {
        return Err(Error::SingularCoreMinor { window: m });
    }
    let mut cp = gm;
    for i in 0..m {
        cp = &cp * prob.mu(i);
    }
    for i in 0..=n {
        cp = &cp * prob.lambda(m + i);
    }
    let mut urows: Vec<Vec<Scalar>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = Vec::with_capacity(m + 1);
        for j in 0..=m {
            row.push(condensed_u(prob, i, j)?);
        }
        urows.push(row);
    }
    let p = cofactor_coeffs(kind, &urows, &cp)?;

    let fmat = prob.node_matrix_f()?;
    let frows: Vec<usize> = (n..=n + m).collect();
    let fm = f_window_det(prob, &fmat, &frows)?;
    if near_zero(&fm) {
        return Err(Error::SingularCoreMinor { window: n });
    }
    let mut cq = &epsilon_mn(kind, m, n) * &fm;
    for i in 0..n {
        cq = &cq * prob.lambda(i);
    }
    for i in 0..=m {
        cq = &cq * prob.mu(n + i);
    }
    let mut vrows: Vec<Vec<Scalar>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n + 1);
        for j in 0..=n {
            row.push(condensed_v(prob, i, j)?);
        }
        vrows.push(row);
    }
    let q = cofactor_coeffs(kind, &vrows, &cq)?;
    Ok(PadeSolution {
        p,
        q,
        route: Route::Condensed,
        normalization: cp,
    })
}

fn rational_hg_params(
    prob: &InterpolationProblem,
    route: &'static str,
) -> Result<(Scalar, Scalar, Scalar, Scalar, Scalar)> {
    match &prob.family {
        Family::RationalHg { a, b, c, d, u } => {
            Ok((a.clone(), b.clone(), c.clone(), d.clone(), u.clone()))
        }
        Family::Vwp { .. } => Err(Error::WrongFamily {
            route,
            family: "rational-hg",
        }),
    }
}

fn vwp_params(
    prob: &InterpolationProblem,
    route: &'static str,
) -> Result<(BracketKind, Scalar, Scalar, Scalar, Scalar, Scalar, Scalar)> {
    match &prob.family {
        Family::Vwp { kind, a, b, c, d, u, delta } => Ok((
            kind.clone(),
            a.clone(),
            b.clone(),
            c.clone(),
            d.clone(),
            u.clone(),
            delta.clone(),
        )),
        Family::RationalHg { .. } => Err(Error::WrongFamily {
            route,
            family: "vwp",
        }),
    }
}

/// Ratio of plain shifted factorial products ∏(nums)_k / ∏(dens)_k, refusing
/// vanishing denominators.
fn sf_ratio(nums: &[&Scalar], dens: &[&Scalar], k: usize) -> Result<Scalar> {
    let kind = nums
        .first()
        .map(|s| s.kind())
        .unwrap_or(ScalarKind::Rational);
    let mut num = kind.one();
    for x in nums {
        num = &num * &shifted_factorial(x, k);
    }
    let mut den = kind.one();
    for x in dens {
        den = &den * &shifted_factorial(x, k);
    }
    if near_zero(&den) {
        return Err(Error::PoleInConstant);
    }
    Ok(&num / &den)
}

/// Explicit entry U_ij of the first closed-form route (arithmetic-progression
/// nodes, shifted-factorial basis): a single (n+2)-term sum whose minor
/// ratios are evaluated by Krattenthaler's formula.
pub fn hg31_u(prob: &InterpolationProblem, i: usize, j: usize) -> Result<Scalar> {
    let (a, b, _c, d, u) = rational_hg_params(prob, "hg-k")?;
    let kind = prob.kind();
    let n = prob.n;
    let ui = &u + &kind.from_i64(i as i64);
    let pref = sf_ratio(&[&(&a + &ui)], &[&(&b + &ui)], j)?;
    let mn1 = kind.from_i64(-(n as i64) - 1);
    let dn = &(&d + &ui) + &kind.from_i64(n as i64);
    let aj = &(&a + &ui) + &kind.from_i64(j as i64);
    let bj = &(&b + &ui) + &kind.from_i64(j as i64);
    let mut acc = kind.zero();
    for k in 0..=n + 1 {
        let base = sf_ratio(
            &[&mn1, &dn, &aj, &(&b + &ui)],
            &[&kind.one(), &(&d + &ui), &(&a + &ui), &bj],
            k,
        )?;
        let wr = &(prob.mu(i + k) * prob.lambda(i)) / &(prob.lambda(i + k) * prob.mu(i));
        acc = &acc + &(&base * &wr);
    }
    Ok(&pref * &acc)
}

/// Explicit entry V_ij (dual of [`hg31_u`]: a↔c, b↔d, m↔n, λ↔μ).
pub fn hg31_v(prob: &InterpolationProblem, i: usize, j: usize) -> Result<Scalar> {
    let (a, b, c, d, u) = rational_hg_params(prob, "hg-k")?;
    let kind = prob.kind();
    let m = prob.m;
    let ui = &u + &kind.from_i64(i as i64);
    let pref = sf_ratio(&[&(&c + &ui)], &[&(&d + &ui)], j)?;
    let mm1 = kind.from_i64(-(m as i64) - 1);
    let bm = &(&b + &ui) + &kind.from_i64(m as i64);
    let cj = &(&c + &ui) + &kind.from_i64(j as i64);
    let dj = &(&d + &ui) + &kind.from_i64(j as i64);
    let _ = &a;
    let mut acc = kind.zero();
    for k in 0..=m + 1 {
        let base = sf_ratio(
            &[&mm1, &bm, &cj, &(&d + &ui)],
            &[&kind.one(), &(&b + &ui), &(&c + &ui), &dj],
            k,
        )?;
        let wr = &(prob.lambda(i + k) * prob.mu(i)) / &(prob.mu(i + k) * prob.lambda(i));
        acc = &acc + &(&base * &wr);
    }
    Ok(&pref * &acc)
}

/// First closed-form route for rational-HG problems (explicit U/V sums and
/// Krattenthaler-evaluated constants).
pub fn solve_hg_krattenthaler(prob: &InterpolationProblem) -> Result<PadeSolution> {
    let (a, b, c, d, u) = rational_hg_params(prob, "hg-k")?;
    let kind = prob.kind();
    let (m, n) = (prob.m, prob.n);

    // P-side constant: ∏_{i=1}^n i!(d−c)_i / ∏_{i=0}^n (d+u_{m+i})_n,
    // times ∏ μ_i (i<m) and ∏ λ_{m+i}.
    let mut cnum = kind.one();
    for i in 1..=n {
        cnum = &cnum * &crate::scalar::factorial(kind, i);
        cnum = &cnum * &shifted_factorial(&(&d - &c), i);
    }
    let mut cden = kind.one();
    for i in 0..=n {
        let base = &(&d + &u) + &kind.from_i64((m + i) as i64);
        cden = &cden * &shifted_factorial(&base, n);
    }
    if near_zero(&cden) {
        return Err(Error::PoleInConstant);
    }
    let mut cp = &cnum / &cden;
    for i in 0..m {
        cp = &cp * prob.mu(i);
    }
    for i in 0..=n {
        cp = &cp * prob.lambda(m + i);
    }
    let mut urows = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = Vec::with_capacity(m + 1);
        for j in 0..=m {
            row.push(hg31_u(prob, i, j)?);
        }
        urows.push(row);
    }
    let p = cofactor_coeffs(kind, &urows, &cp)?;

    let mut cnum = kind.one();
    for i in 1..=m {
        cnum = &cnum * &crate::scalar::factorial(kind, i);
        cnum = &cnum * &shifted_factorial(&(&b - &a), i);
    }
    let mut cden = kind.one();
    for i in 0..=m {
        let base = &(&b + &u) + &kind.from_i64((n + i) as i64);
        cden = &cden * &shifted_factorial(&base, m);
    }
    if near_zero(&cden) {
        return Err(Error::PoleInConstant);
    }
    let mut cq = &(&epsilon_mn(kind, m, n) * &cnum) / &cden;
    for i in 0..n {
        cq = &cq * prob.lambda(i);
    }
    for i in 0..=m {
        cq = &cq * prob.mu(n + i);
    }
    let mut vrows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n + 1);
        for j in 0..=n {
            row.push(hg31_v(prob, i, j)?);
        }
        vrows.push(row);
    }
    let q = cofactor_coeffs(kind, &vrows, &cq)?;
    Ok(PadeSolution {
        p,
        q,
        route: Route::HgKrattenthaler,
        normalization: cp,
    })
}

/// Entry Φ_ij of the Saalschütz-based route: an (N+1)-term sum over all
/// weights with an anti-triangular kernel in the row index.
pub fn hg32_phi(prob: &InterpolationProblem, i: usize, j: usize) -> Result<Scalar> {
    let (a, b, c, d, u) = rational_hg_params(prob, "hg-s")?;
    hg32_entry(prob, &a, &b, &c, &d, &u, i, j, false)
}

/// Entry Ψ_ij (dual of Φ: a↔c, b↔d, λ↔μ).
pub fn hg32_psi(prob: &InterpolationProblem, i: usize, j: usize) -> Result<Scalar> {
    let (a, b, c, d, u) = rational_hg_params(prob, "hg-s")?;
    hg32_entry(prob, &c, &d, &a, &b, &u, i, j, true)
}

#[allow(clippy::too_many_arguments)]
fn hg32_entry(
    prob: &InterpolationProblem,
    a: &Scalar,
    b: &Scalar,
    c: &Scalar,
    d: &Scalar,
    u: &Scalar,
    i: usize,
    j: usize,
    dual: bool,
) -> Result<Scalar> {
    let kind = prob.kind();
    let nn = prob.big_n();
    let au = &(a + u);
    let bu = &(b + u);
    let cu = &(c + u);
    let du = &(d + u);
    let pref = sf_ratio(&[au], &[bu], j)?;
    let mnn = kind.from_i64(-(nn as i64));
    let dk = &(du + &kind.from_i64(nn as i64 - 1)) - &kind.from_i64(i as i64);
    let ci = cu - &kind.from_i64(i as i64);
    let aj = au + &kind.from_i64(j as i64);
    let bj = bu + &kind.from_i64(j as i64);
    let mut acc = kind.zero();
    for k in 0..=nn {
        let base = sf_ratio(
            &[&mnn, &dk, cu, &aj, bu],
            &[&kind.one(), &ci, du, &bj, au],
            k,
        )?;
        let wr = if dual {
            prob.lambda(k) / prob.mu(k)
        } else {
            prob.mu(k) / prob.lambda(k)
        };
        acc = &acc + &(&base * &wr);
    }
    Ok(&pref * &acc)
}

/// L-matrix of the Saalschütz route: L_ij = (−N)_j (d+u+N−1−i)_j (c+u)_j /
/// (j! (c+u−i)_j (d+u)_j), 0 ≤ i,j ≤ N.
pub fn hg32_l_matrix(c: &Scalar, d: &Scalar, u: &Scalar, nn: usize) -> Result<Matrix> {
    let kind = u.kind();
    let mut vals = Vec::with_capacity((nn + 1) * (nn + 1));
    let cu = c + u;
    let du = d + u;
    let mnn = kind.from_i64(-(nn as i64));
    for i in 0..=nn {
        let dk = &(&du + &kind.from_i64(nn as i64 - 1)) - &kind.from_i64(i as i64);
        let ci = &cu - &kind.from_i64(i as i64);
        for j in 0..=nn {
            let entry = sf_ratio(&[&mnn, &dk, &cu], &[&kind.one(), &ci, &du], j)
                .map_err(|_| Error::PoleInL { i, j })?;
            vals.push(entry);
        }
    }
    Ok(Matrix::new(nn + 1, nn + 1, vals))
}

/// Check (LG)_ij = 0 for i+j < N (exactly for exact scalars, against a scaled
/// threshold for floats).
fn anti_triangularity_check(lg: &Matrix, nn: usize) -> Result<()> {
    let mut max_abs = Float::with_val(64, 0);
    if let ScalarKind::Complex(_) = lg.kind() {
        for i in 0..lg.rows() {
            for j in 0..lg.cols() {
                let a = lg.at(i, j).abs_float();
                if a > max_abs {
                    max_abs = a;
                }
            }
        }
    }
    for i in 0..lg.rows() {
        for j in 0..lg.cols() {
            if i + j >= nn {
                continue;
            }
            let ok = match lg.kind() {
                ScalarKind::Rational => lg.at(i, j).is_zero(),
                ScalarKind::Complex(p) => {
                    let mut tol = Float::with_val(p, &max_abs);
                    tol >>= p / 2;
                    lg.at(i, j).abs_float() <= tol
                }
            };
            if !ok {
                return Err(Error::AntiTriangularityViolated { i, j });
            }
        }
    }
    Ok(())
}

/// K = det M / det L where M is the lower-left (bottom rows) block of LG.
fn k_constant(l: &Matrix, basis_nodes: &Matrix, lower: usize, nn: usize) -> Result<Scalar> {
    let lg = l.mul(basis_nodes);
    anti_triangularity_check(&lg, nn)?;
    let rows: Vec<usize> = (lower..=nn).collect();
    let cols: Vec<usize> = (0..basis_nodes.cols()).collect();
    let det_m = minor_det(&lg, &rows, &cols)?;
    let det_l = det(l)?;
    if near_zero(&det_l) {
        return Err(Error::PoleInConstant);
    }
    Ok(&det_m / &det_l)
}

/// The product LG of the Saalschütz route (P side), exposed so the
/// anti-triangular structure can be inspected directly.
pub fn hg32_lg(prob: &InterpolationProblem) -> Result<Matrix> {
    let (_a, _b, c, d, u) = rational_hg_params(prob, "hg-s")?;
    let l = hg32_l_matrix(&c, &d, &u, prob.big_n())?;
    Ok(l.mul(&prob.node_matrix_g()?))
}

/// Saalschütz-based closed-form route for rational-HG problems.
pub fn solve_hg_saalschutz(prob: &InterpolationProblem) -> Result<PadeSolution> {
    let (a, b, c, d, u) = rational_hg_params(prob, "hg-s")?;
    let kind = prob.kind();
    let (m, n) = (prob.m, prob.n);
    let nn = prob.big_n();

    let l_p = hg32_l_matrix(&c, &d, &u, nn)?;
    let k_p = k_constant(&l_p, &prob.node_matrix_g()?, m, nn)?;
    let mut cp = k_p;
    for i in 0..=nn {
        cp = &cp * prob.lambda(i);
    }
    let mut phrows = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = Vec::with_capacity(m + 1);
        for j in 0..=m {
            row.push(hg32_phi(prob, i, j)?);
        }
        phrows.push(row);
    }
    let p = cofactor_coeffs(kind, &phrows, &cp)?;

    let l_q = hg32_l_matrix(&a, &b, &u, nn)?;
    let k_q = k_constant(&l_q, &prob.node_matrix_f()?, n, nn)?;
    let mut cq = &epsilon_mn(kind, m, n) * &k_q;
    for i in 0..=nn {
        cq = &cq * prob.mu(i);
    }
    let mut psrows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n + 1);
        for j in 0..=n {
            row.push(hg32_psi(prob, i, j)?);
        }
        psrows.push(row);
    }
    let q = cofactor_coeffs(kind, &psrows, &cq)?;
    Ok(PadeSolution {
        p,
        q,
        route: Route::HgSaalschutz,
        normalization: cp,
    })
}

/// Very-well-poised parameter list of the U_ij sum for the bracket
/// Krattenthaler route (base point a0 = 2u_i).
fn vwp41_list(
    kind: ScalarKind,
    dual_n: usize,
    aa: &Scalar,
    bb: &Scalar,
    dd: &Scalar,
    ui: &Scalar,
    delta: &Scalar,
    j: usize,
) -> Vec<Scalar> {
    let int = |v: i64| &kind.from_i64(v) * delta;
    vec![
        int(-(dual_n as i64) - 1),
        &(ui - dd) + delta,
        &(ui + dd) + &int(dual_n as i64),
        &(ui - aa) + delta,
        &(ui + aa) + &int(j as i64),
        ui + bb,
        &(ui - bb) + &int(1 - j as i64),
    ]
}

/// Entry U_ij of the bracket Krattenthaler route as a very-well-poised sum.
pub fn vwp41_u(prob: &InterpolationProblem, i: usize, j: usize) -> Result<Scalar> {
    let (bk, a, b, _c, d, _u, delta) = vwp_params(prob, "vwp-k")?;
    let kind = prob.kind();
    let ui = prob.point(i).clone();
    let pref = {
        let num = pm_dsf(&bk, &a, &ui, &delta, j)?;
        let den = pm_dsf(&bk, &b, &ui, &delta, j)?;
        if near_zero(&den) {
            return Err(Error::PoleInConstant);
        }
        &num / &den
    };
    let a0 = &ui + &ui;
    let list = vwp41_list(kind, prob.n, &a, &b, &d, &ui, &delta, j);
    let mut acc = kind.zero();
    for k in 0..=prob.n + 1 {
        let t = vwp_term(&bk, &delta, k, &a0, &list)?;
        let wr = &(prob.mu(i + k) * prob.lambda(i)) / &(prob.lambda(i + k) * prob.mu(i));
        acc = &acc + &(&t * &wr);
    }
    Ok(&pref * &acc)
}

/// Entry V_ij (dual of [`vwp41_u`]: a↔c, b↔d, m↔n, λ↔μ).
pub fn vwp41_v(prob: &InterpolationProblem, i: usize, j: usize) -> Result<Scalar> {
    let (bk, _a, b, c, d, _u, delta) = vwp_params(prob, "vwp-k")?;
    let kind = prob.kind();
    let ui = prob.point(i).clone();
    let pref = {
        let num = pm_dsf(&bk, &c, &ui, &delta, j)?;
        let den = pm_dsf(&bk, &d, &ui, &delta, j)?;
        if near_zero(&den) {
            return Err(Error::PoleInConstant);
        }
        &num / &den
    };
    let a0 = &ui + &ui;
    let list = vwp41_list(kind, prob.m, &c, &d, &b, &ui, &delta, j);
    let mut acc = kind.zero();
    for k in 0..=prob.m + 1 {
        let t = vwp_term(&bk, &delta, k, &a0, &list)?;
        let wr = &(prob.lambda(i + k) * prob.mu(i)) / &(prob.mu(i + k) * prob.lambda(i));
        acc = &acc + &(&t * &wr);
    }
    Ok(&pref * &acc)
}

/// C_n(c,d) = (−1)^{n(n+1)/2} ∏_{k=1}^n [d−c]_k [c+d+(k−1)δ]_k.
fn vwp_c_constant(
    bk: &BracketKind,
    c: &Scalar,
    d: &Scalar,
    delta: &Scalar,
    n: usize,
) -> Result<Scalar> {
    let kind = c.kind();
    let mut acc = sign(kind, (n * (n + 1) / 2) as i64);
    for k in 1..=n {
        acc = &acc * &delta_shifted_factorial(bk, &(d - c), delta, k)?;
        let shift = &kind.from_i64(k as i64 - 1) * delta;
        acc = &acc * &delta_shifted_factorial(bk, &(&(c + d) + &shift), delta, k)?;
    }
    Ok(acc)
}

fn vwp41_side_constant(
    bk: &BracketKind,
    cc: &Scalar,
    dd: &Scalar,
    delta: &Scalar,
    u_lower: &Scalar,
    dual_n: usize,
    points: &[&Scalar],
) -> Result<Scalar> {
    let kind = cc.kind();
    let mut num = vwp_c_constant(bk, cc, dd, delta, dual_n)?;
    for l in 1..=dual_n {
        let two_u = &(u_lower + u_lower) + &(&kind.from_i64(l as i64) * delta);
        num = &num * &delta_shifted_factorial(bk, &two_u, delta, l)?;
        num = &num * &delta_shifted_factorial(bk, delta, delta, l)?;
    }
    let mut den = kind.one();
    for &pt in points {
        den = &den * &pm_dsf(bk, dd, pt, delta, dual_n)?;
    }
    if near_zero(&den) {
        return Err(Error::PoleInConstant);
    }
    Ok(&num / &den)
}

/// Bracket Krattenthaler route (explicit very-well-poised U/V sums).
pub fn solve_vwp_krattenthaler(prob: &InterpolationProblem) -> Result<PadeSolution> {
    let (bk, a, b, c, d, _u, delta) = vwp_params(prob, "vwp-k")?;
    let kind = prob.kind();
    let (m, n) = (prob.m, prob.n);

    let ppoints: Vec<&Scalar> = (0..=n).map(|l| prob.point(m + l)).collect();
    let mut cp = vwp41_side_constant(&bk, &c, &d, &delta, prob.point(m), n, &ppoints)?;
    for i in 0..m {
        cp = &cp * prob.mu(i);
    }
    for i in 0..=n {
        cp = &cp * prob.lambda(m + i);
    }
    let mut urows = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = Vec::with_capacity(m + 1);
        for j in 0..=m {
            row.push(vwp41_u(prob, i, j)?);
        }
        urows.push(row);
    }
    let p = cofactor_coeffs(kind, &urows, &cp)?;

    let qpoints: Vec<&Scalar> = (0..=m).map(|l| prob.point(n + l)).collect();
    let side = vwp41_side_constant(&bk, &a, &b, &delta, prob.point(n), m, &qpoints)?;
    let mut cq = &epsilon_mn(kind, m, n) * &side;
    for i in 0..n {
        cq = &cq * prob.lambda(i);
    }
    for i in 0..=m {
        cq = &cq * prob.mu(n + i);
    }
    let mut vrows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n + 1);
        for j in 0..=n {
            row.push(vwp41_v(prob, i, j)?);
        }
        vrows.push(row);
    }
    let q = cofactor_coeffs(kind, &vrows, &cq)?;
    Ok(PadeSolution {
        p,
        q,
        route: Route::VwpKrattenthaler,
        normalization: cp,
    })
}

/// Parameter list shared by the Frenkel–Turaev route entries and its
/// L-matrix kernel (extended with the basis parameters for Φ/Ψ).
fn vwp42_kernel_list(
    kind: ScalarKind,
    cc: &Scalar,
    dd: &Scalar,
    u: &Scalar,
    delta: &Scalar,
    nn: usize,
    i: usize,
) -> Vec<Scalar> {
    let int = |v: i64| &kind.from_i64(v) * delta;
    vec![
        int(-(nn as i64)),
        &(u - cc) + &int(1 + i as i64),
        &(u + dd) + &int(nn as i64 - 1 - i as i64),
        u + cc,
        &(u - dd) + delta,
    ]
}

#[allow(clippy::too_many_arguments)]
fn vwp42_entry(
    prob: &InterpolationProblem,
    bk: &BracketKind,
    aa: &Scalar,
    bb: &Scalar,
    cc: &Scalar,
    dd: &Scalar,
    u: &Scalar,
    delta: &Scalar,
    i: usize,
    j: usize,
    dual: bool,
) -> Result<Scalar> {
    let kind = prob.kind();
    let nn = prob.big_n();
    let pref = {
        let num = pm_dsf(bk, aa, u, delta, j)?;
        let den = pm_dsf(bk, bb, u, delta, j)?;
        if near_zero(&den) {
            return Err(Error::PoleInConstant);
        }
        &num / &den
    };
    let int = |v: i64| &kind.from_i64(v) * delta;
    let mut list = vwp42_kernel_list(kind, cc, dd, u, delta, nn, i);
    list.push(&(u + aa) + &int(j as i64));
    list.push(&(u - bb) + &int(1 - j as i64));
    list.push(&(u - aa) + delta);
    list.push(u + bb);
    let a0 = u + u;
    let mut acc = kind.zero();
    for k in 0..=nn {
        let t = vwp_term(bk, delta, k, &a0, &list)?;
        let wr = if dual {
            prob.lambda(k) / prob.mu(k)
        } else {
            prob.mu(k) / prob.lambda(k)
        };
        acc = &acc + &(&t * &wr);
    }
    Ok(&pref * &acc)
}

/// Entry Φ_ij of the Frenkel–Turaev route.
pub fn vwp42_phi(prob: &InterpolationProblem, i: usize, j: usize) -> Result<Scalar> {
    let (bk, a, b, c, d, u, delta) = vwp_params(prob, "vwp-ft")?;
    vwp42_entry(prob, &bk, &a, &b, &c, &d, &u, &delta, i, j, false)
}

/// Entry Ψ_ij (dual of Φ: a↔c, b↔d, λ↔μ).
pub fn vwp42_psi(prob: &InterpolationProblem, i: usize, j: usize) -> Result<Scalar> {
    let (bk, a, b, c, d, u, delta) = vwp_params(prob, "vwp-ft")?;
    vwp42_entry(prob, &bk, &c, &d, &a, &b, &u, &delta, i, j, true)
}

fn vwp42_l_matrix(
    bk: &BracketKind,
    cc: &Scalar,
    dd: &Scalar,
    u: &Scalar,
    delta: &Scalar,
    nn: usize,
) -> Result<Matrix> {
    let kind = u.kind();
    let a0 = u + u;
    let mut vals = Vec::with_capacity((nn + 1) * (nn + 1));
    for i in 0..=nn {
        let list = vwp42_kernel_list(kind, cc, dd, u, delta, nn, i);
        for j in 0..=nn {
            let entry = vwp_term(bk, delta, j, &a0, &list).map_err(|_| Error::PoleInL { i, j })?;
            vals.push(entry);
        }
    }
    Ok(Matrix::new(nn + 1, nn + 1, vals))
}

/// The product LG of the Frenkel–Turaev route (P side).
pub fn vwp42_lg(prob: &InterpolationProblem) -> Result<Matrix> {
    let (bk, _a, _b, c, d, u, delta) = vwp_params(prob, "vwp-ft")?;
    let l = vwp42_l_matrix(&bk, &c, &d, &u, &delta, prob.big_n())?;
    Ok(l.mul(&prob.node_matrix_g()?))
}

/// Frenkel–Turaev-based closed-form route for bracket problems.
pub fn solve_vwp_ft(prob: &InterpolationProblem) -> Result<PadeSolution> {
    let (bk, a, b, c, d, u, delta) = vwp_params(prob, "vwp-ft")?;
    let kind = prob.kind();
    let (m, n) = (prob.m, prob.n);
    let nn = prob.big_n();

    let l_p = vwp42_l_matrix(&bk, &c, &d, &u, &delta, nn)?;
    let k_p = k_constant(&l_p, &prob.node_matrix_g()?, m, nn)?;
    let mut cp = k_p;
    for i in 0..=nn {
        cp = &cp * prob.lambda(i);
    }
    let mut phrows = Vec::with_capacity(m);
    for i in 0..m {
        let mut row = Vec::with_capacity(m + 1);
        for j in 0..=m {
            row.push(vwp42_phi(prob, i, j)?);
        }
        phrows.push(row);
    }
    let p = cofactor_coeffs(kind, &phrows, &cp)?;

    let l_q = vwp42_l_matrix(&bk, &a, &b, &u, &delta, nn)?;
    let k_q = k_constant(&l_q, &prob.node_matrix_f()?, n, nn)?;
    let mut cq = &epsilon_mn(kind, m, n) * &k_q;
    for i in 0..=nn {
        cq = &cq * prob.mu(i);
    }
    let mut psrows = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n + 1);
        for j in 0..=n {
            row.push(vwp42_psi(prob, i, j)?);
        }
        psrows.push(row);
    }
    let q = cofactor_coeffs(kind, &psrows, &cq)?;
    Ok(PadeSolution {
        p,
        q,
        route: Route::VwpFrenkelTuraev,
        normalization: cp,
    })
}

/// Dispatch to the route named by `route`.
pub fn solve(prob: &InterpolationProblem, route: Route) -> Result<PadeSolution> {
    match route {
        Route::BruteForce => solve_bruteforce(prob),
        Route::Condensed => solve_condensed(prob),
        Route::HgKrattenthaler => solve_hg_krattenthaler(prob),
        Route::HgSaalschutz => solve_hg_saalschutz(prob),
        Route::VwpKrattenthaler => solve_vwp_krattenthaler(prob),
        Route::VwpFrenkelTuraev => solve_vwp_ft(prob),
    }
}

/// Routes applicable to a problem's family.
pub fn applicable_routes(prob: &InterpolationProblem) -> Vec<Route> {
    let mut routes = vec![Route::BruteForce, Route::Condensed];
    match prob.family {
        Family::RationalHg { .. } => {
            routes.push(Route::HgKrattenthaler);
            routes.push(Route::HgSaalschutz);
        }
        Family::Vwp { .. } => {
            routes.push(Route::VwpKrattenthaler);
            routes.push(Route::VwpFrenkelTuraev);
        }
    }
    routes
}

/// Equality of two solutions up to one common nonzero scalar applied to the
/// concatenated (p, q) vector.
pub fn solutions_proj_eq(
    a: &PadeSolution,
    b: &PadeSolution,
    policy: &EqPolicy,
) -> Result<bool> {
    let mut va = a.p.clone();
    va.extend(a.q.iter().cloned());
    let mut vb = b.p.clone();
    vb.extend(b.q.iter().cloned());
    crate::scalar::proj_eq(&va, &vb, policy)
}

/// One off-node probe value.
#[derive(Clone, Debug)]
pub struct Probe {
    pub x: Scalar,
    pub p: Scalar,
    pub q: Scalar,
}

/// Per-node residual report for a solution.
#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub route: Route,
    pub node_residuals: Vec<Scalar>,
    pub max_residual: f64,
    pub pass: bool,
    pub probes: Vec<Probe>,
}

impl VerificationReport {
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "route": self.route.name(),
            "node_residuals": self.node_residuals.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
            "max_residual": self.max_residual,
            "pass": self.pass,
            "probes": self.probes.iter().map(|p| serde_json::json!({
                "x": p.x.to_json(),
                "p": p.p.to_json(),
                "q": p.q.to_json(),
            })).collect::<Vec<_>>(),
        })
    }
}

/// Check μ_k P(u_k) = λ_k Q(u_k) at every node under the policy and collect
/// three deterministic off-node probe values (for cross-route comparison).
pub fn verify_solution(
    prob: &InterpolationProblem,
    sol: &PadeSolution,
    policy: &EqPolicy,
) -> Result<VerificationReport> {
    let kind = prob.kind();
    let mut residuals = Vec::new();
    let mut max_res = 0f64;
    let mut pass = true;
    for k in 0..=prob.big_n() {
        let pv = evaluate_p(prob, &sol.p, prob.point(k))?;
        let qv = evaluate_q(prob, &sol.q, prob.point(k))?;
        let lhs = prob.mu(k) * &pv;
        let rhs = prob.lambda(k) * &qv;
        if !scalar_eq(&lhs, &rhs, policy)? {
            pass = false;
        }
        let res = &lhs - &rhs;
        let mag = res.abs_float().to_f64();
        if mag > max_res {
            max_res = mag;
        }
        residuals.push(res);
    }
    if sol.p.iter().all(|c| c.is_zero()) && sol.q.iter().all(|c| c.is_zero()) {
        pass = false;
    }
    // Probes at half-odd steps between nodes: u + (t + 1/2)·δ.
    let step = match &prob.family {
        Family::RationalHg { .. } => kind.one(),
        Family::Vwp { delta, .. } => delta.clone(),
    };
    let base = prob.point(0).clone();
    let half = &kind.one() / &kind.from_i64(2);
    let mut probes = Vec::new();
    let mut t = 0i64;
    while probes.len() < 3 && t < 24 {
        let x = &base + &(&(&kind.from_i64(t) + &half) * &step);
        t += 1;
        let pv = match evaluate_p(prob, &sol.p, &x) {
            Ok(v) => v,
            Err(_) => continue,
        };
        let qv = match evaluate_q(prob, &sol.q, &x) {
            Ok(v) => v,
            Err(_) => continue,
        };
        probes.push(Probe { x, p: pv, q: qv });
    }
    Ok(VerificationReport {
        route: sol.route,
        node_residuals: residuals,
        max_residual: max_res,
        pass,
        probes,
    })
}

/// U_ij of the Krattenthaler route as a terminating generalized
/// hypergeometric series, available when the weights come from one of the
/// two shifted-factorial families.
pub fn hg31_u_series(prob: &InterpolationProblem, i: usize, j: usize) -> Result<Scalar> {
    let (a, b, c, d, u) = rational_hg_params(prob, "hg-k")?;
    let kind = prob.kind();
    let n = prob.n;
    let ui = &u + &kind.from_i64(i as i64);
    let pref = sf_ratio(&[&(&a + &ui)], &[&(&b + &ui)], j)?;
    let mn1 = kind.from_i64(-(n as i64) - 1);
    let dn = &(&d + &ui) + &kind.from_i64(n as i64);
    let aj = &(&a + &ui) + &kind.from_i64(j as i64);
    let bj = &(&b + &ui) + &kind.from_i64(j as i64);
    let shift_i = |xs: &[Scalar]| -> Vec<Scalar> {
        xs.iter().map(|x| x + &kind.from_i64(i as i64)).collect()
    };
    let (upper, lower, arg) = match &prob.wspec {
        WeightSpec::PlainSt { s, t, z, w } => {
            let mut upper = vec![mn1, dn, aj, &b + &ui];
            upper.extend(shift_i(t));
            let mut lower = vec![&d + &ui, &a + &ui, bj];
            lower.extend(shift_i(s));
            (upper, lower, w / z)
        }
        WeightSpec::SimplifiedSt { s, t, z, w, .. } => {
            let mut upper = vec![mn1, dn, aj];
            upper.extend(shift_i(t));
            let mut lower = vec![&c + &ui, bj];
            lower.extend(shift_i(s));
            (upper, lower, w / z)
        }
        _ => {
            return Err(Error::InvalidInput(
                "series reduction needs a shifted-factorial weight family".into(),
            ))
        }
    };
    Ok(&pref * &eval_f(&upper, &lower, &arg)?)
}

/// Φ_ij of the Saalschütz route as a terminating generalized hypergeometric
/// series (plain shifted-factorial weight family).
pub fn hg32_phi_series(prob: &InterpolationProblem, i: usize, j: usize) -> Result<Scalar> {
    let (a, b, c, d, u) = rational_hg_params(prob, "hg-s")?;
    let kind = prob.kind();
    let nn = prob.big_n();
    let au = &a + &u;
    let bu = &b + &u;
    let cu = &c + &u;
    let du = &d + &u;
    let pref = sf_ratio(&[&au], &[&bu], j)?;
    let (upper, lower, arg) = match &prob.wspec {
        WeightSpec::PlainSt { s, t, z, w } => {
            let mut upper = vec![
                kind.from_i64(-(nn as i64)),
                &(&du + &kind.from_i64(nn as i64 - 1)) - &kind.from_i64(i as i64),
                cu.clone(),
                &au + &kind.from_i64(j as i64),
                bu.clone(),
            ];
            upper.extend(t.iter().cloned());
            let mut lower = vec![
                &cu - &kind.from_i64(i as i64),
                du.clone(),
                &bu + &kind.from_i64(j as i64),
                au.clone(),
            ];
            lower.extend(s.iter().cloned());
            (upper, lower, w / z)
        }
        _ => {
            return Err(Error::InvalidInput(
                "series reduction needs the plain shifted-factorial weight family".into(),
            ))
        }
    };
    Ok(&pref * &eval_f(&upper, &lower, &arg)?)
}

/// U_ij of the bracket Krattenthaler route as a terminating very-well-poised
/// series (bracket weight families).
pub fn vwp41_u_series(prob: &InterpolationProblem, i: usize, j: usize) -> Result<Scalar> {
    let (bk, a, b, c, d, _u, delta) = vwp_params(prob, "vwp-k")?;
    let kind = prob.kind();
    let n = prob.n;
    let ui = prob.point(i).clone();
    let pref = {
        let num = pm_dsf(&bk, &a, &ui, &delta, j)?;
        let den = pm_dsf(&bk, &b, &ui, &delta, j)?;
        if near_zero(&den) {
            return Err(Error::PoleInConstant);
        }
        &num / &den
    };
    let int = |v: i64| &kind.from_i64(v) * &delta;
    let a0 = &ui + &ui;
    let (list, arg) = match &prob.wspec {
        WeightSpec::VwpE { e, z, w } => {
            let mut list = vwp41_list(kind, n, &a, &b, &d, &ui, &delta, j);
            for es in e {
                list.push(&ui + es);
            }
            (list, w / z)
        }
        WeightSpec::VwpESimplified { e, z, w, .. } => {
            let mut list = vec![
                int(-(n as i64) - 1),
                &(&ui - &c) + &delta,
                &(&ui + &d) + &int(n as i64),
                &(&ui + &a) + &int(j as i64),
                &(&ui - &b) + &int(1 - j as i64),
            ];
            for es in e {
                list.push(&ui + es);
            }
            (list, w / z)
        }
        _ => {
            return Err(Error::InvalidInput(
                "series reduction needs a bracket weight family".into(),
            ))
        }
    };
    Ok(&pref * &eval_v(&bk, &delta, &a0, &list, &arg)?)
}

/// Φ_ij of the Frenkel–Turaev route as a terminating very-well-poised series
/// (plain bracket weight family).
pub fn vwp42_phi_series(prob: &InterpolationProblem, i: usize, j: usize) -> Result<Scalar> {
    let (bk, a, b, c, d, u, delta) = vwp_params(prob, "vwp-ft")?;
    let kind = prob.kind();
    let nn = prob.big_n();
    let pref = {
        let num = pm_dsf(&bk, &a, &u, &delta, j)?;
        let den = pm_dsf(&bk, &b, &u, &delta, j)?;
        if near_zero(&den) {
            return Err(Error::PoleInConstant);
        }
        &num / &den
    };
    let int = |v: i64| &kind.from_i64(v) * &delta;
    let a0 = &u + &u;
    let (list, arg) = match &prob.wspec {
        WeightSpec::VwpE { e, z, w } => {
            let mut list = vwp42_kernel_list(kind, &c, &d, &u, &delta, nn, i);
            list.push(&(&u + &a) + &int(j as i64));
            list.push(&(&u - &b) + &int(1 - j as i64));
            list.push(&(&u - &a) + &delta);
            list.push(&u + &b);
            for es in e {
                list.push(&u + es);
            }
            (list, w / z)
        }
        _ => {
            return Err(Error::InvalidInput(
                "series reduction needs the plain bracket weight family".into(),
            ))
        }
    };
    Ok(&pref * &eval_v(&bk, &delta, &a0, &list, &arg)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Draw;
    use crate::scalar::{rational, DEFAULT_PRECISION_BITS};

    fn explicit_weights(d: &mut Draw, nn: usize) -> WeightSpec {
        WeightSpec::Explicit(
            (0..=nn)
                .map(|_| (d.nonzero_rational(), d.nonzero_rational()))
                .collect(),
        )
    }

    fn random_rational_problem(d: &mut Draw, m: usize, n: usize) -> InterpolationProblem {
        loop {
            let a = d.rational();
            let b = &d.rational() + &rational(1, 3).unwrap();
            let c = d.rational();
            let dd = &d.rational() + &rational(1, 7).unwrap();
            let u = &d.rational() + &rational(1, 11).unwrap();
            let w = explicit_weights(d, m + n);
            if let Ok(p) = build_rational_hg_problem(&a, &b, &c, &dd, &u, m, n, &w) {
                if p.genericity_check().is_ok() {
                    return p;
                }
            }
        }
    }

    #[test]
    fn bruteforce_contract_exact() {
        let mut d = Draw::new(11);
        for (m, n) in [(1usize, 1usize), (2, 1), (1, 2), (2, 2)] {
            let prob = random_rational_problem(&mut d, m, n);
            let sol = solve_bruteforce(&prob).unwrap();
            for k in 0..=prob.big_n() {
                let r = residual_r(&prob, &sol, prob.point(k), prob.lambda(k), prob.mu(k))
                    .unwrap();
                assert!(r.is_zero(), "residual nonzero at node {k} (m={m}, n={n})");
            }
        }
    }

    #[test]
    fn lagrange_reduction_constant_q() {
        let mut d = Draw::new(12);
        let prob = random_rational_problem(&mut d, 3, 0);
        let sol = solve_bruteforce(&prob).unwrap();
        assert_eq!(sol.q.len(), 1);
        let policy = EqPolicy::Exact;
        let rep = verify_solution(&prob, &sol, &policy).unwrap();
        assert!(rep.pass);
        // P(u_k)/q_0 reproduces the prescribed values λ_k/μ_k (g_0 = 1).
        for k in 0..=prob.big_n() {
            let pv = evaluate_p(&prob, &sol.p, prob.point(k)).unwrap();
            let lhs = &pv * prob.mu(k);
            let rhs = &sol.q[0] * prob.lambda(k);
            assert!((&lhs - &rhs).is_zero());
        }
    }

    #[test]
    fn condensed_equals_bruteforce_exactly() {
        let mut d = Draw::new(13);
        for (m, n) in [(1usize, 1usize), (2, 2), (0, 2), (2, 0)] {
            let prob = random_rational_problem(&mut d, m, n);
            let brute = solve_bruteforce(&prob).unwrap();
            let cond = solve_condensed(&prob).unwrap();
            for (x, y) in brute.p.iter().zip(cond.p.iter()) {
                assert!((x - y).is_zero(), "p mismatch at m={m}, n={n}");
            }
            for (x, y) in brute.q.iter().zip(cond.q.iter()) {
                assert!((x - y).is_zero(), "q mismatch at m={m}, n={n}");
            }
        }
    }

    #[test]
    fn condensed_det_and_sum_forms_agree() {
        let mut d = Draw::new(14);
        let prob = random_rational_problem(&mut d, 2, 2);
        for i in 0..prob.m() {
            for j in 0..=prob.m() {
                let a = condensed_u(&prob, i, j).unwrap();
                let b = condensed_u_sum(&prob, i, j).unwrap();
                assert!((&a - &b).is_zero());
            }
        }
        for i in 0..prob.n() {
            for j in 0..=prob.n() {
                let a = condensed_v(&prob, i, j).unwrap();
                let b = condensed_v_sum(&prob, i, j).unwrap();
                assert!((&a - &b).is_zero());
            }
        }
    }

    fn plain_weights(d: &mut Draw, r: usize) -> WeightSpec {
        WeightSpec::PlainSt {
            s: (0..r).map(|_| &d.rational() + &rational(1, 13).unwrap()).collect(),
            t: (0..r).map(|_| &d.rational() + &rational(1, 17).unwrap()).collect(),
            z: d.nonzero_rational(),
            w: d.nonzero_rational(),
        }
    }

    fn random_hg_family_problem(d: &mut Draw, m: usize, n: usize) -> InterpolationProblem {
        loop {
            let a = d.rational();
            let b = &d.rational() + &rational(1, 3).unwrap();
            let c = d.rational();
            let dd = &d.rational() + &rational(1, 7).unwrap();
            let u = &d.rational() + &rational(1, 11).unwrap();
            let w = plain_weights(d, 1);
            if let Ok(p) = build_rational_hg_problem(&a, &b, &c, &dd, &u, m, n, &w) {
                if p.genericity_check().is_ok() {
                    return p;
                }
            }
        }
    }

    #[test]
    fn hg_krattenthaler_equals_bruteforce() {
        let mut d = Draw::new(15);
        for (m, n) in [(1usize, 1usize), (2, 1), (1, 2)] {
            let prob = random_hg_family_problem(&mut d, m, n);
            let brute = solve_bruteforce(&prob).unwrap();
            let sol = solve_hg_krattenthaler(&prob).unwrap();
            assert!(solutions_proj_eq(&brute, &sol, &EqPolicy::Exact).unwrap());
        }
    }

    #[test]
    fn hg31_u_matches_f_series_reduction() {
        let mut d = Draw::new(16);
        let prob = random_hg_family_problem(&mut d, 2, 1);
        for i in 0..prob.m() {
            for j in 0..=prob.m() {
                let direct = hg31_u(&prob, i, j).unwrap();
                let series = hg31_u_series(&prob, i, j).unwrap();
                assert!((&direct - &series).is_zero(), "plain family at ({i},{j})");
            }
        }
        // Simplified family: weights built from the problem's own parameters.
        let (a, b, c, dd, u) = match prob.family() {
            Family::RationalHg { a, b, c, d, u } => {
                (a.clone(), b.clone(), c.clone(), dd_clone(d), u.clone())
            }
            _ => unreachable!(),
        };
        let w = WeightSpec::SimplifiedSt {
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
            d: dd.clone(),
            s: vec![rational(5, 4).unwrap()],
            t: vec![rational(7, 5).unwrap()],
            z: rational(2, 3).unwrap(),
            w: rational(3, 5).unwrap(),
        };
        let prob2 = build_rational_hg_problem(&a, &b, &c, &dd, &u, 2, 1, &w).unwrap();
        for i in 0..prob2.m() {
            for j in 0..=prob2.m() {
                let direct = hg31_u(&prob2, i, j).unwrap();
                let series = hg31_u_series(&prob2, i, j).unwrap();
                assert!((&direct - &series).is_zero(), "simplified family at ({i},{j})");
            }
        }
    }

    fn dd_clone(d: &Scalar) -> Scalar {
        d.clone()
    }

    #[test]
    fn hg_saalschutz_equals_bruteforce_and_lg_is_anti_triangular() {
        let mut d = Draw::new(17);
        for (m, n) in [(1usize, 1usize), (2, 1)] {
            let prob = random_hg_family_problem(&mut d, m, n);
            let brute = solve_bruteforce(&prob).unwrap();
            let sol = solve_hg_saalschutz(&prob).unwrap();
            assert!(solutions_proj_eq(&brute, &sol, &EqPolicy::Exact).unwrap());
            let lg = hg32_lg(&prob).unwrap();
            let nn = prob.big_n();
            for i in 0..lg.rows() {
                for j in 0..lg.cols() {
                    if i + j < nn {
                        assert!(lg.at(i, j).is_zero(), "LG[{i}][{j}] != 0");
                    }
                }
            }
        }
    }

    #[test]
    fn hg32_phi_matches_f_series_reduction() {
        let mut d = Draw::new(18);
        let prob = random_hg_family_problem(&mut d, 1, 2);
        for i in 0..prob.m() {
            for j in 0..=prob.m() {
                let direct = hg32_phi(&prob, i, j).unwrap();
                let series = hg32_phi_series(&prob, i, j).unwrap();
                assert!((&direct - &series).is_zero());
            }
        }
    }

    fn vwp_rational_problem(d: &mut Draw, m: usize, n: usize) -> InterpolationProblem {
        let bk = BracketKind::rational(ScalarKind::Rational);
        loop {
            let a = d.rational();
            let b = &d.rational() + &rational(1, 3).unwrap();
            let c = d.rational();
            let dd = &d.rational() + &rational(1, 7).unwrap();
            let u = &d.rational() + &rational(10, 11).unwrap();
            let w = WeightSpec::VwpE {
                e: vec![&d.rational() + &rational(1, 13).unwrap()],
                z: d.nonzero_rational(),
                w: d.nonzero_rational(),
            };
            let one = ScalarKind::Rational.one();
            if let Ok(p) = build_vwp_problem(&bk, &a, &b, &c, &dd, &u, &one, m, n, &w) {
                if p.genericity_check().is_ok() {
                    return p;
                }
            }
        }
    }

    fn elliptic_kind() -> BracketKind {
        let p = DEFAULT_PRECISION_BITS;
        let k = ScalarKind::Complex(p);
        let omega1 = k.one();
        let omega2 = Scalar::Complex(crate::scalar::CFloat::from_f64(p, 0.0, 2.0));
        BracketKind::elliptic(omega1, omega2, k.zero(), k.zero()).unwrap()
    }

    fn vwp_elliptic_problem(d: &mut Draw, m: usize, n: usize) -> InterpolationProblem {
        let bk = elliptic_kind();
        let k = ScalarKind::Complex(DEFAULT_PRECISION_BITS);
        loop {
            let a = d.small_scalar(k);
            let b = d.small_scalar(k);
            let c = d.small_scalar(k);
            let dd = d.small_scalar(k);
            let u = d.small_scalar(k);
            let delta = &k.from_i64(1) / &k.from_i64(5);
            let w = WeightSpec::VwpE {
                e: vec![d.small_scalar(k)],
                z: d.nonzero_scalar(k),
                w: d.nonzero_scalar(k),
            };
            if let Ok(p) = build_vwp_problem(&bk, &a, &b, &c, &dd, &u, &delta, m, n, &w) {
                if p.genericity_check().is_ok() {
                    return p;
                }
            }
        }
    }

    #[test]
    fn vwp_krattenthaler_rational_exact() {
        let mut d = Draw::new(19);
        for (m, n) in [(1usize, 1usize), (2, 1)] {
            let prob = vwp_rational_problem(&mut d, m, n);
            let brute = solve_bruteforce(&prob).unwrap();
            let sol = solve_vwp_krattenthaler(&prob).unwrap();
            assert!(solutions_proj_eq(&brute, &sol, &EqPolicy::Exact).unwrap());
        }
    }

    #[test]
    fn vwp_krattenthaler_elliptic_toleranced() {
        let mut d = Draw::new(20);
        let prob = vwp_elliptic_problem(&mut d, 1, 1);
        let brute = solve_bruteforce(&prob).unwrap();
        let sol = solve_vwp_krattenthaler(&prob).unwrap();
        let policy = EqPolicy::relative(1e-15, 1e-30);
        assert!(solutions_proj_eq(&brute, &sol, &policy).unwrap());
    }

    #[test]
    fn vwp41_u_matches_v_series_reduction() {
        let mut d = Draw::new(21);
        let prob = vwp_rational_problem(&mut d, 2, 1);
        for i in 0..prob.m() {
            for j in 0..=prob.m() {
                let direct = vwp41_u(&prob, i, j).unwrap();
                let series = vwp41_u_series(&prob, i, j).unwrap();
                assert!((&direct - &series).is_zero(), "plain bracket family ({i},{j})");
            }
        }
    }

    #[test]
    fn vwp_ft_rational_exact_and_elliptic_toleranced() {
        let mut d = Draw::new(22);
        let prob = vwp_rational_problem(&mut d, 1, 1);
        let brute = solve_bruteforce(&prob).unwrap();
        let sol = solve_vwp_ft(&prob).unwrap();
        assert!(solutions_proj_eq(&brute, &sol, &EqPolicy::Exact).unwrap());

        let probe = vwp_elliptic_problem(&mut d, 1, 1);
        let brute = solve_bruteforce(&probe).unwrap();
        let sol = solve_vwp_ft(&probe).unwrap();
        let policy = EqPolicy::relative(1e-12, 1e-25);
        assert!(solutions_proj_eq(&brute, &sol, &policy).unwrap());
    }

    #[test]
    fn vwp42_phi_matches_v_series_reduction() {
        let mut d = Draw::new(23);
        let prob = vwp_rational_problem(&mut d, 1, 1);
        for i in 0..prob.m() {
            for j in 0..=prob.m() {
                let direct = vwp42_phi(&prob, i, j).unwrap();
                let series = vwp42_phi_series(&prob, i, j).unwrap();
                assert!((&direct - &series).is_zero());
            }
        }
    }

    #[test]
    fn perturbed_solution_fails_verification() {
        let mut d = Draw::new(24);
        let prob = random_rational_problem(&mut d, 1, 1);
        let mut sol = solve_bruteforce(&prob).unwrap();
        let rep = verify_solution(&prob, &sol, &EqPolicy::Exact).unwrap();
        assert!(rep.pass);
        sol.p[0] = &sol.p[0] + &ScalarKind::Rational.one();
        let rep = verify_solution(&prob, &sol, &EqPolicy::Exact).unwrap();
        assert!(!rep.pass);
    }

    #[test]
    fn weight_rescaling_leaves_solution_proj_invariant() {
        let mut d = Draw::new(25);
        let prob = random_rational_problem(&mut d, 2, 1);
        let base = solve_bruteforce(&prob).unwrap();
        let rescaled: Vec<(Scalar, Scalar)> = prob
            .weights()
            .iter()
            .map(|(l, m)| {
                let c = d.nonzero_rational();
                (&c * l, &c * m)
            })
            .collect();
        let prob2 = prob.with_weights(rescaled).unwrap();
        let sol2 = solve_bruteforce(&prob2).unwrap();
        assert!(solutions_proj_eq(&base, &sol2, &EqPolicy::Exact).unwrap());
    }

    #[test]
    fn bracket_prefactor_leaves_interpolant_proj_invariant() {
        // Changing (c0, c1) multiplies each basis element f_j by a constant
        // (the x-dependence of the Gaussian prefactor cancels inside the
        // [a±x]_j / [b±x]_j ratio), so with the weights held fixed the
        // solution is the same function pair (P, Q) up to one overall
        // scalar. Compare values at common probe points.
        let p = DEFAULT_PRECISION_BITS;
        let k = ScalarKind::Complex(p);
        let mut d = Draw::new(26);
        let omega = k.from_i64(3);
        let plain = BracketKind::trigonometric(omega.clone(), k.zero(), k.zero()).unwrap();
        let c0 = &k.from_i64(1) / &k.from_i64(50);
        let c1 = &k.from_i64(1) / &k.from_i64(9);
        let gauged = BracketKind::trigonometric(omega, c0, c1).unwrap();
        let a = d.small_scalar(k);
        let b = d.small_scalar(k);
        let c = d.small_scalar(k);
        let dd = d.small_scalar(k);
        let u = d.small_scalar(k);
        let delta = &k.from_i64(1) / &k.from_i64(4);
        let w = WeightSpec::Explicit(
            (0..3)
                .map(|_| (d.nonzero_scalar(k), d.nonzero_scalar(k)))
                .collect(),
        );
        let p1 = build_vwp_problem(&plain, &a, &b, &c, &dd, &u, &delta, 1, 1, &w).unwrap();
        let p2 = build_vwp_problem(&gauged, &a, &b, &c, &dd, &u, &delta, 1, 1, &w).unwrap();
        let s1 = solve_bruteforce(&p1).unwrap();
        let s2 = solve_bruteforce(&p2).unwrap();
        let half = &k.one() / &k.from_i64(2);
        let mut vals1 = Vec::new();
        let mut vals2 = Vec::new();
        for t in 0..3i64 {
            let x = &u + &(&(&k.from_i64(t) + &half) * &delta);
            vals1.push(evaluate_p(&p1, &s1.p, &x).unwrap());
            vals1.push(evaluate_q(&p1, &s1.q, &x).unwrap());
            vals2.push(evaluate_p(&p2, &s2.p, &x).unwrap());
            vals2.push(evaluate_q(&p2, &s2.q, &x).unwrap());
        }
        let policy = EqPolicy::relative(1e-20, 1e-40);
        assert!(crate::scalar::proj_eq(&vals1, &vals2, &policy).unwrap());
    }

    #[test]
    fn degenerate_inputs_are_rejected() {
        let k = ScalarKind::Rational;
        let bk = BracketKind::rational(k);
        let one = k.one();
        let w = WeightSpec::Explicit(vec![
            (one.clone(), one.clone()),
            (one.clone(), one.clone()),
            (one.clone(), one.clone()),
        ]);
        // Zero delta collapses all nodes.
        let err = build_vwp_problem(&bk, &one, &one, &one, &one, &one, &k.zero(), 1, 1, &w)
            .unwrap_err();
        assert!(matches!(err, Error::ZeroDelta));
        // Zero weight.
        let wz = WeightSpec::Explicit(vec![
            (one.clone(), one.clone()),
            (k.zero(), one.clone()),
            (one.clone(), one.clone()),
        ]);
        let u = rational(1, 5).unwrap();
        let err = build_rational_hg_problem(&one, &one, &one, &one, &u, 1, 1, &wz).unwrap_err();
        assert!(matches!(err, Error::ZeroWeight { k: 1 }));
        // Pole at a node: b + u_k hits a nonpositive integer so (b+u_k)_j = 0.
        let b = rational(-2, 1).unwrap();
        let we = WeightSpec::Explicit(vec![
            (one.clone(), one.clone()),
            (one.clone(), one.clone()),
            (one.clone(), one.clone()),
        ]);
        let u0 = rational(1, 1).unwrap();
        let err =
            build_rational_hg_problem(&one, &b, &one, &one, &u0, 1, 1, &we).unwrap_err();
        assert!(matches!(err, Error::PoleAtNode { .. }));
    }
}
