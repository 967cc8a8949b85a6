//! Bracket functions, shifted factorials, and terminating hypergeometric
//! series.
//!
//! The bracket [x] comes in three flavours sharing one Gaussian prefactor
//! `e^{c0 x^2 + c1}`:
//!
//! - rational: [x] = x,
//! - trigonometric: [x] = sin(pi x / omega),
//! - elliptic: [x] = sigma(x | Omega) for the lattice with half-periods
//!   omega1, omega2.
//!
//! On top of the bracket sit delta-shifted factorials, terminating
//! generalized series (eval_F), very-well-poised series (eval_V), the
//! Saalschütz and Frenkel–Turaev summation checks, and the Riemann relation
//! residual that underwrites all three bracket classes.

pub mod theta;

use crate::error::{Error, Result};
use crate::report::IdentityReport;
use crate::scalar::{CFloat, EqPolicy, Scalar, ScalarKind};
use rug::Float;

/// The three bracket classes.
#[derive(Clone, Debug)]
pub enum BracketVariant {
    Rational,
    Trigonometric { omega: Scalar },
    Elliptic { omega1: Scalar, omega2: Scalar },
}

/// Bracket function [x] = prefactor * (class-specific odd function), with
/// prefactor e^{c0 x^2 + c1}.
#[derive(Clone, Debug)]
pub struct BracketKind {
    pub variant: BracketVariant,
    pub c0: Scalar,
    pub c1: Scalar,
}

impl BracketKind {
    /// Rational bracket [x] = x over the given backend, trivial prefactor.
    pub fn rational(kind: ScalarKind) -> BracketKind {
        BracketKind {
            variant: BracketVariant::Rational,
            c0: kind.zero(),
            c1: kind.zero(),
        }
    }

    pub fn trigonometric(omega: Scalar, c0: Scalar, c1: Scalar) -> Result<BracketKind> {
        if omega.is_zero() {
            return Err(Error::InvalidInput("trigonometric omega must be nonzero".into()));
        }
        if !matches!(omega.kind(), ScalarKind::Complex(_)) {
            return Err(Error::InvalidInput("trigonometric bracket needs the complex backend".into()));
        }
        Ok(BracketKind {
            variant: BracketVariant::Trigonometric { omega },
            c0,
            c1,
        })
    }

    pub fn elliptic(omega1: Scalar, omega2: Scalar, c0: Scalar, c1: Scalar) -> Result<BracketKind> {
        let (ScalarKind::Complex(p), ScalarKind::Complex(_)) = (omega1.kind(), omega2.kind()) else {
            return Err(Error::InvalidInput("elliptic bracket needs the complex backend".into()));
        };
        let tau = omega2.to_cfloat(p).div(&omega1.to_cfloat(p));
        if !(tau.im > 0) {
            return Err(Error::InvalidLattice);
        }
        Ok(BracketKind {
            variant: BracketVariant::Elliptic { omega1, omega2 },
            c0,
            c1,
        })
    }

    fn trivial_prefactor(&self) -> bool {
        self.c0.is_zero() && self.c1.is_zero()
    }

    /// Scalar kind forced by this bracket's constants (rational unless some
    /// part carries a complex precision).
    pub fn scalar_kind(&self) -> ScalarKind {
        match self.prec() {
            Some(p) => ScalarKind::Complex(p),
            None => ScalarKind::Rational,
        }
    }

    /// Working precision of the complex backend, if any part forces one.
    fn prec(&self) -> Option<u32> {
        let probe = match &self.variant {
            BracketVariant::Rational => &self.c0,
            BracketVariant::Trigonometric { omega } => omega,
            BracketVariant::Elliptic { omega1, .. } => omega1,
        };
        match probe.kind() {
            ScalarKind::Complex(p) => Some(p),
            ScalarKind::Rational => match self.c0.kind() {
                ScalarKind::Complex(p) => Some(p),
                ScalarKind::Rational => None,
            },
        }
    }
}

/// Evaluate the bracket [x].
pub fn bracket(kind: &BracketKind, x: &Scalar) -> Result<Scalar> {
    let base = match &kind.variant {
        BracketVariant::Rational => x.clone(),
        BracketVariant::Trigonometric { omega } => {
            let p = kind.prec().expect("trig bracket carries a precision");
            let pi = CFloat::new(CFloat::pi(p), Float::with_val(p, 0));
            let v = pi.mul(&x.to_cfloat(p)).div(&omega.to_cfloat(p));
            Scalar::Complex(v.sin())
        }
        BracketVariant::Elliptic { omega1, omega2 } => {
            let p = kind.prec().expect("elliptic bracket carries a precision");
            Scalar::Complex(theta::sigma(
                &x.to_cfloat(p),
                &omega1.to_cfloat(p),
                &omega2.to_cfloat(p),
            )?)
        }
    };
    if kind.trivial_prefactor() {
        return Ok(base);
    }
    // Gaussian prefactor needs exp, hence the complex backend.
    let p = kind
        .prec()
        .ok_or_else(|| Error::InvalidInput("nonzero c0/c1 requires the complex backend".into()))?;
    let xf = x.to_cfloat(p);
    let arg = kind.c0.to_cfloat(p).mul(&xf).mul(&xf).add(&kind.c1.to_cfloat(p));
    Ok(Scalar::Complex(arg.exp().mul(&base.to_cfloat(p))))
}

/// Plain shifted factorial (a)_n = a (a+1) ... (a+n-1).
pub fn shifted_factorial(a: &Scalar, n: usize) -> Scalar {
    let kind = a.kind();
    let mut acc = kind.one();
    for t in 0..n {
        acc = &acc * &(a + &kind.from_i64(t as i64));
    }
    acc
}

/// Delta-shifted factorial [x]_k = [x][x+delta]...[x+(k-1)delta].
pub fn delta_shifted_factorial(
    kind: &BracketKind,
    x: &Scalar,
    delta: &Scalar,
    k: usize,
) -> Result<Scalar> {
    let skind = x.kind();
    let mut acc = match kind.prec() {
        Some(p) if skind == ScalarKind::Rational => ScalarKind::Complex(p).one(),
        _ => skind.one(),
    };
    for t in 0..k {
        let arg = x + &(&skind.from_i64(t as i64) * delta);
        acc = &acc * &bracket(kind, &arg)?;
    }
    Ok(acc)
}

/// Detect an integer value; exact for rationals, within 2^(-prec/2) of the
/// nearest integer for the float backend.
pub(crate) fn as_int(s: &Scalar) -> Option<i64> {
    match s {
        Scalar::Rational(r) => {
            if *r.denom() == 1 {
                r.numer().to_i64()
            } else {
                None
            }
        }
        Scalar::Complex(c) => {
            let p = c.prec();
            let mut tol = Float::with_val(p, 1);
            tol >>= p / 2;
            let scale = Float::with_val(p, c.re.clone().abs().max(&Float::with_val(p, 1)));
            let near = Float::with_val(p, &tol * &scale);
            let r = c.re.clone().round();
            let dre = Float::with_val(p, &c.re - &r).abs();
            let dim = c.im.clone().abs();
            if dre <= near && dim <= near {
                r.to_integer().and_then(|z| z.to_i64())
            } else {
                None
            }
        }
    }
}

/// Near-zero test matched to the backend (exact zero for rationals).
pub(crate) fn near_zero(s: &Scalar) -> bool {
    match s {
        Scalar::Rational(_) => s.is_zero(),
        Scalar::Complex(c) => {
            let p = c.prec();
            let mut tol = Float::with_val(p, 1);
            tol >>= p / 2;
            c.abs() < tol
        }
    }
}

fn nonneg_int(s: &Scalar) -> Option<usize> {
    as_int(s).and_then(|v| usize::try_from(v).ok())
}

/// Smallest n >= 0 with x = -n (plain series) — termination scan.
fn termination_from_upper(upper: &[Scalar]) -> Option<usize> {
    upper
        .iter()
        .filter_map(|a| nonneg_int(&-a))
        .min()
}

/// A terminating hypergeometric series specification.
#[derive(Clone, Debug)]
pub enum SeriesSpec {
    GeneralizedF {
        upper: Vec<Scalar>,
        lower: Vec<Scalar>,
        z: Scalar,
    },
    VeryWellPoisedV {
        bracket: BracketKind,
        delta: Scalar,
        a0: Scalar,
        a: Vec<Scalar>,
        z: Scalar,
    },
}

impl SeriesSpec {
    pub fn eval(&self) -> Result<Scalar> {
        match self {
            SeriesSpec::GeneralizedF { upper, lower, z } => eval_f(upper, lower, z),
            SeriesSpec::VeryWellPoisedV {
                bracket,
                delta,
                a0,
                a,
                z,
            } => eval_v(bracket, delta, a0, a, z),
        }
    }
}

/// Terminating generalized series
/// sum_k (α0)_k...(αr)_k / ((1)_k (β1)_k...(βr)_k) z^k.
pub fn eval_f(upper: &[Scalar], lower: &[Scalar], z: &Scalar) -> Result<Scalar> {
    if upper.len() != lower.len() + 1 {
        return Err(Error::BadSeriesShape {
            upper: upper.len(),
            lower: lower.len(),
        });
    }
    let nt = termination_from_upper(upper).ok_or(Error::NonTerminating)?;
    // a lower parameter -s with 0 <= s < nt makes the factor (β + s) vanish
    // inside the sum
    for b in lower {
        if let Some(v) = as_int(&-b) {
            if v >= 0 && (v as usize) < nt {
                return Err(Error::PoleBeforeTermination {
                    k: v as usize + 1,
                    factor: format!("lower parameter {b}"),
                });
            }
        }
    }
    let kind = z.kind();
    let mut acc = kind.one();
    let mut term = kind.one();
    for k in 0..nt {
        let kk = kind.from_i64(k as i64);
        let mut num = z.clone();
        for a in upper {
            num = &num * &(a + &kk);
        }
        let mut den = kind.from_i64(k as i64 + 1);
        for b in lower {
            den = &den * &(b + &kk);
        }
        term = &(&term * &num) / &den;
        acc = &acc + &term;
    }
    Ok(acc)
}

/// Single very-well-poised term (z = 1 weight):
/// ([a0+2kδ]/[a0]) · [a0]_k ∏[a_i]_k / ([δ]_k ∏[δ+a0−a_i]_k).
pub fn vwp_term(
    kind: &BracketKind,
    delta: &Scalar,
    k: usize,
    a0: &Scalar,
    a: &[Scalar],
) -> Result<Scalar> {
    let skind = a0.kind();
    let b_a0 = bracket(kind, a0)?;
    if near_zero(&b_a0) {
        return Err(Error::A0Zero);
    }
    let shift = &skind.from_i64(2 * k as i64) * delta;
    let kernel = &bracket(kind, &(a0 + &shift))? / &b_a0;
    let mut num = &kernel * &delta_shifted_factorial(kind, a0, delta, k)?;
    for ai in a {
        num = &num * &delta_shifted_factorial(kind, ai, delta, k)?;
    }
    let d0 = delta_shifted_factorial(kind, delta, delta, k)?;
    if near_zero(&d0) {
        return Err(Error::PoleBeforeTermination {
            k,
            factor: "[delta]_k".into(),
        });
    }
    let mut den = d0;
    for (i, ai) in a.iter().enumerate() {
        let arg = &(delta + a0) - ai;
        let di = delta_shifted_factorial(kind, &arg, delta, k)?;
        if near_zero(&di) {
            return Err(Error::PoleBeforeTermination {
                k,
                factor: format!("[delta+a0-a{}]_k", i + 1),
            });
        }
        den = &den * &di;
    }
    Ok(&num / &den)
}

/// Index n >= 0 with a_i = -n*delta, if any — V-series termination scan.
fn v_termination(delta: &Scalar, a: &[Scalar]) -> Result<Option<usize>> {
    if delta.is_zero() {
        return Err(Error::ZeroDelta);
    }
    Ok(a.iter().filter_map(|ai| nonneg_int(&(&-ai / delta))).min())
}

/// Terminating very-well-poised series sum_k vwp_term(k) z^k.
pub fn eval_v(
    kind: &BracketKind,
    delta: &Scalar,
    a0: &Scalar,
    a: &[Scalar],
    z: &Scalar,
) -> Result<Scalar> {
    let nt = v_termination(delta, a)?.ok_or(Error::NonTerminating)?;
    let skind = z.kind();
    let mut acc = match (kind.prec(), skind) {
        (Some(p), ScalarKind::Rational) => ScalarKind::Complex(p).zero(),
        _ => skind.zero(),
    };
    let mut zpow = acc.kind().one();
    for k in 0..=nt {
        let t = vwp_term(kind, delta, k, a0, a)?;
        acc = &acc + &(&t * &zpow);
        if k < nt {
            zpow = &zpow * z;
        }
    }
    Ok(acc)
}

/// Saalschütz summation check:
/// 3F2[-N, d+u+N-1-i, c+u+j; c+u-i, d+u+j; 1]
///   = (d-c)_N (-i-j)_N / ((c+u-i)_N (d+u+j)_N).
pub fn saalschutz_check(
    n: usize,
    c: &Scalar,
    d: &Scalar,
    u: &Scalar,
    i: &Scalar,
    j: &Scalar,
    policy: &EqPolicy,
) -> Result<IdentityReport> {
    let kind = c.kind();
    let nn = kind.from_i64(n as i64);
    let one = kind.one();
    let upper = vec![
        -&nn,
        &(&(&(d + u) + &nn) - &one) - i,
        &(c + u) + j,
    ];
    let lower = vec![&(c + u) - i, &(d + u) + j];
    let lhs = eval_f(&upper, &lower, &kind.one())?;
    let den = &shifted_factorial(&lower[0], n) * &shifted_factorial(&lower[1], n);
    if near_zero(&den) {
        return Err(Error::PoleBeforeTermination {
            k: n,
            factor: "closed-form denominator".into(),
        });
    }
    let num = &shifted_factorial(&(d - c), n) * &shifted_factorial(&-&(i + j), n);
    IdentityReport::compare("saalschutz", lhs, &num / &den, policy)
}

fn ft_rhs(
    kind: &BracketKind,
    delta: &Scalar,
    a0: &Scalar,
    a1: &Scalar,
    a2: &Scalar,
    a3: &Scalar,
    n: usize,
) -> Result<Scalar> {
    let da0 = delta + a0;
    let nums = [
        da0.clone(),
        &(&da0 - a1) - a2,
        &(&da0 - a1) - a3,
        &(&da0 - a2) - a3,
    ];
    let dens = [
        &da0 - a1,
        &da0 - a2,
        &da0 - a3,
        &(&(&da0 - a1) - a2) - a3,
    ];
    let mut acc = match kind.prec() {
        Some(p) if a0.kind() == ScalarKind::Rational => ScalarKind::Complex(p).one(),
        _ => a0.kind().one(),
    };
    for x in &nums {
        acc = &acc * &delta_shifted_factorial(kind, x, delta, n)?;
    }
    for x in &dens {
        let d = delta_shifted_factorial(kind, x, delta, n)?;
        if near_zero(&d) {
            return Err(Error::PoleBeforeTermination {
                k: n,
                factor: "closed-form denominator".into(),
            });
        }
        acc = &acc / &d;
    }
    Ok(acc)
}

/// Frenkel–Turaev summation check with a4 solved from the balancing
/// condition and a5 = -N*delta.
pub fn frenkel_turaev_check(
    kind: &BracketKind,
    delta: &Scalar,
    a0: &Scalar,
    a1: &Scalar,
    a2: &Scalar,
    a3: &Scalar,
    n: usize,
    policy: &EqPolicy,
) -> Result<IdentityReport> {
    let skind = a0.kind();
    let a5 = -&(&skind.from_i64(n as i64) * delta);
    let two_a0 = &skind.from_i64(2) * a0;
    let a4 = &(&(&(&(&two_a0 + delta) - a1) - a2) - a3) - &a5;
    let a = vec![a1.clone(), a2.clone(), a3.clone(), a4, a5];
    let z = match kind.prec() {
        Some(p) if skind == ScalarKind::Rational => ScalarKind::Complex(p).one(),
        _ => skind.one(),
    };
    let lhs = eval_v(kind, delta, a0, &a, &z)?;
    let rhs = ft_rhs(kind, delta, a0, a1, a2, a3, n)?;
    IdentityReport::compare("frenkel-turaev", lhs, rhs, policy)
}

/// Frenkel–Turaev check with all five upper parameters supplied; the
/// balancing condition a1+...+a5 = 2a0 + delta is verified first.
pub fn frenkel_turaev_check_explicit(
    kind: &BracketKind,
    delta: &Scalar,
    a0: &Scalar,
    a: &[Scalar; 5],
    policy: &EqPolicy,
) -> Result<IdentityReport> {
    let skind = a0.kind();
    let mut sum = skind.zero();
    for ai in a.iter() {
        sum = &sum + ai;
    }
    let target = &(&skind.from_i64(2) * a0) + delta;
    let balanced = match policy {
        EqPolicy::Exact => sum == target,
        _ => crate::scalar::scalar_eq(&sum, &target, policy)?,
    };
    if !balanced {
        return Err(Error::BalancingViolated);
    }
    let n = nonneg_int(&(&-&a[4] / delta)).ok_or(Error::NonTerminating)?;
    let z = match kind.prec() {
        Some(p) if skind == ScalarKind::Rational => ScalarKind::Complex(p).one(),
        _ => skind.one(),
    };
    let lhs = eval_v(kind, delta, a0, a, &z)?;
    let rhs = ft_rhs(kind, delta, a0, &a[0], &a[1], &a[2], n)?;
    IdentityReport::compare("frenkel-turaev", lhs, rhs, policy)
}

/// Riemann relation residual
/// [x±α][β±γ] + [x±β][γ±α] + [x±γ][α±β], where [p±q] abbreviates
/// [p+q][p−q]. Vanishes identically for all three bracket classes.
pub fn riemann_residual(
    kind: &BracketKind,
    x: &Scalar,
    alpha: &Scalar,
    beta: &Scalar,
    gamma: &Scalar,
) -> Result<Scalar> {
    let pm = |p: &Scalar, q: &Scalar| -> Result<Scalar> {
        Ok(&bracket(kind, &(p + q))? * &bracket(kind, &(p - q))?)
    };
    let t1 = &pm(x, alpha)? * &pm(beta, gamma)?;
    let t2 = &pm(x, beta)? * &pm(gamma, alpha)?;
    let t3 = &pm(x, gamma)? * &pm(alpha, beta)?;
    Ok(&(&t1 + &t2) + &t3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Draw;
    use crate::scalar::{rational, scalar_eq};

    fn q(n: i64, d: i64) -> Scalar {
        rational(n, d).unwrap()
    }

    fn cx(prec: u32, re: f64, im: f64) -> Scalar {
        Scalar::Complex(CFloat::from_f64(prec, re, im))
    }

    fn rel(rt: f64, fl: f64) -> EqPolicy {
        EqPolicy::relative(rt, fl)
    }

    fn elliptic_kind(prec: u32) -> BracketKind {
        BracketKind::elliptic(cx(prec, 1.0, 0.0), cx(prec, 0.0, 2.0), cx(prec, 0.0, 0.0), cx(prec, 0.0, 0.0)).unwrap()
    }

    fn trig_kind(prec: u32) -> BracketKind {
        BracketKind::trigonometric(cx(prec, 3.0, 1.0), cx(prec, 0.0, 0.0), cx(prec, 0.0, 0.0)).unwrap()
    }

    #[test]
    fn bracket_basics() {
        let rk = BracketKind::rational(ScalarKind::Rational);
        assert_eq!(bracket(&rk, &q(3, 1)).unwrap(), q(3, 1));
        assert!(bracket(&rk, &q(0, 1)).unwrap().is_zero());
        let tk = trig_kind(128);
        assert!(near_zero(&bracket(&tk, &cx(128, 0.0, 0.0)).unwrap()));
        let ek = elliptic_kind(128);
        assert!(near_zero(&bracket(&ek, &cx(128, 0.0, 0.0)).unwrap()));
    }

    #[test]
    fn bracket_oddness() {
        let prec = 256;
        let pol = rel(1e-60, 1e-70);
        let c0 = cx(prec, 0.3, -0.1);
        let kinds = [
            BracketKind::trigonometric(cx(prec, 3.0, 1.0), c0.clone(), cx(prec, 0.0, 0.0)).unwrap(),
            BracketKind::elliptic(cx(prec, 1.0, 0.0), cx(prec, 0.0, 2.0), c0, cx(prec, 0.0, 0.0)).unwrap(),
        ];
        let x = cx(prec, 0.41, 0.17);
        for k in &kinds {
            let plus = bracket(k, &x).unwrap();
            let minus = bracket(k, &-&x).unwrap();
            assert!(scalar_eq(&plus, &-&minus, &pol).unwrap());
        }
    }

    #[test]
    fn shifted_factorial_basics() {
        let a = q(7, 2);
        assert_eq!(shifted_factorial(&a, 0), q(1, 1));
        assert_eq!(shifted_factorial(&q(1, 1), 5), q(120, 1));
        assert!(shifted_factorial(&q(-3, 1), 5).is_zero());
    }

    #[test]
    fn delta_factorial_recursion() {
        let prec = 256;
        let pol = rel(1e-55, 1e-70);
        let ek = elliptic_kind(prec);
        let x = cx(prec, 0.37, 0.12);
        let delta = cx(prec, 0.21, -0.05);
        for k in 0..5usize {
            let lhs = delta_shifted_factorial(&ek, &x, &delta, k + 1).unwrap();
            let step = &x + &(&ScalarKind::Complex(prec).from_i64(k as i64) * &delta);
            let rhs = &delta_shifted_factorial(&ek, &x, &delta, k).unwrap() * &bracket(&ek, &step).unwrap();
            assert!(scalar_eq(&lhs, &rhs, &pol).unwrap(), "k={k}");
        }
        assert_eq!(
            delta_shifted_factorial(&BracketKind::rational(ScalarKind::Rational), &q(5, 3), &q(1, 1), 4).unwrap(),
            shifted_factorial(&q(5, 3), 4)
        );
    }

    #[test]
    fn eval_f_small_closed_forms() {
        // 2F1(-1, b; c; z) = 1 - b z / c
        let (b, c, z) = (q(5, 3), q(7, 4), q(2, 5));
        let got = eval_f(&[q(-1, 1), b.clone()], &[c.clone()], &z).unwrap();
        let want = &q(1, 1) - &(&(&b * &z) / &c);
        assert_eq!(got, want);
        // 1F0(-n; ; 1) = 0 for n >= 1
        for n in 1..5 {
            assert!(eval_f(&[q(-n, 1)], &[], &q(1, 1)).unwrap().is_zero());
        }
        assert!(matches!(
            eval_f(&[q(1, 2)], &[], &q(1, 1)),
            Err(Error::NonTerminating)
        ));
        assert!(matches!(
            eval_f(&[q(-4, 1), q(1, 1)], &[q(-2, 1)], &q(1, 1)),
            Err(Error::PoleBeforeTermination { .. })
        ));
    }

    #[test]
    fn saalschutz_exact() {
        let mut d = Draw::new(77);
        for n in [0usize, 1, 3, 6] {
            let (c, dd, u, i, j) = (
                d.rational(),
                d.rational(),
                d.nonzero_rational(),
                d.rational(),
                d.rational(),
            );
            match saalschutz_check(n, &c, &dd, &u, &i, &j, &EqPolicy::Exact) {
                Ok(rep) => assert!(rep.holds, "N={n}: {} vs {}", rep.lhs, rep.rhs),
                // a random draw can land on a genuine pole; that is a
                // correct refusal, not a failure
                Err(Error::PoleBeforeTermination { .. }) => {}
                Err(e) => panic!("unexpected error {e:?}"),
            }
        }
    }

    #[test]
    fn eval_v_trivial_and_rational_reduction() {
        let prec = 256;
        let ek = elliptic_kind(prec);
        let delta = cx(prec, 0.31, 0.07);
        let a0 = cx(prec, 0.83, -0.12);
        // n = 0 termination: only the k = 0 term
        let a = vec![cx(prec, 0.4, 0.2), cx(prec, 0.0, 0.0)];
        let one = ScalarKind::Complex(prec).one();
        let v = eval_v(&ek, &delta, &a0, &a, &one).unwrap();
        assert!(scalar_eq(&v, &one, &rel(1e-60, 1e-70)).unwrap());

        // rational bracket, delta = 1: V = (r+2)F(r+1) with
        // upper {a0, a0/2+1, a_i}, lower {a0/2, 1+a0-a_i}
        let rk = BracketKind::rational(ScalarKind::Rational);
        let one_q = q(1, 1);
        let a0q = q(5, 3);
        let aq = vec![q(1, 2), q(7, 5), q(-4, 1)];
        let z = q(2, 7);
        let v = eval_v(&rk, &one_q, &a0q, &aq, &z).unwrap();
        let half_a0 = &a0q / &q(2, 1);
        let mut upper = vec![a0q.clone(), &half_a0 + &one_q];
        let mut lower = vec![half_a0];
        for ai in &aq {
            upper.push(ai.clone());
            lower.push(&(&one_q + &a0q) - ai);
        }
        assert_eq!(v, eval_f(&upper, &lower, &z).unwrap());
    }

    /// q-series oracle: very-well-poised (r+1)W(r) with multiplicative
    /// parameters, used to cross-check the trigonometric bracket.
    fn w_series(t0: &CFloat, t: &[CFloat], qn: &CFloat, s: &CFloat, nt: usize) -> CFloat {
        let p = t0.prec();
        let one = CFloat::from_i64(p, 1);
        let mut acc = CFloat::zero(p);
        for k in 0..=nt {
            let qk = theta_pow(qn, k as i64);
            let q2k = qk.mul(&qk);
            let mut term = one
                .sub(&t0.mul(&q2k))
                .div(&one.sub(t0))
                .mul(&qpoch(t0, qn, k));
            for ti in t {
                term = term.mul(&qpoch(ti, qn, k));
            }
            term = term.div(&qpoch(qn, qn, k));
            for ti in t {
                term = term.div(&qpoch(&t0.mul(qn).div(ti), qn, k));
            }
            term = term.mul(&theta_pow(s, k as i64));
            acc = acc.add(&term);
        }
        acc
    }

    fn qpoch(a: &CFloat, qn: &CFloat, k: usize) -> CFloat {
        let p = a.prec();
        let one = CFloat::from_i64(p, 1);
        let mut acc = one.clone();
        let mut apow = a.clone();
        for _ in 0..k {
            acc = acc.mul(&one.sub(&apow));
            apow = apow.mul(qn);
        }
        acc
    }

    fn theta_pow(z: &CFloat, e: i64) -> CFloat {
        let one = CFloat::from_i64(z.prec(), 1);
        let mut acc = one.clone();
        let base = if e >= 0 { z.clone() } else { one.div(z) };
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    #[test]
    fn trig_v_matches_q_series() {
        // [x] = sin(pi x / omega) is proportional to e^{cx/2} - e^{-cx/2}
        // with c = 2 pi i / omega; the constant cancels in every V term, so
        // the multiplicative q-series with q = e^{c delta}, t_i = e^{c a_i}
        // and argument s = (q t0)^{(r-1)/2} z / (t1...tr) must agree (r odd).
        let prec = 256;
        let omega = cx(prec, 3.0, 1.0);
        let tk = BracketKind::trigonometric(omega.clone(), cx(prec, 0.0, 0.0), cx(prec, 0.0, 0.0)).unwrap();
        let delta = cx(prec, 0.23, 0.11);
        let a0 = cx(prec, 0.91, -0.37);
        let nt = 3i64;
        let a5 = &-&ScalarKind::Complex(prec).from_i64(nt) * &delta;
        let a = vec![cx(prec, 0.41, 0.13), cx(prec, -0.29, 0.52), a5];
        let z = cx(prec, 0.67, -0.21);
        let v = eval_v(&tk, &delta, &a0, &a, &z).unwrap();

        let p = prec;
        let pi = CFloat::new(CFloat::pi(p), Float::with_val(p, 0));
        let two_i = CFloat::from_i64(p, 2).mul_i();
        let c = two_i.mul(&pi).div(&omega.to_cfloat(p));
        let ex = |s: &Scalar| c.mul(&s.to_cfloat(p)).exp();
        let qn = ex(&delta);
        let t0 = ex(&a0);
        let t: Vec<CFloat> = a.iter().map(|ai| ex(ai)).collect();
        // r = 3: (q t0)^{(r-1)/2} = q t0
        let mut s = qn.mul(&t0).mul(&z.to_cfloat(p));
        for ti in &t {
            s = s.div(ti);
        }
        let w = w_series(&t0, &t, &qn, &s, nt as usize);
        assert!(
            scalar_eq(&v, &Scalar::Complex(w.clone()), &rel(1e-20, 1e-40)).unwrap(),
            "{v} vs {w:?}"
        );
    }

    #[test]
    fn frenkel_turaev_holds() {
        // rational bracket, exact
        let rk = BracketKind::rational(ScalarKind::Rational);
        let rep = frenkel_turaev_check(&rk, &q(1, 1), &q(11, 7), &q(1, 3), &q(2, 5), &q(-1, 4), 3, &EqPolicy::Exact).unwrap();
        assert!(rep.holds, "{} vs {}", rep.lhs, rep.rhs);
        // elliptic bracket, toleranced
        let prec = 256;
        let ek = elliptic_kind(prec);
        let rep = frenkel_turaev_check(
            &ek,
            &cx(prec, 0.29, 0.04),
            &cx(prec, 0.73, -0.11),
            &cx(prec, 0.21, 0.05),
            &cx(prec, -0.17, 0.31),
            &cx(prec, 0.43, -0.09),
            3,
            &rel(1e-20, 1e-40),
        )
        .unwrap();
        assert!(rep.holds, "{} vs {}", rep.lhs, rep.rhs);
    }

    #[test]
    fn frenkel_turaev_explicit_balancing() {
        let rk = BracketKind::rational(ScalarKind::Rational);
        let delta = q(1, 1);
        let a0 = q(11, 7);
        let (a1, a2, a3) = (q(1, 3), q(2, 5), q(-1, 4));
        let a5 = q(-3, 1);
        let a4 = &(&(&(&(&(&q(2, 1) * &a0) + &delta) - &a1) - &a2) - &a3) - &a5;
        let rep = frenkel_turaev_check_explicit(
            &rk,
            &delta,
            &a0,
            &[a1.clone(), a2.clone(), a3.clone(), a4.clone(), a5.clone()],
            &EqPolicy::Exact,
        )
        .unwrap();
        assert!(rep.holds);
        let bad = frenkel_turaev_check_explicit(
            &rk,
            &delta,
            &a0,
            &[a1, a2, a3, &a4 + &q(1, 1), a5],
            &EqPolicy::Exact,
        );
        assert!(matches!(bad, Err(Error::BalancingViolated)));
    }

    #[test]
    fn riemann_relation_vanishes() {
        let prec = 256;
        let mut d = Draw::new(5150);
        let kinds = [trig_kind(prec), elliptic_kind(prec)];
        for kind in &kinds {
            for _ in 0..20 {
                let pt = |d: &mut Draw| {
                    let re = d.int_range(-40, 40) as f64 / 100.0;
                    let im = d.int_range(-40, 40) as f64 / 100.0;
                    cx(prec, re, im)
                };
                let (x, a, b, g) = (pt(&mut d), pt(&mut d), pt(&mut d), pt(&mut d));
                let res = riemann_residual(kind, &x, &a, &b, &g).unwrap();
                // scale: largest single product among the three terms
                let t1 = (&(&bracket(kind, &(&x + &a)).unwrap() * &bracket(kind, &(&x - &a)).unwrap())
                    * &(&bracket(kind, &(&b + &g)).unwrap() * &bracket(kind, &(&b - &g)).unwrap()))
                    .abs_float();
                let mut bound = Float::with_val(prec, &t1 + 1.0f64);
                bound *= Float::with_val(prec, 1e-60f64);
                assert!(res.abs_float() < bound, "residual {res}");
            }
        }
        // rational kind vanishes exactly
        let rk = BracketKind::rational(ScalarKind::Rational);
        let res = riemann_residual(&rk, &q(3, 2), &q(1, 3), &q(-2, 5), &q(7, 4)).unwrap();
        assert!(res.is_zero());
    }
}
