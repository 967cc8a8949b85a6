//! Jacobi theta functions and the Weierstrass sigma function.
//!
//! Sigma is evaluated through the first theta function:
//!
//! `σ(z) = (2ω1/π) · exp(η1 z²/(2ω1)) · θ1(πz/(2ω1), q) / θ1'(0, q)`
//!
//! with nome `q = exp(iπ ω2/ω1)` and
//! `η1 = -(π²/(12 ω1)) · θ1'''(0)/θ1'(0)`. The theta series is truncated
//! once a term falls below `2^(-prec-8)` of the running partial sum.

use crate::error::{Error, Result};
use crate::scalar::CFloat;
use rug::Float;

/// z^e by binary exponentiation.
fn cpow(z: &CFloat, e: u64) -> CFloat {
    let mut acc = CFloat::from_i64(z.prec(), 1);
    let mut base = z.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc.mul(&base);
        }
        base = base.mul(&base);
        e >>= 1;
    }
    acc
}

fn small(prec: u32, term: &Float, partial: &Float) -> bool {
    let mut bound = Float::with_val(prec, partial);
    bound >>= (prec + 8) as u32;
    *term < bound
}

/// θ1(v, q) together with θ1'(0, q) and θ1'''(0, q), sharing one nome power
/// table. `q4` must be the *quarter* nome exp(iπτ/4), so q^((n+1/2)²) is the
/// exact integer power q4^((2n+1)²).
struct ThetaSums {
    theta1_v: CFloat,
    theta1p0: CFloat,
    theta1ppp0: CFloat,
}

fn theta_sums(v: &CFloat, q4: &CFloat) -> ThetaSums {
    let prec = v.prec();
    let mut t_v = CFloat::zero(prec);
    let mut t_p = CFloat::zero(prec);
    let mut t_ppp = CFloat::zero(prec);
    for n in 0u64.. {
        let m = 2 * n + 1;
        let qpow = cpow(q4, m * m);
        let sgn = if n % 2 == 0 { 1 } else { -1 };
        let coeff = qpow.scale(&Float::with_val(prec, 2 * sgn));
        let arg = v.scale(&Float::with_val(prec, m));
        let term_v = coeff.mul(&arg.sin());
        let term_p = coeff.scale(&Float::with_val(prec, m));
        let term_ppp = term_p.scale(&Float::with_val(prec, m * m)).neg();
        t_v = t_v.add(&term_v);
        t_p = t_p.add(&term_p);
        t_ppp = t_ppp.add(&term_ppp);
        if n >= 2 && small(prec, &term_p.abs(), &t_p.abs()) {
            break;
        }
    }
    ThetaSums {
        theta1_v: t_v,
        theta1p0: t_p,
        theta1ppp0: t_ppp,
    }
}

/// Weierstrass sigma for the lattice spanned by 2ω1 and 2ω2.
///
/// Requires Im(ω2/ω1) > 0; fails with [`Error::InvalidLattice`] otherwise.
pub fn sigma(z: &CFloat, omega1: &CFloat, omega2: &CFloat) -> Result<CFloat> {
    let prec = z.prec();
    let tau = omega2.div(omega1);
    if !(tau.im > 0) {
        return Err(Error::InvalidLattice);
    }
    let pi = CFloat::new(CFloat::pi(prec), Float::with_val(prec, 0));
    // quarter nome exp(iπτ/4)
    let quarter = Float::with_val(prec, 0.25f64);
    let q4 = pi.mul(&tau).mul_i().scale(&quarter).exp();
    let v = pi.mul(z).div(omega1).scale(&Float::with_val(prec, 0.5f64));
    let sums = theta_sums(&v, &q4);

    // η1 = -(π²/(12 ω1)) θ1'''(0)/θ1'(0)
    let twelve_w1 = omega1.scale(&Float::with_val(prec, 12));
    let eta1 = pi
        .mul(&pi)
        .div(&twelve_w1)
        .mul(&sums.theta1ppp0)
        .div(&sums.theta1p0)
        .neg();

    // (2ω1/π) exp(η1 z²/(2ω1)) θ1(v)/θ1'(0)
    let two_w1 = omega1.scale(&Float::with_val(prec, 2));
    let gauss = eta1.mul(z).mul(z).div(&two_w1).exp();
    Ok(two_w1
        .div(&pi)
        .mul(&gauss)
        .mul(&sums.theta1_v)
        .div(&sums.theta1p0))
}
