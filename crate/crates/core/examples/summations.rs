//! Evaluate the terminating summation theorems and the three-term bracket
//! relation underpinning the closed-form solution routes.
//!
//! Run with: cargo run --example summations

use pade_hyperlab::series::{
    frenkel_turaev_check, riemann_residual, saalschutz_check, BracketKind,
};
use pade_hyperlab::{rational, EqPolicy, Result, Scalar, ScalarKind, CFloat, DEFAULT_PRECISION_BITS};

fn main() -> Result<()> {
    // Balanced terminating summation, exact over rationals.
    let rep = saalschutz_check(
        4,
        &rational(1, 2)?,
        &rational(2, 3)?,
        &rational(1, 5)?,
        &rational(3, 7)?,
        &rational(5, 11)?,
        &EqPolicy::Exact,
    )?;
    println!("balanced summation (order 4) holds: {}", rep.holds);

    // Very-well-poised summation, exact over the rational bracket.
    let rk = BracketKind::rational(ScalarKind::Rational);
    let one = ScalarKind::Rational.one();
    let rep = frenkel_turaev_check(
        &rk,
        &one,
        &rational(7, 2)?,
        &rational(1, 3)?,
        &rational(2, 5)?,
        &rational(3, 7)?,
        3,
        &EqPolicy::Exact,
    )?;
    println!("very-well-poised summation (order 3) holds: {}", rep.holds);

    // Three-term relation under the elliptic bracket at 256-bit precision.
    let p = DEFAULT_PRECISION_BITS;
    let k = ScalarKind::Complex(p);
    let ek = BracketKind::elliptic(
        k.one(),
        Scalar::Complex(CFloat::from_f64(p, 0.0, 2.0)),
        k.zero(),
        k.zero(),
    )?;
    let cx = |re: f64, im: f64| Scalar::Complex(CFloat::from_f64(p, re, im));
    let res = riemann_residual(&ek, &cx(0.3, 0.1), &cx(0.2, -0.4), &cx(-0.1, 0.5), &cx(0.4, 0.2))?;
    println!("elliptic three-term relation residual: {:.3e}", res.abs_float().to_f64());
    Ok(())
}
