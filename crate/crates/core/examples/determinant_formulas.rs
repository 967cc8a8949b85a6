//! Evaluate the closed-form determinant identities: the bilinear-entry
//! determinant, its bracket extension, and the abstract factorized form with
//! its bilinear consequence.
//!
//! Run with: cargo run --example determinant_formulas

use pade_hyperlab::detformulas::{
    abstract_factorized_det, krattenthaler_lhs, krattenthaler_rhs, tau_bilinear_check,
    warnaar_check, FactorizedDetInput,
};
use pade_hyperlab::rng::Draw;
use pade_hyperlab::series::BracketKind;
use pade_hyperlab::{EqPolicy, Result, Scalar, ScalarKind};

fn main() -> Result<()> {
    let mut d = Draw::new(9);
    let m = 3;
    let kind = ScalarKind::Rational;

    // Bilinear-entry determinant with linear factors, exact.
    let x: Vec<Scalar> = (0..=m)
        .map(|k| &d.rational() + &kind.from_i64(100 * k as i64))
        .collect();
    let al: Vec<Scalar> = (0..m).map(|_| d.nonzero_rational()).collect();
    let be: Vec<Scalar> = (0..m).map(|_| d.rational()).collect();
    let ga: Vec<Scalar> = (0..m).map(|_| d.rational()).collect();
    let de: Vec<Scalar> = (0..m).map(|_| d.nonzero_rational()).collect();
    let lhs = krattenthaler_lhs(&x, &al, &be, &ga, &de)?;
    let rhs = krattenthaler_rhs(&x, &al, &be, &ga, &de)?;
    println!("bilinear determinant matches closed form: {}", (&lhs - &rhs).is_zero());

    // Bracket extension over the rational bracket, exact.
    let bk = BracketKind::rational(kind);
    let xs: Vec<Scalar> = (0..=m).map(|_| d.rational()).collect();
    let a: Vec<Scalar> = (0..m).map(|_| d.rational()).collect();
    let b: Vec<Scalar> = (0..m).map(|_| d.rational()).collect();
    let rep = warnaar_check(&bk, &xs, &a, &b, &EqPolicy::Exact)?;
    println!("bracket determinant extension holds: {}", rep.holds);

    // Abstract factorized determinant plus its bilinear consequence.
    let npts = m + 2;
    let x2: Vec<Scalar> = (0..npts)
        .map(|k| &d.rational() + &kind.from_i64(100 * k as i64))
        .collect();
    let al2: Vec<Scalar> = (0..npts - 1).map(|_| d.nonzero_rational()).collect();
    let be2: Vec<Scalar> = (0..npts - 1).map(|_| d.rational()).collect();
    let ga2: Vec<Scalar> = (0..npts - 1).map(|_| d.rational()).collect();
    let de2: Vec<Scalar> = (0..npts - 1).map(|_| d.nonzero_rational()).collect();
    let input = FactorizedDetInput::from_linear(&x2, &al2, &be2, &ga2, &de2, &EqPolicy::Exact)?;
    let rep = abstract_factorized_det(&input, m, &EqPolicy::Exact)?;
    println!("abstract factorized determinant holds: {}", rep.holds);
    let rep = tau_bilinear_check(&input, m, &EqPolicy::Exact)?;
    println!("bilinear consequence holds: {}", rep.holds);
    Ok(())
}
