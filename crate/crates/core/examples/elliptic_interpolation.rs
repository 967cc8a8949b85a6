//! Solve an interpolation problem under the elliptic bracket along three
//! routes (brute force and both closed forms) and compare the answers at
//! 256-bit precision.
//!
//! Run with: cargo run --example elliptic_interpolation

use pade_hyperlab::pade::{
    build_vwp_problem, solutions_proj_eq, solve_bruteforce, solve_vwp_ft,
    solve_vwp_krattenthaler, WeightSpec,
};
use pade_hyperlab::series::BracketKind;
use pade_hyperlab::{
    CFloat, EqPolicy, Result, Scalar, ScalarKind, DEFAULT_PRECISION_BITS,
};

fn main() -> Result<()> {
    let p = DEFAULT_PRECISION_BITS;
    let k = ScalarKind::Complex(p);
    let cx = |re: f64, im: f64| Scalar::Complex(CFloat::from_f64(p, re, im));

    // Elliptic bracket with periods (1, 2i). Parameters are kept small so the
    // exact cancellations in the node determinants stay representable.
    let bk = BracketKind::elliptic(k.one(), cx(0.0, 2.0), k.zero(), k.zero())?;
    let delta = &k.one() / &k.from_i64(5);
    let weights = WeightSpec::VwpE {
        e: vec![cx(0.21, -0.13)],
        z: cx(0.8, 0.3),
        w: cx(-0.4, 0.7),
    };
    let prob = build_vwp_problem(
        &bk,
        &cx(0.31, 0.12),
        &cx(-0.22, 0.41),
        &cx(0.17, -0.33),
        &cx(0.44, 0.08),
        &cx(0.05, 0.25),
        &delta,
        1,
        1,
        &weights,
    )?;
    prob.genericity_check()?;

    let brute = solve_bruteforce(&prob)?;
    let kratt = solve_vwp_krattenthaler(&prob)?;
    let ft = solve_vwp_ft(&prob)?;

    let policy = EqPolicy::relative(1e-12, 1e-25);
    println!(
        "determinant-evaluation route agrees with brute force: {}",
        solutions_proj_eq(&brute, &kratt, &policy)?
    );
    println!(
        "summation route agrees with brute force: {}",
        solutions_proj_eq(&brute, &ft, &policy)?
    );
    Ok(())
}
