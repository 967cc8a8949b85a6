//! Check the determinant condensation identities on a random exact matrix.
//!
//! Run with: cargo run --example condensation_identities

use pade_hyperlab::condensation::{
    check_fixed_core, check_moving_core, check_moving_core_renormalized, jacobi_check,
};
use pade_hyperlab::linalg::Matrix;
use pade_hyperlab::rng::Draw;
use pade_hyperlab::{EqPolicy, Result};

fn main() -> Result<()> {
    let mut d = Draw::new(7);
    let n = 5;
    let x = Matrix::from_fn(n, n, |_, _| d.rational());

    for r in 1..=n - 2 {
        for rep in [
            check_fixed_core(&x, r, &EqPolicy::Exact)?,
            check_moving_core(&x, r, &EqPolicy::Exact)?,
            check_moving_core_renormalized(&x, r, &EqPolicy::Exact)?,
        ] {
            println!("{:<28} split r = {r}: holds = {}", rep.name, rep.holds);
        }
    }
    let rep = jacobi_check(&x, &EqPolicy::Exact)?;
    println!("{:<28} holds = {}", rep.name, rep.holds);
    Ok(())
}
