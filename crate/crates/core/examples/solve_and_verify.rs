//! Solve a small rational interpolation problem by brute force and verify it.
//!
//! Run with: cargo run --example solve_and_verify

use pade_hyperlab::pade::{
    build_rational_hg_problem, solve_bruteforce, verify_solution, WeightSpec,
};
use pade_hyperlab::{rational, EqPolicy, Result};

fn main() -> Result<()> {
    // Parameters of the node lattice u_k = u + k and the basis.
    let a = rational(1, 2)?;
    let b = rational(1, 3)?;
    let c = rational(2, 5)?;
    let d = rational(3, 7)?;
    let u = rational(1, 11)?;

    // Degrees m = 2, n = 1, so N + 1 = 4 nodes with explicit weights
    // (lambda_k : mu_k) prescribing P(u_k)/Q(u_k) = lambda_k/mu_k.
    let weights = WeightSpec::Explicit(vec![
        (rational(1, 1)?, rational(2, 1)?),
        (rational(3, 1)?, rational(1, 1)?),
        (rational(-1, 1)?, rational(4, 1)?),
        (rational(5, 1)?, rational(3, 1)?),
    ]);
    let prob = build_rational_hg_problem(&a, &b, &c, &d, &u, 2, 1, &weights)?;

    let sol = solve_bruteforce(&prob)?;
    println!("p coefficients: {:?}", sol.p.iter().map(|s| s.to_string()).collect::<Vec<_>>());
    println!("q coefficients: {:?}", sol.q.iter().map(|s| s.to_string()).collect::<Vec<_>>());

    let report = verify_solution(&prob, &sol, &EqPolicy::Exact)?;
    println!("verification pass: {}", report.pass);
    println!("max residual: {}", report.max_residual);
    Ok(())
}
