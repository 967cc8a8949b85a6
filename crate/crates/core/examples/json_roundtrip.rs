//! Serialize a problem and its solution to the JSON schema used by the `pade`
//! CLI, then read them back.
//!
//! Run with: cargo run --example json_roundtrip

use pade_hyperlab::pade::io::{
    problem_from_json, problem_to_json, solution_from_json, solution_to_json,
};
use pade_hyperlab::pade::{
    build_rational_hg_problem, solutions_proj_eq, solve_bruteforce, WeightSpec,
};
use pade_hyperlab::{rational, EqPolicy, Result};

fn main() -> Result<()> {
    let prob = build_rational_hg_problem(
        &rational(1, 2)?,
        &rational(4, 3)?,
        &rational(2, 5)?,
        &rational(3, 7)?,
        &rational(1, 11)?,
        1,
        1,
        &WeightSpec::Explicit(vec![
            (rational(1, 1)?, rational(2, 1)?),
            (rational(3, 1)?, rational(1, 1)?),
            (rational(-1, 1)?, rational(4, 1)?),
        ]),
    )?;
    let sol = solve_bruteforce(&prob)?;

    let pj = problem_to_json(&prob);
    let sj = solution_to_json(&sol);
    println!("problem JSON:\n{}", serde_json::to_string_pretty(&pj).unwrap());
    println!("solution JSON:\n{}", serde_json::to_string_pretty(&sj).unwrap());

    let prob2 = problem_from_json(&pj)?;
    let sol2 = solution_from_json(&sj)?;
    let sol2b = solve_bruteforce(&prob2)?;
    println!(
        "round-tripped solution matches: {}",
        solutions_proj_eq(&sol, &sol2, &EqPolicy::Exact)?
            && solutions_proj_eq(&sol, &sol2b, &EqPolicy::Exact)?
    );
    Ok(())
}
