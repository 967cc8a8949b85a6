//! Solve one problem along every applicable route and cross-check that the
//! answers agree up to a common scalar factor.
//!
//! Run with: cargo run --example route_crosscheck

use pade_hyperlab::pade::{
    applicable_routes, build_rational_hg_problem, solutions_proj_eq, solve, WeightSpec,
};
use pade_hyperlab::{rational, EqPolicy, Result};

fn main() -> Result<()> {
    let a = rational(1, 2)?;
    let b = rational(4, 3)?;
    let c = rational(2, 5)?;
    let d = rational(3, 7)?;
    let u = rational(1, 11)?;
    // A structured weight family keeps every closed-form route applicable.
    let weights = WeightSpec::PlainSt {
        s: vec![rational(5, 4)?],
        t: vec![rational(7, 5)?],
        z: rational(2, 3)?,
        w: rational(3, 5)?,
    };
    let prob = build_rational_hg_problem(&a, &b, &c, &d, &u, 2, 1, &weights)?;

    let routes = applicable_routes(&prob);
    let sols: Vec<_> = routes
        .iter()
        .map(|&r| solve(&prob, r).map(|s| (r, s)))
        .collect::<Result<_>>()?;

    for (ri, si) in &sols {
        for (rj, sj) in &sols {
            let eq = solutions_proj_eq(si, sj, &EqPolicy::Exact)?;
            println!("{:>10} vs {:<10} projectively equal: {eq}", ri.name(), rj.name());
        }
    }
    Ok(())
}
