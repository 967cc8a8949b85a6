//! `pade` — command-line entry point.
//!
//! Subcommands: `solve`, `verify`, `crosscheck`, `bench`, and the
//! `identities` group (condense, saalschutz, frenkel-turaev, riemann,
//! krattenthaler, warnaar, abstract). All output is JSON on stdout (or the
//! `--out` file for `solve`); identical arguments produce identical bytes.
//!
//! Exit codes: 0 all checks pass; 2 validation failure (a check failed or
//! arguments were inconsistent); 3 degenerate input (duplicate points, zero
//! weights, singular genericity minors, ...); 4 I/O or parse errors.

use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use pade_hyperlab::condensation;
use pade_hyperlab::detformulas;
use pade_hyperlab::pade::{self, io as pio, Route};
use pade_hyperlab::rng::Draw;
use pade_hyperlab::series::{self, BracketKind};
use pade_hyperlab::{CFloat, EqPolicy, Error, Scalar, ScalarKind, DEFAULT_PRECISION_BITS};

#[derive(Parser)]
#[command(name = "pade", version, about = "Padé interpolation via determinants, condensation, and hypergeometric series")]
struct Cli {
    /// Scalar backend for generated instances.
    #[arg(long, global = true, value_enum, default_value_t = ScalarChoice::Rational)]
    scalar: ScalarChoice,
    /// Working precision of the complex backend in bits.
    #[arg(long, global = true, default_value_t = DEFAULT_PRECISION_BITS)]
    precision_bits: u32,
    /// Relative tolerance for float comparisons (absolute floor is its square).
    #[arg(long, global = true, default_value_t = 1e-20)]
    rel_tol: f64,
    /// Seed for generated instances.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum ScalarChoice {
    Rational,
    Complex,
}

#[derive(Clone, Copy, ValueEnum)]
enum BracketChoice {
    Rational,
    Trig,
    Elliptic,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve a problem spec by one route and write the solution.
    Solve {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        route: String,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<String>,
    },
    /// Verify a solution against its problem spec.
    Verify {
        #[arg(long)]
        spec: String,
        #[arg(long)]
        solution: String,
    },
    /// Solve by every applicable route and compare all pairs projectively.
    Crosscheck {
        #[arg(long)]
        spec: String,
        /// Route list: "all" or comma-separated route names.
        #[arg(long, default_value = "all")]
        routes: String,
    },
    /// Time the brute-force route against the condensed route.
    Bench {
        #[arg(long, default_value_t = 6)]
        m: usize,
        #[arg(long, default_value_t = 6)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        trials: usize,
    },
    /// Determinant and summation identity checks.
    #[command(subcommand)]
    Identities(IdCmd),
}

#[derive(Subcommand)]
enum IdCmd {
    /// Condensation lemmas and the Jacobi identity on random exact matrices.
    Condense {
        #[arg(long, default_value_t = 5)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        r: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
    /// Saalschütz summation on random exact draws.
    Saalschutz {
        #[arg(long, default_value_t = 20)]
        trials: usize,
    },
    /// Frenkel–Turaev summation for a chosen bracket class.
    FrenkelTuraev {
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = BracketChoice::Rational)]
        bracket: BracketChoice,
    },
    /// Riemann relation residuals for a chosen bracket class.
    Riemann {
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = BracketChoice::Rational)]
        bracket: BracketChoice,
    },
    /// Linear-fraction determinant evaluation on random exact draws.
    Krattenthaler {
        #[arg(long, default_value_t = 4)]
        m: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
    /// Bracket extension of the determinant evaluation.
    Warnaar {
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 5)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = BracketChoice::Trig)]
        bracket: BracketChoice,
    },
    /// Abstract factorized determinant and the bilinear tau identity.
    Abstract {
        #[arg(long, default_value_t = 3)]
        m: usize,
        #[arg(long, default_value_t = 10)]
        trials: usize,
    },
}

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::DuplicatePoints(..)
        | Error::ZeroDelta
        | Error::ZeroWeight { .. }
        | Error::PoleAtNode { .. }
        | Error::DegenerateSolution { .. }
        | Error::SingularCoreMinor { .. }
        | Error::AllZeroVectors => 3,
        _ => 2,
    }
}

fn read_json(path: &str) -> Result<Value, (u8, String)> {
    let text = fs::read_to_string(path).map_err(|e| (4, format!("cannot read {path}: {e}")))?;
    serde_json::from_str(&text).map_err(|e| (4, format!("malformed JSON in {path}: {e}")))
}

fn emit(v: &Value) {
    use std::io::Write;
    let text = serde_json::to_string_pretty(v).expect("serializable");
    // A closed pipe (e.g. downstream `head`) is not an error worth a panic.
    let _ = writeln!(std::io::stdout(), "{text}");
}

fn lib_err(e: Error) -> (u8, String) {
    (exit_for(&e), e.to_string())
}

struct Ctx {
    kind: ScalarKind,
    policy_for: fn(ScalarKind, f64) -> EqPolicy,
    rel_tol: f64,
    seed: u64,
    prec: u32,
}

fn policy_for(kind: ScalarKind, rel_tol: f64) -> EqPolicy {
    match kind {
        ScalarKind::Rational => EqPolicy::Exact,
        ScalarKind::Complex(_) => EqPolicy::relative(rel_tol, rel_tol * rel_tol),
    }
}

impl Ctx {
    fn policy(&self, kind: ScalarKind) -> EqPolicy {
        (self.policy_for)(kind, self.rel_tol)
    }

    fn bracket(&self, choice: BracketChoice) -> Result<(BracketKind, ScalarKind), (u8, String)> {
        let ck = ScalarKind::Complex(self.prec);
        match choice {
            BracketChoice::Rational => Ok((BracketKind::rational(ScalarKind::Rational), ScalarKind::Rational)),
            BracketChoice::Trig => {
                let bk = BracketKind::trigonometric(ck.from_i64(3), ck.zero(), ck.zero())
                    .map_err(lib_err)?;
                Ok((bk, ck))
            }
            BracketChoice::Elliptic => {
                let omega2 = Scalar::Complex(CFloat::from_f64(self.prec, 0.0, 2.0));
                let bk = BracketKind::elliptic(ck.one(), omega2, ck.zero(), ck.zero())
                    .map_err(lib_err)?;
                Ok((bk, ck))
            }
        }
    }
}

fn main() -> ExitCode {
    // Parallelism cap; this binary runs trials sequentially, so any positive
    // value is honored trivially. Rejecting garbage keeps configs honest.
    if let Ok(v) = std::env::var("PADE_HYPERLAB_THREADS") {
        if v.parse::<usize>().map(|t| t == 0).unwrap_or(true) {
            eprintln!("PADE_HYPERLAB_THREADS must be a positive integer");
            return ExitCode::from(2);
        }
    }
    let cli = Cli::parse();
    let ctx = Ctx {
        kind: match cli.scalar {
            ScalarChoice::Rational => ScalarKind::Rational,
            ScalarChoice::Complex => ScalarKind::Complex(cli.precision_bits),
        },
        policy_for,
        rel_tol: cli.rel_tol,
        seed: cli.seed,
        prec: cli.precision_bits,
    };
    match run(&ctx, cli.cmd) {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(ctx: &Ctx, cmd: Cmd) -> Result<u8, (u8, String)> {
    match cmd {
        Cmd::Solve { spec, route, out } => cmd_solve(ctx, &spec, &route, out.as_deref()),
        Cmd::Verify { spec, solution } => cmd_verify(ctx, &spec, &solution),
        Cmd::Crosscheck { spec, routes } => cmd_crosscheck(ctx, &spec, &routes),
        Cmd::Bench { m, n, trials } => cmd_bench(ctx, m, n, trials),
        Cmd::Identities(id) => cmd_identities(ctx, id),
    }
}

fn cmd_solve(ctx: &Ctx, spec: &str, route: &str, out: Option<&str>) -> Result<u8, (u8, String)> {
    let prob = pio::problem_from_json(&read_json(spec)?).map_err(lib_err)?;
    let route = Route::from_name(route).map_err(lib_err)?;
    let sol = pade::solve(&prob, route).map_err(lib_err)?;
    let policy = ctx.policy(prob.kind());
    let report = pade::verify_solution(&prob, &sol, &policy).map_err(lib_err)?;
    let v = json!({
        "solution": pio::solution_to_json(&sol),
        "verification": report.to_json(),
    });
    match out {
        Some(path) => {
            let text = serde_json::to_string_pretty(&v).expect("serializable");
            fs::write(path, text + "\n").map_err(|e| (4, format!("cannot write {path}: {e}")))?;
        }
        None => emit(&v),
    }
    Ok(if report.pass { 0 } else { 2 })
}

fn cmd_verify(ctx: &Ctx, spec: &str, solution: &str) -> Result<u8, (u8, String)> {
    let prob = pio::problem_from_json(&read_json(spec)?).map_err(lib_err)?;
    let sol_json = read_json(solution)?;
    // Accept both a bare solution object and the `solve` output envelope.
    let sol_json = sol_json.get("solution").cloned().unwrap_or(sol_json);
    let sol = pio::solution_from_json(&sol_json).map_err(lib_err)?;
    let policy = ctx.policy(prob.kind());
    let report = pade::verify_solution(&prob, &sol, &policy).map_err(lib_err)?;
    emit(&report.to_json());
    Ok(if report.pass { 0 } else { 2 })
}

fn cmd_crosscheck(ctx: &Ctx, spec: &str, routes: &str) -> Result<u8, (u8, String)> {
    let prob = pio::problem_from_json(&read_json(spec)?).map_err(lib_err)?;
    prob.genericity_check().map_err(lib_err)?;
    let route_list: Vec<Route> = if routes == "all" {
        pade::applicable_routes(&prob)
    } else {
        routes
            .split(',')
            .map(|s| Route::from_name(s.trim()).map_err(lib_err))
            .collect::<Result<_, _>>()?
    };
    let policy = ctx.policy(prob.kind());
    let mut sols = Vec::new();
    for r in &route_list {
        sols.push(pade::solve(&prob, *r).map_err(lib_err)?);
    }
    let mut all_pass = true;
    let mut verifications = Vec::new();
    for s in &sols {
        let rep = pade::verify_solution(&prob, s, &policy).map_err(lib_err)?;
        all_pass &= rep.pass;
        verifications.push(json!({"route": s.route.name(), "pass": rep.pass, "max_residual": rep.max_residual}));
    }
    let mut matrix = Vec::new();
    for a in &sols {
        let mut row = Vec::new();
        for b in &sols {
            let eq = pade::solutions_proj_eq(a, b, &policy).map_err(lib_err)?;
            all_pass &= eq;
            row.push(Value::Bool(eq));
        }
        matrix.push(Value::Array(row));
    }
    emit(&json!({
        "routes": route_list.iter().map(|r| r.name()).collect::<Vec<_>>(),
        "proj_eq": matrix,
        "verifications": verifications,
        "pass": all_pass,
    }));
    Ok(if all_pass { 0 } else { 2 })
}

fn random_explicit_problem(
    d: &mut Draw,
    m: usize,
    n: usize,
) -> Result<pade::InterpolationProblem, Error> {
    let one_third = pade_hyperlab::rational(1, 3)?;
    let one_seventh = pade_hyperlab::rational(1, 7)?;
    let one_eleventh = pade_hyperlab::rational(1, 11)?;
    for _ in 0..64 {
        let a = d.rational();
        let b = &d.rational() + &one_third;
        let c = d.rational();
        let dd = &d.rational() + &one_seventh;
        let u = &d.rational() + &one_eleventh;
        let w = pade::WeightSpec::Explicit(
            (0..=m + n)
                .map(|_| (d.nonzero_rational(), d.nonzero_rational()))
                .collect(),
        );
        if let Ok(p) = pade::build_rational_hg_problem(&a, &b, &c, &dd, &u, m, n, &w) {
            if p.genericity_check().is_ok() {
                return Ok(p);
            }
        }
    }
    Err(Error::InvalidInput(
        "no generic instance found in 64 draws".into(),
    ))
}

fn cmd_bench(ctx: &Ctx, m: usize, n: usize, trials: usize) -> Result<u8, (u8, String)> {
    let mut d = Draw::new(ctx.seed);
    let mut records = Vec::new();
    let mut brute_total = 0f64;
    let mut condensed_total = 0f64;
    for trial in 0..trials {
        let prob = random_explicit_problem(&mut d, m, n).map_err(lib_err)?;
        let t0 = Instant::now();
        let brute = pade::solve_bruteforce(&prob).map_err(lib_err)?;
        let brute_ms = t0.elapsed().as_secs_f64() * 1e3;
        let t1 = Instant::now();
        let cond = pade::solve_condensed(&prob).map_err(lib_err)?;
        let condensed_ms = t1.elapsed().as_secs_f64() * 1e3;
        let eq = pade::solutions_proj_eq(&brute, &cond, &EqPolicy::Exact).map_err(lib_err)?;
        brute_total += brute_ms;
        condensed_total += condensed_ms;
        records.push(json!({
            "trial": trial,
            "brute_ms": brute_ms,
            "condensed_ms": condensed_ms,
            "proj_eq": eq,
        }));
        if !eq {
            emit(&json!({"records": records, "pass": false}));
            return Ok(2);
        }
    }
    emit(&json!({
        "m": m,
        "n": n,
        "trials": trials,
        "brute_total_ms": brute_total,
        "condensed_total_ms": condensed_total,
        "records": records,
        "pass": true,
    }));
    Ok(0)
}

fn cmd_identities(ctx: &Ctx, id: IdCmd) -> Result<u8, (u8, String)> {
    let mut d = Draw::new(ctx.seed);
    let mut reports: Vec<Value> = Vec::new();
    let mut all_pass = true;
    match id {
        IdCmd::Condense { n, r, trials } => {
            if n < 2 || r > n - 2 {
                return Err((2, format!("need n >= 2 and r <= n-2, got n={n}, r={r}")));
            }
            for _ in 0..trials {
                let x = pade_hyperlab::linalg::Matrix::from_fn(n, n, |_, _| d.rational());
                for rep in [
                    condensation::check_fixed_core(&x, r, &EqPolicy::Exact).map_err(lib_err)?,
                    condensation::check_moving_core(&x, r, &EqPolicy::Exact).map_err(lib_err)?,
                    condensation::check_moving_core_renormalized(&x, r, &EqPolicy::Exact)
                        .map_err(lib_err)?,
                    condensation::jacobi_check(&x, &EqPolicy::Exact).map_err(lib_err)?,
                ] {
                    all_pass &= rep.holds;
                    reports.push(rep.to_json());
                }
            }
        }
        IdCmd::Saalschutz { trials } => {
            for _ in 0..trials {
                let n = d.int_range(0, 8) as usize;
                let c = d.rational();
                let dc = &d.rational() + &pade_hyperlab::rational(1, 5).map_err(lib_err)?;
                let u = &d.rational() + &pade_hyperlab::rational(1, 9).map_err(lib_err)?;
                let i = d.rational();
                let j = d.rational();
                match series::saalschutz_check(n, &c, &dc, &u, &i, &j, &EqPolicy::Exact) {
                    Ok(rep) => {
                        all_pass &= rep.holds;
                        reports.push(rep.to_json());
                    }
                    Err(Error::PoleBeforeTermination { .. }) => continue,
                    Err(e) => return Err(lib_err(e)),
                }
            }
        }
        IdCmd::FrenkelTuraev { trials, bracket } => {
            let (bk, kind) = ctx.bracket(bracket)?;
            let policy = ctx.policy(kind);
            for _ in 0..trials {
                let n = d.int_range(1, 5) as usize;
                let delta = match kind {
                    ScalarKind::Rational => kind.one(),
                    _ => &kind.one() / &kind.from_i64(5),
                };
                let draw = |d: &mut Draw| match kind {
                    ScalarKind::Rational => d.rational(),
                    _ => d.small_scalar(kind),
                };
                let a0 = draw(&mut d);
                let a1 = draw(&mut d);
                let a2 = draw(&mut d);
                let a3 = draw(&mut d);
                match series::frenkel_turaev_check(&bk, &delta, &a0, &a1, &a2, &a3, n, &policy) {
                    Ok(rep) => {
                        all_pass &= rep.holds;
                        reports.push(rep.to_json());
                    }
                    Err(Error::PoleBeforeTermination { .. }) | Err(Error::A0Zero) => continue,
                    Err(e) => return Err(lib_err(e)),
                }
            }
        }
        IdCmd::Riemann { trials, bracket } => {
            let (bk, kind) = ctx.bracket(bracket)?;
            for _ in 0..trials {
                let draw = |d: &mut Draw| match kind {
                    ScalarKind::Rational => d.rational(),
                    _ => d.small_scalar(kind),
                };
                let x = draw(&mut d);
                let alpha = draw(&mut d);
                let beta = draw(&mut d);
                let gamma = draw(&mut d);
                let res = series::riemann_residual(&bk, &x, &alpha, &beta, &gamma)
                    .map_err(lib_err)?;
                let pass = match kind {
                    ScalarKind::Rational => res.is_zero(),
                    ScalarKind::Complex(_) => res.abs_float().to_f64() <= ctx.rel_tol,
                };
                all_pass &= pass;
                reports.push(json!({
                    "name": "riemann",
                    "residual": res.abs_float().to_f64(),
                    "pass": pass,
                }));
            }
        }
        IdCmd::Krattenthaler { m, trials } => {
            for _ in 0..trials {
                let x: Vec<Scalar> = (0..=m).map(|k| &d.rational() + &ScalarKind::Rational.from_i64(100 * k as i64)).collect();
                let al: Vec<Scalar> = (0..m).map(|_| d.nonzero_rational()).collect();
                let be: Vec<Scalar> = (0..m).map(|_| d.rational()).collect();
                let ga: Vec<Scalar> = (0..m).map(|_| d.rational()).collect();
                let de: Vec<Scalar> = (0..m).map(|_| d.nonzero_rational()).collect();
                match (
                    detformulas::krattenthaler_lhs(&x, &al, &be, &ga, &de),
                    detformulas::krattenthaler_rhs(&x, &al, &be, &ga, &de),
                ) {
                    (Ok(lhs), Ok(rhs)) => {
                        let rep = pade_hyperlab::report::IdentityReport::compare(
                            "krattenthaler",
                            lhs,
                            rhs,
                            &EqPolicy::Exact,
                        )
                        .map_err(lib_err)?;
                        all_pass &= rep.holds;
                        reports.push(rep.to_json());
                    }
                    _ => continue,
                }
            }
        }
        IdCmd::Warnaar { m, trials, bracket } => {
            let (bk, kind) = ctx.bracket(bracket)?;
            let policy = match kind {
                ScalarKind::Rational => EqPolicy::Exact,
                k => ctx.policy(k),
            };
            for _ in 0..trials {
                let draw = |d: &mut Draw| match kind {
                    ScalarKind::Rational => d.rational(),
                    _ => d.small_scalar(kind),
                };
                let x: Vec<Scalar> = (0..=m).map(|_| draw(&mut d)).collect();
                let a: Vec<Scalar> = (0..m).map(|_| draw(&mut d)).collect();
                let b: Vec<Scalar> = (0..m).map(|_| draw(&mut d)).collect();
                match detformulas::warnaar_check(&bk, &x, &a, &b, &policy) {
                    Ok(rep) => {
                        all_pass &= rep.holds;
                        reports.push(rep.to_json());
                    }
                    Err(Error::PoleInDenominator) => continue,
                    Err(e) => return Err(lib_err(e)),
                }
            }
        }
        IdCmd::Abstract { m, trials } => {
            for _ in 0..trials {
                let npts = m + 2;
                let x: Vec<Scalar> = (0..npts)
                    .map(|k| &d.rational() + &ScalarKind::Rational.from_i64(100 * k as i64))
                    .collect();
                let al: Vec<Scalar> = (0..npts - 1).map(|_| d.nonzero_rational()).collect();
                let be: Vec<Scalar> = (0..npts - 1).map(|_| d.rational()).collect();
                let ga: Vec<Scalar> = (0..npts - 1).map(|_| d.rational()).collect();
                let de: Vec<Scalar> = (0..npts - 1).map(|_| d.nonzero_rational()).collect();
                let input = match detformulas::FactorizedDetInput::from_linear(
                    &x,
                    &al,
                    &be,
                    &ga,
                    &de,
                    &EqPolicy::Exact,
                ) {
                    Ok(i) => i,
                    Err(_) => continue,
                };
                match detformulas::abstract_factorized_det(&input, m, &EqPolicy::Exact) {
                    Ok(rep) => {
                        all_pass &= rep.holds;
                        reports.push(rep.to_json());
                    }
                    Err(_) => continue,
                }
                if m >= 1 {
                    match detformulas::tau_bilinear_check(&input, m, &EqPolicy::Exact) {
                        Ok(rep) => {
                            all_pass &= rep.holds;
                            reports.push(rep.to_json());
                        }
                        Err(_) => continue,
                    }
                }
            }
        }
    }
    let _ = ctx.kind;
    emit(&Value::Array(reports));
    Ok(if all_pass { 0 } else { 2 })
}
