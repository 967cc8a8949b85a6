//! End-to-end acceptance suite. Runs as a plain binary (`harness = false`)
//! so that one line per criterion is printed directly into the test output.

use std::time::Instant;

use pade_hyperlab::condensation;
use pade_hyperlab::detformulas::{self, FactorizedDetInput, QRatioCase};
use pade_hyperlab::linalg::{det, Matrix};
use pade_hyperlab::pade::{
    build_rational_hg_problem, build_vwp_problem, evaluate_p, evaluate_q, hg31_u, hg31_u_series,
    hg32_lg, hg32_phi, hg32_phi_series, residual_r, solutions_proj_eq, solve_bruteforce,
    solve_condensed, solve_hg_krattenthaler, solve_hg_saalschutz, solve_vwp_ft,
    solve_vwp_krattenthaler, verify_solution, vwp41_u, vwp41_u_series, vwp42_phi,
    vwp42_phi_series, InterpolationProblem, WeightSpec,
};
use pade_hyperlab::rng::Draw;
use pade_hyperlab::series::{self, BracketKind};
use pade_hyperlab::{
    proj_eq, rational, CFloat, EqPolicy, Error, Scalar, ScalarKind, DEFAULT_PRECISION_BITS,
};

// ---------------------------------------------------------------------------
// Shared helpers.
// ---------------------------------------------------------------------------

fn q(n: i64, d: i64) -> Scalar {
    rational(n, d).unwrap()
}

fn explicit_weights(d: &mut Draw, nn: usize) -> WeightSpec {
    WeightSpec::Explicit(
        (0..=nn)
            .map(|_| (d.nonzero_rational(), d.nonzero_rational()))
            .collect(),
    )
}

fn random_rational_problem(d: &mut Draw, m: usize, n: usize) -> InterpolationProblem {
    loop {
        let a = d.rational();
        let b = &d.rational() + &q(1, 3);
        let c = d.rational();
        let dd = &d.rational() + &q(1, 7);
        let u = &d.rational() + &q(1, 11);
        let w = explicit_weights(d, m + n);
        if let Ok(p) = build_rational_hg_problem(&a, &b, &c, &dd, &u, m, n, &w) {
            if p.genericity_check().is_ok() {
                return p;
            }
        }
    }
}

fn plain_weights(d: &mut Draw, r: usize) -> WeightSpec {
    WeightSpec::PlainSt {
        s: (0..r).map(|_| &d.rational() + &q(1, 13)).collect(),
        t: (0..r).map(|_| &d.rational() + &q(1, 17)).collect(),
        z: d.nonzero_rational(),
        w: d.nonzero_rational(),
    }
}

/// Rational hypergeometric family with a structured weight; `simplified`
/// selects the second weight family (parameters tied to the problem's own).
fn random_hg_family_problem(
    d: &mut Draw,
    m: usize,
    n: usize,
    simplified: bool,
) -> InterpolationProblem {
    loop {
        let a = d.rational();
        let b = &d.rational() + &q(1, 3);
        let c = d.rational();
        let dd = &d.rational() + &q(1, 7);
        let u = &d.rational() + &q(1, 11);
        let w = if simplified {
            WeightSpec::SimplifiedSt {
                a: a.clone(),
                b: b.clone(),
                c: c.clone(),
                d: dd.clone(),
                s: vec![&d.rational() + &q(5, 4)],
                t: vec![&d.rational() + &q(7, 5)],
                z: d.nonzero_rational(),
                w: d.nonzero_rational(),
            }
        } else {
            plain_weights(d, 1)
        };
        if let Ok(p) = build_rational_hg_problem(&a, &b, &c, &dd, &u, m, n, &w) {
            if p.genericity_check().is_ok() {
                return p;
            }
        }
    }
}

fn vwp_rational_problem(d: &mut Draw, m: usize, n: usize) -> InterpolationProblem {
    let bk = BracketKind::rational(ScalarKind::Rational);
    loop {
        let a = d.rational();
        let b = &d.rational() + &q(1, 3);
        let c = d.rational();
        let dd = &d.rational() + &q(1, 7);
        let u = &d.rational() + &q(10, 11);
        let w = WeightSpec::VwpE {
            e: vec![&d.rational() + &q(1, 13)],
            z: d.nonzero_rational(),
            w: d.nonzero_rational(),
        };
        let one = ScalarKind::Rational.one();
        if let Ok(p) = build_vwp_problem(&bk, &a, &b, &c, &dd, &u, &one, m, n, &w) {
            if p.genericity_check().is_ok() {
                return p;
            }
        }
    }
}

fn trig_kind() -> BracketKind {
    let k = ScalarKind::Complex(DEFAULT_PRECISION_BITS);
    BracketKind::trigonometric(k.from_i64(3), k.zero(), k.zero()).unwrap()
}

fn elliptic_kind() -> BracketKind {
    let p = DEFAULT_PRECISION_BITS;
    let k = ScalarKind::Complex(p);
    let omega2 = Scalar::Complex(CFloat::from_f64(p, 0.0, 2.0));
    BracketKind::elliptic(k.one(), omega2, k.zero(), k.zero()).unwrap()
}

/// Complex-bracket instance; parameters stay small in magnitude so that the
/// node-matrix entries (dominated by the bracket's growth) keep the exact
/// cancellations representable at the working precision.
fn vwp_complex_problem(
    d: &mut Draw,
    bk: &BracketKind,
    m: usize,
    n: usize,
) -> InterpolationProblem {
    let k = ScalarKind::Complex(DEFAULT_PRECISION_BITS);
    loop {
        let a = d.small_scalar(k);
        let b = d.small_scalar(k);
        let c = d.small_scalar(k);
        let dd = d.small_scalar(k);
        let u = d.small_scalar(k);
        let delta = &k.one() / &k.from_i64(5);
        let w = WeightSpec::VwpE {
            e: vec![d.small_scalar(k)],
            z: d.nonzero_scalar(k),
            w: d.nonzero_scalar(k),
        };
        if let Ok(p) = build_vwp_problem(bk, &a, &b, &c, &dd, &u, &delta, m, n, &w) {
            if p.genericity_check().is_ok() {
                return p;
            }
        }
    }
}

fn degrees(d: &mut Draw, max: usize) -> (usize, usize) {
    loop {
        let m = d.index(max + 1);
        let n = d.index(max + 1);
        if m + n >= 1 {
            return (m, n);
        }
    }
}

// ---------------------------------------------------------------------------
// Criteria.
// ---------------------------------------------------------------------------

type Check = fn() -> Result<String, String>;

fn c01_bruteforce_exact() -> Result<String, String> {
    let mut d = Draw::new(101);
    for t in 0..50 {
        let (m, n) = degrees(&mut d, 3);
        let prob = random_rational_problem(&mut d, m, n);
        let sol = solve_bruteforce(&prob).map_err(|e| format!("solve failed: {e}"))?;
        for k in 0..=prob.big_n() {
            let r = residual_r(&prob, &sol, prob.point(k), prob.lambda(k), prob.mu(k))
                .map_err(|e| format!("residual failed: {e}"))?;
            if !r.is_zero() {
                return Err(format!("trial {t}: nonzero residual at node {k}"));
            }
        }
        let rep = verify_solution(&prob, &sol, &EqPolicy::Exact)
            .map_err(|e| format!("verify failed: {e}"))?;
        if !rep.pass {
            return Err(format!("trial {t}: verification report failed"));
        }
    }
    Ok("50 random exact instances (degrees up to 3): all node residuals exactly zero".into())
}

fn c02_condensed_matches_bruteforce() -> Result<String, String> {
    let mut d = Draw::new(101);
    for t in 0..50 {
        let (m, n) = degrees(&mut d, 3);
        let prob = random_rational_problem(&mut d, m, n);
        let brute = solve_bruteforce(&prob).map_err(|e| format!("brute failed: {e}"))?;
        let cond = solve_condensed(&prob).map_err(|e| format!("condensed failed: {e}"))?;
        for (x, y) in brute.p.iter().zip(cond.p.iter()).chain(brute.q.iter().zip(cond.q.iter()))
        {
            if !(x - y).is_zero() {
                return Err(format!("trial {t}: coefficient mismatch (m={m}, n={n})"));
            }
        }
        if !solutions_proj_eq(&brute, &cond, &EqPolicy::Exact).map_err(|e| e.to_string())? {
            return Err(format!("trial {t}: solutions not projectively equal"));
        }
    }
    // The moving-core condensation identity that powers the route, standalone.
    let mut checks = 0usize;
    for t in 0..100 {
        let n = 2 + d.index(6); // 2..=7
        let x = Matrix::from_fn(n, n, |_, _| d.rational());
        for r in 1..=n - 2 {
            let rep = condensation::check_moving_core(&x, r, &EqPolicy::Exact)
                .map_err(|e| format!("matrix {t}: {e}"))?;
            if !rep.holds {
                return Err(format!("matrix {t}: moving-core identity failed at split {r}"));
            }
            checks += 1;
        }
    }
    Ok(format!(
        "condensed route equals brute force coefficient-by-coefficient on 50 instances; \
         moving-core determinant identity exact on 100 matrices ({checks} splits)"
    ))
}

fn c03_condensation_lemmas() -> Result<String, String> {
    let mut d = Draw::new(103);
    let mut checks = 0usize;
    for t in 0..100 {
        let n = 2 + d.index(6); // 2..=7
        let x = Matrix::from_fn(n, n, |_, _| d.rational());
        for r in 1..=n - 2 {
            for rep in [
                condensation::check_fixed_core(&x, r, &EqPolicy::Exact),
                condensation::check_moving_core_renormalized(&x, r, &EqPolicy::Exact),
            ] {
                let rep = rep.map_err(|e| format!("matrix {t}: {e}"))?;
                if !rep.holds {
                    return Err(format!("matrix {t}: {} failed at split {r}", rep.name));
                }
                checks += 1;
            }
        }
        if n >= 3 {
            let rep = condensation::jacobi_check(&x, &EqPolicy::Exact)
                .map_err(|e| format!("matrix {t}: {e}"))?;
            if !rep.holds {
                return Err(format!("matrix {t}: Jacobi identity failed"));
            }
            checks += 1;
        }
    }
    Ok(format!(
        "fixed-core, renormalized moving-core, and Jacobi identities exact on 100 matrices \
         ({checks} checks)"
    ))
}

fn c04_determinant_formulas() -> Result<String, String> {
    let mut d = Draw::new(104);
    // General bilinear-entry determinant evaluation, exact.
    let mut kr = 0usize;
    while kr < 50 {
        let m = 1 + d.index(4); // 1..=4
        let x: Vec<Scalar> = (0..=m)
            .map(|k| &d.rational() + &ScalarKind::Rational.from_i64(100 * k as i64))
            .collect();
        let al: Vec<Scalar> = (0..m).map(|_| d.nonzero_rational()).collect();
        let be: Vec<Scalar> = (0..m).map(|_| d.rational()).collect();
        let ga: Vec<Scalar> = (0..m).map(|_| d.rational()).collect();
        let de: Vec<Scalar> = (0..m).map(|_| d.nonzero_rational()).collect();
        let (lhs, rhs) = match (
            detformulas::krattenthaler_lhs(&x, &al, &be, &ga, &de),
            detformulas::krattenthaler_rhs(&x, &al, &be, &ga, &de),
        ) {
            (Ok(l), Ok(r)) => (l, r),
            _ => continue,
        };
        if !(&lhs - &rhs).is_zero() {
            return Err(format!("bilinear determinant mismatch at m={m}"));
        }
        kr += 1;
    }
    // Shifted-factorial ratio specialization, exact.
    let mut sr = 0usize;
    'outer: while sr < 20 {
        let m = 1 + d.index(4);
        let a = d.rational();
        let b = &d.rational() + &q(1, 3);
        let x: Vec<Scalar> = (0..=m)
            .map(|k| &d.rational() + &ScalarKind::Rational.from_i64(50 * k as i64))
            .collect();
        let mut entries = Vec::new();
        for xi in &x {
            for j in 0..=m {
                let den = series::shifted_factorial(&(&b + xi), j);
                if den.is_zero() {
                    continue 'outer;
                }
                entries.push(&series::shifted_factorial(&(&a + xi), j) / &den);
            }
        }
        let lhs = det(&Matrix::new(m + 1, m + 1, entries)).map_err(|e| e.to_string())?;
        let rhs = match detformulas::shifted_ratio_det_rhs(&a, &b, &x) {
            Ok(r) => r,
            Err(_) => continue,
        };
        if !(&lhs - &rhs).is_zero() {
            return Err(format!("shifted-ratio determinant mismatch at m={m}"));
        }
        sr += 1;
    }
    // q-specialized cases, exact over rationals.
    let mut qc = 0usize;
    while qc < 20 {
        let m = 1 + d.index(3);
        let case_b = QRatioCase::B {
            a: d.nonzero_rational(),
            b: d.nonzero_rational(),
            q: &d.rational() + &q(3, 2),
            x: (0..=m).map(|_| d.nonzero_rational()).collect(),
        };
        let case_c = QRatioCase::C {
            a: d.nonzero_rational(),
            b: d.nonzero_rational(),
            c: d.nonzero_rational(),
            p: &d.rational() + &q(5, 2),
            q: &d.rational() + &q(3, 2),
            z: (0..=m).map(|_| d.nonzero_rational()).collect(),
        };
        for case in [case_b, case_c] {
            match detformulas::q_ratio_det_check(&case, &EqPolicy::Exact) {
                Ok(rep) if rep.holds => qc += 1,
                Ok(_) => return Err(format!("q-specialized determinant failed at m={m}")),
                Err(_) => continue,
            }
        }
    }
    // Bracket extension, all three bracket kinds.
    let kinds: [(&str, BracketKind, EqPolicy); 3] = [
        (
            "rational",
            BracketKind::rational(ScalarKind::Rational),
            EqPolicy::Exact,
        ),
        ("trig", trig_kind(), EqPolicy::relative(1e-20, 1e-40)),
        ("elliptic", elliptic_kind(), EqPolicy::relative(1e-20, 1e-40)),
    ];
    for (name, bk, policy) in &kinds {
        let kind = bk.scalar_kind();
        let mut wn = 0usize;
        while wn < 10 {
            let m = 1 + d.index(4);
            let draw = |d: &mut Draw| match kind {
                ScalarKind::Rational => d.rational(),
                _ => d.small_scalar(kind),
            };
            let x: Vec<Scalar> = (0..=m).map(|_| draw(&mut d)).collect();
            let a: Vec<Scalar> = (0..m).map(|_| draw(&mut d)).collect();
            let b: Vec<Scalar> = (0..m).map(|_| draw(&mut d)).collect();
            match detformulas::warnaar_check(bk, &x, &a, &b, policy) {
                Ok(rep) if rep.holds => wn += 1,
                Ok(_) => return Err(format!("bracket determinant failed ({name}, m={m})")),
                Err(Error::PoleInDenominator) => continue,
                Err(e) => return Err(format!("bracket determinant error ({name}): {e}")),
            }
        }
    }
    // Abstract factorized form and its bilinear consequence, both
    // linear-entry and bracket-entry instantiations.
    let mut ab = 0usize;
    while ab < 10 {
        let m = 1 + d.index(3);
        let npts = m + 2;
        let x: Vec<Scalar> = (0..npts)
            .map(|k| &d.rational() + &ScalarKind::Rational.from_i64(100 * k as i64))
            .collect();
        let al: Vec<Scalar> = (0..npts - 1).map(|_| d.nonzero_rational()).collect();
        let be: Vec<Scalar> = (0..npts - 1).map(|_| d.rational()).collect();
        let ga: Vec<Scalar> = (0..npts - 1).map(|_| d.rational()).collect();
        let de: Vec<Scalar> = (0..npts - 1).map(|_| d.nonzero_rational()).collect();
        let input =
            match FactorizedDetInput::from_linear(&x, &al, &be, &ga, &de, &EqPolicy::Exact) {
                Ok(i) => i,
                Err(_) => continue,
            };
        match detformulas::abstract_factorized_det(&input, m, &EqPolicy::Exact) {
            Ok(rep) if rep.holds => {}
            _ => return Err(format!("abstract factorized determinant failed at m={m}")),
        }
        match detformulas::tau_bilinear_check(&input, m, &EqPolicy::Exact) {
            Ok(rep) if rep.holds => {}
            _ => return Err(format!("bilinear consequence failed at m={m}")),
        }
        ab += 1;
    }
    let bk = BracketKind::rational(ScalarKind::Rational);
    let mut abk = 0usize;
    while abk < 5 {
        let m = 1 + d.index(2);
        let npts = m + 2;
        let x: Vec<Scalar> = (0..npts)
            .map(|k| &d.rational() + &ScalarKind::Rational.from_i64(100 * k as i64))
            .collect();
        let av: Vec<Scalar> = (0..npts - 1).map(|_| d.nonzero_rational()).collect();
        let bv: Vec<Scalar> = (0..npts - 1).map(|_| d.nonzero_rational()).collect();
        let input = match FactorizedDetInput::from_brackets(&bk, &x, &av, &bv, &EqPolicy::Exact)
        {
            Ok(i) => i,
            Err(_) => continue,
        };
        match detformulas::abstract_factorized_det(&input, m, &EqPolicy::Exact) {
            Ok(rep) if rep.holds => abk += 1,
            _ => return Err(format!("bracket-entry abstract determinant failed at m={m}")),
        }
    }
    Ok(format!(
        "bilinear determinant exact ({kr} draws); shifted-ratio and q-specializations exact; \
         bracket extension holds for all three bracket kinds; abstract factorized form and \
         bilinear consequence pass"
    ))
}

fn c05_saalschutz() -> Result<String, String> {
    let mut d = Draw::new(105);
    let mut done = 0usize;
    while done < 100 {
        let n = d.index(9); // 0..=8
        let c = d.rational();
        let dc = &d.rational() + &q(1, 5);
        let u = &d.rational() + &q(1, 9);
        let i = d.rational();
        let j = d.rational();
        match series::saalschutz_check(n, &c, &dc, &u, &i, &j, &EqPolicy::Exact) {
            Ok(rep) if rep.holds => done += 1,
            Ok(_) => return Err(format!("summation failed at n={n}")),
            Err(Error::PoleBeforeTermination { .. }) => continue,
            Err(e) => return Err(format!("error at n={n}: {e}")),
        }
    }
    Ok("terminating balanced summation exact on 100 random draws (order up to 8)".into())
}

fn c06_frenkel_turaev() -> Result<String, String> {
    let mut d = Draw::new(106);
    let kinds: [(&str, BracketKind, EqPolicy); 3] = [
        (
            "rational",
            BracketKind::rational(ScalarKind::Rational),
            EqPolicy::Exact,
        ),
        ("trig", trig_kind(), EqPolicy::relative(1e-20, 1e-40)),
        ("elliptic", elliptic_kind(), EqPolicy::relative(1e-20, 1e-40)),
    ];
    for (name, bk, policy) in &kinds {
        let kind = bk.scalar_kind();
        let mut done = 0usize;
        while done < 25 {
            let n = 1 + d.index(5); // 1..=5
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
            match series::frenkel_turaev_check(bk, &delta, &a0, &a1, &a2, &a3, n, policy) {
                Ok(rep) if rep.holds => done += 1,
                Ok(_) => return Err(format!("summation failed ({name}, n={n})")),
                Err(Error::PoleBeforeTermination { .. }) | Err(Error::A0Zero) => continue,
                Err(e) => return Err(format!("error ({name}): {e}")),
            }
        }
    }
    Ok("very-well-poised summation: exact over rationals, toleranced for trig and elliptic \
        brackets (25 draws each)"
        .into())
}

fn c07_hg_routes() -> Result<String, String> {
    let mut d = Draw::new(107);
    for t in 0..25 {
        let (m, n) = degrees(&mut d, 2);
        let simplified = t % 2 == 1;
        let prob = random_hg_family_problem(&mut d, m, n, simplified);
        let brute = solve_bruteforce(&prob).map_err(|e| e.to_string())?;
        let k_sol = solve_hg_krattenthaler(&prob).map_err(|e| e.to_string())?;
        let s_sol = solve_hg_saalschutz(&prob).map_err(|e| e.to_string())?;
        if !solutions_proj_eq(&brute, &k_sol, &EqPolicy::Exact).map_err(|e| e.to_string())? {
            return Err(format!("trial {t}: determinant-evaluation route disagrees"));
        }
        if !solutions_proj_eq(&brute, &s_sol, &EqPolicy::Exact).map_err(|e| e.to_string())? {
            return Err(format!("trial {t}: summation route disagrees"));
        }
        // Anti-triangularity of the duality product, exact.
        let lg = hg32_lg(&prob).map_err(|e| e.to_string())?;
        let nn = prob.big_n();
        for i in 0..lg.rows() {
            for j in 0..lg.cols() {
                if i + j < nn && !lg.at(i, j).is_zero() {
                    return Err(format!("trial {t}: duality product not anti-triangular"));
                }
            }
        }
    }
    // Hypergeometric series reductions of the cofactor entries, exact.
    // The summation-route reduction is stated for the plain weight family;
    // the determinant-route reduction covers both families.
    for simplified in [false, true] {
        let prob = random_hg_family_problem(&mut d, 2, 1, simplified);
        for i in 0..prob.m() {
            for j in 0..=prob.m() {
                let a = hg31_u(&prob, i, j).map_err(|e| e.to_string())?;
                let b = hg31_u_series(&prob, i, j).map_err(|e| e.to_string())?;
                if !(&a - &b).is_zero() {
                    return Err("series reduction mismatch (determinant route)".into());
                }
                if !simplified {
                    let a = hg32_phi(&prob, i, j).map_err(|e| e.to_string())?;
                    let b = hg32_phi_series(&prob, i, j).map_err(|e| e.to_string())?;
                    if !(&a - &b).is_zero() {
                        return Err("series reduction mismatch (summation route)".into());
                    }
                }
            }
        }
    }
    Ok("both closed-form routes equal brute force exactly on 25 instances across both \
        structured weight families; duality product anti-triangular; series reductions exact"
        .into())
}

fn c08_vwp_routes() -> Result<String, String> {
    let mut d = Draw::new(108);
    // Rational bracket: everything exact.
    for t in 0..10 {
        let (m, n) = degrees(&mut d, 2);
        let prob = vwp_rational_problem(&mut d, m, n);
        let brute = solve_bruteforce(&prob).map_err(|e| e.to_string())?;
        let k_sol = solve_vwp_krattenthaler(&prob).map_err(|e| e.to_string())?;
        let f_sol = solve_vwp_ft(&prob).map_err(|e| e.to_string())?;
        if !solutions_proj_eq(&brute, &k_sol, &EqPolicy::Exact).map_err(|e| e.to_string())?
            || !solutions_proj_eq(&brute, &f_sol, &EqPolicy::Exact).map_err(|e| e.to_string())?
        {
            return Err(format!("rational bracket: route disagreement on trial {t}"));
        }
    }
    // Trig and elliptic brackets: toleranced at 256-bit precision.
    let policy = EqPolicy::relative(1e-12, 1e-25);
    for (name, bk) in [("trig", trig_kind()), ("elliptic", elliptic_kind())] {
        for t in 0..10 {
            let (m, n) = degrees(&mut d, 2);
            let prob = vwp_complex_problem(&mut d, &bk, m, n);
            let brute = solve_bruteforce(&prob).map_err(|e| e.to_string())?;
            let k_sol = solve_vwp_krattenthaler(&prob).map_err(|e| e.to_string())?;
            let f_sol = solve_vwp_ft(&prob).map_err(|e| e.to_string())?;
            if !solutions_proj_eq(&brute, &k_sol, &policy).map_err(|e| e.to_string())? {
                return Err(format!(
                    "{name} bracket: determinant-evaluation route disagrees on trial {t} \
                     (m={m}, n={n})"
                ));
            }
            if !solutions_proj_eq(&brute, &f_sol, &policy).map_err(|e| e.to_string())? {
                return Err(format!(
                    "{name} bracket: summation route disagrees on trial {t} (m={m}, n={n})"
                ));
            }
        }
    }
    // Very-well-poised series reductions, exact over rationals.
    let prob = vwp_rational_problem(&mut d, 2, 1);
    for i in 0..prob.m() {
        for j in 0..=prob.m() {
            let a = vwp41_u(&prob, i, j).map_err(|e| e.to_string())?;
            let b = vwp41_u_series(&prob, i, j).map_err(|e| e.to_string())?;
            if !(&a - &b).is_zero() {
                return Err("series reduction mismatch (determinant route)".into());
            }
            let a = vwp42_phi(&prob, i, j).map_err(|e| e.to_string())?;
            let b = vwp42_phi_series(&prob, i, j).map_err(|e| e.to_string())?;
            if !(&a - &b).is_zero() {
                return Err("series reduction mismatch (summation route)".into());
            }
        }
    }
    Ok("both bracket routes agree with brute force: exact for the rational bracket, within \
        1e-12 relative for trig and elliptic (10 instances each); series reductions exact"
        .into())
}

fn c09_riemann_relation() -> Result<String, String> {
    let mut d = Draw::new(109);
    let kinds: [(&str, BracketKind); 3] = [
        ("rational", BracketKind::rational(ScalarKind::Rational)),
        ("trig", trig_kind()),
        ("elliptic", elliptic_kind()),
    ];
    for (name, bk) in &kinds {
        let kind = bk.scalar_kind();
        for t in 0..100 {
            let draw = |d: &mut Draw| match kind {
                ScalarKind::Rational => d.rational(),
                _ => d.small_scalar(kind),
            };
            let x = draw(&mut d);
            let alpha = draw(&mut d);
            let beta = draw(&mut d);
            let gamma = draw(&mut d);
            let res = series::riemann_residual(bk, &x, &alpha, &beta, &gamma)
                .map_err(|e| e.to_string())?;
            match kind {
                ScalarKind::Rational => {
                    if !res.is_zero() {
                        return Err(format!("{name}: nonzero residual on trial {t}"));
                    }
                }
                ScalarKind::Complex(_) => {
                    // Compare against the largest of the three summands.
                    let pm = |p: &Scalar, qv: &Scalar| -> Result<Scalar, String> {
                        Ok(&series::bracket(bk, &(p + qv)).map_err(|e| e.to_string())?
                            * &series::bracket(bk, &(p - qv)).map_err(|e| e.to_string())?)
                    };
                    let t1 = &pm(&x, &alpha)? * &pm(&beta, &gamma)?;
                    let t2 = &pm(&x, &beta)? * &pm(&gamma, &alpha)?;
                    let t3 = &pm(&x, &gamma)? * &pm(&alpha, &beta)?;
                    let mut max = t1.abs_float();
                    for t in [&t2, &t3] {
                        let a = t.abs_float();
                        if a > max {
                            max = a;
                        }
                    }
                    let bound = max * 1e-70;
                    if res.abs_float() > bound {
                        return Err(format!("{name}: residual above bound on trial {t}"));
                    }
                }
            }
        }
    }
    // Degenerate specialization gamma = x cancels identically.
    let rk = BracketKind::rational(ScalarKind::Rational);
    for _ in 0..10 {
        let x = d.rational();
        let alpha = d.rational();
        let beta = d.rational();
        let res =
            series::riemann_residual(&rk, &x, &alpha, &beta, &x).map_err(|e| e.to_string())?;
        if !res.is_zero() {
            return Err("gamma = x specialization did not cancel exactly".into());
        }
    }
    Ok("three-term relation: exact over rationals, residual below 1e-70 of the largest \
        summand for trig and elliptic (100 draws per kind)"
        .into())
}

fn c10_invariance() -> Result<String, String> {
    let mut d = Draw::new(110);
    // Weight rescaling leaves the solution projectively unchanged.
    for t in 0..20 {
        let (m, n) = degrees(&mut d, 2);
        let prob = random_rational_problem(&mut d, m, n);
        let base = solve_bruteforce(&prob).map_err(|e| e.to_string())?;
        let rescaled: Vec<(Scalar, Scalar)> = prob
            .weights()
            .iter()
            .map(|(l, mu)| {
                let c = d.nonzero_rational();
                (&c * l, &c * mu)
            })
            .collect();
        let prob2 = prob.with_weights(rescaled).map_err(|e| e.to_string())?;
        let sol2 = solve_bruteforce(&prob2).map_err(|e| e.to_string())?;
        if !solutions_proj_eq(&base, &sol2, &EqPolicy::Exact).map_err(|e| e.to_string())? {
            return Err(format!("weight rescaling changed the solution on trial {t}"));
        }
    }
    // Changing the bracket's Gaussian prefactor multiplies each basis element
    // by a constant, so with the weights held fixed the interpolant is the
    // same function pair up to one overall scalar: compare probe values.
    let p = DEFAULT_PRECISION_BITS;
    let k = ScalarKind::Complex(p);
    let omega = k.from_i64(3);
    let plain = BracketKind::trigonometric(omega.clone(), k.zero(), k.zero())
        .map_err(|e| e.to_string())?;
    let policy = EqPolicy::relative(1e-20, 1e-40);
    for t in 0..20 {
        let c0 = &k.one() / &k.from_i64(40 + t as i64);
        let c1 = &d.small_scalar(k) + &k.one();
        let gauged = BracketKind::trigonometric(omega.clone(), c0, c1)
            .map_err(|e| e.to_string())?;
        let a = d.small_scalar(k);
        let b = d.small_scalar(k);
        let c = d.small_scalar(k);
        let dd = d.small_scalar(k);
        let u = d.small_scalar(k);
        let delta = &k.one() / &k.from_i64(4);
        let w = WeightSpec::Explicit(
            (0..3)
                .map(|_| (d.nonzero_scalar(k), d.nonzero_scalar(k)))
                .collect(),
        );
        let p1 = build_vwp_problem(&plain, &a, &b, &c, &dd, &u, &delta, 1, 1, &w)
            .map_err(|e| e.to_string())?;
        let p2 = build_vwp_problem(&gauged, &a, &b, &c, &dd, &u, &delta, 1, 1, &w)
            .map_err(|e| e.to_string())?;
        if p1.genericity_check().is_err() || p2.genericity_check().is_err() {
            continue;
        }
        let s1 = solve_bruteforce(&p1).map_err(|e| e.to_string())?;
        let s2 = solve_bruteforce(&p2).map_err(|e| e.to_string())?;
        let half = &k.one() / &k.from_i64(2);
        let mut v1 = Vec::new();
        let mut v2 = Vec::new();
        for s in 0..3i64 {
            let x = &u + &(&(&k.from_i64(s) + &half) * &delta);
            v1.push(evaluate_p(&p1, &s1.p, &x).map_err(|e| e.to_string())?);
            v1.push(evaluate_q(&p1, &s1.q, &x).map_err(|e| e.to_string())?);
            v2.push(evaluate_p(&p2, &s2.p, &x).map_err(|e| e.to_string())?);
            v2.push(evaluate_q(&p2, &s2.q, &x).map_err(|e| e.to_string())?);
        }
        if !proj_eq(&v1, &v2, &policy).map_err(|e| e.to_string())? {
            return Err(format!("prefactor change altered the interpolant on trial {t}"));
        }
    }
    // Degree (m, 0): the denominator is constant and P interpolates directly.
    for t in 0..20 {
        let m = 1 + d.index(3);
        let prob = random_rational_problem(&mut d, m, 0);
        let sol = solve_bruteforce(&prob).map_err(|e| e.to_string())?;
        if sol.q.len() != 1 {
            return Err(format!("trial {t}: denominator not constant"));
        }
        for kn in 0..=prob.big_n() {
            let pv = evaluate_p(&prob, &sol.p, prob.point(kn)).map_err(|e| e.to_string())?;
            let lhs = &pv * prob.mu(kn);
            let rhs = &sol.q[0] * prob.lambda(kn);
            if !(&lhs - &rhs).is_zero() {
                return Err(format!("trial {t}: interpolation values wrong at node {kn}"));
            }
        }
    }
    Ok("weight rescaling, bracket-prefactor change, and pure-interpolation reduction all \
        leave the solution invariant (20 draws each)"
        .into())
}

fn c11_benchmark() -> Result<String, String> {
    let mut d = Draw::new(111);
    let prob = random_rational_problem(&mut d, 6, 6);
    let t0 = Instant::now();
    let brute = solve_bruteforce(&prob).map_err(|e| e.to_string())?;
    let brute_ms = t0.elapsed().as_secs_f64() * 1e3;
    let t1 = Instant::now();
    let cond = solve_condensed(&prob).map_err(|e| e.to_string())?;
    let cond_ms = t1.elapsed().as_secs_f64() * 1e3;
    if !solutions_proj_eq(&brute, &cond, &EqPolicy::Exact).map_err(|e| e.to_string())? {
        return Err("routes disagree at degree (6, 6)".into());
    }
    Ok(format!(
        "degree (6, 6): brute force {brute_ms:.1} ms, condensed {cond_ms:.1} ms, routes agree \
         exactly"
    ))
}

// ---------------------------------------------------------------------------
// Driver.
// ---------------------------------------------------------------------------

fn main() {
    let criteria: &[(&str, Check)] = &[
        ("brute-force route solves exactly", c01_bruteforce_exact),
        ("condensed route matches brute force", c02_condensed_matches_bruteforce),
        ("condensation lemmas hold exactly", c03_condensation_lemmas),
        ("determinant evaluation formulas hold", c04_determinant_formulas),
        ("balanced terminating summation holds", c05_saalschutz),
        ("very-well-poised summation holds", c06_frenkel_turaev),
        ("hypergeometric closed-form routes agree", c07_hg_routes),
        ("bracket closed-form routes agree", c08_vwp_routes),
        ("three-term bracket relation holds", c09_riemann_relation),
        ("solution invariances hold", c10_invariance),
        ("benchmark sanity at degree (6, 6)", c11_benchmark),
    ];
    let mut failures = 0usize;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f();
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) => {
                println!("criterion {:02} ({name}): PASS ({secs:.2}s) — {detail}", i + 1);
            }
            Err(msg) => {
                failures += 1;
                println!("criterion {:02} ({name}): FAIL ({secs:.2}s) — {msg}", i + 1);
            }
        }
    }
    if failures > 0 {
        println!("acceptance: {failures} criterion(s) failed");
        std::process::exit(1);
    }
    println!("acceptance: all {} criteria passed", criteria.len());
}
