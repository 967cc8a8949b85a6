//! JSON serialization of interpolation problems and solutions.
//!
//! Problem schema:
//! ```json
//! {
//!   "scalar": "rational" | "complex256",
//!   "family": "rational-hg" | "vwp",
//!   "bracket": {"variant": "rational"|"trig"|"elliptic",
//!               "omega": ..., "omega1": ..., "omega2": ...,
//!               "c0": ..., "c1": ...},
//!   "params": {"a": ..., "b": ..., "c": ..., "d": ..., "u": ..., "delta": ...},
//!   "degrees": {"m": m, "n": n},
//!   "weights": {"family": "plain-st"|"simplified-st"|"vwp-e"|"vwp-e-simplified",
//!               "params": {...}}
//!             | {"explicit": [[lambda, mu], ...]}
//! }
//! ```
//!
//! Scalars are strings "p/q" for exact rationals and
//! `["re", "im", precision_bits]` triples for complex floats. The `bracket`
//! object is only consulted for (and required by) the "vwp" family; `delta`
//! likewise.

use serde_json::{json, Map, Value};

use super::{
    build_rational_hg_problem, build_vwp_problem, Family, InterpolationProblem, PadeSolution,
    Route, WeightSpec,
};
use crate::error::{Error, Result};
use crate::scalar::{Scalar, ScalarKind, DEFAULT_PRECISION_BITS};
use crate::series::{BracketKind, BracketVariant};

fn want(obj: &Map<String, Value>, key: &str) -> Result<Value> {
    obj.get(key)
        .cloned()
        .ok_or_else(|| Error::InvalidInput(format!("missing field '{key}'")))
}

fn as_object(v: &Value, what: &str) -> Result<Map<String, Value>> {
    v.as_object()
        .cloned()
        .ok_or_else(|| Error::InvalidInput(format!("'{what}' must be an object")))
}

fn as_str(v: &Value, what: &str) -> Result<String> {
    v.as_str()
        .map(|s| s.to_string())
        .ok_or_else(|| Error::InvalidInput(format!("'{what}' must be a string")))
}

fn as_usize(v: &Value, what: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| Error::InvalidInput(format!("'{what}' must be a nonnegative integer")))
}

fn scalar_field(obj: &Map<String, Value>, key: &str) -> Result<Scalar> {
    Scalar::from_json(&want(obj, key)?)
}

fn scalar_list(obj: &Map<String, Value>, key: &str) -> Result<Vec<Scalar>> {
    let v = want(obj, key)?;
    let arr = v
        .as_array()
        .ok_or_else(|| Error::InvalidInput(format!("'{key}' must be an array")))?;
    arr.iter().map(Scalar::from_json).collect()
}

fn bracket_to_json(bk: &BracketKind) -> Value {
    let mut obj = Map::new();
    match &bk.variant {
        BracketVariant::Rational => {
            obj.insert("variant".into(), json!("rational"));
        }
        BracketVariant::Trigonometric { omega } => {
            obj.insert("variant".into(), json!("trig"));
            obj.insert("omega".into(), omega.to_json());
        }
        BracketVariant::Elliptic { omega1, omega2 } => {
            obj.insert("variant".into(), json!("elliptic"));
            obj.insert("omega1".into(), omega1.to_json());
            obj.insert("omega2".into(), omega2.to_json());
        }
    }
    obj.insert("c0".into(), bk.c0.to_json());
    obj.insert("c1".into(), bk.c1.to_json());
    Value::Object(obj)
}

fn bracket_from_json(v: &Value, kind: ScalarKind) -> Result<BracketKind> {
    let obj = as_object(v, "bracket")?;
    let variant = as_str(&want(&obj, "variant")?, "bracket.variant")?;
    let zero = kind.zero();
    let c0 = obj
        .get("c0")
        .map(Scalar::from_json)
        .transpose()?
        .unwrap_or_else(|| zero.clone());
    let c1 = obj
        .get("c1")
        .map(Scalar::from_json)
        .transpose()?
        .unwrap_or(zero);
    match variant.as_str() {
        "rational" => Ok(BracketKind { variant: BracketVariant::Rational, c0, c1 }),
        "trig" => BracketKind::trigonometric(scalar_field(&obj, "omega")?, c0, c1),
        "elliptic" => BracketKind::elliptic(
            scalar_field(&obj, "omega1")?,
            scalar_field(&obj, "omega2")?,
            c0,
            c1,
        ),
        other => Err(Error::InvalidInput(format!("unknown bracket variant '{other}'"))),
    }
}

fn weights_to_json(wspec: &WeightSpec) -> Value {
    let sl = |xs: &[Scalar]| Value::Array(xs.iter().map(|x| x.to_json()).collect());
    match wspec {
        WeightSpec::PlainSt { s, t, z, w } => json!({
            "family": "plain-st",
            "params": {"s": sl(s), "t": sl(t), "z": z.to_json(), "w": w.to_json()},
        }),
        WeightSpec::SimplifiedSt { a, b, c, d, s, t, z, w } => json!({
            "family": "simplified-st",
            "params": {
                "a": a.to_json(), "b": b.to_json(), "c": c.to_json(), "d": d.to_json(),
                "s": sl(s), "t": sl(t), "z": z.to_json(), "w": w.to_json(),
            },
        }),
        WeightSpec::VwpE { e, z, w } => json!({
            "family": "vwp-e",
            "params": {"e": sl(e), "z": z.to_json(), "w": w.to_json()},
        }),
        WeightSpec::VwpESimplified { a, b, c, d, e, z, w } => json!({
            "family": "vwp-e-simplified",
            "params": {
                "a": a.to_json(), "b": b.to_json(), "c": c.to_json(), "d": d.to_json(),
                "e": sl(e), "z": z.to_json(), "w": w.to_json(),
            },
        }),
        WeightSpec::Explicit(pairs) => json!({
            "explicit": pairs
                .iter()
                .map(|(l, m)| Value::Array(vec![l.to_json(), m.to_json()]))
                .collect::<Vec<_>>(),
        }),
    }
}

fn weights_from_json(v: &Value) -> Result<WeightSpec> {
    let obj = as_object(v, "weights")?;
    if let Some(explicit) = obj.get("explicit") {
        let arr = explicit
            .as_array()
            .ok_or_else(|| Error::InvalidInput("'weights.explicit' must be an array".into()))?;
        let mut pairs = Vec::with_capacity(arr.len());
        for entry in arr {
            let pair = entry
                .as_array()
                .filter(|p| p.len() == 2)
                .ok_or_else(|| Error::InvalidInput("each explicit weight must be [lambda, mu]".into()))?;
            pairs.push((Scalar::from_json(&pair[0])?, Scalar::from_json(&pair[1])?));
        }
        return Ok(WeightSpec::Explicit(pairs));
    }
    let family = as_str(&want(&obj, "family")?, "weights.family")?;
    let params = as_object(&want(&obj, "params")?, "weights.params")?;
    match family.as_str() {
        "plain-st" => Ok(WeightSpec::PlainSt {
            s: scalar_list(&params, "s")?,
            t: scalar_list(&params, "t")?,
            z: scalar_field(&params, "z")?,
            w: scalar_field(&params, "w")?,
        }),
        "simplified-st" => Ok(WeightSpec::SimplifiedSt {
            a: scalar_field(&params, "a")?,
            b: scalar_field(&params, "b")?,
            c: scalar_field(&params, "c")?,
            d: scalar_field(&params, "d")?,
            s: scalar_list(&params, "s")?,
            t: scalar_list(&params, "t")?,
            z: scalar_field(&params, "z")?,
            w: scalar_field(&params, "w")?,
        }),
        "vwp-e" => Ok(WeightSpec::VwpE {
            e: scalar_list(&params, "e")?,
            z: scalar_field(&params, "z")?,
            w: scalar_field(&params, "w")?,
        }),
        "vwp-e-simplified" => Ok(WeightSpec::VwpESimplified {
            a: scalar_field(&params, "a")?,
            b: scalar_field(&params, "b")?,
            c: scalar_field(&params, "c")?,
            d: scalar_field(&params, "d")?,
            e: scalar_list(&params, "e")?,
            z: scalar_field(&params, "z")?,
            w: scalar_field(&params, "w")?,
        }),
        other => Err(Error::InvalidInput(format!("unknown weight family '{other}'"))),
    }
}

/// Serialize a problem to the schema above.
pub fn problem_to_json(prob: &InterpolationProblem) -> Value {
    let scalar = match prob.kind() {
        ScalarKind::Rational => "rational".to_string(),
        ScalarKind::Complex(p) => format!("complex{p}"),
    };
    let mut obj = Map::new();
    obj.insert("scalar".into(), json!(scalar));
    match prob.family() {
        Family::RationalHg { a, b, c, d, u } => {
            obj.insert("family".into(), json!("rational-hg"));
            obj.insert(
                "params".into(),
                json!({
                    "a": a.to_json(), "b": b.to_json(), "c": c.to_json(),
                    "d": d.to_json(), "u": u.to_json(),
                }),
            );
        }
        Family::Vwp { kind, a, b, c, d, u, delta } => {
            obj.insert("family".into(), json!("vwp"));
            obj.insert("bracket".into(), bracket_to_json(kind));
            obj.insert(
                "params".into(),
                json!({
                    "a": a.to_json(), "b": b.to_json(), "c": c.to_json(),
                    "d": d.to_json(), "u": u.to_json(), "delta": delta.to_json(),
                }),
            );
        }
    }
    obj.insert("degrees".into(), json!({"m": prob.m(), "n": prob.n()}));
    obj.insert("weights".into(), weights_to_json(prob.weight_spec()));
    Value::Object(obj)
}

/// Parse and validate a problem from its JSON form.
pub fn problem_from_json(v: &Value) -> Result<InterpolationProblem> {
    let obj = as_object(v, "problem")?;
    let scalar = as_str(&want(&obj, "scalar")?, "scalar")?;
    let kind = match scalar.as_str() {
        "rational" => ScalarKind::Rational,
        s if s.starts_with("complex") => {
            let bits: u32 = s["complex".len()..]
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad scalar tag '{s}'")))?;
            ScalarKind::Complex(bits)
        }
        other => {
            return Err(Error::InvalidInput(format!("unknown scalar tag '{other}'")));
        }
    };
    let degrees = as_object(&want(&obj, "degrees")?, "degrees")?;
    let m = as_usize(&want(&degrees, "m")?, "degrees.m")?;
    let n = as_usize(&want(&degrees, "n")?, "degrees.n")?;
    let params = as_object(&want(&obj, "params")?, "params")?;
    let lift = |s: Scalar| -> Scalar { super::lift(&s, kind) };
    let a = lift(scalar_field(&params, "a")?);
    let b = lift(scalar_field(&params, "b")?);
    let c = lift(scalar_field(&params, "c")?);
    let d = lift(scalar_field(&params, "d")?);
    let u = lift(scalar_field(&params, "u")?);
    let wspec = weights_from_json(&want(&obj, "weights")?)?;
    let family = as_str(&want(&obj, "family")?, "family")?;
    match family.as_str() {
        "rational-hg" => build_rational_hg_problem(&a, &b, &c, &d, &u, m, n, &wspec),
        "vwp" => {
            let bk = bracket_from_json(&want(&obj, "bracket")?, kind)?;
            let delta = lift(scalar_field(&params, "delta")?);
            build_vwp_problem(&bk, &a, &b, &c, &d, &u, &delta, m, n, &wspec)
        }
        other => Err(Error::InvalidInput(format!("unknown family '{other}'"))),
    }
}

/// Serialize a solution (route name, coefficient vectors, normalization).
pub fn solution_to_json(sol: &PadeSolution) -> Value {
    json!({
        "route": sol.route.name(),
        "p": sol.p.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
        "q": sol.q.iter().map(|x| x.to_json()).collect::<Vec<_>>(),
        "normalization": sol.normalization.to_json(),
    })
}

/// Parse a solution from its JSON form.
pub fn solution_from_json(v: &Value) -> Result<PadeSolution> {
    let obj = as_object(v, "solution")?;
    let route = Route::from_name(&as_str(&want(&obj, "route")?, "route")?)?;
    let p = want(&obj, "p")?;
    let q = want(&obj, "q")?;
    let parse_vec = |v: &Value, what: &str| -> Result<Vec<Scalar>> {
        v.as_array()
            .ok_or_else(|| Error::InvalidInput(format!("'{what}' must be an array")))?
            .iter()
            .map(Scalar::from_json)
            .collect()
    };
    let p = parse_vec(&p, "p")?;
    let q = parse_vec(&q, "q")?;
    if p.is_empty() || q.is_empty() {
        return Err(Error::InvalidInput("empty coefficient vector".into()));
    }
    let normalization = obj
        .get("normalization")
        .map(Scalar::from_json)
        .transpose()?
        .unwrap_or_else(|| p[0].kind().one());
    Ok(PadeSolution { p, q, route, normalization })
}

/// Default complex precision tag used by the CLI schema.
pub fn default_complex_tag() -> String {
    format!("complex{DEFAULT_PRECISION_BITS}")
}
