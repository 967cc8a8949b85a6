//! Scalar backends: exact rationals with arbitrary-precision integers, and
//! complex numbers at configurable binary precision, plus equality policies.
//!
//! Every other module is written over [`Scalar`]; the two backends never mix
//! inside one computation. Exact rationals obey the field axioms exactly;
//! complex floats round to nearest at their fixed precision and mixing
//! precisions is an invariant breach (it panics, since it is a programming
//! error rather than a data error).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Constant;
use rug::ops::{CompleteRound, Pow};
use rug::{Complete, Float, Integer, Rational};

use crate::error::{Error, Result};

/// Default binary precision for the complex backend.
pub const DEFAULT_PRECISION_BITS: u32 = 256;

/// A complex number with both parts carried at one fixed binary precision.
#[derive(Clone, Debug, PartialEq)]
pub struct CFloat {
    pub re: Float,
    pub im: Float,
}

impl CFloat {
    pub fn new(re: Float, im: Float) -> Self {
        assert_eq!(re.prec(), im.prec(), "CFloat parts must share one precision");
        CFloat { re, im }
    }

    pub fn zero(prec: u32) -> Self {
        CFloat::new(Float::with_val(prec, 0), Float::with_val(prec, 0))
    }

    pub fn from_i64(prec: u32, v: i64) -> Self {
        CFloat::new(Float::with_val(prec, v), Float::with_val(prec, 0))
    }

    pub fn from_f64(prec: u32, re: f64, im: f64) -> Self {
        CFloat::new(Float::with_val(prec, re), Float::with_val(prec, im))
    }

    pub fn prec(&self) -> u32 {
        self.re.prec()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn check(&self, other: &CFloat) {
        assert_eq!(
            self.prec(),
            other.prec(),
            "mixed-precision complex operands"
        );
    }

    pub fn add(&self, o: &CFloat) -> CFloat {
        self.check(o);
        let p = self.prec();
        CFloat::new(
            Float::with_val(p, &self.re + &o.re),
            Float::with_val(p, &self.im + &o.im),
        )
    }

    pub fn sub(&self, o: &CFloat) -> CFloat {
        self.check(o);
        let p = self.prec();
        CFloat::new(
            Float::with_val(p, &self.re - &o.re),
            Float::with_val(p, &self.im - &o.im),
        )
    }

    pub fn mul(&self, o: &CFloat) -> CFloat {
        self.check(o);
        let p = self.prec();
        let re = Float::with_val(p, (&self.re * &o.re).complete(p) - (&self.im * &o.im).complete(p));
        let im = Float::with_val(p, (&self.re * &o.im).complete(p) + (&self.im * &o.re).complete(p));
        CFloat::new(re, im)
    }

    pub fn div(&self, o: &CFloat) -> CFloat {
        self.check(o);
        let p = self.prec();
        let den = Float::with_val(p, (&o.re * &o.re).complete(p) + (&o.im * &o.im).complete(p));
        let re = Float::with_val(
            p,
            ((&self.re * &o.re).complete(p) + (&self.im * &o.im).complete(p)) / &den,
        );
        let im = Float::with_val(
            p,
            ((&self.im * &o.re).complete(p) - (&self.re * &o.im).complete(p)) / &den,
        );
        CFloat::new(re, im)
    }

    pub fn neg(&self) -> CFloat {
        let p = self.prec();
        CFloat::new(
            Float::with_val(p, -&self.re),
            Float::with_val(p, -&self.im),
        )
    }

    /// Modulus |z| as a real float.
    pub fn abs(&self) -> Float {
        let p = self.prec();
        let h = (&self.re * &self.re).complete(p) + (&self.im * &self.im).complete(p);
        Float::with_val(p, h).sqrt()
    }

    /// exp(z) = e^re (cos im + i sin im).
    pub fn exp(&self) -> CFloat {
        let p = self.prec();
        let ex = Float::with_val(p, self.re.exp_ref());
        let (sin, cos) = Float::with_val(p, &self.im).sin_cos(Float::new(p));
        CFloat::new(
            Float::with_val(p, &ex * &cos),
            Float::with_val(p, &ex * &sin),
        )
    }

    /// sin(z) = sin(re)cosh(im) + i cos(re)sinh(im).
    pub fn sin(&self) -> CFloat {
        let p = self.prec();
        let (sin, cos) = Float::with_val(p, &self.re).sin_cos(Float::new(p));
        let (sinh, cosh) = Float::with_val(p, &self.im).sinh_cosh(Float::new(p));
        CFloat::new(
            Float::with_val(p, &sin * &cosh),
            Float::with_val(p, &cos * &sinh),
        )
    }

    /// Multiply by i in place of a full complex product.
    pub fn mul_i(&self) -> CFloat {
        let p = self.prec();
        CFloat::new(Float::with_val(p, -&self.im), Float::with_val(p, &self.re))
    }

    pub fn scale(&self, f: &Float) -> CFloat {
        let p = self.prec();
        CFloat::new(
            Float::with_val(p, &self.re * f),
            Float::with_val(p, &self.im * f),
        )
    }

    pub fn from_rational(prec: u32, r: &Rational) -> CFloat {
        CFloat::new(Float::with_val(prec, r), Float::with_val(prec, 0))
    }

    pub fn pi(prec: u32) -> Float {
        Float::with_val(prec, Constant::Pi)
    }
}

/// Element of the working field: exact rational or fixed-precision complex.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rational(Rational),
    Complex(CFloat),
}

/// Which backend a computation runs over; carries the precision for floats.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarKind {
    Rational,
    Complex(u32),
}

impl ScalarKind {
    pub fn zero(&self) -> Scalar {
        match self {
            ScalarKind::Rational => Scalar::Rational(Rational::new()),
            ScalarKind::Complex(p) => Scalar::Complex(CFloat::zero(*p)),
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match self {
            ScalarKind::Rational => Scalar::Rational(Rational::from(v)),
            ScalarKind::Complex(p) => Scalar::Complex(CFloat::from_i64(*p, v)),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ScalarKind::Rational)
    }
}

/// Reduced exact rational from an integer pair; `den = 0` is rejected.
pub fn rational(num: i64, den: i64) -> Result<Scalar> {
    if den == 0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(Scalar::Rational(Rational::from((num, den))))
}

impl Scalar {
    pub fn kind(&self) -> ScalarKind {
        match self {
            Scalar::Rational(_) => ScalarKind::Rational,
            Scalar::Complex(c) => ScalarKind::Complex(c.prec()),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => *r == 0,
            Scalar::Complex(c) => c.is_zero(),
        }
    }

    pub fn from_rational(r: Rational) -> Scalar {
        Scalar::Rational(r)
    }

    /// |x| as a real float (at the scalar's precision; 128 bits for rationals).
    pub fn abs_float(&self) -> Float {
        match self {
            Scalar::Rational(r) => {
                let f = Float::with_val(128, r);
                f.abs()
            }
            Scalar::Complex(c) => c.abs(),
        }
    }

    /// Integer power with negative exponents allowed (`self` nonzero for e < 0).
    pub fn pow_i64(&self, e: i64) -> Scalar {
        if e == 0 {
            return self.kind().one();
        }
        let base = if e < 0 {
            &self.kind().one() / self
        } else {
            self.clone()
        };
        let mut acc = self.kind().one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }

    /// Exact conversion to the complex backend (used by oracles and reports).
    pub fn to_cfloat(&self, prec: u32) -> CFloat {
        match self {
            Scalar::Rational(r) => CFloat::from_rational(prec, r),
            Scalar::Complex(c) => {
                assert_eq!(c.prec(), prec, "mixed-precision conversion");
                c.clone()
            }
        }
    }

    fn binop(
        &self,
        o: &Scalar,
        fr: impl Fn(&Rational, &Rational) -> Rational,
        fc: impl Fn(&CFloat, &CFloat) -> CFloat,
    ) -> Scalar {
        match (self, o) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(fr(a, b)),
            (Scalar::Complex(a), Scalar::Complex(b)) => Scalar::Complex(fc(a, b)),
            _ => panic!("mixed scalar kinds in arithmetic"),
        }
    }
}

impl Add for &Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        self.binop(o, |a, b| (a + b).complete(), CFloat::add)
    }
}

impl Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        self.binop(o, |a, b| (a - b).complete(), CFloat::sub)
    }
}

impl Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        self.binop(o, |a, b| (a * b).complete(), CFloat::mul)
    }
}

impl Div for &Scalar {
    type Output = Scalar;
    fn div(self, o: &Scalar) -> Scalar {
        assert!(!o.is_zero(), "division by zero scalar");
        self.binop(o, |a, b| (a / b).complete(), CFloat::div)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(r) => Scalar::Rational((-r).complete()),
            Scalar::Complex(c) => Scalar::Complex(c.neg()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Complex(c) => write!(f, "({} + {}i)", c.re, c.im),
        }
    }
}

/// How two scalars are declared equal: exact identity for rationals, or a
/// relative tolerance with an absolute floor for complex floats.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum EqPolicy {
    Exact,
    Relative { rel_tol: f64, abs_floor: f64 },
}

impl EqPolicy {
    pub fn relative(rel_tol: f64, abs_floor: f64) -> EqPolicy {
        EqPolicy::Relative { rel_tol, abs_floor }
    }

    /// Exact for the rational backend, the given tolerances otherwise.
    pub fn for_kind(kind: ScalarKind, rel_tol: f64, abs_floor: f64) -> EqPolicy {
        match kind {
            ScalarKind::Rational => EqPolicy::Exact,
            ScalarKind::Complex(_) => EqPolicy::Relative { rel_tol, abs_floor },
        }
    }

    fn floor(&self) -> f64 {
        match self {
            EqPolicy::Exact => 0.0,
            EqPolicy::Relative { abs_floor, .. } => *abs_floor,
        }
    }
}

/// a ~ b under the policy. Exact applies only to rationals, Relative only to
/// complex floats; operands of different variants are an error.
pub fn scalar_eq(a: &Scalar, b: &Scalar, policy: &EqPolicy) -> Result<bool> {
    match (a, b, policy) {
        (Scalar::Rational(x), Scalar::Rational(y), EqPolicy::Exact) => Ok(x == y),
        (Scalar::Rational(_), Scalar::Rational(_), EqPolicy::Relative { .. }) => {
            Err(Error::PolicyKindMismatch("Relative"))
        }
        (Scalar::Complex(_), Scalar::Complex(_), EqPolicy::Exact) => {
            Err(Error::PolicyKindMismatch("Exact"))
        }
        (Scalar::Complex(x), Scalar::Complex(y), EqPolicy::Relative { rel_tol, abs_floor }) => {
            let p = x.prec();
            let diff = x.sub(y).abs();
            let ax = x.abs();
            let ay = y.abs();
            let mx = if ax >= ay { ax } else { ay };
            let bound = Float::with_val(p, *rel_tol) * mx;
            let floor = Float::with_val(p, *abs_floor);
            let bound = if bound >= floor { bound } else { floor };
            Ok(diff <= bound)
        }
        _ => Err(Error::MixedScalarKinds),
    }
}

/// Equality of vectors up to one common nonzero scalar. The ratio is pinned at
/// the first index where both components exceed the policy floor.
pub fn proj_eq(v: &[Scalar], w: &[Scalar], policy: &EqPolicy) -> Result<bool> {
    if v.len() != w.len() {
        return Err(Error::LengthMismatch(v.len(), w.len()));
    }
    if v.is_empty() {
        return Err(Error::LengthMismatch(0, 0));
    }
    let floor = policy.floor();
    let above = |s: &Scalar| -> bool {
        if floor == 0.0 {
            !s.is_zero()
        } else {
            s.abs_float() > floor
        }
    };
    let v_live = v.iter().any(above);
    let w_live = w.iter().any(above);
    if !v_live && !w_live {
        return Err(Error::AllZeroVectors);
    }
    let pivot = match v.iter().zip(w).position(|(a, b)| above(a) && above(b)) {
        Some(p) => p,
        // nonzero supports that never overlap cannot be proportional
        None => return Ok(false),
    };
    let c = &w[pivot] / &v[pivot];
    for (a, b) in v.iter().zip(w) {
        if !scalar_eq(&(&c * a), b, policy)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Deterministic total order on rationals (used for pivoting tie-breaks and
/// stable test output); floats compare by modulus.
pub fn abs_cmp(a: &Scalar, b: &Scalar) -> Ordering {
    match (a, b) {
        (Scalar::Rational(x), Scalar::Rational(y)) => {
            let ax = x.clone().abs();
            let ay = y.clone().abs();
            ax.cmp(&ay)
        }
        _ => {
            let ax = a.abs_float();
            let ay = b.abs_float();
            ax.partial_cmp(&ay).unwrap_or(Ordering::Equal)
        }
    }
}

/// Integer factorial as a scalar of the requested kind.
pub fn factorial(kind: ScalarKind, n: usize) -> Scalar {
    let f = Integer::factorial(n as u32).complete();
    match kind {
        ScalarKind::Rational => Scalar::Rational(Rational::from(f)),
        ScalarKind::Complex(p) => Scalar::Complex(CFloat::new(
            Float::with_val(p, &f),
            Float::with_val(p, 0),
        )),
    }
}

/// (-1)^e as a scalar.
pub fn sign(kind: ScalarKind, e: i64) -> Scalar {
    kind.from_i64(if e.rem_euclid(2) == 0 { 1 } else { -1 })
}

// ---- serialization -------------------------------------------------------

/// Decimal digits sufficient to round-trip a binary precision.
fn digits_for(prec: u32) -> usize {
    (prec as f64 * std::f64::consts::LOG10_2).ceil() as usize + 3
}

fn float_to_string(f: &Float) -> String {
    f.to_string_radix(10, Some(digits_for(f.prec())))
}

impl Scalar {
    /// JSON form: rationals as "p/q", complex as ["re", "im", bits].
    pub fn to_json(&self) -> serde_json::Value {
        match self {
            Scalar::Rational(r) => serde_json::Value::String(r.to_string()),
            Scalar::Complex(c) => serde_json::json!([
                float_to_string(&c.re),
                float_to_string(&c.im),
                c.prec()
            ]),
        }
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Scalar> {
        match v {
            serde_json::Value::String(s) => parse_rational(s),
            serde_json::Value::Number(n) => {
                let i = n
                    .as_i64()
                    .ok_or_else(|| Error::InvalidInput(format!("non-integer scalar {n}")))?;
                Ok(Scalar::Rational(Rational::from(i)))
            }
            serde_json::Value::Array(a) if a.len() == 3 => {
                let prec = a[2]
                    .as_u64()
                    .ok_or_else(|| Error::InvalidInput("bad precision field".into()))?
                    as u32;
                let re = parse_float(a[0].as_str().unwrap_or_default(), prec)?;
                let im = parse_float(a[1].as_str().unwrap_or_default(), prec)?;
                Ok(Scalar::Complex(CFloat::new(re, im)))
            }
            _ => Err(Error::InvalidInput(format!("bad scalar literal: {v}"))),
        }
    }
}

pub fn parse_rational(s: &str) -> Result<Scalar> {
    let r = Rational::parse(s)
        .map_err(|e| Error::InvalidInput(format!("bad rational '{s}': {e}")))?;
    Ok(Scalar::Rational(r.complete()))
}

fn parse_float(s: &str, prec: u32) -> Result<Float> {
    let f = Float::parse(s).map_err(|e| Error::InvalidInput(format!("bad float '{s}': {e}")))?;
    Ok(Float::with_val(prec, f))
}

/// The per-operation rounding bound 2^(1-prec) as a float (contract check).
pub fn ulp_bound(prec: u32) -> Float {
    Float::with_val(prec, 2).pow(1i32 - prec as i32)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Scalar {
        rational(n, d).unwrap()
    }

    #[test]
    fn rational_reduces_and_normalizes() {
        assert_eq!(q(2, 4), q(1, 2));
        assert_eq!(q(3, -6), q(-1, 2));
        assert_eq!(q(0, 7), q(0, 1));
        assert_eq!(rational(1, 0), Err(Error::ZeroDenominator));
        if let Scalar::Rational(r) = q(3, -6) {
            assert!(r.denom() > &0);
        }
    }

    #[test]
    fn scalar_eq_policies() {
        assert!(scalar_eq(&q(1, 2), &q(2, 4), &EqPolicy::Exact).unwrap());
        let a = Scalar::Complex(CFloat::from_f64(64, 1.0, 0.0));
        let b = Scalar::Complex(CFloat::from_f64(64, 1.0 + 1e-15, 0.0));
        let c = Scalar::Complex(CFloat::from_f64(64, 1.01, 0.0));
        let pol = EqPolicy::relative(1e-9, 0.0);
        assert!(scalar_eq(&a, &b, &pol).unwrap());
        assert!(!scalar_eq(&a, &c, &pol).unwrap());
        assert_eq!(
            scalar_eq(&a, &q(1, 1), &pol),
            Err(Error::MixedScalarKinds)
        );
        assert_eq!(
            scalar_eq(&q(1, 1), &q(1, 1), &pol),
            Err(Error::PolicyKindMismatch("Relative"))
        );
    }

    #[test]
    fn proj_eq_basics() {
        let v = [q(1, 1), q(2, 1), q(3, 1)];
        let w = [q(2, 1), q(4, 1), q(6, 1)];
        assert!(proj_eq(&v, &w, &EqPolicy::Exact).unwrap());
        let v = [q(1, 1), q(0, 1), q(3, 1)];
        let w = [q(2, 1), q(0, 1), q(6, 1)];
        assert!(proj_eq(&v, &w, &EqPolicy::Exact).unwrap());
        let v = [q(1, 1), q(2, 1)];
        let w = [q(2, 1), q(5, 1)];
        assert!(!proj_eq(&v, &w, &EqPolicy::Exact).unwrap());
        let z = [q(0, 1), q(0, 1)];
        assert_eq!(
            proj_eq(&z, &z, &EqPolicy::Exact),
            Err(Error::AllZeroVectors)
        );
    }

    #[test]
    fn complex_roundtrip_json() {
        let s = Scalar::Complex(CFloat::from_f64(256, 0.125, -3.5));
        let v = s.to_json();
        assert_eq!(Scalar::from_json(&v).unwrap(), s);
        let r = q(-7, 3);
        assert_eq!(Scalar::from_json(&r.to_json()).unwrap(), r);
    }

    #[test]
    fn pow_and_neg() {
        assert_eq!(q(2, 3).pow_i64(-2), q(9, 4));
        assert_eq!((-&q(1, 2)), q(-1, 2));
    }
}
