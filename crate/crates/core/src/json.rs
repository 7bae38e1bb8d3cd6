//! JSON wire formats.
//!
//! * scalar: a number in float mode, a `"p/q"` string in exact mode. Either
//!   form is accepted on input in both modes.
//! * complex: `[re, im]`
//! * spinor: `[[re, im], [re, im], [re, im], [re, im]]`
//! * matrix: 4 rows of 4 complex entries; a flat list of 16 entries is also accepted.
//! * candidate: `{"matrix": <matrix>, "antilinear": bool, "label": string?}`
//! * bilinears: `{"sigma", "omega", "J", "K", "S", "fpk_max_residual"}`

use num_complex::Complex;
use serde_json::{json, Map, Value};

use crate::algebra::scalar::{format_rational, parse_rational};
use crate::algebra::{standard, Matrix4, Rational, Real, RealMatrix, Scalar};
use crate::bilinear::{BilinearSet, Spinor};
use crate::error::{Error, Result};
use crate::symmetry::{BetaMap, SymmetryCandidate};

/// A real field with a JSON encoding.
pub trait JsonReal: Real {
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self>;
}

fn parse_err(msg: impl Into<String>) -> Error {
    Error::Parse(msg.into())
}

impl JsonReal for f64 {
    fn to_json(&self) -> Value {
        json!(self)
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Number(n) => n.as_f64().ok_or_else(|| parse_err(format!("number out of range: {n}"))),
            Value::String(s) => parse_rational(s).map(|r| r.as_f64()).map_err(parse_err),
            other => Err(parse_err(format!("expected a number, got {other}"))),
        }
    }
}

impl JsonReal for Rational {
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }

    fn from_json(v: &Value) -> Result<Self> {
        match v {
            Value::Number(n) => parse_rational(&n.to_string()).map_err(parse_err),
            Value::String(s) => parse_rational(s).map_err(parse_err),
            other => Err(parse_err(format!("expected a rational, got {other}"))),
        }
    }
}

/// Parses JSON text, reporting line and column on failure.
pub fn parse_json(text: &str) -> Result<Value> {
    serde_json::from_str(text)
        .map_err(|e| parse_err(format!("line {}, column {}: {e}", e.line(), e.column())))
}

fn array<'a>(v: &'a Value, len: usize, what: &str) -> Result<&'a Vec<Value>> {
    match v {
        Value::Array(a) if a.len() == len => Ok(a),
        Value::Array(a) => Err(parse_err(format!("{what}: expected {len} entries, got {}", a.len()))),
        other => Err(parse_err(format!("{what}: expected an array, got {other}"))),
    }
}

pub fn scalar_to_json<R: JsonReal>(z: &Scalar<R>) -> Value {
    json!([z.re.to_json(), z.im.to_json()])
}

pub fn scalar_from_json<R: JsonReal>(v: &Value) -> Result<Scalar<R>> {
    let a = array(v, 2, "complex number")?;
    Ok(Complex::new(R::from_json(&a[0])?, R::from_json(&a[1])?))
}

pub fn spinor_to_json<R: JsonReal>(psi: &Spinor<R>) -> Value {
    Value::Array(psi.0.iter().map(scalar_to_json).collect())
}

pub fn spinor_from_json<R: JsonReal>(v: &Value) -> Result<Spinor<R>> {
    let a = array(v, 4, "spinor")?;
    let mut out = Spinor::zero();
    for (slot, item) in out.0.iter_mut().zip(a) {
        *slot = scalar_from_json(item)?;
    }
    Ok(out)
}

pub fn matrix_to_json<R: JsonReal>(m: &Matrix4<R>) -> Value {
    Value::Array(m.0.iter().map(|row| Value::Array(row.iter().map(scalar_to_json).collect())).collect())
}

pub fn matrix_from_json<R: JsonReal>(v: &Value) -> Result<Matrix4<R>> {
    let entries: Vec<&Value> = match v {
        Value::Array(a) if a.len() == 16 => a.iter().collect(),
        Value::Array(a) if a.len() == 4 => {
            let mut all = Vec::with_capacity(16);
            for row in a {
                all.extend(array(row, 4, "matrix row")?.iter());
            }
            all
        }
        other => return Err(parse_err(format!("matrix: expected 4 rows of 4 entries or 16 entries, got {other}"))),
    };
    let mut m = Matrix4::zero();
    for (k, e) in entries.into_iter().enumerate() {
        m[(k / 4, k % 4)] = scalar_from_json(e)?;
    }
    Ok(m)
}

/// `identity`, `gamma0`..`gamma3`, `gamma5`, optionally prefixed by `-`.
pub fn named_matrix<R: Real>(name: &str) -> Option<Matrix4<R>> {
    let (negate, base) = match name.trim().strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, name.trim()),
    };
    let basis = standard::<R>();
    let m = match base {
        "identity" | "I" => Matrix4::identity(),
        "gamma0" => basis.gamma[0].clone(),
        "gamma1" => basis.gamma[1].clone(),
        "gamma2" => basis.gamma[2].clone(),
        "gamma3" => basis.gamma[3].clone(),
        "gamma5" => basis.gamma5.clone(),
        _ => return None,
    };
    Some(if negate { -&m } else { m })
}

pub fn candidate_to_json<R: JsonReal>(s: &SymmetryCandidate<R>) -> Value {
    let mut obj = Map::new();
    obj.insert("matrix".into(), matrix_to_json(&s.matrix));
    obj.insert("antilinear".into(), Value::Bool(s.antilinear));
    if let Some(l) = &s.label {
        obj.insert("label".into(), Value::String(l.clone()));
    }
    Value::Object(obj)
}

/// Accepts a candidate object, a bare matrix, or a matrix name.
pub fn candidate_from_json<R: JsonReal>(v: &Value) -> Result<SymmetryCandidate<R>> {
    match v {
        Value::String(name) => named_matrix(name)
            .map(|m| SymmetryCandidate::new(m).with_label(name.trim()))
            .ok_or_else(|| parse_err(format!("unknown matrix name `{name}`"))),
        Value::Object(obj) => {
            let m = obj.get("matrix").ok_or_else(|| parse_err("candidate: missing `matrix`"))?;
            let matrix = match m {
                Value::String(_) => candidate_from_json::<R>(m)?.matrix,
                _ => matrix_from_json(m)?,
            };
            let antilinear = match obj.get("antilinear") {
                None => false,
                Some(Value::Bool(b)) => *b,
                Some(other) => return Err(parse_err(format!("candidate: `antilinear` must be a boolean, got {other}"))),
            };
            let label = match obj.get("label") {
                None | Some(Value::Null) => None,
                Some(Value::String(s)) => Some(s.clone()),
                Some(other) => return Err(parse_err(format!("candidate: `label` must be a string, got {other}"))),
            };
            Ok(SymmetryCandidate { matrix, antilinear, label })
        }
        _ => Ok(SymmetryCandidate::new(matrix_from_json(v)?)),
    }
}

fn vec_to_json<R: JsonReal>(v: &[R]) -> Value {
    Value::Array(v.iter().map(JsonReal::to_json).collect())
}

fn vec4_from_json<R: JsonReal>(v: &Value, what: &str) -> Result<[R; 4]> {
    let a = array(v, 4, what)?;
    Ok([R::from_json(&a[0])?, R::from_json(&a[1])?, R::from_json(&a[2])?, R::from_json(&a[3])?])
}

pub fn bilinears_to_json<R: JsonReal>(b: &BilinearSet<R>, fpk_max_residual: &R) -> Value {
    json!({
        "sigma": b.sigma.to_json(),
        "omega": b.omega.to_json(),
        "J": vec_to_json(&b.j),
        "K": vec_to_json(&b.k),
        "S": Value::Array(b.s.iter().map(|row| vec_to_json(row)).collect()),
        "fpk_max_residual": fpk_max_residual.to_json(),
    })
}

pub fn bilinears_from_json<R: JsonReal>(v: &Value) -> Result<(BilinearSet<R>, R)> {
    let get = |k: &str| v.get(k).ok_or_else(|| parse_err(format!("bilinears: missing `{k}`")));
    let rows = array(get("S")?, 4, "S")?;
    let mut s: [[R; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| R::zero()));
    for (dst, row) in s.iter_mut().zip(rows) {
        *dst = vec4_from_json(row, "S row")?;
    }
    let b = BilinearSet {
        sigma: R::from_json(get("sigma")?)?,
        omega: R::from_json(get("omega")?)?,
        j: vec4_from_json(get("J")?, "J")?,
        k: vec4_from_json(get("K")?, "K")?,
        s,
    };
    Ok((b, R::from_json(get("fpk_max_residual")?)?))
}

pub fn real_matrix_to_json<R: JsonReal>(m: &RealMatrix<R>) -> Value {
    Value::Array(m.rows().iter().map(|r| vec_to_json(r)).collect())
}

pub fn beta_map_to_json<R: JsonReal>(b: &BetaMap<R>) -> Value {
    json!({
        "beta_scalar": b.beta_scalar.to_json(),
        "beta_pseudo": b.beta_pseudo.to_json(),
        "L_J": real_matrix_to_json(&b.l_j),
        "L_K": real_matrix_to_json(&b.l_k),
        "L_S": real_matrix_to_json(&b.l_s),
        "strict": b.strict,
    })
}
