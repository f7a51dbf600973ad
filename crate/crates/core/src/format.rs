//! JSON encoding of scalars, elements, matrices and algebra files.
//!
//! Algebra file:
//!
//! ```json
//! {"n": 2, "field": "rational", "A": [["1/2","1/2"],["1/2","0"]], "b": ["1/2","0"], "label": "C6(1,1)"}
//! ```
//!
//! Rationals are strings `"p/q"` or `"p"`. Gaussian rationals are
//! `{"re": "p/q", "im": "p/q"}`; elements of `Q(√d)` add `"d"`. Float
//! entries may be JSON numbers or `{"re": x, "im": y}` objects.

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};

use crate::algebra::{Algebra, Element};
use crate::error::{EacpError, Result};
use crate::matrix::Matrix;
use crate::scalar::{fmt_rational, parse_rational, Field, Scalar, DEFAULT_EPSILON};

fn perr(field: &str, message: impl Into<String>) -> EacpError {
    EacpError::Parse { field: field.to_string(), message: message.into() }
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    match s {
        Scalar::Rational(r) => Value::String(fmt_rational(r)),
        Scalar::Quadratic { re, im, d: -1 } => json!({"re": fmt_rational(re), "im": fmt_rational(im)}),
        Scalar::Quadratic { re, im, d } => json!({"re": fmt_rational(re), "im": fmt_rational(im), "d": d}),
        Scalar::Float { re, im, .. } if *im == 0.0 => json!(re),
        Scalar::Float { re, im, .. } => json!({"re": re, "im": im}),
    }
}

fn rational_field(v: &Value, path: &str) -> Result<BigRational> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|e| match e {
            EacpError::Parse { message, .. } => perr(path, message),
            other => other,
        }),
        Value::Number(n) if n.is_i64() => Ok(BigRational::from_integer(n.as_i64().unwrap().into())),
        _ => Err(perr(path, "expected a rational string such as \"1/2\"")),
    }
}

fn float_part(v: &Value, path: &str) -> Result<f64> {
    match v {
        Value::Number(n) => n.as_f64().ok_or_else(|| perr(path, "number out of range")),
        Value::String(_) => {
            let x = Scalar::rational(rational_field(v, path)?).to_complex().0;
            if x.is_finite() { Ok(x) } else { Err(perr(path, "number out of range")) }
        }
        _ => Err(perr(path, "expected a number")),
    }
}

/// Reads one scalar. `field` is the declared field when known; `path` names
/// the JSON location for error messages.
pub fn scalar_from_json(v: &Value, field: Option<Field>, path: &str) -> Result<Scalar> {
    if let Some(Field::Float(eps)) = field {
        return match v {
            Value::Object(o) => {
                let re = o.get("re").map(|x| float_part(x, &format!("{path}.re"))).transpose()?.unwrap_or(0.0);
                let im = o.get("im").map(|x| float_part(x, &format!("{path}.im"))).transpose()?.unwrap_or(0.0);
                Ok(Scalar::float(re, im, eps))
            }
            other => Ok(Scalar::float(float_part(other, path)?, 0.0, eps)),
        };
    }
    let s = match v {
        Value::Object(o) => {
            for key in o.keys() {
                if !["re", "im", "d"].contains(&key.as_str()) {
                    return Err(perr(path, format!("unexpected key `{key}`")));
                }
            }
            let re = match o.get("re") {
                Some(x) => rational_field(x, &format!("{path}.re"))?,
                None => BigRational::from_integer(0.into()),
            };
            let im = match o.get("im") {
                Some(x) => rational_field(x, &format!("{path}.im"))?,
                None => BigRational::from_integer(0.into()),
            };
            let d = match (o.get("d"), field) {
                (Some(d), _) => d.as_i64().ok_or_else(|| perr(&format!("{path}.d"), "expected an integer"))?,
                (None, Some(Field::Quadratic(d))) => d,
                (None, _) => -1,
            };
            if d == 0 || d == 1 {
                return Err(perr(&format!("{path}.d"), "d must be a non-square integer"));
            }
            Scalar::quadratic(re, im, d)
        }
        other => Scalar::rational(rational_field(other, path)?),
    };
    match field {
        Some(f) => f.embed(&s).map_err(|e| perr(path, e.to_string())),
        None => Ok(s),
    }
}

pub fn vector_to_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_to_json).collect())
}

pub fn vector_from_json(v: &Value, field: Option<Field>, path: &str) -> Result<Vec<Scalar>> {
    v.as_array()
        .ok_or_else(|| perr(path, "expected an array"))?
        .iter()
        .enumerate()
        .map(|(i, x)| scalar_from_json(x, field, &format!("{path}[{i}]")))
        .collect()
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array((0..m.rows()).map(|i| vector_to_json(m.row(i))).collect())
}

pub fn matrix_from_json(v: &Value, field: Option<Field>, path: &str) -> Result<Matrix> {
    let rows = v
        .as_array()
        .ok_or_else(|| perr(path, "expected an array of rows"))?
        .iter()
        .enumerate()
        .map(|(i, row)| vector_from_json(row, field, &format!("{path}[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    if let Some(first) = rows.first() {
        if let Some(i) = rows.iter().position(|r| r.len() != first.len()) {
            return Err(perr(&format!("{path}[{i}]"), "ragged row"));
        }
    }
    Matrix::from_rows(rows)
}

/// `{"alpha": [...], "beta": ..., "text": "..."}`; `text` is ignored on input.
pub fn element_to_json(x: &Element) -> Value {
    json!({
        "alpha": vector_to_json(x.alpha()),
        "beta": scalar_to_json(x.beta()),
        "text": x.display(),
    })
}

pub fn element_from_json(v: &Value, field: Option<Field>) -> Result<Element> {
    let alpha = vector_from_json(v.get("alpha").ok_or_else(|| perr("alpha", "missing"))?, field, "alpha")?;
    let beta = scalar_from_json(v.get("beta").ok_or_else(|| perr("beta", "missing"))?, field, "beta")?;
    Ok(Element::new(alpha, beta))
}

pub fn field_to_json(f: Field, obj: &mut Map<String, Value>) {
    obj.insert("field".into(), json!(f.name()));
    match f {
        Field::Quadratic(d) => {
            obj.insert("d".into(), json!(d));
        }
        Field::Float(eps) => {
            obj.insert("epsilon".into(), json!(eps));
        }
        _ => {}
    }
}

pub fn algebra_to_json(alg: &Algebra) -> Value {
    let mut obj = Map::new();
    obj.insert("n".into(), json!(alg.n()));
    field_to_json(alg.field(), &mut obj);
    obj.insert("A".into(), matrix_to_json(alg.a()));
    obj.insert("b".into(), vector_to_json(alg.b()));
    if let Some(label) = alg.label() {
        obj.insert("label".into(), json!(label));
    }
    Value::Object(obj)
}

/// Parses the `field` entry together with its `d` / `epsilon` companions.
pub fn parse_field(name: &str, d: Option<i64>, epsilon: Option<f64>) -> Result<Field> {
    match name {
        "rational" => Ok(Field::Rational),
        "gaussian" => Ok(Field::Gaussian),
        "quadratic" => {
            let d = d.ok_or_else(|| perr("d", "quadratic field needs `d`"))?;
            match Scalar::quadratic(BigRational::zero(), BigRational::one(), d) {
                Scalar::Quadratic { d: -1, .. } => Ok(Field::Gaussian),
                Scalar::Quadratic { d, .. } => Ok(Field::Quadratic(d)),
                _ => Err(perr("d", "d must not be a perfect square")),
            }
        }
        "float" => {
            let eps = epsilon.unwrap_or(DEFAULT_EPSILON);
            if eps.is_nan() || eps <= 0.0 {
                return Err(perr("epsilon", "must be positive"));
            }
            Ok(Field::Float(eps))
        }
        other => Err(perr("field", format!("unknown field `{other}`"))),
    }
}

pub fn algebra_from_value(v: &Value) -> Result<Algebra> {
    let obj = v.as_object().ok_or_else(|| perr("<root>", "expected a JSON object"))?;
    let d = obj.get("d").map(|x| x.as_i64().ok_or_else(|| perr("d", "expected an integer"))).transpose()?;
    let eps = obj
        .get("epsilon")
        .map(|x| match x {
            Value::String(s) => parse_rational(s).map(|r| Scalar::rational(r).to_complex().0),
            other => other.as_f64().ok_or_else(|| perr("epsilon", "expected a number")),
        })
        .transpose()?;
    let field = match obj.get("field") {
        None => None,
        Some(Value::String(s)) => Some(parse_field(s, d, eps)?),
        Some(_) => return Err(perr("field", "expected a string")),
    };
    let a = matrix_from_json(obj.get("A").ok_or_else(|| perr("A", "missing"))?, field, "A")?;
    let b = vector_from_json(obj.get("b").ok_or_else(|| perr("b", "missing"))?, field, "b")?;
    if let Some(n) = obj.get("n") {
        let n = n.as_u64().ok_or_else(|| perr("n", "expected a positive integer"))? as usize;
        if n == 0 {
            return Err(perr("n", "must be positive"));
        }
        if b.len() != n {
            return Err(perr("b", format!("length {} does not match n = {n}", b.len())));
        }
        if a.rows() != n {
            return Err(perr("A", format!("{} rows, n = {n}", a.rows())));
        }
    }
    if b.is_empty() {
        return Err(perr("b", "algebra needs n ≥ 1"));
    }
    if a.rows() != b.len() || a.cols() != b.len() {
        return Err(perr("A", format!("must be {0}x{0}", b.len())));
    }
    let alg = match field {
        Some(f) => Algebra::with_field(a, b, f)?,
        None => Algebra::new(a, b)?,
    };
    Ok(match obj.get("label") {
        Some(Value::String(l)) => alg.with_label(l.clone()),
        Some(_) => return Err(perr("label", "expected a string")),
        None => alg,
    })
}

pub fn algebra_from_json(text: &str) -> Result<Algebra> {
    let v: Value = serde_json::from_str(text).map_err(|e| perr("<root>", e.to_string()))?;
    algebra_from_value(&v)
}
