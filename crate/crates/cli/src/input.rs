use num_bigint::BigInt;
use num_rational::BigRational;
use serde_json::Value;

use quadzeta::padic::{Exact, FieldDesc};
use quadzeta::quadform::QuadPoly;
use quadzeta::{Error, Result};

fn bad(msg: impl Into<String>) -> Error {
    Error::Invalid(msg.into())
}

fn parse_int(v: &Value) -> Result<BigInt> {
    match v {
        Value::Number(n) => n.to_string().parse().map_err(|_| bad(format!("not an integer: {n}"))),
        Value::String(s) => s.trim().parse().map_err(|_| bad(format!("not an integer: {s:?}"))),
        _ => Err(bad(format!("expected an integer, got {v}"))),
    }
}

fn parse_rational(v: &Value) -> Result<BigRational> {
    if let Value::String(s) = v {
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad(format!("bad numerator in {s:?}")))?;
            let d: BigInt = d.trim().parse().map_err(|_| bad(format!("bad denominator in {s:?}")))?;
            if d == BigInt::from(0) {
                return Err(Error::DivisionByZero);
            }
            return Ok(BigRational::new(n, d));
        }
    }
    Ok(BigRational::from_integer(parse_int(v)?))
}

/// An entry is a rational, or a list of rationals giving the coordinates in
/// the power basis of the generator.
fn parse_entry(field: &FieldDesc, v: &Value) -> Result<Exact> {
    match v {
        Value::Array(items) => {
            let coeffs = items.iter().map(parse_rational).collect::<Result<Vec<_>>>()?;
            if coeffs.len() > field.f() {
                return Err(bad("entry has more coordinates than the degree"));
            }
            Ok(Exact::from_rationals(field, coeffs))
        }
        _ => Ok(Exact::from_rationals(field, vec![parse_rational(v)?])),
    }
}

fn small(v: &Value, name: &str) -> Result<u64> {
    parse_int(v)?.try_into().map_err(|_| bad(format!("{name} out of range")))
}

/// Parses `{p, f, modulus, precision, matrix, linear, constant}`.
pub fn parse_poly(v: &Value) -> Result<QuadPoly> {
    let obj = v.as_object().ok_or_else(|| bad("input must be a JSON object"))?;
    for key in obj.keys() {
        if !["p", "f", "modulus", "precision", "matrix", "linear", "constant"].contains(&key.as_str()) {
            return Err(bad(format!("unknown key {key:?}")));
        }
    }
    let p = small(obj.get("p").ok_or_else(|| bad("missing p"))?, "p")?;
    let field = match obj.get("modulus") {
        Some(Value::Array(m)) => {
            let coeffs = m
                .iter()
                .map(|c| {
                    parse_int(c).and_then(|c| i64::try_from(c).map_err(|_| bad("modulus coefficient out of range")))
                })
                .collect::<Result<Vec<_>>>()?;
            let field = FieldDesc::with_modulus(p, coeffs)?;
            if let Some(f) = obj.get("f") {
                if small(f, "f")? as usize != field.f() {
                    return Err(bad("f disagrees with the modulus degree"));
                }
            }
            field
        }
        Some(_) => return Err(bad("modulus must be a list")),
        None => FieldDesc::new(p, obj.get("f").map(|f| small(f, "f")).transpose()?.unwrap_or(1) as usize)?,
    };
    let rows = match obj.get("matrix") {
        Some(Value::Array(rows)) => rows.clone(),
        None => vec![],
        Some(_) => return Err(bad("matrix must be a list of rows")),
    };
    let n = rows.len();
    let mut m = Vec::with_capacity(n);
    for row in &rows {
        let row = row.as_array().ok_or_else(|| bad("matrix rows must be lists"))?;
        if row.len() != n {
            return Err(bad("matrix must be square"));
        }
        m.push(row.iter().map(|e| parse_entry(&field, e)).collect::<Result<Vec<_>>>()?);
    }
    let b = match obj.get("linear") {
        Some(Value::Array(b)) => b.iter().map(|e| parse_entry(&field, e)).collect::<Result<Vec<_>>>()?,
        None => vec![Exact::zero(&field); n],
        Some(_) => return Err(bad("linear must be a list")),
    };
    let c = match obj.get("constant") {
        Some(c) => parse_entry(&field, c)?,
        None => Exact::zero(&field),
    };
    let poly = QuadPoly::new(&field, m, b, c)?;
    Ok(match obj.get("precision") {
        Some(k) => poly.with_precision(small(k, "precision")? as u32),
        None => poly,
    })
}
