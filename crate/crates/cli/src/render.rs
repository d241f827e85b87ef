use num_rational::BigRational;
use serde_json::{json, Value};

use quadzeta::ratfunc::{Poly, RationalFunction};

pub fn rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn rationals(v: &[BigRational]) -> Value {
    Value::Array(v.iter().map(|c| Value::String(rational(c))).collect())
}

pub fn list(v: &[BigRational]) -> String {
    v.iter().map(rational).collect::<Vec<_>>().join(", ")
}

/// Coefficients low degree first as `[numerator, denominator]` strings.
pub fn poly(p: &Poly) -> Value {
    json!(RationalFunction::coefficient_pairs(p))
}

pub fn rational_function(z: &RationalFunction) -> Value {
    json!({
        "text": z.to_string(),
        "numerator": poly(z.num()),
        "denominator": poly(z.den()),
    })
}
