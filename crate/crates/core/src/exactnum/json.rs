//! JSON wire format for exact values. Every number is a decimal string.
//!
//! Univariate: `{"vars": 1, "coeffs": ["2", "-5", "1"]}` (ascending).
//! Multivariate: `{"vars": d, "coeffs": [[[e1, ..., ed], "num/den"], ...]}`.

use serde_json::{json, Value};

use super::mpoly::{ExactPoly, MPoly};
use super::poly::Poly;
use super::scalar::{self, Scalar};
use crate::error::{Error, Result};

pub fn scalar_to_json(s: &Scalar) -> Value {
    Value::String(scalar::to_decimal(s))
}

pub fn scalars_to_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_to_json).collect())
}

pub fn poly_to_json(p: &Poly) -> Value {
    json!({ "vars": 1, "coeffs": p.to_decimal_strings() })
}

pub fn exact_poly_to_json(p: &ExactPoly) -> Value {
    match p {
        ExactPoly::Uni(p) => poly_to_json(p),
        ExactPoly::Multi(m) => {
            let coeffs: Vec<Value> = m
                .terms()
                .iter()
                .map(|(e, c)| json!([e, scalar::to_decimal(c)]))
                .collect();
            json!({ "vars": m.nvars(), "coeffs": coeffs })
        }
    }
}

pub fn exact_poly_from_json(v: &Value) -> Result<ExactPoly> {
    let bad = |msg: &str| Error::InvalidInput(format!("polynomial json: {msg}"));
    let vars = v
        .get("vars")
        .and_then(Value::as_u64)
        .ok_or_else(|| bad("missing vars"))? as usize;
    let coeffs = v
        .get("coeffs")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("missing coeffs"))?;
    if vars == 1 && coeffs.iter().all(Value::is_string) {
        let cs = coeffs
            .iter()
            .map(|c| scalar::parse_decimal(c.as_str().unwrap_or_default()))
            .collect::<Result<Vec<_>>>()?;
        return Ok(ExactPoly::Uni(Poly::new(cs)));
    }
    let mut terms = Vec::with_capacity(coeffs.len());
    for t in coeffs {
        let pair = t
            .as_array()
            .filter(|a| a.len() == 2)
            .ok_or_else(|| bad("term"))?;
        let exps = pair[0]
            .as_array()
            .ok_or_else(|| bad("exponent vector"))?
            .iter()
            .map(|e| e.as_u64().map(|e| e as u32).ok_or_else(|| bad("exponent")))
            .collect::<Result<Vec<u32>>>()?;
        if exps.len() != vars {
            return Err(bad("exponent arity"));
        }
        let c = scalar::parse_decimal(pair[1].as_str().ok_or_else(|| bad("coefficient"))?)?;
        terms.push((exps, c));
    }
    Ok(ExactPoly::from_sparse(MPoly::from_terms(vars, terms)))
}
