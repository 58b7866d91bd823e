//! JSON form of a truncated series:
//!
//! ```text
//! {"series": name, "ring": "int", "basis": "S", "truncation": N,
//!  "components": [{"degree": n, "terms": [{"composition": [..], "coeff": ..}]}]}
//! ```
//!
//! Every degree `0..=N` gets a component, empty ones included, and terms keep
//! the series' own order.

use serde_json::{json, Value};
use thiserror::Error;

use crate::coeffring::{CoeffCodec, CoeffError};
use crate::combinat::Composition;
use crate::ncsf::{Basis, NcsfSeries};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JsonError {
    #[error("missing or malformed field `{0}`")]
    Field(&'static str),
    #[error("ring is {found}, expected {expected}")]
    Ring {
        expected: &'static str,
        found: String,
    },
    #[error("unknown basis {0}")]
    Basis(String),
    #[error("term of weight {weight} listed under degree {degree}")]
    Degree { degree: u64, weight: u32 },
    #[error("component of degree {degree} beyond truncation {truncation}")]
    BeyondTruncation { degree: u64, truncation: u32 },
    #[error("invalid composition {0}")]
    Composition(String),
    #[error(transparent)]
    Coeff(#[from] CoeffError),
}

pub fn series_to_json<C: CoeffCodec>(name: &str, s: &NcsfSeries<C>) -> Value {
    let components: Vec<Value> = s
        .components()
        .iter()
        .enumerate()
        .map(|(d, h)| {
            let terms: Vec<Value> = h
                .terms()
                .map(|(comp, c)| json!({"composition": comp.parts(), "coeff": c.to_json()}))
                .collect();
            json!({"degree": d, "terms": terms})
        })
        .collect();
    json!({
        "series": name,
        "ring": C::RING,
        "basis": s.basis().to_string(),
        "truncation": s.truncation(),
        "components": components,
    })
}

/// Inverse of [`series_to_json`]; returns the series name as well.
pub fn series_from_json<C: CoeffCodec>(v: &Value) -> Result<(String, NcsfSeries<C>), JsonError> {
    let name = v
        .get("series")
        .and_then(Value::as_str)
        .ok_or(JsonError::Field("series"))?;
    let ring = v
        .get("ring")
        .and_then(Value::as_str)
        .ok_or(JsonError::Field("ring"))?;
    if ring != C::RING {
        return Err(JsonError::Ring {
            expected: C::RING,
            found: ring.to_string(),
        });
    }
    let basis_text = v
        .get("basis")
        .and_then(Value::as_str)
        .ok_or(JsonError::Field("basis"))?;
    let basis: Basis = basis_text
        .parse()
        .map_err(|_| JsonError::Basis(basis_text.to_string()))?;
    let truncation = v
        .get("truncation")
        .and_then(Value::as_u64)
        .and_then(|n| u32::try_from(n).ok())
        .ok_or(JsonError::Field("truncation"))?;
    let components = v
        .get("components")
        .and_then(Value::as_array)
        .ok_or(JsonError::Field("components"))?;
    let mut terms = Vec::new();
    for comp in components {
        let degree = comp
            .get("degree")
            .and_then(Value::as_u64)
            .ok_or(JsonError::Field("degree"))?;
        if degree > u64::from(truncation) {
            return Err(JsonError::BeyondTruncation { degree, truncation });
        }
        let items = comp
            .get("terms")
            .and_then(Value::as_array)
            .ok_or(JsonError::Field("terms"))?;
        for item in items {
            let parts = item
                .get("composition")
                .and_then(Value::as_array)
                .ok_or(JsonError::Field("composition"))?
                .iter()
                .map(|p| p.as_u64().and_then(|p| u32::try_from(p).ok()))
                .collect::<Option<Vec<u32>>>()
                .ok_or(JsonError::Field("composition"))?;
            let comp = Composition::new(parts.clone())
                .map_err(|_| JsonError::Composition(format!("{parts:?}")))?;
            if u64::from(comp.weight()) != degree {
                return Err(JsonError::Degree {
                    degree,
                    weight: comp.weight(),
                });
            }
            let c = C::from_json(item.get("coeff").ok_or(JsonError::Field("coeff"))?)?;
            terms.push((comp, c));
        }
    }
    Ok((
        name.to_string(),
        NcsfSeries::from_terms(basis, truncation, terms),
    ))
}
