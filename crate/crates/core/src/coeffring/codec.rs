//! Text and JSON encodings of coefficients.

use num_bigint::BigInt;
use num_traits::Signed;
use serde_json::{json, Value};

use super::{
    format_rational, parse_integer, parse_rational, Coeff, CoeffError, EPoly, Integer, Partition,
    PolyT, Rational,
};

/// Sign-and-magnitude rendering used when printing series.
pub trait CoeffText: Coeff {
    /// Returns `(negative, magnitude)`. The caller prints the sign as a
    /// binary operator and omits a magnitude of `"1"` in front of a basis
    /// element.
    fn signed_text(&self) -> (bool, String);
}

impl CoeffText for Integer {
    fn signed_text(&self) -> (bool, String) {
        (self.is_negative(), self.abs().to_string())
    }
}

impl CoeffText for Rational {
    fn signed_text(&self) -> (bool, String) {
        (self.is_negative(), format_rational(&self.abs()))
    }
}

impl CoeffText for PolyT {
    fn signed_text(&self) -> (bool, String) {
        if self.is_negative_monomial() {
            (true, Coeff::neg(self).to_string())
        } else {
            (false, self.to_string())
        }
    }
}

impl CoeffText for EPoly {
    fn signed_text(&self) -> (bool, String) {
        if self.is_negative_monomial() {
            (true, Coeff::neg(self).to_string())
        } else {
            (false, self.to_string())
        }
    }
}

/// JSON encoding of a coefficient.
///
/// Integers are decimal strings, rationals `"p/q"` (or `"p"`), polynomials in
/// `t` an ascending list of rational strings, and `e`-polynomials a list of
/// `{"partition": [..], "coeff": "<integer>"}` objects.
pub trait CoeffCodec: Coeff {
    const RING: &'static str;
    fn to_json(&self) -> Value;
    fn from_json(v: &Value) -> Result<Self, CoeffError>;
}

fn expect_str(v: &Value) -> Result<&str, CoeffError> {
    v.as_str()
        .ok_or_else(|| CoeffError::Parse(format!("expected a string, found {v}")))
}

impl CoeffCodec for Integer {
    const RING: &'static str = "int";
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
    fn from_json(v: &Value) -> Result<Self, CoeffError> {
        parse_integer(expect_str(v)?)
    }
}

impl CoeffCodec for Rational {
    const RING: &'static str = "rational";
    fn to_json(&self) -> Value {
        Value::String(format_rational(self))
    }
    fn from_json(v: &Value) -> Result<Self, CoeffError> {
        parse_rational(expect_str(v)?)
    }
}

impl CoeffCodec for PolyT {
    const RING: &'static str = "polyt";
    fn to_json(&self) -> Value {
        Value::Array(
            self.coeffs()
                .iter()
                .map(|c| Value::String(format_rational(c)))
                .collect(),
        )
    }
    fn from_json(v: &Value) -> Result<Self, CoeffError> {
        let items = v
            .as_array()
            .ok_or_else(|| CoeffError::Parse(format!("expected a list, found {v}")))?;
        let coeffs = items
            .iter()
            .map(|c| parse_rational(expect_str(c)?))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PolyT::new(coeffs))
    }
}

impl CoeffCodec for EPoly {
    const RING: &'static str = "epoly";
    fn to_json(&self) -> Value {
        Value::Array(
            self.terms()
                .map(|(p, c)| json!({"partition": p.parts(), "coeff": c.to_string()}))
                .collect(),
        )
    }
    fn from_json(v: &Value) -> Result<Self, CoeffError> {
        let bad = || CoeffError::Parse(format!("malformed e-polynomial: {v}"));
        let items = v.as_array().ok_or_else(bad)?;
        let mut out = EPoly::zero();
        for item in items {
            let parts = item
                .get("partition")
                .and_then(Value::as_array)
                .ok_or_else(bad)?
                .iter()
                .map(|p| p.as_u64().map(|p| p as u32).ok_or_else(bad))
                .collect::<Result<Vec<_>, _>>()?;
            let c: BigInt = parse_integer(expect_str(item.get("coeff").ok_or_else(bad)?)?)?;
            out.add_assign(&EPoly::monomial(Partition::new(parts), c));
        }
        Ok(out)
    }
}
