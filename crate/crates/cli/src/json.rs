//! Exact values as JSON: rationals become `"num/den"` strings.

use hyperarr::arrangement::Hyperplane;
use hyperarr::exactmath::{MultiPoly, Rational, UniPoly};
use hyperarr::lattice::Flat;
use hyperarr::logder::Derivation;
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

pub const SCHEMA: u32 = 1;

pub fn rat(r: &Rational) -> Value {
    Value::String(r.to_fraction_string())
}

/// An integer as a JSON number when it fits in `i64`, else as a decimal string.
pub fn int(n: &BigInt) -> Value {
    match n.to_i64() {
        Some(v) => json!(v),
        None => Value::String(n.to_string()),
    }
}

/// Coefficients from the constant term up.
pub fn unipoly(p: &UniPoly) -> Value {
    Value::Array(p.coeffs().iter().map(int).collect())
}

pub fn poly(p: &MultiPoly) -> Value {
    Value::Array(
        p.terms()
            .map(|(m, c)| json!({ "exponents": m.exponents(), "coeff": rat(c) }))
            .collect(),
    )
}

pub fn derivation(d: &Derivation) -> Value {
    Value::Array(d.coeffs().iter().map(poly).collect())
}

pub fn hyperplane(h: &Hyperplane) -> Value {
    Value::Array(h.coeffs().iter().map(rat).collect())
}

pub fn flat(f: &Flat) -> Value {
    json!({
        "codim": f.codim,
        "members": f.members,
        "moebius": int(&f.moebius),
    })
}

/// Wrap a report with the schema version and command name.
pub fn envelope(command: &str, body: Value) -> Value {
    let mut out = json!({ "schema": SCHEMA, "command": command });
    if let (Value::Object(o), Value::Object(b)) = (&mut out, body) {
        o.extend(b);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integers_switch_to_strings_past_i64() {
        assert_eq!(int(&BigInt::from(-7)), json!(-7));
        let big = BigInt::from(i64::MAX) * 4;
        assert_eq!(int(&big), json!("36893488147419103228"));
    }

    #[test]
    fn rationals_and_polynomials() {
        let r: Rational = "-6/4".parse().unwrap();
        assert_eq!(rat(&r), json!("-3/2"));
        assert_eq!(unipoly(&UniPoly::from_roots(&[1, 2])), json!([2, -3, 1]));
        assert_eq!(
            hyperplane(&Hyperplane::from_ints(&[2, -2, 0]).unwrap()),
            json!(["1/1", "-1/1", "0/1"])
        );
    }

    #[test]
    fn envelope_merges_the_body() {
        let v = envelope("lattice", json!({ "rank": 3 }));
        assert_eq!(v, json!({ "schema": 1, "command": "lattice", "rank": 3 }));
    }
}
