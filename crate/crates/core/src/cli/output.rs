//! Deterministic JSON output.

use std::io;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::bilinears::{BilinearSet, Spinor};
use crate::clifford::{Multivector, CONVENTIONS};
use crate::duals::DualCoefficients;
use crate::fpk::FpkReport;
use crate::tensor::{Bivector, Matrix4, Vector4, C64};

pub const SCHEMA: &str = "spinordual/v1";

/// Compact JSON with every float written as `{:.16e}`.
struct FixedFloat;

impl serde_json::ser::Formatter for FixedFloat {
    fn write_f64<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f64) -> io::Result<()> {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W: ?Sized + io::Write>(&mut self, writer: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(writer, value as f64)
    }
}

pub fn to_string(value: &Value) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FixedFloat);
    value.serialize(&mut ser).expect("serializing a Value cannot fail");
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

pub fn envelope(command: &str, payload: Value, residuals: Value) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command,
        "conventions": {
            "fingerprint": CONVENTIONS.fingerprint(),
            "representation": CONVENTIONS.representation,
            "epsilon_0123": CONVENTIONS.epsilon_0123,
            "pi_sign": CONVENTIONS.pi_sign,
            "spatial_block_sign": CONVENTIONS.spatial_block_sign,
            "metric": CONVENTIONS.metric,
        },
        "payload": payload,
        "residuals": residuals,
    })
}

/// A float as JSON, with non-finite values as `null`.
pub fn num(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn complex(z: C64) -> Value {
    json!([num(z.re), num(z.im)])
}

pub fn vector(v: &Vector4) -> Value {
    Value::Array(v.iter().map(|z| complex(*z)).collect())
}

pub fn bivector(b: &Bivector) -> Value {
    Value::Array(b.components().iter().map(|z| complex(*z)).collect())
}

pub fn matrix(m: &Matrix4) -> Value {
    Value::Array((0..4).map(|i| Value::Array((0..4).map(|j| complex(m[(i, j)])).collect())).collect())
}

pub fn spinor(psi: &Spinor) -> Value {
    Value::Array(psi.components().iter().map(|z| complex(*z)).collect())
}

pub fn bilinears(b: &BilinearSet) -> Value {
    json!({
        "Phi": complex(b.phi),
        "Theta": complex(b.theta),
        "U": vector(&b.u),
        "S": vector(&b.s),
        "M": bivector(&b.m),
        "Sigma": bivector(&b.sigma()),
    })
}

pub fn multivector(mv: &Multivector) -> Value {
    json!({
        "scalar": complex(mv.scalar),
        "pseudoscalar": complex(mv.pseudoscalar),
        "vector": vector(&mv.vector),
        "pseudovector": vector(&mv.pseudovector),
        "bivector": bivector(&mv.bivector),
    })
}

pub fn dual(d: &DualCoefficients) -> Value {
    json!({
        "a": complex(d.a),
        "b": complex(d.b),
        "c": complex(d.c),
        "d": complex(d.d),
        "e": complex(d.e),
        "v": vector(&d.v),
        "n": vector(&d.n),
        "h": bivector(&d.h),
    })
}

pub fn fpk(r: &FpkReport) -> Value {
    let residuals: Map<String, Value> = r.residuals.iter().map(|(id, x)| (id.name().to_string(), num(*x))).collect();
    json!({
        "passes": r.passes,
        "tol": num(r.tol),
        "max_residual": num(r.max_residual),
        "worst": r.worst().0.name(),
        "residuals": residuals,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_width_floats() {
        let s = to_string(&json!({"x": 0.1, "y": [1.0, -2.5e-12], "n": 3}));
        assert_eq!(s, r#"{"n":3,"x":1.0000000000000001e-1,"y":[1.0000000000000000e0,-2.4999999999999998e-12]}"#);
        let v: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["x"].as_f64(), Some(0.1));
    }

    #[test]
    fn envelope_carries_fingerprint() {
        let e = envelope("fpk", json!({}), json!({}));
        assert_eq!(e["schema"], SCHEMA);
        assert_eq!(e["conventions"]["fingerprint"], CONVENTIONS.fingerprint());
    }
}
