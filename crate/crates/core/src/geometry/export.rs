use serde_json::{json, Value};

use crate::scalar::Real;
use crate::statevector::StateVector;

use super::{JordanDecomposition, JordanSubspace};

fn vector_json<T: Real>(s: &StateVector<T>) -> Value {
    Value::Array(
        s.amplitudes()
            .iter()
            .map(|a| json!([a.re.as_f64(), a.im.as_f64()]))
            .collect(),
    )
}

/// JSON document listing every subspace with its kind, overlap `p`, angle
/// `phi`, and basis vectors as `[re, im]` arrays.
pub fn decomposition_json<T: Real>(d: &JordanDecomposition<T>) -> Value {
    let subspaces: Vec<Value> = d
        .subspaces
        .iter()
        .map(|s| match s {
            JordanSubspace::TwoDim {
                v,
                v_perp,
                w,
                w_perp,
                p,
                phi,
            } => json!({
                "kind": "two_dim",
                "p": p,
                "phi": phi,
                "vectors": {
                    "v": vector_json(v),
                    "v_perp": vector_json(v_perp),
                    "w": vector_json(w),
                    "w_perp": vector_json(w_perp),
                },
            }),
            JordanSubspace::OneDim { vector, b, c } => json!({
                "kind": "one_dim",
                "b": b,
                "c": c,
                "p": if *c == 1 { f64::from(*b) } else { 0.0 },
                "phi": if *b == 1 && *c == 1 { 0.0 } else { 0.5 },
                "vectors": { "u": vector_json(vector) },
            }),
        })
        .collect();
    json!({
        "total_dimension": d.total_dimension,
        "num_two_dim": d.two_dim().count(),
        "subspaces": subspaces,
    })
}
