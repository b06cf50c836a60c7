//! JSON circuit and witness files.
//!
//! Circuit document:
//!
//! ```json
//! {
//!   "num_witness_qubits": 2,
//!   "num_ancilla_qubits": 1,
//!   "output_qubit": 2,
//!   "gates": [
//!     {"name": "H", "targets": [0], "controls": [], "params": []},
//!     {"name": "RY", "targets": [2], "controls": [0, 1], "params": [0.785]},
//!     {"name": "U", "targets": [1], "controls": [], "params": [],
//!      "matrix": [[[0, 0], [1, 0]], [[1, 0], [0, 0]]]}
//!   ]
//! }
//! ```
//!
//! Witness document: `{"num_qubits": n, "amplitudes": [[re, im], ...]}`.

use num_complex::Complex;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use super::VerifierCircuit;
use crate::error::{Error, Result};
use crate::scalar::{CMatrix, Real};
use crate::statevector::{Axis, Gate, GateKind, StateVector};

fn perr(path: impl Into<String>, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.into(),
        message: message.into(),
    }
}

fn field<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value> {
    obj.get(key)
        .ok_or_else(|| perr(format!("{path}{key}"), "missing field"))
}

fn as_index(v: &Value, path: &str) -> Result<usize> {
    v.as_u64()
        .map(|x| x as usize)
        .ok_or_else(|| perr(path, format!("expected a non-negative integer, got {v}")))
}

fn as_index_list(v: &Value, path: &str) -> Result<Vec<usize>> {
    let arr = v
        .as_array()
        .ok_or_else(|| perr(path, "expected an array of integers"))?;
    arr.iter()
        .enumerate()
        .map(|(i, x)| as_index(x, &format!("{path}[{i}]")))
        .collect()
}

fn as_complex<T: Real>(v: &Value, path: &str) -> Result<Complex<T>> {
    match v.as_array().map(|a| a.as_slice()) {
        Some([re, im]) => match (re.as_f64(), im.as_f64()) {
            (Some(re), Some(im)) if re.is_finite() && im.is_finite() => {
                Ok(Complex::new(T::lit(re), T::lit(im)))
            }
            _ => Err(perr(path, "expected finite numbers [re, im]")),
        },
        _ => Err(perr(path, "expected a pair [re, im]")),
    }
}

fn parse_matrix<T: Real>(v: &Value, path: &str) -> Result<CMatrix<T>> {
    let rows = v
        .as_array()
        .ok_or_else(|| perr(path, "expected an array of rows"))?;
    let n = rows.len();
    if n != 2 && n != 4 {
        return Err(perr(path, format!("expected 2 or 4 rows, got {n}")));
    }
    let mut m = CMatrix::from_element(n, n, Complex::new(T::zero(), T::zero()));
    for (r, row) in rows.iter().enumerate() {
        let rp = format!("{path}[{r}]");
        let cols = row
            .as_array()
            .ok_or_else(|| perr(&rp, "expected a row of [re, im] pairs"))?;
        if cols.len() != n {
            return Err(perr(&rp, format!("expected {n} entries, got {}", cols.len())));
        }
        for (c, x) in cols.iter().enumerate() {
            m[(r, c)] = as_complex(x, &format!("{rp}[{c}]"))?;
        }
    }
    Ok(m)
}

fn parse_gate<T: Real>(v: &Value, path: &str) -> Result<Gate<T>> {
    let obj = v
        .as_object()
        .ok_or_else(|| perr(path, "expected an object"))?;
    let sub = format!("{path}.");
    let name = field(obj, &sub, "name")?
        .as_str()
        .ok_or_else(|| perr(format!("{sub}name"), "expected a string"))?;
    let targets = as_index_list(field(obj, &sub, "targets")?, &format!("{sub}targets"))?;
    let controls = match obj.get("controls") {
        Some(c) => as_index_list(c, &format!("{sub}controls"))?,
        None => Vec::new(),
    };
    let params: Vec<f64> = match obj.get("params") {
        Some(p) => {
            let arr = p
                .as_array()
                .ok_or_else(|| perr(format!("{sub}params"), "expected an array of numbers"))?;
            arr.iter()
                .enumerate()
                .map(|(i, x)| {
                    x.as_f64()
                        .filter(|f| f.is_finite())
                        .ok_or_else(|| perr(format!("{sub}params[{i}]"), "expected a finite number"))
                })
                .collect::<Result<_>>()?
        }
        None => Vec::new(),
    };
    let one_param = |kind: fn(T) -> GateKind<T>| -> Result<GateKind<T>> {
        match params.as_slice() {
            [x] => Ok(kind(T::lit(*x))),
            _ => Err(perr(
                format!("{sub}params"),
                format!("gate {name} takes exactly one angle, got {}", params.len()),
            )),
        }
    };
    let kind = match name.to_ascii_uppercase().as_str() {
        "H" => GateKind::H,
        "X" => GateKind::X,
        "Y" => GateKind::Y,
        "Z" => GateKind::Z,
        "S" => GateKind::S,
        "SDG" => GateKind::Sdg,
        "T" => GateKind::T,
        "TDG" => GateKind::Tdg,
        "CX" | "CNOT" => GateKind::CX,
        "CZ" => GateKind::CZ,
        "SWAP" => GateKind::Swap,
        "RX" => one_param(|a| GateKind::Rotation(Axis::X, a))?,
        "RY" => one_param(|a| GateKind::Rotation(Axis::Y, a))?,
        "RZ" => one_param(|a| GateKind::Rotation(Axis::Z, a))?,
        "P" | "PHASE" => one_param(GateKind::Phase)?,
        "U" => {
            let m = obj
                .get("matrix")
                .ok_or_else(|| perr(format!("{sub}matrix"), "gate U requires a matrix"))?;
            GateKind::Unitary(parse_matrix(m, &format!("{sub}matrix"))?)
        }
        other => return Err(perr(format!("{sub}name"), format!("unknown gate `{other}`"))),
    };
    Ok(Gate {
        kind,
        targets,
        controls,
    })
}

/// Parses and validates a circuit document. Every failure names the offending
/// field path.
pub fn parse_circuit<T: Real>(text: &[u8]) -> Result<VerifierCircuit<T>> {
    let doc: Value =
        serde_json::from_slice(text).map_err(|e| perr("$", format!("malformed JSON: {e}")))?;
    let obj = doc
        .as_object()
        .ok_or_else(|| perr("$", "expected a top-level object"))?;
    let num_witness = as_index(field(obj, "", "num_witness_qubits")?, "num_witness_qubits")?;
    let num_ancilla = as_index(field(obj, "", "num_ancilla_qubits")?, "num_ancilla_qubits")?;
    let output_qubit = as_index(field(obj, "", "output_qubit")?, "output_qubit")?;
    let gates_v = field(obj, "", "gates")?
        .as_array()
        .ok_or_else(|| perr("gates", "expected an array"))?;
    let gates = gates_v
        .iter()
        .enumerate()
        .map(|(i, g)| parse_gate(g, &format!("gates[{i}]")))
        .collect::<Result<Vec<_>>>()?;
    let circuit = VerifierCircuit {
        num_witness,
        num_ancilla,
        output_qubit,
        gates,
    };
    let report = circuit.validate();
    if let Some(v) = report.violations.first() {
        if report.violations.iter().all(|v| matches!(v.kind, super::ViolationKind::Structure)) {
            return Err(perr(v.path.clone(), v.message.clone()));
        }
        report.into_result()?;
    }
    Ok(circuit)
}

fn complex_json<T: Real>(z: &Complex<T>) -> Value {
    json!([z.re.as_f64(), z.im.as_f64()])
}

fn gate_json<T: Real>(g: &Gate<T>) -> Value {
    let params: Vec<f64> = match &g.kind {
        GateKind::Rotation(_, a) | GateKind::Phase(a) => vec![a.as_f64()],
        _ => Vec::new(),
    };
    let mut obj = Map::new();
    obj.insert("name".into(), json!(g.name()));
    obj.insert("targets".into(), json!(g.targets));
    obj.insert("controls".into(), json!(g.controls));
    obj.insert("params".into(), json!(params));
    if let GateKind::Unitary(m) = &g.kind {
        let rows: Vec<Value> = (0..m.nrows())
            .map(|r| Value::Array((0..m.ncols()).map(|c| complex_json(&m[(r, c)])).collect()))
            .collect();
        obj.insert("matrix".into(), Value::Array(rows));
    }
    Value::Object(obj)
}

/// Canonical JSON form: fixed key order, every optional list present.
pub fn serialize_circuit<T: Real>(circuit: &VerifierCircuit<T>) -> String {
    let mut obj = Map::new();
    obj.insert("num_witness_qubits".into(), json!(circuit.num_witness));
    obj.insert("num_ancilla_qubits".into(), json!(circuit.num_ancilla));
    obj.insert("output_qubit".into(), json!(circuit.output_qubit));
    obj.insert(
        "gates".into(),
        Value::Array(circuit.gates.iter().map(gate_json).collect()),
    );
    serde_json::to_string_pretty(&Value::Object(obj)).expect("json values always serialize")
}

#[derive(Serialize, Deserialize)]
struct RawWitness {
    num_qubits: usize,
    amplitudes: Vec<[f64; 2]>,
}

/// A loaded witness and whether it had to be renormalized.
#[derive(Clone, Debug)]
pub struct WitnessFile<T> {
    pub state: StateVector<T>,
    pub warning: Option<String>,
}

/// Tolerance on the stored norm before a witness is renormalized with a warning.
pub const WITNESS_NORM_TOLERANCE: f64 = 1e-6;

pub fn read_witness<T: Real>(text: &[u8]) -> Result<WitnessFile<T>> {
    let raw: RawWitness =
        serde_json::from_slice(text).map_err(|e| perr("$", format!("malformed witness: {e}")))?;
    if raw.num_qubits > crate::statevector::MAX_STATE_QUBITS {
        return Err(Error::SizeGuard {
            what: "witness",
            requested: raw.num_qubits,
            limit: crate::statevector::MAX_STATE_QUBITS,
        });
    }
    let expected = 1usize << raw.num_qubits;
    if raw.amplitudes.len() != expected {
        return Err(perr(
            "amplitudes",
            format!("expected {expected} entries, got {}", raw.amplitudes.len()),
        ));
    }
    if let Some(i) = raw
        .amplitudes
        .iter()
        .position(|[re, im]| !re.is_finite() || !im.is_finite())
    {
        return Err(perr(format!("amplitudes[{i}]"), "non-finite amplitude"));
    }
    let amps = raw
        .amplitudes
        .iter()
        .map(|[re, im]| Complex::new(T::lit(*re), T::lit(*im)))
        .collect();
    let mut state = StateVector::from_amplitudes(amps)?;
    let norm2 = state.squared_norm().as_f64();
    if norm2 == 0.0 {
        return Err(perr("amplitudes", "zero vector"));
    }
    let warning = if (norm2 - 1.0).abs() > WITNESS_NORM_TOLERANCE {
        state.normalize();
        Some(format!("witness squared norm {norm2:.9} renormalized to 1"))
    } else {
        None
    };
    Ok(WitnessFile { state, warning })
}

pub fn serialize_witness<T: Real>(state: &StateVector<T>) -> String {
    let raw = RawWitness {
        num_qubits: state.num_qubits(),
        amplitudes: state
            .amplitudes()
            .iter()
            .map(|a| [a.re.as_f64(), a.im.as_f64()])
            .collect(),
    };
    serde_json::to_string_pretty(&raw).expect("json values always serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document_is_identity_verifier() {
        let doc = br#"{"num_witness_qubits":1,"num_ancilla_qubits":1,"output_qubit":1,"gates":[]}"#;
        let c = parse_circuit::<f64>(doc).unwrap();
        assert_eq!(c.num_qubits(), 2);
        assert!(c.gates.is_empty());
    }

    #[test]
    fn out_of_range_target_names_gate() {
        let doc = br#"{"num_witness_qubits":1,"num_ancilla_qubits":1,"output_qubit":1,
            "gates":[{"name":"H","targets":[0]},{"name":"X","targets":[2]}]}"#;
        match parse_circuit::<f64>(doc) {
            Err(Error::Parse { path, .. }) => assert!(path.starts_with("gates[1]"), "{path}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_output_qubit_reported() {
        let doc = br#"{"num_witness_qubits":1,"num_ancilla_qubits":1,"gates":[]}"#;
        match parse_circuit::<f64>(doc) {
            Err(Error::Parse { path, .. }) => assert_eq!(path, "output_qubit"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn non_unitary_matrix_rejected() {
        let doc = br#"{"num_witness_qubits":1,"num_ancilla_qubits":1,"output_qubit":1,
            "gates":[{"name":"U","targets":[0],"matrix":[[[1,0],[1,0]],[[0,0],[1,0]]]}]}"#;
        match parse_circuit::<f64>(doc) {
            Err(Error::Parse { path, message }) => {
                assert!(path.starts_with("gates[0]"));
                assert!(message.contains("unitary"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn oversized_document_is_guard_error() {
        let doc = br#"{"num_witness_qubits":20,"num_ancilla_qubits":5,"output_qubit":21,"gates":[]}"#;
        assert!(parse_circuit::<f64>(doc).unwrap_err().is_guard());
    }

    #[test]
    fn bad_param_count_reported() {
        let doc = br#"{"num_witness_qubits":1,"num_ancilla_qubits":1,"output_qubit":1,
            "gates":[{"name":"RY","targets":[1],"params":[]}]}"#;
        match parse_circuit::<f64>(doc) {
            Err(Error::Parse { path, .. }) => assert_eq!(path, "gates[0].params"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn witness_renormalized_with_warning() {
        let doc = br#"{"num_qubits":1,"amplitudes":[[1,0],[1,0]]}"#;
        let w = read_witness::<f64>(doc).unwrap();
        assert!(w.warning.is_some());
        assert!((w.state.squared_norm() - 1.0).abs() < 1e-12);

        let doc = br#"{"num_qubits":1,"amplitudes":[[0.6,0],[0,0.8]]}"#;
        let w = read_witness::<f64>(doc).unwrap();
        assert!(w.warning.is_none());

        let doc = br#"{"num_qubits":2,"amplitudes":[[1,0],[0,0]]}"#;
        assert!(read_witness::<f64>(doc).is_err());
    }

    #[test]
    fn witness_round_trip() {
        let s = StateVector::<f64>::from_amplitudes(vec![
            Complex::new(0.6, 0.0),
            Complex::new(0.0, -0.8),
        ])
        .unwrap();
        let back = read_witness::<f64>(serialize_witness(&s).as_bytes()).unwrap();
        assert_eq!(back.state, s);
    }
}
