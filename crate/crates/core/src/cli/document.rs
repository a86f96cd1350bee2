//! Matrix input documents.
//!
//! ```json
//! {
//!   "kind": "appell-f1",
//!   "order": 2,
//!   "matrices": { "A": [[[1, 0], [0, 0]], [[0, 0], [1, 0]]], "B": ..., "B'": ..., "C": ... },
//!   "point": { "x": [0.1, 0], "y": [0.2, 0] }
//! }
//! ```
//!
//! Every complex number is an explicit `[re, im]` pair.

use std::collections::BTreeMap;
use std::str::FromStr;

use serde_json::{json, Map, Value};

use crate::linalg::{Matrix, Scalar};
use crate::params::ParamName;
use crate::series::{EvalPoint, FunctionKind, ParameterSet};

/// A parsed input document. `kind` may be omitted and supplied on the
/// command line instead.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixDocument {
    pub kind: Option<FunctionKind>,
    pub order: usize,
    pub matrices: BTreeMap<ParamName, Matrix>,
    pub point: EvalPoint,
}

impl MatrixDocument {
    /// Parses a document; errors name the offending field, matrix, row and column.
    pub fn parse(text: &str) -> Result<Self, String> {
        let root: Value = serde_json::from_str(text).map_err(|e| format!("malformed document: {e}"))?;
        let obj = root.as_object().ok_or("document must be an object")?;
        for key in obj.keys() {
            if !["kind", "order", "matrices", "point"].contains(&key.as_str()) {
                return Err(format!("unknown field \"{key}\""));
            }
        }
        let kind = match obj.get("kind") {
            None => None,
            Some(v) => {
                let tag = v.as_str().ok_or("field \"kind\" must be a string")?;
                Some(FunctionKind::from_str(tag).map_err(|e| format!("field \"kind\": {e}"))?)
            }
        };
        let order = obj
            .get("order")
            .ok_or("missing field \"order\"")?
            .as_u64()
            .filter(|&n| n > 0)
            .ok_or("field \"order\" must be a positive integer")? as usize;

        let raw = obj
            .get("matrices")
            .ok_or("missing field \"matrices\"")?
            .as_object()
            .ok_or("field \"matrices\" must be an object")?;
        let mut matrices = BTreeMap::new();
        for (name, value) in raw {
            let param = ParamName::from_str(name).map_err(|_| format!("unknown parameter name \"{name}\""))?;
            let m = parse_matrix(value, order).map_err(|e| format!("matrix {name}, {e}"))?;
            if matrices.insert(param, m).is_some() {
                return Err(format!("matrix {name} given twice"));
            }
        }

        let point = obj
            .get("point")
            .ok_or("missing field \"point\"")?
            .as_object()
            .ok_or("field \"point\" must be an object")?;
        for key in point.keys() {
            if key != "x" && key != "y" {
                return Err(format!("unknown field \"point.{key}\""));
            }
        }
        let x = parse_pair(point.get("x").ok_or("missing field \"point.x\"")?).map_err(|e| format!("point.x: {e}"))?;
        let y = match point.get("y") {
            None => None,
            Some(v) => Some(parse_pair(v).map_err(|e| format!("point.y: {e}"))?),
        };
        Ok(MatrixDocument {
            kind,
            order,
            matrices,
            point: EvalPoint { x, y },
        })
    }

    /// Resolves the function kind (the override must agree with the
    /// document when both are present) and builds the parameter set.
    pub fn parameters(&self, kind_override: Option<FunctionKind>) -> Result<ParameterSet, String> {
        let kind = match (self.kind, kind_override) {
            (Some(a), Some(b)) if a != b => {
                return Err(format!("document is for {a} but {b} was requested"));
            }
            (Some(k), _) | (None, Some(k)) => k,
            (None, None) => return Err("no function kind in the document or on the command line".into()),
        };
        ParameterSet::new(kind, self.matrices.clone()).map_err(|e| e.to_string())
    }

    /// Canonical JSON text of the document. Floats are written in shortest
    /// round-trip form, so parsing the output reproduces every bit.
    pub fn to_json(&self) -> String {
        let mut obj = Map::new();
        if let Some(kind) = self.kind {
            obj.insert("kind".into(), json!(kind.tag()));
        }
        obj.insert("order".into(), json!(self.order));
        let matrices: Map<String, Value> = self
            .matrices
            .iter()
            .map(|(n, m)| (n.as_str().to_string(), matrix_value(m)))
            .collect();
        obj.insert("matrices".into(), Value::Object(matrices));
        let mut point = Map::new();
        point.insert("x".into(), pair_value(self.point.x));
        if let Some(y) = self.point.y {
            point.insert("y".into(), pair_value(y));
        }
        obj.insert("point".into(), Value::Object(point));
        serde_json::to_string_pretty(&Value::Object(obj)).expect("values are finite")
    }
}

fn parse_matrix(value: &Value, order: usize) -> Result<Matrix, String> {
    let rows = value.as_array().ok_or("expected an array of rows")?;
    if rows.len() != order {
        return Err(format!("expected {order} rows, found {}", rows.len()));
    }
    let mut out = Vec::with_capacity(order);
    for (i, row) in rows.iter().enumerate() {
        let entries = row
            .as_array()
            .ok_or_else(|| format!("row {}: expected an array", i + 1))?;
        if entries.len() != order {
            return Err(format!(
                "row {}: expected {order} entries, found {}",
                i + 1,
                entries.len()
            ));
        }
        let parsed = entries
            .iter()
            .enumerate()
            .map(|(j, e)| parse_pair(e).map_err(|msg| format!("row {}, column {}: {msg}", i + 1, j + 1)))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(parsed);
    }
    Matrix::from_rows(out).map_err(|e| e.to_string())
}

fn parse_pair(value: &Value) -> Result<Scalar, String> {
    let describe = || format!("expected a [re, im] pair of finite numbers, found {value}");
    let pair = value.as_array().filter(|a| a.len() == 2).ok_or_else(describe)?;
    let re = pair[0].as_f64().filter(|v| v.is_finite()).ok_or_else(describe)?;
    let im = pair[1].as_f64().filter(|v| v.is_finite()).ok_or_else(describe)?;
    Ok(Scalar::new(re, im))
}

pub(crate) fn pair_value(z: Scalar) -> Value {
    json!([z.re, z.im])
}

pub(crate) fn matrix_value(m: &Matrix) -> Value {
    Value::Array(
        m.rows()
            .map(|row| Value::Array(row.iter().map(|&z| pair_value(z)).collect()))
            .collect(),
    )
}
