//! Graph JSON: `{"n": <int>, "adjacency": [[<int>, ...], ...]}`.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Signed;
use serde_json::{json, Map, Number, Value};

use super::{DirectedMultigraph, GraphError};
use crate::linalg::IntMatrix;

fn bad(msg: impl Into<String>) -> GraphError {
    GraphError::Json(msg.into())
}

pub(crate) fn bigint_to_json(v: &BigInt) -> Value {
    Value::Number(Number::from_str(&v.to_string()).expect("decimal integers are valid JSON numbers"))
}

pub(crate) fn json_to_bigint(v: &Value) -> Option<BigInt> {
    let Value::Number(n) = v else { return None };
    let text = n.to_string();
    let digits = text.strip_prefix('-').unwrap_or(&text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    text.parse().ok()
}

impl DirectedMultigraph {
    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .adjacency
            .to_rows()
            .iter()
            .map(|r| Value::Array(r.iter().map(bigint_to_json).collect()))
            .collect();
        json!({ "n": self.n_vertices(), "adjacency": rows })
    }

    pub fn from_json_value(value: &Value) -> Result<Self, GraphError> {
        let obj: &Map<String, Value> = value.as_object().ok_or_else(|| bad("expected an object"))?;
        if let Some(key) = obj.keys().find(|k| *k != "n" && *k != "adjacency") {
            return Err(bad(format!("unexpected key {key:?}")));
        }
        let n = obj
            .get("n")
            .and_then(Value::as_u64)
            .ok_or_else(|| bad("\"n\" must be a nonnegative integer"))?;
        let rows = obj
            .get("adjacency")
            .and_then(Value::as_array)
            .ok_or_else(|| bad("\"adjacency\" must be an array of rows"))?;
        if rows.len() as u64 != n {
            return Err(bad(format!("n = {n} but adjacency has {} rows", rows.len())));
        }
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for (i, row) in rows.iter().enumerate() {
            let row = row
                .as_array()
                .ok_or_else(|| bad(format!("row {i} is not an array")))?;
            if row.len() != n {
                return Err(bad(format!("row {i} has {} entries, expected {n}", row.len())));
            }
            for (j, entry) in row.iter().enumerate() {
                let v = json_to_bigint(entry)
                    .ok_or_else(|| bad(format!("entry ({i}, {j}) is not an integer")))?;
                if v.is_negative() {
                    return Err(GraphError::NegativeMultiplicity { row: i, col: j });
                }
                data.push(v);
            }
        }
        let adjacency = IntMatrix::new(n, n, data).map_err(|e| bad(e.to_string()))?;
        DirectedMultigraph::from_adjacency(adjacency)
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let value: Value = serde_json::from_str(text).map_err(|e| bad(e.to_string()))?;
        Self::from_json_value(&value)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cayley_graph;

    #[test]
    fn round_trip_cayley() {
        let g = cayley_graph(5, 3).unwrap();
        let text = g.to_json().to_string();
        assert!(text.starts_with("{\"n\":5,\"adjacency\":[[0,1,0,1,0]"), "{text}");
        assert_eq!(DirectedMultigraph::from_json(&text).unwrap(), g);
    }

    #[test]
    fn big_multiplicities() {
        let text = r#"{"n": 1, "adjacency": [[123456789012345678901234567890]]}"#;
        let g = DirectedMultigraph::from_json(text).unwrap();
        assert_eq!(g.multiplicity(0, 0).to_string(), "123456789012345678901234567890");
        assert_eq!(g.to_json().to_string(), r#"{"n":1,"adjacency":[[123456789012345678901234567890]]}"#);
    }

    #[test]
    fn rejects_bad_documents() {
        for bad in [
            "[]",
            "{}",
            r#"{"n": 2, "adjacency": [[1, 1]]}"#,
            r#"{"n": 1, "adjacency": [[1, 1]]}"#,
            r#"{"n": 1, "adjacency": [[-1]]}"#,
            r#"{"n": 1, "adjacency": [[1.5]]}"#,
            r#"{"n": 1, "adjacency": [[1e3]]}"#,
            r#"{"n": 1, "adjacency": [["1"]]}"#,
            r#"{"n": 0, "adjacency": []}"#,
            r#"{"n": -1, "adjacency": []}"#,
            r#"{"n": 1, "adjacency": [[1]], "extra": 0}"#,
            "not json",
        ] {
            assert!(DirectedMultigraph::from_json(bad).is_err(), "accepted {bad}");
        }
    }
}
