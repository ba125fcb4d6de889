//! JSON function documents.
//!
//! ```json
//! {"name": "tent", "breakpoints": [
//!   {"x": "0", "value": "0"},
//!   {"x": "1/2", "value": "1"},
//!   {"x": "1", "value": "1/2"}
//! ]}
//! ```
//!
//! Coordinates and grades are `"p/q"` strings, decimal strings, or JSON
//! numbers; all are read exactly. A missing interior limit means the
//! function is continuous on that side.

use serde::Deserialize;
use serde_json::{json, Map};

use crate::error::{AlgebraError, Result};
use crate::interval::Interval;
use crate::pwl::{Knot, PiecewiseFn};
use crate::rational::{self, Rational};
use crate::report::Value;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Document {
    name: String,
    breakpoints: Vec<Record>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Record {
    x: Scalar,
    left: Option<Scalar>,
    value: Scalar,
    right: Option<Scalar>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum Scalar {
    Text(String),
    Number(serde_json::Number),
}

impl Scalar {
    fn to_rational(&self, record: usize, field: &str) -> Result<Rational> {
        let text = match self {
            Scalar::Text(s) => s.clone(),
            Scalar::Number(n) => n.to_string(),
        };
        rational::parse(&text)
            .map_err(|e| AlgebraError::Parse(format!("record {record}, field `{field}`: {e}")))
    }
}

/// A parsed document: the declared name and the function.
#[derive(Clone, Debug, PartialEq)]
pub struct NamedFunction {
    pub name: String,
    pub function: PiecewiseFn,
}

pub fn parse_document(text: &str) -> Result<NamedFunction> {
    let doc: Document = serde_json::from_str(text).map_err(|e| {
        AlgebraError::Parse(format!("line {} column {}: {e}", e.line(), e.column()))
    })?;
    from_document(doc)
}

pub fn parse_function(text: &str) -> Result<PiecewiseFn> {
    parse_document(text).map(|d| d.function)
}

fn from_document(doc: Document) -> Result<NamedFunction> {
    let mut knots: Vec<Knot> = Vec::with_capacity(doc.breakpoints.len());
    for (i, r) in doc.breakpoints.iter().enumerate() {
        let x = r.x.to_rational(i, "x")?;
        if !rational::in_unit(&x) {
            return Err(AlgebraError::InvalidFunction(format!("record {i}: x = {} is outside [0, 1]", rational::fmt(&x))));
        }
        if let Some(prev) = knots.last() {
            if x <= prev.x {
                return Err(AlgebraError::InvalidFunction(format!(
                    "record {i}: x = {} is not greater than the previous x = {}",
                    rational::fmt(&x),
                    rational::fmt(&prev.x)
                )));
            }
        }
        let grade = |s: &Scalar, field: &str| -> Result<Rational> {
            let g = s.to_rational(i, field)?;
            if !rational::in_unit(&g) {
                return Err(AlgebraError::InvalidFunction(format!(
                    "record {i}: grade `{field}` = {} is outside [0, 1]",
                    rational::fmt(&g)
                )));
            }
            Ok(g)
        };
        let value = grade(&r.value, "value")?;
        let left = r.left.as_ref().map(|s| grade(s, "left")).transpose()?;
        let right = r.right.as_ref().map(|s| grade(s, "right")).transpose()?;
        knots.push(Knot { x, left, value, right });
    }
    Ok(NamedFunction { name: doc.name, function: PiecewiseFn::new(knots)? })
}

/// Limits equal to the point value are omitted.
pub fn to_json(name: &str, f: &PiecewiseFn) -> serde_json::Value {
    let breakpoints: Vec<serde_json::Value> = f
        .knots()
        .iter()
        .map(|k| {
            let mut rec = Map::new();
            rec.insert("x".into(), json!(rational::fmt(&k.x)));
            if let Some(l) = k.left.as_ref().filter(|l| **l != k.value) {
                rec.insert("left".into(), json!(rational::fmt(l)));
            }
            rec.insert("value".into(), json!(rational::fmt(&k.value)));
            if let Some(r) = k.right.as_ref().filter(|r| **r != k.value) {
                rec.insert("right".into(), json!(rational::fmt(r)));
            }
            serde_json::Value::Object(rec)
        })
        .collect();
    json!({ "name": name, "breakpoints": breakpoints })
}

/// One breakpoint per line.
pub fn serialize(name: &str, f: &PiecewiseFn) -> String {
    let doc = to_json(name, f);
    let records: Vec<String> = doc["breakpoints"]
        .as_array()
        .expect("built above")
        .iter()
        .map(|r| format!("    {r}"))
        .collect();
    format!(
        "{{\n  \"name\": {},\n  \"breakpoints\": [\n{}\n  ]\n}}\n",
        serde_json::Value::String(name.to_string()),
        records.join(",\n")
    )
}

/// Reads a witness input entry: `{"name", "function" | "interval" | "scalar"}`.
pub(crate) fn parse_witness_input(entry: &serde_json::Value) -> Result<(String, Value)> {
    let bad = |msg: &str| AlgebraError::Parse(format!("witness input: {msg}"));
    let name = entry.get("name").and_then(|n| n.as_str()).ok_or_else(|| bad("missing `name`"))?.to_string();
    let value = if let Some(f) = entry.get("function") {
        let doc: Document = serde_json::from_value(f.clone()).map_err(|e| bad(&e.to_string()))?;
        Value::Function(from_document(doc)?.function)
    } else if let Some(x) = entry.get("interval") {
        Value::Interval(x.as_str().ok_or_else(|| bad("interval must be a string"))?.parse::<Interval>()?)
    } else if let Some(s) = entry.get("scalar") {
        Value::Scalar(rational::parse(s.as_str().ok_or_else(|| bad("scalar must be a string"))?)?)
    } else {
        return Err(bad("expected `function`, `interval` or `scalar`"));
    };
    Ok((name, value))
}
