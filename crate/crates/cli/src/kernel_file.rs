//! Kernel interchange format.
//!
//! ```json
//! {
//!   "a": 1,
//!   "b": 1,
//!   "ch2": 1,
//!   "gamma": [
//!     [0, 0, -1, 0],
//!     ...
//!   ],
//!   "genus_source": 2,
//!   "genus_target": 2,
//!   "rank": 0
//! }
//! ```
//!
//! Rationals are bare JSON integers or reduced `"p/q"` strings; floats are
//! rejected. `gamma` has `2·genus_source` rows of `2·genus_target` entries
//! and defaults to zero. Emission is canonical: sorted keys, two-space
//! indentation, scalar arrays on one line, LF line endings.

use std::fmt;
use std::path::Path;

use fmcurves::rational::{format_rational, is_integral, parse_rational};
use fmcurves::{KernelClass, Matrix, Rational};
use serde_json::{Map, Value};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: Option<usize>,
    pub field: Option<String>,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.line, &self.field) {
            (Some(l), Some(k)) => write!(f, "line {l}, field `{k}`: {}", self.message),
            (Some(l), None) => write!(f, "line {l}: {}", self.message),
            (None, Some(k)) => write!(f, "field `{k}`: {}", self.message),
            (None, None) => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for ParseError {}

const FIELDS: [&str; 7] = ["a", "b", "ch2", "gamma", "genus_source", "genus_target", "rank"];

/// Line of the first occurrence of `"key"` used as an object key.
fn key_line(text: &str, key: &str) -> Option<usize> {
    let quoted = format!("\"{key}\"");
    let mut from = 0;
    while let Some(pos) = text[from..].find(&quoted) {
        let at = from + pos;
        let rest = text[at + quoted.len()..].trim_start();
        if rest.starts_with(':') {
            return Some(text[..at].matches('\n').count() + 1);
        }
        from = at + quoted.len();
    }
    None
}

pub fn rational_from_json(v: &Value) -> Result<Rational, String> {
    match v {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Rational::from_integer(i.into())),
            None if n.is_u64() => Ok(Rational::from_integer(n.as_u64().unwrap().into())),
            None => Err(format!(
                "`{n}` is not an exact integer; write non-integers and large values as \"p/q\" strings"
            )),
        },
        Value::String(s) => {
            parse_rational(s).map_err(|_| format!("`{s}` is not a reduced rational p/q with q > 0"))
        }
        other => Err(format!("expected a rational, found {other}")),
    }
}

pub fn rational_to_json(x: &Rational) -> Value {
    if is_integral(x) {
        if let Ok(i) = i64::try_from(x.numer()) {
            return Value::from(i);
        }
        return Value::String(x.numer().to_string());
    }
    Value::String(format_rational(x))
}

pub fn parse_kernel_str(text: &str) -> Result<KernelClass, ParseError> {
    let value: Value = serde_json::from_str(text).map_err(|e| ParseError {
        line: Some(e.line()),
        field: None,
        message: format!("malformed JSON: {e}"),
    })?;
    let Value::Object(obj) = value else {
        return Err(ParseError {
            line: Some(1),
            field: None,
            message: "kernel file must be a JSON object".into(),
        });
    };
    let fail = |field: &str, message: String| ParseError {
        line: key_line(text, field),
        field: Some(field.to_string()),
        message,
    };
    if let Some(unknown) = obj.keys().find(|k| !FIELDS.contains(&k.as_str())) {
        return Err(fail(unknown, "unknown field".into()));
    }
    let genus = |key: &str| -> Result<usize, ParseError> {
        match obj.get(key) {
            None => Err(ParseError {
                line: None,
                field: Some(key.into()),
                message: "missing required field".into(),
            }),
            Some(v) => v
                .as_u64()
                .and_then(|g| usize::try_from(g).ok())
                .ok_or_else(|| fail(key, format!("expected a non-negative integer, found {v}"))),
        }
    };
    let rational = |key: &str| -> Result<Rational, ParseError> {
        match obj.get(key) {
            None => Err(ParseError {
                line: None,
                field: Some(key.into()),
                message: "missing required field".into(),
            }),
            Some(v) => rational_from_json(v).map_err(|m| fail(key, m)),
        }
    };
    let g = genus("genus_source")?;
    let g2 = genus("genus_target")?;
    let gamma = match obj.get("gamma") {
        None => Matrix::zeros(2 * g, 2 * g2),
        Some(v) => parse_gamma(v, g, g2).map_err(|m| fail("gamma", m))?,
    };
    KernelClass::new(g, g2, rational("rank")?, rational("a")?, rational("b")?, gamma, rational("ch2")?)
        .map_err(|e| fail("gamma", e.to_string()))
}

fn parse_gamma(v: &Value, g: usize, g2: usize) -> Result<Matrix, String> {
    let rows = v.as_array().ok_or("expected an array of rows")?;
    if rows.len() != 2 * g {
        return Err(format!("expected {} rows for genus_source {g}, found {}", 2 * g, rows.len()));
    }
    let mut out = Vec::with_capacity(rows.len());
    for (i, row) in rows.iter().enumerate() {
        let row = row.as_array().ok_or_else(|| format!("row {i} is not an array"))?;
        if row.len() != 2 * g2 {
            return Err(format!(
                "row {i} has {} entries, expected {} for genus_target {g2}",
                row.len(),
                2 * g2
            ));
        }
        let parsed = row
            .iter()
            .enumerate()
            .map(|(j, x)| rational_from_json(x).map_err(|m| format!("entry [{i}][{j}]: {m}")))
            .collect::<Result<Vec<_>, _>>()?;
        out.push(parsed);
    }
    Matrix::from_rows(out, 2 * g2).map_err(|e| e.to_string())
}

pub fn parse_kernel_file(path: &Path) -> Result<KernelClass, ParseError> {
    let text = std::fs::read_to_string(path).map_err(|e| ParseError {
        line: None,
        field: None,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    parse_kernel_str(&text).map_err(|e| ParseError {
        message: format!("{}: {}", path.display(), e.message),
        ..e
    })
}

pub fn matrix_to_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| Value::Array(m.row(i).iter().map(rational_to_json).collect()))
            .collect(),
    )
}

pub fn kernel_to_json(e: &KernelClass) -> Value {
    let mut obj = Map::new();
    obj.insert("a".into(), rational_to_json(&e.a));
    obj.insert("b".into(), rational_to_json(&e.b));
    obj.insert("ch2".into(), rational_to_json(&e.ch2));
    obj.insert("gamma".into(), matrix_to_json(e.gamma()));
    obj.insert("genus_source".into(), Value::from(e.genus_source()));
    obj.insert("genus_target".into(), Value::from(e.genus_target()));
    obj.insert("rank".into(), rational_to_json(&e.rank));
    Value::Object(obj)
}

pub fn emit_kernel(e: &KernelClass) -> String {
    canonical_json(&kernel_to_json(e))
}

/// Canonical text of a JSON value, independent of map ordering features.
pub fn canonical_json(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

fn is_scalar(v: &Value) -> bool {
    !matches!(v, Value::Array(_) | Value::Object(_))
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = |n: usize| "  ".repeat(n);
    match v {
        Value::Object(map) if map.is_empty() => out.push_str("{}"),
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (i, k) in keys.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                out.push_str(&Value::String((*k).clone()).to_string());
                out.push_str(": ");
                write_value(out, &map[*k], indent + 1);
                if i + 1 < keys.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push('}');
        }
        Value::Array(items) if items.iter().all(is_scalar) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        Value::Array(items) => {
            out.push_str("[\n");
            for (i, item) in items.iter().enumerate() {
                out.push_str(&pad(indent + 1));
                write_value(out, item, indent + 1);
                if i + 1 < items.len() {
                    out.push(',');
                }
                out.push('\n');
            }
            out.push_str(&pad(indent));
            out.push(']');
        }
        scalar => out.push_str(&scalar.to_string()),
    }
}
