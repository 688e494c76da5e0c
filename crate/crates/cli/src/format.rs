//! Algebra and cochain files.
//!
//! Both are single JSON objects with rationals written as strings (`"p"` or
//! `"p/q"`), so no value ever passes through floating point:
//!
//! ```text
//! {"name":"h3","dim":3,"brackets":{"1,2":["0","0","1"]}}
//! {"degree":2,"entries":{"1,2":["0","0","1"],"1,3":["1","0","0"]}}
//! ```
//!
//! Keys are 1-based strictly increasing index tuples. The canonical rendering
//! orders keys numerically, drops zero rows, and ends with a newline.

use deforma_core::algebra::{format_rational, parse_rational};
use deforma_core::{Cochain, Vector};
use serde_json::{Map, Value};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum FormatError {
    #[error("JSON syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("at {path}: {message}")]
    Invalid { path: String, message: String },
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Invalid { path: path.into(), message: message.into() }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraFile {
    pub name: String,
    pub dim: usize,
    /// The bracket table as a 2-cochain (0-based internally).
    pub brackets: Cochain,
}

fn parse_json(text: &str) -> Result<Map<String, Value>, FormatError> {
    let value: Value = serde_json::from_str(text).map_err(|e| FormatError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    match value {
        Value::Object(m) => Ok(m),
        _ => Err(invalid("$", "expected a JSON object")),
    }
}

fn reject_unknown(obj: &Map<String, Value>, allowed: &[&str]) -> Result<(), FormatError> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(invalid(format!("$.{k}"), "unknown field")),
        None => Ok(()),
    }
}

fn positive_int(obj: &Map<String, Value>, key: &str) -> Result<usize, FormatError> {
    let path = format!("$.{key}");
    match obj.get(key) {
        Some(Value::Number(n)) => match n.as_u64() {
            Some(v) if v > 0 => Ok(v as usize),
            _ => Err(invalid(path, "expected a positive integer")),
        },
        Some(_) => Err(invalid(path, "expected a positive integer")),
        None => Err(invalid(path, "missing field")),
    }
}

/// Parses `"i1,...,ip"` into a 0-based strictly increasing tuple.
fn parse_key(key: &str, degree: usize, dim: usize, path: &str) -> Result<Vec<usize>, FormatError> {
    let parts: Vec<&str> = key.split(',').collect();
    if parts.len() != degree {
        return Err(invalid(path, format!("key must list {degree} indices")));
    }
    let mut tuple = Vec::with_capacity(degree);
    for p in parts {
        let i: usize = p
            .parse()
            .ok()
            .filter(|_| p.bytes().all(|b| b.is_ascii_digit()))
            .ok_or_else(|| invalid(path, format!("bad index {p:?}")))?;
        if i == 0 || i > dim {
            return Err(invalid(path, format!("index {i} outside 1..={dim}")));
        }
        tuple.push(i - 1);
    }
    if tuple.windows(2).any(|w| w[0] >= w[1]) {
        return Err(invalid(path, "indices must be strictly increasing"));
    }
    Ok(tuple)
}

fn parse_vector(value: &Value, dim: usize, path: &str) -> Result<Vector, FormatError> {
    let arr = value.as_array().ok_or_else(|| invalid(path, "expected an array of rationals"))?;
    if arr.len() != dim {
        return Err(invalid(path, format!("expected {dim} coefficients, found {}", arr.len())));
    }
    let coords = arr
        .iter()
        .enumerate()
        .map(|(k, v)| {
            let p = format!("{path}[{k}]");
            let s = v.as_str().ok_or_else(|| invalid(&p, "rationals are written as strings"))?;
            parse_rational(s).map_err(|e| match e {
                deforma_core::Error::Input(msg) => invalid(&p, msg),
                other => invalid(&p, other.to_string()),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Vector::from_coords(coords))
}

fn parse_table(value: Option<&Value>, field: &str, degree: usize, dim: usize) -> Result<Cochain, FormatError> {
    let path = format!("$.{field}");
    let obj = match value {
        Some(Value::Object(o)) => o,
        Some(_) => return Err(invalid(path, "expected an object")),
        None => return Err(invalid(path, "missing field")),
    };
    let mut rows = Vec::with_capacity(obj.len());
    for (key, v) in obj {
        let p = format!("{path}.\"{key}\"");
        let tuple = parse_key(key, degree, dim, &p)?;
        rows.push((tuple, parse_vector(v, dim, &p)?));
    }
    Cochain::from_entries(dim, degree, rows).map_err(|e| invalid(path, e.to_string()))
}

fn render_table(c: &Cochain) -> Value {
    let mut m = Map::new();
    for (tuple, v) in c.entries() {
        let key: Vec<String> = tuple.iter().map(|i| (i + 1).to_string()).collect();
        m.insert(key.join(","), render_vector(v));
    }
    Value::Object(m)
}

pub fn render_vector(v: &Vector) -> Value {
    Value::Array(v.coords().iter().map(|q| Value::String(format_rational(q))).collect())
}

pub fn parse_algebra(text: &str) -> Result<AlgebraFile, FormatError> {
    let obj = parse_json(text)?;
    reject_unknown(&obj, &["name", "dim", "brackets"])?;
    let name = match obj.get("name") {
        Some(Value::String(s)) => s.clone(),
        Some(_) => return Err(invalid("$.name", "expected a string")),
        None => return Err(invalid("$.name", "missing field")),
    };
    let dim = positive_int(&obj, "dim")?;
    let brackets = parse_table(obj.get("brackets"), "brackets", 2, dim)?;
    Ok(AlgebraFile { name, dim, brackets })
}

pub fn algebra_value(file: &AlgebraFile) -> Value {
    let mut m = Map::new();
    m.insert("name".into(), Value::String(file.name.clone()));
    m.insert("dim".into(), Value::from(file.dim));
    m.insert("brackets".into(), render_table(&file.brackets));
    Value::Object(m)
}

pub fn render_algebra(file: &AlgebraFile) -> String {
    format!("{}\n", algebra_value(file))
}

/// Parses a cochain file over an algebra of dimension `dim`.
pub fn parse_cochain(text: &str, dim: usize) -> Result<Cochain, FormatError> {
    let obj = parse_json(text)?;
    reject_unknown(&obj, &["degree", "entries"])?;
    let degree = positive_int(&obj, "degree")?;
    parse_table(obj.get("entries"), "entries", degree, dim)
}

pub fn cochain_value(c: &Cochain) -> Value {
    let mut m = Map::new();
    m.insert("degree".into(), Value::from(c.degree()));
    m.insert("entries".into(), render_table(c));
    Value::Object(m)
}

pub fn render_cochain(c: &Cochain) -> String {
    format!("{}\n", cochain_value(c))
}

#[cfg(test)]
mod tests {
    use super::*;

    const H3: &str = "{\"name\":\"h3\",\"dim\":3,\"brackets\":{\"1,2\":[\"0\",\"0\",\"1\"]}}\n";

    #[test]
    fn algebra_round_trip() {
        let a = parse_algebra(H3).unwrap();
        assert_eq!(a.dim, 3);
        assert_eq!(a.brackets.eval_basis(&[0, 1]), Vector::from_ints(&[0, 0, 1]));
        assert_eq!(render_algebra(&a), H3);
    }

    #[test]
    fn canonical_key_order() {
        let text = r#"{"name":"x","dim":10,"brackets":{"2,10":["0","0","0","0","0","0","0","0","0","1"],"1,2":["2/4","0","0","0","0","0","0","0","0","0"]}}"#;
        let a = parse_algebra(text).unwrap();
        let out = render_algebra(&a);
        assert!(out.find("\"1,2\"").unwrap() < out.find("\"2,10\"").unwrap());
        assert!(out.contains("\"1/2\""));
    }

    #[test]
    fn rejects_bad_keys_and_values() {
        let cases = [
            r#"{"name":"x","dim":2,"brackets":{"2,1":["0","1"]}}"#,
            r#"{"name":"x","dim":2,"brackets":{"1,1":["0","1"]}}"#,
            r#"{"name":"x","dim":2,"brackets":{"1,3":["0","1"]}}"#,
            r#"{"name":"x","dim":2,"brackets":{"1,2":["0"]}}"#,
            r#"{"name":"x","dim":2,"brackets":{"1,2":["1/0","1"]}}"#,
            r#"{"name":"x","dim":2,"brackets":{"1,2":[0,1]}}"#,
            r#"{"name":"x","dim":0,"brackets":{}}"#,
            r#"{"name":"x","dim":2,"brackets":{},"extra":1}"#,
            r#"{"dim":2,"brackets":{}}"#,
        ];
        for c in cases {
            assert!(matches!(parse_algebra(c), Err(FormatError::Invalid { .. })), "{c}");
        }
    }

    #[test]
    fn syntax_error_has_position() {
        match parse_algebra("{\n  \"name\": \"x\",\n  oops\n}") {
            Err(FormatError::Syntax { line, column, .. }) => assert_eq!((line, column), (3, 3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn zero_row_path_message() {
        let err = parse_algebra(r#"{"name":"x","dim":2,"brackets":{"1,2":["1/0","1"]}}"#).unwrap_err();
        assert_eq!(err.to_string(), "at $.brackets.\"1,2\"[0]: zero denominator in \"1/0\"");
    }

    #[test]
    fn cochain_round_trip() {
        let text = "{\"degree\":2,\"entries\":{\"1,2\":[\"0\",\"0\",\"1\"],\"1,3\":[\"1\",\"0\",\"0\"]}}\n";
        let c = parse_cochain(text, 3).unwrap();
        assert_eq!(render_cochain(&c), text);
        assert!(parse_cochain(text, 2).is_err());
    }
}
