//! Deterministic JSON output: keys keep insertion order and floats carry 17 significant
//! digits.

use std::fmt::Write;

use ncball::json::PolyJson;
use ncball::{CMatrix, CVector, Complex64, FreePoly, MatrixTuple};

#[derive(Clone, Debug, PartialEq)]
pub enum Json {
    Null,
    Bool(bool),
    Int(i64),
    Float(f64),
    Str(String),
    Array(Vec<Json>),
    Object(Vec<(String, Json)>),
}

impl Json {
    pub fn object<K: Into<String>>(fields: impl IntoIterator<Item = (K, Json)>) -> Json {
        Json::Object(fields.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }

    /// Single line, newline terminated.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.write(&mut out);
        out.push('\n');
        out
    }

    fn write(&self, out: &mut String) {
        match self {
            Json::Null => out.push_str("null"),
            Json::Bool(b) => out.push_str(if *b { "true" } else { "false" }),
            Json::Int(i) => write!(out, "{i}").expect("write to String"),
            Json::Float(x) if x.is_finite() => write!(out, "{x:.16e}").expect("write to String"),
            Json::Float(_) => out.push_str("null"),
            Json::Str(s) => out.push_str(&serde_json::to_string(s).expect("string escapes")),
            Json::Array(items) => {
                out.push('[');
                for (i, item) in items.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    item.write(out);
                }
                out.push(']');
            }
            Json::Object(fields) => {
                out.push('{');
                for (i, (k, v)) in fields.iter().enumerate() {
                    if i > 0 {
                        out.push(',');
                    }
                    out.push_str(&serde_json::to_string(k).expect("string escapes"));
                    out.push(':');
                    v.write(out);
                }
                out.push('}');
            }
        }
    }

    pub fn to_value(&self) -> serde_json::Value {
        use serde_json::Value;
        match self {
            Json::Null => Value::Null,
            Json::Bool(b) => Value::Bool(*b),
            Json::Int(i) => Value::from(*i),
            Json::Float(x) => serde_json::Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Json::Str(s) => Value::String(s.clone()),
            Json::Array(items) => Value::Array(items.iter().map(Json::to_value).collect()),
            Json::Object(fields) => Value::Object(
                fields
                    .iter()
                    .map(|(k, v)| (k.clone(), v.to_value()))
                    .collect(),
            ),
        }
    }
}

impl From<bool> for Json {
    fn from(b: bool) -> Self {
        Json::Bool(b)
    }
}

impl From<f64> for Json {
    fn from(x: f64) -> Self {
        Json::Float(x)
    }
}

impl From<usize> for Json {
    fn from(n: usize) -> Self {
        Json::Int(n as i64)
    }
}

impl From<&str> for Json {
    fn from(s: &str) -> Self {
        Json::Str(s.to_string())
    }
}

impl<T: Into<Json>> From<Option<T>> for Json {
    fn from(x: Option<T>) -> Self {
        x.map_or(Json::Null, Into::into)
    }
}

pub fn complex(c: Complex64) -> Json {
    Json::Array(vec![Json::Float(c.re), Json::Float(c.im)])
}

pub fn matrix(m: &CMatrix) -> Json {
    Json::Array(
        (0..m.nrows())
            .map(|i| Json::Array((0..m.ncols()).map(|j| complex(m[(i, j)])).collect()))
            .collect(),
    )
}

pub fn vector(v: &CVector) -> Json {
    Json::Array(v.iter().map(|&c| complex(c)).collect())
}

pub fn tuple(x: &MatrixTuple) -> Json {
    Json::object([
        ("d", x.arity().into()),
        ("n", x.level().into()),
        ("matrices", Json::Array(x.matrices().iter().map(matrix).collect())),
    ])
}

pub fn poly(p: &FreePoly) -> Json {
    let schema = PolyJson::from(p);
    Json::object([
        ("d", schema.d.into()),
        (
            "terms",
            Json::Array(
                schema
                    .terms
                    .iter()
                    .map(|t| {
                        Json::object([
                            ("word", Json::Array(t.word.iter().map(|&l| l.into()).collect())),
                            ("re", t.re.into()),
                            ("im", t.im.into()),
                        ])
                    })
                    .collect(),
            ),
        ),
    ])
}
