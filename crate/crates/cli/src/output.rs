use serde::Serialize;
use serde_json::Value;

use crate::Format;

/// A finished computation; `pass = false` maps to exit status 1.
pub struct Report {
    pub value: Value,
    pub pass: bool,
}

impl Report {
    pub fn ok(value: impl Serialize) -> Self {
        Report {
            value: serde_json::to_value(value).expect("reports serialize"),
            pass: true,
        }
    }

    pub fn check(value: impl Serialize, pass: bool) -> Self {
        Report {
            value: serde_json::to_value(value).expect("reports serialize"),
            pass,
        }
    }
}

pub enum Failure {
    /// Bad files, schemas or parameters (exit 2).
    Input(anyhow::Error),
    /// Well-formed input that fails a consistency requirement (exit 1).
    Check(Value),
}

impl<E: Into<anyhow::Error>> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Input(e.into())
    }
}

/// Library errors that mean "the data are inconsistent" rather than "the
/// data are malformed".
pub fn classify(e: iwk_core::Error) -> Failure {
    use iwk_core::Error;
    match &e {
        Error::NoConsistentSolution(_) | Error::NonIntegralTotal(_) | Error::NotTorsion => {
            Failure::Check(serde_json::json!({ "error": kebab(&e), "message": e.to_string() }))
        }
        _ => Failure::Input(anyhow::Error::new(e)),
    }
}

fn kebab(e: &iwk_core::Error) -> &'static str {
    use iwk_core::Error;
    match e {
        Error::NoConsistentSolution(_) => "no-consistent-solution",
        Error::NonIntegralTotal(_) => "non-integral-total",
        Error::NotTorsion => "not-torsion",
        _ => "error",
    }
}

pub fn emit(value: &Value, format: Format) {
    match format {
        Format::Json => println!("{}", serde_json::to_string(value).expect("json")),
        Format::Text => {
            let mut out = String::new();
            render(value, "", &mut out);
            print!("{out}");
        }
    }
}

/// `path: value` lines, one per leaf.
fn render(value: &Value, path: &str, out: &mut String) {
    match value {
        Value::Object(map) if !map.is_empty() => {
            for (k, v) in map {
                let p = if path.is_empty() { k.clone() } else { format!("{path}.{k}") };
                render(v, &p, out);
            }
        }
        Value::Array(items) if items.iter().any(|v| v.is_object()) => {
            for (i, v) in items.iter().enumerate() {
                render(v, &format!("{path}[{i}]"), out);
            }
        }
        leaf => {
            let text = match leaf {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out.push_str(&format!("{path}: {text}\n"));
        }
    }
}
