//! The uniform output record and its JSON / table renderings.
//!
//! Every float is written with 17 significant digits so identical inputs give
//! byte-identical output; non-finite values become `null`.

use merofact_core::verify::CheckRow;
use merofact_core::Error;
use num_complex::Complex64;
use serde_json::{json, Map, Number, Value};

pub fn number(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let text = format!("{x:.16e}");
    serde_json::from_str::<Number>(&text).map(Value::Number).unwrap_or(Value::Null)
}

pub fn complex(z: Complex64) -> Value {
    json!({ "re": number(z.re), "im": number(z.im) })
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub inputs: Map<String, Value>,
    pub value: Value,
    pub method: Option<String>,
    pub residual_table: Option<Vec<CheckRow>>,
    pub error: Option<(String, String)>,
}

impl Report {
    pub fn new(command: &'static str, inputs: Map<String, Value>) -> Self {
        Report { command, inputs, value: Value::Null, method: None, residual_table: None, error: None }
    }

    pub fn failed(command: &'static str, inputs: Map<String, Value>, err: &Error) -> Self {
        Report { error: Some((err.kind().to_string(), err.to_string())), ..Report::new(command, inputs) }
    }

    pub fn all_rows_pass(&self) -> bool {
        self.residual_table.as_ref().is_none_or(|rows| rows.iter().all(|r| r.pass))
    }

    pub fn to_json(&self) -> Value {
        let mut out = Map::new();
        out.insert("command".into(), json!(self.command));
        out.insert("inputs".into(), Value::Object(self.inputs.clone()));
        out.insert("value".into(), self.value.clone());
        out.insert("method".into(), self.method.clone().map_or(Value::Null, Value::String));
        out.insert(
            "residual_table".into(),
            self.residual_table.as_ref().map_or(Value::Null, |rows| Value::Array(rows.iter().map(row_json).collect())),
        );
        if let Some((kind, message)) = &self.error {
            out.insert("error".into(), json!({ "kind": kind, "message": message }));
        }
        Value::Object(out)
    }

    pub fn to_table(&self) -> String {
        let mut out = format!("command  {}\n", self.command);
        if let Some(m) = &self.method {
            out.push_str(&format!("method   {m}\n"));
        }
        if let Some((kind, message)) = &self.error {
            out.push_str(&format!("error    {kind}: {message}\n"));
        }
        match &self.value {
            Value::Null => {}
            Value::Object(o) if o.len() == 2 && o.contains_key("re") && o.contains_key("im") => {
                out.push_str(&format!("value    {} {} i\n", o["re"], o["im"]));
            }
            other => {
                out.push_str("value\n");
                let pretty = serde_json::to_string_pretty(other).unwrap_or_default();
                for line in pretty.lines() {
                    out.push_str(&format!("  {line}\n"));
                }
            }
        }
        if let Some(rows) = &self.residual_table {
            let width = rows.iter().map(|r| r.name.len()).max().unwrap_or(5).max(5);
            out.push_str(&format!("{:<width$}  {:>24}  {:>10}  result\n", "check", "max_residual", "tolerance"));
            for r in rows {
                out.push_str(&format!(
                    "{:<width$}  {:>24}  {:>10.1e}  {}\n",
                    r.name,
                    format!("{:.16e}", r.max_residual),
                    r.tolerance,
                    if r.pass { "PASS" } else { "FAIL" }
                ));
            }
        }
        out
    }
}

fn row_json(r: &CheckRow) -> Value {
    let mut row = Map::new();
    row.insert("check_name".into(), json!(r.name));
    row.insert("max_residual".into(), number(r.max_residual));
    row.insert("tolerance".into(), number(r.tolerance));
    row.insert("pass".into(), json!(r.pass));
    if let Some(v) = r.value {
        row.insert("value".into(), complex(v));
    }
    if let Some(d) = &r.detail {
        row.insert("detail".into(), json!(d));
    }
    Value::Object(row)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits() {
        assert_eq!(number(10.0).to_string(), "1.0000000000000000e+1");
        assert_eq!(number(-0.5772156649015329).to_string(), "-5.7721566490153287e-1");
        assert_eq!(number(f64::INFINITY), Value::Null);
        let back: f64 = number(0.1 + 0.2).to_string().parse().unwrap();
        assert_eq!(back, 0.1 + 0.2);
    }
}
