use anyhow::Result;
use mop_core::{ExactMatrix, MatPoly};
use serde_json::{json, Value};

use crate::cli::Format;

/// One command's output in every format, plus whether its assertions held.
pub struct Report {
    pub json: Value,
    pub text: String,
    pub csv: Vec<Vec<String>>,
    pub ok: bool,
}

impl Report {
    pub fn new(json: Value, text: String, csv: Vec<Vec<String>>) -> Self {
        Self {
            json,
            text,
            csv,
            ok: true,
        }
    }

    pub fn asserting(mut self, ok: bool) -> Self {
        self.ok = ok;
        self
    }

    pub fn render(&self, format: Format) -> Result<String> {
        Ok(match format {
            Format::Json => serde_json::to_string_pretty(&self.json)? + "\n",
            Format::Text => {
                let mut s = self.text.clone();
                if !s.ends_with('\n') {
                    s.push('\n');
                }
                s
            }
            Format::Csv => {
                let mut w = csv::WriterBuilder::new().flexible(true).from_writer(Vec::new());
                for row in &self.csv {
                    w.write_record(row)?;
                }
                String::from_utf8(w.into_inner()?)?
            }
        })
    }
}

pub fn with_schema(mut v: Value, schema: &str) -> Value {
    v["schema"] = schema.into();
    v
}

pub fn matrix_text(m: &ExactMatrix) -> String {
    let rows: Vec<String> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
        .collect();
    format!("[{}]", rows.join("; "))
}

/// `label,row,col,power,coefficient` lines for the nonzero coefficients.
pub fn matpoly_rows(label: &str, p: &MatPoly) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    for (k, c) in p.coeffs().iter().enumerate() {
        for (r, row) in c.to_rows().iter().enumerate() {
            for (col, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    out.push(vec![
                        label.to_string(),
                        r.to_string(),
                        col.to_string(),
                        k.to_string(),
                        v.to_string(),
                    ]);
                }
            }
        }
    }
    out
}

pub fn matrix_rows(label: &str, m: &ExactMatrix) -> Vec<Vec<String>> {
    let mut out = Vec::new();
    for (r, row) in m.to_rows().iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            out.push(vec![label.to_string(), r.to_string(), c.to_string(), v.to_string()]);
        }
    }
    out
}

pub fn header(cols: &[&str]) -> Vec<String> {
    cols.iter().map(|c| c.to_string()).collect()
}

/// A named pass/fail result with supporting data.
pub struct Check {
    pub name: String,
    pub holds: bool,
    pub detail: Value,
}

impl Check {
    pub fn new(name: impl Into<String>, holds: bool, detail: Value) -> Self {
        Self {
            name: name.into(),
            holds,
            detail,
        }
    }
}

pub fn check_report(schema: &str, params: Value, checks: Vec<Check>) -> Report {
    let ok = checks.iter().all(|c| c.holds);
    let json = json!({
        "schema": schema,
        "params": params,
        "all_hold": ok,
        "checks": checks.iter().map(|c| json!({"name": c.name, "holds": c.holds, "detail": c.detail})).collect::<Vec<_>>(),
    });
    let mut text = String::new();
    for c in &checks {
        let tag = if c.holds { "PASS" } else { "FAIL" };
        text.push_str(&format!("{tag} {}\n", c.name));
    }
    text.push_str(&format!(
        "{} of {} checks hold\n",
        checks.iter().filter(|c| c.holds).count(),
        checks.len()
    ));
    let mut csv = vec![header(&["check", "holds"])];
    csv.extend(checks.iter().map(|c| vec![c.name.clone(), c.holds.to_string()]));
    Report::new(json, text, csv).asserting(ok)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn csv_quotes_and_allows_ragged_rows() {
        let r = Report::new(
            Value::Null,
            String::new(),
            vec![header(&["a", "b"]), vec!["x,y".into()]],
        );
        assert_eq!(r.render(Format::Csv).unwrap(), "a,b\n\"x,y\"\n");
    }

    #[test]
    fn failing_check_fails_the_report() {
        let r = check_report(
            "s",
            Value::Null,
            vec![
                Check::new("one", true, Value::Null),
                Check::new("two", false, json!([1])),
            ],
        );
        assert!(!r.ok);
        assert_eq!(r.json["all_hold"], false);
        assert!(r.render(Format::Text).unwrap().contains("FAIL two\n1 of 2 checks hold"));
    }
}
