//! Result records and their table, CSV and JSON renderings.

use std::fmt::Write as _;

use anyhow::Result;
use ncte::rational::{format as exact, to_decimal};
use ncte::Rational;
use serde::Serialize;

pub const DECIMAL_PLACES: usize = 6;

#[derive(Debug, Clone, Serialize)]
pub struct Value {
    pub name: String,
    pub exact: String,
    pub decimal: String,
}

impl Value {
    pub fn new(name: impl Into<String>, value: &Rational) -> Self {
        Value { name: name.into(), exact: exact(value), decimal: to_decimal(value, DECIMAL_PLACES) }
    }
}

/// Flow carried by one path or tunnel.
#[derive(Debug, Clone, Serialize)]
pub struct FlowRow {
    pub commodity: usize,
    pub route: String,
    pub exact: String,
    pub decimal: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct Detail {
    pub key: String,
    pub value: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ResultRecord {
    pub command: String,
    pub instance: String,
    pub instance_sha256: String,
    pub status: String,
    pub objectives: Vec<Value>,
    pub flows: Vec<FlowRow>,
    pub details: Vec<Detail>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub runtime_seconds: Option<f64>,
}

impl ResultRecord {
    pub fn new(command: &str, instance: &str, sha256: &str) -> Self {
        ResultRecord {
            command: command.to_string(),
            instance: instance.to_string(),
            instance_sha256: sha256.to_string(),
            status: "solved".to_string(),
            objectives: Vec::new(),
            flows: Vec::new(),
            details: Vec::new(),
            runtime_seconds: None,
        }
    }

    pub fn objective(&mut self, name: &str, value: &Rational) -> &mut Self {
        self.objectives.push(Value::new(name, value));
        self
    }

    pub fn flow(&mut self, commodity: usize, route: String, value: &Rational) -> &mut Self {
        self.flows.push(FlowRow {
            commodity,
            route,
            exact: exact(value),
            decimal: to_decimal(value, DECIMAL_PLACES),
        });
        self
    }

    pub fn detail(&mut self, key: &str, value: impl ToString) -> &mut Self {
        self.details.push(Detail { key: key.to_string(), value: value.to_string() });
        self
    }

    pub fn table(&self) -> String {
        let mut rows: Vec<(String, String)> = vec![
            ("command".into(), self.command.clone()),
            ("instance".into(), self.instance.clone()),
            ("sha256".into(), self.instance_sha256.clone()),
            ("status".into(), self.status.clone()),
        ];
        for v in &self.objectives {
            rows.push((v.name.clone(), format!("{} ({})", v.exact, v.decimal)));
        }
        for d in &self.details {
            rows.push((d.key.clone(), d.value.clone()));
        }
        if let Some(t) = self.runtime_seconds {
            rows.push(("runtime".into(), format!("{t:.3} s")));
        }
        let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in &rows {
            let _ = writeln!(out, "{k:<width$}  {v}");
        }
        if !self.flows.is_empty() {
            let cells: Vec<[String; 3]> = self
                .flows
                .iter()
                .map(|f| [f.commodity.to_string(), format!("{} ({})", f.exact, f.decimal), f.route.clone()])
                .collect();
            let w0 = cells.iter().map(|c| c[0].len()).max().unwrap_or(0).max("commodity".len());
            let w1 = cells.iter().map(|c| c[1].len()).max().unwrap_or(0).max("flow".len());
            out.push('\n');
            let _ = writeln!(out, "{:<w0$}  {:<w1$}  route", "commodity", "flow");
            for c in &cells {
                let _ = writeln!(out, "{:<w0$}  {:<w1$}  {}", c[0], c[1], c[2]);
            }
        }
        out
    }

    /// One row per value: `section,name,commodity,route,exact,decimal`.
    pub fn csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["section", "name", "commodity", "route", "exact", "decimal"])?;
        w.write_record(["meta", "command", "", "", &self.command, ""])?;
        w.write_record(["meta", "instance", "", "", &self.instance, ""])?;
        w.write_record(["meta", "sha256", "", "", &self.instance_sha256, ""])?;
        w.write_record(["meta", "status", "", "", &self.status, ""])?;
        for v in &self.objectives {
            w.write_record(["objective", &v.name, "", "", &v.exact, &v.decimal])?;
        }
        for d in &self.details {
            w.write_record(["detail", &d.key, "", "", &d.value, ""])?;
        }
        for f in &self.flows {
            w.write_record(["flow", "", &f.commodity.to_string(), &f.route, &f.exact, &f.decimal])?;
        }
        if let Some(t) = self.runtime_seconds {
            w.write_record(["meta", "runtime_seconds", "", "", &format!("{t:.6}"), ""])?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    pub fn structured(&self) -> Result<String> {
        let mut text = serde_json::to_string_pretty(self)?;
        text.push('\n');
        Ok(text)
    }
}
