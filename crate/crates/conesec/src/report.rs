//! Report documents and their JSON and CSV renderings.

use std::collections::BTreeMap;

use conesec_core::verify::CheckResult;
use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;
use crate::error::Result;

/// A [`CheckResult`] as persisted. Non-finite numbers become JSON `null`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Record {
    pub name: String,
    pub body: String,
    pub parameters: BTreeMap<String, f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub slack: f64,
    pub passed: bool,
    pub assertable: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub notes: String,
}

impl From<&CheckResult> for Record {
    fn from(c: &CheckResult) -> Self {
        Record {
            name: c.name.clone(),
            body: c.body_spec.clone(),
            parameters: c.parameters.clone(),
            lhs: c.lhs,
            rhs: c.rhs,
            ratio: c.ratio(),
            slack: c.slack,
            passed: c.passed,
            assertable: c.assertable,
            notes: c.notes.clone(),
        }
    }
}

/// Column-oriented numeric data for plotting.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Summary {
    pub records: usize,
    pub assertable: usize,
    pub failed: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub config: RunConfig,
    pub summary: Summary,
    pub records: Vec<Record>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub data: Option<Value>,
    /// The only field that differs between identical runs.
    pub wall_clock_seconds: f64,
}

impl Report {
    pub fn new(config: RunConfig, checks: &[CheckResult]) -> Self {
        let records: Vec<Record> = checks.iter().map(Record::from).collect();
        let summary = Summary {
            records: records.len(),
            assertable: checks.iter().filter(|c| c.assertable).count(),
            failed: checks.iter().filter(|c| c.failed()).count(),
        };
        Report {
            tool: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            config,
            summary,
            records,
            table: None,
            data: None,
            wall_clock_seconds: 0.0,
        }
    }

    pub fn with_table(mut self, table: Table) -> Self {
        self.table = Some(table);
        self
    }

    pub fn with_data(mut self, data: Value) -> Self {
        self.data = Some(data);
        self
    }

    pub fn all_passed(&self) -> bool {
        self.summary.failed == 0
    }

    /// 0 when every assertable record passed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.all_passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// The JSON document without the wall-clock field.
    pub fn body_json(&self) -> Result<String> {
        let mut v = serde_json::to_value(self)?;
        if let Value::Object(map) = &mut v {
            map.remove("wall_clock_seconds");
        }
        Ok(serde_json::to_string_pretty(&v)?)
    }

    /// The table if there is one, otherwise the records as
    /// `name,body,n,k,p,lhs,rhs,ratio,passed`.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        match &self.table {
            Some(t) => {
                w.write_record(&t.columns)?;
                for row in &t.rows {
                    w.write_record(row.iter().map(|x| fmt(*x)))?;
                }
            }
            None => {
                w.write_record(["name", "body", "n", "k", "p", "lhs", "rhs", "ratio", "passed"])?;
                for r in &self.records {
                    let param = |key: &str| r.parameters.get(key).map_or(String::new(), |x| fmt(*x));
                    w.write_record([
                        r.name.clone(),
                        r.body.clone(),
                        param("n"),
                        param("k"),
                        param("p"),
                        fmt(r.lhs),
                        fmt(r.rhs),
                        fmt(r.ratio),
                        r.passed.to_string(),
                    ])?;
                }
            }
        }
        let bytes = w.into_inner().map_err(|e| e.into_error())?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

fn fmt(x: f64) -> String {
    if x.is_finite() {
        format!("{x}")
    } else {
        String::new()
    }
}
