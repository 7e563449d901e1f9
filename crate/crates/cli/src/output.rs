use std::collections::BTreeMap;
use std::io;

use serde::Serialize;
use serde_json::{json, Value};

use wordstat::query::StatTable;
use wordstat::{CoefficientPolynomial, VarSet};

/// Bumped on any incompatible change to the record layout.
pub const SCHEMA_VERSION: &str = "1";

#[derive(Serialize)]
pub struct OutputRecord {
    schema_version: &'static str,
    command: String,
    parameters: BTreeMap<String, String>,
    engine: Option<String>,
    result: Value,
}

impl OutputRecord {
    pub fn new(
        command: &str,
        params: &[(&str, String)],
        engine: Option<&str>,
        result: Value,
    ) -> Self {
        OutputRecord {
            schema_version: SCHEMA_VERSION,
            command: command.to_string(),
            parameters: params
                .iter()
                .map(|(k, v)| (k.to_string(), v.clone()))
                .collect(),
            engine: engine.map(str::to_string),
            result,
        }
    }

    pub fn print(&self) {
        println!(
            "{}",
            serde_json::to_string_pretty(self).expect("records serialize")
        );
    }
}

pub fn poly_json(p: &CoefficientPolynomial, vars: &VarSet) -> Value {
    let terms: Vec<Value> = p
        .terms()
        .iter()
        .map(|(e, c)| {
            json!({
                "exponents": e.iter().map(u32::to_string).collect::<Vec<_>>(),
                "coefficient": c.to_string(),
            })
        })
        .collect();
    json!({ "terms": terms, "text": p.display_with(vars).to_string() })
}

pub fn print_table_csv(t: &StatTable) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(io::stdout());
    let mut header: Vec<&str> = t.labels.iter().map(String::as_str).collect();
    header.push("count");
    w.write_record(&header)?;
    for (key, c) in &t.rows {
        let mut row: Vec<String> = key.iter().map(u32::to_string).collect();
        row.push(c.to_string());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
