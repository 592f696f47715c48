//! CSV and JSON writers.

use crate::error::{Result, TriqError};
use crate::sweep::SweepResult;
use serde_json::{json, Map, Value};
use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

/// Column names plus string cells, ready for CSV.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

/// 17 significant digits, so every value survives a round trip.
pub fn format_value(v: f64) -> String {
    format!("{v:.16e}")
}

impl Table {
    pub fn from_sweep(result: &SweepResult) -> Self {
        let (flags, errors) = (result.has_flags(), result.has_errors());
        let rows = result
            .rows
            .iter()
            .map(|r| {
                let mut cells: Vec<String> = r
                    .values
                    .iter()
                    .map(|v| v.map(format_value).unwrap_or_default())
                    .collect();
                cells.push(r.path.to_string());
                if flags {
                    cells.push(r.flags.clone());
                }
                if errors {
                    cells.push(r.error.clone().unwrap_or_default());
                }
                cells
            })
            .collect();
        Table {
            header: result.header(),
            rows,
        }
    }

    /// One row from a flat JSON object. Numbers use [`format_value`];
    /// arrays are expanded into `name_0, name_1, ...`.
    pub fn from_record(record: &Value) -> Self {
        let mut header = Vec::new();
        let mut row = Vec::new();
        let mut push = |k: String, v: &Value| {
            header.push(k);
            row.push(cell(v));
        };
        if let Value::Object(map) = record {
            for (k, v) in map {
                match v {
                    Value::Array(items) => {
                        for (i, item) in items.iter().enumerate() {
                            push(format!("{k}_{i}"), item);
                        }
                    }
                    Value::Object(inner) => {
                        for (ik, iv) in inner {
                            push(format!("{k}_{ik}"), iv);
                        }
                    }
                    other => push(k.clone(), other),
                }
            }
        }
        Table {
            header,
            rows: vec![row],
        }
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::Number(n) => n.as_f64().map(format_value).unwrap_or_default(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Header and rows with LF line endings. `echo` lines are written first as
/// `# key=value` comments.
pub fn write_csv<W: Write>(table: &Table, echo: &BTreeMap<String, String>, mut out: W) -> Result<()> {
    let io = |e: std::io::Error| TriqError::InvalidParameter(format!("write failed: {e}"));
    for (k, v) in echo {
        writeln!(out, "# {k}={v}").map_err(io)?;
    }
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    let csv_err = |e: csv::Error| TriqError::InvalidParameter(format!("csv: {e}"));
    w.write_record(&table.header).map_err(csv_err)?;
    for row in &table.rows {
        w.write_record(row).map_err(csv_err)?;
    }
    w.flush().map_err(io)?;
    Ok(())
}

pub fn csv_string(table: &Table, echo: &BTreeMap<String, String>) -> Result<String> {
    let mut buf = Vec::new();
    write_csv(table, echo, &mut buf)?;
    Ok(String::from_utf8(buf).expect("csv output is utf-8"))
}

/// Write a sweep result as CSV (header and rows only).
pub fn emit_csv(result: &SweepResult, path: &Path) -> Result<()> {
    let text = csv_string(&Table::from_sweep(result), &BTreeMap::new())?;
    std::fs::write(path, text)
        .map_err(|e| TriqError::InvalidParameter(format!("{}: {e}", path.display())))
}

/// Parse CSV text, skipping `#` comment lines.
pub fn read_csv(text: &str) -> Result<Table> {
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let csv_err = |e: csv::Error| TriqError::InvalidParameter(format!("csv: {e}"));
    let header = r.headers().map_err(csv_err)?.iter().map(String::from).collect();
    let rows = r
        .records()
        .map(|rec| rec.map(|r| r.iter().map(String::from).collect()).map_err(csv_err))
        .collect::<Result<Vec<Vec<String>>>>()?;
    Ok(Table { header, rows })
}

pub fn sweep_json(result: &SweepResult, echo: &BTreeMap<String, String>) -> Value {
    let header = result.header();
    let rows: Vec<Value> = result
        .rows
        .iter()
        .map(|r| {
            let mut m = Map::new();
            for (name, v) in result.columns.iter().zip(&r.values) {
                m.insert(name.clone(), v.map_or(Value::Null, |x| json!(x)));
            }
            m.insert("path".into(), json!(r.path));
            if !r.flags.is_empty() {
                m.insert("flags".into(), json!(r.flags));
            }
            if let Some(e) = &r.error {
                m.insert("error".into(), json!(e));
            }
            Value::Object(m)
        })
        .collect();
    json!({ "config": echo, "header": header, "rows": rows })
}

pub fn json_string(value: &Value) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("json values serialize");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sweep::{run_sweep, Axis, AxisName, Quantity, SweepSpec};

    #[test]
    fn one_point_csv_has_two_lines() {
        let spec = SweepSpec::new(Axis::point(AxisName::J, 6.0), vec![Quantity::T3]);
        let r = run_sweep(&spec, 1).unwrap();
        let text = csv_string(&Table::from_sweep(&r), &BTreeMap::new()).unwrap();
        assert_eq!(text.lines().count(), 2);
        assert!(text.starts_with("j,t3,path\n"));
        assert!(!text.contains('\r'));
    }

    #[test]
    fn values_round_trip_exactly() {
        for v in [0.1, -1.0 / 3.0, 6.02e23, 5e-324, 0.487_751_225_600_311] {
            assert_eq!(format_value(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn comments_are_skipped_when_reading() {
        let mut echo = BTreeMap::new();
        echo.insert("j".to_string(), "6".to_string());
        let t = Table {
            header: vec!["a".into(), "b".into()],
            rows: vec![vec!["1".into(), "x, y".into()]],
        };
        let text = csv_string(&t, &echo).unwrap();
        assert!(text.starts_with("# j=6\n"));
        assert_eq!(read_csv(&text).unwrap(), t);
    }

    #[test]
    fn record_flattening() {
        let t = Table::from_record(&json!({"e": [1.0, 2.0], "p": "analytic", "x": 0.5}));
        assert_eq!(t.header, vec!["e_0", "e_1", "p", "x"]);
        assert_eq!(t.rows[0][2], "analytic");
    }
}
