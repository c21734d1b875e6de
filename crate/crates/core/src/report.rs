//! Evidence reports and their JSON, CSV and table renderings.
//!
//! All three renderings are byte-deterministic: values live in ordered maps,
//! reals are printed with six decimals and exact rationals as `"p/q"`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

/// One measured or computed quantity in a report cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    Int(i64),
    Real(f64),
    Rational(String),
    Bool(bool),
    Text(String),
}

impl Value {
    fn render(&self) -> String {
        match self {
            Value::Int(v) => v.to_string(),
            Value::Real(v) => format!("{v:.6}"),
            Value::Rational(s) | Value::Text(s) => s.clone(),
            Value::Bool(b) => b.to_string(),
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Value::Real(v) => Some(*v),
            Value::Int(v) => Some(*v as f64),
            _ => None,
        }
    }

    pub fn as_i64(&self) -> Option<i64> {
        match self {
            Value::Int(v) => Some(*v),
            _ => None,
        }
    }

    pub fn as_bool(&self) -> Option<bool> {
        match self {
            Value::Bool(b) => Some(*b),
            _ => None,
        }
    }
}

fn real_json(v: f64) -> Box<RawValue> {
    RawValue::from_string(format!("{v:.6}")).expect("finite decimal is valid JSON")
}

impl Serialize for Value {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Value::Int(v) => serializer.serialize_i64(*v),
            Value::Real(v) if v.is_finite() => real_json(*v).serialize(serializer),
            Value::Real(_) => serializer.serialize_none(),
            Value::Rational(s) | Value::Text(s) => serializer.serialize_str(s),
            Value::Bool(b) => serializer.serialize_bool(*b),
        }
    }
}

/// A parameter point of a report.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GridEntry {
    /// Serialized as `[n, k]`.
    Pair(u32, u32),
    /// Serialized as a six-decimal number.
    Eps(f64),
}

impl Serialize for GridEntry {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            GridEntry::Pair(n, k) => {
                let mut seq = serializer.serialize_seq(Some(2))?;
                seq.serialize_element(n)?;
                seq.serialize_element(k)?;
                seq.end()
            }
            GridEntry::Eps(e) => real_json(*e).serialize(serializer),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Cell {
    pub n: Option<u32>,
    pub k: Option<u32>,
    pub values: BTreeMap<String, Value>,
    pub pass: bool,
}

impl Cell {
    pub fn new(n: Option<u32>, k: Option<u32>) -> Cell {
        Cell {
            n,
            k,
            values: BTreeMap::new(),
            pass: false,
        }
    }

    pub fn set(&mut self, key: &str, value: Value) -> &mut Cell {
        self.values.insert(key.to_string(), value);
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.values.get(key)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

/// Finite evidence for one claim, cell by cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvidenceReport {
    pub claim: String,
    pub grid: Vec<GridEntry>,
    pub cells: Vec<Cell>,
    pub seed: u64,
    pub verdict: Verdict,
}

impl EvidenceReport {
    /// Verdict is derived from the cells: pass iff every cell passes.
    pub fn new(claim: &str, grid: Vec<GridEntry>, cells: Vec<Cell>, seed: u64) -> EvidenceReport {
        let verdict = if cells.iter().all(|c| c.pass) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        EvidenceReport {
            claim: claim.to_string(),
            grid,
            cells,
            seed,
            verdict,
        }
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    fn columns(&self) -> Vec<String> {
        let mut keys: Vec<String> = Vec::new();
        for cell in &self.cells {
            for key in cell.values.keys() {
                if !keys.contains(key) {
                    keys.push(key.clone());
                }
            }
        }
        keys.sort();
        keys
    }

    fn rows(&self) -> (Vec<String>, Vec<Vec<String>>) {
        let keys = self.columns();
        let mut header = vec!["n".to_string(), "k".to_string()];
        header.extend(keys.iter().cloned());
        header.push("pass".to_string());
        let opt = |v: Option<u32>| v.map(|x| x.to_string()).unwrap_or_default();
        let rows = self
            .cells
            .iter()
            .map(|cell| {
                let mut row = vec![opt(cell.n), opt(cell.k)];
                row.extend(
                    keys.iter()
                        .map(|k| cell.values.get(k).map(Value::render).unwrap_or_default()),
                );
                row.push(cell.pass.to_string());
                row
            })
            .collect();
        (header, rows)
    }

    /// One row per cell.
    pub fn to_csv(&self) -> String {
        let (header, rows) = self.rows();
        let mut writer = csv::Writer::from_writer(Vec::new());
        writer.write_record(&header).expect("in-memory write");
        for row in rows {
            writer.write_record(&row).expect("in-memory write");
        }
        String::from_utf8(writer.into_inner().expect("flush")).expect("utf-8")
    }

    pub fn to_table(&self) -> String {
        let (header, rows) = self.rows();
        let mut widths: Vec<usize> = header.iter().map(String::len).collect();
        for row in &rows {
            for (w, field) in widths.iter_mut().zip(row) {
                *w = (*w).max(field.len());
            }
        }
        let mut out = String::new();
        let _ = writeln!(out, "claim: {}", self.claim);
        let _ = writeln!(out, "seed: {}", self.seed);
        for row in std::iter::once(&header).chain(&rows) {
            let line: Vec<String> = row
                .iter()
                .zip(&widths)
                .map(|(f, w)| format!("{f:>w$}"))
                .collect();
            let _ = writeln!(out, "{}", line.join("  ").trim_end());
        }
        let verdict = match self.verdict {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
        };
        let _ = writeln!(out, "verdict: {verdict}");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> EvidenceReport {
        let mut a = Cell::new(Some(2), Some(3));
        a.set("d", Value::Real(0.25)).set("r", Value::Rational("2/3".into()));
        a.pass = true;
        let mut b = Cell::new(Some(2), Some(4));
        b.set("d", Value::Real(1.0 / 3.0)).set("r", Value::Rational("1/2".into()));
        b.pass = false;
        EvidenceReport::new(
            "demo",
            vec![GridEntry::Pair(2, 3), GridEntry::Pair(2, 4)],
            vec![a, b],
            7,
        )
    }

    #[test]
    fn verdict_follows_cells() {
        let r = sample();
        assert_eq!(r.verdict, Verdict::Fail);
        let mut cells = r.cells.clone();
        cells[1].pass = true;
        assert!(EvidenceReport::new("demo", vec![], cells, 0).passed());
    }

    #[test]
    fn json_shape() {
        let json = sample().to_json();
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["claim"], "demo");
        assert_eq!(v["grid"][1], serde_json::json!([2, 4]));
        assert_eq!(v["cells"][0]["values"]["r"], "2/3");
        assert_eq!(v["verdict"], "fail");
        assert_eq!(v["seed"], 7);
        assert!(json.contains("\"d\": 0.333333"));
        assert!(json.contains("\"d\": 0.250000"));
    }

    #[test]
    fn csv_rows() {
        let csv = sample().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "n,k,d,r,pass");
        assert_eq!(lines[1], "2,3,0.250000,2/3,true");
        assert_eq!(lines.len(), 3);
    }

    #[test]
    fn table_mentions_verdict() {
        let t = sample().to_table();
        assert!(t.contains("verdict: FAIL"));
        assert!(t.contains("0.333333"));
    }
}
