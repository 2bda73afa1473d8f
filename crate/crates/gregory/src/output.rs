//! Rows of named cells and their four renderings.

use std::io::Write;

use serde_json::{Map, Value};

use crate::config::Format;
use crate::error::Result;

/// Ordered column names with one JSON value per cell.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table { columns: columns.to_vec(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn objects(&self) -> impl Iterator<Item = Map<String, Value>> + '_ {
        self.rows.iter().map(|r| self.columns.iter().map(|c| c.to_string()).zip(r.iter().cloned()).collect())
    }

    pub fn write(&self, format: Format, out: &mut impl Write) -> Result<()> {
        match format {
            Format::Jsonl => {
                for o in self.objects() {
                    serde_json::to_writer(&mut *out, &o)?;
                    out.write_all(b"\n")?;
                }
            }
            Format::Json => {
                let all: Vec<_> = self.objects().collect();
                serde_json::to_writer_pretty(&mut *out, &all)?;
                out.write_all(b"\n")?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(&mut *out);
                w.write_record(&self.columns)?;
                for r in &self.rows {
                    w.write_record(r.iter().map(plain))?;
                }
                w.flush()?;
            }
            Format::Table => self.write_aligned(out)?,
        }
        Ok(())
    }

    fn write_aligned(&self, out: &mut impl Write) -> Result<()> {
        let cells: Vec<Vec<String>> = self.rows.iter().map(|r| r.iter().map(plain).collect()).collect();
        let mut width: Vec<usize> = self.columns.iter().map(|c| c.len()).collect();
        for r in &cells {
            for (w, c) in width.iter_mut().zip(r) {
                *w = (*w).max(c.chars().count());
            }
        }
        let line = |out: &mut dyn Write, items: &mut dyn Iterator<Item = &str>| -> std::io::Result<()> {
            let mut s = String::new();
            for (i, (c, w)) in items.zip(&width).enumerate() {
                if i > 0 {
                    s.push_str("  ");
                }
                s.push_str(c);
                s.extend(std::iter::repeat_n(' ', w - c.chars().count()));
            }
            writeln!(out, "{}", s.trim_end())
        };
        line(out, &mut self.columns.iter().copied())?;
        for r in &cells {
            line(out, &mut r.iter().map(String::as_str))?;
        }
        Ok(())
    }
}

/// Cell text for CSV and tables: strings unquoted, null empty, objects as
/// `k=v` pairs.
pub fn plain(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Object(m) => m.iter().map(|(k, v)| format!("{k}={}", plain(v))).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    fn sample() -> Table {
        let mut t = Table::new(&["n", "p_n", "ok"]);
        t.push(vec![json!(2), json!("1/2"), json!(true)]);
        t.push(vec![json!(10), json!("-3/160"), Value::Null]);
        t
    }

    fn render(f: Format) -> String {
        let mut buf = Vec::new();
        sample().write(f, &mut buf).unwrap();
        String::from_utf8(buf).unwrap()
    }

    #[test]
    fn formats() {
        assert_eq!(render(Format::Jsonl), "{\"n\":2,\"p_n\":\"1/2\",\"ok\":true}\n{\"n\":10,\"p_n\":\"-3/160\",\"ok\":null}\n");
        assert_eq!(render(Format::Csv), "n,p_n,ok\n2,1/2,true\n10,-3/160,\n");
        assert_eq!(render(Format::Table), "n   p_n     ok\n2   1/2     true\n10  -3/160\n");
        let back: Vec<Map<String, Value>> = serde_json::from_str(&render(Format::Json)).unwrap();
        assert_eq!(back, sample().objects().collect::<Vec<_>>());
    }
}
