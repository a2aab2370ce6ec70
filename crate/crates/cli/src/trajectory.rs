//! Trajectory CSV: a header of signal column names, then one row per time
//! sample with exact rationals (`n` or `n/d`).

use behavnet::Rational;

use crate::error::{schema, Result};
use crate::model::parse_rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Table {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Rational>>,
}

pub fn read_csv(text: &str) -> Result<Table> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let headers: Vec<String> = reader.headers()?.iter().map(str::to_string).collect();
    let mut rows = Vec::new();
    for (t, record) in reader.records().enumerate() {
        let record = record?;
        let row = record
            .iter()
            .zip(&headers)
            .map(|(cell, h)| {
                parse_rational(cell).map_err(|e| schema(format!("sample {t}, column `{h}`: {e}")))
            })
            .collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok(Table { headers, rows })
}

pub fn write_csv(headers: &[String], rows: &[Vec<Rational>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(headers)?;
    for row in rows {
        w.write_record(row.iter().map(ToString::to_string))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| csv::Error::from(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

impl Table {
    /// Columns reordered to `wanted` (every wanted name must appear exactly
    /// once; extra columns are an error).
    pub fn select(&self, wanted: &[String], what: &str) -> Result<Vec<Vec<Rational>>> {
        if self.headers.len() != wanted.len() {
            return Err(schema(format!(
                "{what}: expected columns {wanted:?}, found {:?}",
                self.headers
            )));
        }
        let idx = wanted
            .iter()
            .map(|name| {
                let hits: Vec<usize> = (0..self.headers.len())
                    .filter(|&k| &self.headers[k] == name)
                    .collect();
                match hits[..] {
                    [k] => Ok(k),
                    _ => Err(schema(format!(
                        "{what}: expected columns {wanted:?}, found {:?}",
                        self.headers
                    ))),
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self
            .rows
            .iter()
            .map(|row| idx.iter().map(|&k| row[k].clone()).collect())
            .collect())
    }
}
