//! Row-oriented CSV and JSON output.
//!
//! Every float is written with 17 significant digits, which is enough to
//! recover the binary64 value exactly. Unknown values are empty fields in
//! CSV and `null` in JSON.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

pub const ROWS_SCHEMA_VERSION: u32 = 1;

/// One evaluation point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Row {
    pub point: f64,
    pub approx: f64,
    pub exact: Option<f64>,
    pub abs_err: Option<f64>,
    pub rel_err: Option<f64>,
}

impl Row {
    pub fn new(point: f64, approx: f64, exact: Option<f64>) -> Self {
        let abs_err = exact.map(|e| (approx - e).abs());
        let rel_err = match (abs_err, exact) {
            (Some(a), Some(e)) if e != 0.0 => Some(a / e.abs()),
            _ => None,
        };
        Self { point, approx, exact, abs_err, rel_err }
    }
}

/// One setting of a parameter sweep.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub param: String,
    pub value: f64,
    pub point: f64,
    pub approx: f64,
    pub exact: f64,
    pub abs_err: f64,
    pub rel_err: Option<f64>,
}

pub fn fmt17(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

fn opt(x: Option<f64>) -> String {
    x.map(fmt17).unwrap_or_default()
}

pub fn write_rows(rows: &[Row], sink: impl Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["point", "approx", "exact", "abs_err", "rel_err"])?;
    for r in rows {
        w.write_record([fmt17(r.point), fmt17(r.approx), opt(r.exact), opt(r.abs_err), opt(r.rel_err)])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_rows(source: impl Read) -> csv::Result<Vec<Row>> {
    csv::Reader::from_reader(source).deserialize().collect()
}

pub fn write_sweep(rows: &[SweepRow], sink: impl Write) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["param", "value", "point", "approx", "exact", "abs_err", "rel_err"])?;
    for r in rows {
        w.write_record([
            r.param.clone(),
            fmt17(r.value),
            fmt17(r.point),
            fmt17(r.approx),
            fmt17(r.exact),
            fmt17(r.abs_err),
            opt(r.rel_err),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_sweep(source: impl Read) -> csv::Result<Vec<SweepRow>> {
    csv::Reader::from_reader(source).deserialize().collect()
}

/// JSON envelope shared by `eval`, `apply` and `sweep`.
#[derive(Debug, Serialize, Deserialize)]
pub struct Document<P, R> {
    pub schema_version: u32,
    pub command: String,
    pub params: P,
    pub rows: Vec<R>,
}
