//! Sample files: a comment line naming the grid, then `node_index,value`.
//!
//! ```text
//! # sgfrac-samples v1 n=3 lambda=0.5 fingerprint=8c1f0e22a3b9d4c1
//! node_index,value
//! 0,6.9431844202973712e-2
//! ...
//! ```

use std::io::{Read, Write};

use sgfrac::{GridId, SampleVector};

use crate::failure::{CliResult, Failure};
use crate::table::fmt17;

const TAG: &str = "# sgfrac-samples v1";

pub fn write_samples(samples: &SampleVector, mut sink: impl Write) -> CliResult<()> {
    let id = samples.grid();
    writeln!(sink, "{TAG} n={} lambda={} fingerprint={:016x}", id.n, id.lambda, id.fingerprint)?;
    let mut w = csv::Writer::from_writer(sink);
    w.write_record(["node_index", "value"])?;
    for (k, v) in samples.values().iter().enumerate() {
        w.write_record([k.to_string(), fmt17(*v)])?;
    }
    w.flush()?;
    Ok(())
}

fn parse_header(line: &str) -> Result<GridId, String> {
    let rest = line.strip_prefix(TAG).ok_or_else(|| format!("first line must start with {TAG:?}, found {line:?}"))?;
    let (mut n, mut lambda, mut fp) = (None, None, None);
    for tok in rest.split_whitespace() {
        match tok.split_once('=') {
            Some(("n", v)) => n = v.parse::<usize>().ok(),
            Some(("lambda", v)) => lambda = v.parse::<f64>().ok(),
            Some(("fingerprint", v)) => fp = u64::from_str_radix(v, 16).ok(),
            _ => return Err(format!("unexpected header token {tok:?}")),
        }
    }
    match (n, lambda, fp) {
        (Some(n), Some(lambda), Some(fingerprint)) => Ok(GridId { n, lambda, fingerprint }),
        _ => Err("header must give n, lambda and fingerprint".into()),
    }
}

pub fn read_samples(mut source: impl Read) -> CliResult<SampleVector> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;
    let (first, body) = text.split_once('\n').unwrap_or((&text, ""));
    let id = parse_header(first.trim_end()).map_err(|e| Failure::io(format!("bad samples header: {e}")))?;
    let mut values = Vec::with_capacity(id.n + 1);
    for rec in csv::Reader::from_reader(body.as_bytes()).deserialize::<(usize, f64)>() {
        let (k, v) = rec?;
        if k != values.len() {
            return Err(Failure::io(format!("node_index {k} out of order (expected {})", values.len())));
        }
        values.push(v);
    }
    Ok(SampleVector::new(id, values)?)
}
