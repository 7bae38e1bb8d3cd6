use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use anyhow::{Context, Result};
use serde_json::Value;
use spinor_forge::json::JsonReal;

pub fn open(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).with_context(|| format!("--out: cannot create `{}`", p.display()))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn write_json(path: Option<&Path>, value: &Value) -> Result<()> {
    let mut w = open(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

pub fn write_csv(path: Option<&Path>, header: &[String], rows: &[Vec<String>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(open(path)?);
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

/// CSV cell for a scalar: `p/q` in exact mode, a decimal in float mode.
pub fn cell<R: JsonReal>(x: &R) -> String {
    match x.to_json() {
        Value::String(s) => s,
        v => v.to_string(),
    }
}
