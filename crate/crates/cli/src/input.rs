use anyhow::{anyhow, bail, Context, Result};
use serde_json::Value;
use spinor_forge::bilinear::Spinor;
use spinor_forge::json::{candidate_from_json, named_matrix, parse_json, spinor_from_json, JsonReal};
use spinor_forge::lounesto::random_rational_spinor;
use spinor_forge::symmetry::SymmetryCandidate;

/// Inline text, or the contents of the file named after a leading `@`.
pub fn read_source(flag: &str, arg: &str) -> Result<String> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path).with_context(|| format!("{flag}: cannot read `{path}`")),
        None => Ok(arg.to_owned()),
    }
}

pub fn json_arg(flag: &str, arg: &str) -> Result<Value> {
    let text = read_source(flag, arg)?;
    parse_json(&text).map_err(|e| anyhow!("{flag}: {e}"))
}

/// One spinor or a list of spinors. `random` draws one exact spinor from `seed`.
pub fn spinors<R: JsonReal>(flag: &str, arg: &str, seed: u64) -> Result<(Vec<Spinor<R>>, bool)> {
    if arg.trim() == "random" {
        return Ok((vec![Spinor::from_exact(&random_rational_spinor(seed))], false));
    }
    let v = json_arg(flag, arg)?;
    let is_list = matches!(&v, Value::Array(a) if a.first().is_some_and(|s| matches!(s, Value::Array(p) if p.first().is_some_and(Value::is_array))));
    if is_list {
        let items = v.as_array().expect("checked above");
        let out = items
            .iter()
            .enumerate()
            .map(|(i, s)| spinor_from_json(s).map_err(|e| anyhow!("{flag}: entry {i}: {e}")))
            .collect::<Result<Vec<_>>>()?;
        Ok((out, true))
    } else {
        let s = spinor_from_json(&v).map_err(|e| anyhow!("{flag}: {e}"))?;
        Ok((vec![s], false))
    }
}

/// A matrix name, or JSON (bare matrix or candidate object), inline or from a file.
pub fn candidate<R: JsonReal>(flag: &str, arg: &str) -> Result<SymmetryCandidate<R>> {
    if let Some(m) = named_matrix::<R>(arg) {
        return Ok(SymmetryCandidate::new(m).with_label(arg.trim()));
    }
    let trimmed = arg.trim_start();
    if !(trimmed.starts_with('@') || trimmed.starts_with('[') || trimmed.starts_with('{') || trimmed.starts_with('"')) {
        bail!("{flag}: unknown matrix `{arg}` (expected identity, gamma0..gamma3, gamma5, JSON or @path)");
    }
    let v = json_arg(flag, arg)?;
    candidate_from_json(&v).map_err(|e| anyhow!("{flag}: {e}"))
}
