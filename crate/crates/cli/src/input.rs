//! Input documents and vector-valued flags.

use std::io::Read;
use std::path::Path;

use num_bigint::BigInt;
use serde::Deserialize;

use semiglue::IntVec;

use crate::error::{CliError, CliResult};

/// A matrix entry: a JSON integer or a decimal string, so that output
/// documents (which write integers as strings) can be read back.
#[derive(Deserialize)]
#[serde(untagged)]
enum Entry {
    Int(i64),
    Text(String),
}

/// `{"generators": [[...], ...]}`; one generator per row, other keys ignored.
#[derive(Deserialize)]
struct SemigroupInput {
    generators: Vec<Vec<Entry>>,
}

/// Generators of the input document, row by row.
pub struct Rows {
    pub dim: usize,
    pub rows: Vec<IntVec>,
}

fn entry_value(e: Entry) -> CliResult<BigInt> {
    let v = match e {
        Entry::Int(n) => BigInt::from(n),
        Entry::Text(s) => s
            .trim()
            .parse::<BigInt>()
            .map_err(|_| CliError::Invalid(format!("not an integer: {s:?}")))?,
    };
    if v < BigInt::from(0) {
        return Err(CliError::Invalid(format!("negative entry {v}")));
    }
    Ok(v)
}

pub fn read_rows(path: Option<&Path>) -> CliResult<Rows> {
    let text = match path {
        Some(p) => std::fs::read_to_string(p)
            .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Invalid(format!("cannot read stdin: {e}")))?;
            s
        }
    };
    parse_rows(&text)
}

pub fn parse_rows(text: &str) -> CliResult<Rows> {
    let doc: SemigroupInput = serde_json::from_str(text)
        .map_err(|e| CliError::Invalid(format!("malformed document: {e}")))?;
    let Some(first) = doc.generators.first() else {
        return Err(CliError::Invalid("no generators".into()));
    };
    let dim = first.len();
    if dim == 0 {
        return Err(CliError::Invalid("generators must have at least one coordinate".into()));
    }
    let mut rows = Vec::with_capacity(doc.generators.len());
    for (i, row) in doc.generators.into_iter().enumerate() {
        if row.len() != dim {
            return Err(CliError::Invalid(format!(
                "row {i} has {} entries, expected {dim}",
                row.len()
            )));
        }
        let coords = row.into_iter().map(entry_value).collect::<CliResult<Vec<_>>>()?;
        rows.push(IntVec::new(coords));
    }
    Ok(Rows { dim, rows })
}

/// Parses `a,b,c`; a single value is repeated `dim` times when `broadcast`.
pub fn parse_vector(text: &str, dim: usize, broadcast: bool) -> CliResult<IntVec> {
    let parts = text
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<BigInt>()
                .map_err(|_| CliError::Invalid(format!("not an integer: {p:?}")))
        })
        .collect::<CliResult<Vec<_>>>()?;
    let parts = if broadcast && parts.len() == 1 {
        vec![parts[0].clone(); dim]
    } else {
        parts
    };
    if parts.len() != dim {
        return Err(CliError::Invalid(format!(
            "{text:?} has {} coordinates, expected {dim}",
            parts.len()
        )));
    }
    Ok(IntVec::new(parts))
}

/// Parses a comma-separated list of nonnegative integers.
pub fn parse_list(text: &str) -> CliResult<Vec<u64>> {
    text.split(',')
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|_| CliError::Invalid(format!("not a nonnegative integer: {p:?}")))
        })
        .collect()
}
