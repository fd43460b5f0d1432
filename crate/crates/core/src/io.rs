//! The fan file format: `{"dim": n, "rays": [[..], ..], "max_cones": [[..], ..]}`
//! with 0-based ray indices.
//!
//! Serialization is canonical: cones ascending, the cone list sorted, one ray
//! or cone per line. Writing a parsed file reproduces it byte for byte.

use std::fmt::Write as _;

use serde::Deserialize;
use thiserror::Error;

use crate::error::FanError;
use crate::fan::Fan;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FanFileError {
    #[error("malformed fan file: {0}")]
    Parse(String),
    #[error(transparent)]
    Invalid(#[from] FanError),
}

#[derive(Deserialize)]
struct FanFile {
    dim: usize,
    rays: Vec<Vec<i64>>,
    max_cones: Vec<Vec<usize>>,
}

pub fn parse_fan(text: &str) -> Result<Fan, FanFileError> {
    let file: FanFile = serde_json::from_str(text).map_err(|e| FanFileError::Parse(e.to_string()))?;
    Ok(Fan::new(file.dim, file.rays, file.max_cones)?)
}

fn write_rows<T: std::fmt::Display>(out: &mut String, rows: &[Vec<T>], indent: &str) {
    if rows.is_empty() {
        out.push_str("[]");
        return;
    }
    out.push_str("[\n");
    for (i, row) in rows.iter().enumerate() {
        let items: Vec<String> = row.iter().map(ToString::to_string).collect();
        let sep = if i + 1 < rows.len() { "," } else { "" };
        let _ = writeln!(out, "{indent}  [{}]{sep}", items.join(", "));
    }
    out.push_str(indent);
    out.push(']');
}

/// Canonical text of a fan file, ending in a newline.
pub fn write_fan(fan: &Fan) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{{\n  \"dim\": {},", fan.dim());
    out.push_str("  \"rays\": ");
    write_rows(&mut out, &fan.raw_rays(), "  ");
    out.push_str(",\n  \"max_cones\": ");
    write_rows(&mut out, &fan.raw_cones(), "  ");
    out.push_str("\n}\n");
    out
}

/// The fan as a JSON value, for embedding in larger documents.
pub fn fan_to_json(fan: &Fan) -> serde_json::Value {
    serde_json::json!({
        "dim": fan.dim(),
        "rays": fan.raw_rays(),
        "max_cones": fan.raw_cones(),
    })
}

/// A ray list given either as a JSON array of integer arrays or as a fan
/// file, in which case its cones are ignored.
pub fn parse_ray_list(text: &str) -> Result<Vec<Vec<i64>>, FanFileError> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Rays {
        List(Vec<Vec<i64>>),
        File { rays: Vec<Vec<i64>> },
    }
    match serde_json::from_str::<Rays>(text) {
        Ok(Rays::List(rays)) | Ok(Rays::File { rays }) => Ok(rays),
        Err(_) => Err(FanFileError::Parse(
            "expected an array of integer rays or a document with a \"rays\" field".into(),
        )),
    }
}
