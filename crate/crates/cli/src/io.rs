use std::fs;
use std::path::{Path, PathBuf};

use hyperrect::construction::{Limits, StagedHypergraph, StagedJson};
use hyperrect::geometry::{parse_rational, Point2, RealizationJson};
use hyperrect::hypergraph::OrderedHypergraph;
use hyperrect::Error;
use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::CliResult;

pub fn read_text(path: &Path) -> CliResult<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

pub fn read_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = read_text(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

/// Writes `text` to `out`, or to stdout when there is no path.
pub fn emit(out: Option<&PathBuf>, text: &str) -> CliResult<()> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| Error::Parse(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn pretty<T: serde::Serialize + ?Sized>(v: &T) -> CliResult<String> {
    let mut s = serde_json::to_string_pretty(v).map_err(|e| Error::Parse(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

pub enum LoadedHypergraph {
    Staged(Box<StagedHypergraph>),
    Plain(OrderedHypergraph),
}

impl LoadedHypergraph {
    pub fn base(&self) -> &OrderedHypergraph {
        match self {
            LoadedHypergraph::Staged(s) => s.base(),
            LoadedHypergraph::Plain(h) => h,
        }
    }
}

/// Staged documents are recognized by their `kind` field and rebuilt.
pub fn load_hypergraph(path: &Path, limits: Limits) -> CliResult<LoadedHypergraph> {
    let v: Value = read_json(path)?;
    let parse = |e: serde_json::Error| Error::Parse(format!("{}: {e}", path.display()));
    if v.get("kind").is_some() {
        let doc: StagedJson = serde_json::from_value(v).map_err(parse)?;
        Ok(LoadedHypergraph::Staged(Box::new(StagedHypergraph::from_json(&doc, limits)?)))
    } else {
        Ok(LoadedHypergraph::Plain(serde_json::from_value(v).map_err(parse)?))
    }
}

pub fn load_staged(path: &Path, limits: Limits) -> CliResult<StagedHypergraph> {
    match load_hypergraph(path, limits)? {
        LoadedHypergraph::Staged(s) => Ok(*s),
        LoadedHypergraph::Plain(_) => Err(Error::InvalidParameter(format!(
            "{} is not a staged construction",
            path.display()
        ))),
    }
}

pub fn load_realization(path: &Path) -> CliResult<RealizationJson> {
    read_json(path)
}

fn coordinate(v: &Value) -> CliResult<hyperrect::geometry::Rational> {
    match v {
        Value::String(s) => parse_rational(s),
        Value::Number(n) => parse_rational(&n.to_string()),
        other => Err(Error::Parse(format!("not a coordinate: {other}"))),
    }
}

/// `{"points": [[x, y], ..]}` with coordinates as numbers or `"p/q"`.
pub fn load_points(path: &Path) -> CliResult<Vec<Point2>> {
    let v: Value = read_json(path)?;
    let list = v
        .get("points")
        .and_then(Value::as_array)
        .ok_or_else(|| Error::Parse("expected a \"points\" array".into()))?;
    list.iter()
        .map(|p| match p.as_array().map(Vec::as_slice) {
            Some([x, y]) => Ok(Point2::new(coordinate(x)?, coordinate(y)?)),
            _ => Err(Error::Parse(format!("not a point: {p}"))),
        })
        .collect()
}

pub fn parse_int(s: &str) -> CliResult<BigInt> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

pub fn parse_ints(items: &[String]) -> CliResult<Vec<BigInt>> {
    items.iter().map(|s| parse_int(s)).collect()
}
