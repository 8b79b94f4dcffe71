use std::fs;
use std::path::Path;

use augq::constructors::{build_ring, parse_group_spec, CayleyGroup, ConstructError, Family, GroupSpec};
use augq::AugmentedRing;
use serde_json::Value;

use crate::CliError;

/// What `--ring` / `--group` resolved to.
pub enum Source {
    Ring(AugmentedRing),
    Group(GroupSpec),
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// A path to ring JSON or Cayley-table JSON, otherwise a group spec.
pub fn resolve(text: &str) -> Result<Source, CliError> {
    let path = Path::new(text);
    if !path.is_file() {
        return parse_group_spec(text).map(Source::Group).map_err(|e| CliError::Usage(format!("{text:?}: {e}")));
    }
    let raw = read(path)?;
    let value: Value = serde_json::from_str(&raw).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    if value.get("table").is_some() {
        let table =
            CayleyGroup::from_json_str(&raw).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
        return Ok(Source::Group(GroupSpec::Table(table)));
    }
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    AugmentedRing::from_json_str(format!("ring:{stem}"), &raw)
        .map(Source::Ring)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

pub fn ring_of(source: Source, family: Family, max_order: usize) -> Result<AugmentedRing, CliError> {
    match source {
        Source::Ring(r) => Ok(r),
        Source::Group(g) => build_ring(family, &g, max_order).map_err(construct_error),
    }
}

pub fn construct_error(e: ConstructError) -> CliError {
    match e {
        ConstructError::Parse { .. } | ConstructError::BadParameter(_) | ConstructError::Json(_) => {
            CliError::Usage(e.to_string())
        }
        ConstructError::InvalidTable(_) => CliError::Usage(e.to_string()),
        other => CliError::Failure(other.to_string()),
    }
}

/// One corpus line: `<family> <group>` or `ring <path>`.
pub enum CorpusEntry {
    Family(Family, String),
    RingFile(String),
}

pub fn parse_corpus(text: &str) -> Result<Vec<(usize, CorpusEntry)>, CliError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let (Some(kind), Some(arg), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(CliError::Usage(format!(
                "corpus line {}: expected `<family> <group>` or `ring <path>`",
                i + 1
            )));
        };
        let entry = if kind == "ring" {
            CorpusEntry::RingFile(arg.to_string())
        } else {
            let family =
                kind.parse().map_err(|e: ConstructError| CliError::Usage(format!("corpus line {}: {e}", i + 1)))?;
            CorpusEntry::Family(family, arg.to_string())
        };
        out.push((i + 1, entry));
    }
    Ok(out)
}
