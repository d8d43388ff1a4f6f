//! Groups and modules from names, inline JSON, or JSON files.

use std::path::Path;
use std::sync::Arc;

use galcoh_core::group::{lookup, FiniteGroup, GroupJson};
use galcoh_core::module::{module_by_name, GModule, ModuleJson};

use crate::CliError;

fn json_text(spec: &str) -> Result<Option<String>, CliError> {
    let trimmed = spec.trim_start();
    if trimmed.starts_with('{') {
        return Ok(Some(spec.to_string()));
    }
    let path = spec.strip_prefix('@').unwrap_or(spec);
    if spec.starts_with('@') || path.ends_with(".json") || Path::new(path).is_file() {
        return std::fs::read_to_string(path)
            .map(Some)
            .map_err(|e| CliError::Usage(format!("cannot read {path}: {e}")));
    }
    Ok(None)
}

pub fn parse_group(spec: &str) -> Result<Arc<FiniteGroup>, CliError> {
    match json_text(spec)? {
        Some(text) => {
            let json: GroupJson =
                serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("group JSON: {e}")))?;
            let g = json.build().map_err(|e| CliError::Usage(format!("group: {e}")))?;
            Ok(Arc::new(g))
        }
        None => lookup(spec).map_err(|e| CliError::Usage(e.to_string())),
    }
}

/// A module name understood by the engine, or a JSON module whose `n` must
/// agree with `n` when both are given.
pub fn parse_module(group: &Arc<FiniteGroup>, n: Option<u64>, spec: &str) -> Result<Arc<GModule>, CliError> {
    match json_text(spec)? {
        Some(text) => {
            let json: ModuleJson =
                serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("module JSON: {e}")))?;
            if let Some(n) = n.filter(|&n| n != json.n) {
                return Err(CliError::Usage(format!("--n {n} disagrees with module modulus {}", json.n)));
            }
            let m = json.build(group).map_err(|e| CliError::Usage(format!("module: {e}")))?;
            Ok(Arc::new(m))
        }
        None => {
            let n = n.ok_or_else(|| CliError::Usage("--n is required with a named module".into()))?;
            module_by_name(group, n, spec).map(Arc::new).map_err(|e| CliError::Usage(e.to_string()))
        }
    }
}
