//! Single-shot commands: `hr`, `sha`, `group list`.

use std::sync::Arc;

use galcoh_core::cohomology::{cohomology_group_with, ResourceGuard};
use galcoh_core::group::{catalog, FiniteGroup};
use galcoh_core::module::GModule;
use galcoh_core::sha::{propdata_certificate_with, sha1_omega_with};
use serde_json::{json, Value};

use crate::CliError;

/// `H^r(G, M)`: invariant factors, order, and optionally generator vectors
/// (normalized cochains).
pub fn hr(group: &Arc<FiniteGroup>, module: &Arc<GModule>, degree: usize, generators: bool, guard: ResourceGuard) -> Result<Value, CliError> {
    let h = cohomology_group_with(module, degree, guard)?;
    let mut out = json!({
        "group": group.name(),
        "module": module.name(),
        "n": module.modulus(),
        "degree": degree,
        "invariant_factors": h.invariant_factors(),
        "order": h.order().to_string(),
    });
    if generators {
        out["generators"] = json!(h.generator_vectors());
    }
    Ok(out)
}

/// Without a module: the closed-form certificate for `H′`, and whether it
/// holds. With one: `Ш¹_ω(G, M)` alone, always considered a pass.
pub fn sha(group: &Arc<FiniteGroup>, n: u64, module: Option<&Arc<GModule>>, guard: ResourceGuard) -> Result<(Value, bool), CliError> {
    match module {
        None => {
            let c = propdata_certificate_with(group, n, guard)?;
            let ok = c.ok();
            Ok((serde_json::to_value(&c).expect("certificate serializes"), ok))
        }
        Some(m) => {
            let s = sha1_omega_with(m, guard)?;
            let generators: Vec<&[u64]> = s.generators().iter().map(|x| x.coords()).collect();
            let out = json!({
                "group": group.name(),
                "module": m.name(),
                "n": m.modulus(),
                "h1_invariants": s.ambient().invariant_factors(),
                "sha_invariants": s.invariant_factors(),
                "sha_order": s.order().to_string(),
                "cyclic": s.is_cyclic(),
                "generators": generators,
            });
            Ok((out, true))
        }
    }
}

pub fn group_list(max_order: usize) -> Value {
    let groups: Vec<Value> = catalog(max_order)
        .iter()
        .map(|e| {
            json!({
                "name": e.name,
                "order": e.group.size(),
                "exponent": e.group.exponent(),
                "abelian": e.group.is_abelian(),
            })
        })
        .collect();
    json!({ "max_order": max_order, "groups": groups })
}
