//! The long exact cohomology sequence of a short exact sequence of modules.

use std::sync::Arc;

use serde::Serialize;

use crate::linalg::{FinAbSubgroup, ModMatrix, SubmoduleBasis};
use crate::module::ShortExactSequence;

use super::complex::differential;
use super::groups::{cohomology_group_with, CohomologyGroup, CohomologyMap};
use super::maps::{connecting_cocycle, connecting_map_into, pushforward_map_into};
use super::{CohomologyError, ResourceGuard};

/// Exactness at one position: image of the incoming map against kernel of
/// the outgoing one.
#[derive(Clone, Debug, Serialize)]
pub struct LesNode {
    pub label: String,
    pub image_order: String,
    pub kernel_order: String,
    pub exact: bool,
}

/// `0 → H⁰(A) → H⁰(B) → H⁰(C) → H¹(A) → … → H^r(C)`, checked at every
/// position up to and including `H^r(C)`.
#[derive(Debug)]
pub struct LongExactSequence {
    pub a: Vec<Arc<CohomologyGroup>>,
    pub b: Vec<Arc<CohomologyGroup>>,
    pub c: Vec<Arc<CohomologyGroup>>,
    pub i: Vec<CohomologyMap>,
    pub p: Vec<CohomologyMap>,
    /// `δ_r : H^r(C) → H^{r+1}(A)` for `r < r_max`.
    pub delta: Vec<CohomologyMap>,
    pub nodes: Vec<LesNode>,
}

impl LongExactSequence {
    pub fn exact(&self) -> bool {
        self.nodes.iter().all(|n| n.exact)
    }
}

fn node(label: String, image: &FinAbSubgroup, kernel: &FinAbSubgroup) -> LesNode {
    LesNode {
        label,
        image_order: image.order().to_string(),
        kernel_order: kernel.order().to_string(),
        exact: image.same_as(kernel),
    }
}

pub fn long_exact_sequence(
    s: &ShortExactSequence,
    r_max: usize,
    guard: Option<ResourceGuard>,
) -> Result<LongExactSequence, CohomologyError> {
    let guard = guard.unwrap_or_default();
    let mut les = LongExactSequence {
        a: Vec::new(),
        b: Vec::new(),
        c: Vec::new(),
        i: Vec::new(),
        p: Vec::new(),
        delta: Vec::new(),
        nodes: Vec::new(),
    };
    for r in 0..=r_max {
        les.a.push(cohomology_group_with(s.a(), r, guard)?);
        les.b.push(cohomology_group_with(s.b(), r, guard)?);
        les.c.push(cohomology_group_with(s.c(), r, guard)?);
    }
    for r in 0..=r_max {
        les.i.push(pushforward_map_into(s.inj(), &les.a[r], &les.b[r])?);
        les.p.push(pushforward_map_into(s.surj(), &les.b[r], &les.c[r])?);
        if r < r_max {
            les.delta.push(connecting_map_into(s, &les.c[r], &les.a[r + 1])?);
        }
    }

    let trivial = FinAbSubgroup::generated_by(les.a[0].presentation(), Vec::new());
    les.nodes.push(node("H^0(A)".into(), &trivial, &les.i[0].kernel()));
    for r in 0..=r_max {
        if r > 0 {
            les.nodes.push(node(format!("H^{r}(A)"), &les.delta[r - 1].image(), &les.i[r].kernel()));
        }
        les.nodes.push(node(format!("H^{r}(B)"), &les.i[r].image(), &les.p[r].kernel()));
        let kernel = if r < r_max { les.delta[r].kernel() } else { connecting_kernel(s, &les.c[r])? };
        les.nodes.push(node(format!("H^{r}(C)"), &les.p[r].image(), &kernel));
    }
    Ok(les)
}

/// `ker δ` on `H^r(C)` without computing `H^{r+1}(A)`: coordinate vectors `c`
/// whose connecting cocycle `Σ cᵢ·δ(genᵢ)` is a coboundary, read off the
/// kernel of `[d^r_A | V]`.
fn connecting_kernel(s: &ShortExactSequence, hc: &Arc<CohomologyGroup>) -> Result<FinAbSubgroup, CohomologyError> {
    let r = hc.degree();
    let n = s.modulus();
    let d = differential(s.a(), r);
    let v: Vec<Vec<u64>> =
        hc.generator_vectors().iter().map(|g| connecting_cocycle(s, r, g)).collect::<Result<_, _>>()?;
    let k = v.len();
    let vm = ModMatrix::from_columns(d.rows(), &v, n);
    let kernel = SubmoduleBasis::kernel_of(&d.hstack(&vm));
    let offset = d.cols();
    let coords = kernel
        .generators()
        .into_iter()
        .map(|g| {
            let tail: Vec<i64> = g[offset..offset + k].iter().map(|&x| x as i64).collect();
            hc.presentation().reduce(&tail)
        })
        .collect();
    Ok(FinAbSubgroup::generated_by(hc.presentation(), coords))
}
