//! `Ш¹_ω(G, M)`: degree-one classes that vanish on every cyclic subgroup.

use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigUint;
use serde::Serialize;

use crate::cohomology::{
    cohomology_group_with, connecting_map_into, cup_cochain, restriction_map, CohomologyClass, CohomologyError,
    CohomologyGroup, ResourceGuard,
};
use crate::group::{cyclic_subgroups, FiniteGroup};
use crate::linalg::{gcd, FinAbGroup, FinAbHom, FinAbSubgroup};
use crate::module::{augmentation_sequence, cartier_pairing, diagonal_sequence, GModule};

#[derive(Debug)]
pub struct ShaGroup {
    ambient: Arc<CohomologyGroup>,
    subgroup: FinAbSubgroup,
    generators: Vec<CohomologyClass>,
}

impl ShaGroup {
    /// `H¹(G, M)`.
    pub fn ambient(&self) -> &Arc<CohomologyGroup> {
        &self.ambient
    }

    /// `Ш` as a subgroup of the presentation of `H¹(G, M)`.
    pub fn subgroup(&self) -> &FinAbSubgroup {
        &self.subgroup
    }

    pub fn structure(&self) -> &FinAbGroup {
        self.subgroup.structure()
    }

    pub fn invariant_factors(&self) -> &[u64] {
        self.structure().invariant_factors()
    }

    pub fn order(&self) -> BigUint {
        self.subgroup.order()
    }

    pub fn is_cyclic(&self) -> bool {
        self.structure().is_cyclic()
    }

    /// Generators matching [`Self::structure`].
    pub fn generators(&self) -> &[CohomologyClass] {
        &self.generators
    }

    pub fn contains(&self, x: &CohomologyClass) -> bool {
        Arc::ptr_eq(x.parent(), &self.ambient) && self.subgroup.contains(x.coords())
    }
}

pub fn sha1_omega(module: &Arc<GModule>) -> Result<ShaGroup, CohomologyError> {
    sha1_omega_with(module, ResourceGuard::default())
}

/// Kernel of the stacked restrictions `H¹(G, M) → ∏ H¹(⟨g⟩, M)`.
pub fn sha1_omega_with(module: &Arc<GModule>, guard: ResourceGuard) -> Result<ShaGroup, CohomologyError> {
    let ambient = cohomology_group_with(module, 1, guard)?;
    let maps: Vec<FinAbHom> = cyclic_subgroups(module.group())
        .iter()
        .filter(|c| c.order() > 1)
        .map(|c| restriction_map(&ambient, c).map(|m| m.hom))
        .collect::<Result<_, _>>()?;
    let subgroup = FinAbHom::stack(ambient.presentation(), &maps).kernel();
    let generators = subgroup.presentation_generators().iter().map(|g| ambient.class(g.clone())).collect();
    Ok(ShaGroup { ambient, subgroup, generators })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Timings {
    pub sha_ms: f64,
    pub connecting_ms: f64,
    pub total_ms: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ShaCertificate {
    pub group_name: String,
    pub group_order: usize,
    pub exponent: usize,
    pub n: u64,
    /// `gcd(n, |G|)`
    #[serde(rename = "N")]
    pub big_n: u64,
    /// `gcd(n, exp G)`
    #[serde(rename = "Nprime")]
    pub big_n_prime: u64,
    pub h1_invariants: Vec<u64>,
    pub sha_invariants: Vec<u64>,
    pub sha_order: String,
    /// Coordinates of `δ′(exp G mod n)` in the presentation of `H¹(G, H′)`.
    pub generator: Vec<u64>,
    pub generator_order: u64,
    pub order_matches: bool,
    pub cyclic: bool,
    pub generator_ok: bool,
    pub timings: Timings,
}

impl ShaCertificate {
    pub fn ok(&self) -> bool {
        self.order_matches && self.cyclic && self.generator_ok
    }
}

pub fn propdata_certificate(group: &Arc<FiniteGroup>, n: u64) -> Result<ShaCertificate, CohomologyError> {
    propdata_certificate_with(group, n, ResourceGuard::default())
}

/// Checks `|Ш¹_ω(G, H′)| = N/N′`, cyclicity, and that `δ′(exp G)` generates,
/// where `δ′ : H⁰(G, Z/n) → H¹(G, H′)` comes from `0 → H′ → (Z/n)[G] → Z/n → 0`.
pub fn propdata_certificate_with(
    group: &Arc<FiniteGroup>,
    n: u64,
    guard: ResourceGuard,
) -> Result<ShaCertificate, CohomologyError> {
    let start = Instant::now();
    let mut timings = Timings::default();
    let ms = |t: Instant| t.elapsed().as_secs_f64() * 1e3;

    let seq = augmentation_sequence(group, n);
    let t = Instant::now();
    let sha = sha1_omega_with(seq.a(), guard)?;
    timings.sha_ms = ms(t);

    let t = Instant::now();
    let h0 = cohomology_group_with(seq.c(), 0, guard)?;
    let x = h0.class_of_normalized(&[group.exponent() as u64 % n])?;
    let h1 = sha.ambient();
    let generator = connecting_map_into(&seq, &h0, h1)?.apply(&x)?.coords().to_vec();
    timings.connecting_ms = ms(t);

    let big_n = gcd(n, group.size() as u64);
    let big_n_prime = gcd(n, group.exponent() as u64);
    let expected = BigUint::from(big_n / big_n_prime);
    let sha_order = sha.order();
    let generator_order = h1.presentation().element_order(&generator);
    let generator_ok = sha.subgroup().contains(&generator) && BigUint::from(generator_order) == sha_order;
    timings.total_ms = ms(start);

    Ok(ShaCertificate {
        group_name: group.name().to_string(),
        group_order: group.size(),
        exponent: group.exponent(),
        n,
        big_n,
        big_n_prime,
        h1_invariants: h1.invariant_factors().to_vec(),
        sha_invariants: sha.invariant_factors().to_vec(),
        sha_order: sha_order.to_string(),
        generator,
        generator_order,
        order_matches: sha_order == expected,
        cyclic: sha.is_cyclic(),
        generator_ok,
        timings,
    })
}

/// Signs `ε ∈ {1, −1}` with `x ∪ δ′(m) = ε·m·δ(x)` for every generator `x`
/// of `H^p(G, H)` and every `m ∈ Z/n`. Both signs survive when the groups
/// involved are 2-torsion.
#[derive(Clone, Debug, Serialize)]
pub struct CupConnecting {
    pub degree: usize,
    pub signs: Vec<i64>,
    pub generators: usize,
    pub products: usize,
    pub nonzero: usize,
}

impl CupConnecting {
    pub fn consistent(&self) -> bool {
        !self.signs.is_empty()
    }
}

pub fn cup_connecting_signs(
    group: &Arc<FiniteGroup>,
    n: u64,
    p: usize,
    guard: ResourceGuard,
) -> Result<CupConnecting, CohomologyError> {
    let diag = diagonal_sequence(group, n);
    let aug = augmentation_sequence(group, n);
    let pairing = cartier_pairing(&diag, &aug);
    let h0 = cohomology_group_with(aug.c(), 0, guard)?;
    let h1 = cohomology_group_with(aug.a(), 1, guard)?;
    let hp = cohomology_group_with(diag.c(), p, guard)?;
    let top = cohomology_group_with(diag.a(), p + 1, guard)?;
    let delta = connecting_map_into(&diag, &hp, &top)?;
    let delta_prime = connecting_map_into(&aug, &h0, &h1)?;

    let ys = (0..n)
        .map(|m| Ok(delta_prime.apply(&h0.class_of_normalized(&[m])?)?.representative()))
        .collect::<Result<Vec<_>, CohomologyError>>()?;
    let mut result = CupConnecting { degree: p, signs: vec![1, -1], generators: hp.presentation().len(), products: 0, nonzero: 0 };
    for i in 0..hp.presentation().len() {
        let x = hp.generator(i);
        let dx = delta.apply(&x)?;
        let xv = x.representative();
        for (m, y) in ys.iter().enumerate() {
            let lhs = top.coordinates_normalized(&cup_cochain(&pairing, p, &xv, 1, y))?;
            result.products += 1;
            result.nonzero += usize::from(lhs.iter().any(|&c| c != 0));
            result.signs.retain(|&eps| dx.scale(eps * m as i64).coords() == lhs.as_slice());
        }
    }
    Ok(result)
}
