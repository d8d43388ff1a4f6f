//! Free `Z/n`-modules with a group action, and maps between them.

mod duality;
mod sequence;

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::group::{FiniteGroup, QuotientMap, Subgroup};
use crate::linalg::{ModMatrix, MAX_MODULUS};

pub use duality::{find_equivariant_isomorphism, verify_duality, DualityReport};
pub use sequence::{augmentation_sequence, cartier_pairing, diagonal_sequence, Pairing, ShortExactSequence};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum ModuleError {
    #[error("modulus {0} is outside the supported range 1..2^32")]
    BadModulus(u64),
    #[error("expected {expected} action matrices, got {actual}")]
    WrongActionCount { expected: usize, actual: usize },
    #[error("action matrix of element {0} is not {1}x{1}")]
    WrongShape(usize, usize),
    #[error("identity element does not act as the identity matrix")]
    IdentityNotIdentity,
    #[error("action is not a homomorphism: action({g}*{h}) != action({g})*action({h})")]
    NotHomomorphism { g: usize, h: usize },
    #[error("action matrix of element {0} is not invertible")]
    NotInvertible(usize),
    #[error("modules are over different groups or moduli")]
    Incompatible,
    #[error("map matrix is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    MapShape { rows: usize, cols: usize, expected_rows: usize, expected_cols: usize },
    #[error("map is not equivariant for element {0}")]
    NotEquivariant(usize),
    #[error("first map of the sequence is not injective")]
    NotInjective,
    #[error("second map of the sequence is not surjective")]
    NotSurjective,
    #[error("sequence is not exact in the middle")]
    NotExact,
    #[error("pairing is not invariant under element {0}")]
    PairingNotInvariant(usize),
    #[error("module was not built by induction from a subgroup")]
    NotInduced,
    #[error("normal subgroup element {0} acts non-trivially")]
    NotTrivialOnKernel(usize),
    #[error("unknown module name {0:?}")]
    UnknownName(String),
    #[error("action key {0:?} is not an element index of the group")]
    BadElementKey(String),
}

/// Records how an induced module was built: basis vector `i` is the coset
/// `cosets[i]` of `subgroup`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InducedFrom {
    pub subgroup: Subgroup,
    pub cosets: Vec<Vec<usize>>,
    pub identity_coset: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GModule {
    group: Arc<FiniteGroup>,
    modulus: u64,
    rank: usize,
    action: Vec<ModMatrix>,
    name: String,
    induced: Option<InducedFrom>,
}

impl GModule {
    /// Validates shape, `action(1) = I` and `action(gh) = action(g)·action(h)`.
    pub fn new(group: &Arc<FiniteGroup>, modulus: u64, rank: usize, action: Vec<ModMatrix>) -> Result<Self, ModuleError> {
        if modulus == 0 || modulus >= MAX_MODULUS {
            return Err(ModuleError::BadModulus(modulus));
        }
        if action.len() != group.size() {
            return Err(ModuleError::WrongActionCount { expected: group.size(), actual: action.len() });
        }
        for (g, a) in action.iter().enumerate() {
            if a.rows() != rank || a.cols() != rank || a.modulus() != modulus {
                return Err(ModuleError::WrongShape(g, rank));
            }
        }
        if action[group.identity()] != ModMatrix::identity(rank, modulus) {
            return Err(ModuleError::IdentityNotIdentity);
        }
        for g in group.elements() {
            for h in group.elements() {
                if action[g].mul(&action[h]) != action[group.mul(g, h)] {
                    return Err(ModuleError::NotHomomorphism { g, h });
                }
            }
        }
        // A homomorphism into matrices already sends g to something with
        // inverse action(g⁻¹); this only guards against user error in `new`.
        for g in group.elements() {
            if action[g].mul(&action[group.inv(g)]) != ModMatrix::identity(rank, modulus) {
                return Err(ModuleError::NotInvertible(g));
            }
        }
        Ok(GModule { group: Arc::clone(group), modulus, rank, action, name: "M".into(), induced: None })
    }

    /// Skips validation; used by constructors whose output is correct by
    /// construction and checked in tests.
    pub(crate) fn from_parts(group: &Arc<FiniteGroup>, modulus: u64, rank: usize, action: Vec<ModMatrix>, name: &str) -> Self {
        debug_assert!(Self::new(group, modulus, rank, action.clone()).is_ok());
        GModule { group: Arc::clone(group), modulus, rank, action, name: name.into(), induced: None }
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn action(&self, g: usize) -> &ModMatrix {
        &self.action[g]
    }

    pub fn actions(&self) -> &[ModMatrix] {
        &self.action
    }

    pub fn induced_from(&self) -> Option<&InducedFrom> {
        self.induced.as_ref()
    }

    pub fn is_trivial_action(&self) -> bool {
        let id = ModMatrix::identity(self.rank, self.modulus);
        self.action.iter().all(|a| *a == id)
    }

    /// `g·v`, with `v` reduced mod n.
    pub fn act(&self, g: usize, v: &[u64]) -> Vec<u64> {
        self.action[g].mul_vec(v)
    }

    /// Restriction of the action to a subgroup; element `i` of the returned
    /// module's group is `sub.members()[i]`.
    pub fn restrict(&self, sub: &Subgroup) -> GModule {
        let group = Arc::new(sub.as_group());
        let action = sub.members().iter().map(|&g| self.action[g].clone()).collect();
        GModule { group, modulus: self.modulus, rank: self.rank, action, name: self.name.clone(), induced: None }
    }

    /// The same module regarded over `G/N`; requires `N` to act trivially.
    pub fn descend(&self, q: &QuotientMap) -> Result<GModule, ModuleError> {
        let id = ModMatrix::identity(self.rank, self.modulus);
        if let Some(&h) = q.normal_subgroup().members().iter().find(|&&h| self.action[h] != id) {
            return Err(ModuleError::NotTrivialOnKernel(h));
        }
        let target = q.target();
        let mut action = vec![None; target.size()];
        for g in self.group.elements() {
            action[q.project(g)].get_or_insert_with(|| self.action[g].clone());
        }
        let action = action.into_iter().map(|a| a.expect("projection is surjective")).collect();
        Ok(GModule { group: Arc::clone(target), modulus: self.modulus, rank: self.rank, action, name: self.name.clone(), induced: None })
    }

    /// A `G/N`-module regarded over `G`.
    pub fn pullback(q: &QuotientMap, m: &GModule) -> Result<GModule, ModuleError> {
        if m.group.as_ref() != q.target().as_ref() {
            return Err(ModuleError::Incompatible);
        }
        let action = q.source().elements().map(|g| m.action[q.project(g)].clone()).collect();
        Ok(GModule::from_parts(q.source(), m.modulus, m.rank, action, &format!("inf({})", m.name)))
    }

    pub fn to_json(&self) -> ModuleJson {
        let action = self
            .group
            .elements()
            .map(|g| {
                let a = &self.action[g];
                let rows = (0..a.rows()).map(|i| a.row(i).into_iter().map(|x| x as i64).collect()).collect();
                (g.to_string(), rows)
            })
            .collect();
        ModuleJson { n: self.modulus, rank: self.rank, action }
    }
}

/// On-disk module format; `action` is keyed by element index. Elements with
/// no entry act trivially only if they are the identity; all others must be
/// listed or be products of listed ones.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub n: u64,
    pub rank: usize,
    pub action: BTreeMap<String, Vec<Vec<i64>>>,
}

impl ModuleJson {
    pub fn build(&self, group: &Arc<FiniteGroup>) -> Result<GModule, ModuleError> {
        if self.n == 0 || self.n >= MAX_MODULUS {
            return Err(ModuleError::BadModulus(self.n));
        }
        let mut action: Vec<Option<ModMatrix>> = vec![None; group.size()];
        for (key, rows) in &self.action {
            let g: usize = key
                .parse()
                .ok()
                .filter(|&g| g < group.size())
                .ok_or_else(|| ModuleError::BadElementKey(key.clone()))?;
            if rows.len() != self.rank || rows.iter().any(|r| r.len() != self.rank) {
                return Err(ModuleError::WrongShape(g, self.rank));
            }
            action[g] = Some(ModMatrix::from_rows(rows, self.n));
        }
        action[group.identity()].get_or_insert_with(|| ModMatrix::identity(self.rank, self.n));
        // Fill in unlisted elements from products of listed ones.
        loop {
            let missing = action.iter().filter(|a| a.is_none()).count();
            if missing == 0 {
                break;
            }
            let known: Vec<usize> = group.elements().filter(|&g| action[g].is_some()).collect();
            for &a in &known {
                for &b in &known {
                    let ab = group.mul(a, b);
                    if action[ab].is_none() {
                        let m = action[a].as_ref().expect("known").mul(action[b].as_ref().expect("known"));
                        action[ab] = Some(m);
                    }
                }
            }
            if action.iter().filter(|a| a.is_none()).count() == missing {
                let g = action.iter().position(Option::is_none).expect("missing element");
                return Err(ModuleError::BadElementKey(g.to_string()));
            }
        }
        let action = action.into_iter().map(|a| a.expect("filled")).collect();
        GModule::new(group, self.n, self.rank, action)
    }
}

/// Equivariant `Z/n`-linear map; `matrix` is `target.rank × source.rank`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleMap {
    source: Arc<GModule>,
    target: Arc<GModule>,
    matrix: ModMatrix,
}

impl ModuleMap {
    pub fn new(source: &Arc<GModule>, target: &Arc<GModule>, matrix: ModMatrix) -> Result<Self, ModuleError> {
        if source.modulus != target.modulus || source.group != target.group {
            return Err(ModuleError::Incompatible);
        }
        if matrix.rows() != target.rank || matrix.cols() != source.rank || matrix.modulus() != source.modulus {
            return Err(ModuleError::MapShape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                expected_rows: target.rank,
                expected_cols: source.rank,
            });
        }
        for g in source.group.elements() {
            if matrix.mul(source.action(g)) != target.action(g).mul(&matrix) {
                return Err(ModuleError::NotEquivariant(g));
            }
        }
        Ok(ModuleMap { source: Arc::clone(source), target: Arc::clone(target), matrix })
    }

    pub fn identity(m: &Arc<GModule>) -> Self {
        ModuleMap { source: Arc::clone(m), target: Arc::clone(m), matrix: ModMatrix::identity(m.rank, m.modulus) }
    }

    pub fn zero(source: &Arc<GModule>, target: &Arc<GModule>) -> Result<Self, ModuleError> {
        Self::new(source, target, ModMatrix::zeros(target.rank, source.rank, source.modulus))
    }

    pub fn source(&self) -> &Arc<GModule> {
        &self.source
    }

    pub fn target(&self) -> &Arc<GModule> {
        &self.target
    }

    pub fn matrix(&self) -> &ModMatrix {
        &self.matrix
    }

    pub fn apply(&self, v: &[u64]) -> Vec<u64> {
        self.matrix.mul_vec(v)
    }

    /// `other ∘ self`
    pub fn then(&self, other: &ModuleMap) -> ModuleMap {
        assert_eq!(self.target, other.source, "composition of incompatible maps");
        ModuleMap {
            source: Arc::clone(&self.source),
            target: Arc::clone(&other.target),
            matrix: other.matrix.mul(&self.matrix),
        }
    }
}

pub fn trivial_module(group: &Arc<FiniteGroup>, modulus: u64, rank: usize) -> GModule {
    let action = vec![ModMatrix::identity(rank, modulus); group.size()];
    GModule::from_parts(group, modulus, rank, action, "trivial")
}

/// `(Z/n)[G]` with left translation; identical to inducing from the trivial subgroup.
pub fn regular_module(group: &Arc<FiniteGroup>, modulus: u64) -> GModule {
    induced_module(group, &Subgroup::trivial(group), modulus).with_name("regular")
}

/// Permutation module on the left cosets `xΔ`, ordered by smallest element.
pub fn induced_module(group: &Arc<FiniteGroup>, sub: &Subgroup, modulus: u64) -> GModule {
    let cosets = sub.left_cosets();
    let k = cosets.len();
    let mut which = vec![0; group.size()];
    for (i, c) in cosets.iter().enumerate() {
        for &x in c {
            which[x] = i;
        }
    }
    let action = group
        .elements()
        .map(|g| {
            let mut m = ModMatrix::zeros(k, k, modulus);
            for (i, c) in cosets.iter().enumerate() {
                m.set(which[group.mul(g, c[0])], i, 1);
            }
            m
        })
        .collect();
    let identity_coset = which[group.identity()];
    let mut m = GModule::from_parts(group, modulus, k, action, "induced");
    m.induced = Some(InducedFrom { subgroup: sub.clone(), cosets, identity_coset });
    m
}

/// `Hom(M, Z/n)` with action `g ↦ action(g⁻¹)ᵀ`, and the evaluation pairing
/// `M × M* → Z/n`.
pub fn dual_module(m: &Arc<GModule>) -> (Arc<GModule>, Pairing) {
    let g = &m.group;
    let action = g.elements().map(|x| m.action(g.inv(x)).transpose()).collect();
    let dual = Arc::new(GModule::from_parts(g, m.modulus, m.rank, action, &format!("dual({})", m.name)));
    let pairing = Pairing::new(m, &dual, ModMatrix::identity(m.rank, m.modulus)).expect("evaluation pairing is invariant");
    (dual, pairing)
}

/// Named constructors: `trivial`, `regular`, `induced:<g1,g2,…>` (generators
/// of the subgroup), `H`, `Hprime`, `dual:<name>`.
pub fn module_by_name(group: &Arc<FiniteGroup>, modulus: u64, name: &str) -> Result<GModule, ModuleError> {
    if modulus == 0 || modulus >= MAX_MODULUS {
        return Err(ModuleError::BadModulus(modulus));
    }
    let unknown = || ModuleError::UnknownName(name.to_string());
    if let Some(inner) = name.strip_prefix("dual:") {
        let m = Arc::new(module_by_name(group, modulus, inner)?);
        return Ok(dual_module(&m).0.as_ref().clone());
    }
    if let Some(gens) = name.strip_prefix("induced:") {
        let gens: Vec<usize> = gens
            .split(',')
            .filter(|s| !s.is_empty())
            .map(|s| s.trim().parse().ok().filter(|&g| g < group.size()))
            .collect::<Option<_>>()
            .ok_or_else(unknown)?;
        let sub = Subgroup::generated_by(group, &gens).map_err(|_| unknown())?;
        return Ok(induced_module(group, &sub, modulus));
    }
    match name {
        "trivial" => Ok(trivial_module(group, modulus, 1)),
        "regular" => Ok(regular_module(group, modulus)),
        "H" => Ok(diagonal_sequence(group, modulus).c().as_ref().clone()),
        "Hprime" => Ok(augmentation_sequence(group, modulus).a().as_ref().clone()),
        _ => Err(unknown()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::lookup;

    #[test]
    fn trivial_modules() {
        let g = lookup("V4").unwrap();
        let m = trivial_module(&g, 4, 1);
        assert!(m.is_trivial_action());
        let z = trivial_module(&lookup("C1").unwrap(), 1, 3);
        assert!(z.act(0, &[5, 6, 7]).iter().all(|&x| x == 0));
    }

    #[test]
    fn regular_c2_swaps() {
        let g = lookup("C2").unwrap();
        let m = regular_module(&g, 4);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.act(1, &[1, 0]), vec![0, 1]);
        assert_eq!(regular_module(&lookup("C1").unwrap(), 4).rank(), 1);
    }

    #[test]
    fn induced_cases() {
        let g = lookup("C4").unwrap();
        let whole = Subgroup::whole(&g);
        assert!(induced_module(&g, &whole, 3).is_trivial_action());
        let triv = induced_module(&g, &Subgroup::trivial(&g), 5);
        assert_eq!(triv.actions(), regular_module(&g, 5).actions());
        let half = Subgroup::generated_by(&g, &[2]).unwrap();
        let m = induced_module(&g, &half, 2);
        assert_eq!(m.rank(), 2);
        assert_eq!(m.act(1, &[1, 0]), vec![0, 1]);
        assert_eq!(m.act(2, &[1, 0]), vec![1, 0]);
    }

    #[test]
    fn double_dual_is_identity() {
        for name in ["D3", "Q8", "C2xC4"] {
            let g = lookup(name).unwrap();
            for m in [regular_module(&g, 4), diagonal_sequence(&g, 4).c().as_ref().clone()] {
                let m = Arc::new(m);
                let (d, p) = dual_module(&m);
                assert!(p.is_perfect());
                let (dd, _) = dual_module(&d);
                assert_eq!(dd.actions(), m.actions());
            }
        }
    }

    #[test]
    fn constructors_validate() {
        for e in crate::group::catalog(8) {
            for n in [1, 2, 6] {
                for name in ["trivial", "regular", "H", "Hprime", "dual:H"] {
                    let m = module_by_name(&e.group, n, name).unwrap();
                    GModule::new(&e.group, n, m.rank(), m.actions().to_vec()).unwrap();
                }
            }
        }
    }

    #[test]
    fn rejects_non_actions() {
        let g = lookup("C2").unwrap();
        let swap = ModMatrix::from_rows(&[vec![0, 1], vec![1, 0]], 4);
        let bad = ModMatrix::from_rows(&[vec![2, 0], vec![0, 1]], 4);
        assert_eq!(
            GModule::new(&g, 4, 2, vec![ModMatrix::identity(2, 4), bad]),
            Err(ModuleError::NotHomomorphism { g: 1, h: 1 })
        );
        assert!(GModule::new(&g, 4, 2, vec![swap.clone(), swap]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = lookup("D4").unwrap();
        let m = module_by_name(&g, 4, "Hprime").unwrap();
        let back = m.to_json().build(&g).unwrap();
        assert_eq!(back.actions(), m.actions());
        // Generators alone suffice.
        let mut j = m.to_json();
        j.action.retain(|k, _| k == "1" || k == "4");
        assert_eq!(j.build(&g).unwrap().actions(), m.actions());
    }

    #[test]
    fn equivariance_checked() {
        let g = lookup("C2").unwrap();
        let reg = Arc::new(regular_module(&g, 4));
        let triv = Arc::new(trivial_module(&g, 4, 1));
        assert!(ModuleMap::new(&reg, &triv, ModMatrix::from_rows(&[vec![1, 1]], 4)).is_ok());
        assert_eq!(
            ModuleMap::new(&reg, &triv, ModMatrix::from_rows(&[vec![1, 0]], 4)),
            Err(ModuleError::NotEquivariant(1))
        );
    }

    #[test]
    fn pullback_round_trip() {
        let g = crate::group::lookup("D4").unwrap();
        let z = crate::group::Subgroup::generated_by(&g, &[g.pow(1, 2)]).unwrap();
        let q = crate::group::quotient(&g, &z).unwrap();
        let m = regular_module(q.target(), 3);
        let p = GModule::pullback(&q, &m).unwrap();
        assert_eq!(p.group().size(), 8);
        assert_eq!(p.descend(&q).unwrap().actions(), m.actions());
        assert!(GModule::pullback(&q, &regular_module(&g, 3)).is_err());
    }
}
