use std::sync::Arc;

use num_bigint::BigUint;
use serde::Serialize;

use crate::group::FiniteGroup;
use crate::linalg::{solve_mod_matrix, FinAbGroup, FinAbHom, FinAbSubgroup, ModMatrix, SubmoduleBasis, Subquotient};
use crate::module::GModule;

use super::complex::{compress, differential, expand, is_normalized};
use super::{coboundary, Cochain, CohomologyError, ResourceGuard};

/// `H^r(G, M) = Z^r / B^r` on normalized cochains, with an invariant-factor
/// presentation and cocycle representatives of its generators.
#[derive(Debug)]
pub struct CohomologyGroup {
    module: Arc<GModule>,
    degree: usize,
    guard: ResourceGuard,
    quotient: Subquotient,
}

/// `H^r(G, M)` under the default resource guard.
pub fn cohomology_group(module: &Arc<GModule>, r: usize) -> Result<Arc<CohomologyGroup>, CohomologyError> {
    cohomology_group_with(module, r, ResourceGuard::default())
}

pub fn cohomology_group_with(
    module: &Arc<GModule>,
    r: usize,
    guard: ResourceGuard,
) -> Result<Arc<CohomologyGroup>, CohomologyError> {
    guard.check(module, r)?;
    let cycles = SubmoduleBasis::kernel_of(&differential(module, r));
    let boundaries = if r == 0 { Vec::new() } else { differential(module, r - 1).columns() };
    let quotient = Subquotient::new(cycles, &boundaries)?;
    Ok(Arc::new(CohomologyGroup { module: Arc::clone(module), degree: r, guard, quotient }))
}

impl CohomologyGroup {
    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.module.group()
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn guard(&self) -> ResourceGuard {
        self.guard
    }

    pub fn presentation(&self) -> &FinAbGroup {
        self.quotient.group()
    }

    pub fn invariant_factors(&self) -> &[u64] {
        self.presentation().invariant_factors()
    }

    pub fn order(&self) -> BigUint {
        self.presentation().order()
    }

    pub fn is_trivial(&self) -> bool {
        self.presentation().is_trivial()
    }

    /// Normalized cocycle representatives of the presentation generators.
    pub fn generator_vectors(&self) -> &[Vec<u64>] {
        self.quotient.generators()
    }

    /// Full-table representatives of the presentation generators.
    pub fn generators(&self) -> Vec<Cochain> {
        self.generator_vectors().iter().map(|v| self.expand(v)).collect()
    }

    pub(crate) fn expand(&self, v: &[u64]) -> Cochain {
        let values = expand(self.group(), self.module.rank(), self.degree, v);
        Cochain { module: Arc::clone(&self.module), degree: self.degree, values }
    }

    /// Coordinates of a normalized cocycle.
    pub fn coordinates_normalized(&self, v: &[u64]) -> Result<Vec<u64>, CohomologyError> {
        self.quotient.coordinates(v).map_err(|_| CohomologyError::NotCocycle)
    }

    /// Coordinates of any cocycle given as a full table. Non-normalized
    /// cocycles are first moved into the normalized complex by subtracting a
    /// coboundary.
    pub fn coordinates(&self, c: &Cochain) -> Result<Vec<u64>, CohomologyError> {
        if c.module.as_ref() != self.module.as_ref() || c.degree != self.degree {
            return Err(CohomologyError::Mismatch);
        }
        let g = self.group();
        let rank = self.module.rank();
        if c.is_normalized() {
            return self.coordinates_normalized(&compress(g, rank, self.degree, &c.values));
        }
        if !coboundary(c).is_zero() {
            return Err(CohomologyError::NotCocycle);
        }
        let normalized = self.normalize(c)?;
        self.coordinates_normalized(&compress(g, rank, self.degree, &normalized.values))
    }

    /// `c − d b` vanishing on degenerate tuples, for a cocycle `c` of degree ≥ 1.
    fn normalize(&self, c: &Cochain) -> Result<Cochain, CohomologyError> {
        let r = self.degree;
        let m = &self.module;
        let rank = m.rank();
        let size = self.group().size();
        let id = self.group().identity();
        let n = m.modulus();
        let degenerate: Vec<usize> = (0..size.pow(r as u32))
            .filter(|&t| {
                let mut x = t;
                (0..r).any(|_| {
                    let g = x % size;
                    x /= size;
                    g == id
                })
            })
            .collect();
        let cols = size.pow(r as u32 - 1) * rank;
        let mut d = ModMatrix::zeros(degenerate.len() * rank, cols, n);
        for j in 0..cols {
            let mut unit = vec![0u64; cols];
            unit[j] = 1;
            let db = coboundary(&Cochain { module: Arc::clone(m), degree: r - 1, values: unit });
            for (row, &t) in degenerate.iter().enumerate() {
                for i in 0..rank {
                    d.set(row * rank + i, j, db.values[t * rank + i]);
                }
            }
        }
        let rhs: Vec<u64> = degenerate.iter().flat_map(|&t| c.values[t * rank..(t + 1) * rank].to_vec()).collect();
        let b = solve_mod_matrix(&d, &rhs).ok_or(CohomologyError::NotCocycle)?;
        let db = coboundary(&Cochain { module: Arc::clone(m), degree: r - 1, values: b });
        let values: Vec<u64> = c.values.iter().zip(&db.values).map(|(&x, &y)| (x + n - y) % n).collect();
        debug_assert!(is_normalized(self.group(), rank, r, &values));
        Ok(Cochain { module: Arc::clone(m), degree: r, values })
    }

    /// Normalized representative `Σ cᵢ·genᵢ`.
    pub fn representative(&self, coords: &[u64]) -> Vec<u64> {
        let n = self.module.modulus();
        let len = super::complex::dim(self.group(), self.module.rank(), self.degree);
        let mut v = vec![0u64; len];
        for (&c, g) in coords.iter().zip(self.generator_vectors()) {
            if c == 0 {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(g) {
                *x = (*x + c % n * y) % n;
            }
        }
        v
    }

    pub fn to_json(&self) -> CohomologyJson {
        CohomologyJson {
            degree: self.degree,
            invariant_factors: self.invariant_factors().to_vec(),
            generators: self.generators().iter().map(Cochain::table).collect(),
        }
    }

    pub fn class(self: &Arc<Self>, coords: Vec<u64>) -> CohomologyClass {
        let coords = self.presentation().reduce(&coords.iter().map(|&x| x as i64).collect::<Vec<_>>());
        CohomologyClass { parent: Arc::clone(self), coords }
    }

    pub fn zero_class(self: &Arc<Self>) -> CohomologyClass {
        CohomologyClass { parent: Arc::clone(self), coords: self.presentation().zero() }
    }

    pub fn generator(self: &Arc<Self>, i: usize) -> CohomologyClass {
        let mut coords = self.presentation().zero();
        coords[i] = 1;
        CohomologyClass { parent: Arc::clone(self), coords }
    }

    pub fn class_of(self: &Arc<Self>, c: &Cochain) -> Result<CohomologyClass, CohomologyError> {
        Ok(CohomologyClass { parent: Arc::clone(self), coords: self.coordinates(c)? })
    }

    pub fn class_of_normalized(self: &Arc<Self>, v: &[u64]) -> Result<CohomologyClass, CohomologyError> {
        Ok(CohomologyClass { parent: Arc::clone(self), coords: self.coordinates_normalized(v)? })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CohomologyJson {
    pub degree: usize,
    pub invariant_factors: Vec<u64>,
    /// One table per generator; each table lists the value at every tuple.
    pub generators: Vec<Vec<Vec<u64>>>,
}

/// An element of a [`CohomologyGroup`], by coordinates in its presentation.
#[derive(Clone, Debug)]
pub struct CohomologyClass {
    parent: Arc<CohomologyGroup>,
    coords: Vec<u64>,
}

impl PartialEq for CohomologyClass {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.parent, &other.parent) && self.coords == other.coords
    }
}

impl Eq for CohomologyClass {}

impl CohomologyClass {
    pub fn parent(&self) -> &Arc<CohomologyGroup> {
        &self.parent
    }

    pub fn coords(&self) -> &[u64] {
        &self.coords
    }

    pub fn degree(&self) -> usize {
        self.parent.degree
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }

    pub fn order(&self) -> u64 {
        self.parent.presentation().element_order(&self.coords)
    }

    fn same_parent(&self, other: &Self) -> Result<(), CohomologyError> {
        if Arc::ptr_eq(&self.parent, &other.parent) {
            Ok(())
        } else {
            Err(CohomologyError::Mismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, CohomologyError> {
        self.same_parent(other)?;
        let coords = self.parent.presentation().add(&self.coords, &other.coords);
        Ok(CohomologyClass { parent: Arc::clone(&self.parent), coords })
    }

    pub fn neg(&self) -> Self {
        CohomologyClass { parent: Arc::clone(&self.parent), coords: self.parent.presentation().neg(&self.coords) }
    }

    pub fn scale(&self, k: i64) -> Self {
        CohomologyClass { parent: Arc::clone(&self.parent), coords: self.parent.presentation().scale(k, &self.coords) }
    }

    /// Normalized cocycle representative.
    pub fn representative(&self) -> Vec<u64> {
        self.parent.representative(&self.coords)
    }

    /// Full-table cocycle representative.
    pub fn cochain(&self) -> Cochain {
        self.parent.expand(&self.representative())
    }
}

/// A homomorphism of cohomology groups in presentation coordinates.
#[derive(Clone, Debug)]
pub struct CohomologyMap {
    pub source: Arc<CohomologyGroup>,
    pub target: Arc<CohomologyGroup>,
    pub hom: FinAbHom,
}

impl CohomologyMap {
    pub fn apply(&self, x: &CohomologyClass) -> Result<CohomologyClass, CohomologyError> {
        if !Arc::ptr_eq(x.parent(), &self.source) {
            return Err(CohomologyError::Mismatch);
        }
        Ok(CohomologyClass { parent: Arc::clone(&self.target), coords: self.hom.apply(&x.coords) })
    }

    pub fn kernel(&self) -> FinAbSubgroup {
        self.hom.kernel()
    }

    pub fn image(&self) -> FinAbSubgroup {
        self.hom.image()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.hom.is_injective() && self.hom.is_surjective()
    }
}
