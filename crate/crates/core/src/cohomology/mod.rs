//! Group cohomology `H^r(G, M)` with coefficients in a free `Z/n`-module.
//!
//! Computations run on normalized cochains. Public [`Cochain`] values are
//! full tables indexed by `(g₁, …, g_r)` in base `|G|`, first argument most
//! significant.

mod complex;
mod groups;
mod les;
mod maps;

use std::sync::Arc;

use crate::linalg::LinalgError;
use crate::module::{GModule, ModuleError};

pub use groups::{cohomology_group, cohomology_group_with, CohomologyClass, CohomologyGroup, CohomologyJson, CohomologyMap};
pub(crate) use maps::cup_cochain;
pub use les::{long_exact_sequence, LesNode, LongExactSequence};
pub use maps::{
    connecting, connecting_map, connecting_map_into, cup, induced_map, inflate, inflation_map, pushforward, pushforward_map,
    pushforward_map_into, restrict, restriction_map, shapiro, shapiro_map,
};

/// Default cap on `|G|^{r+1} · rank`.
pub const DEFAULT_RESOURCE_BOUND: u64 = 2_000_000;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum CohomologyError {
    #[error("resource bound exceeded: {what} needs |G|^(r+1)*rank = {dimension} > {bound}")]
    ResourceBound { what: String, dimension: u128, bound: u64 },
    #[error("cochain is not a cocycle")]
    NotCocycle,
    #[error("cochain has {actual} entries, expected {expected}")]
    WrongLength { expected: usize, actual: usize },
    #[error("classes belong to different cohomology groups")]
    Mismatch,
    #[error("connecting map: d(s∘x) does not lie in the image of the injection")]
    NotInImage,
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Caps the size of the cochain complexes an operation may build.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResourceGuard {
    pub bound: u64,
}

impl Default for ResourceGuard {
    fn default() -> Self {
        ResourceGuard { bound: DEFAULT_RESOURCE_BOUND }
    }
}

impl ResourceGuard {
    pub fn new(bound: u64) -> Self {
        ResourceGuard { bound }
    }

    /// Checks that degree `r` cohomology of `module` is within bounds.
    pub fn check(&self, module: &GModule, r: usize) -> Result<(), CohomologyError> {
        let dimension = (module.group().size() as u128).pow(r as u32 + 1) * module.rank() as u128;
        if dimension > self.bound as u128 {
            return Err(CohomologyError::ResourceBound {
                what: format!("H^{r}({}, {})", module.group().name(), module.name()),
                dimension,
                bound: self.bound,
            });
        }
        Ok(())
    }
}

/// An inhomogeneous cochain as a full table of module vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain {
    module: Arc<GModule>,
    degree: usize,
    values: Vec<u64>,
}

impl Cochain {
    pub fn new(module: &Arc<GModule>, degree: usize, values: Vec<u64>) -> Result<Self, CohomologyError> {
        let expected = module.group().size().pow(degree as u32) * module.rank();
        if values.len() != expected {
            return Err(CohomologyError::WrongLength { expected, actual: values.len() });
        }
        let n = module.modulus();
        let values = values.into_iter().map(|v| v % n).collect();
        Ok(Cochain { module: Arc::clone(module), degree, values })
    }

    pub fn zero(module: &Arc<GModule>, degree: usize) -> Self {
        let len = module.group().size().pow(degree as u32) * module.rank();
        Cochain { module: Arc::clone(module), degree, values: vec![0; len] }
    }

    pub fn module(&self) -> &Arc<GModule> {
        &self.module
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Value at `(g₁, …, g_r)`.
    pub fn at(&self, args: &[usize]) -> &[u64] {
        assert_eq!(args.len(), self.degree);
        let size = self.module.group().size();
        let t = args.iter().fold(0, |acc, &g| acc * size + g);
        let rank = self.module.rank();
        &self.values[t * rank..(t + 1) * rank]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn is_normalized(&self) -> bool {
        complex::is_normalized(self.module.group(), self.module.rank(), self.degree, &self.values)
    }

    /// One module vector per argument tuple.
    pub fn table(&self) -> Vec<Vec<u64>> {
        let rank = self.module.rank().max(1);
        if self.module.rank() == 0 {
            return vec![Vec::new(); self.module.group().size().pow(self.degree as u32)];
        }
        self.values.chunks(rank).map(<[u64]>::to_vec).collect()
    }
}

/// `(dc)(g₁,…,g_{r+1}) = g₁·c(g₂,…) + Σ (−1)^i c(…, g_i g_{i+1}, …) + (−1)^{r+1} c(g₁,…,g_r)`
/// on full tables.
pub fn coboundary(c: &Cochain) -> Cochain {
    let m = &c.module;
    let g = m.group();
    let n = m.modulus();
    let rank = m.rank();
    let size = g.size();
    let r = c.degree;
    let total = size.pow(r as u32 + 1);
    let mut out = vec![0u64; total * rank];
    let mut args = vec![0; r + 1];
    let mut inner = vec![0; r];
    let index = |a: &[usize]| a.iter().fold(0, |acc, &x| acc * size + x);
    for t in 0..total {
        let mut x = t;
        for k in (0..=r).rev() {
            args[k] = x % size;
            x /= size;
        }
        let dst = t * rank;
        let first = index(&args[1..]);
        let v = m.act(args[0], &c.values[first * rank..(first + 1) * rank]);
        for (i, y) in v.into_iter().enumerate() {
            out[dst + i] = (out[dst + i] + y) % n;
        }
        for i in 1..=r {
            inner[..i - 1].copy_from_slice(&args[..i - 1]);
            inner[i - 1] = g.mul(args[i - 1], args[i]);
            inner[i..].copy_from_slice(&args[i + 1..]);
            add_signed(&mut out[dst..dst + rank], &c.values, index(&inner) * rank, i % 2 == 1, n);
        }
        add_signed(&mut out[dst..dst + rank], &c.values, index(&args[..r]) * rank, (r + 1) % 2 == 1, n);
    }
    Cochain { module: Arc::clone(m), degree: r + 1, values: out }
}

fn add_signed(dst: &mut [u64], src: &[u64], at: usize, negative: bool, n: u64) {
    for (k, x) in dst.iter_mut().enumerate() {
        let y = src[at + k];
        *x = if negative { (*x + n - y) % n } else { (*x + y) % n };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::lookup;
    use crate::module::{augmentation_sequence, trivial_module};

    #[test]
    fn zero_and_constants() {
        let g = lookup("V4").unwrap();
        let m = Arc::new(trivial_module(&g, 4, 1));
        assert!(coboundary(&Cochain::zero(&m, 2)).is_zero());
        let v = Cochain::new(&m, 0, vec![3]).unwrap();
        assert!(coboundary(&v).is_zero());
    }

    #[test]
    fn d_squared_full() {
        let g = lookup("V4").unwrap();
        let m = augmentation_sequence(&g, 4).a().clone();
        let len = 4 * m.rank();
        let c = Cochain::new(&m, 1, (0..len as u64).map(|i| (i * i + 1) % 4).collect()).unwrap();
        assert!(coboundary(&coboundary(&c)).is_zero());
    }

    #[test]
    fn guard_trips() {
        let g = lookup("C8").unwrap();
        let m = trivial_module(&g, 2, 3);
        let guard = ResourceGuard::new(2000);
        assert!(guard.check(&m, 2).is_ok());
        assert!(matches!(guard.check(&m, 3), Err(CohomologyError::ResourceBound { dimension: 12288, .. })));
    }
}
