use std::sync::Arc;

use crate::group::FiniteGroup;
use crate::linalg::{smith_mod, ModMatrix, SubmoduleBasis};

use super::{regular_module, trivial_module, GModule, ModuleError, ModuleMap};

/// `0 → A → B → C → 0`, checked exact on construction. Also stores a
/// `Z/n`-linear section of `surj` and retraction of `inj` (not equivariant).
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    inj: ModuleMap,
    surj: ModuleMap,
    section: ModMatrix,
    retraction: ModMatrix,
}

impl ShortExactSequence {
    pub fn new(inj: ModuleMap, surj: ModuleMap) -> Result<Self, ModuleError> {
        if inj.target() != surj.source() {
            return Err(ModuleError::Incompatible);
        }
        let n = inj.source().modulus();
        let i = inj.matrix();
        let p = surj.matrix();
        if !SubmoduleBasis::kernel_of(i).summand_orders().is_empty() {
            return Err(ModuleError::NotInjective);
        }
        let section = right_inverse(p).ok_or(ModuleError::NotSurjective)?;
        if !p.mul(i).is_zero() {
            return Err(ModuleError::NotExact);
        }
        let image = SubmoduleBasis::span_of(i);
        if !SubmoduleBasis::kernel_of(p).generators().iter().all(|v| image.contains(v)) {
            return Err(ModuleError::NotExact);
        }
        // Injective maps of free Z/n-modules split (Z/n is self-injective).
        let retraction = right_inverse(&i.transpose()).expect("injective map splits").transpose();
        debug_assert_eq!(retraction.mul(i), ModMatrix::identity(i.cols(), n));
        Ok(ShortExactSequence { inj, surj, section, retraction })
    }

    pub fn inj(&self) -> &ModuleMap {
        &self.inj
    }

    pub fn surj(&self) -> &ModuleMap {
        &self.surj
    }

    pub fn a(&self) -> &Arc<GModule> {
        self.inj.source()
    }

    pub fn b(&self) -> &Arc<GModule> {
        self.inj.target()
    }

    pub fn c(&self) -> &Arc<GModule> {
        self.surj.target()
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.a().group()
    }

    pub fn modulus(&self) -> u64 {
        self.a().modulus()
    }

    /// `s` with `surj · s = 1_C`.
    pub fn section(&self) -> &ModMatrix {
        &self.section
    }

    /// `ρ` with `ρ · inj = 1_A`.
    pub fn retraction(&self) -> &ModMatrix {
        &self.retraction
    }

    /// Replaces the stored section by another right inverse of `surj`.
    pub fn with_section(mut self, section: ModMatrix) -> Self {
        assert_eq!(
            self.surj.matrix().mul(&section),
            ModMatrix::identity(self.c().rank(), self.modulus()),
            "not a section"
        );
        self.section = section;
        self
    }

    /// `0 → C* → B* → A* → 0` with the transposed maps.
    pub fn dual(&self) -> ShortExactSequence {
        let (a, _) = super::dual_module(self.a());
        let (b, _) = super::dual_module(self.b());
        let (c, _) = super::dual_module(self.c());
        let inj = ModuleMap::new(&c, &b, self.surj.matrix().transpose()).expect("transpose is equivariant for duals");
        let surj = ModuleMap::new(&b, &a, self.inj.matrix().transpose()).expect("transpose is equivariant for duals");
        ShortExactSequence::new(inj, surj).expect("dual of a split exact sequence is exact")
    }
}

/// Column-by-column solution of `A·X = I`.
fn right_inverse(a: &ModMatrix) -> Option<ModMatrix> {
    let n = a.modulus();
    let r = a.rows();
    let s = smith_mod(a, true, true);
    let mut cols = Vec::with_capacity(r);
    for j in 0..r {
        let e: Vec<u64> = (0..r).map(|i| u64::from(i == j) % n).collect();
        cols.push(s.solve(&e)?);
    }
    Some(ModMatrix::from_columns(a.cols(), &cols, n))
}

/// A `G`-invariant bilinear form `⟨a, b⟩ = aᵀ·P·b` into `Z/n` (trivial action).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pairing {
    left: Arc<GModule>,
    right: Arc<GModule>,
    matrix: ModMatrix,
    perfect: bool,
}

impl Pairing {
    pub fn new(left: &Arc<GModule>, right: &Arc<GModule>, matrix: ModMatrix) -> Result<Self, ModuleError> {
        if left.modulus() != right.modulus() || left.group() != right.group() {
            return Err(ModuleError::Incompatible);
        }
        if matrix.rows() != left.rank() || matrix.cols() != right.rank() {
            return Err(ModuleError::MapShape {
                rows: matrix.rows(),
                cols: matrix.cols(),
                expected_rows: left.rank(),
                expected_cols: right.rank(),
            });
        }
        for g in left.group().elements() {
            if left.action(g).transpose().mul(&matrix).mul(right.action(g)) != matrix {
                return Err(ModuleError::PairingNotInvariant(g));
            }
        }
        let perfect = matrix.is_invertible();
        Ok(Pairing { left: Arc::clone(left), right: Arc::clone(right), matrix, perfect })
    }

    pub fn left(&self) -> &Arc<GModule> {
        &self.left
    }

    pub fn right(&self) -> &Arc<GModule> {
        &self.right
    }

    pub fn matrix(&self) -> &ModMatrix {
        &self.matrix
    }

    pub fn is_perfect(&self) -> bool {
        self.perfect
    }

    pub fn eval(&self, a: &[u64], b: &[u64]) -> u64 {
        let n = self.matrix.modulus();
        let pb = self.matrix.mul_vec(b);
        a.iter().zip(&pb).fold(0, |acc, (&x, &y)| (acc + x * y) % n)
    }
}

/// `0 → Z/n → (Z/n)[G] → H → 0`, the first map the diagonal. `H` has basis
/// the images `f_g` of `e_g` for `g ≠ 1`, so `e_1 ↦ −Σ f_g`.
pub fn diagonal_sequence(group: &Arc<FiniteGroup>, n: u64) -> ShortExactSequence {
    let size = group.size();
    let nonid: Vec<usize> = group.non_identity().collect();
    let a = Arc::new(trivial_module(group, n, 1));
    let b = Arc::new(regular_module(group, n));
    let inj = ModMatrix::from_fn(size, 1, n, |_, _| 1);
    let proj = ModMatrix::from_fn(size - 1, size, n, |i, j| {
        if j == group.identity() {
            -1
        } else {
            i64::from(nonid[i] == j)
        }
    });
    let lift = ModMatrix::from_fn(size, size - 1, n, |i, j| i64::from(nonid[j] == i));
    let action = group.elements().map(|g| proj.mul(b.action(g)).mul(&lift)).collect();
    let c = Arc::new(GModule::from_parts(group, n, size - 1, action, "H"));
    let inj = ModuleMap::new(&a, &b, inj).expect("diagonal is equivariant");
    let surj = ModuleMap::new(&b, &c, proj).expect("projection is equivariant");
    ShortExactSequence::new(inj, surj).expect("diagonal sequence is exact")
}

/// `0 → H′ → (Z/n)[G] → Z/n → 0`, the second map the augmentation. `H′` has
/// basis `u_g = e_g − e_1` for `g ≠ 1`.
pub fn augmentation_sequence(group: &Arc<FiniteGroup>, n: u64) -> ShortExactSequence {
    let size = group.size();
    let nonid: Vec<usize> = group.non_identity().collect();
    let c = Arc::new(trivial_module(group, n, 1));
    let b = Arc::new(regular_module(group, n));
    let inj = ModMatrix::from_fn(size, size - 1, n, |i, j| {
        if i == group.identity() {
            -1
        } else {
            i64::from(nonid[j] == i)
        }
    });
    let drop_identity = ModMatrix::from_fn(size - 1, size, n, |i, j| i64::from(nonid[i] == j));
    let action = group.elements().map(|g| drop_identity.mul(b.action(g)).mul(&inj)).collect();
    let a = Arc::new(GModule::from_parts(group, n, size - 1, action, "Hprime"));
    let surj = ModMatrix::from_fn(1, size, n, |_, _| 1);
    let inj = ModuleMap::new(&a, &b, inj).expect("inclusion is equivariant");
    let surj = ModuleMap::new(&b, &c, surj).expect("augmentation is equivariant");
    ShortExactSequence::new(inj, surj).expect("augmentation sequence is exact")
}

/// The invariant pairing `H × H′ → Z/n` induced by `⟨e_a, e_b⟩ = δ_ab`; in
/// the bases above it is the identity matrix.
pub fn cartier_pairing(diagonal: &ShortExactSequence, augmentation: &ShortExactSequence) -> Pairing {
    let h = diagonal.c();
    let hp = augmentation.a();
    // ⟨π(x), u⟩ = ⟨x, ι(u)⟩; the diagonal pairs to zero with H′, so any
    // section of π computes it.
    let matrix = diagonal.section().transpose().mul(augmentation.inj().matrix());
    Pairing::new(h, hp, matrix).expect("descended pairing is invariant")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{catalog, lookup};

    #[test]
    fn small_sequences() {
        let c1 = lookup("C1").unwrap();
        assert_eq!(diagonal_sequence(&c1, 4).c().rank(), 0);
        assert_eq!(augmentation_sequence(&c1, 4).a().rank(), 0);

        let c2 = lookup("C2").unwrap();
        let h = diagonal_sequence(&c2, 2);
        assert!(h.c().is_trivial_action());
        let hp = augmentation_sequence(&c2, 4);
        assert_eq!(hp.a().rank(), 1);
        assert_eq!(hp.a().act(1, &[1]), vec![3]);

        let v4 = lookup("V4").unwrap();
        assert_eq!(diagonal_sequence(&v4, 4).c().rank(), 3);
        assert_eq!(augmentation_sequence(&v4, 4).a().rank(), 3);
    }

    #[test]
    fn sequences_validate_everywhere() {
        for e in catalog(12) {
            for n in [1, 2, 3, 4] {
                let d = diagonal_sequence(&e.group, n);
                let a = augmentation_sequence(&e.group, n);
                for m in [d.c(), a.a()] {
                    GModule::new(&e.group, n, m.rank(), m.actions().to_vec()).unwrap();
                }
                let p = cartier_pairing(&d, &a);
                assert!(p.is_perfect());
                assert_eq!(*p.matrix(), ModMatrix::identity(e.group.size() - 1, n));
            }
        }
    }

    #[test]
    fn rejects_non_exact() {
        let g = lookup("C2").unwrap();
        let a = Arc::new(trivial_module(&g, 4, 1));
        let b = Arc::new(regular_module(&g, 4));
        let diag = ModuleMap::new(&a, &b, ModMatrix::from_rows(&[vec![1], vec![1]], 4)).unwrap();
        let aug = ModuleMap::new(&b, &a, ModMatrix::from_rows(&[vec![1, 1]], 4)).unwrap();
        // aug ∘ diag = 2 ≠ 0.
        assert_eq!(ShortExactSequence::new(diag.clone(), aug).unwrap_err(), ModuleError::NotExact);
        let twice = ModuleMap::new(&a, &b, ModMatrix::from_rows(&[vec![2], vec![2]], 4)).unwrap();
        let diff = ModuleMap::new(&b, &a, ModMatrix::zeros(1, 2, 4)).unwrap();
        assert_eq!(ShortExactSequence::new(twice, diff).unwrap_err(), ModuleError::NotInjective);
    }

    #[test]
    fn pairing_invariance_checked() {
        let g = lookup("C2").unwrap();
        let b = Arc::new(regular_module(&g, 4));
        assert!(Pairing::new(&b, &b, ModMatrix::identity(2, 4)).is_ok());
        let skew = ModMatrix::from_rows(&[vec![1, 0], vec![0, 0]], 4);
        assert_eq!(Pairing::new(&b, &b, skew), Err(ModuleError::PairingNotInvariant(1)));
    }
}
