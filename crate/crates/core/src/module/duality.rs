//! Searching for equivariant isomorphisms by solving linear systems mod n.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::group::FiniteGroup;
use crate::linalg::{smith_mod, ModMatrix, SubmoduleBasis};

use super::{augmentation_sequence, diagonal_sequence, GModule};

const MAX_TRIES: usize = 4096;

/// Unknown matrices `X_k` and linear equations `Σ L·X_k·R = C` in their entries.
struct System {
    n: u64,
    shapes: Vec<(usize, usize)>,
    offsets: Vec<usize>,
    rows: Vec<Vec<u64>>,
    rhs: Vec<u64>,
}

impl System {
    fn new(n: u64, shapes: &[(usize, usize)]) -> Self {
        let mut offsets = Vec::with_capacity(shapes.len());
        let mut total = 0;
        for &(r, c) in shapes {
            offsets.push(total);
            total += r * c;
        }
        offsets.push(total);
        System { n, shapes: shapes.to_vec(), offsets, rows: Vec::new(), rhs: Vec::new() }
    }

    fn unknowns(&self) -> usize {
        *self.offsets.last().expect("sentinel")
    }

    /// One scalar equation per entry of `rhs`.
    fn equate(&mut self, terms: &[(&ModMatrix, usize, &ModMatrix)], rhs: &ModMatrix) {
        let n = self.n;
        for i in 0..rhs.rows() {
            for j in 0..rhs.cols() {
                let mut row = vec![0u64; self.unknowns()];
                for &(l, k, r) in terms {
                    let (xr, xc) = self.shapes[k];
                    debug_assert_eq!((l.cols(), r.rows()), (xr, xc));
                    for a in 0..xr {
                        let la = l.get(i, a);
                        if la == 0 {
                            continue;
                        }
                        for b in 0..xc {
                            let idx = self.offsets[k] + a * xc + b;
                            row[idx] = (row[idx] + la * r.get(b, j)) % n;
                        }
                    }
                }
                self.rows.push(row);
                self.rhs.push(rhs.get(i, j));
            }
        }
    }

    /// `X·A(g) = B(g)·X` for every generator `g`.
    fn equivariant(&mut self, k: usize, group: &FiniteGroup, source: &GModule, target: &GModule) {
        let (r, c) = self.shapes[k];
        let (ir, ic) = (ModMatrix::identity(r, self.n), ModMatrix::identity(c, self.n));
        for g in group.generators() {
            let neg = negate(target.action(g));
            self.equate(&[(&ir, k, source.action(g)), (&neg, k, &ic)], &ModMatrix::zeros(r, c, self.n));
        }
    }

    fn matrix(&self) -> ModMatrix {
        let cols = self.unknowns();
        let mut m = ModMatrix::zeros(self.rows.len(), cols, self.n);
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &v) in row.iter().enumerate() {
                if v != 0 {
                    m.set(i, j, v);
                }
            }
        }
        m
    }

    fn unpack(&self, x: &[u64]) -> Vec<ModMatrix> {
        self.shapes
            .iter()
            .enumerate()
            .map(|(k, &(r, c))| {
                let base = self.offsets[k];
                ModMatrix::from_fn(r, c, self.n, |i, j| x[base + i * c + j] as i64)
            })
            .collect()
    }

    /// A solution whose unknown matrices are all invertible: a particular
    /// solution plus kernel combinations, tried in a fixed order.
    fn solve_invertible(&self) -> Option<Vec<ModMatrix>> {
        let n = self.n;
        let m = self.matrix();
        let x0 = smith_mod(&m, true, true).solve(&self.rhs)?;
        let kernel = SubmoduleBasis::kernel_of(&m).generators();
        let ok = |x: &[u64]| {
            let mats = self.unpack(x);
            mats.iter().all(ModMatrix::is_invertible).then_some(mats)
        };
        if let Some(m) = ok(&x0) {
            return Some(m);
        }
        let shift = |x: &[u64], k: &[u64], c: u64| x.iter().zip(k).map(|(&a, &b)| (a + c * b) % n).collect::<Vec<_>>();
        for k in &kernel {
            if let Some(m) = ok(&shift(&x0, k, 1)) {
                return Some(m);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..MAX_TRIES {
            let mut x = x0.clone();
            for k in &kernel {
                x = shift(&x, k, rng.gen_range(0..n));
            }
            if let Some(m) = ok(&x) {
                return Some(m);
            }
        }
        None
    }
}

fn negate(m: &ModMatrix) -> ModMatrix {
    let n = m.modulus();
    ModMatrix::from_fn(m.rows(), m.cols(), n, |i, j| -(m.get(i, j) as i64))
}

fn rows_of(m: &ModMatrix) -> Vec<Vec<u64>> {
    (0..m.rows()).map(|i| m.row(i)).collect()
}

/// An invertible `X` with `X·A_M(g) = A_N(g)·X`, if the search finds one.
pub fn find_equivariant_isomorphism(m: &GModule, target: &GModule) -> Option<ModMatrix> {
    if m.rank() != target.rank() || m.modulus() != target.modulus() || m.group() != target.group() {
        return None;
    }
    let mut sys = System::new(m.modulus(), &[(m.rank(), m.rank())]);
    sys.equivariant(0, m.group(), m, target);
    sys.solve_invertible().map(|mut v| v.remove(0))
}

/// Isomorphisms from the augmentation sequence `H′ → B → Z/n` onto the dual
/// of the diagonal sequence `H* → B* → (Z/n)*`.
#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub group: String,
    pub n: u64,
    pub ok: bool,
    /// `H′ → H*`
    pub phi_a: Vec<Vec<u64>>,
    /// `(Z/n)[G] → (Z/n)[G]*`
    pub phi_b: Vec<Vec<u64>>,
    /// `Z/n → (Z/n)*`
    pub phi_c: Vec<Vec<u64>>,
    pub failure: Option<String>,
}

pub fn verify_duality(group: &Arc<FiniteGroup>, n: u64) -> DualityReport {
    let diag = diagonal_sequence(group, n);
    let aug = augmentation_sequence(group, n);
    let dual = diag.dual();
    // dual: H* --πᵀ--> B* --injᵀ--> A*
    let (ha, hb, hc) = (aug.a(), aug.b(), aug.c());
    let (da, db, dc) = (dual.a(), dual.b(), dual.c());
    let mut report = DualityReport {
        group: group.name().to_string(),
        n,
        ok: false,
        phi_a: Vec::new(),
        phi_b: Vec::new(),
        phi_c: Vec::new(),
        failure: None,
    };

    let mut sys = System::new(n, &[(da.rank(), ha.rank()), (db.rank(), hb.rank()), (dc.rank(), hc.rank())]);
    sys.equivariant(0, group, ha, da);
    sys.equivariant(1, group, hb, db);
    sys.equivariant(2, group, hc, dc);
    let id = |k| ModMatrix::identity(k, n);
    // πᵀ·φ_A = φ_B·ι′
    let neg_di = negate(dual.inj().matrix());
    sys.equate(&[(&neg_di, 0, &id(ha.rank())), (&id(db.rank()), 1, aug.inj().matrix())], &ModMatrix::zeros(db.rank(), ha.rank(), n));
    // injᵀ·φ_B = φ_C·j′
    let neg_ds = negate(dual.surj().matrix());
    sys.equate(&[(&neg_ds, 1, &id(hb.rank())), (&id(dc.rank()), 2, aug.surj().matrix())], &ModMatrix::zeros(dc.rank(), hb.rank(), n));
    // Normalize φ_C = 1.
    sys.equate(&[(&id(1), 2, &id(1))], &id(1));

    let Some(phis) = sys.solve_invertible() else {
        report.failure = Some("no invertible solution of the commuting-square system".into());
        return report;
    };
    report.phi_a = rows_of(&phis[0]);
    report.phi_b = rows_of(&phis[1]);
    report.phi_c = rows_of(&phis[2]);
    report.failure = check_squares(group, &phis, &[ha, hb, hc], &[da, db, dc], &aug, &dual);
    report.ok = report.failure.is_none();
    report
}

/// Independent re-check of a candidate; names the first failing condition.
fn check_squares(
    group: &FiniteGroup,
    phis: &[ModMatrix],
    src: &[&Arc<GModule>; 3],
    dst: &[&Arc<GModule>; 3],
    aug: &super::ShortExactSequence,
    dual: &super::ShortExactSequence,
) -> Option<String> {
    for (k, name) in ["phi_a", "phi_b", "phi_c"].iter().enumerate() {
        if !phis[k].is_invertible() {
            return Some(format!("{name} is not invertible"));
        }
        for g in group.elements() {
            if phis[k].mul(src[k].action(g)) != dst[k].action(g).mul(&phis[k]) {
                return Some(format!("{name} is not equivariant for element {g}"));
            }
        }
    }
    if dual.inj().matrix().mul(&phis[0]) != phis[1].mul(aug.inj().matrix()) {
        return Some("left square (inclusion of H') does not commute".into());
    }
    if dual.surj().matrix().mul(&phis[1]) != phis[2].mul(aug.surj().matrix()) {
        return Some("right square (augmentation) does not commute".into());
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{catalog, lookup};
    use crate::module::{dual_module, regular_module};

    #[test]
    fn duality_small() {
        let r = verify_duality(&lookup("C1").unwrap(), 4);
        assert!(r.ok, "{:?}", r.failure);
        let r = verify_duality(&lookup("C2").unwrap(), 4);
        assert!(r.ok, "{:?}", r.failure);
        assert_eq!((r.phi_a.len(), r.phi_b.len()), (1, 2));
        assert!(verify_duality(&lookup("V4").unwrap(), 4).ok);
    }

    #[test]
    fn duality_catalog() {
        for e in catalog(8) {
            for n in [1, 2, 3, 8] {
                let r = verify_duality(&e.group, n);
                assert!(r.ok, "{} n={n}: {:?}", e.name, r.failure);
            }
        }
    }

    #[test]
    fn regular_is_self_dual() {
        for name in ["C3", "D3", "Q8"] {
            let g = lookup(name).unwrap();
            let m = Arc::new(regular_module(&g, 4));
            let (d, _) = dual_module(&m);
            let x = find_equivariant_isomorphism(&m, &d).expect("isomorphism");
            assert!(x.is_invertible());
        }
    }

    #[test]
    fn no_isomorphism_between_different_modules() {
        let g = lookup("C2").unwrap();
        let reg = regular_module(&g, 3);
        let triv = super::super::trivial_module(&g, 3, 2);
        assert!(find_equivariant_isomorphism(&reg, &triv).is_none());
    }
}
