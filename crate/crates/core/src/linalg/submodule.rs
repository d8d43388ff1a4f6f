//! Submodules of `(Z/n)^k` in adapted form, and subquotients `Z/B`.

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use super::finab::FinAbGroup;
use super::int_matrix::IntMatrix;
use super::modn::{check_modulus, smith_mod, ModMatrix};
use super::LinalgError;

/// A submodule `S ⊆ (Z/n)^k` described by an invertible basis `b₁ … b_k` of
/// `(Z/n)^k` and orders `oᵢ | n` such that
/// `S = { Σ yᵢ·bᵢ : yᵢ ∈ (n/oᵢ)·Z/n }`.
///
/// `S` is then isomorphic to `⊕ Z/oᵢ`, with generators `(n/oᵢ)·bᵢ`.
#[derive(Clone, Debug)]
pub struct SubmoduleBasis {
    modulus: u64,
    basis: ModMatrix,
    inverse: ModMatrix,
    orders: Vec<u64>,
}

impl SubmoduleBasis {
    /// `ker A` for `A: (Z/n)^k → (Z/n)^m`.
    pub fn kernel_of(a: &ModMatrix) -> Self {
        let n = a.modulus();
        let s = smith_mod(a, false, true);
        let orders = (0..a.cols()).map(|i| if n == 1 { 1 } else { s.divisor(i) }).collect();
        SubmoduleBasis {
            modulus: n,
            basis: s.right.expect("tracked"),
            inverse: s.right_inv.expect("tracked"),
            orders,
        }
    }

    /// The span of the columns of `g`.
    pub fn span_of(g: &ModMatrix) -> Self {
        let n = g.modulus();
        let s = smith_mod(g, true, false);
        let orders = (0..g.rows())
            .map(|i| if i < s.diag.len() { n / s.diag[i] } else { 1 })
            .collect();
        SubmoduleBasis {
            modulus: n,
            basis: s.left_inv.expect("tracked"),
            inverse: s.left.expect("tracked"),
            orders,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn ambient_rank(&self) -> usize {
        self.orders.len()
    }

    /// Orders of the nontrivial cyclic summands, in basis order.
    pub fn summand_orders(&self) -> Vec<u64> {
        self.orders.iter().copied().filter(|&o| o > 1).collect()
    }

    pub fn structure(&self) -> FinAbGroup {
        FinAbGroup::from_cyclic_orders(&self.summand_orders())
    }

    /// Generators `(n/oᵢ)·bᵢ` for the nontrivial summands.
    pub fn generators(&self) -> Vec<Vec<u64>> {
        let n = self.modulus;
        self.orders
            .iter()
            .enumerate()
            .filter(|(_, &o)| o > 1)
            .map(|(i, &o)| {
                let step = n / o;
                self.basis.column(i).into_iter().map(|x| x * step % n).collect()
            })
            .collect()
    }

    /// Coordinates of `v` along the nontrivial summands, or `None` if `v ∉ S`.
    pub fn coordinates(&self, v: &[u64]) -> Option<Vec<u64>> {
        let n = self.modulus;
        let y = self.inverse.mul_vec(v);
        let mut out = Vec::new();
        for (yi, &o) in y.into_iter().zip(&self.orders) {
            let step = n / o;
            if yi % step != 0 {
                return None;
            }
            if o > 1 {
                out.push(yi / step);
            }
        }
        Some(out)
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.coordinates(v).is_some()
    }
}

/// Raised by [`Subquotient::coordinates`] for vectors outside the cycles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, thiserror::Error)]
#[error("vector is not in the cycle submodule")]
pub struct NonMember;

/// The quotient `Z/B` of two submodules `B ⊆ Z ⊆ (Z/n)^k`.
#[derive(Clone, Debug)]
pub struct Subquotient {
    modulus: u64,
    cycles: SubmoduleBasis,
    group: FinAbGroup,
    /// Row transform of the relation matrix, acting on Z-coordinates.
    to_presentation: ModMatrix,
    /// Presentation slots with nontrivial divisor, and those divisors.
    kept: Vec<(usize, u64)>,
    generators: Vec<Vec<u64>>,
}

impl Subquotient {
    /// `boundaries` are the generators of `B` (as vectors of length `k`).
    pub fn new(cycles: SubmoduleBasis, boundaries: &[Vec<u64>]) -> Result<Self, LinalgError> {
        let n = cycles.modulus;
        let orders = cycles.summand_orders();
        let s = orders.len();
        let mut relations = ModMatrix::zeros(s, s + boundaries.len(), n);
        for (i, &o) in orders.iter().enumerate() {
            relations.set(i, i, o % n);
        }
        for (j, b) in boundaries.iter().enumerate() {
            let c = cycles.coordinates(b).ok_or(LinalgError::NotContained(j))?;
            for (i, x) in c.into_iter().enumerate() {
                relations.set(i, s + j, x);
            }
        }
        let sm = smith_mod(&relations, true, false);
        let mut kept = Vec::new();
        for i in 0..s {
            let d = if n == 1 { 1 } else { sm.divisor(i) };
            if d > 1 {
                kept.push((i, d));
            }
        }
        let group = FinAbGroup::new(kept.iter().map(|&(_, d)| d).collect())
            .expect("Smith diagonal forms a divisibility chain");
        let left_inv = sm.left_inv.expect("tracked");
        let zgens = cycles.generators();
        let k = cycles.ambient_rank();
        let generators = kept
            .iter()
            .map(|&(i, _)| {
                let coeffs = left_inv.column(i);
                let mut v = vec![0u64; k];
                for (c, g) in coeffs.iter().zip(&zgens) {
                    if *c == 0 {
                        continue;
                    }
                    for (x, &y) in v.iter_mut().zip(g) {
                        *x = (*x + c * y) % n;
                    }
                }
                v
            })
            .collect();
        Ok(Subquotient { modulus: n, cycles, group, to_presentation: sm.left.expect("tracked"), kept, generators })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    pub fn cycles(&self) -> &SubmoduleBasis {
        &self.cycles
    }

    /// Representatives in `Z` of the presentation generators.
    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    /// Coordinates of `v ∈ Z` in the presentation; zero iff `v ∈ B`.
    pub fn coordinates(&self, v: &[u64]) -> Result<Vec<u64>, NonMember> {
        let c = self.cycles.coordinates(v).ok_or(NonMember)?;
        let h = self.to_presentation.mul_vec(&c);
        Ok(self.kept.iter().map(|&(i, d)| h[i] % d).collect())
    }
}

fn columns_mod(m: &IntMatrix, n: u64) -> Vec<Vec<u64>> {
    let r = m.to_mod(n);
    (0..r.cols()).map(|j| r.column(j)).collect()
}

/// `Z/B` where the columns of `z` and `b` generate `Z` and `B` inside `(Z/n)^k`.
///
/// Returns the presentation; generator representatives and the coordinate map
/// are available on the result.
pub fn subquotient(z: &IntMatrix, b: &IntMatrix, n: u64) -> Result<Subquotient, LinalgError> {
    check_modulus(n)?;
    if z.rows() != b.rows() {
        return Err(LinalgError::DimensionMismatch(format!(
            "cycle generators live in rank {}, boundary generators in rank {}",
            z.rows(),
            b.rows()
        )));
    }
    let cycles = SubmoduleBasis::span_of(&z.to_mod(n));
    Subquotient::new(cycles, &columns_mod(b, n))
}

/// Some `x` with `A·x ≡ b (mod n)`, or `None` when the system has no solution.
pub fn solve_mod(a: &IntMatrix, b: &[BigInt], n: u64) -> Result<Option<Vec<u64>>, LinalgError> {
    check_modulus(n)?;
    if a.rows() != b.len() {
        return Err(LinalgError::DimensionMismatch(format!(
            "matrix has {} rows but right-hand side has {} entries",
            a.rows(),
            b.len()
        )));
    }
    let am = a.to_mod(n);
    let nb = BigInt::from(n);
    let bm: Vec<u64> = b
        .iter()
        .map(|x| {
            let r = ((x % &nb) + &nb) % &nb;
            r.to_u64().expect("residue fits")
        })
        .collect();
    Ok(solve_mod_matrix(&am, &bm))
}

/// `solve_mod` on an already reduced matrix.
pub fn solve_mod_matrix(a: &ModMatrix, b: &[u64]) -> Option<Vec<u64>> {
    smith_mod(a, true, true).solve(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn im(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows)
    }

    #[test]
    fn full_rank_two() {
        let q = subquotient(&im(&[vec![1, 0], vec![0, 1]]), &IntMatrix::zeros(2, 0), 4).unwrap();
        assert_eq!(q.group().invariant_factors(), &[4, 4]);
    }

    #[test]
    fn two_torsion_quotient() {
        let q = subquotient(&im(&[vec![1]]), &im(&[vec![2]]), 4).unwrap();
        assert_eq!(q.group().invariant_factors(), &[2]);
        assert_eq!(q.coordinates(&[2]).unwrap(), vec![0]);
        assert_eq!(q.coordinates(&[3]).unwrap(), vec![1]);
    }

    #[test]
    fn equal_is_trivial() {
        let z = im(&[vec![2, 0], vec![0, 1]]);
        let q = subquotient(&z, &z, 4).unwrap();
        assert!(q.group().is_trivial());
    }

    #[test]
    fn rejects_non_nested() {
        let err = subquotient(&im(&[vec![2]]), &im(&[vec![1]]), 4).unwrap_err();
        assert_eq!(err, LinalgError::NotContained(0));
        let q = subquotient(&im(&[vec![2]]), &IntMatrix::zeros(1, 0), 4).unwrap();
        assert_eq!(q.coordinates(&[1]), Err(NonMember));
    }

    #[test]
    fn generators_have_unit_coordinates() {
        let z = im(&[vec![1, 0, 2], vec![0, 2, 2], vec![0, 0, 3]]);
        let b = im(&[vec![2], vec![2], vec![0]]);
        let q = subquotient(&z, &b, 6).unwrap();
        for (i, g) in q.generators().iter().enumerate() {
            let c = q.coordinates(g).unwrap();
            for (j, &x) in c.iter().enumerate() {
                assert_eq!(x, u64::from(i == j));
            }
        }
    }

    #[test]
    fn solve_mod_examples() {
        let id = im(&[vec![1, 0], vec![0, 1]]);
        let b = vec![BigInt::from(3), BigInt::from(2)];
        assert_eq!(solve_mod(&id, &b, 4).unwrap(), Some(vec![3, 2]));
        let two = im(&[vec![2]]);
        assert_eq!(solve_mod(&two, &[BigInt::from(1)], 4).unwrap(), None);
        let x = solve_mod(&two, &[BigInt::from(2)], 4).unwrap().unwrap();
        assert_eq!(2 * x[0] % 4, 2);
        assert!(solve_mod(&two, &[BigInt::from(2)], 0).is_err());
    }
}
