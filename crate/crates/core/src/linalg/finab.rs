//! Finite abelian groups in invariant-factor form, their subgroups and
//! homomorphisms. All structural computations go through the integer Smith
//! form, so they are independent of the `Z/n` elimination used for cochains.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::int_matrix::IntMatrix;
use super::smith::{integer_kernel, smith_normal_form, solve_with, SmithDecomposition};
use super::LinalgError;

/// `ℤ/d₁ × … × ℤ/d_k` with `2 ≤ d₁ | d₂ | … | d_k`; the empty list is the
/// trivial group.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FinAbGroup {
    invariant_factors: Vec<u64>,
}

impl FinAbGroup {
    pub fn new(invariant_factors: Vec<u64>) -> Result<Self, LinalgError> {
        if invariant_factors.iter().any(|&d| d < 2) {
            return Err(LinalgError::BadInvariantFactors(invariant_factors));
        }
        if invariant_factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(LinalgError::BadInvariantFactors(invariant_factors));
        }
        Ok(FinAbGroup { invariant_factors })
    }

    pub fn trivial() -> Self {
        FinAbGroup { invariant_factors: Vec::new() }
    }

    pub fn cyclic(order: u64) -> Self {
        assert!(order >= 1, "cyclic group of order 0");
        if order == 1 {
            Self::trivial()
        } else {
            FinAbGroup { invariant_factors: vec![order] }
        }
    }

    /// Normal form of `ℤ/o₁ × … × ℤ/o_k` for arbitrary positive orders.
    pub fn from_cyclic_orders(orders: &[u64]) -> Self {
        let k = orders.len();
        let rel = IntMatrix::from_fn(k, k, |i, j| if i == j { BigInt::from(orders[i]) } else { BigInt::zero() });
        let s = smith_normal_form(&rel);
        let factors = s
            .invariant_factors()
            .into_iter()
            .map(|d| d.to_u64().expect("factor fits in u64"))
            .filter(|&d| d > 1)
            .collect();
        FinAbGroup { invariant_factors: factors }
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    /// Number of cyclic factors.
    pub fn len(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.invariant_factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.invariant_factors.len() <= 1
    }

    pub fn order(&self) -> BigUint {
        self.invariant_factors.iter().fold(BigUint::one(), |acc, &d| acc * d)
    }

    pub fn exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.len()]
    }

    pub fn reduce(&self, x: &[i64]) -> Vec<u64> {
        assert_eq!(x.len(), self.len());
        x.iter()
            .zip(&self.invariant_factors)
            .map(|(&v, &d)| (v as i128).rem_euclid(d as i128) as u64)
            .collect()
    }

    pub fn reduce_big(&self, x: &[BigInt]) -> Vec<u64> {
        assert_eq!(x.len(), self.len());
        x.iter()
            .zip(&self.invariant_factors)
            .map(|(v, &d)| v.mod_floor(&BigInt::from(d)).to_u64().expect("residue fits"))
            .collect()
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        a.iter().zip(b).zip(&self.invariant_factors).map(|((&x, &y), &d)| (x + y) % d).collect()
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        a.iter().zip(&self.invariant_factors).map(|(&x, &d)| (d - x % d) % d).collect()
    }

    pub fn scale(&self, k: i64, a: &[u64]) -> Vec<u64> {
        a.iter()
            .zip(&self.invariant_factors)
            .map(|(&x, &d)| ((k as i128 * x as i128).rem_euclid(d as i128)) as u64)
            .collect()
    }

    /// Order of an element.
    pub fn element_order(&self, a: &[u64]) -> u64 {
        a.iter()
            .zip(&self.invariant_factors)
            .map(|(&x, &d)| d / num_integer::gcd(x % d, d))
            .fold(1, num_integer::lcm)
    }

    /// Every element, in lexicographic coordinate order. Intended for small groups.
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for &d in &self.invariant_factors {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..d).map(move |x| {
                        let mut p = prefix.clone();
                        p.push(x);
                        p
                    })
                })
                .collect();
        }
        out
    }

    pub(crate) fn relation_matrix(&self) -> IntMatrix {
        let k = self.len();
        IntMatrix::from_fn(k, k, |i, j| {
            if i == j {
                BigInt::from(self.invariant_factors[i])
            } else {
                BigInt::zero()
            }
        })
    }
}

impl std::fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|d| format!("Z/{d}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

/// Subgroup of a [`FinAbGroup`] spanned by explicit generators, together with
/// its own invariant-factor presentation.
#[derive(Clone, Debug)]
pub struct FinAbSubgroup {
    ambient: FinAbGroup,
    generators: Vec<Vec<u64>>,
    structure: FinAbGroup,
    /// Smith data of `[G | E]`, used to express elements in the generators.
    span: SmithDecomposition,
    /// Maps generator coefficients to presentation coordinates.
    to_presentation: IntMatrix,
    /// Positions of the nontrivial presentation factors.
    kept: Vec<usize>,
    divisors: Vec<BigInt>,
    presentation_generators: Vec<Vec<u64>>,
}

impl FinAbSubgroup {
    pub fn generated_by(ambient: &FinAbGroup, generators: Vec<Vec<u64>>) -> Self {
        let a = ambient.len();
        for g in &generators {
            assert_eq!(g.len(), a, "generator has wrong length");
        }
        let generators: Vec<Vec<u64>> = generators
            .iter()
            .map(|g| ambient.reduce(&g.iter().map(|&x| x as i64).collect::<Vec<_>>()))
            .collect();
        let l = generators.len();
        let gen_cols: Vec<Vec<BigInt>> =
            generators.iter().map(|g| g.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let gmat = IntMatrix::from_columns(a, &gen_cols);
        let full = gmat.hstack(&ambient.relation_matrix());
        let span = smith_normal_form(&full);

        // Coefficient vectors c with G·c ∈ E·ℤᵃ.
        let kernel = integer_kernel(&full);
        let kc = IntMatrix::from_fn(l, kernel.cols(), |i, j| kernel.get(i, j).clone());
        let s = smith_normal_form(&kc);
        let mut kept = Vec::new();
        let mut divisors = Vec::new();
        let mut factors = Vec::new();
        for i in 0..l {
            let d = s.diagonal(i);
            assert!(!d.is_zero(), "subgroup of a finite group must be finite");
            if !d.is_one() {
                kept.push(i);
                factors.push(d.to_u64().expect("factor fits"));
                divisors.push(d);
            }
        }
        let structure = FinAbGroup::new(factors).expect("Smith diagonal forms a divisibility chain");
        let presentation_generators = kept
            .iter()
            .map(|&i| {
                let coeffs = s.u_inv.column(i);
                let v = gmat.mul_vec(&coeffs);
                ambient.reduce_big(&v)
            })
            .collect();
        FinAbSubgroup {
            ambient: ambient.clone(),
            generators,
            structure,
            span,
            to_presentation: s.u,
            kept,
            divisors,
            presentation_generators,
        }
    }

    pub fn ambient(&self) -> &FinAbGroup {
        &self.ambient
    }

    pub fn generators(&self) -> &[Vec<u64>] {
        &self.generators
    }

    /// Isomorphism type of the subgroup.
    pub fn structure(&self) -> &FinAbGroup {
        &self.structure
    }

    /// Elements of the ambient group generating the subgroup in the
    /// presentation returned by [`Self::structure`].
    pub fn presentation_generators(&self) -> &[Vec<u64>] {
        &self.presentation_generators
    }

    pub fn order(&self) -> BigUint {
        self.structure.order()
    }

    /// Coefficients `c` with `Σ cᵢ·genᵢ = x`, if `x` lies in the subgroup.
    pub fn express(&self, x: &[u64]) -> Option<Vec<BigInt>> {
        let b: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
        let sol = solve_with(&self.span, &b)?;
        Some(sol[..self.generators.len()].to_vec())
    }

    pub fn contains(&self, x: &[u64]) -> bool {
        self.express(x).is_some()
    }

    /// Coordinates of `x` in the presentation of [`Self::structure`].
    pub fn coordinates(&self, x: &[u64]) -> Option<Vec<u64>> {
        let c = self.express(x)?;
        let full = self.to_presentation.mul_vec(&c);
        Some(
            self.kept
                .iter()
                .zip(&self.divisors)
                .map(|(&i, d)| full[i].mod_floor(d).to_u64().expect("fits"))
                .collect(),
        )
    }

    pub fn is_subgroup_of(&self, other: &FinAbSubgroup) -> bool {
        assert_eq!(self.ambient, other.ambient);
        self.generators.iter().all(|g| other.contains(g))
    }

    pub fn same_as(&self, other: &FinAbSubgroup) -> bool {
        self.is_subgroup_of(other) && other.is_subgroup_of(self)
    }
}

/// Homomorphism `ℤ/e → ℤ/f` given by the images of the source generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAbHom {
    source: FinAbGroup,
    target: FinAbGroup,
    /// `columns[i]` = image of the i-th source generator.
    columns: Vec<Vec<u64>>,
}

impl FinAbHom {
    pub fn new(source: FinAbGroup, target: FinAbGroup, columns: Vec<Vec<u64>>) -> Result<Self, LinalgError> {
        if columns.len() != source.len() || columns.iter().any(|c| c.len() != target.len()) {
            return Err(LinalgError::DimensionMismatch("homomorphism matrix does not match its groups".into()));
        }
        let columns: Vec<Vec<u64>> = columns
            .iter()
            .map(|c| target.reduce(&c.iter().map(|&x| x as i64).collect::<Vec<_>>()))
            .collect();
        for (i, c) in columns.iter().enumerate() {
            let e = source.invariant_factors[i];
            if target.scale(e as i64, c).iter().any(|&x| x != 0) {
                return Err(LinalgError::NotWellDefined(i));
            }
        }
        Ok(FinAbHom { source, target, columns })
    }

    pub fn zero(source: FinAbGroup, target: FinAbGroup) -> Self {
        let columns = vec![target.zero(); source.len()];
        FinAbHom { source, target, columns }
    }

    pub fn source(&self) -> &FinAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FinAbGroup {
        &self.target
    }

    pub fn columns(&self) -> &[Vec<u64>] {
        &self.columns
    }

    pub fn apply(&self, x: &[u64]) -> Vec<u64> {
        assert_eq!(x.len(), self.source.len());
        let mut acc = vec![BigInt::zero(); self.target.len()];
        for (c, &xi) in self.columns.iter().zip(x) {
            for (a, &v) in acc.iter_mut().zip(c) {
                *a += BigInt::from(v) * xi;
            }
        }
        self.target.reduce_big(&acc)
    }

    /// `other ∘ self`
    pub fn then(&self, other: &FinAbHom) -> FinAbHom {
        assert_eq!(self.target, other.source, "composition of incompatible homomorphisms");
        let columns = self.columns.iter().map(|c| other.apply(c)).collect();
        FinAbHom { source: self.source.clone(), target: other.target.clone(), columns }
    }

    pub fn image(&self) -> FinAbSubgroup {
        FinAbSubgroup::generated_by(&self.target, self.columns.clone())
    }

    pub fn kernel(&self) -> FinAbSubgroup {
        let (s, t) = (self.source.len(), self.target.len());
        if t == 0 {
            let units = (0..s).map(|i| (0..s).map(|j| u64::from(i == j)).collect()).collect();
            return FinAbSubgroup::generated_by(&self.source, units);
        }
        let cols: Vec<Vec<BigInt>> =
            self.columns.iter().map(|c| c.iter().map(|&x| BigInt::from(x)).collect()).collect();
        let m = IntMatrix::from_columns(t, &cols).hstack(&self.target.relation_matrix());
        let k = integer_kernel(&m);
        let gens = (0..k.cols())
            .map(|j| {
                let v: Vec<BigInt> = (0..s).map(|i| k.get(i, j).clone()).collect();
                self.source.reduce_big(&v)
            })
            .collect();
        FinAbSubgroup::generated_by(&self.source, gens)
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().structure().is_trivial()
    }

    pub fn is_surjective(&self) -> bool {
        self.image().order() == self.target.order()
    }

    /// The map `x ↦ (f₁(x), …, f_k(x))` into the product of the targets,
    /// with the product re-presented in invariant-factor form.
    pub fn stack(source: &FinAbGroup, maps: &[FinAbHom]) -> StackedHom {
        let mut orders = Vec::new();
        for f in maps {
            assert_eq!(f.source(), source, "stacked maps must share a source");
            orders.extend_from_slice(f.target.invariant_factors());
        }
        let columns: Vec<Vec<u64>> = (0..source.len())
            .map(|i| maps.iter().flat_map(|f| f.columns[i].iter().copied()).collect())
            .collect();
        StackedHom { source: source.clone(), orders, columns }
    }
}

/// Homomorphism into a product of cyclic groups given factor by factor
/// (not necessarily in invariant-factor form).
#[derive(Clone, Debug)]
pub struct StackedHom {
    source: FinAbGroup,
    orders: Vec<u64>,
    columns: Vec<Vec<u64>>,
}

impl StackedHom {
    /// `columns[j]` is the image of source generator `j`, one entry per factor.
    pub fn new(source: &FinAbGroup, orders: Vec<u64>, columns: Vec<Vec<u64>>) -> Self {
        assert_eq!(columns.len(), source.len(), "one column per source generator");
        assert!(columns.iter().all(|c| c.len() == orders.len()), "column length must match the factors");
        StackedHom { source: source.clone(), orders, columns }
    }

    pub fn kernel(&self) -> FinAbSubgroup {
        let (s, t) = (self.source.len(), self.orders.len());
        if t == 0 {
            let units = (0..s).map(|i| (0..s).map(|j| u64::from(i == j)).collect()).collect();
            return FinAbSubgroup::generated_by(&self.source, units);
        }
        let m = IntMatrix::from_fn(t, s + t, |i, j| {
            if j < s {
                BigInt::from(self.columns[j][i])
            } else if j - s == i {
                BigInt::from(self.orders[i])
            } else {
                BigInt::zero()
            }
        });
        let k = integer_kernel(&m);
        let gens = (0..k.cols())
            .map(|j| {
                let v: Vec<BigInt> = (0..s).map(|i| k.get(i, j).clone()).collect();
                self.source.reduce_big(&v)
            })
            .collect();
        FinAbSubgroup::generated_by(&self.source, gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_form_from_orders() {
        assert_eq!(FinAbGroup::from_cyclic_orders(&[2, 3]).invariant_factors(), &[6]);
        assert_eq!(FinAbGroup::from_cyclic_orders(&[4, 2, 1]).invariant_factors(), &[2, 4]);
        assert!(FinAbGroup::from_cyclic_orders(&[1, 1]).is_trivial());
        assert!(FinAbGroup::new(vec![4, 2]).is_err());
        assert!(FinAbGroup::new(vec![1]).is_err());
    }

    #[test]
    fn subgroup_of_z4_times_z2() {
        let g = FinAbGroup::new(vec![2, 4]).unwrap();
        let h = FinAbSubgroup::generated_by(&g, vec![vec![1, 2]]);
        assert_eq!(h.structure().invariant_factors(), &[2]);
        assert!(h.contains(&[1, 2]));
        assert!(!h.contains(&[0, 2]));
        let all = FinAbSubgroup::generated_by(&g, vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(all.order(), BigUint::from(8u32));
        for x in g.elements() {
            let c = all.coordinates(&x).unwrap();
            let back = all
                .presentation_generators()
                .iter()
                .zip(&c)
                .fold(g.zero(), |acc, (p, &ci)| g.add(&acc, &g.scale(ci as i64, p)));
            assert_eq!(back, x);
        }
    }

    #[test]
    fn hom_kernel_and_image() {
        // Z/4 → Z/2, reduction.
        let f = FinAbHom::new(FinAbGroup::cyclic(4), FinAbGroup::cyclic(2), vec![vec![1]]).unwrap();
        assert_eq!(f.kernel().structure().invariant_factors(), &[2]);
        assert!(f.is_surjective());
        assert!(!f.is_injective());
        // Z/2 → Z/4, x ↦ 2x.
        let g = FinAbHom::new(FinAbGroup::cyclic(2), FinAbGroup::cyclic(4), vec![vec![2]]).unwrap();
        assert!(g.is_injective());
        assert!(g.image().same_as(&f.kernel()));
        // Z/2 → Z/4, x ↦ x is not well defined.
        assert!(FinAbHom::new(FinAbGroup::cyclic(2), FinAbGroup::cyclic(4), vec![vec![1]]).is_err());
    }
}
