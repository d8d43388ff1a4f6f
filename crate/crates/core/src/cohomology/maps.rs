//! Maps between cohomology groups, all computed on normalized representatives.

use std::sync::Arc;

use crate::group::{QuotientMap, Subgroup};
use crate::linalg::FinAbHom;
use crate::module::{trivial_module, GModule, ModuleError, ModuleMap, Pairing, ShortExactSequence};

use super::complex::{apply_differential, Tuples};
use super::groups::{cohomology_group_with, CohomologyClass, CohomologyGroup, CohomologyMap};
use super::CohomologyError;

/// The map on cohomology induced by a cochain map `f` on normalized
/// representatives. Fails if `f` does not send cocycles to cocycles or is
/// incompatible with the presentations.
pub fn induced_map(
    source: &Arc<CohomologyGroup>,
    target: &Arc<CohomologyGroup>,
    f: impl Fn(&[u64]) -> Result<Vec<u64>, CohomologyError>,
) -> Result<CohomologyMap, CohomologyError> {
    let columns = source
        .generator_vectors()
        .iter()
        .map(|g| target.coordinates_normalized(&f(g)?))
        .collect::<Result<Vec<_>, _>>()?;
    let hom = FinAbHom::new(source.presentation().clone(), target.presentation().clone(), columns)?;
    Ok(CohomologyMap { source: Arc::clone(source), target: Arc::clone(target), hom })
}

fn apply(map: CohomologyMap, x: &CohomologyClass) -> Result<CohomologyClass, CohomologyError> {
    map.apply(x)
}

// Restriction

pub(crate) fn restrict_cochain(module: &GModule, sub: &Subgroup, r: usize, c: &[u64]) -> Vec<u64> {
    let rank = module.rank();
    let big = Tuples::new(module.group());
    let small = Tuples::new(&sub.as_group());
    let members = sub.members();
    let count = small.count(r);
    let mut out = vec![0u64; count * rank];
    let mut args = vec![0; r];
    for t in 0..count {
        small.decode(t, r, &mut args);
        let lifted: Vec<usize> = args.iter().map(|&i| members[i]).collect();
        let bt = big.encode(&lifted).expect("non-identity elements of a subgroup");
        out[t * rank..(t + 1) * rank].copy_from_slice(&c[bt * rank..(bt + 1) * rank]);
    }
    out
}

/// `res : H^r(G, M) → H^r(Δ, M|_Δ)`.
pub fn restriction_map(source: &Arc<CohomologyGroup>, sub: &Subgroup) -> Result<CohomologyMap, CohomologyError> {
    let module = source.module();
    assert_eq!(sub.parent().as_ref(), module.group().as_ref(), "subgroup of another group");
    let restricted = Arc::new(module.restrict(sub));
    let target = cohomology_group_with(&restricted, source.degree(), source.guard())?;
    let r = source.degree();
    induced_map(source, &target, |c| Ok(restrict_cochain(module, sub, r, c)))
}

pub fn restrict(x: &CohomologyClass, sub: &Subgroup) -> Result<CohomologyClass, CohomologyError> {
    apply(restriction_map(x.parent(), sub)?, x)
}

// Inflation

/// `inf : H^r(G/N, M) → H^r(G, M)` for a `G`-module `M` on which `N` acts
/// trivially; `source` must be cohomology of `M` regarded over `G/N`.
pub fn inflation_map(
    source: &Arc<CohomologyGroup>,
    q: &QuotientMap,
    module: &Arc<GModule>,
) -> Result<CohomologyMap, CohomologyError> {
    let descended = module.descend(q)?;
    if descended.actions() != source.module().actions() || descended.modulus() != source.module().modulus() {
        return Err(ModuleError::Incompatible.into());
    }
    let target = cohomology_group_with(module, source.degree(), source.guard())?;
    let r = source.degree();
    let rank = module.rank();
    let big = Tuples::new(module.group());
    let small = Tuples::new(q.target());
    induced_map(source, &target, |c| {
        let count = big.count(r);
        let mut out = vec![0u64; count * rank];
        let mut args = vec![0; r];
        for t in 0..count {
            big.decode(t, r, &mut args);
            let projected: Vec<usize> = args.iter().map(|&g| q.project(g)).collect();
            if let Some(st) = small.encode(&projected) {
                out[t * rank..(t + 1) * rank].copy_from_slice(&c[st * rank..(st + 1) * rank]);
            }
        }
        Ok(out)
    })
}

pub fn inflate(x: &CohomologyClass, q: &QuotientMap, module: &Arc<GModule>) -> Result<CohomologyClass, CohomologyError> {
    apply(inflation_map(x.parent(), q, module)?, x)
}

// Pushforward

pub(crate) fn pushforward_cochain(f: &ModuleMap, c: &[u64]) -> Vec<u64> {
    let (rs, rt) = (f.source().rank(), f.target().rank());
    if rs == 0 {
        let tuples = if rt == 0 { 0 } else { c.len() };
        return vec![0; tuples * rt];
    }
    c.chunks(rs).flat_map(|v| f.apply(v)).collect()
}

/// `f_* : H^r(G, M) → H^r(G, M′)`.
pub fn pushforward_map(f: &ModuleMap, source: &Arc<CohomologyGroup>) -> Result<CohomologyMap, CohomologyError> {
    if f.source().as_ref() != source.module().as_ref() {
        return Err(CohomologyError::Mismatch);
    }
    let target = cohomology_group_with(f.target(), source.degree(), source.guard())?;
    pushforward_map_into(f, source, &target)
}

/// [`pushforward_map`] into an already computed target.
pub fn pushforward_map_into(
    f: &ModuleMap,
    source: &Arc<CohomologyGroup>,
    target: &Arc<CohomologyGroup>,
) -> Result<CohomologyMap, CohomologyError> {
    if f.source().as_ref() != source.module().as_ref()
        || f.target().as_ref() != target.module().as_ref()
        || source.degree() != target.degree()
    {
        return Err(CohomologyError::Mismatch);
    }
    let dim = super::complex::dim(target.group(), f.target().rank(), source.degree());
    induced_map(source, target, |c| {
        let mut v = pushforward_cochain(f, c);
        v.resize(dim, 0);
        Ok(v)
    })
}

pub fn pushforward(f: &ModuleMap, x: &CohomologyClass) -> Result<CohomologyClass, CohomologyError> {
    apply(pushforward_map(f, x.parent())?, x)
}

// Connecting homomorphism

/// `ρ(d(s∘x))` for a normalized `r`-cocycle `x` of `C`, using the stored
/// section `s` and retraction `ρ`; checks that `d(s∘x)` lies in `ι(A)`.
pub(crate) fn connecting_cocycle(s: &ShortExactSequence, r: usize, x: &[u64]) -> Result<Vec<u64>, CohomologyError> {
    let (ra, rb, rc) = (s.a().rank(), s.b().rank(), s.c().rank());
    let tuples = Tuples::new(s.group()).count(r);
    let lifted: Vec<u64> = if rc == 0 {
        vec![0; tuples * rb]
    } else {
        x.chunks(rc).flat_map(|v| s.section().mul_vec(v)).collect()
    };
    let dl = apply_differential(s.b(), r, &lifted);
    if rb == 0 {
        return Ok(vec![0; Tuples::new(s.group()).count(r + 1) * ra]);
    }
    let mut out = Vec::with_capacity(dl.len() / rb * ra);
    for v in dl.chunks(rb) {
        let a = s.retraction().mul_vec(v);
        if s.inj().apply(&a) != v {
            return Err(CohomologyError::NotInImage);
        }
        out.extend(a);
    }
    Ok(out)
}

/// `δ : H^r(G, C) → H^{r+1}(G, A)`.
pub fn connecting_map(s: &ShortExactSequence, source: &Arc<CohomologyGroup>) -> Result<CohomologyMap, CohomologyError> {
    if source.module().as_ref() != s.c().as_ref() {
        return Err(CohomologyError::Mismatch);
    }
    let target = cohomology_group_with(s.a(), source.degree() + 1, source.guard())?;
    connecting_map_into(s, source, &target)
}

/// [`connecting_map`] into an already computed `H^{r+1}(G, A)`.
pub fn connecting_map_into(
    s: &ShortExactSequence,
    source: &Arc<CohomologyGroup>,
    target: &Arc<CohomologyGroup>,
) -> Result<CohomologyMap, CohomologyError> {
    if source.module().as_ref() != s.c().as_ref()
        || target.module().as_ref() != s.a().as_ref()
        || target.degree() != source.degree() + 1
    {
        return Err(CohomologyError::Mismatch);
    }
    let r = source.degree();
    induced_map(source, target, |c| connecting_cocycle(s, r, c))
}

pub fn connecting(s: &ShortExactSequence, x: &CohomologyClass) -> Result<CohomologyClass, CohomologyError> {
    apply(connecting_map(s, x.parent())?, x)
}

// Cup product

/// `(x∪y)(g₁,…,g_{p+q}) = ⟨x(g₁,…,g_p), (g₁⋯g_p)·y(g_{p+1},…,g_{p+q})⟩`
/// on normalized cochains; values in `Z/n` with trivial action.
pub(crate) fn cup_cochain(pairing: &Pairing, p: usize, x: &[u64], q: usize, y: &[u64]) -> Vec<u64> {
    let (m, mp) = (pairing.left(), pairing.right());
    let group = m.group();
    let tuples = Tuples::new(group);
    let (rl, rr) = (m.rank(), mp.rank());
    let count = tuples.count(p + q);
    let mut out = vec![0u64; count];
    let mut args = vec![0; p + q];
    if rl == 0 || rr == 0 {
        return out;
    }
    for (t, slot) in out.iter_mut().enumerate() {
        tuples.decode(t, p + q, &mut args);
        let xt = tuples.encode(&args[..p]).expect("non-identity arguments");
        let yt = tuples.encode(&args[p..]).expect("non-identity arguments");
        let prod = args[..p].iter().fold(group.identity(), |acc, &g| group.mul(acc, g));
        let gy = mp.act(prod, &y[yt * rr..(yt + 1) * rr]);
        *slot = pairing.eval(&x[xt * rl..(xt + 1) * rl], &gy);
    }
    out
}

/// `x ∪ y ∈ H^{p+q}(G, Z/n)` through the pairing `P : M × M′ → Z/n`.
pub fn cup(x: &CohomologyClass, y: &CohomologyClass, pairing: &Pairing) -> Result<CohomologyClass, CohomologyError> {
    if x.parent().module().as_ref() != pairing.left().as_ref() || y.parent().module().as_ref() != pairing.right().as_ref() {
        return Err(CohomologyError::Mismatch);
    }
    let (p, q) = (x.degree(), y.degree());
    let trivial = Arc::new(trivial_module(x.parent().group(), pairing.left().modulus(), 1));
    let target = cohomology_group_with(&trivial, p + q, x.parent().guard())?;
    let v = cup_cochain(pairing, p, &x.representative(), q, &y.representative());
    target.class_of_normalized(&v)
}

// Shapiro

/// `H^r(G, Ind_Δ^G Z/n) → H^r(Δ, Z/n)`: restrict to `Δ`, then read the
/// coordinate of the identity coset.
pub fn shapiro_map(source: &Arc<CohomologyGroup>) -> Result<CohomologyMap, CohomologyError> {
    let module = source.module();
    let induced = module.induced_from().ok_or(ModuleError::NotInduced)?;
    let sub = &induced.subgroup;
    let at = induced.identity_coset;
    let small = Arc::new(sub.as_group());
    let trivial = Arc::new(trivial_module(&small, module.modulus(), 1));
    let target = cohomology_group_with(&trivial, source.degree(), source.guard())?;
    let r = source.degree();
    let rank = module.rank();
    induced_map(source, &target, |c| {
        let restricted = restrict_cochain(module, sub, r, c);
        Ok(restricted.chunks(rank).map(|v| v[at]).collect())
    })
}

pub fn shapiro(x: &CohomologyClass) -> Result<CohomologyClass, CohomologyError> {
    apply(shapiro_map(x.parent())?, x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::cohomology_group;
    use crate::group::{lookup, quotient, Subgroup};
    use crate::linalg::ModMatrix;
    use crate::module::{
        augmentation_sequence, cartier_pairing, diagonal_sequence, induced_module, regular_module, trivial_module,
    };

    #[test]
    fn restriction_basics() {
        let g = lookup("V4").unwrap();
        let s = augmentation_sequence(&g, 4);
        let h1 = cohomology_group(s.a(), 1).unwrap();
        let x = h1.generator(0);
        assert!(restrict(&x, &Subgroup::trivial(&g)).unwrap().is_zero());
        let whole = restrict(&x, &Subgroup::whole(&g)).unwrap();
        assert_eq!(whole.coords(), x.coords());
        // Each cyclic subgroup of order 2 sees an element of order 2.
        for e in 1..4 {
            let c = Subgroup::generated_by(&g, &[e]).unwrap();
            let y = restrict(&x, &c).unwrap();
            assert_eq!(y.parent().invariant_factors(), &[2]);
            assert_eq!(y.order(), 2);
        }
    }

    #[test]
    fn connecting_on_h0() {
        let g = lookup("V4").unwrap();
        let s = augmentation_sequence(&g, 4);
        let h0 = cohomology_group(s.c(), 0).unwrap();
        let one = h0.class_of_normalized(&[1]).unwrap();
        let d = connecting(&s, &one).unwrap();
        assert_eq!(d.parent().invariant_factors(), &[4]);
        assert_eq!(d.order(), 4);
        assert!(connecting(&s, &h0.zero_class()).unwrap().is_zero());
    }

    #[test]
    fn inflation_c4() {
        let g = lookup("C4").unwrap();
        let n = Subgroup::generated_by(&g, &[2]).unwrap();
        let q = quotient(&g, &n).unwrap();
        let m = Arc::new(trivial_module(&g, 2, 1));
        let mq = Arc::new(m.descend(&q).unwrap());
        let src = cohomology_group(&mq, 1).unwrap();
        let inf = inflation_map(&src, &q, &m).unwrap();
        assert!(inf.hom.is_injective());
        let res = restriction_map(&inf.target, &n).unwrap();
        assert!(inf.image().same_as(&res.kernel()));
        // Non-trivial action of N is rejected.
        let reg = Arc::new(regular_module(&g, 2));
        assert!(inflation_map(&src, &q, &reg).is_err());
    }

    #[test]
    fn pushforward_identity_and_zero() {
        let g = lookup("C2xC4").unwrap();
        let m = Arc::new(trivial_module(&g, 4, 1));
        let h = cohomology_group(&m, 1).unwrap();
        let id = ModuleMap::identity(&m);
        let zero = ModuleMap::new(&m, &m, ModMatrix::zeros(1, 1, 4)).unwrap();
        for i in 0..h.presentation().len() {
            let x = h.generator(i);
            assert_eq!(pushforward(&id, &x).unwrap().coords(), x.coords());
            assert!(pushforward(&zero, &x).unwrap().is_zero());
        }
    }

    #[test]
    fn cup_c2_graded_commutative() {
        let g = lookup("V4").unwrap();
        let m = Arc::new(trivial_module(&g, 2, 1));
        let p = Pairing::new(&m, &m, ModMatrix::identity(1, 2)).unwrap();
        let h1 = cohomology_group(&m, 1).unwrap();
        let elements = h1.presentation().elements();
        for a in &elements {
            for b in &elements {
                let x = h1.class(a.clone());
                let y = h1.class(b.clone());
                let xy = cup(&x, &y, &p).unwrap();
                let yx = cup(&y, &x, &p).unwrap();
                assert_eq!(xy.coords(), yx.neg().coords());
            }
        }
    }

    #[test]
    fn shapiro_c4() {
        let g = lookup("C4").unwrap();
        let d = Subgroup::generated_by(&g, &[2]).unwrap();
        let m = Arc::new(induced_module(&g, &d, 2));
        let h = cohomology_group(&m, 1).unwrap();
        let sh = shapiro_map(&h).unwrap();
        assert_eq!(h.invariant_factors(), &[2]);
        assert_eq!(sh.target.invariant_factors(), &[2]);
        assert!(sh.is_isomorphism());
        let plain = Arc::new(trivial_module(&g, 2, 1));
        let h = cohomology_group(&plain, 1).unwrap();
        assert!(matches!(shapiro_map(&h), Err(CohomologyError::Module(ModuleError::NotInduced))));
    }

    #[test]
    fn cup_connecting_v4() {
        let g = lookup("V4").unwrap();
        let diag = diagonal_sequence(&g, 4);
        let aug = augmentation_sequence(&g, 4);
        let pairing = cartier_pairing(&diag, &aug);
        let h0 = cohomology_group(aug.c(), 0).unwrap();
        let h1 = cohomology_group(diag.c(), 1).unwrap();
        for i in 0..h1.presentation().len() {
            let x = h1.generator(i);
            let dx = connecting(&diag, &x).unwrap();
            for m in 0..4u64 {
                let dm = connecting(&aug, &h0.class_of_normalized(&[m]).unwrap()).unwrap();
                let lhs = cup(&x, &dm, &pairing).unwrap();
                let rhs = dx.scale(m as i64);
                assert_eq!(lhs.parent().invariant_factors(), rhs.parent().invariant_factors());
                assert!(lhs.coords() == rhs.coords() || lhs.coords() == rhs.neg().coords());
            }
        }
    }

    /// `cup(x, δ′(m)) = (−1)^{p+1}·m·δ(x)` where the sign is visible.
    #[test]
    fn cup_connecting_sign() {
        for (name, n) in [("C3", 3u64), ("C4", 4), ("C2xC4", 4)] {
            let g = lookup(name).unwrap();
            let diag = diagonal_sequence(&g, n);
            let aug = augmentation_sequence(&g, n);
            let pairing = cartier_pairing(&diag, &aug);
            let h0 = cohomology_group(aug.c(), 0).unwrap();
            for (p, eps) in [(1usize, 1i64), (2, -1)] {
                let hp = cohomology_group(diag.c(), p).unwrap();
                for i in 0..hp.presentation().len() {
                    let x = hp.generator(i);
                    let dx = connecting(&diag, &x).unwrap();
                    for m in 0..n {
                        let dm = connecting(&aug, &h0.class_of_normalized(&[m]).unwrap()).unwrap();
                        let lhs = cup(&x, &dm, &pairing).unwrap();
                        let rhs = lhs.parent().coordinates_normalized(&dx.scale(eps * m as i64).representative()).unwrap();
                        assert_eq!(lhs.coords(), rhs, "{name} p={p} m={m}");
                        if eps == -1 && m == 1 && !dx.is_zero() && dx.order() > 2 {
                            assert_ne!(lhs.coords(), dx.coords(), "{name}: sign should be visible");
                        }
                    }
                }
            }
        }
    }
}
