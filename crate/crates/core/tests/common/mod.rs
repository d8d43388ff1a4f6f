//! Shared by the property and acceptance targets: deterministic proptest
//! suites and brute-force oracles that avoid the engine's linear algebra.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};
use std::sync::{Arc, OnceLock};

use galcoh_core::cohomology::{
    coboundary, cohomology_group, connecting_map, inflation_map, restriction_map, Cochain,
};
use galcoh_core::group::{catalog, cyclic_subgroups, quotient, CatalogEntry, FiniteGroup, QuotientMap};
use galcoh_core::linalg::{smith_mod, smith_normal_form, IntMatrix, ModMatrix};
use galcoh_core::module::{
    augmentation_sequence, diagonal_sequence, induced_module, module_by_name, GModule, ShortExactSequence,
};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

pub fn small_groups() -> &'static [CatalogEntry] {
    static GROUPS: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    GROUPS.get_or_init(|| catalog(8))
}

/// Runs `cases` deterministic cases; failures come back as a message.
pub fn run<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    let config = Config { cases, failure_persistence: None, ..Config::default() };
    let mut runner = TestRunner::new_with_rng(config, TestRng::deterministic_rng(RngAlgorithm::ChaCha));
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

// SNF

fn int_matrix() -> impl Strategy<Value = IntMatrix> {
    (1usize..=7, 1usize..=7).prop_flat_map(|(r, c)| {
        proptest::collection::vec(prop_oneof![3 => -9i64..=9, 1 => -400i64..=400], r * c)
            .prop_map(move |v| IntMatrix::from_fn(r, c, |i, j| BigInt::from(v[i * c + j])))
    })
}

/// Recomposition `U·A·V = D`, unimodular transforms, divisibility chain, and
/// agreement of the Z/n Smith form with the integer one reduced mod n.
pub fn snf_suite(cases: u32) -> Result<(), String> {
    run(cases, (int_matrix(), 2u64..=36), |(a, n)| {
        let s = smith_normal_form(&a);
        prop_assert!(s.u.mul(&a).mul(&s.v) == s.d, "U·A·V ≠ D");
        prop_assert!(s.u.mul(&s.u_inv) == IntMatrix::identity(a.rows()), "U not unimodular");
        prop_assert!(s.v.mul(&s.v_inv) == IntMatrix::identity(a.cols()), "V not unimodular");
        prop_assert!(s.u.determinant().abs().is_one() && s.v.determinant().abs().is_one());
        let k = a.rows().min(a.cols());
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                prop_assert!(i == j || s.d.get(i, j).is_zero(), "off-diagonal entry");
            }
        }
        for i in 0..k {
            let d = s.d.get(i, i);
            prop_assert!(!d.is_negative());
            if i + 1 < k {
                let next = s.d.get(i + 1, i + 1);
                prop_assert!(if d.is_zero() { next.is_zero() } else { next.is_multiple_of(d) }, "chain broken");
            }
        }

        let am = a.to_mod(n);
        let ms = smith_mod(&am, true, true);
        let (l, r) = (ms.left.as_ref().unwrap(), ms.right.as_ref().unwrap());
        prop_assert!(l.mul(ms.left_inv.as_ref().unwrap()) == ModMatrix::identity(a.rows(), n));
        prop_assert!(r.mul(ms.right_inv.as_ref().unwrap()) == ModMatrix::identity(a.cols(), n));
        let dm = l.mul(&am).mul(r);
        for i in 0..a.rows() {
            for j in 0..a.cols() {
                let want = if i == j { ms.divisor(i) % n } else { 0 };
                prop_assert_eq!(dm.get(i, j), want);
            }
        }
        for i in 0..k {
            let over_z = s.d.get(i, i).gcd(&BigInt::from(n));
            prop_assert_eq!(over_z, BigInt::from(ms.divisor(i)), "mod-n diagonal disagrees with integer SNF");
        }
        Ok(())
    })
}

// Modules

pub fn module_names() -> &'static [&'static str] {
    &["trivial", "regular", "H", "Hprime", "induced"]
}

pub fn make_module(g: &Arc<FiniteGroup>, n: u64, name: &str, pick: usize) -> Arc<GModule> {
    if name == "induced" {
        let subs = cyclic_subgroups(g);
        return Arc::new(induced_module(g, &subs[pick % subs.len()], n));
    }
    Arc::new(module_by_name(g, n, name).expect("known module"))
}

/// `d∘d = 0` on random full cochain tables.
pub fn dd_suite(cases: u32) -> Result<(), String> {
    let groups = small_groups();
    let strategy = (0..groups.len(), 2u64..=8, 0..module_names().len(), 0usize..=2, any::<u64>());
    run(cases, strategy, |(gi, n, mi, r, seed)| {
        let g = &groups[gi].group;
        let m = make_module(g, n, module_names()[mi], seed as usize);
        let len = g.size().pow(r as u32) * m.rank();
        let mut x = seed;
        let values = (0..len)
            .map(|_| {
                x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                (x >> 33) % n
            })
            .collect();
        let c = Cochain::new(&m, r, values).unwrap();
        let dc = coboundary(&c);
        prop_assert_eq!(dc.degree(), r + 1);
        prop_assert!(coboundary(&dc).is_zero(), "d∘d ≠ 0 for {} / {} n={} r={}", groups[gi].name, m.name(), n, r);
        Ok(())
    })
}

/// `δ` does not depend on the set-theoretic section.
pub fn section_suite(cases: u32) -> Result<(), String> {
    let groups = small_groups();
    let strategy = (0..groups.len(), 2u64..=8, any::<bool>(), 0usize..=1, proptest::collection::vec(any::<u64>(), 64));
    run(cases, strategy, |(gi, n, diag, r, noise)| {
        let g = &groups[gi].group;
        let s = if diag { diagonal_sequence(g, n) } else { augmentation_sequence(g, n) };
        let (ra, rc) = (s.a().rank(), s.c().rank());
        let t = ModMatrix::from_fn(ra, rc, n, |i, j| (noise[(i * rc + j) % noise.len()] % n) as i64);
        let shifted = s.section().clone();
        let bump = s.inj().matrix().mul(&t);
        let other = ModMatrix::from_fn(shifted.rows(), shifted.cols(), n, |i, j| {
            (shifted.get(i, j) + bump.get(i, j)) as i64
        });
        let s2: ShortExactSequence = s.clone().with_section(other);
        let hc = cohomology_group(s.c(), r).unwrap();
        let d1 = connecting_map(&s, &hc).unwrap();
        let d2 = connecting_map(&s2, &hc).unwrap();
        prop_assert_eq!(d1.target.invariant_factors(), d2.target.invariant_factors());
        prop_assert!(d1.hom.columns() == d2.hom.columns(), "δ depends on the section ({} n={n})", groups[gi].name);
        Ok(())
    })
}

// Inflation-restriction

/// `M` regarded as a `G`-module through `G → G/N`.
pub fn pullback(q: &QuotientMap, m: &GModule) -> Arc<GModule> {
    let g = q.source();
    let actions = g.elements().map(|x| m.action(q.project(x)).clone()).collect();
    Arc::new(GModule::new(g, m.modulus(), m.rank(), actions).expect("pullback is a module"))
}

/// Ten `(G, N)` pairs with `N` a proper nontrivial normal cyclic subgroup.
pub fn quotient_pairs() -> Vec<(String, QuotientMap)> {
    let mut pairs = Vec::new();
    for e in small_groups() {
        let normal: Vec<_> = cyclic_subgroups(&e.group)
            .into_iter()
            .filter(|s| s.order() > 1 && s.order() < e.group.size() && s.is_normal())
            .collect();
        let take = if e.name == "D4" { 2 } else { 1 };
        let picks: Vec<_> = match normal.len() {
            0 => Vec::new(),
            1 => vec![&normal[0]],
            k => vec![&normal[0], &normal[k - 1]].into_iter().take(take).collect(),
        };
        for s in picks {
            let label = format!("{}/<{}>", e.name, s.members().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","));
            pairs.push((label, quotient(&e.group, s).expect("normal")));
        }
    }
    pairs.truncate(10);
    pairs
}

/// `0 → H¹(G/N, M) → H¹(G, M) → H¹(N, M)` exact for `M` inflated from `G/N`.
pub fn inflation_restriction_suite() -> Result<usize, String> {
    let pairs = quotient_pairs();
    if pairs.len() < 10 {
        return Err(format!("only {} pairs", pairs.len()));
    }
    let mut checked = 0;
    for (label, q) in &pairs {
        for n in [2u64, 3, 4] {
            for name in ["trivial", "regular", "Hprime"] {
                let mq = Arc::new(module_by_name(q.target(), n, name).unwrap());
                let m = pullback(q, &mq);
                let src = cohomology_group(&mq, 1).map_err(|e| e.to_string())?;
                let inf = inflation_map(&src, q, &m).map_err(|e| e.to_string())?;
                let res = restriction_map(&inf.target, q.normal_subgroup()).map_err(|e| e.to_string())?;
                if !inf.hom.is_injective() {
                    return Err(format!("{label} {name} n={n}: inflation not injective"));
                }
                if !inf.image().same_as(&res.kernel()) {
                    return Err(format!("{label} {name} n={n}: im inf ≠ ker res"));
                }
                checked += 1;
            }
        }
    }
    Ok(checked)
}

// Brute-force oracles

/// All crossed homomorphisms `f : G → M`, found by choosing values on a
/// generating set and propagating `f(gs) = f(g) + g·f(s)` along the Cayley
/// graph. Only for tiny `|M|^{#gens}`.
pub fn crossed_homs(m: &GModule) -> Vec<Vec<Vec<u64>>> {
    let g = m.group();
    let gens = generating_set(g);
    let rank = m.rank();
    let n = m.modulus();
    let module_elems = all_vectors(rank, n);
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        if let Some(f) = propagate(m, &gens, &choice.iter().map(|&c| module_elems[c].clone()).collect::<Vec<_>>()) {
            out.push(f);
        }
        let mut k = 0;
        loop {
            if k == choice.len() {
                return out;
            }
            choice[k] += 1;
            if choice[k] < module_elems.len() {
                break;
            }
            choice[k] = 0;
            k += 1;
        }
    }
}

fn generating_set(g: &FiniteGroup) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut span: BTreeSet<usize> = [g.identity()].into();
    for x in g.elements() {
        if span.contains(&x) {
            continue;
        }
        gens.push(x);
        let mut queue: VecDeque<usize> = span.iter().copied().collect();
        while let Some(y) = queue.pop_front() {
            for &s in &gens {
                let z = g.mul(y, s);
                if span.insert(z) {
                    queue.push_back(z);
                }
            }
        }
    }
    gens
}

fn all_vectors(rank: usize, n: u64) -> Vec<Vec<u64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..rank {
        out = out.into_iter().flat_map(|v| (0..n).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

fn add(a: &[u64], b: &[u64], n: u64) -> Vec<u64> {
    a.iter().zip(b).map(|(x, y)| (x + y) % n).collect()
}

fn propagate(m: &GModule, gens: &[usize], values: &[Vec<u64>]) -> Option<Vec<Vec<u64>>> {
    let g = m.group();
    let n = m.modulus();
    let mut f: Vec<Option<Vec<u64>>> = vec![None; g.size()];
    f[g.identity()] = Some(vec![0; m.rank()]);
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        let fx = f[x].clone().unwrap();
        for (s, v) in gens.iter().zip(values) {
            // f(x·s) = f(x) + x·f(s)
            let y = g.mul(x, *s);
            let fy = add(&fx, &m.act(x, v), n);
            match &f[y] {
                Some(old) if *old != fy => return None,
                Some(_) => {}
                None => {
                    f[y] = Some(fy);
                    queue.push_back(y);
                }
            }
        }
    }
    let f: Vec<Vec<u64>> = f.into_iter().map(Option::unwrap).collect();
    // Full cocycle identity as a final guard.
    for x in g.elements() {
        for y in g.elements() {
            if f[g.mul(x, y)] != add(&f[x], &m.act(x, &f[y]), n) {
                return None;
            }
        }
    }
    Some(f)
}

fn is_principal_on(m: &GModule, f: &[Vec<u64>], elems: &[usize]) -> bool {
    let n = m.modulus();
    all_vectors(m.rank(), n).iter().any(|a| {
        elems.iter().all(|&x| {
            let ga = m.act(x, a);
            let want: Vec<u64> = ga.iter().zip(a).map(|(p, q)| (p + n - q) % n).collect();
            f[x] == want
        })
    })
}

/// `(|H¹(G, M)|, |Ш¹_ω(G, M)|)` by enumeration.
pub fn brute_h1_and_sha(m: &GModule) -> (usize, usize) {
    let g = m.group();
    let z = crossed_homs(m);
    let all = all_vectors(m.rank(), m.modulus());
    let boundaries: BTreeSet<Vec<Vec<u64>>> = all
        .iter()
        .map(|a| {
            g.elements()
                .map(|x| m.act(x, a).iter().zip(a).map(|(p, q)| (p + m.modulus() - q) % m.modulus()).collect())
                .collect()
        })
        .collect();
    let cyclic: Vec<Vec<usize>> = g
        .elements()
        .map(|x| (0..g.element_order(x)).map(|k| g.pow(x, k)).collect())
        .collect();
    let locally_trivial = z.iter().filter(|f| cyclic.iter().all(|c| is_principal_on(m, f, c))).count();
    (z.len() / boundaries.len(), locally_trivial / boundaries.len())
}

pub fn formula_order(g: &FiniteGroup, n: u64) -> u64 {
    let big = n.gcd(&(g.size() as u64));
    let small = n.gcd(&(g.exponent() as u64));
    big / small
}
