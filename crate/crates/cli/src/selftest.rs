//! Seeded property suites over the engine, with a hook that corrupts one
//! suite's outputs so the harness can be seen to fail.

use std::str::FromStr;
use std::sync::Arc;

use galcoh_core::cohomology::{coboundary, cohomology_group, connecting_map, Cochain};
use galcoh_core::group::{catalog, cyclic_subgroups, CatalogEntry, FiniteGroup};
use galcoh_core::linalg::{smith_mod, smith_normal_form, IntMatrix, ModMatrix};
use galcoh_core::module::{
    augmentation_sequence, cartier_pairing, diagonal_sequence, induced_module, module_by_name, GModule, ModuleMap,
};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::report::{anchor, Record, VerificationReport};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    Snf,
    Coboundary,
    Section,
}

impl FromStr for Fault {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "snf" => Ok(Fault::Snf),
            "coboundary" => Ok(Fault::Coboundary),
            "section" => Ok(Fault::Section),
            _ => Err(CliError::Usage(format!("unknown fault '{s}' (snf | coboundary | section)"))),
        }
    }
}

pub const SNF_CASES: usize = 200;
pub const DD_CASES: usize = 100;
pub const EQUIVARIANCE_CASES: usize = 60;
pub const SECTION_CASES: usize = 20;

const MODULES: &[&str] = &["trivial", "regular", "H", "Hprime", "induced"];

type Outcome = Result<(), String>;
type Suite<'a> = (&'static str, usize, &'a dyn Fn(&mut ChaCha8Rng) -> Outcome);

pub fn selftest(seed: u64, fault: Option<Fault>) -> VerificationReport {
    let groups = catalog(8);
    let suites: [Suite; 4] = [
        ("snf-recomposition", SNF_CASES, &|rng| snf_case(rng, fault == Some(Fault::Snf))),
        ("coboundary-squared", DD_CASES, &|rng| dd_case(rng, &groups, fault == Some(Fault::Coboundary))),
        ("equivariance", EQUIVARIANCE_CASES, &|rng| equivariance_case(rng, &groups)),
        ("section-independence", SECTION_CASES, &|rng| section_case(rng, &groups, fault == Some(Fault::Section))),
    ];
    let records = suites
        .iter()
        .enumerate()
        .map(|(k, (name, cases, case))| {
            let inputs = json!({ "seed": seed, "cases": cases });
            Record::run(format!("selftest/{name}"), anchor::PLUMBING, inputs, || {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((k as u64 + 1) << 32));
                let failures: Vec<String> =
                    (0..*cases).filter_map(|i| case(&mut rng).err().map(|e| format!("case {i}: {e}"))).collect();
                let first: Vec<&String> = failures.iter().take(3).collect();
                Ok((failures.is_empty(), json!({ "failures": failures.len(), "first": first })))
            })
        })
        .collect();
    let config = json!({ "seed": seed, "inject_fault": fault.map(|f| format!("{f:?}").to_lowercase()) });
    VerificationReport::new("selftest", config, records)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_int_matrix(rng: &mut ChaCha8Rng) -> IntMatrix {
    let (r, c) = (rng.gen_range(1..=7), rng.gen_range(1..=7));
    IntMatrix::from_fn(r, c, |_, _| {
        let x: i64 = if rng.gen_bool(0.75) { rng.gen_range(-9..=9) } else { rng.gen_range(-400..=400) };
        BigInt::from(x)
    })
}

fn snf_case(rng: &mut ChaCha8Rng, corrupt: bool) -> Outcome {
    let a = random_int_matrix(rng);
    let n: u64 = rng.gen_range(2..=36);
    let s = smith_normal_form(&a);
    let mut d = s.d.clone();
    if corrupt {
        d.set(0, 0, d.get(0, 0) + 1);
    }
    ensure(s.u.mul(&a).mul(&s.v) == d, || "U·A·V ≠ D".into())?;
    ensure(s.u.mul(&s.u_inv) == IntMatrix::identity(a.rows()), || "U·U⁻¹ ≠ I".into())?;
    ensure(s.v.mul(&s.v_inv) == IntMatrix::identity(a.cols()), || "V·V⁻¹ ≠ I".into())?;
    let k = a.rows().min(a.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            ensure(i == j || *d.get(i, j) == BigInt::from(0), || format!("D[{i},{j}] off-diagonal"))?;
        }
    }
    for i in 0..k.saturating_sub(1) {
        let (x, y) = (d.get(i, i), d.get(i + 1, i + 1));
        let divides = if *x == BigInt::from(0) { *y == BigInt::from(0) } else { y % x == BigInt::from(0) };
        ensure(*x >= BigInt::from(0) && divides, || format!("divisibility fails at {i}"))?;
    }

    let am = a.to_mod(n);
    let ms = smith_mod(&am, true, true);
    let (l, r) = (ms.left.as_ref().expect("tracked"), ms.right.as_ref().expect("tracked"));
    let dm = l.mul(&am).mul(r);
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let want = if i == j { ms.divisor(i) % n } else { 0 };
            ensure(dm.get(i, j) == want, || format!("mod {n} recomposition fails at [{i},{j}]"))?;
        }
    }
    Ok(())
}

fn random_module(rng: &mut ChaCha8Rng, g: &Arc<FiniteGroup>, n: u64) -> Arc<GModule> {
    let name = MODULES[rng.gen_range(0..MODULES.len())];
    if name == "induced" {
        let subs = cyclic_subgroups(g);
        return Arc::new(induced_module(g, &subs[rng.gen_range(0..subs.len())], n));
    }
    Arc::new(module_by_name(g, n, name).expect("known module"))
}

fn dd_case(rng: &mut ChaCha8Rng, groups: &[CatalogEntry], corrupt: bool) -> Outcome {
    let e = &groups[rng.gen_range(0..groups.len())];
    let n = rng.gen_range(2..=8);
    let m = random_module(rng, &e.group, n);
    let r = rng.gen_range(0..=2usize);
    let len = e.group.size().pow(r as u32) * m.rank();
    let values = (0..len).map(|_| rng.gen_range(0..n)).collect();
    let c = Cochain::new(&m, r, values).map_err(|e| e.to_string())?;
    let ddc = coboundary(&coboundary(&c));
    let mut out = ddc.values().to_vec();
    if corrupt {
        match out.first_mut() {
            Some(x) => *x = (*x + 1) % n,
            None => out.push(1),
        }
    }
    ensure(out.iter().all(|&x| x == 0), || format!("d∘d ≠ 0 on {} / {} n={n} r={r}", e.name, m.name()))
}

fn commutes(f: &ModuleMap, g: &FiniteGroup) -> bool {
    g.elements().all(|x| f.matrix().mul(f.source().action(x)) == f.target().action(x).mul(f.matrix()))
}

/// Sequence maps commute with the action; the pairing is invariant.
fn equivariance_case(rng: &mut ChaCha8Rng, groups: &[CatalogEntry]) -> Outcome {
    let e = &groups[rng.gen_range(0..groups.len())];
    let n = rng.gen_range(2..=8);
    let g = &e.group;
    let (diag, aug) = (diagonal_sequence(g, n), augmentation_sequence(g, n));
    for (label, s) in [("diagonal", &diag), ("augmentation", &aug)] {
        ensure(commutes(s.inj(), g) && commutes(s.surj(), g), || format!("{label} sequence over {} n={n}", e.name))?;
    }
    let pairing = cartier_pairing(&diag, &aug);
    let a: Vec<u64> = (0..pairing.left().rank()).map(|_| rng.gen_range(0..n)).collect();
    let b: Vec<u64> = (0..pairing.right().rank()).map(|_| rng.gen_range(0..n)).collect();
    let base = pairing.eval(&a, &b);
    for x in g.elements() {
        let moved = pairing.eval(&pairing.left().act(x, &a), &pairing.right().act(x, &b));
        ensure(moved == base, || format!("pairing not invariant under {x} over {} n={n}", e.name))?;
    }
    Ok(())
}

fn section_case(rng: &mut ChaCha8Rng, groups: &[CatalogEntry], corrupt: bool) -> Outcome {
    let e = &groups[rng.gen_range(0..groups.len())];
    let n = rng.gen_range(2..=8);
    let s = if rng.gen_bool(0.5) { diagonal_sequence(&e.group, n) } else { augmentation_sequence(&e.group, n) };
    let r = rng.gen_range(0..=1usize);
    let t = ModMatrix::from_fn(s.a().rank(), s.c().rank(), n, |_, _| rng.gen_range(0..n) as i64);
    let bump = s.inj().matrix().mul(&t);
    let sec = s.section();
    let other = ModMatrix::from_fn(sec.rows(), sec.cols(), n, |i, j| (sec.get(i, j) + bump.get(i, j)) as i64);
    let s2 = s.clone().with_section(other);
    let hc = cohomology_group(s.c(), r).map_err(|e| e.to_string())?;
    let d1 = connecting_map(&s, &hc).map_err(|e| e.to_string())?;
    let d2 = connecting_map(&s2, &hc).map_err(|e| e.to_string())?;
    let mut cols = d2.hom.columns().to_vec();
    if corrupt {
        match cols.iter_mut().flatten().next() {
            Some(x) => *x += 1,
            None => cols.push(vec![1]),
        }
    }
    ensure(d1.hom.columns() == cols, || format!("δ depends on the section ({} n={n} r={r})", e.name))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_seed_passes() {
        let report = selftest(0, None);
        assert!(report.ok, "{}", report.render_table());
        assert_eq!(report.records.len(), 4);
    }

    #[test]
    fn each_fault_is_caught() {
        for fault in [Fault::Snf, Fault::Coboundary, Fault::Section] {
            assert!(!selftest(1, Some(fault)).ok, "{fault:?}");
        }
        assert!("nonsense".parse::<Fault>().is_err());
    }
}
