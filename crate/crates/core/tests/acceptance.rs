//! One PASS/FAIL line per acceptance criterion.

mod common;

use std::sync::Arc;
use std::time::{Duration, Instant};

use galcoh_core::cohomology::{cohomology_group, connecting, cup, long_exact_sequence, CohomologyClass};
use galcoh_core::group::{catalog, lookup};
use galcoh_core::module::{
    augmentation_sequence, cartier_pairing, diagonal_sequence, regular_module, verify_duality,
};
use galcoh_core::sha::propdata_certificate;
use num_bigint::BigUint;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn timed(budget: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let elapsed = start.elapsed();
    if elapsed > budget {
        o.ok = false;
        o.detail = format!("{}; over budget", o.detail);
    }
    o.detail = format!("{} [{:.2}s / {}s]", o.detail, elapsed.as_secs_f64(), budget.as_secs());
    o
}

fn criterion_1() -> Outcome {
    let g = lookup("V4").unwrap();
    let c = match propdata_certificate(&g, 4) {
        Ok(c) => c,
        Err(e) => return outcome(false, e.to_string()),
    };
    let (_, brute) = common::brute_h1_and_sha(augmentation_sequence(&g, 4).a());
    let ok = c.big_n == 4
        && c.big_n_prime == 2
        && c.sha_invariants == [2]
        && c.exponent == 2
        && c.generator_ok
        && c.order_matches
        && c.cyclic
        && brute == 2;
    outcome(
        ok,
        format!(
            "V4 n=4: N={} N'={} Sha={:?} delta'(2)={:?} of order {}; enumeration |Sha|={brute}",
            c.big_n, c.big_n_prime, c.sha_invariants, c.generator, c.generator_order
        ),
    )
}

fn criterion_2() -> Outcome {
    let groups = catalog(12);
    let mut cells = 0;
    let mut bad = Vec::new();
    for e in &groups {
        for n in [2u64, 3, 4, 6, 8, 12] {
            cells += 1;
            match propdata_certificate(&e.group, n) {
                Ok(c) => {
                    let formula = BigUint::from(common::formula_order(&e.group, n));
                    if !c.ok() || c.sha_order != formula.to_string() {
                        bad.push(format!("{} n={n}: Sha={:?} expected order {formula}", e.name, c.sha_invariants));
                    }
                }
                Err(err) => bad.push(format!("{} n={n}: {err}", e.name)),
            }
        }
    }
    let detail = format!("{} groups x 6 moduli = {cells} cells, {} mismatches {:?}", groups.len(), bad.len(), bad);
    outcome(bad.is_empty() && cells >= 60, detail)
}

fn criterion_3() -> Outcome {
    let mut cells = 0;
    let mut bad = Vec::new();
    for e in catalog(8) {
        for n in [2u64, 3, 4, 8] {
            let m = Arc::new(regular_module(&e.group, n));
            for r in [1, 2] {
                cells += 1;
                match cohomology_group(&m, r) {
                    Ok(h) if h.is_trivial() => {}
                    Ok(h) => bad.push(format!("{} n={n} r={r}: {:?}", e.name, h.invariant_factors())),
                    Err(err) => bad.push(format!("{} n={n} r={r}: {err}", e.name)),
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{cells} groups H^r(G,(Z/n)[G]) all zero; failures {bad:?}"))
}

fn criterion_4() -> Outcome {
    let mut sequences = 0;
    let mut nodes = 0;
    let mut bad = Vec::new();
    for e in catalog(8) {
        for n in [2u64, 4] {
            for (label, s) in [("diagonal", diagonal_sequence(&e.group, n)), ("augmentation", augmentation_sequence(&e.group, n))] {
                sequences += 1;
                match long_exact_sequence(&s, 2, None) {
                    Ok(les) => {
                        nodes += les.nodes.len();
                        for node in les.nodes.iter().filter(|x| !x.exact) {
                            bad.push(format!("{} n={n} {label} at {}", e.name, node.label));
                        }
                    }
                    Err(err) => bad.push(format!("{} n={n} {label}: {err}", e.name)),
                }
            }
        }
    }
    outcome(bad.is_empty(), format!("{sequences} sequences, {nodes} nodes exact; failures {bad:?}"))
}

fn criterion_5() -> Outcome {
    let mut cells = 0;
    let mut bad = Vec::new();
    for e in catalog(12) {
        for n in [2u64, 3, 4, 8] {
            cells += 1;
            let r = verify_duality(&e.group, n);
            if !r.ok {
                bad.push(format!("{} n={n}: {:?}", e.name, r.failure));
            }
        }
    }
    outcome(bad.is_empty(), format!("{cells} cells with explicit isomorphisms; failures {bad:?}"))
}

/// Sign(s) `ε` with `cup(x, δ′(m)) = ε·m·δ(x)` for every generator `x` of
/// `H^p(G, H)` and every `m`.
fn signs_in_degree(p: usize) -> Result<(Vec<i64>, usize), String> {
    let g = lookup("V4").unwrap();
    let n = 4;
    let diag = diagonal_sequence(&g, n);
    let aug = augmentation_sequence(&g, n);
    let pairing = cartier_pairing(&diag, &aug);
    let h0 = cohomology_group(aug.c(), 0).map_err(|e| e.to_string())?;
    let hp = cohomology_group(diag.c(), p).map_err(|e| e.to_string())?;
    if hp.is_trivial() {
        return Err(format!("H^{p}(G,H) is trivial"));
    }
    let mut signs = vec![1i64, -1];
    let mut nonzero = 0;
    for i in 0..hp.presentation().len() {
        let x = hp.generator(i);
        let dx = connecting(&diag, &x).map_err(|e| e.to_string())?;
        for m in 0..n {
            let dm = connecting(&aug, &h0.class_of_normalized(&[m]).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
            let lhs = cup(&x, &dm, &pairing).map_err(|e| e.to_string())?;
            nonzero += usize::from(!lhs.is_zero());
            let target = lhs.parent();
            let same = |c: &CohomologyClass| target.coordinates_normalized(&c.representative()).ok();
            signs.retain(|&eps| {
                let rhs = dx.scale(eps * m as i64);
                same(&rhs).as_deref() == Some(lhs.coords())
            });
        }
    }
    Ok((signs, nonzero))
}

fn criterion_6() -> Outcome {
    let mut ok = true;
    let mut parts = Vec::new();
    for p in [1, 2] {
        match signs_in_degree(p) {
            Ok((s, nonzero)) if !s.is_empty() && nonzero > 0 => {
                let eps = if s.len() == 2 { "±1 (2-torsion, sign undetermined)".to_string() } else { format!("{:+}", s[0]) };
                parts.push(format!("p={p}: eps={eps}, {nonzero} nonzero products"));
            }
            Ok((s, nonzero)) => {
                ok = false;
                parts.push(format!("p={p}: signs {s:?}, {nonzero} nonzero products"));
            }
            Err(e) => {
                ok = false;
                parts.push(format!("p={p}: {e}"));
            }
        }
    }
    outcome(ok, format!("V4 n=4, m in Z/4: {}", parts.join("; ")))
}

fn criterion_7() -> Outcome {
    let mut bad = Vec::new();
    let mut note = |name: &str, r: Result<(), String>| {
        if let Err(e) = r {
            bad.push(format!("{name}: {e}"));
        }
    };
    note("snf", common::snf_suite(200));
    note("d∘d", common::dd_suite(100));
    note("section", common::section_suite(20));
    note("inf-res", common::inflation_restriction_suite().map(|_| ()));
    outcome(bad.is_empty(), format!("SNF 200, d∘d 100, section 20, inflation-restriction 10 pairs; failures {bad:?}"))
}

// Runs without the libtest harness so the per-criterion lines are always
// printed, not captured.
fn main() {
    type Criterion = (&'static str, u64, fn() -> Outcome);
    let criteria: [Criterion; 7] = [
        ("exact Sha instance", 1, criterion_1),
        ("Sha closed-form sweep", 300, criterion_2),
        ("Shapiro vanishing", 120, criterion_3),
        ("long exact sequences", 300, criterion_4),
        ("sequence duality", 300, criterion_5),
        ("cup/connecting compatibility", 120, criterion_6),
        ("property suites", 60, criterion_7),
    ];
    let mut failed = Vec::new();
    for (i, (name, budget, f)) in criteria.into_iter().enumerate() {
        let o = timed(Duration::from_secs(budget), f);
        println!("{} criterion {}: {name}: {}", if o.ok { "PASS" } else { "FAIL" }, i + 1, o.detail);
        if !o.ok {
            failed.push(i + 1);
        }
    }
    if !failed.is_empty() {
        eprintln!("failed criteria: {failed:?}");
        std::process::exit(1);
    }
}

