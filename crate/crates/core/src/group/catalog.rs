//! Named groups built from standard presentations.

use std::sync::Arc;

use super::{FiniteGroup, GroupError};

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub name: String,
    pub group: Arc<FiniteGroup>,
}

/// Every abelian group of order `≤ max_order`, plus `D3 … D6`, `Q8`, `Dic3` and
/// `S4` where they fit. Sorted by order; abelian groups first within an order.
pub fn catalog(max_order: usize) -> Vec<CatalogEntry> {
    let mut out = Vec::new();
    for m in 1..=max_order {
        for factors in invariant_factor_lists(m) {
            let name = abelian_name(&factors);
            out.push(entry(product_of_cyclics(&factors).with_name(name)));
        }
        let extra: &[&str] = match m {
            6 => &["D3"],
            8 => &["D4", "Q8"],
            10 => &["D5"],
            12 => &["D6", "Dic3"],
            24 => &["S4"],
            _ => &[],
        };
        for name in extra {
            out.push(entry(lookup(name).expect("catalog name").as_ref().clone()));
        }
    }
    out
}

fn entry(g: FiniteGroup) -> CatalogEntry {
    CatalogEntry { name: g.name().to_string(), group: Arc::new(g) }
}

/// Resolves a group name: `C<n>`, `C<a>xC<b>x…`, `V4`, `D<m>`, `S3`, `Q8`,
/// `Dic<k>`, `S4`.
pub fn lookup(name: &str) -> Result<Arc<FiniteGroup>, GroupError> {
    let unknown = || GroupError::UnknownName(name.to_string());
    let num = |s: &str| s.parse::<usize>().ok().filter(|&k| k >= 1);
    let g = match name {
        "V4" | "C2xC2" => product_of_cyclics(&[2, 2]).with_name("V4"),
        "S3" => dihedral(3),
        "Q8" => dicyclic(2).with_name("Q8"),
        "S4" => symmetric4(),
        _ => {
            if let Some(m) = name.strip_prefix("Dic").and_then(num) {
                if m < 2 {
                    return Err(unknown());
                }
                dicyclic(m)
            } else if let Some(m) = name.strip_prefix('D').and_then(num) {
                if m < 3 {
                    return Err(unknown());
                }
                dihedral(m)
            } else {
                let orders: Option<Vec<usize>> =
                    name.split('x').map(|part| part.strip_prefix('C').and_then(num)).collect();
                let orders = orders.ok_or_else(unknown)?;
                if orders.iter().try_fold(1usize, |acc, &o| acc.checked_mul(o)).is_none_or(|s| s > 4096) {
                    return Err(unknown());
                }
                product_of_cyclics(&orders).with_name(name)
            }
        }
    };
    Ok(Arc::new(g))
}

fn abelian_name(factors: &[usize]) -> String {
    match factors {
        [2, 2] => "V4".to_string(),
        [] => "C1".to_string(),
        _ => factors.iter().map(|f| format!("C{f}")).collect::<Vec<_>>().join("x"),
    }
}

/// Divisibility chains `d₁ | d₂ | …` with all `dᵢ ≥ 2` and product `m`.
fn invariant_factor_lists(m: usize) -> Vec<Vec<usize>> {
    fn go(rest: usize, min: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 1 {
            out.push(prefix.clone());
            return;
        }
        for d in 2..=rest {
            let divides_prev = prefix.last().is_none_or(|&p| d % p == 0);
            if rest.is_multiple_of(d) && d >= min && divides_prev {
                prefix.push(d);
                go(rest / d, d, prefix, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(m, 2, &mut Vec::new(), &mut out);
    // Cyclic group first, then by number of factors.
    out.sort_by_key(|f| f.len());
    out
}

fn product_of_cyclics(orders: &[usize]) -> FiniteGroup {
    let size: usize = orders.iter().product();
    let digits = |mut x: usize| {
        let mut d = vec![0; orders.len()];
        for (k, &o) in orders.iter().enumerate().rev() {
            d[k] = x % o;
            x /= o;
        }
        d
    };
    let index = |d: &[usize]| d.iter().zip(orders).fold(0, |acc, (&x, &o)| acc * o + x);
    let table: Vec<Vec<usize>> = (0..size)
        .map(|a| {
            let da = digits(a);
            (0..size)
                .map(|b| {
                    let db = digits(b);
                    let s: Vec<usize> = da.iter().zip(&db).zip(orders).map(|((x, y), o)| (x + y) % o).collect();
                    index(&s)
                })
                .collect()
        })
        .collect();
    let labels = (0..size)
        .map(|a| {
            let d = digits(a);
            if d.len() == 1 {
                d[0].to_string()
            } else {
                format!("({})", d.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
            }
        })
        .collect();
    FiniteGroup::from_table(&table).expect("product of cyclic groups").with_labels(labels)
}

/// `D_m` of order `2m`; element `j·m + i` is `rⁱ sʲ`.
fn dihedral(m: usize) -> FiniteGroup {
    let size = 2 * m;
    let mul = |x: usize, y: usize| {
        let (a, b) = (x % m, x / m);
        let (c, d) = (y % m, y / m);
        let i = if b == 0 { (a + c) % m } else { (a + m - c) % m };
        ((b + d) % 2) * m + i
    };
    let table: Vec<Vec<usize>> = (0..size).map(|x| (0..size).map(|y| mul(x, y)).collect()).collect();
    let labels = (0..size).map(|x| word(x % m, x / m, "r", "s")).collect();
    FiniteGroup::from_table(&table).expect("dihedral group").with_name(format!("D{m}")).with_labels(labels)
}

/// `Dic_k` of order `4k`: `⟨a, x | a²ᵏ = 1, x² = aᵏ, xax⁻¹ = a⁻¹⟩`;
/// element `j·2k + i` is `aⁱ xʲ`.
fn dicyclic(k: usize) -> FiniteGroup {
    let m = 2 * k;
    let size = 2 * m;
    let mul = |x: usize, y: usize| {
        let (a, b) = (x % m, x / m);
        let (c, d) = (y % m, y / m);
        let mut i = if b == 0 { (a + c) % m } else { (a + m - c) % m };
        if b + d == 2 {
            i = (i + k) % m;
        }
        ((b + d) % 2) * m + i
    };
    let table: Vec<Vec<usize>> = (0..size).map(|x| (0..size).map(|y| mul(x, y)).collect()).collect();
    let labels = (0..size).map(|x| word(x % m, x / m, "a", "x")).collect();
    FiniteGroup::from_table(&table).expect("dicyclic group").with_name(format!("Dic{k}")).with_labels(labels)
}

fn word(i: usize, j: usize, r: &str, s: &str) -> String {
    let rp = match i {
        0 => String::new(),
        1 => r.to_string(),
        _ => format!("{r}^{i}"),
    };
    let sp = if j == 1 { s } else { "" };
    let w = format!("{rp}{sp}");
    if w.is_empty() {
        "1".to_string()
    } else {
        w
    }
}

/// Permutations of `{0,1,2,3}` in lexicographic order, `(στ)(x) = σ(τ(x))`.
fn symmetric4() -> FiniteGroup {
    let mut perms: Vec<[usize; 4]> = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    let mut seen = [false; 4];
                    p.iter().for_each(|&x| seen[x] = true);
                    if seen.iter().all(|&s| s) {
                        perms.push(p);
                    }
                }
            }
        }
    }
    let pos = |p: [usize; 4]| perms.iter().position(|q| *q == p).expect("permutation");
    let table: Vec<Vec<usize>> = perms
        .iter()
        .map(|s| perms.iter().map(|t| pos([s[t[0]], s[t[1]], s[t[2]], s[t[3]]])).collect())
        .collect();
    let labels = perms.iter().map(|p| format!("[{}{}{}{}]", p[0], p[1], p[2], p[3])).collect();
    FiniteGroup::from_table(&table).expect("symmetric group").with_name("S4").with_labels(labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{cyclic_subgroups, Subgroup};

    fn names(max: usize) -> Vec<String> {
        catalog(max).into_iter().map(|e| e.name).collect()
    }

    #[test]
    fn small_catalogs() {
        assert_eq!(names(1), vec!["C1"]);
        assert_eq!(names(4), vec!["C1", "C2", "C3", "C4", "V4"]);
        assert_eq!(names(12).len(), 23);
        assert!(names(24).contains(&"S4".to_string()));
        assert!(!names(23).contains(&"S4".to_string()));
    }

    #[test]
    fn order_eight() {
        for name in ["D4", "Q8"] {
            let g = lookup(name).unwrap();
            assert_eq!((g.size(), g.exponent()), (8, 4));
            assert!(!g.is_abelian());
        }
        let q8 = lookup("Q8").unwrap();
        // Q8 has a single element of order 2.
        assert_eq!(q8.element_orders().iter().filter(|&&o| o == 2).count(), 1);
        let d4 = lookup("D4").unwrap();
        assert_eq!(d4.element_orders().iter().filter(|&&o| o == 2).count(), 5);
    }

    #[test]
    fn catalog_invariants() {
        for e in catalog(12) {
            let g = &e.group;
            assert_eq!(g.size() % g.exponent(), 0, "{}", e.name);
            for x in g.elements() {
                let s = Subgroup::generated_by(g, &[x]).unwrap();
                assert_eq!(s.order(), g.element_order(x));
            }
            let subs = cyclic_subgroups(g);
            for (i, a) in subs.iter().enumerate() {
                assert!(subs[i + 1..].iter().all(|b| b.members() != a.members()));
            }
        }
    }

    #[test]
    fn names_resolve() {
        assert_eq!(lookup("S3").unwrap().size(), 6);
        assert_eq!(lookup("C2xC2").unwrap().name(), "V4");
        assert_eq!(lookup("C2xC2xC2").unwrap().exponent(), 2);
        assert_eq!(lookup("Dic3").unwrap().size(), 12);
        assert_eq!(lookup("S4").unwrap().exponent(), 12);
        assert!(lookup("X9").is_err());
        assert!(lookup("D2").is_err());
    }
}
