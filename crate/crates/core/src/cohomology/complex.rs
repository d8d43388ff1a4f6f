//! The normalized inhomogeneous cochain complex.
//!
//! A normalized `r`-cochain is stored as a vector of length `s^r · rank`,
//! `s = |G| − 1`: tuples of non-identity elements are numbered in base `s`
//! with the first argument most significant, each contributing `rank`
//! consecutive entries.

use crate::group::FiniteGroup;
use crate::linalg::ModMatrix;
use crate::module::GModule;

/// Element positions among the non-identity elements.
#[derive(Clone, Debug)]
pub(crate) struct Tuples {
    pub nonid: Vec<usize>,
    pub pos: Vec<Option<usize>>,
}

impl Tuples {
    pub fn new(group: &FiniteGroup) -> Self {
        let nonid: Vec<usize> = group.non_identity().collect();
        let mut pos = vec![None; group.size()];
        for (i, &g) in nonid.iter().enumerate() {
            pos[g] = Some(i);
        }
        Tuples { nonid, pos }
    }

    pub fn s(&self) -> usize {
        self.nonid.len()
    }

    pub fn count(&self, r: usize) -> usize {
        self.s().pow(r as u32)
    }

    /// Arguments of normalized tuple `t` of length `r`.
    pub fn decode(&self, mut t: usize, r: usize, out: &mut [usize]) {
        let s = self.s();
        for k in (0..r).rev() {
            out[k] = self.nonid[t % s];
            t /= s;
        }
    }

    /// Index of a tuple, or `None` if some argument is the identity.
    pub fn encode(&self, args: &[usize]) -> Option<usize> {
        let s = self.s();
        args.iter().try_fold(0, |acc, &g| self.pos[g].map(|p| acc * s + p))
    }
}

pub(crate) fn dim(group: &FiniteGroup, rank: usize, r: usize) -> usize {
    (group.size() - 1).pow(r as u32) * rank
}

/// The terms of `(dc)(g₁,…,g_{r+1})`: either `g₁·c(t)` or `±c(t)`.
enum Term {
    Act(usize, usize),
    Plain(bool, usize),
}

fn terms(tuples: &Tuples, group: &FiniteGroup, args: &[usize], buf: &mut Vec<usize>, out: &mut Vec<Term>) {
    out.clear();
    let r = args.len() - 1;
    if let Some(t) = tuples.encode(&args[1..]) {
        out.push(Term::Act(args[0], t));
    }
    for i in 1..=r {
        let prod = group.mul(args[i - 1], args[i]);
        if prod == group.identity() {
            continue;
        }
        buf.clear();
        buf.extend_from_slice(&args[..i - 1]);
        buf.push(prod);
        buf.extend_from_slice(&args[i + 1..]);
        if let Some(t) = tuples.encode(buf) {
            out.push(Term::Plain(i % 2 == 1, t));
        }
    }
    if let Some(t) = tuples.encode(&args[..r]) {
        out.push(Term::Plain((r + 1) % 2 == 1, t));
    }
}

/// Matrix of `d^r : C^r_N(G, M) → C^{r+1}_N(G, M)`.
pub(crate) fn differential(module: &GModule, r: usize) -> ModMatrix {
    let group = module.group();
    let n = module.modulus();
    let rank = module.rank();
    let tuples = Tuples::new(group);
    let rows = tuples.count(r + 1);
    let mut d = ModMatrix::zeros(rows * rank, tuples.count(r) * rank, n);
    let mut args = vec![0; r + 1];
    let (mut buf, mut ts) = (Vec::new(), Vec::new());
    for row in 0..rows {
        tuples.decode(row, r + 1, &mut args);
        terms(&tuples, group, &args, &mut buf, &mut ts);
        for term in &ts {
            match *term {
                Term::Act(g, t) => {
                    let a = module.action(g);
                    for i in 0..rank {
                        for j in 0..rank {
                            let v = a.get(i, j);
                            if v != 0 {
                                d.add_at(row * rank + i, t * rank + j, v);
                            }
                        }
                    }
                }
                Term::Plain(neg, t) => {
                    let v = if neg { n - 1 } else { 1 };
                    for i in 0..rank {
                        d.add_at(row * rank + i, t * rank + i, v);
                    }
                }
            }
        }
    }
    d
}

/// `d^r c` evaluated directly, without building the matrix.
pub(crate) fn apply_differential(module: &GModule, r: usize, c: &[u64]) -> Vec<u64> {
    let group = module.group();
    let n = module.modulus();
    let rank = module.rank();
    let tuples = Tuples::new(group);
    debug_assert_eq!(c.len(), tuples.count(r) * rank);
    let rows = tuples.count(r + 1);
    let mut out = vec![0u64; rows * rank];
    let mut args = vec![0; r + 1];
    let (mut buf, mut ts) = (Vec::new(), Vec::new());
    for row in 0..rows {
        tuples.decode(row, r + 1, &mut args);
        terms(&tuples, group, &args, &mut buf, &mut ts);
        let dst = &mut out[row * rank..(row + 1) * rank];
        for term in &ts {
            match *term {
                Term::Act(g, t) => {
                    let v = module.act(g, &c[t * rank..(t + 1) * rank]);
                    for (x, y) in dst.iter_mut().zip(v) {
                        *x = (*x + y) % n;
                    }
                }
                Term::Plain(neg, t) => {
                    for (x, &y) in dst.iter_mut().zip(&c[t * rank..(t + 1) * rank]) {
                        *x = if neg { (*x + n - y % n) % n } else { (*x + y) % n };
                    }
                }
            }
        }
    }
    out
}

/// Full table (base `|G|` indexing) of a normalized cochain.
pub(crate) fn expand(group: &FiniteGroup, rank: usize, r: usize, c: &[u64]) -> Vec<u64> {
    let tuples = Tuples::new(group);
    let size = group.size();
    let total = size.pow(r as u32);
    let mut out = vec![0u64; total * rank];
    let mut args = vec![0; r];
    for t in 0..total {
        let mut x = t;
        for k in (0..r).rev() {
            args[k] = x % size;
            x /= size;
        }
        if let Some(nt) = tuples.encode(&args) {
            out[t * rank..(t + 1) * rank].copy_from_slice(&c[nt * rank..(nt + 1) * rank]);
        }
    }
    out
}

/// Normalized part of a full table (values on degenerate tuples dropped).
pub(crate) fn compress(group: &FiniteGroup, rank: usize, r: usize, full: &[u64]) -> Vec<u64> {
    let tuples = Tuples::new(group);
    let size = group.size();
    let count = tuples.count(r);
    let mut out = vec![0u64; count * rank];
    let mut args = vec![0; r];
    for nt in 0..count {
        tuples.decode(nt, r, &mut args);
        let t = args.iter().fold(0, |acc, &g| acc * size + g);
        out[nt * rank..(nt + 1) * rank].copy_from_slice(&full[t * rank..(t + 1) * rank]);
    }
    out
}

/// Whether a full table vanishes on every tuple containing the identity.
pub(crate) fn is_normalized(group: &FiniteGroup, rank: usize, r: usize, full: &[u64]) -> bool {
    let size = group.size();
    let id = group.identity();
    (0..size.pow(r as u32)).all(|t| {
        let mut x = t;
        let degenerate = (0..r).any(|_| {
            let g = x % size;
            x /= size;
            g == id
        });
        !degenerate || full[t * rank..(t + 1) * rank].iter().all(|&v| v == 0)
    })
}
