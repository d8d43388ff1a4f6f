//! Finite groups given by explicit multiplication tables.

mod catalog;

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use catalog::{catalog, lookup, CatalogEntry};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GroupError {
    #[error("Cayley table is empty")]
    Empty,
    #[error("Cayley table is not square: row {row} has {len} entries, expected {size}")]
    NotSquare { row: usize, len: usize, size: usize },
    #[error("entry {value} at ({row}, {col}) is not an element index below {size}")]
    OutOfRange { row: usize, col: usize, value: usize, size: usize },
    #[error("no identity element")]
    NoIdentity,
    #[error("element {0} has no inverse")]
    NoInverse(usize),
    #[error("associativity fails for ({a}, {b}, {c}): (ab)c = {left}, a(bc) = {right}")]
    NotAssociative { a: usize, b: usize, c: usize, left: usize, right: usize },
    #[error("elements {0:?} are not closed under the group law")]
    NotSubgroup(Vec<usize>),
    #[error("subgroup is not normal: {g} * {h} * {g}^-1 = {conjugate} is outside it")]
    NotNormal { g: usize, h: usize, conjugate: usize },
    #[error("element index {0} is out of range")]
    BadElement(usize),
    #[error("unknown group name {0:?}")]
    UnknownName(String),
    #[error("size field {declared} disagrees with table of size {actual}")]
    SizeMismatch { declared: usize, actual: usize },
}

/// A finite group: elements are `0..size`, `cayley[a][b] = a·b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    size: usize,
    cayley: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
    element_orders: Vec<usize>,
    exponent: usize,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Validates a Cayley table and derives identity, inverses, orders and exponent.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self, GroupError> {
        let size = table.len();
        if size == 0 {
            return Err(GroupError::Empty);
        }
        for (row, r) in table.iter().enumerate() {
            if r.len() != size {
                return Err(GroupError::NotSquare { row, len: r.len(), size });
            }
            if let Some((col, &value)) = r.iter().enumerate().find(|(_, &v)| v >= size) {
                return Err(GroupError::OutOfRange { row, col, value, size });
            }
        }
        let cayley: Vec<usize> = table.iter().flatten().copied().collect();
        let mul = |a: usize, b: usize| cayley[a * size + b];

        let identity = (0..size)
            .find(|&e| (0..size).all(|x| mul(e, x) == x && mul(x, e) == x))
            .ok_or(GroupError::NoIdentity)?;
        let mut inverses = Vec::with_capacity(size);
        for a in 0..size {
            let inv = (0..size)
                .find(|&b| mul(a, b) == identity && mul(b, a) == identity)
                .ok_or(GroupError::NoInverse(a))?;
            inverses.push(inv);
        }
        for a in 0..size {
            for b in 0..size {
                let ab = mul(a, b);
                for c in 0..size {
                    let left = mul(ab, c);
                    let right = mul(a, mul(b, c));
                    if left != right {
                        return Err(GroupError::NotAssociative { a, b, c, left, right });
                    }
                }
            }
        }

        let element_orders: Vec<usize> = (0..size)
            .map(|g| {
                let mut k = 1;
                let mut x = g;
                while x != identity {
                    x = mul(x, g);
                    k += 1;
                }
                k
            })
            .collect();
        let exponent = element_orders.iter().fold(1, |acc, &o| num_integer::lcm(acc, o));
        Ok(FiniteGroup {
            name: format!("G{size}"),
            size,
            cayley,
            identity,
            inverses,
            element_orders,
            exponent,
            labels: (0..size).map(|i| i.to_string()).collect(),
        })
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.size, "one label per element");
        self.labels = labels;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cayley[a * self.size + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, g: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, g))
    }

    pub fn element_order(&self, g: usize) -> usize {
        self.element_orders[g]
    }

    pub fn element_orders(&self) -> &[usize] {
        &self.element_orders
    }

    pub fn exponent(&self) -> usize {
        self.exponent
    }

    pub fn label(&self, g: usize) -> &str {
        &self.labels[g]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    /// Non-identity elements in index order.
    pub fn non_identity(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.size).filter(move |&g| g != self.identity)
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.cayley.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    /// A generating set, chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![false; self.size];
        span[self.identity] = true;
        for g in self.elements() {
            if span[g] {
                continue;
            }
            gens.push(g);
            let mut members: Vec<usize> = vec![self.identity];
            span.iter_mut().for_each(|s| *s = false);
            span[self.identity] = true;
            while let Some(x) = members.pop() {
                for &h in &gens {
                    let y = self.mul(x, h);
                    if !span[y] {
                        span[y] = true;
                        members.push(y);
                    }
                }
            }
        }
        gens
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn to_json(&self) -> GroupJson {
        GroupJson { name: self.name.clone(), size: self.size, cayley: self.table() }
    }
}

/// `build_group`: validated group from a Cayley table.
pub fn build_group(table: &[Vec<usize>]) -> Result<FiniteGroup, GroupError> {
    FiniteGroup::from_table(table)
}

/// On-disk group format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupJson {
    pub name: String,
    pub size: usize,
    pub cayley: Vec<Vec<usize>>,
}

impl GroupJson {
    pub fn build(&self) -> Result<FiniteGroup, GroupError> {
        if self.size != self.cayley.len() {
            return Err(GroupError::SizeMismatch { declared: self.size, actual: self.cayley.len() });
        }
        Ok(FiniteGroup::from_table(&self.cayley)?.with_name(self.name.clone()))
    }
}

/// A subgroup, stored as the sorted list of its members.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<usize>,
}

impl Subgroup {
    /// Validates closure (which for a finite nonempty set implies a subgroup).
    pub fn new(parent: &Arc<FiniteGroup>, members: impl IntoIterator<Item = usize>) -> Result<Self, GroupError> {
        let set: BTreeSet<usize> = members.into_iter().collect();
        if let Some(&bad) = set.iter().find(|&&g| g >= parent.size()) {
            return Err(GroupError::BadElement(bad));
        }
        let members: Vec<usize> = set.iter().copied().collect();
        let closed = !members.is_empty()
            && members.iter().all(|&a| members.iter().all(|&b| set.contains(&parent.mul(a, b))));
        if !closed {
            return Err(GroupError::NotSubgroup(members));
        }
        Ok(Subgroup { parent: Arc::clone(parent), members })
    }

    /// Smallest subgroup containing the given elements.
    pub fn generated_by(parent: &Arc<FiniteGroup>, gens: &[usize]) -> Result<Self, GroupError> {
        if let Some(&bad) = gens.iter().find(|&&g| g >= parent.size()) {
            return Err(GroupError::BadElement(bad));
        }
        let mut set: BTreeSet<usize> = BTreeSet::from([parent.identity()]);
        let mut frontier: Vec<usize> = vec![parent.identity()];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = parent.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        Ok(Subgroup { parent: Arc::clone(parent), members: set.into_iter().collect() })
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Self {
        Subgroup { parent: Arc::clone(parent), members: vec![parent.identity()] }
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Self {
        Subgroup { parent: Arc::clone(parent), members: parent.elements().collect() }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn index(&self) -> usize {
        self.parent.size() / self.members.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.members.binary_search(&g).is_ok()
    }

    pub fn is_normal(&self) -> bool {
        self.normality_witness().is_none()
    }

    fn normality_witness(&self) -> Option<(usize, usize, usize)> {
        let g = &self.parent;
        for x in g.elements() {
            for &h in &self.members {
                let c = g.mul(g.mul(x, h), g.inv(x));
                if !self.contains(c) {
                    return Some((x, h, c));
                }
            }
        }
        None
    }

    /// The subgroup as a group in its own right; element `i` of the result is
    /// `members()[i]` in the parent.
    pub fn as_group(&self) -> FiniteGroup {
        let pos = |g: usize| self.members.binary_search(&g).expect("closed under multiplication");
        let table: Vec<Vec<usize>> = self
            .members
            .iter()
            .map(|&a| self.members.iter().map(|&b| pos(self.parent.mul(a, b))).collect())
            .collect();
        let labels = self.members.iter().map(|&g| self.parent.label(g).to_string()).collect();
        let gens: Vec<String> = self.members.iter().map(|&g| self.parent.label(g).to_string()).collect();
        FiniteGroup::from_table(&table)
            .expect("subgroup table is a group table")
            .with_name(format!("{}<{}>", self.parent.name(), gens.join(",")))
            .with_labels(labels)
    }

    /// Left cosets `xΔ`, ordered by their smallest element; each coset sorted.
    pub fn left_cosets(&self) -> Vec<Vec<usize>> {
        let g = &self.parent;
        let mut seen = vec![false; g.size()];
        let mut cosets = Vec::new();
        for x in g.elements() {
            if seen[x] {
                continue;
            }
            let mut c: Vec<usize> = self.members.iter().map(|&h| g.mul(x, h)).collect();
            c.sort_unstable();
            for &y in &c {
                seen[y] = true;
            }
            cosets.push(c);
        }
        cosets
    }
}

/// `⟨g⟩` for every `g`, deduplicated, ordered by (order, members).
pub fn cyclic_subgroups(group: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let mut seen: BTreeSet<(usize, Vec<usize>)> = BTreeSet::new();
    for g in group.elements() {
        let s = Subgroup::generated_by(group, &[g]).expect("valid element");
        seen.insert((s.order(), s.members));
    }
    seen.into_iter().map(|(_, members)| Subgroup { parent: Arc::clone(group), members }).collect()
}

/// Projection `G → G/N`.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    source: Arc<FiniteGroup>,
    normal_subgroup: Subgroup,
    target: Arc<FiniteGroup>,
    projection: Vec<usize>,
}

impl QuotientMap {
    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn normal_subgroup(&self) -> &Subgroup {
        &self.normal_subgroup
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    pub fn project(&self, g: usize) -> usize {
        self.projection[g]
    }

    pub fn projection(&self) -> &[usize] {
        &self.projection
    }
}

pub fn quotient(group: &Arc<FiniteGroup>, normal: &Subgroup) -> Result<QuotientMap, GroupError> {
    assert!(Arc::ptr_eq(group, normal.parent()) || **group == **normal.parent(), "subgroup of another group");
    if let Some((g, h, conjugate)) = normal.normality_witness() {
        return Err(GroupError::NotNormal { g, h, conjugate });
    }
    let cosets = normal.left_cosets();
    let mut projection = vec![0; group.size()];
    for (i, c) in cosets.iter().enumerate() {
        for &x in c {
            projection[x] = i;
        }
    }
    let table: Vec<Vec<usize>> = cosets
        .iter()
        .map(|a| cosets.iter().map(|b| projection[group.mul(a[0], b[0])]).collect())
        .collect();
    let labels = cosets.iter().map(|c| format!("{}N", group.label(c[0]))).collect();
    let target = FiniteGroup::from_table(&table)?
        .with_name(format!("{}/N{}", group.name(), normal.order()))
        .with_labels(labels);
    Ok(QuotientMap { source: Arc::clone(group), normal_subgroup: normal.clone(), target: Arc::new(target), projection })
}
