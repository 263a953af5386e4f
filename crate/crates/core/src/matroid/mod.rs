//! Matroids given by a rank oracle.
//!
//! Everything here goes through [`Matroid::rank`]; closure, connectivity,
//! circuits and minimum bases are derived from it. Implementations may
//! override the derived methods with faster equivalents (see
//! [`GraphicMatroid`]). Circuit and cocircuit enumeration is exponential and
//! guarded by a subset-evaluation limit.

mod graphic;
mod set;

use std::collections::HashMap;

use itertools::Itertools;

pub use graphic::{GraphicMatroid, UnionFind};
pub use set::ElementSet;

use crate::error::{input, Error, Result};
use crate::weights::WeightVector;

/// Default cap on subset evaluations for exponential enumerations.
pub const DEFAULT_SUBSET_LIMIT: u64 = 1 << 20;

/// Ordered, labelled ground set. The order is fixed for the lifetime of the
/// matroid and anchors every canonical ordering in the crate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundSet {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

impl GroundSet {
    pub fn new(labels: Vec<String>) -> Result<Self> {
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return input(format!("duplicate ground-set label {l:?}"));
            }
        }
        Ok(GroundSet { labels, index })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, e: usize) -> &str {
        &self.labels[e]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.index.get(label).copied().ok_or_else(|| Error::Input(format!("unknown element {label:?}")))
    }

    pub fn full(&self) -> ElementSet {
        ElementSet::full(self.len())
    }

    /// Builds a subset from element labels.
    pub fn subset<S: AsRef<str>>(&self, labels: &[S]) -> Result<ElementSet> {
        labels.iter().map(|l| self.index_of(l.as_ref())).collect()
    }

    pub fn names(&self, set: &ElementSet) -> Vec<String> {
        set.iter().map(|e| self.labels[e].clone()).collect()
    }

    pub fn format(&self, set: &ElementSet) -> String {
        format!("{{{}}}", self.names(set).join(", "))
    }
}

/// A matroid presented by its rank function.
///
/// Implementations must be immutable; every method is a pure function of its
/// arguments, so matroids can be shared freely across threads.
pub trait Matroid: Sync {
    fn ground(&self) -> &GroundSet;

    fn rank(&self, set: &ElementSet) -> usize;

    /// Downcast hook for graphic fast paths.
    fn as_graphic(&self) -> Option<&GraphicMatroid> {
        None
    }

    fn size(&self) -> usize {
        self.ground().len()
    }

    fn full_rank(&self) -> usize {
        self.rank(&self.ground().full())
    }

    fn is_independent(&self, set: &ElementSet) -> bool {
        self.rank(set) == set.len()
    }

    fn is_loop(&self, e: usize) -> bool {
        self.rank(&ElementSet::singleton(e)) == 0
    }

    /// `{e : rank(S + e) = rank(S)}`.
    fn closure(&self, set: &ElementSet) -> ElementSet {
        let r = self.rank(set);
        let mut out = set.clone();
        for e in 0..self.size() {
            if !set.contains(e) && self.rank(&set.with(e)) == r {
                out.insert(e);
            }
        }
        out
    }

    fn is_flat(&self, set: &ElementSet) -> bool {
        let r = self.rank(set);
        (0..self.size()).all(|e| set.contains(e) || self.rank(&set.with(e)) > r)
    }

    /// Connected components of the restriction to `set`, canonically ordered.
    ///
    /// Two elements are connected when some circuit inside `set` contains
    /// both. Computed from the fundamental circuits of one basis of `set`,
    /// which generate the same equivalence relation as all circuits.
    fn components(&self, set: &ElementSet) -> Vec<ElementSet> {
        let members: Vec<usize> = set.iter().collect();
        let pos: HashMap<usize, usize> = members.iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut basis = ElementSet::new();
        let mut r = 0;
        let mut outside = Vec::new();
        for &e in &members {
            let grown = basis.with(e);
            if self.rank(&grown) > r {
                basis = grown;
                r += 1;
            } else {
                outside.push(e);
            }
        }
        let mut uf = UnionFind::new(members.len());
        for e in outside {
            for b in basis.iter() {
                let swapped = basis.without(b).with(e);
                if self.rank(&swapped) == r {
                    uf.union(pos[&e], pos[&b]);
                }
            }
        }
        classes(&members, &mut uf)
    }

    fn is_connected(&self, set: &ElementSet) -> bool {
        !set.is_empty() && self.components(set).len() == 1
    }

    /// True iff `flat` is closed and its restriction is connected.
    fn is_connected_flat(&self, flat: &ElementSet) -> Result<bool> {
        if flat.is_empty() {
            return input("connected-flat test on the empty set");
        }
        Ok(self.is_flat(flat) && self.is_connected(flat))
    }

    /// Rank of `flat` in the contraction by `sub`: `rank(F) - rank(U)`.
    fn contraction_rank(&self, flat: &ElementSet, sub: &ElementSet) -> Result<usize> {
        if !sub.is_subset(flat) {
            return input("contraction set is not contained in the flat");
        }
        Ok(self.rank(flat) - self.rank(sub))
    }

    /// Greedy minimum-weight basis; ties go to the earlier element.
    fn min_weight_basis(&self, w: &WeightVector) -> ElementSet {
        let mut order: Vec<usize> = (0..self.size()).collect();
        order.sort_by(|&a, &b| w[a].cmp(&w[b]).then(a.cmp(&b)));
        let mut basis = ElementSet::new();
        for e in order {
            let grown = basis.with(e);
            if self.is_independent(&grown) {
                basis = grown;
            }
        }
        basis
    }

    /// Whether `e` lies in some `w`-minimum basis: `e` is not spanned by the
    /// strictly lighter elements.
    fn in_some_min_basis(&self, w: &WeightVector, e: usize) -> bool {
        let lighter = w.strictly_below(&w[e]);
        self.rank(&lighter.with(e)) > self.rank(&lighter)
    }

    /// A circuit `C` with `e ∈ C ⊆ set ∪ {e}`, provided `e` is spanned by
    /// `set \ {e}`.
    fn circuit_through(&self, set: &ElementSet, e: usize) -> Option<ElementSet> {
        let mut rest = set.without(e);
        if self.rank(&rest.with(e)) != self.rank(&rest) {
            return None;
        }
        for f in set.iter().filter(|&f| f != e) {
            let smaller = rest.without(f);
            if self.rank(&smaller.with(e)) == self.rank(&smaller) {
                rest = smaller;
            }
        }
        Some(rest.with(e))
    }

    /// All circuits, canonically ordered. Exponential: every subset of size
    /// at most `rank + 1` is examined, and more than `limit` examined subsets
    /// is a resource error.
    fn circuits(&self, limit: u64) -> Result<Vec<ElementSet>> {
        enumerate_circuits(self, limit)
    }

    /// Circuits of the dual matroid (for graphs: minimal edge cuts).
    fn cocircuits(&self, limit: u64) -> Result<Vec<ElementSet>> {
        enumerate_circuits(&Dual::new(self), limit)
    }
}

fn classes(members: &[usize], uf: &mut UnionFind) -> Vec<ElementSet> {
    let mut by_root: HashMap<usize, ElementSet> = HashMap::new();
    for (i, &e) in members.iter().enumerate() {
        by_root.entry(uf.find(i)).or_default().insert(e);
    }
    let mut out: Vec<ElementSet> = by_root.into_values().collect();
    out.sort();
    out
}

fn enumerate_circuits<M: Matroid + ?Sized>(m: &M, limit: u64) -> Result<Vec<ElementSet>> {
    let n = m.size();
    let max_size = (m.full_rank() + 1).min(n);
    let mut evaluated = 0u64;
    let mut out = Vec::new();
    for k in 1..=max_size {
        for combo in (0..n).combinations(k) {
            evaluated += 1;
            if evaluated > limit {
                return Err(Error::Resource { what: "subset evaluations", limit });
            }
            let c: ElementSet = combo.into_iter().collect();
            if m.rank(&c) + 1 == k && c.iter().all(|e| m.rank(&c.without(e)) + 1 == k) {
                out.push(c);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// The dual matroid: `rank*(S) = |S| + rank(E \ S) - rank(E)`.
pub struct Dual<'a, M: ?Sized> {
    inner: &'a M,
    full: ElementSet,
    full_rank: usize,
}

impl<'a, M: Matroid + ?Sized> Dual<'a, M> {
    pub fn new(inner: &'a M) -> Self {
        let full = inner.ground().full();
        let full_rank = inner.rank(&full);
        Dual { inner, full, full_rank }
    }
}

impl<M: Matroid + ?Sized> Matroid for Dual<'_, M> {
    fn ground(&self) -> &GroundSet {
        self.inner.ground()
    }

    fn rank(&self, set: &ElementSet) -> usize {
        set.len() + self.inner.rank(&self.full.difference(set)) - self.full_rank
    }
}

/// The uniform matroid `U(k, n)`: every set of at most `k` elements is
/// independent. Mostly useful as a non-graphic test double.
#[derive(Clone, Debug)]
pub struct Uniform {
    k: usize,
    ground: GroundSet,
}

impl Uniform {
    pub fn new(k: usize, labels: Vec<String>) -> Result<Self> {
        Ok(Uniform { k, ground: GroundSet::new(labels)? })
    }

    pub fn numbered(k: usize, n: usize) -> Self {
        Uniform::new(k, (0..n).map(|i| i.to_string()).collect()).expect("distinct labels")
    }
}

impl Matroid for Uniform {
    fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn rank(&self, set: &ElementSet) -> usize {
        set.len().min(self.k)
    }
}
