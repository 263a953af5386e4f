//! Nested sets of connected flats and their weighted form.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde_json::{json, Value};

use crate::error::{input, Error, Result};
use crate::matroid::{ElementSet, GroundSet, Matroid};
use crate::rational::{display, parse_rational, Rational};
use crate::weights::WeightVector;

/// Members of `family` strictly inside `flat`.
pub fn below<'a>(family: &'a [ElementSet], flat: &'a ElementSet) -> impl Iterator<Item = &'a ElementSet> + 'a {
    family.iter().filter(move |g| g.is_proper_subset(flat))
}

/// Maximal members strictly inside `flat`, canonically ordered.
pub fn children(family: &[ElementSet], flat: &ElementSet) -> Vec<ElementSet> {
    let inside: Vec<&ElementSet> = below(family, flat).collect();
    let mut out: Vec<ElementSet> =
        inside.iter().filter(|g| !inside.iter().any(|h| g.is_proper_subset(h))).map(|g| (*g).clone()).collect();
    out.sort();
    out.dedup();
    out
}

/// Union of the members strictly inside `flat`.
pub fn covered(family: &[ElementSet], flat: &ElementSet) -> ElementSet {
    let mut u = ElementSet::new();
    for g in below(family, flat) {
        u.union_with(g);
    }
    u
}

/// Elements of `flat` in no smaller member.
pub fn own_elements(family: &[ElementSet], flat: &ElementSet) -> ElementSet {
    flat.difference(&covered(family, flat))
}

/// Smallest member strictly containing `flat`.
pub fn parent(family: &[ElementSet], flat: &ElementSet) -> Option<ElementSet> {
    family.iter().filter(|g| flat.is_proper_subset(g)).min_by_key(|g| g.len()).cloned()
}

pub fn is_laminar(family: &[ElementSet]) -> bool {
    family.iter().tuple_combinations().all(|(a, b)| a.comparable(b) || a.is_disjoint(b))
}

/// Nested-set test.
///
/// Members must be connected flats, every connected component of the
/// matroid must be a member, the family must be laminar, and below every
/// member any two or more of its children must have a disconnected closure.
/// For laminar families the last condition is equivalent to requiring it of
/// every antichain. `limit` bounds the number of child subsets examined.
pub fn is_nested_set<M: Matroid + ?Sized>(m: &M, family: &[ElementSet], limit: u64) -> Result<bool> {
    let distinct: BTreeSet<&ElementSet> = family.iter().collect();
    if distinct.len() != family.len() {
        return Ok(false);
    }
    for f in family {
        if f.is_empty() || !m.is_connected_flat(f)? {
            return Ok(false);
        }
    }
    let comps = m.components(&m.ground().full());
    if !comps.iter().all(|c| distinct.contains(c)) || !is_laminar(family) {
        return Ok(false);
    }
    let mut evaluated = 0u64;
    for f in family {
        let kids = children(family, f);
        for k in 2..=kids.len() {
            for combo in kids.iter().combinations(k) {
                evaluated += 1;
                if evaluated > limit {
                    return Err(Error::Resource { what: "subset evaluations", limit });
                }
                let mut u = ElementSet::new();
                for c in combo {
                    u.union_with(c);
                }
                if m.is_connected(&m.closure(&u)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Members whose rank over the union of their sub-members exceeds one.
pub fn polytomies<M: Matroid + ?Sized>(m: &M, family: &[ElementSet]) -> Vec<ElementSet> {
    let mut out: Vec<ElementSet> =
        family.iter().filter(|f| m.rank(f) - m.rank(&covered(family, f)) > 1).cloned().collect();
    out.sort();
    out
}

fn is_polytomy<M: Matroid + ?Sized>(m: &M, family: &[ElementSet], flat: &ElementSet) -> bool {
    family.contains(flat) && m.rank(flat) - m.rank(&covered(family, flat)) > 1
}

/// Connected flats that can be added strictly inside the polytomy `flat`
/// keeping the family nested.
///
/// Candidates are closures of unions of atoms: the children of `flat` and
/// the singletons of its own elements.
pub fn insertable_flats<M: Matroid + ?Sized>(
    m: &M,
    family: &[ElementSet],
    flat: &ElementSet,
    limit: u64,
) -> Result<Vec<ElementSet>> {
    if !is_polytomy(m, family, flat) {
        return input("flat is not a polytomy of the family");
    }
    let mut atoms = children(family, flat);
    atoms.extend(own_elements(family, flat).iter().map(ElementSet::singleton));
    if atoms.len() >= 63 || (1u64 << atoms.len()) > limit {
        return Err(Error::Resource { what: "subset evaluations", limit });
    }
    let mut seen = BTreeSet::new();
    for mask in 1u64..(1u64 << atoms.len()) {
        let mut u = ElementSet::new();
        for (i, a) in atoms.iter().enumerate() {
            if mask >> i & 1 == 1 {
                u.union_with(a);
            }
        }
        seen.insert(m.closure(&u));
    }
    let mut out = Vec::new();
    for k in seen {
        if accepts(m, family, flat, &k, limit)? {
            out.push(k);
        }
    }
    Ok(out)
}

fn accepts<M: Matroid + ?Sized>(
    m: &M,
    family: &[ElementSet],
    flat: &ElementSet,
    k: &ElementSet,
    limit: u64,
) -> Result<bool> {
    if k.is_empty() || !k.is_proper_subset(flat) || family.contains(k) || !m.is_connected_flat(k)? {
        return Ok(false);
    }
    if !below(family, flat).all(|g| g.is_subset(k) || g.is_disjoint(k)) {
        return Ok(false);
    }
    let mut grown = family.to_vec();
    grown.push(k.clone());
    is_nested_set(m, &grown, limit)
}

/// Insertable flats `K` inside the polytomy `flat` that raise rank by exactly
/// one over the members they contain. These are the only insertions that can
/// be slid on their own.
pub fn rank_one_insertions<M: Matroid + ?Sized>(
    m: &M,
    family: &[ElementSet],
    flat: &ElementSet,
    limit: u64,
) -> Result<Vec<ElementSet>> {
    if !is_polytomy(m, family, flat) {
        return input("flat is not a polytomy of the family");
    }
    let kids = children(family, flat);
    let own = own_elements(family, flat);
    if kids.len() >= 63 || (1u64 << kids.len()).saturating_mul(own.len() as u64) > limit {
        return Err(Error::Resource { what: "subset evaluations", limit });
    }
    let mut seen = BTreeSet::new();
    for mask in 0u64..(1u64 << kids.len()) {
        let mut u = ElementSet::new();
        for (i, c) in kids.iter().enumerate() {
            if mask >> i & 1 == 1 {
                u.union_with(c);
            }
        }
        for e in own.iter() {
            seen.insert(m.closure(&u.with(e)));
        }
    }
    let mut out = Vec::new();
    for k in seen {
        if accepts(m, family, flat, &k, limit)? && m.rank(&k) - m.rank(&covered(family, &k)) == 1 {
            out.push(k);
        }
    }
    Ok(out)
}

/// All polytomy-free nested sets containing `family`, each sorted, in
/// canonical order.
pub fn resolutions<M: Matroid + ?Sized>(m: &M, family: &[ElementSet], limit: u64) -> Result<Vec<Vec<ElementSet>>> {
    let mut start = family.to_vec();
    start.sort();
    let mut out = BTreeSet::new();
    let mut visited = BTreeSet::new();
    let mut budget = limit;
    resolve(m, start, limit, &mut budget, &mut visited, &mut out)?;
    Ok(out.into_iter().collect())
}

fn resolve<M: Matroid + ?Sized>(
    m: &M,
    family: Vec<ElementSet>,
    limit: u64,
    budget: &mut u64,
    visited: &mut BTreeSet<Vec<ElementSet>>,
    out: &mut BTreeSet<Vec<ElementSet>>,
) -> Result<()> {
    if !visited.insert(family.clone()) {
        return Ok(());
    }
    if *budget == 0 {
        return Err(Error::Resource { what: "resolution search nodes", limit });
    }
    *budget -= 1;
    let Some(target) = polytomies(m, &family).into_iter().next() else {
        out.insert(family);
        return Ok(());
    };
    for k in insertable_flats(m, &family, &target, limit)? {
        let mut grown = family.clone();
        grown.push(k);
        grown.sort();
        resolve(m, grown, limit, budget, visited, out)?;
    }
    Ok(())
}

/// A nested set with a height on each member.
///
/// Members are kept sorted by `(alpha, flat)`, the canonical order used for
/// display and serialization. The height of an element is the height of the
/// smallest member containing it.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightedNestedSet {
    members: Vec<(Rational, ElementSet)>,
}

/// A weighted nested set with strictly increasing heights along inclusion:
/// the unique representation of an M-ultrametric.
pub type Topology = WeightedNestedSet;

impl WeightedNestedSet {
    /// Builds the family without checking the nested-set axioms; see
    /// [`WeightedNestedSet::validate`].
    pub fn new(members: impl IntoIterator<Item = (ElementSet, Rational)>) -> Result<Self> {
        let mut members: Vec<(Rational, ElementSet)> = members.into_iter().map(|(f, a)| (a, f)).collect();
        members.sort();
        let flats: BTreeSet<&ElementSet> = members.iter().map(|(_, f)| f).collect();
        if flats.len() != members.len() {
            return input("a flat appears more than once");
        }
        Ok(WeightedNestedSet { members })
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `(flat, alpha)` pairs in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (&ElementSet, &Rational)> + '_ {
        self.members.iter().map(|(a, f)| (f, a))
    }

    /// Flats sorted in the canonical set order.
    pub fn flats(&self) -> Vec<ElementSet> {
        let mut v: Vec<ElementSet> = self.members.iter().map(|(_, f)| f.clone()).collect();
        v.sort();
        v
    }

    pub fn contains(&self, flat: &ElementSet) -> bool {
        self.members.iter().any(|(_, f)| f == flat)
    }

    pub fn alpha(&self, flat: &ElementSet) -> Option<Rational> {
        self.members.iter().find(|(_, f)| f == flat).map(|(a, _)| *a)
    }

    /// Copy with `flat` moved to height `alpha`.
    pub fn with_alpha(&self, flat: &ElementSet, alpha: Rational) -> Result<Self> {
        if !self.contains(flat) {
            return input("flat is not a member");
        }
        WeightedNestedSet::new(self.iter().map(|(f, a)| (f.clone(), if f == flat { alpha } else { *a })))
    }

    /// Copy with an extra member.
    pub fn with_member(&self, flat: ElementSet, alpha: Rational) -> Result<Self> {
        WeightedNestedSet::new(self.iter().map(|(f, a)| (f.clone(), *a)).chain([(flat, alpha)]))
    }

    /// `alpha` weakly (or, with `strict`, strictly) increases along inclusion.
    pub fn is_compatible(&self, strict: bool) -> bool {
        self.members.iter().all(|(a, f)| {
            self.members.iter().filter(|(_, g)| f.is_proper_subset(g)).all(|(b, _)| if strict { a < b } else { a <= b })
        })
    }

    /// Checks the nested-set axioms and weak compatibility.
    pub fn validate<M: Matroid + ?Sized>(&self, m: &M, limit: u64) -> Result<()> {
        if !is_nested_set(m, &self.flats(), limit)? {
            return input("family is not a nested set of the matroid");
        }
        if !self.is_compatible(false) {
            return input("heights decrease along inclusion");
        }
        Ok(())
    }

    /// Weight vector with `w_e` the height of the smallest member containing
    /// `e`. No axioms are checked.
    pub fn weights(&self, n: usize) -> Result<WeightVector> {
        let mut out = Vec::with_capacity(n);
        for e in 0..n {
            let best = self.members.iter().filter(|(_, f)| f.contains(e)).min_by_key(|(_, f)| f.len());
            match best {
                Some((a, _)) => out.push(*a),
                None => return input(format!("element {e} lies in no member")),
            }
        }
        Ok(WeightVector::new(out))
    }

    /// Canonical JSON: `[{"flat": [labels], "alpha": "p/q"}, ...]` sorted by
    /// `(alpha, flat)`.
    pub fn to_json(&self, ground: &GroundSet, decimal: Option<usize>) -> Value {
        Value::Array(
            self.members
                .iter()
                .map(|(a, f)| json!({ "flat": ground.names(f), "alpha": display(a, decimal) }))
                .collect(),
        )
    }

    pub fn from_json(ground: &GroundSet, value: &Value) -> Result<Self> {
        let items = value.as_array().ok_or_else(|| Error::Input("nested set must be a JSON array".into()))?;
        let mut members = Vec::new();
        for item in items {
            let labels: Vec<String> = item
                .get("flat")
                .and_then(Value::as_array)
                .ok_or_else(|| Error::Input("member needs a \"flat\" array".into()))?
                .iter()
                .map(|v| {
                    v.as_str().map(str::to_string).ok_or_else(|| Error::Input("flat labels must be strings".into()))
                })
                .collect::<Result<_>>()?;
            let alpha = match item.get("alpha") {
                Some(Value::String(s)) => parse_rational(s).map_err(Error::Input)?,
                Some(Value::Number(n)) => parse_rational(&n.to_string()).map_err(Error::Input)?,
                _ => return input("member needs an \"alpha\""),
            };
            members.push((ground.subset(&labels)?, alpha));
        }
        WeightedNestedSet::new(members)
    }

    /// One line per member, `{labels}@alpha`, in canonical order.
    pub fn describe(&self, ground: &GroundSet) -> String {
        self.members.iter().map(|(a, f)| format!("{}@{}", ground.format(f), a)).join(" ")
    }
}

impl std::fmt::Debug for WeightedNestedSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(self.members.iter().map(|(a, s)| format!("{s:?}@{a}"))).finish()
    }
}
