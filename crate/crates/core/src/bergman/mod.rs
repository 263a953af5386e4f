//! Membership in the Bergman fan, subdominant M-ultrametrics and the
//! nested-set representation of fan points.

pub mod nested;

pub use nested::{
    children, insertable_flats, is_nested_set, own_elements, polytomies, rank_one_insertions, resolutions, Topology,
    WeightedNestedSet,
};

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::matroid::{ElementSet, Matroid};
use crate::weights::WeightVector;

fn check_len<M: Matroid + ?Sized>(m: &M, w: &WeightVector) -> Result<()> {
    if w.len() != m.size() {
        return crate::error::input(format!("weight vector has {} entries, ground set has {}", w.len(), m.size()));
    }
    Ok(())
}

fn has_loops<M: Matroid + ?Sized>(m: &M) -> bool {
    (0..m.size()).any(|e| m.is_loop(e))
}

/// Level-set test: every `{e : w_e <= t}`, including the empty one, is a
/// flat.
pub fn is_m_ultrametric<M: Matroid + ?Sized>(m: &M, w: &WeightVector) -> bool {
    w.len() == m.size() && !has_loops(m) && w.distinct_values().iter().all(|t| m.is_flat(&w.level_set(t)))
}

/// Definition test: every element lies in some `w`-minimum basis.
pub fn is_m_ultrametric_by_bases<M: Matroid + ?Sized>(m: &M, w: &WeightVector) -> bool {
    w.len() == m.size() && (0..m.size()).all(|e| m.in_some_min_basis(w, e))
}

/// The first element (in ground-set order) that is the unique maximum of
/// some circuit, together with such a circuit.
pub fn fan_violation<M: Matroid + ?Sized>(m: &M, w: &WeightVector) -> Option<(usize, ElementSet)> {
    (0..m.size()).find_map(|e| {
        if m.is_loop(e) {
            return Some((e, ElementSet::singleton(e)));
        }
        m.circuit_through(&w.strictly_below(&w[e]).with(e), e).map(|c| (e, c))
    })
}

/// `Ok` for fan points; otherwise a `NotInFan` error naming a violating
/// circuit.
pub fn check_in_fan<M: Matroid + ?Sized>(m: &M, w: &WeightVector) -> Result<()> {
    check_len(m, w)?;
    match fan_violation(m, w) {
        None => Ok(()),
        Some((e, c)) => {
            Err(Error::NotInFan { element: m.ground().label(e).to_string(), circuit: m.ground().names(&c) })
        }
    }
}

fn require_loopless<M: Matroid + ?Sized>(m: &M) -> Result<()> {
    if has_loops(m) {
        return Err(Error::Precondition("the matroid has loops, so its Bergman fan is empty".into()));
    }
    Ok(())
}

/// The coordinatewise largest M-ultrametric below `x`.
///
/// `x^M_e` is the least value `t` for which `e` is spanned by
/// `{f : x_f <= t}`; graphic matroids use bottleneck paths.
pub fn subdominant<M: Matroid + ?Sized>(m: &M, x: &WeightVector) -> Result<WeightVector> {
    check_len(m, x)?;
    require_loopless(m)?;
    if let Some(g) = m.as_graphic() {
        return Ok(g.minimax(x));
    }
    let values = x.distinct_values();
    let closures: Vec<ElementSet> = values.iter().map(|t| m.closure(&x.level_set(t))).collect();
    let out = (0..m.size())
        .map(|e| {
            let i = closures.iter().position(|c| c.contains(e)).expect("e is in its own level set");
            values[i]
        })
        .collect();
    Ok(WeightVector::new(out))
}

/// Subdominant by circuit descent: while some circuit has a unique maximum,
/// lower it to the second largest value on that circuit.
pub fn subdominant_by_circuits<M: Matroid + ?Sized>(m: &M, x: &WeightVector, limit: u64) -> Result<WeightVector> {
    check_len(m, x)?;
    require_loopless(m)?;
    let circuits = m.circuits(limit)?;
    let mut w = x.clone();
    loop {
        let mut changed = false;
        for c in &circuits {
            let mut vals: Vec<_> = c.iter().map(|e| (w[e], e)).collect();
            vals.sort();
            let (top, e) = vals[vals.len() - 1];
            let second = vals[vals.len() - 2].0;
            if top > second {
                w.set(e, second);
                changed = true;
            }
        }
        if !changed {
            return Ok(w);
        }
    }
}

/// The M-ultrametric of a weighted nested set.
pub fn realize<M: Matroid + ?Sized>(m: &M, s: &WeightedNestedSet, limit: u64) -> Result<WeightVector> {
    s.validate(m, limit)?;
    s.weights(m.size())
}

/// The unique nested set on which `w` has strictly increasing heights.
///
/// For each distinct value `t`, the connected components of `{w <= t}` that
/// contain an element of weight exactly `t` become members at height `t`.
pub fn topology<M: Matroid + ?Sized>(m: &M, w: &WeightVector) -> Result<Topology> {
    check_in_fan(m, w)?;
    let mut seen = BTreeSet::new();
    let mut members = Vec::new();
    for t in w.distinct_values() {
        for c in m.components(&w.level_set(&t)) {
            if c.iter().any(|e| w[e] == t) && seen.insert(c.clone()) {
                members.push((c, t));
            }
        }
    }
    WeightedNestedSet::new(members)
}

#[cfg(test)]
mod tests;
