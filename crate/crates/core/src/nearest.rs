//! All l∞-nearest M-ultrametrics to a weight vector.
//!
//! Starting from the maximal closest point, flats are slid down one at a
//! time as far as the distance bound allows. The layers of slide results
//! generate the tropical polytope of nearest points; its tropical vertices
//! are extracted exactly.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde_json::{json, Value};

use crate::bergman::{self, nested, Topology, WeightedNestedSet};
use crate::error::{input, Error, Result};
use crate::matroid::{ElementSet, GroundSet, Matroid, DEFAULT_SUBSET_LIMIT};
use crate::par::Parallelism;
use crate::rational::{display, half, Rational};
use crate::tropical::{tropical_vertices_with, GeneratorSet, TropVector};
use crate::weights::WeightVector;

/// Knobs for [`solve`] and [`enumerate_generating_set`].
#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    pub parallelism: Parallelism,
    /// Largest layer allowed before giving up.
    pub max_layer_width: usize,
    /// Cap on subset evaluations in nested-set checks.
    pub max_subsets: u64,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            parallelism: Parallelism::default(),
            max_layer_width: 100_000,
            max_subsets: DEFAULT_SUBSET_LIMIT,
        }
    }
}

/// `(d*, x^m)`: half the gap to the subdominant, and the subdominant lifted
/// by that amount.
pub fn max_closest<M: Matroid + ?Sized>(m: &M, x: &WeightVector) -> Result<(Rational, WeightVector)> {
    let sub = bergman::subdominant(m, x)?;
    let d = half(x.linf(&sub));
    Ok((d, sub.shifted(d)))
}

/// Lowest height `flat` can reach with everything else fixed: the larger of
/// its highest child and `max x_e - d*` over its own elements.
pub fn slide_target(x: &WeightVector, s: &WeightedNestedSet, flat: &ElementSet, d_star: Rational) -> Result<Rational> {
    if !s.contains(flat) {
        return input("flat is not a member of the nested set");
    }
    let flats = s.flats();
    let child = nested::children(&flats, flat).iter().filter_map(|c| s.alpha(c)).max();
    let own = nested::own_elements(&flats, flat).iter().map(|e| x[e] - d_star).max();
    Ok(child.into_iter().chain(own).max().expect("members are nonempty"))
}

pub fn is_mobile(x: &WeightVector, s: &WeightedNestedSet, flat: &ElementSet, d_star: Rational) -> Result<bool> {
    let alpha = s.alpha(flat).ok_or_else(|| Error::Input("flat is not a member of the nested set".into()))?;
    Ok(slide_target(x, s, flat, d_star)? < alpha)
}

/// Lowers `flat` to its slide target and returns the resulting weights.
pub fn slide_all_the_way(
    x: &WeightVector,
    s: &WeightedNestedSet,
    flat: &ElementSet,
    d_star: Rational,
) -> Result<WeightVector> {
    let target = slide_target(x, s, flat, d_star)?;
    if target >= s.alpha(flat).expect("checked by slide_target") {
        return input("flat is not mobile");
    }
    s.with_alpha(flat, target)?.weights(x.len())
}

/// A mobile flat of some resolution of a topology, and how far it moves.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlideMove {
    /// The topology, plus the flat itself when it was inserted into a
    /// polytomy.
    pub source: WeightedNestedSet,
    pub flat: ElementSet,
    pub old_height: Rational,
    pub new_height: Rational,
    /// Whether `flat` was inserted into a polytomy of the topology.
    pub inserted: bool,
}

impl SlideMove {
    pub fn apply(&self, n: usize) -> Result<WeightVector> {
        self.source.with_alpha(&self.flat, self.new_height)?.weights(n)
    }
}

/// Mobile flats across all resolutions of `T(w)`.
///
/// Members that are not polytomies keep their children and own elements in
/// every resolution, so their mobility is read off `T(w)`. Polytomies never
/// move: in a resolution they gain a child at their own height. The only
/// other candidates are flats inserted into a polytomy whose rank over the
/// members they contain is one.
pub fn mobile_moves<M: Matroid + ?Sized>(
    m: &M,
    x: &WeightVector,
    w: &WeightVector,
    d_star: Rational,
    limit: u64,
) -> Result<Vec<SlideMove>> {
    let t = bergman::topology(m, w)?;
    let flats = t.flats();
    let poly: BTreeSet<ElementSet> = nested::polytomies(m, &flats).into_iter().collect();
    let mut moves = Vec::new();
    for (f, &alpha) in t.iter() {
        if poly.contains(f) {
            for k in nested::rank_one_insertions(m, &flats, f, limit)? {
                let grown = t.with_member(k.clone(), alpha)?;
                let target = slide_target(x, &grown, &k, d_star)?;
                if target < alpha {
                    moves.push(SlideMove {
                        source: grown,
                        flat: k,
                        old_height: alpha,
                        new_height: target,
                        inserted: true,
                    });
                }
            }
        } else {
            let target = slide_target(x, &t, f, d_star)?;
            if target < alpha {
                moves.push(SlideMove {
                    source: t.clone(),
                    flat: f.clone(),
                    old_height: alpha,
                    new_height: target,
                    inserted: false,
                });
            }
        }
    }
    moves.sort_by(|a, b| a.flat.cmp(&b.flat));
    Ok(moves)
}

/// Mobile-flat counts of one fan point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MobileCounts {
    /// Distinct flats mobile in at least one resolution.
    pub across_resolutions: usize,
    /// Largest number of mobile flats within a single resolution.
    pub per_resolution: usize,
}

/// Counts for the moves returned by [`mobile_moves`] on `w`.
///
/// Inserted flats stay mobile in a resolution exactly when no other
/// inserted flat of the same polytomy lies below them, so the per-resolution
/// maximum is the largest family of such flats that can be inserted
/// together.
pub fn mobile_counts<M: Matroid + ?Sized>(
    m: &M,
    w: &WeightVector,
    moves: &[SlideMove],
    limit: u64,
) -> Result<MobileCounts> {
    let fixed = moves.iter().filter(|mv| !mv.inserted).count();
    let inserted: Vec<&ElementSet> = moves.iter().filter(|mv| mv.inserted).map(|mv| &mv.flat).collect();
    let per = if inserted.len() <= 1 {
        inserted.len()
    } else {
        let base = bergman::topology(m, w)?.flats();
        let mut best = 1;
        let mut chosen = Vec::new();
        let mut budget = limit;
        largest_joint_insertion(m, &base, &inserted, 0, &mut chosen, &mut best, &mut budget, limit)?;
        best
    };
    Ok(MobileCounts { across_resolutions: moves.len(), per_resolution: fixed + per })
}

#[allow(clippy::too_many_arguments)]
fn largest_joint_insertion<M: Matroid + ?Sized>(
    m: &M,
    base: &[ElementSet],
    candidates: &[&ElementSet],
    from: usize,
    chosen: &mut Vec<ElementSet>,
    best: &mut usize,
    budget: &mut u64,
    limit: u64,
) -> Result<()> {
    *best = (*best).max(chosen.len());
    for i in from..candidates.len() {
        if chosen.len() + (candidates.len() - i) <= *best {
            return Ok(());
        }
        let k = candidates[i];
        let owner = nested::parent(base, k);
        let clash = chosen.iter().any(|c| c.comparable(k) && nested::parent(base, c) == owner);
        if clash {
            continue;
        }
        if *budget == 0 {
            return Err(Error::Resource { what: "subset evaluations", limit });
        }
        *budget -= 1;
        let mut family = base.to_vec();
        family.extend(chosen.iter().cloned());
        family.push(k.clone());
        if nested::is_nested_set(m, &family, limit)? {
            chosen.push(k.clone());
            largest_joint_insertion(m, base, candidates, i + 1, chosen, best, budget, limit)?;
            chosen.pop();
        }
    }
    Ok(())
}

fn successors<M: Matroid + ?Sized>(
    m: &M,
    x: &WeightVector,
    w: &WeightVector,
    d_star: Rational,
    limit: u64,
) -> Result<(Vec<WeightVector>, MobileCounts)> {
    let moves = mobile_moves(m, x, w, d_star, limit)?;
    let counts = mobile_counts(m, w, &moves, limit)?;
    let mut out: Vec<WeightVector> = moves.iter().map(|mv| mv.apply(x.len())).collect::<Result<_>>()?;
    out.sort();
    out.dedup();
    Ok((out, counts))
}

/// Successors and mobile-flat counts of every point seen so far.
type Memo = HashMap<WeightVector, (Vec<WeightVector>, MobileCounts)>;

fn expand_layers<M: Matroid + ?Sized>(
    m: &M,
    x: &WeightVector,
    d_star: Rational,
    start: WeightVector,
    opts: &SolveOptions,
) -> Result<(Vec<Vec<WeightVector>>, Memo)> {
    let mut memo: Memo = HashMap::new();
    let mut layers = vec![vec![start]];
    loop {
        let current = layers.last().expect("at least one layer");
        let fresh: Vec<WeightVector> = current.iter().filter(|w| !memo.contains_key(*w)).cloned().collect();
        let results = opts.parallelism.map(&fresh, |w| successors(m, x, w, d_star, opts.max_subsets));
        for (w, r) in fresh.into_iter().zip(results) {
            memo.insert(w, r?);
        }
        let next: BTreeSet<WeightVector> = current.iter().flat_map(|w| memo[w].0.iter().cloned()).collect();
        if next.is_empty() {
            return Ok((layers, memo));
        }
        if next.len() > opts.max_layer_width {
            return Err(Error::Resource { what: "layer width", limit: opts.max_layer_width as u64 });
        }
        layers.push(next.into_iter().collect());
    }
}

/// Layers `S_0 = {x^m}`, `S_1`, ... of slide results, each deduplicated and
/// sorted. A point can recur in later layers when it is reachable by slide
/// chains of different lengths.
pub fn enumerate_generating_set<M: Matroid + ?Sized>(
    m: &M,
    x: &WeightVector,
    opts: &SolveOptions,
) -> Result<Vec<Vec<WeightVector>>> {
    let (d, xm) = max_closest(m, x)?;
    opts.parallelism.install(|| expand_layers(m, x, d, xm, opts).map(|(layers, _)| layers))
}

/// Everything known about the nearest M-ultrametrics to one input.
#[derive(Clone, Debug)]
pub struct NearestSolution {
    pub input: WeightVector,
    pub distance: Rational,
    pub max_closest: WeightVector,
    pub layers: Vec<Vec<WeightVector>>,
    /// Union of the layers.
    pub generating_set: Vec<WeightVector>,
    /// Members with at most one mobile flat in every resolution of their
    /// topology; a superset of the vertices.
    pub filtered: Vec<WeightVector>,
    /// Mobile-flat counts of every member of the generating set.
    pub mobile_counts: Vec<MobileCounts>,
    /// Tropical vertices of the generating set.
    pub vertices: Vec<WeightVector>,
    /// Topology of each vertex, in vertex order.
    pub vertex_topologies: Vec<Topology>,
    /// Distinct tree shapes among the filtered members with multiplicities,
    /// sorted by shape.
    pub topology_census: Vec<(Vec<ElementSet>, usize)>,
    /// Census shapes not strictly refined by another census shape. A
    /// polytomous shape is displayed on one of its resolutions when that
    /// resolution is present.
    pub maximal_topologies: Vec<Vec<ElementSet>>,
    /// Whether every vertex has the same topology shape.
    pub unique_topology: bool,
    /// Whether every vertex passed the mobile-flat filter.
    pub filter_is_sound: bool,
}

pub fn solve<M: Matroid + ?Sized>(m: &M, x: &WeightVector, opts: &SolveOptions) -> Result<NearestSolution> {
    opts.parallelism.install(|| solve_inner(m, x, opts))
}

fn solve_inner<M: Matroid + ?Sized>(m: &M, x: &WeightVector, opts: &SolveOptions) -> Result<NearestSolution> {
    let (d, xm) = max_closest(m, x)?;
    let (layers, memo) = expand_layers(m, x, d, xm.clone(), opts)?;
    let generating_set: Vec<WeightVector> =
        layers.iter().flatten().cloned().collect::<BTreeSet<_>>().into_iter().collect();
    let mobile_counts: Vec<MobileCounts> = generating_set.iter().map(|w| memo[w].1).collect();
    let filtered: Vec<WeightVector> = generating_set
        .iter()
        .zip(&mobile_counts)
        .filter(|(_, c)| c.per_resolution <= 1)
        .map(|(w, _)| w.clone())
        .collect();

    let gens = GeneratorSet::new(generating_set.iter().map(TropVector::from).collect());
    let vertices = tropical_vertices_with(&gens, opts.parallelism)?.to_weights()?;
    let vertex_topologies: Vec<Topology> = vertices.iter().map(|v| bergman::topology(m, v)).collect::<Result<_>>()?;

    let mut census: BTreeMap<Vec<ElementSet>, usize> = BTreeMap::new();
    for w in &filtered {
        *census.entry(bergman::topology(m, w)?.flats()).or_default() += 1;
    }
    let maximal_topologies: Vec<Vec<ElementSet>> = census
        .keys()
        .filter(|f| !census.keys().any(|g| g != *f && f.iter().all(|s| g.binary_search(s).is_ok())))
        .cloned()
        .collect();
    let shapes: BTreeSet<Vec<ElementSet>> = vertex_topologies.iter().map(|t| t.flats()).collect();
    let filter_is_sound = vertices.iter().all(|v| filtered.binary_search(v).is_ok());

    Ok(NearestSolution {
        input: x.clone(),
        distance: d,
        max_closest: xm,
        layers,
        generating_set,
        filtered,
        mobile_counts,
        vertices,
        vertex_topologies,
        topology_census: census.into_iter().collect(),
        maximal_topologies,
        unique_topology: shapes.len() <= 1,
        filter_is_sound,
    })
}

/// A weight vector as a JSON array of exact (or rounded) numbers.
pub fn vector_json(w: &WeightVector, decimal: Option<usize>) -> Value {
    Value::Array(w.iter().map(|r| Value::String(display(r, decimal))).collect())
}

fn vectors_json(ws: &[WeightVector], decimal: Option<usize>) -> Value {
    Value::Array(ws.iter().map(|w| vector_json(w, decimal)).collect())
}

impl NearestSolution {
    pub fn to_json(&self, ground: &GroundSet, decimal: Option<usize>) -> Value {
        let census: Vec<Value> = self
            .topology_census
            .iter()
            .map(|(flats, count)| {
                let names: Vec<Vec<String>> = flats.iter().map(|f| ground.names(f)).collect();
                json!({ "flats": names, "count": count })
            })
            .collect();
        json!({
            "elements": ground.labels(),
            "distance": display(&self.distance, decimal),
            "max_closest": vector_json(&self.max_closest, decimal),
            "layers": self.layers.iter().map(|l| vectors_json(l, decimal)).collect::<Vec<_>>(),
            "generating_set": vectors_json(&self.filtered, decimal),
            "vertices": vectors_json(&self.vertices, decimal),
            "topologies": self.vertex_topologies.iter().map(|t| t.to_json(ground, decimal)).collect::<Vec<_>>(),
            "census": census,
            "maximal_topologies": self
                .maximal_topologies
                .iter()
                .map(|flats| flats.iter().map(|f| ground.names(f)).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
            "unique_topology": self.unique_topology,
        })
    }
}
