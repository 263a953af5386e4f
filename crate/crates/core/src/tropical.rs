//! The max-plus semiring over exact rationals, tropical convex hulls and
//! tropical vertices.
//!
//! Hull membership uses residuation: for generators `v_j` and a point `x`,
//! `λ_j = min_i (x_i - v_{j,i})` is the largest scalar with `λ_j ⊙ v_j <= x`.
//! Any convex representation `x = ⊕ c_j ⊙ v_j` with `⊕ c_j = 0` has
//! `c_j <= min(λ_j, 0)`, so `x` is in `tconv(V)` exactly when
//! `⊕_j min(λ_j, 0) ⊙ v_j = x` and some `λ_j >= 0`.

use std::fmt;

use crate::error::{input, Result};
use crate::par::Parallelism;
use crate::rational::Rational;
use crate::weights::WeightVector;

/// An element of `ℝ ∪ {-∞}`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TropScalar {
    NegInf,
    Finite(Rational),
}

impl TropScalar {
    pub const ZERO: TropScalar = TropScalar::NegInf;

    pub fn one() -> Self {
        TropScalar::Finite(Rational::from_integer(0))
    }

    /// `a ⊕ b = max(a, b)`.
    pub fn oplus(self, other: TropScalar) -> TropScalar {
        self.max(other)
    }

    /// `a ⊙ b = a + b`, absorbing at `-∞`.
    pub fn odot(self, other: TropScalar) -> TropScalar {
        match (self, other) {
            (TropScalar::Finite(a), TropScalar::Finite(b)) => TropScalar::Finite(a + b),
            _ => TropScalar::NegInf,
        }
    }

    pub fn finite(self) -> Option<Rational> {
        match self {
            TropScalar::Finite(r) => Some(r),
            TropScalar::NegInf => None,
        }
    }
}

impl From<Rational> for TropScalar {
    fn from(r: Rational) -> Self {
        TropScalar::Finite(r)
    }
}

impl fmt::Debug for TropScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TropScalar::NegInf => write!(f, "-inf"),
            TropScalar::Finite(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TropVector(Vec<TropScalar>);

impl TropVector {
    pub fn new(entries: Vec<TropScalar>) -> Self {
        TropVector(entries)
    }

    pub fn neg_inf(dim: usize) -> Self {
        TropVector(vec![TropScalar::NegInf; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn entries(&self) -> &[TropScalar] {
        &self.0
    }

    /// Finite coordinates, or an input error on any `-∞`.
    pub fn to_finite(&self) -> Result<Vec<Rational>> {
        self.0.iter().map(|s| s.finite().ok_or_else(|| crate::Error::Input("vector has a -inf entry".into()))).collect()
    }

    pub fn to_weights(&self) -> Result<WeightVector> {
        self.to_finite().map(WeightVector::new)
    }

    /// Subtracts the largest coordinate, the representative of the tropical
    /// ray through `self`. All-`-∞` vectors are returned unchanged.
    pub fn normalized(&self) -> TropVector {
        match self.0.iter().max().copied().and_then(TropScalar::finite) {
            Some(top) => trop_scale(TropScalar::Finite(-top), self),
            None => self.clone(),
        }
    }
}

impl From<&WeightVector> for TropVector {
    fn from(w: &WeightVector) -> Self {
        TropVector(w.iter().map(|&r| TropScalar::Finite(r)).collect())
    }
}

impl From<WeightVector> for TropVector {
    fn from(w: WeightVector) -> Self {
        TropVector::from(&w)
    }
}

impl fmt::Debug for TropVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

fn same_dim(x: &TropVector, y: &TropVector) -> Result<()> {
    if x.dim() != y.dim() {
        return input(format!("dimension mismatch: {} vs {}", x.dim(), y.dim()));
    }
    Ok(())
}

/// Coordinatewise maximum.
pub fn trop_add(x: &TropVector, y: &TropVector) -> Result<TropVector> {
    same_dim(x, y)?;
    Ok(TropVector(x.0.iter().zip(&y.0).map(|(a, b)| a.oplus(*b)).collect()))
}

/// Adds `lambda` to every coordinate.
pub fn trop_scale(lambda: TropScalar, x: &TropVector) -> TropVector {
    TropVector(x.0.iter().map(|a| lambda.odot(*a)).collect())
}

/// `max_i |x_i - y_i|`; both vectors must be finite.
pub fn linf_distance(x: &TropVector, y: &TropVector) -> Result<Rational> {
    same_dim(x, y)?;
    let (a, b) = (x.to_finite()?, y.to_finite()?);
    Ok(WeightVector::new(a).linf(&WeightVector::new(b)))
}

/// A finite, deduplicated, canonically ordered set of generators.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GeneratorSet {
    vectors: Vec<TropVector>,
}

impl GeneratorSet {
    pub fn new(mut vectors: Vec<TropVector>) -> Self {
        vectors.sort();
        vectors.dedup();
        GeneratorSet { vectors }
    }

    pub fn from_weights<'a>(ws: impl IntoIterator<Item = &'a WeightVector>) -> Self {
        GeneratorSet::new(ws.into_iter().map(TropVector::from).collect())
    }

    pub fn vectors(&self) -> &[TropVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn contains(&self, v: &TropVector) -> bool {
        self.vectors.binary_search(v).is_ok()
    }

    pub fn to_weights(&self) -> Result<Vec<WeightVector>> {
        self.vectors.iter().map(TropVector::to_weights).collect()
    }
}

/// Residuals `λ_j = min_i (x_i - v_{j,i})` for finite `V` and `x`.
pub fn residuals(generators: &[TropVector], x: &TropVector) -> Result<Vec<Rational>> {
    if generators.is_empty() {
        return input("empty generator set");
    }
    let xs = x.to_finite()?;
    generators
        .iter()
        .map(|v| {
            same_dim(v, x)?;
            let vs = v.to_finite()?;
            Ok(xs.iter().zip(&vs).map(|(a, b)| a - b).min().expect("nonzero dimension"))
        })
        .collect()
}

fn project_with(generators: &[TropVector], lambdas: &[Rational], clip: bool) -> TropVector {
    let zero = Rational::from_integer(0);
    let mut out = TropVector::neg_inf(generators[0].dim());
    for (v, &l) in generators.iter().zip(lambdas) {
        let c = if clip { l.min(zero) } else { l };
        out = trop_add(&out, &trop_scale(TropScalar::Finite(c), v)).expect("equal dimensions");
    }
    out
}

/// `⊕_j min(λ_j, 0) ⊙ v_j`: the largest point of `tconv(V)`-style
/// combinations below `x`; equals `x` for members.
pub fn tconv_project(generators: &GeneratorSet, x: &TropVector) -> Result<TropVector> {
    let lambdas = residuals(generators.vectors(), x)?;
    Ok(project_with(generators.vectors(), &lambdas, true))
}

/// Membership in the tropical convex hull.
pub fn tconv_contains(generators: &GeneratorSet, x: &TropVector) -> Result<bool> {
    contains_in(generators.vectors(), x)
}

fn contains_in(generators: &[TropVector], x: &TropVector) -> Result<bool> {
    let lambdas = residuals(generators, x)?;
    let zero = Rational::from_integer(0);
    Ok(lambdas.iter().any(|l| *l >= zero) && project_with(generators, &lambdas, true) == *x)
}

/// Membership in the tropical cone (no normalization of coefficients).
pub fn tcone_contains(generators: &GeneratorSet, x: &TropVector) -> Result<bool> {
    let lambdas = residuals(generators.vectors(), x)?;
    Ok(project_with(generators.vectors(), &lambdas, false) == *x)
}

/// Tropical vertices (affine mode): the generators not in the hull of the
/// others.
pub fn tropical_vertices_of(generators: &GeneratorSet) -> Result<GeneratorSet> {
    tropical_vertices_with(generators, Parallelism::Sequential)
}

pub fn tropical_vertices_with(generators: &GeneratorSet, par: Parallelism) -> Result<GeneratorSet> {
    let vs = generators.vectors();
    if vs.len() <= 1 {
        for v in vs {
            v.to_finite()?;
        }
        return Ok(generators.clone());
    }
    let indices: Vec<usize> = (0..vs.len()).collect();
    let keep = par.map(&indices, |&i| {
        let others: Vec<TropVector> = vs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v.clone()).collect();
        contains_in(&others, &vs[i]).map(|inside| !inside)
    });
    let mut out = Vec::new();
    for (i, k) in keep.into_iter().enumerate() {
        if k? {
            out.push(vs[i].clone());
        }
    }
    Ok(GeneratorSet::new(out))
}

/// Extreme rays of `tcone(V)`: generators are normalized (maximum
/// coordinate 0) and deduplicated before the extremality test.
pub fn tropical_vertices_conic(generators: &GeneratorSet) -> Result<GeneratorSet> {
    let normalized = GeneratorSet::new(generators.vectors().iter().map(TropVector::normalized).collect());
    let vs = normalized.vectors();
    let mut out = Vec::new();
    for (i, v) in vs.iter().enumerate() {
        let others: Vec<TropVector> = vs.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, w)| w.clone()).collect();
        if others.is_empty() || !tcone_contains(&GeneratorSet::new(others), v)? {
            out.push(v.clone());
        }
    }
    Ok(GeneratorSet::new(out))
}
