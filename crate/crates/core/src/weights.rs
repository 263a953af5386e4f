use std::fmt;
use std::ops::Index;

use crate::matroid::ElementSet;
use crate::rational::Rational;

/// A finite exact weight on every element of a ground set, in ground-set
/// order. Ordering is lexicographic on coordinates, which is the canonical
/// order used for deduplicated generator lists.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightVector(Vec<Rational>);

impl WeightVector {
    pub fn new(values: Vec<Rational>) -> Self {
        WeightVector(values)
    }

    pub fn from_ints(values: &[i64]) -> Self {
        WeightVector(values.iter().map(|&v| Rational::from_integer(v as i128)).collect())
    }

    pub fn constant(len: usize, value: Rational) -> Self {
        WeightVector(vec![value; len])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &Rational> + '_ {
        self.0.iter()
    }

    pub fn set(&mut self, e: usize, value: Rational) {
        self.0[e] = value;
    }

    pub fn into_inner(self) -> Vec<Rational> {
        self.0
    }

    /// Distinct coordinate values, ascending.
    pub fn distinct_values(&self) -> Vec<Rational> {
        let mut v = self.0.clone();
        v.sort();
        v.dedup();
        v
    }

    /// `{e : w_e <= t}`.
    pub fn level_set(&self, t: &Rational) -> ElementSet {
        self.0.iter().enumerate().filter(|(_, w)| *w <= t).map(|(e, _)| e).collect()
    }

    /// `{e : w_e < t}`.
    pub fn strictly_below(&self, t: &Rational) -> ElementSet {
        self.0.iter().enumerate().filter(|(_, w)| *w < t).map(|(e, _)| e).collect()
    }

    pub fn max_on(&self, set: &ElementSet) -> Option<Rational> {
        set.iter().map(|e| self.0[e]).max()
    }

    pub fn shifted(&self, c: Rational) -> Self {
        WeightVector(self.0.iter().map(|w| w + c).collect())
    }

    /// l-infinity distance. Panics on a length mismatch.
    pub fn linf(&self, other: &WeightVector) -> Rational {
        assert_eq!(self.len(), other.len(), "weight vectors of different length");
        self.0.iter().zip(&other.0).map(|(a, b)| if a > b { a - b } else { b - a }).max().unwrap_or_default()
    }

    /// Coordinatewise `self <= other`.
    pub fn dominated_by(&self, other: &WeightVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl Index<usize> for WeightVector {
    type Output = Rational;

    fn index(&self, e: usize) -> &Rational {
        &self.0[e]
    }
}

impl From<Vec<Rational>> for WeightVector {
    fn from(v: Vec<Rational>) -> Self {
        WeightVector(v)
    }
}

impl fmt::Debug for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, w) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{w}")?;
        }
        write!(f, ")")
    }
}
