use std::cmp::Ordering;
use std::fmt;

const BITS: usize = 64;

/// A subset of a ground set, stored as a bitset over element indices.
///
/// Equality and hashing are canonical (trailing empty words are trimmed).
/// The order is lexicographic on the sorted element lists, so `{0,1} <
/// {0,2} < {1}`; this is the canonical subset order used for tie-breaking.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ElementSet {
    words: Vec<u64>,
}

impl ElementSet {
    pub fn new() -> Self {
        ElementSet { words: Vec::new() }
    }

    /// `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        (0..n).collect()
    }

    pub fn singleton(e: usize) -> Self {
        let mut s = ElementSet::new();
        s.insert(e);
        s
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, e: usize) -> bool {
        let (w, b) = (e / BITS, e % BITS);
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        let had = self.words[w] & (1 << b) != 0;
        self.words[w] |= 1 << b;
        !had
    }

    pub fn remove(&mut self, e: usize) -> bool {
        let (w, b) = (e / BITS, e % BITS);
        if w >= self.words.len() || self.words[w] & (1 << b) == 0 {
            return false;
        }
        self.words[w] &= !(1 << b);
        self.trim();
        true
    }

    pub fn contains(&self, e: usize) -> bool {
        let (w, b) = (e / BITS, e % BITS);
        w < self.words.len() && self.words[w] & (1 << b) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &word)| {
            let mut word = word;
            std::iter::from_fn(move || {
                if word == 0 {
                    return None;
                }
                let b = word.trailing_zeros() as usize;
                word &= word - 1;
                Some(i * BITS + b)
            })
        })
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }

    pub fn with(&self, e: usize) -> Self {
        let mut s = self.clone();
        s.insert(e);
        s
    }

    pub fn without(&self, e: usize) -> Self {
        let mut s = self.clone();
        s.remove(e);
        s
    }

    pub fn union_with(&mut self, other: &ElementSet) {
        if self.words.len() < other.words.len() {
            self.words.resize(other.words.len(), 0);
        }
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn union(&self, other: &ElementSet) -> Self {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn intersection(&self, other: &ElementSet) -> Self {
        let mut s = ElementSet { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() };
        s.trim();
        s
    }

    pub fn difference(&self, other: &ElementSet) -> Self {
        let mut s = self.clone();
        for (a, b) in s.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        s.trim();
        s
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words.len() <= other.words.len() && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_proper_subset(&self, other: &ElementSet) -> bool {
        self != other && self.is_subset(other)
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    /// True when one set contains the other.
    pub fn comparable(&self, other: &ElementSet) -> bool {
        self.is_subset(other) || other.is_subset(self)
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut s = ElementSet::new();
        for e in iter {
            s.insert(e);
        }
        s
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(v: &[usize]) -> ElementSet {
        v.iter().copied().collect()
    }

    #[test]
    fn basic_ops() {
        let a = set(&[0, 3, 70]);
        assert_eq!(a.len(), 3);
        assert!(a.contains(70) && !a.contains(1));
        assert_eq!(a.iter().collect::<Vec<_>>(), vec![0, 3, 70]);
        assert_eq!(a.without(70), set(&[0, 3]));
        assert_eq!(a.without(70).without(0).without(3), ElementSet::new());
        assert!(set(&[3]).is_proper_subset(&a));
        assert!(set(&[1, 2]).is_disjoint(&a));
        assert_eq!(a.difference(&set(&[70])), set(&[0, 3]));
    }

    #[test]
    fn canonical_order_is_lexicographic_on_members() {
        let mut v = vec![set(&[1]), set(&[0, 2]), set(&[0, 1]), set(&[0]), ElementSet::new()];
        v.sort();
        assert_eq!(v, vec![ElementSet::new(), set(&[0]), set(&[0, 1]), set(&[0, 2]), set(&[1])]);
    }

    proptest! {
        #[test]
        fn ops_match_btreeset(a in proptest::collection::btree_set(0usize..150, 0..20),
                              b in proptest::collection::btree_set(0usize..150, 0..20)) {
            let (sa, sb): (ElementSet, ElementSet) = (a.iter().copied().collect(), b.iter().copied().collect());
            prop_assert_eq!(sa.union(&sb).iter().collect::<Vec<_>>(), a.union(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.intersection(&sb).iter().collect::<Vec<_>>(), a.intersection(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.difference(&sb).iter().collect::<Vec<_>>(), a.difference(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(sa.is_subset(&sb), a.is_subset(&b));
            prop_assert_eq!(sa.is_disjoint(&sb), a.is_disjoint(&b));
            prop_assert_eq!(sa.cmp(&sb), a.iter().cmp(b.iter()));
            prop_assert_eq!(sa.intersection(&sb) == sb.intersection(&sa), true);
        }
    }
}
