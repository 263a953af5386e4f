#![allow(dead_code)]

use std::path::PathBuf;

use itertools::Itertools;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use ultranest::rational::ratio;
use ultranest::{DissimilarityMap, GraphicMatroid, Rational, WeightVector};

pub fn fixture(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "fixtures", name].iter().collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("reading {}: {e}", path.display()))
}

pub fn labelled(m: &GraphicMatroid, pairs: &[(&str, i64)]) -> WeightVector {
    let mut v = vec![Rational::from_integer(0); pairs.len()];
    for (label, value) in pairs {
        v[ultranest::Matroid::ground(m).index_of(label).unwrap()] = Rational::from_integer(*value as i128);
    }
    WeightVector::new(v)
}

/// A random simple graph on `n` vertices with at most `max_edges` edges and
/// at least one edge.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, max_edges: usize) -> GraphicMatroid {
    let mut pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    let p: f64 = rng.gen_range(0.3..1.0);
    pairs.retain(|_| rng.gen_bool(p));
    while pairs.len() > max_edges {
        let i = rng.gen_range(0..pairs.len());
        pairs.remove(i);
    }
    if pairs.is_empty() {
        pairs.push((0, 1));
    }
    let names = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    GraphicMatroid::new(names, pairs).unwrap()
}

/// A random connected graph: a random spanning tree plus random chords.
pub fn random_connected_graph(rng: &mut ChaCha8Rng, n: usize) -> GraphicMatroid {
    let mut pairs: Vec<(usize, usize)> = (1..n).map(|v| (rng.gen_range(0..v), v)).collect();
    for (a, b) in (0..n).tuple_combinations() {
        if !pairs.contains(&(a, b)) && rng.gen_bool(0.3) {
            pairs.push((a, b));
        }
    }
    let names = (0..n).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
    GraphicMatroid::new(names, pairs).unwrap()
}

/// Rationals with small numerators and denominators 1 or 2.
pub fn random_weights(rng: &mut ChaCha8Rng, len: usize, lo: i64, hi: i64) -> WeightVector {
    WeightVector::new((0..len).map(|_| ratio(rng.gen_range(lo..hi), rng.gen_range(1..3))).collect())
}

pub fn random_dm(rng: &mut ChaCha8Rng, n: usize, lo: i64, hi: i64) -> DissimilarityMap {
    let taxa = (0..n).map(|i| format!("t{i}")).collect();
    DissimilarityMap::from_pairs(taxa, &random_weights(rng, n * (n - 1) / 2, lo, hi)).unwrap()
}
