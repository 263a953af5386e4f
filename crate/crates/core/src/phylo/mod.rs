//! Dissimilarity maps on a set of taxa: the complete-graph specialization.

mod tree;

pub use tree::{cophenetic, to_newick, ultrametric_to_tree, upgma, NewickOptions, RootedTree, TreeNode};

use crate::bergman;
use crate::error::{input, Error, Result};
use crate::matroid::{GraphicMatroid, Matroid};
use crate::rational::{half, Rational};
use crate::weights::WeightVector;

/// A symmetric matrix with zero diagonal over named taxa.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DissimilarityMap {
    taxa: Vec<String>,
    matrix: Vec<Vec<Rational>>,
}

impl DissimilarityMap {
    pub fn new(taxa: Vec<String>, matrix: Vec<Vec<Rational>>) -> Result<Self> {
        let n = taxa.len();
        if matrix.len() != n || matrix.iter().any(|row| row.len() != n) {
            return input(format!("matrix must be {n} x {n}"));
        }
        for (i, t) in taxa.iter().enumerate() {
            if taxa[..i].contains(t) {
                return input(format!("duplicate taxon {t:?}"));
            }
        }
        for i in 0..n {
            if matrix[i][i] != Rational::from_integer(0) {
                return input(format!("nonzero diagonal entry for {:?}", taxa[i]));
            }
            for j in 0..i {
                if matrix[i][j] != matrix[j][i] {
                    return input(format!("asymmetric entries for {:?} and {:?}", taxa[i], taxa[j]));
                }
            }
        }
        Ok(DissimilarityMap { taxa, matrix })
    }

    /// Builds the map from one weight per pair, pairs `(i, j)` with `i < j`
    /// in lexicographic order (the edge order of [`GraphicMatroid::complete`]).
    #[allow(clippy::needless_range_loop)]
    pub fn from_pairs(taxa: Vec<String>, w: &WeightVector) -> Result<Self> {
        let n = taxa.len();
        if w.len() != n * n.saturating_sub(1) / 2 {
            return input("wrong number of pair weights");
        }
        let mut matrix = vec![vec![Rational::from_integer(0); n]; n];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                matrix[i][j] = w[k];
                matrix[j][i] = w[k];
                k += 1;
            }
        }
        DissimilarityMap::new(taxa, matrix)
    }

    pub fn taxa(&self) -> &[String] {
        &self.taxa
    }

    pub fn len(&self) -> usize {
        self.taxa.len()
    }

    pub fn is_empty(&self) -> bool {
        self.taxa.is_empty()
    }

    pub fn get(&self, i: usize, j: usize) -> Rational {
        self.matrix[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.matrix
    }

    /// Index of a taxon by name.
    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.taxa.iter().position(|t| t == name)
    }

    /// The graphic matroid of the complete graph on the taxa.
    pub fn graph(&self) -> GraphicMatroid {
        GraphicMatroid::complete(&self.taxa)
    }

    /// Pair weights in complete-graph edge order.
    pub fn to_pairs(&self) -> WeightVector {
        let n = self.len();
        WeightVector::new(
            (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| self.matrix[i][j]).collect(),
        )
    }

    pub fn linf(&self, other: &DissimilarityMap) -> Rational {
        self.to_pairs().linf(&other.to_pairs())
    }
}

/// Maximal closest ultrametric via bottleneck paths in a minimum spanning
/// tree (Prim). Returns `(d, δ_u + d)` where `δ_u` is the subdominant
/// ultrametric and `d` is half the largest deviation from it.
#[allow(clippy::needless_range_loop)]
pub fn chepoi_nearest(delta: &DissimilarityMap) -> Result<(Rational, DissimilarityMap)> {
    let n = delta.len();
    if n < 2 {
        return input("at least two taxa are required");
    }
    // Prim's algorithm from taxon 0.
    let mut in_tree = vec![false; n];
    let mut best: Vec<(Rational, usize)> = (0..n).map(|j| (delta.get(0, j), 0)).collect();
    let mut adj: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); n];
    in_tree[0] = true;
    for _ in 1..n {
        let v = (0..n).filter(|&j| !in_tree[j]).min_by_key(|&j| (best[j].0, j)).expect("a vertex remains");
        in_tree[v] = true;
        let (wt, u) = best[v];
        adj[u].push((v, wt));
        adj[v].push((u, wt));
        for j in 0..n {
            if !in_tree[j] && delta.get(v, j) < best[j].0 {
                best[j] = (delta.get(v, j), v);
            }
        }
    }
    // Largest edge on the tree path from each source.
    let zero = Rational::from_integer(0);
    let mut sub = vec![vec![zero; n]; n];
    for s in 0..n {
        let mut stack: Vec<(usize, usize, Option<Rational>)> = vec![(s, usize::MAX, None)];
        while let Some((v, from, top)) = stack.pop() {
            sub[s][v] = top.unwrap_or(zero);
            for &(u, wt) in &adj[v] {
                if u != from {
                    stack.push((u, v, Some(top.map_or(wt, |t| t.max(wt)))));
                }
            }
        }
    }
    let sub = DissimilarityMap::new(delta.taxa.clone(), sub)?;
    let d = half(sub.linf(delta));
    let lifted: Vec<Vec<Rational>> =
        (0..n).map(|i| (0..n).map(|j| if i == j { zero } else { sub.get(i, j) + d }).collect()).collect();
    Ok((d, DissimilarityMap::new(delta.taxa.clone(), lifted)?))
}

/// Every triple of distinct taxa attains its maximum at least twice.
pub fn is_ultrametric_triple(delta: &DissimilarityMap) -> bool {
    let n = delta.len();
    (0..n).all(|i| {
        (i + 1..n).all(|j| {
            (j + 1..n).all(|k| {
                let mut v = [delta.get(i, j), delta.get(i, k), delta.get(j, k)];
                v.sort();
                v[1] == v[2]
            })
        })
    })
}

/// Weights on the edges of a graph over taxa.
#[derive(Clone, Debug)]
pub struct PartialDissimilarity {
    pub graph: GraphicMatroid,
    pub weights: WeightVector,
}

impl PartialDissimilarity {
    pub fn new(graph: GraphicMatroid, weights: WeightVector) -> Result<Self> {
        if graph.size() != weights.len() {
            return input("one weight per edge is required");
        }
        Ok(PartialDissimilarity { graph, weights })
    }
}

/// Extends an M(G)-ultrametric on a connected graph to an ultrametric on
/// all pairs of vertices: each missing pair gets its bottleneck path weight.
pub fn complete_partial(p: &PartialDissimilarity) -> Result<DissimilarityMap> {
    let g = &p.graph;
    if g.vertex_count() < 2 {
        return input("at least two taxa are required");
    }
    if !g.is_connected_graph() {
        return Err(Error::Precondition("the graph is not connected".into()));
    }
    bergman::check_in_fan(g, &p.weights)?;
    let n = g.vertex_count();
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            pairs.push(g.minimax_between(&p.weights, i, j).expect("connected graph"));
        }
    }
    DissimilarityMap::from_pairs(g.vertices().to_vec(), &WeightVector::new(pairs))
}
