use std::collections::HashMap;

use super::{ElementSet, GroundSet, Matroid};
use crate::error::{input, Result};
use crate::rational::Rational;
use crate::weights::WeightVector;

/// Disjoint-set forest with path halving and union by size.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect(), size: vec![1; n] }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `a` and `b` were already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a;
        self.size[a] += self.size[b];
        true
    }

    pub fn connected(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }
}

/// The cycle matroid of a multigraph: ground set = edges, rank of an edge
/// set = vertices touched minus connected components.
///
/// Edge labels are `u-v` in the orientation given at construction; a repeated
/// parallel edge gets a `#k` suffix.
#[derive(Clone, Debug)]
pub struct GraphicMatroid {
    vertices: Vec<String>,
    edges: Vec<(usize, usize)>,
    ground: GroundSet,
}

impl GraphicMatroid {
    pub fn new(vertices: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut seen: HashMap<String, usize> = HashMap::new();
        let mut labels = Vec::with_capacity(edges.len());
        for &(u, v) in &edges {
            if u >= vertices.len() || v >= vertices.len() {
                return input(format!("edge ({u}, {v}) refers to a missing vertex"));
            }
            let base = format!("{}-{}", vertices[u], vertices[v]);
            let count = seen.entry(base.clone()).or_insert(0);
            *count += 1;
            labels.push(if *count == 1 { base } else { format!("{base}#{count}") });
        }
        let ground = GroundSet::new(labels)?;
        Ok(GraphicMatroid { vertices, edges, ground })
    }

    /// Vertices are numbered in order of first appearance.
    pub fn from_named_edges<S: AsRef<str>>(edges: &[(S, S)]) -> Result<Self> {
        let mut vertices: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut id = |name: &str, vertices: &mut Vec<String>| {
            *index.entry(name.to_string()).or_insert_with(|| {
                vertices.push(name.to_string());
                vertices.len() - 1
            })
        };
        let mut pairs = Vec::with_capacity(edges.len());
        for (u, v) in edges {
            let a = id(u.as_ref(), &mut vertices);
            let b = id(v.as_ref(), &mut vertices);
            pairs.push((a, b));
        }
        GraphicMatroid::new(vertices, pairs)
    }

    /// `K_n` with edges `(i, j)`, `i < j`, in lexicographic order.
    pub fn complete<S: AsRef<str>>(names: &[S]) -> Self {
        let vertices: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let n = vertices.len();
        let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        GraphicMatroid::new(vertices, edges).expect("complete graph on distinct names")
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v == name)
    }

    /// Vertices touched by an edge set.
    pub fn span(&self, set: &ElementSet) -> Vec<usize> {
        let mut vs: Vec<usize> = set.iter().flat_map(|e| [self.edges[e].0, self.edges[e].1]).collect();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    fn forest(&self, set: &ElementSet) -> UnionFind {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in set.iter() {
            let (u, v) = self.edges[e];
            uf.union(u, v);
        }
        uf
    }

    /// Bottleneck (minimax) path weight between the endpoints of every edge:
    /// the least `t` such that the endpoints are joined by edges of weight at
    /// most `t`. This is the subdominant ultrametric of `w` on this graph.
    pub fn minimax(&self, w: &WeightVector) -> WeightVector {
        let mut order: Vec<usize> = (0..self.edges.len()).collect();
        order.sort_by(|&a, &b| w[a].cmp(&w[b]));
        let mut out: Vec<Option<Rational>> = vec![None; self.edges.len()];
        let mut uf = UnionFind::new(self.vertices.len());
        let mut i = 0;
        while i < order.len() {
            let t = w[order[i]];
            while i < order.len() && w[order[i]] == t {
                let (u, v) = self.edges[order[i]];
                uf.union(u, v);
                i += 1;
            }
            for (e, slot) in out.iter_mut().enumerate() {
                if slot.is_none() && uf.connected(self.edges[e].0, self.edges[e].1) {
                    *slot = Some(t);
                }
            }
        }
        WeightVector::new(out.into_iter().map(|v| v.expect("every edge joins its endpoints")).collect())
    }

    /// Bottleneck path weight between two vertices, `None` when they lie in
    /// different components.
    pub fn minimax_between(&self, w: &WeightVector, a: usize, b: usize) -> Option<Rational> {
        if a == b {
            return None;
        }
        let mut order: Vec<usize> = (0..self.edges.len()).collect();
        order.sort_by(|&x, &y| w[x].cmp(&w[y]));
        let mut uf = UnionFind::new(self.vertices.len());
        for e in order {
            let (u, v) = self.edges[e];
            uf.union(u, v);
            if uf.connected(a, b) {
                return Some(w[e]);
            }
        }
        None
    }

    pub fn is_connected_graph(&self) -> bool {
        let mut uf = self.forest(&self.ground.full());
        (1..self.vertices.len()).all(|v| uf.connected(0, v))
    }
}

impl Matroid for GraphicMatroid {
    fn ground(&self) -> &GroundSet {
        &self.ground
    }

    fn rank(&self, set: &ElementSet) -> usize {
        let mut uf = UnionFind::new(self.vertices.len());
        set.iter().filter(|&e| uf.union(self.edges[e].0, self.edges[e].1)).count()
    }

    fn as_graphic(&self) -> Option<&GraphicMatroid> {
        Some(self)
    }

    fn closure(&self, set: &ElementSet) -> ElementSet {
        let mut uf = self.forest(set);
        (0..self.edges.len()).filter(|&e| set.contains(e) || uf.connected(self.edges[e].0, self.edges[e].1)).collect()
    }

    fn is_flat(&self, set: &ElementSet) -> bool {
        self.closure(set) == *set
    }
}
