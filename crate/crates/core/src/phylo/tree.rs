use std::fmt::Write as _;

use super::{is_ultrametric_triple, DissimilarityMap};
use crate::bergman;
use crate::error::{input, Result};
use crate::rational::{format_decimal, half, Rational};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TreeNode {
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// Cophenetic height; zero for leaves.
    pub height: Rational,
    /// Taxon name of a leaf.
    pub taxon: Option<String>,
}

/// A rooted tree with leaves labelled by taxa and heights on internal nodes.
///
/// Nodes `0..n` are the leaves in taxon order; internal nodes follow in
/// creation order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    nodes: Vec<TreeNode>,
    root: usize,
    leaves: usize,
}

impl RootedTree {
    fn with_leaves(taxa: &[String]) -> Self {
        let nodes = taxa
            .iter()
            .map(|t| TreeNode {
                parent: None,
                children: Vec::new(),
                height: Rational::from_integer(0),
                taxon: Some(t.clone()),
            })
            .collect();
        RootedTree { nodes, root: 0, leaves: taxa.len() }
    }

    fn join(&mut self, children: Vec<usize>, height: Rational) -> usize {
        let id = self.nodes.len();
        for &c in &children {
            self.nodes[c].parent = Some(id);
        }
        self.nodes.push(TreeNode { parent: None, children, height, taxon: None });
        self.root = id;
        id
    }

    pub fn nodes(&self) -> &[TreeNode] {
        &self.nodes
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn leaf_count(&self) -> usize {
        self.leaves
    }

    pub fn taxa(&self) -> Vec<String> {
        self.nodes[..self.leaves].iter().map(|n| n.taxon.clone().expect("leaf")).collect()
    }

    /// Heights of internal nodes in creation order.
    pub fn internal_heights(&self) -> Vec<Rational> {
        self.nodes[self.leaves..].iter().map(|n| n.height).collect()
    }

    /// Sorted leaf indices below `node`.
    pub fn leaf_set(&self, node: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![node];
        while let Some(v) = stack.pop() {
            if v < self.leaves {
                out.push(v);
            }
            stack.extend(&self.nodes[v].children);
        }
        out.sort_unstable();
        out
    }

    /// Leaf sets of all internal nodes, sorted.
    pub fn clusters(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = (self.leaves..self.nodes.len()).map(|v| self.leaf_set(v)).collect();
        out.sort();
        out
    }

    /// Whether heights never decrease towards the root.
    pub fn is_monotone(&self) -> bool {
        self.nodes.iter().all(|n| n.parent.is_none_or(|p| self.nodes[p].height >= n.height))
    }

    /// Whether some edge has negative length.
    pub fn has_negative_branches(&self) -> bool {
        !self.is_monotone()
    }

    fn ancestors(&self, mut v: usize) -> Vec<usize> {
        let mut out = vec![v];
        while let Some(p) = self.nodes[v].parent {
            out.push(p);
            v = p;
        }
        out
    }
}

/// The tree whose clusters are the vertex sets spanned by the flats of the
/// topology of `delta` on the complete graph.
pub fn ultrametric_to_tree(delta: &DissimilarityMap) -> Result<RootedTree> {
    let n = delta.len();
    if n < 2 {
        return input("at least two taxa are required");
    }
    if !is_ultrametric_triple(delta) {
        return input("the dissimilarity map is not an ultrametric");
    }
    let g = delta.graph();
    let topo = bergman::topology(&g, &delta.to_pairs())?;
    let mut clusters: Vec<(Vec<usize>, Rational)> = topo.iter().map(|(f, a)| (g.span(f), *a)).collect();
    clusters.sort_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));

    let mut tree = RootedTree::with_leaves(delta.taxa());
    // Current top node of every leaf.
    let mut top: Vec<usize> = (0..n).collect();
    for (members, height) in clusters {
        let mut kids: Vec<usize> = members.iter().map(|&leaf| top[leaf]).collect();
        kids.sort_unstable();
        kids.dedup();
        let id = tree.join(kids, height);
        for leaf in members {
            top[leaf] = id;
        }
    }
    Ok(tree)
}

/// Leaf-to-leaf heights of lowest common ancestors.
#[allow(clippy::needless_range_loop)]
pub fn cophenetic(tree: &RootedTree) -> Result<DissimilarityMap> {
    let n = tree.leaf_count();
    let zero = Rational::from_integer(0);
    let mut m = vec![vec![zero; n]; n];
    for i in 0..n {
        let up = tree.ancestors(i);
        for j in i + 1..n {
            let lca = tree.ancestors(j).into_iter().find(|a| up.contains(a)).expect("common root");
            m[i][j] = tree.nodes[lca].height;
            m[j][i] = m[i][j];
        }
    }
    DissimilarityMap::new(tree.taxa(), m)
}

#[derive(Clone, Copy, Debug)]
pub struct NewickOptions {
    /// Emit node heights as `[&height=h]` comments.
    pub height_comments: bool,
    /// Digits kept for non-terminating decimals.
    pub max_digits: usize,
}

impl Default for NewickOptions {
    fn default() -> Self {
        NewickOptions { height_comments: false, max_digits: 6 }
    }
}

fn quote(name: &str) -> String {
    if name.chars().any(|c| c.is_whitespace() || "()[]':;,".contains(c)) {
        format!("'{}'", name.replace('\'', "''"))
    } else {
        name.to_string()
    }
}

/// Newick text. Branch lengths are half the height difference to the parent,
/// so leaf-to-leaf path lengths equal the dissimilarities; children are
/// ordered by their smallest taxon name.
pub fn to_newick(tree: &RootedTree, opts: &NewickOptions) -> String {
    let taxa = tree.taxa();
    let smallest = |v: usize| tree.leaf_set(v).into_iter().map(|l| taxa[l].as_str()).min().expect("nonempty");
    let mut out = String::new();
    write_node(tree, tree.root, opts, &smallest, &mut out);
    out.push(';');
    out
}

fn write_node<'a>(
    tree: &RootedTree,
    v: usize,
    opts: &NewickOptions,
    smallest: &dyn Fn(usize) -> &'a str,
    out: &mut String,
) {
    let node = &tree.nodes[v];
    match &node.taxon {
        Some(t) => out.push_str(&quote(t)),
        None => {
            let mut kids = node.children.clone();
            kids.sort_by_key(|&c| smallest(c));
            out.push('(');
            for (i, &c) in kids.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_node(tree, c, opts, smallest, out);
            }
            out.push(')');
            if opts.height_comments {
                let _ = write!(out, "[&height={}]", format_decimal(&node.height, opts.max_digits));
            }
        }
    }
    if let Some(p) = node.parent {
        let len = half(tree.nodes[p].height - node.height);
        let _ = write!(out, ":{}", format_decimal(&len, opts.max_digits));
    }
}

/// Average-linkage clustering. Each merge creates a node at the average
/// dissimilarity between the two clusters; ties go to the pair whose
/// smallest taxon indices are lexicographically least.
pub fn upgma(delta: &DissimilarityMap) -> Result<RootedTree> {
    let n = delta.len();
    if n < 2 {
        return input("at least two taxa are required");
    }
    let mut tree = RootedTree::with_leaves(delta.taxa());
    let mut active: Vec<(usize, Vec<usize>)> = (0..n).map(|i| (i, vec![i])).collect();
    let average = |a: &[usize], b: &[usize]| {
        let total: Rational = a.iter().flat_map(|&i| b.iter().map(move |&j| delta.get(i, j))).sum();
        total / Rational::from_integer((a.len() * b.len()) as i128)
    };
    while active.len() > 1 {
        let mut best: Option<(Rational, usize, usize)> = None;
        for i in 0..active.len() {
            for j in i + 1..active.len() {
                let d = average(&active[i].1, &active[j].1);
                if best.is_none_or(|(bd, _, _)| d < bd) {
                    best = Some((d, i, j));
                }
            }
        }
        let (d, i, j) = best.expect("two clusters remain");
        let (b_node, b_members) = active.remove(j);
        let (a_node, mut members) = active.remove(i);
        members.extend(b_members);
        members.sort_unstable();
        let id = tree.join(vec![a_node, b_node], d);
        let pos = active.iter().position(|(_, m)| m[0] > members[0]).unwrap_or(active.len());
        active.insert(pos, (id, members));
    }
    Ok(tree)
}
