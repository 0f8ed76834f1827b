//! Planar binary trees, ornate necklaces, the cycles `Z_k` and the cocycles
//! `Θ_k` on the genus one ribbon graph complex.
//!
//! # Necklace assembly
//!
//! An ornate necklace `[i_1, .., i_n]` is a big loop through `n` root vertices
//! `r_1, .., r_n`, with a planar binary tree with `i_j` leaves hanging off
//! `r_j`. Every leaf of that tree is joined back to `r_j` by an edge that
//! comes in from the other side of the big loop, so the root rotation reads
//!
//! ```text
//!   r_j:   (R, B_in, L_1, L_2, .., L_i, B_out)
//!
//!            R                 R   = root edge, towards the tree
//!            |                 B_* = big loop, in from r_{j-1}, out to r_{j+1}
//!   B_in --- r_j --- B_out     L_* = leaf edges coming back, leftmost leaf first
//!          / | \
//!        L_1 .. L_i
//! ```
//!
//! Internal tree nodes read `(parent, right child, left child)`. For a
//! one-leaf tree the root edge and the single leaf edge are the same loop,
//! giving `(L, B_in, L', B_out)`, the local picture of `X_k`.
//!
//! The orientation directs the big loop from `r_j` to `r_{j+1}` and every
//! tree edge away from the root (leaf edges run from the tree to `r_j`).
//! Vertices are ordered necklace position by position: the root, then the
//! internal nodes from left to right.

mod verify;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::canon::canonicalize;
use crate::chain::{Chain, Grade};
use crate::graph::{Dart, Orientation, RibbonGraph};
use crate::rational::Rational;

pub use verify::{
    theta, verify_cycle, verify_main_theorem, x_k_reference_sign, z_coefficients, z_cycle, Certificate,
    CycleReport,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoritaError {
    #[error("a necklace needs at least one bead")]
    EmptyComposition,
    #[error("necklace parts must be positive")]
    ZeroPart,
    #[error("Θ_{0} is undefined: X_{0} vanishes unless k ≡ 1 mod 4 and k ≥ 5")]
    ThetaUndefined(usize),
    #[error("Z_{0} is only defined for odd k ≥ 3")]
    CycleUndefined(usize),
    #[error("chain has grade {found}, expected {expected}")]
    Grade { expected: Grade, found: Grade },
}

/// A planar binary rooted tree; children are ordered left, right.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlanarBinaryTree {
    Leaf,
    Node(Box<PlanarBinaryTree>, Box<PlanarBinaryTree>),
}

impl PlanarBinaryTree {
    pub fn node(left: PlanarBinaryTree, right: PlanarBinaryTree) -> Self {
        PlanarBinaryTree::Node(Box::new(left), Box::new(right))
    }

    pub fn leaves(&self) -> usize {
        match self {
            PlanarBinaryTree::Leaf => 1,
            PlanarBinaryTree::Node(l, r) => l.leaves() + r.leaves(),
        }
    }

    pub fn internal_nodes(&self) -> usize {
        match self {
            PlanarBinaryTree::Leaf => 0,
            PlanarBinaryTree::Node(l, r) => 1 + l.internal_nodes() + r.internal_nodes(),
        }
    }
}

/// Every planar binary tree with `leaves` leaves; Catalan(leaves − 1) of them.
pub fn binary_trees(leaves: usize) -> Vec<PlanarBinaryTree> {
    match leaves {
        0 => Vec::new(),
        1 => vec![PlanarBinaryTree::Leaf],
        _ => {
            let mut out = Vec::new();
            for left in 1..leaves {
                let rights = binary_trees(leaves - left);
                for l in binary_trees(left) {
                    for r in &rights {
                        out.push(PlanarBinaryTree::node(l.clone(), r.clone()));
                    }
                }
            }
            out
        }
    }
}

/// The bead sizes `(i_1, .., i_n)` of an ornate necklace.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct NecklaceSpec {
    parts: Vec<usize>,
}

impl NecklaceSpec {
    pub fn new(parts: Vec<usize>) -> Result<Self, MoritaError> {
        if parts.is_empty() {
            return Err(MoritaError::EmptyComposition);
        }
        if parts.contains(&0) {
            return Err(MoritaError::ZeroPart);
        }
        Ok(NecklaceSpec { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `k`, the number of vertices (and punctures).
    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn rotated(&self, by: usize) -> NecklaceSpec {
        let mut parts = self.parts.clone();
        let len = parts.len();
        parts.rotate_left(by % len);
        NecklaceSpec { parts }
    }

    /// Lexicographically smallest rotation.
    pub fn min_rotation(&self) -> NecklaceSpec {
        (0..self.parts.len()).map(|r| self.rotated(r)).min().expect("nonempty")
    }
}

/// Number of rotations fixing the composition.
pub fn cyclic_symmetry_count(spec: &NecklaceSpec) -> usize {
    (0..spec.parts.len()).filter(|&r| spec.rotated(r) == *spec).count()
}

/// One representative (the minimal rotation) per cyclic class of
/// compositions of `k`, in lexicographic order.
pub fn compositions_up_to_cycle(k: usize) -> Vec<NecklaceSpec> {
    let mut out = std::collections::BTreeSet::new();
    if k == 0 {
        return Vec::new();
    }
    // bit b of the mask set means "cut after position b"
    for mask in 0u64..(1 << (k - 1)) {
        let mut parts = Vec::new();
        let mut run = 1;
        for b in 0..(k - 1) {
            if mask >> b & 1 == 1 {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        parts.push(run);
        out.insert(NecklaceSpec { parts }.min_rotation());
    }
    out.into_iter().collect()
}

/// What an edge of an assembled necklace is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum EdgeClass {
    BigLoop,
    /// From a root vertex to the top node of its tree.
    Root,
    /// Between two internal tree nodes.
    Interior,
    /// From a tree node (or the root, for a one-leaf tree) back to the root
    /// vertex through a leaf.
    Top,
}

/// Dart-level conventions for gluing the leaves back. Only [`Default`] is
/// used by the public constructors; the others exist so tests can check that
/// the pinning identities single it out.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub(crate) struct Attachment {
    /// Leaf edges return rightmost leaf first.
    pub reverse_leaves: bool,
    /// Rotation `(R, B_out, L.., B_in)`: the mirror image of the default.
    pub mirror: bool,
}

/// One assembled graph of an ornate necklace.
#[derive(Clone, Debug)]
pub struct NecklaceTerm {
    pub trees: Vec<PlanarBinaryTree>,
    pub graph: RibbonGraph,
    pub orientation: Orientation,
    pub edge_classes: Vec<EdgeClass>,
}

struct Builder {
    next_dart: Dart,
    vertices: Vec<Vec<Dart>>,
    edges: Vec<[Dart; 2]>,
    classes: Vec<EdgeClass>,
}

impl Builder {
    fn edge(&mut self, class: EdgeClass) -> (Dart, Dart) {
        let (t, h) = (self.next_dart, self.next_dart + 1);
        self.next_dart += 2;
        self.edges.push([t, h]);
        self.classes.push(class);
        (t, h)
    }

    /// Places the internal nodes of `tree` (a `Node`) in left-to-right order
    /// starting at vertex `first`; `parent` is the dart arriving from above.
    fn place(&mut self, tree: &PlanarBinaryTree, parent: Dart, first: usize, leaves: &mut Vec<Dart>) {
        let PlanarBinaryTree::Node(left, right) = tree else {
            unreachable!("leaves are not vertices")
        };
        let here = first + left.internal_nodes();
        let mut slots = [0; 2];
        for (slot, (child, child_first)) in slots.iter_mut().zip([(left, first), (right, here + 1)]) {
            match **child {
                PlanarBinaryTree::Leaf => {
                    let (t, h) = self.edge(EdgeClass::Top);
                    *slot = t;
                    leaves.push(h);
                }
                PlanarBinaryTree::Node(..) => {
                    let (t, h) = self.edge(EdgeClass::Interior);
                    *slot = t;
                    self.place(child, h, child_first, leaves);
                }
            }
        }
        self.vertices[here] = vec![parent, slots[1], slots[0]];
    }
}

pub(crate) fn assemble(trees: &[PlanarBinaryTree], attachment: Attachment) -> NecklaceTerm {
    let n = trees.len();
    let k: usize = trees.iter().map(PlanarBinaryTree::leaves).sum();
    let mut b = Builder {
        next_dart: 0,
        vertices: vec![Vec::new(); k],
        edges: Vec::with_capacity(2 * k),
        classes: Vec::with_capacity(2 * k),
    };
    for _ in 0..n {
        b.edge(EdgeClass::BigLoop);
    }
    // big edge j runs from root j (dart 2j) to root j+1 (dart 2j+1)
    let mut root_vertex = 0;
    for (j, tree) in trees.iter().enumerate() {
        let b_in = 2 * ((j + n - 1) % n) + 1;
        let b_out = 2 * j;
        let (top, mut leaves) = match tree {
            PlanarBinaryTree::Leaf => {
                let (t, h) = b.edge(EdgeClass::Top);
                (t, vec![h])
            }
            PlanarBinaryTree::Node(..) => {
                let (t, h) = b.edge(EdgeClass::Root);
                let mut leaves = Vec::new();
                b.place(tree, h, root_vertex + 1, &mut leaves);
                (t, leaves)
            }
        };
        if attachment.reverse_leaves {
            leaves.reverse();
        }
        let mut rotation = Vec::with_capacity(leaves.len() + 3);
        let (before, after) = if attachment.mirror { (b_out, b_in) } else { (b_in, b_out) };
        rotation.extend([top, before]);
        rotation.extend(leaves);
        rotation.push(after);
        b.vertices[root_vertex] = rotation;
        root_vertex += tree.leaves();
    }
    let graph = RibbonGraph::from_parts(b.vertices, b.edges);
    let orientation = Orientation::standard(&graph);
    NecklaceTerm {
        trees: trees.to_vec(),
        graph,
        orientation,
        edge_classes: b.classes,
    }
}

pub(crate) fn necklace_terms_with(spec: &NecklaceSpec, attachment: Attachment) -> Vec<NecklaceTerm> {
    let choices: Vec<Vec<PlanarBinaryTree>> = spec.parts.iter().map(|&i| binary_trees(i)).collect();
    let mut tuples: Vec<Vec<PlanarBinaryTree>> = vec![Vec::new()];
    for options in &choices {
        tuples = tuples
            .into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |t| {
                    let mut next = prefix.clone();
                    next.push(t.clone());
                    next
                })
            })
            .collect();
    }
    tuples.par_iter().map(|trees| assemble(trees, attachment)).collect()
}

/// Every assembled graph of `[i_1, .., i_n]`, one per choice of trees.
pub fn necklace_terms(spec: &NecklaceSpec) -> Vec<NecklaceTerm> {
    necklace_terms_with(spec, Attachment::default())
}

pub(crate) fn ornate_necklace_with(spec: &NecklaceSpec, attachment: Attachment) -> Chain {
    let grade = Grade::new(1, spec.total(), spec.total());
    let terms: Vec<_> = necklace_terms_with(spec, attachment)
        .par_iter()
        .map(|t| {
            let (canon, sign) = canonicalize(&t.graph, &t.orientation);
            (canon, sign.to_rational())
        })
        .collect();
    Chain::from_terms(grade, terms)
}

/// The chain `[i_1, .., i_n]` in grade `(1, k, k)`.
pub fn ornate_necklace(spec: &NecklaceSpec) -> Chain {
    ornate_necklace_with(spec, Attachment::default())
}

pub(crate) fn rational_ratio(p: i64, q: usize) -> Rational {
    Rational::new(p.into(), (q as i64).into())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_xk;

    fn spec(parts: &[usize]) -> NecklaceSpec {
        NecklaceSpec::new(parts.to_vec()).unwrap()
    }

    #[test]
    fn catalan_counts() {
        let counts: Vec<usize> = (1..=7).map(|i| binary_trees(i).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 14, 42, 132]);
        let t4 = binary_trees(4);
        let mut dedup = t4.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), t4.len());
        assert!(t4.iter().all(|t| t.leaves() == 4 && t.internal_nodes() == 3));
    }

    #[test]
    fn symmetry_counts() {
        assert_eq!(cyclic_symmetry_count(&spec(&[1, 1, 1, 1, 1])), 5);
        assert_eq!(cyclic_symmetry_count(&spec(&[1, 2, 1, 2, 1, 2])), 3);
        assert_eq!(cyclic_symmetry_count(&spec(&[1, 1, 2, 1])), 1);
    }

    #[test]
    fn compositions() {
        let parts = |k| compositions_up_to_cycle(k).into_iter().map(|s| s.parts).collect::<Vec<_>>();
        assert_eq!(parts(1), vec![vec![1]]);
        assert_eq!(parts(3), vec![vec![1, 1, 1], vec![1, 2], vec![3]]);
        assert_eq!(
            parts(5),
            vec![vec![1, 1, 1, 1, 1], vec![1, 1, 1, 2], vec![1, 1, 3], vec![1, 2, 2], vec![1, 4], vec![2, 3], vec![5]]
        );
    }

    #[test]
    fn invalid_specs() {
        assert_eq!(NecklaceSpec::new(vec![]), Err(MoritaError::EmptyComposition));
        assert_eq!(NecklaceSpec::new(vec![2, 0]), Err(MoritaError::ZeroPart));
    }

    #[test]
    fn all_ones_is_exactly_xk() {
        for k in 1..=9 {
            let term = &necklace_terms(&spec(&vec![1; k]))[0];
            let (x, o) = build_xk(k);
            assert_eq!(term.graph, x);
            assert_eq!(term.orientation, o);
        }
    }

    #[test]
    fn terms_have_the_right_shape() {
        for parts in [vec![2, 3], vec![3, 2], vec![5], vec![1, 4], vec![2, 2, 3], vec![4, 1, 2]] {
            let s = spec(&parts);
            let k = s.total();
            let terms = necklace_terms(&s);
            let expected: usize = parts.iter().map(|&i| binary_trees(i).len()).product();
            assert_eq!(terms.len(), expected);
            for t in terms {
                assert_eq!(t.graph.genus_punctures(), Ok((1, k)));
                assert_eq!(t.graph.num_vertices(), k);
                assert_eq!(t.graph.num_edges(), 2 * k);
                assert!(t.orientation.check(&t.graph).is_ok());
            }
        }
    }

    #[test]
    fn three_two_has_two_terms() {
        assert_eq!(necklace_terms(&spec(&[3, 2])).len(), 2);
        assert_eq!(ornate_necklace(&spec(&[3, 2])).len(), 2);
    }
}
