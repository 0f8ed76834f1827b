//! Signed canonical forms and automorphism groups.
//!
//! A labeling is grown breadth-first from a start dart: darts are numbered in
//! the order they are discovered, and the dart with label `i` discovers
//! `σ(d)` and then `ι(d)`. Because the map is connected, the start dart fixes
//! the whole labeling. The code of a labeling lists `(label σ(d), label ι(d))`
//! in label order; it determines the map up to isomorphism. The canonical form
//! is the relabeled map with the lexicographically smallest code over all
//! start darts, and the start darts reaching that code are exactly the
//! automorphisms of the map.
//!
//! The canonical orientation numbers vertices in order of first visit (equal
//! to their index in the canonical graph) and directs each edge out of its
//! smaller dart.

use std::cmp::Ordering;
use std::hash::{Hash, Hasher};

use crate::graph::{orientation_sign_unchecked, Dart, Orientation, RibbonGraph};
use crate::sign::Sign;

/// The isomorphism class of a ribbon graph with a distinguished orientation.
///
/// When `is_zero` holds the graph has an orientation-reversing automorphism,
/// so it is the zero vector in the chain complex.
#[derive(Clone, Debug)]
pub struct CanonicalGraph {
    graph: RibbonGraph,
    code: Vec<u32>,
    is_zero: bool,
}

impl CanonicalGraph {
    pub fn graph(&self) -> &RibbonGraph {
        &self.graph
    }

    /// Vertices in index order, every edge directed from its smaller dart.
    pub fn orientation(&self) -> Orientation {
        Orientation::standard(&self.graph)
    }

    pub fn is_zero(&self) -> bool {
        self.is_zero
    }

    /// The minimal labeling code.
    pub fn code(&self) -> &[u32] {
        &self.code
    }
}

impl PartialEq for CanonicalGraph {
    fn eq(&self, other: &Self) -> bool {
        self.code == other.code
    }
}

impl Eq for CanonicalGraph {}

impl Hash for CanonicalGraph {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.code.hash(state);
    }
}

impl PartialOrd for CanonicalGraph {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CanonicalGraph {
    fn cmp(&self, other: &Self) -> Ordering {
        self.code
            .len()
            .cmp(&other.code.len())
            .then_with(|| self.code.cmp(&other.code))
    }
}

/// An automorphism of the combinatorial map and its effect on orientation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignedAutomorphism {
    pub dart_map: Vec<Dart>,
    pub sign: Sign,
}

struct Labeling {
    label: Vec<u32>,
    order: Vec<Dart>,
}

const UNLABELED: u32 = u32::MAX;

/// Labels the map from `start`. Gives up (returning `None`) as soon as the code
/// exceeds `best`.
fn label_from(graph: &RibbonGraph, start: Dart, best: Option<&[u32]>) -> Option<(Labeling, Vec<u32>, Ordering)> {
    let n = graph.num_darts();
    let mut label = vec![UNLABELED; n];
    let mut order = Vec::with_capacity(n);
    let mut code = Vec::with_capacity(2 * n);
    let mut cmp = if best.is_some() {
        Ordering::Equal
    } else {
        Ordering::Less
    };
    label[start] = 0;
    order.push(start);
    let mut i = 0;
    while i < order.len() {
        let d = order[i];
        for next in [graph.sigma(d), graph.iota(d)] {
            if label[next] == UNLABELED {
                label[next] = order.len() as u32;
                order.push(next);
            }
            let c = label[next];
            if cmp == Ordering::Equal {
                cmp = c.cmp(&best.unwrap()[code.len()]);
                if cmp == Ordering::Greater {
                    return None;
                }
            }
            code.push(c);
        }
        i += 1;
    }
    debug_assert_eq!(order.len(), n, "labeling requires a connected map");
    Some((Labeling { label, order }, code, cmp))
}

/// All labelings achieving the minimal code, first start dart first.
fn minimal_labelings(graph: &RibbonGraph) -> (Vec<u32>, Vec<Labeling>) {
    let mut best: Option<Vec<u32>> = None;
    let mut winners = Vec::new();
    for start in 0..graph.num_darts() {
        match label_from(graph, start, best.as_deref()) {
            None => {}
            Some((lab, code, Ordering::Less)) => {
                best = Some(code);
                winners.clear();
                winners.push(lab);
            }
            Some((lab, _, _)) => winners.push(lab),
        }
    }
    (best.expect("graph has darts"), winners)
}

fn relabel(graph: &RibbonGraph, lab: &Labeling) -> RibbonGraph {
    let n = graph.num_darts();
    let mut sigma = vec![0; n];
    let mut iota = vec![0; n];
    for d in 0..n {
        let l = lab.label[d] as usize;
        sigma[l] = lab.label[graph.sigma(d)] as usize;
        iota[l] = lab.label[graph.iota(d)] as usize;
    }
    RibbonGraph::from_permutations_unchecked(&sigma, &iota)
}

fn automorphism_maps(graph: &RibbonGraph, labelings: &[Labeling]) -> Vec<Vec<Dart>> {
    let base = &labelings[0];
    labelings
        .iter()
        .map(|lab| {
            (0..graph.num_darts())
                .map(|d| lab.order[base.label[d] as usize])
                .collect()
        })
        .collect()
}

/// Canonical form of `(graph, orientation)` and the sign `s` with
/// `(graph, orientation) = s · (canonical graph, canonical orientation)`.
///
/// When the returned graph is zero the sign carries no information.
pub fn canonicalize(graph: &RibbonGraph, orientation: &Orientation) -> (CanonicalGraph, Sign) {
    let (code, labelings) = minimal_labelings(graph);
    let canonical = relabel(graph, &labelings[0]);
    let transported = orientation.push_forward(graph, &canonical, &labelings[0].label_map());
    let sign = orientation_sign_unchecked(&transported, &Orientation::standard(&canonical));
    let is_zero = automorphism_maps(graph, &labelings)
        .iter()
        .any(|map| {
            let image = orientation.push_forward(graph, graph, map);
            orientation_sign_unchecked(orientation, &image) == Sign::Minus
        });
    (
        CanonicalGraph {
            graph: canonical,
            code,
            is_zero,
        },
        sign,
    )
}

impl CanonicalGraph {
    /// Rebuilds the canonical graph whose code is `code`.
    pub(crate) fn from_code(code: &[u32]) -> CanonicalGraph {
        let n = code.len() / 2;
        let sigma: Vec<Dart> = (0..n).map(|i| code[2 * i] as Dart).collect();
        let iota: Vec<Dart> = (0..n).map(|i| code[2 * i + 1] as Dart).collect();
        let g = RibbonGraph::from_permutations_unchecked(&sigma, &iota);
        let (canon, _) = canonicalize(&g, &Orientation::standard(&g));
        debug_assert_eq!(canon.code, code);
        canon
    }
}

/// Canonical form ignoring orientation. Cheaper than [`canonicalize`] when only
/// the isomorphism class matters.
pub fn canonical_code(graph: &RibbonGraph) -> Vec<u32> {
    let mut best: Option<Vec<u32>> = None;
    for start in 0..graph.num_darts() {
        if let Some((_, code, Ordering::Less)) = label_from(graph, start, best.as_deref()) {
            best = Some(code);
        }
    }
    best.expect("graph has darts")
}

/// The full automorphism group of the map with the orientation sign of each
/// element. The identity comes first.
pub fn automorphisms(graph: &RibbonGraph, orientation: &Orientation) -> Vec<SignedAutomorphism> {
    let (_, labelings) = minimal_labelings(graph);
    automorphism_maps(graph, &labelings)
        .into_iter()
        .map(|dart_map| {
            let image = orientation.push_forward(graph, graph, &dart_map);
            let sign = orientation_sign_unchecked(orientation, &image);
            SignedAutomorphism { dart_map, sign }
        })
        .collect()
}

impl Labeling {
    fn label_map(&self) -> Vec<Dart> {
        self.label.iter().map(|&l| l as usize).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_xk;

    fn relabeled(graph: &RibbonGraph, perm: &[Dart]) -> (RibbonGraph, Vec<Dart>) {
        let n = graph.num_darts();
        let mut sigma = vec![0; n];
        let mut iota = vec![0; n];
        for d in 0..n {
            sigma[perm[d]] = perm[graph.sigma(d)];
            iota[perm[d]] = perm[graph.iota(d)];
        }
        (RibbonGraph::from_permutations(&sigma, &iota).unwrap(), perm.to_vec())
    }

    #[test]
    fn xk_vanishing_pattern() {
        for k in 1..=13 {
            let (g, o) = build_xk(k);
            let (c, _) = canonicalize(&g, &o);
            let nonzero = k % 4 == 1 && k != 1;
            assert_eq!(c.is_zero(), !nonzero, "k = {k}");
        }
    }

    #[test]
    fn canonical_form_is_a_fixed_point() {
        for k in [2, 5, 6] {
            let (g, o) = build_xk(k);
            let (c, _) = canonicalize(&g, &o);
            let (again, sign) = canonicalize(c.graph(), &c.orientation());
            assert_eq!(again.graph(), c.graph());
            assert_eq!(sign, Sign::Plus);
        }
    }

    #[test]
    fn relabeling_gives_the_same_form() {
        let (g, o) = build_xk(5);
        let perm: Vec<Dart> = (0..20).map(|d| (d * 7 + 3) % 20).collect();
        let (h, map) = relabeled(&g, &perm);
        let oh = o.push_forward(&g, &h, &map);
        let (cg, sg) = canonicalize(&g, &o);
        let (ch, sh) = canonicalize(&h, &oh);
        assert_eq!(cg.graph(), ch.graph());
        assert_eq!(sg, sh);
        // negated orientation flips the sign
        let (_, sn) = canonicalize(&h, &oh.negated(&h));
        assert_eq!(sn, -sh);
    }

    #[test]
    fn xk_automorphism_groups() {
        let (g, o) = build_xk(5);
        let auts = automorphisms(&g, &o);
        assert_eq!(auts.len(), 10);
        assert!(auts.iter().all(|a| a.sign == Sign::Plus));

        let (g, o) = build_xk(7);
        let auts = automorphisms(&g, &o);
        assert_eq!(auts.len(), 14);
        assert!(auts.iter().any(|a| a.sign == Sign::Minus));

        let one_vertex = RibbonGraph::new(vec![vec![0, 2, 1, 3]], vec![[0, 1], [2, 3]]).unwrap();
        let auts = automorphisms(&one_vertex, &Orientation::standard(&one_vertex));
        assert!(auts.iter().any(|a| a.sign == Sign::Minus));
    }

    #[test]
    fn automorphisms_commute_with_the_map() {
        let (g, o) = build_xk(6);
        for a in automorphisms(&g, &o) {
            for d in 0..g.num_darts() {
                assert_eq!(a.dart_map[g.sigma(d)], g.sigma(a.dart_map[d]));
                assert_eq!(a.dart_map[g.iota(d)], g.iota(a.dart_map[d]));
            }
        }
    }
}
