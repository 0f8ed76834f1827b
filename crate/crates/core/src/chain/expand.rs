//! One-edge expansions (vertex splittings), the inverse of contraction.

use std::collections::HashSet;

use crate::canon::canonical_code;
use crate::graph::{Dart, RibbonGraph};

/// Every graph obtained by splitting one vertex of valency at least four into
/// two vertices of valency at least three, joined by a new edge. The rotation
/// at the split vertex is cut into two contiguous arcs; the new edge's darts
/// close each arc into a cycle.
///
/// Results are deduplicated up to isomorphism, in a deterministic order. The
/// new edge is always the last edge of the returned graph, and contracting it
/// gives back a graph isomorphic to the input.
pub fn expansions(graph: &RibbonGraph) -> Vec<(RibbonGraph, usize)> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (v, cycle) in graph.vertices().iter().enumerate() {
        let len = cycle.len();
        if len < 4 {
            continue;
        }
        for start in 0..len {
            for size in 2..=(len - 2) {
                let expanded = split_vertex(graph, v, start, size);
                if seen.insert(canonical_code(&expanded)) {
                    let e = expanded.num_edges() - 1;
                    out.push((expanded, e));
                }
            }
        }
    }
    out
}

/// Splits vertex `v`: the arc of `size` darts starting at position `start`
/// stays on `v`, the rest moves to a new last vertex.
pub(crate) fn split_vertex(graph: &RibbonGraph, v: usize, start: usize, size: usize) -> RibbonGraph {
    let cycle = &graph.vertices()[v];
    let len = cycle.len();
    let n = graph.num_darts();
    let (x, y): (Dart, Dart) = (n, n + 1);
    let mut kept: Vec<Dart> = (0..size).map(|i| cycle[(start + i) % len]).collect();
    kept.push(x);
    let mut moved: Vec<Dart> = (size..len).map(|i| cycle[(start + i) % len]).collect();
    moved.push(y);
    let mut vertices = graph.vertices().to_vec();
    vertices[v] = kept;
    vertices.push(moved);
    let mut edges = graph.edges().to_vec();
    edges.push([x, y]);
    RibbonGraph::from_parts(vertices, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::contract_edge;
    use crate::graph::{build_xk, Orientation};

    #[test]
    fn expansions_invert_contraction() {
        for k in [1, 2, 5] {
            let (g, _) = build_xk(k);
            let code = canonical_code(&g);
            let ex = expansions(&g);
            assert!(!ex.is_empty());
            for (y, e) in ex {
                assert_eq!(y.num_vertices(), k + 1);
                assert!(y.vertices().iter().all(|c| c.len() >= 3));
                assert_eq!(y.genus_punctures(), Ok((1, k)));
                let (c, _) = contract_edge(&y, &Orientation::standard(&y), e).unwrap();
                assert_eq!(canonical_code(&c), code);
            }
        }
    }

    #[test]
    fn trivalent_graphs_do_not_expand() {
        let theta = RibbonGraph::new(vec![vec![0, 2, 4], vec![1, 5, 3]], vec![[0, 1], [2, 3], [4, 5]]).unwrap();
        assert!(expansions(&theta).is_empty());
    }

    #[test]
    fn x5_expansions() {
        // a 4-valent vertex (s, in, s', out) splits as {s, in | s', out} or
        // {in, s' | out, s}; the half-turn symmetry swaps in/out and fixes the
        // loop, exchanging the two, and the rotations identify all vertices.
        // Either way the small loop becomes an edge parallel to the new one.
        let ex = expansions(&build_xk(5).0);
        assert_eq!(ex.len(), 1);
        let (y, e) = &ex[0];
        let [a, b] = y.edges()[*e];
        let parallel = (0..y.num_edges())
            .filter(|&f| f != *e)
            .filter(|&f| {
                let [c, d] = y.edges()[f];
                let ends = [y.vertex_of(c), y.vertex_of(d)];
                ends == [y.vertex_of(a), y.vertex_of(b)] || ends == [y.vertex_of(b), y.vertex_of(a)]
            })
            .count();
        assert_eq!(parallel, 1);
    }
}
