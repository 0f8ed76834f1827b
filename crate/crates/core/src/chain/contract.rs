//! Edge contraction and the boundary operator.

use rayon::prelude::*;

use super::{Chain, ChainError, Grade};
use crate::canon::canonicalize;
use crate::graph::{Dart, Orientation, RibbonGraph};
use crate::rational::Rational;
use crate::sign::Sign;

/// Contracts the non-loop edge `e`, returning the contracted graph, an
/// orientation for it, and the sign relating the two.
///
/// The orientation is produced in two steps. First the vertex order is
/// rearranged so that the tail of `e` comes first and its head second, with
/// the other vertices kept in their relative order; the parity of that
/// rearrangement is the returned sign. Then the two endpoints are merged into
/// a new vertex that is ordered first, and every other vertex moves down by
/// one. The remaining edges keep their directions.
///
/// With `e` running from `t` (at `u`) to `h` (at `w`), the merged rotation is
/// the rotation at `u` read from just after `t`, followed by the rotation at
/// `w` read from just after `h`. Surviving darts are renumbered densely in
/// increasing order; the merged vertex gets index 0 and the remaining vertices
/// and edges keep their relative order.
pub fn contract_edge_signed(
    graph: &RibbonGraph,
    orientation: &Orientation,
    e: usize,
) -> Result<(RibbonGraph, Orientation, Sign), ChainError> {
    if e >= graph.num_edges() {
        return Err(ChainError::NoSuchEdge(e));
    }
    if graph.is_loop(e) {
        return Err(ChainError::LoopEdge(e));
    }
    let t = orientation.tail(e);
    let h = graph.iota(t);
    let u = graph.vertex_of(t);
    let w = graph.vertex_of(h);

    let mut reordered = Vec::with_capacity(graph.num_vertices());
    reordered.push(u);
    reordered.push(w);
    reordered.extend(orientation.vertex_order().iter().copied().filter(|&v| v != u && v != w));
    let sign = Sign::between_orderings(orientation.vertex_order(), &reordered);

    let n = graph.num_darts();
    let mut new_dart = vec![usize::MAX; n];
    let mut next = 0;
    for d in 0..n {
        if d != t && d != h {
            new_dart[d] = next;
            next += 1;
        }
    }

    let mut new_vertex = vec![usize::MAX; graph.num_vertices()];
    let mut vertices: Vec<Vec<Dart>> = Vec::with_capacity(graph.num_vertices() - 1);
    let mut merged = Vec::with_capacity(graph.valency(u) + graph.valency(w) - 2);
    for start in [t, h] {
        let mut d = graph.sigma(start);
        while d != start {
            merged.push(new_dart[d]);
            d = graph.sigma(d);
        }
    }
    vertices.push(merged);
    new_vertex[u] = 0;
    new_vertex[w] = 0;
    for (v, cycle) in graph.vertices().iter().enumerate() {
        if v != u && v != w {
            new_vertex[v] = vertices.len();
            vertices.push(cycle.iter().map(|&d| new_dart[d]).collect());
        }
    }

    let mut edges = Vec::with_capacity(graph.num_edges() - 1);
    let mut tails = Vec::with_capacity(graph.num_edges() - 1);
    for (f, &[a, b]) in graph.edges().iter().enumerate() {
        if f != e {
            edges.push([new_dart[a], new_dart[b]]);
            tails.push(new_dart[orientation.tail(f)]);
        }
    }

    let mut vertex_order = Vec::with_capacity(vertices.len());
    vertex_order.push(0);
    vertex_order.extend(reordered[2..].iter().map(|&v| new_vertex[v]));

    let contracted = RibbonGraph::from_parts(vertices, edges);
    Ok((contracted, Orientation::from_parts(vertex_order, tails), sign))
}

/// Contracts the non-loop edge `e`; the orientation sign is folded into the
/// returned orientation (by reversing edge 0 when it is negative).
pub fn contract_edge(
    graph: &RibbonGraph,
    orientation: &Orientation,
    e: usize,
) -> Result<(RibbonGraph, Orientation), ChainError> {
    let (g, o, sign) = contract_edge_signed(graph, orientation, e)?;
    let o = match sign {
        Sign::Plus => o,
        Sign::Minus => o.negated(&g),
    };
    Ok((g, o))
}

/// Canonical terms of `d(graph, orientation)`, unsummed.
pub(crate) fn boundary_terms(graph: &RibbonGraph, orientation: &Orientation) -> Vec<(crate::canon::CanonicalGraph, Sign)> {
    (0..graph.num_edges())
        .filter(|&e| !graph.is_loop(e))
        .filter_map(|e| {
            let (g, o, s1) = contract_edge_signed(graph, orientation, e).expect("non-loop edge");
            let (canon, s2) = canonicalize(&g, &o);
            (!canon.is_zero()).then_some((canon, s1 * s2))
        })
        .collect()
}

/// `d(graph, orientation)`: the sum over non-loop edges of the contracted
/// oriented graphs. Works for zero graphs too, where the result must vanish.
pub fn boundary_of_graph(graph: &RibbonGraph, orientation: &Orientation) -> Result<Chain, ChainError> {
    orientation.check(graph)?;
    let grade = Grade::of(graph)?.below();
    Ok(Chain::from_terms(
        grade,
        boundary_terms(graph, orientation)
            .into_iter()
            .map(|(g, s)| (g, s.to_rational())),
    ))
}

/// The differential `d: r𝒢[k] → r𝒢[k−1]`, extended linearly.
pub fn boundary(chain: &Chain) -> Chain {
    let parts: Vec<Vec<(crate::canon::CanonicalGraph, Rational)>> = chain
        .terms
        .par_iter()
        .map(|(g, c)| {
            boundary_terms(g.graph(), &g.orientation())
                .into_iter()
                .map(|(h, s)| {
                    let coeff = match s {
                        Sign::Plus => c.clone(),
                        Sign::Minus => -c.clone(),
                    };
                    (h, coeff)
                })
                .collect()
        })
        .collect();
    Chain::from_terms(chain.grade.below(), parts.into_iter().flatten())
}
