//! Cut vertices and the quotient by the subcomplex they span.
//!
//! An arc through a vertex of the thickened surface enters and leaves through
//! two corners, dividing the rotation at that vertex into two cyclically
//! contiguous arcs. The arc separates the surface exactly when splitting the
//! vertex along that division disconnects the graph.

use super::Chain;
use crate::graph::RibbonGraph;

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns true when `a` and `b` were in different classes.
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

/// Whether some vertex splits into two cyclic arcs of its rotation such that
/// pulling the arcs apart disconnects the graph.
pub fn has_cut_vertex(graph: &RibbonGraph) -> bool {
    let nv = graph.num_vertices();
    let mut in_first_arc = vec![false; graph.num_darts()];
    for cycle in graph.vertices() {
        let len = cycle.len();
        // corners i < j cut the rotation into [i, j) and the rest
        for i in 0..len {
            for j in (i + 1)..len {
                for &d in &cycle[i..j] {
                    in_first_arc[d] = true;
                }
                let node = |d: usize| {
                    if in_first_arc[d] {
                        nv
                    } else {
                        graph.vertex_of(d)
                    }
                };
                let mut uf = UnionFind::new(nv + 1);
                let mut components = nv + 1;
                for &[a, b] in graph.edges() {
                    if uf.union(node(a), node(b)) {
                        components -= 1;
                    }
                }
                for &d in &cycle[i..j] {
                    in_first_arc[d] = false;
                }
                if components > 1 {
                    return true;
                }
            }
        }
    }
    false
}

/// Projection onto the quotient complex: drops every term whose graph has a
/// cut vertex.
pub fn quotient_project(chain: &Chain) -> Chain {
    chain.filter(|g| !has_cut_vertex(g.graph()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::boundary;
    use crate::graph::{build_xk, Orientation};

    /// Two vertices, each with a loop, joined by an edge; loop darts adjacent.
    fn dumbbell() -> RibbonGraph {
        RibbonGraph::new(vec![vec![0, 1, 4], vec![2, 3, 5]], vec![[0, 1], [2, 3], [4, 5]]).unwrap()
    }

    fn planar_theta() -> RibbonGraph {
        RibbonGraph::new(vec![vec![0, 2, 4], vec![1, 5, 3]], vec![[0, 1], [2, 3], [4, 5]]).unwrap()
    }

    #[test]
    fn dumbbell_has_a_cut_vertex() {
        assert!(has_cut_vertex(&dumbbell()));
    }

    #[test]
    fn theta_and_xk_are_cut_free() {
        assert!(!has_cut_vertex(&planar_theta()));
        for k in 1..=9 {
            assert!(!has_cut_vertex(&build_xk(k).0), "k = {k}");
        }
    }

    #[test]
    fn one_vertex_graphs() {
        let adjacent = RibbonGraph::new(vec![vec![0, 1, 2, 3]], vec![[0, 1], [2, 3]]).unwrap();
        let interleaved = RibbonGraph::new(vec![vec![0, 2, 1, 3]], vec![[0, 1], [2, 3]]).unwrap();
        assert!(has_cut_vertex(&adjacent));
        assert!(!has_cut_vertex(&interleaved));
    }

    #[test]
    fn projection() {
        let g = dumbbell();
        let c = Chain::from_graph(&g, &Orientation::standard(&g)).unwrap();
        assert!(quotient_project(&c).is_zero());
        let (x5, o) = build_xk(5);
        let c = Chain::from_graph(&x5, &o).unwrap();
        assert_eq!(quotient_project(&c), c);
        let once = quotient_project(&boundary(&c));
        assert_eq!(quotient_project(&once), once);
    }
}
