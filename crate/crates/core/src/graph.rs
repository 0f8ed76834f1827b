//! Ribbon graphs as combinatorial maps.
//!
//! A graph on `2E` darts is given by two permutations of `0..2E`:
//!
//! - the rotation `σ`, whose cycles are the vertices; the order inside a cycle
//!   is the cyclic order of half-edges at that vertex,
//! - the pairing `ι`, a fixed-point-free involution matching the two darts of
//!   every edge.
//!
//! Faces (boundary cycles of the thickened surface) are the cycles of the
//! face permutation `φ = σ ∘ ι`, i.e. `φ(d) = σ(ι(d))`: cross the edge, then
//! turn to the next half-edge in the rotation at the far end. This convention
//! is used everywhere in the crate.
//!
//! Vertices and edges are indexed by their position in the `rotation` and
//! `pairing` lists the graph was built from. Graphs are immutable.

use thiserror::Error;

use crate::sign::Sign;

/// Darts are dense indices `0..2E`.
pub type Dart = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("graph has no darts")]
    Empty,
    #[error("dart {0} is out of range or listed twice in the {1}")]
    NotAPermutation(Dart, &'static str),
    #[error("dart {0} is missing from the {1}")]
    MissingDart(Dart, &'static str),
    #[error("pairing has a fixed point at dart {0}")]
    FixedPoint(Dart),
    #[error("vertex {vertex} has valency {valency} < 3")]
    LowValency { vertex: usize, valency: usize },
    #[error("graph is disconnected")]
    Disconnected,
    #[error("invalid orientation: {0}")]
    BadOrientation(String),
    #[error("Euler relation gives no valid genus (V={vertices}, E={edges}, F={faces})")]
    EulerRelation {
        vertices: usize,
        edges: usize,
        faces: usize,
    },
}

/// A connected ribbon graph with all vertices of valency at least three.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RibbonGraph {
    sigma: Vec<Dart>,
    iota: Vec<Dart>,
    vertices: Vec<Vec<Dart>>,
    edges: Vec<[Dart; 2]>,
    dart_vertex: Vec<usize>,
    dart_edge: Vec<usize>,
}

impl RibbonGraph {
    /// Builds a graph from its vertex cycles and edge pairs, checking every
    /// structural invariant.
    pub fn new(rotation: Vec<Vec<Dart>>, pairing: Vec<[Dart; 2]>) -> Result<Self, GraphError> {
        let n: usize = rotation.iter().map(Vec::len).sum();
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut seen = vec![false; n];
        for &d in rotation.iter().flatten() {
            if d >= n || seen[d] {
                return Err(GraphError::NotAPermutation(d, "rotation"));
            }
            seen[d] = true;
        }
        let mut seen = vec![false; n];
        for &[a, b] in &pairing {
            if a == b {
                return Err(GraphError::FixedPoint(a));
            }
            for d in [a, b] {
                if d >= n || seen[d] {
                    return Err(GraphError::NotAPermutation(d, "pairing"));
                }
                seen[d] = true;
            }
        }
        if let Some(d) = seen.iter().position(|s| !s) {
            return Err(GraphError::MissingDart(d, "pairing"));
        }
        for (v, cycle) in rotation.iter().enumerate() {
            if cycle.len() < 3 {
                return Err(GraphError::LowValency {
                    vertex: v,
                    valency: cycle.len(),
                });
            }
        }
        let g = Self::from_parts(rotation, pairing);
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    /// Builds a graph from the permutations `σ` (rotation) and `ι` (pairing).
    ///
    /// Vertices are listed in order of their smallest dart, each cycle starting
    /// at that dart; edges are listed in order of their smaller dart.
    pub fn from_permutations(sigma: &[Dart], iota: &[Dart]) -> Result<Self, GraphError> {
        let n = sigma.len();
        if iota.len() != n {
            return Err(GraphError::NotAPermutation(n.min(iota.len()), "pairing"));
        }
        for (p, name) in [(sigma, "rotation"), (iota, "pairing")] {
            let mut seen = vec![false; n];
            for &d in p {
                if d >= n || seen[d] {
                    return Err(GraphError::NotAPermutation(d, name));
                }
                seen[d] = true;
            }
        }
        for d in 0..n {
            if iota[d] == d {
                return Err(GraphError::FixedPoint(d));
            }
            if iota[iota[d]] != d {
                return Err(GraphError::NotAPermutation(d, "pairing"));
            }
        }
        Self::new(cycles_of(sigma), pairs_of(iota))
    }

    /// Assembles the derived tables. Callers guarantee the invariants.
    pub(crate) fn from_parts(vertices: Vec<Vec<Dart>>, edges: Vec<[Dart; 2]>) -> Self {
        let n = 2 * edges.len();
        let mut sigma = vec![0; n];
        let mut dart_vertex = vec![0; n];
        for (v, cycle) in vertices.iter().enumerate() {
            for (i, &d) in cycle.iter().enumerate() {
                sigma[d] = cycle[(i + 1) % cycle.len()];
                dart_vertex[d] = v;
            }
        }
        let mut iota = vec![0; n];
        let mut dart_edge = vec![0; n];
        for (e, &[a, b]) in edges.iter().enumerate() {
            iota[a] = b;
            iota[b] = a;
            dart_edge[a] = e;
            dart_edge[b] = e;
        }
        RibbonGraph {
            sigma,
            iota,
            vertices,
            edges,
            dart_vertex,
            dart_edge,
        }
    }

    /// Same as [`Self::from_permutations`] without validation.
    pub(crate) fn from_permutations_unchecked(sigma: &[Dart], iota: &[Dart]) -> Self {
        Self::from_parts(cycles_of(sigma), pairs_of(iota))
    }

    pub fn num_darts(&self) -> usize {
        self.sigma.len()
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Rotation successor of a dart.
    pub fn sigma(&self, d: Dart) -> Dart {
        self.sigma[d]
    }

    /// The other dart of the same edge.
    pub fn iota(&self, d: Dart) -> Dart {
        self.iota[d]
    }

    pub fn sigma_perm(&self) -> &[Dart] {
        &self.sigma
    }

    pub fn iota_perm(&self) -> &[Dart] {
        &self.iota
    }

    /// Vertex cycles, in index order.
    pub fn vertices(&self) -> &[Vec<Dart>] {
        &self.vertices
    }

    pub fn edges(&self) -> &[[Dart; 2]] {
        &self.edges
    }

    pub fn vertex_of(&self, d: Dart) -> usize {
        self.dart_vertex[d]
    }

    pub fn edge_of(&self, d: Dart) -> usize {
        self.dart_edge[d]
    }

    pub fn valency(&self, v: usize) -> usize {
        self.vertices[v].len()
    }

    /// Both darts of edge `e` sit at the same vertex.
    pub fn is_loop(&self, e: usize) -> bool {
        let [a, b] = self.edges[e];
        self.dart_vertex[a] == self.dart_vertex[b]
    }

    fn is_connected(&self) -> bool {
        let n = self.num_darts();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(d) = stack.pop() {
            for next in [self.sigma[d], self.iota[d]] {
                if !seen[next] {
                    seen[next] = true;
                    count += 1;
                    stack.push(next);
                }
            }
        }
        count == n
    }

    /// Cycles of `d ↦ σ(ι(d))`, each starting at its smallest dart, sorted by
    /// that dart.
    pub fn faces(&self) -> Vec<Vec<Dart>> {
        let phi: Vec<Dart> = (0..self.num_darts())
            .map(|d| self.sigma[self.iota[d]])
            .collect();
        cycles_of(&phi)
    }

    pub fn num_faces(&self) -> usize {
        self.faces().len()
    }

    /// `(g, m)` of the thickened surface: `m` faces and `V − E + m = 2 − 2g`.
    pub fn genus_punctures(&self) -> Result<(usize, usize), GraphError> {
        let (v, e, f) = (self.num_vertices(), self.num_edges(), self.num_faces());
        let twice_genus = (2 + e) as i64 - (v + f) as i64;
        if twice_genus < 0 || twice_genus % 2 != 0 {
            return Err(GraphError::EulerRelation {
                vertices: v,
                edges: e,
                faces: f,
            });
        }
        Ok(((twice_genus / 2) as usize, f))
    }
}

/// Cycles of a permutation, each starting at its minimum, in order of minima.
pub(crate) fn cycles_of(p: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; p.len()];
    let mut cycles = Vec::new();
    for start in 0..p.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push(x);
            x = p[x];
        }
        cycles.push(cycle);
    }
    cycles
}

fn pairs_of(iota: &[Dart]) -> Vec<[Dart; 2]> {
    (0..iota.len())
        .filter(|&d| d < iota[d])
        .map(|d| [d, iota[d]])
        .collect()
}

/// A vertex ordering together with a direction on every edge.
///
/// Two orientations of the same graph are equivalent when they differ by an
/// even number of vertex transpositions and edge reversals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Orientation {
    /// Vertex indices, first to last.
    vertex_order: Vec<usize>,
    /// The tail dart of every edge, by edge index.
    tails: Vec<Dart>,
}

impl Orientation {
    pub fn new(
        graph: &RibbonGraph,
        vertex_order: Vec<usize>,
        tails: Vec<Dart>,
    ) -> Result<Self, GraphError> {
        let o = Orientation {
            vertex_order,
            tails,
        };
        o.check(graph)?;
        Ok(o)
    }

    /// Vertices in index order, every edge directed from its first listed dart.
    pub fn standard(graph: &RibbonGraph) -> Self {
        Orientation {
            vertex_order: (0..graph.num_vertices()).collect(),
            tails: graph.edges.iter().map(|e| e[0]).collect(),
        }
    }

    pub(crate) fn from_parts(vertex_order: Vec<usize>, tails: Vec<Dart>) -> Self {
        Orientation {
            vertex_order,
            tails,
        }
    }

    pub fn vertex_order(&self) -> &[usize] {
        &self.vertex_order
    }

    pub fn tails(&self) -> &[Dart] {
        &self.tails
    }

    pub fn tail(&self, e: usize) -> Dart {
        self.tails[e]
    }

    /// The same decoration with edge `e` reversed.
    pub fn reverse_edge(&self, graph: &RibbonGraph, e: usize) -> Self {
        let mut o = self.clone();
        o.tails[e] = graph.iota(o.tails[e]);
        o
    }

    /// A representative of the opposite orientation.
    pub fn negated(&self, graph: &RibbonGraph) -> Self {
        self.reverse_edge(graph, 0)
    }

    /// Checks that this decoration belongs to `graph`.
    pub fn check(&self, graph: &RibbonGraph) -> Result<(), GraphError> {
        let v = graph.num_vertices();
        if self.vertex_order.len() != v {
            return Err(GraphError::BadOrientation(format!(
                "vertex order lists {} vertices, graph has {v}",
                self.vertex_order.len()
            )));
        }
        let mut seen = vec![false; v];
        for &x in &self.vertex_order {
            if x >= v || seen[x] {
                return Err(GraphError::BadOrientation(format!(
                    "vertex order is not a permutation (vertex {x})"
                )));
            }
            seen[x] = true;
        }
        if self.tails.len() != graph.num_edges() {
            return Err(GraphError::BadOrientation(format!(
                "{} tails for {} edges",
                self.tails.len(),
                graph.num_edges()
            )));
        }
        for (e, &t) in self.tails.iter().enumerate() {
            if t >= graph.num_darts() || graph.edge_of(t) != e {
                return Err(GraphError::BadOrientation(format!(
                    "tail {t} is not a dart of edge {e}"
                )));
            }
        }
        Ok(())
    }

    /// Transports this orientation along a dart bijection `map: G → H`.
    pub(crate) fn push_forward(&self, from: &RibbonGraph, to: &RibbonGraph, map: &[Dart]) -> Self {
        let vertex_order = self
            .vertex_order
            .iter()
            .map(|&v| to.vertex_of(map[from.vertices[v][0]]))
            .collect();
        let mut tails = vec![0; to.num_edges()];
        for &t in &self.tails {
            let image = map[t];
            tails[to.edge_of(image)] = image;
        }
        Orientation {
            vertex_order,
            tails,
        }
    }
}

/// `+1` when `o1` and `o2` are the same orientation of `graph`, `−1` otherwise.
pub fn orientation_sign(
    graph: &RibbonGraph,
    o1: &Orientation,
    o2: &Orientation,
) -> Result<Sign, GraphError> {
    o1.check(graph)?;
    o2.check(graph)?;
    Ok(orientation_sign_unchecked(o1, o2))
}

pub(crate) fn orientation_sign_unchecked(o1: &Orientation, o2: &Orientation) -> Sign {
    let flips = o1
        .tails
        .iter()
        .zip(&o2.tails)
        .filter(|(a, b)| a != b)
        .count();
    Sign::between_orderings(&o1.vertex_order, &o2.vertex_order) * Sign::from_parity(flips)
}

/// The genus one graph `X_k`: a big loop through `k` vertices with one small
/// loop at each vertex whose two ends sit on opposite sides of the big loop.
///
/// Dart layout: big edge `j` is `(2j, 2j+1)` running from vertex `j` to vertex
/// `j+1 mod k`; small loop `j` is `(2k+2j, 2k+2j+1)`. The rotation at vertex
/// `j` is
///
/// ```text
///   (2k+2j, 2(j-1)+1, 2k+2j+1, 2j)
///    loop   big in    loop     big out
/// ```
///
/// The returned orientation numbers the vertices along the big loop, directs
/// every big edge forward and every small loop out of its first dart. It
/// coincides with the ornate necklace `[1, …, 1]`.
pub fn build_xk(k: usize) -> (RibbonGraph, Orientation) {
    assert!(k >= 1, "X_k needs k >= 1");
    let rotation: Vec<Vec<Dart>> = (0..k)
        .map(|j| {
            let big_in = 2 * ((j + k - 1) % k) + 1;
            vec![2 * k + 2 * j, big_in, 2 * k + 2 * j + 1, 2 * j]
        })
        .collect();
    let pairing: Vec<[Dart; 2]> = (0..2 * k).map(|e| [2 * e, 2 * e + 1]).collect();
    let graph = RibbonGraph::from_parts(rotation, pairing);
    let orientation = Orientation::standard(&graph);
    (graph, orientation)
}
