//! Exact computations in the ribbon graph complex.
//!
//! Ribbon graphs are stored as combinatorial maps: a rotation permutation whose
//! cycles are the vertices and a fixed-point-free involution pairing the two
//! darts of every edge. On top of that the crate provides
//!
//! - signed canonical forms and automorphism groups ([`canon`]),
//! - rational chains with the edge-contraction differential and the
//!   cut-vertex quotient ([`chain`]),
//! - exhaustive enumeration by genus, punctures and vertex count together with
//!   exact boundary ranks, Betti numbers and Euler characteristics
//!   ([`enumeration`]),
//! - the graphs `X_k`, ornate necklaces, the cycles `Z_k` and the cocycles
//!   `Θ_k` on the genus one complex ([`morita`]),
//! - the symplectic tensor algebra on `V_n = ⟨p_1..p_n, q_1..q_n⟩` used to
//!   compare `Θ_k` with the abelianization cocycles ([`symplectic`]).
//!
//! Every number that leaves this crate is an exact rational.

pub mod canon;
pub mod chain;
pub mod cli;
pub mod enumeration;
pub mod error;
pub mod graph;
pub mod json;
pub mod morita;
pub mod rational;
pub mod sign;
pub mod symplectic;

pub use canon::{automorphisms, canonicalize, CanonicalGraph, SignedAutomorphism};
pub use chain::{
    boundary, boundary_of_graph, contract_edge, expansions, has_cut_vertex, quotient_project,
    Chain, Grade,
};
pub use enumeration::{
    betti_numbers, boundary_matrix, enumerate_graphs, euler_characteristic, rank_over_q,
    Enumerator, GradedBasis, SparseMatrixQ,
};
pub use morita::{
    binary_trees, compositions_up_to_cycle, cyclic_symmetry_count, ornate_necklace, theta,
    verify_main_theorem, z_cycle, NecklaceSpec, PlanarBinaryTree,
};
pub use error::Error;
pub use graph::{build_xk, orientation_sign, Dart, Orientation, RibbonGraph};
pub use rational::Rational;
pub use sign::Sign;
