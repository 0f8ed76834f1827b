//! Rational chains in the ribbon graph complex.
//!
//! A [`Chain`] lives in a single grade `(g, m, k)`: genus, punctures and
//! number of vertices. Its terms are keyed by nonzero [`CanonicalGraph`]s,
//! each standing for the graph with its canonical orientation.

pub(crate) mod contract;
mod cut;
pub(crate) mod expand;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::{canonicalize, CanonicalGraph};
use crate::graph::{GraphError, Orientation, RibbonGraph};
use crate::rational::Rational;

pub use contract::{boundary, boundary_of_graph, contract_edge, contract_edge_signed};
pub use cut::{has_cut_vertex, quotient_project};
pub use expand::expansions;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("grade mismatch: {0} vs {1}")]
    GradeMismatch(Grade, Grade),
    #[error("edge {0} is a loop and cannot be contracted")]
    LoopEdge(usize),
    #[error("edge {0} does not exist")]
    NoSuchEdge(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Genus, number of punctures and number of vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Grade {
    pub genus: usize,
    pub punctures: usize,
    pub vertices: usize,
}

impl Grade {
    pub fn new(genus: usize, punctures: usize, vertices: usize) -> Self {
        Grade {
            genus,
            punctures,
            vertices,
        }
    }

    pub fn of(graph: &RibbonGraph) -> Result<Self, GraphError> {
        let (g, m) = graph.genus_punctures()?;
        Ok(Grade::new(g, m, graph.num_vertices()))
    }

    /// Edge count shared by every graph in this grade, from `V − E + m = 2 − 2g`.
    pub fn edges(&self) -> Option<usize> {
        (self.vertices + 2 * self.genus + self.punctures).checked_sub(2)
    }

    /// The grade one step down the differential.
    pub fn below(&self) -> Self {
        Grade::new(self.genus, self.punctures, self.vertices.saturating_sub(1))
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(g={}, m={}, k={})", self.genus, self.punctures, self.vertices)
    }
}

/// A finite `ℚ`-linear combination of oriented graphs in one grade.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    grade: Grade,
    terms: BTreeMap<CanonicalGraph, Rational>,
}

impl Chain {
    pub fn zero(grade: Grade) -> Self {
        Chain {
            grade,
            terms: BTreeMap::new(),
        }
    }

    /// The chain `1 · (graph, orientation)`; zero if the graph is.
    pub fn from_graph(graph: &RibbonGraph, orientation: &Orientation) -> Result<Self, ChainError> {
        orientation.check(graph)?;
        let mut chain = Chain::zero(Grade::of(graph)?);
        let (canon, sign) = canonicalize(graph, orientation);
        chain.add_term(canon, sign.to_rational())?;
        Ok(chain)
    }

    pub fn grade(&self) -> Grade {
        self.grade
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&CanonicalGraph, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, graph: &CanonicalGraph) -> Rational {
        self.terms.get(graph).cloned().unwrap_or_else(Rational::zero)
    }

    /// Adds `coeff` times a canonical graph. Zero graphs and zero coefficients
    /// are dropped.
    pub fn add_term(&mut self, graph: CanonicalGraph, coeff: Rational) -> Result<(), ChainError> {
        let grade = Grade::of(graph.graph())?;
        if grade != self.grade {
            return Err(ChainError::GradeMismatch(self.grade, grade));
        }
        self.add_term_unchecked(graph, coeff);
        Ok(())
    }

    pub(crate) fn add_term_unchecked(&mut self, graph: CanonicalGraph, coeff: Rational) {
        if graph.is_zero() || coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(graph) {
            Entry::Vacant(slot) => {
                slot.insert(coeff);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += coeff;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    pub fn checked_add(&self, other: &Chain) -> Result<Chain, ChainError> {
        let mut sum = self.clone();
        sum.add_assign_chain(other)?;
        Ok(sum)
    }

    pub fn checked_sub(&self, other: &Chain) -> Result<Chain, ChainError> {
        self.checked_add(&other.scale(&-Rational::from_integer(1.into())))
    }

    pub fn add_assign_chain(&mut self, other: &Chain) -> Result<(), ChainError> {
        if other.grade != self.grade {
            return Err(ChainError::GradeMismatch(self.grade, other.grade));
        }
        for (g, c) in &other.terms {
            self.add_term_unchecked(g.clone(), c.clone());
        }
        Ok(())
    }

    pub fn scale(&self, factor: &Rational) -> Chain {
        let mut out = Chain::zero(self.grade);
        if factor.is_zero() {
            return out;
        }
        for (g, c) in &self.terms {
            out.terms.insert(g.clone(), c * factor);
        }
        out
    }

    /// Keeps only the terms satisfying `keep`.
    pub fn filter(&self, mut keep: impl FnMut(&CanonicalGraph) -> bool) -> Chain {
        Chain {
            grade: self.grade,
            terms: self
                .terms
                .iter()
                .filter(|(g, _)| keep(g))
                .map(|(g, c)| (g.clone(), c.clone()))
                .collect(),
        }
    }

    /// Sum of absolute values of the coefficients.
    pub fn l1_norm(&self) -> Rational {
        self.terms.values().map(|c| c.abs()).sum()
    }

    pub(crate) fn from_terms(grade: Grade, terms: impl IntoIterator<Item = (CanonicalGraph, Rational)>) -> Chain {
        let mut chain = Chain::zero(grade);
        for (g, c) in terms {
            chain.add_term_unchecked(g, c);
        }
        chain
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_xk;
    use crate::rational::{int, ratio};

    #[test]
    fn vector_space_laws() {
        let (x5, o) = build_xk(5);
        let a = Chain::from_graph(&x5, &o).unwrap();
        let neg = Chain::from_graph(&x5, &o.negated(&x5)).unwrap();
        assert!(a.checked_add(&neg).unwrap().is_zero());
        assert_eq!(a.scale(&int(2)), a.checked_add(&a).unwrap());
        assert_eq!(a.scale(&ratio(1, 3)).scale(&int(3)), a);
        assert!(a.scale(&int(0)).is_zero());
        assert!(a.checked_sub(&a).unwrap().is_zero());
    }

    #[test]
    fn zero_graphs_are_never_stored() {
        let (x4, o) = build_xk(4);
        assert!(Chain::from_graph(&x4, &o).unwrap().is_zero());
    }

    #[test]
    fn mixed_grades_are_rejected() {
        let (x5, o5) = build_xk(5);
        let (x9, o9) = build_xk(9);
        let a = Chain::from_graph(&x5, &o5).unwrap();
        let b = Chain::from_graph(&x9, &o9).unwrap();
        assert!(matches!(a.checked_add(&b), Err(ChainError::GradeMismatch(..))));
        let mut c = a.clone();
        let (canon9, _) = canonicalize(&x9, &o9);
        assert!(c.add_term(canon9, int(1)).is_err());
    }

    #[test]
    fn grade_edges() {
        assert_eq!(Grade::new(1, 5, 5).edges(), Some(10));
        assert_eq!(Grade::new(0, 3, 2).edges(), Some(3));
    }
}
