//! Boundary matrices, Betti numbers and Euler characteristics.

use std::collections::BTreeMap;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::linalg::{rank_over_q, SparseMatrixQ};
use super::{EnumerationError, Enumerator, GradedBasis};
use crate::chain::contract::boundary_terms;
use crate::rational::Rational;

/// One grade of a Betti table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiRow {
    /// Number of vertices.
    pub k: usize,
    /// Degree of the matching cohomology group of the moduli space.
    pub cohomological_degree: i64,
    pub dim: usize,
    /// Rank of the differential leaving this grade.
    pub rank: usize,
    pub betti: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    pub genus: usize,
    pub punctures: usize,
    pub rows: Vec<BettiRow>,
}

impl BettiTable {
    pub fn betti(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.betti).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating(self.rows.iter().map(|r| r.dim))
    }

    pub fn betti_euler_characteristic(&self) -> i64 {
        alternating(self.rows.iter().map(|r| r.betti))
    }
}

fn alternating(values: impl Iterator<Item = usize>) -> i64 {
    values
        .enumerate()
        .map(|(k, v)| if k % 2 == 0 { v as i64 } else { -(v as i64) })
        .sum()
}

/// Matrix of `d` from `source` (columns) to `target` (rows).
pub(crate) fn matrix_between(source: &GradedBasis, target: &GradedBasis) -> Result<SparseMatrixQ, EnumerationError> {
    let columns: Vec<Result<Vec<(usize, usize, Rational)>, EnumerationError>> = source
        .graphs
        .par_iter()
        .enumerate()
        .map(|(col, g)| {
            let mut acc: BTreeMap<usize, Rational> = BTreeMap::new();
            for (h, sign) in boundary_terms(g.graph(), &g.orientation()) {
                let row = target.index_of(&h).ok_or_else(|| {
                    EnumerationError::Internal(format!(
                        "boundary of basis graph {col} in grade {} leaves the basis of {}",
                        source.grade, target.grade
                    ))
                })?;
                *acc.entry(row).or_insert_with(Rational::zero) += sign.to_rational();
            }
            Ok(acc
                .into_iter()
                .filter(|(_, v)| !v.is_zero())
                .map(|(row, v)| (row, col, v))
                .collect())
        })
        .collect();
    let mut entries = Vec::new();
    for column in columns {
        entries.extend(column?);
    }
    SparseMatrixQ::new(target.len(), source.len(), entries).map_err(|e| EnumerationError::Internal(e.to_string()))
}

impl Enumerator {
    /// Matrix of `d: r𝒢[k] → r𝒢[k−1]` in the canonical bases.
    pub fn boundary_matrix(&mut self, genus: usize, punctures: usize, vertices: usize) -> Result<SparseMatrixQ, EnumerationError> {
        let source = self.basis(genus, punctures, vertices)?;
        let target = self.basis(genus, punctures, vertices.saturating_sub(1))?;
        if vertices <= 1 {
            return Ok(SparseMatrixQ::zero(0, source.len()));
        }
        matrix_between(&source, &target)
    }

    /// Betti numbers for `k = 0..=2(2g−2+m)`, with cohomological degrees.
    pub fn betti_numbers(&mut self, genus: usize, punctures: usize) -> Result<BettiTable, EnumerationError> {
        let top = Self::top_vertex_count(genus, punctures);
        let bases: Vec<GradedBasis> = (0..=top).map(|k| self.basis(genus, punctures, k)).collect::<Result<_, _>>()?;
        // ranks[k] = rank of d_k; d_0 and d_{top+1} vanish
        let mut ranks = vec![0; top + 2];
        for k in 2..=top {
            ranks[k] = rank_over_q(&matrix_between(&bases[k], &bases[k - 1])?);
        }
        let rows = (0..=top)
            .map(|k| {
                let dim = bases[k].len();
                BettiRow {
                    k,
                    cohomological_degree: (4 * genus + 2 * punctures) as i64 - 4 - k as i64,
                    dim,
                    rank: ranks[k],
                    betti: dim - ranks[k] - ranks[k + 1],
                }
            })
            .collect();
        Ok(BettiTable {
            genus,
            punctures,
            rows,
        })
    }

    /// `Σ_k (−1)^k dim r𝒢[k]`.
    pub fn euler_characteristic(&mut self, genus: usize, punctures: usize) -> Result<i64, EnumerationError> {
        let top = Self::top_vertex_count(genus, punctures);
        let mut chi = 0;
        for k in 1..=top {
            let dim = self.dimension(genus, punctures, k)? as i64;
            chi += if k % 2 == 0 { dim } else { -dim };
        }
        Ok(chi)
    }
}

/// `boundary_matrix(g, m, k)` with the default resource cap.
pub fn boundary_matrix(genus: usize, punctures: usize, vertices: usize) -> Result<SparseMatrixQ, EnumerationError> {
    Enumerator::default().boundary_matrix(genus, punctures, vertices)
}

/// `betti_numbers(g, m)` with the default resource cap.
pub fn betti_numbers(genus: usize, punctures: usize) -> Result<BettiTable, EnumerationError> {
    Enumerator::default().betti_numbers(genus, punctures)
}

/// `euler_characteristic(g, m)` with the default resource cap.
pub fn euler_characteristic(genus: usize, punctures: usize) -> Result<i64, EnumerationError> {
    Enumerator::default().euler_characteristic(genus, punctures)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_one_one_puncture() {
        let table = betti_numbers(1, 1).unwrap();
        assert_eq!(table.betti(), vec![0, 0, 1]);
        assert_eq!(table.rows[2].cohomological_degree, 0);
        assert_eq!(euler_characteristic(1, 1).unwrap(), 1);
    }

    #[test]
    fn d_squared_vanishes_on_small_families() {
        let mut e = Enumerator::default();
        for (g, m) in [(0, 3), (0, 4), (1, 1), (1, 2), (0, 5), (2, 1)] {
            for k in 3..=Enumerator::top_vertex_count(g, m) {
                let upper = e.boundary_matrix(g, m, k).unwrap();
                let lower = e.boundary_matrix(g, m, k - 1).unwrap();
                assert_eq!(lower.mul(&upper).nnz(), 0, "({g}, {m}, {k})");
            }
        }
    }

    #[test]
    fn betti_and_dimension_alternating_sums_agree() {
        for (g, m) in [(0, 3), (0, 4), (1, 2), (0, 5)] {
            let t = betti_numbers(g, m).unwrap();
            assert_eq!(t.euler_characteristic(), t.betti_euler_characteristic());
        }
    }
}
