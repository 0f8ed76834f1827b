//! Sparse rational matrices and exact rank.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("entry ({0}, {1}) lies outside a {2}x{3} matrix")]
    OutOfRange(usize, usize, usize, usize),
    #[error("entry ({0}, {1}) is given twice")]
    Duplicate(usize, usize),
    #[error("entry ({0}, {1}) is zero")]
    ExplicitZero(usize, usize),
}

/// A `rows × cols` matrix over `ℚ` in coordinate form, sorted by `(row, col)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrixQ {
    rows: usize,
    cols: usize,
    entries: Vec<(usize, usize, Rational)>,
}

impl SparseMatrixQ {
    pub fn new(rows: usize, cols: usize, mut entries: Vec<(usize, usize, Rational)>) -> Result<Self, LinalgError> {
        entries.sort_by_key(|(r, c, _)| (*r, *c));
        for (i, (r, c, v)) in entries.iter().enumerate() {
            if *r >= rows || *c >= cols {
                return Err(LinalgError::OutOfRange(*r, *c, rows, cols));
            }
            if v.is_zero() {
                return Err(LinalgError::ExplicitZero(*r, *c));
            }
            if i > 0 && entries[i - 1].0 == *r && entries[i - 1].1 == *c {
                return Err(LinalgError::Duplicate(*r, *c));
            }
        }
        Ok(SparseMatrixQ { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        SparseMatrixQ {
            rows,
            cols,
            entries: Vec::new(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[(usize, usize, Rational)] {
        &self.entries
    }

    pub fn get(&self, row: usize, col: usize) -> Rational {
        match self.entries.binary_search_by_key(&(row, col), |(r, c, _)| (*r, *c)) {
            Ok(i) => self.entries[i].2.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        let mut dense = vec![vec![Rational::zero(); self.cols]; self.rows];
        for (r, c, v) in &self.entries {
            dense[*r][*c] = v.clone();
        }
        dense
    }

    /// Product `self · other`, dense internally; meant for small checks.
    pub fn mul(&self, other: &SparseMatrixQ) -> SparseMatrixQ {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut by_row: HashMap<usize, Vec<(usize, &Rational)>> = HashMap::new();
        for (r, c, v) in &other.entries {
            by_row.entry(*r).or_default().push((*c, v));
        }
        let mut acc: HashMap<(usize, usize), Rational> = HashMap::new();
        for (r, k, a) in &self.entries {
            if let Some(row) = by_row.get(k) {
                for (c, b) in row {
                    *acc.entry((*r, *c)).or_insert_with(Rational::zero) += a * *b;
                }
            }
        }
        let entries = acc.into_iter().filter(|(_, v)| !v.is_zero()).map(|((r, c), v)| (r, c, v)).collect();
        SparseMatrixQ::new(self.rows, other.cols, entries).expect("product entries are valid")
    }
}

type IntRow = Vec<(usize, BigInt)>;

fn primitive(mut row: IntRow) -> IntRow {
    let mut g = BigInt::zero();
    for (_, v) in &row {
        g = g.gcd(v);
        if g.is_one() {
            break;
        }
    }
    if !g.is_one() && !g.is_zero() {
        for (_, v) in &mut row {
            *v /= &g;
        }
    }
    if row.first().is_some_and(|(_, v)| v.is_negative()) {
        for (_, v) in &mut row {
            *v = -&*v;
        }
    }
    row
}

/// `a_lead · row − row_lead · pivot`, which kills the leading entry of `row`.
fn eliminate(pivot: &IntRow, row: &IntRow) -> IntRow {
    let g = pivot[0].1.gcd(&row[0].1);
    let a = &pivot[0].1 / &g;
    let b = &row[0].1 / &g;
    let mut out = Vec::with_capacity(pivot.len() + row.len());
    let (mut i, mut j) = (1, 1);
    while i < pivot.len() || j < row.len() {
        let ci = pivot.get(i).map_or(usize::MAX, |e| e.0);
        let cj = row.get(j).map_or(usize::MAX, |e| e.0);
        if cj < ci {
            out.push((cj, &a * &row[j].1));
            j += 1;
        } else if ci < cj {
            out.push((ci, -(&b * &pivot[i].1)));
            i += 1;
        } else {
            let v = &a * &row[j].1 - &b * &pivot[i].1;
            if !v.is_zero() {
                out.push((ci, v));
            }
            i += 1;
            j += 1;
        }
    }
    primitive(out)
}

/// Exact rank over `ℚ`.
///
/// Rows are cleared of denominators, then reduced against a growing set of
/// pivot rows keyed by leading column, dividing out the content after every
/// step so coefficients stay small.
pub fn rank_over_q(matrix: &SparseMatrixQ) -> usize {
    let mut rows: Vec<IntRow> = vec![Vec::new(); matrix.rows];
    let mut denominators = vec![BigInt::one(); matrix.rows];
    for (r, _, v) in &matrix.entries {
        denominators[*r] = denominators[*r].lcm(v.denom());
    }
    for (r, c, v) in &matrix.entries {
        let scaled = v.numer() * (&denominators[*r] / v.denom());
        rows[*r].push((*c, scaled));
    }
    let mut rows: Vec<IntRow> = rows.into_iter().filter(|r| !r.is_empty()).map(primitive).collect();
    rows.sort_by_key(Vec::len);

    let mut pivots: HashMap<usize, IntRow> = HashMap::new();
    for mut row in rows {
        while let Some(&(lead, _)) = row.first() {
            match pivots.get(&lead) {
                Some(pivot) => row = eliminate(pivot, &row),
                None => {
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// Dense Gaussian elimination over `ℚ`; the reference implementation for
/// small matrices.
pub fn rank_over_q_dense(matrix: &SparseMatrixQ) -> usize {
    let mut m = matrix.to_dense();
    let mut rank = 0;
    for col in 0..matrix.cols {
        let Some(p) = (rank..matrix.rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][col].clone();
        for r in (rank + 1)..matrix.rows {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &pivot;
            for c in col..matrix.cols {
                let delta = &factor * &m[rank][c];
                m[r][c] -= delta;
            }
        }
        rank += 1;
    }
    rank
}
