//! Exact multilinear algebra on the symplectic space `V_n`.
//!
//! Basis letters are bytes: `p_i` is `i − 1` and `q_i` is `n + i − 1`, so
//! `ω(p_i, q_i) = 1 = −ω(q_i, p_i)` and `ω` vanishes on every other pair.
//! Tensors are sparse maps from words to exact rationals.

mod bivector;
mod bracket;
mod checks;
mod spiders;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use thiserror::Error;

use crate::rational::{int, Rational};

pub use bivector::{e_kn, pi_n, xi, Bivector, WedgeB};
pub use bracket::{bracket, invariant_basis};
pub use checks::{bracket_check, pi_surjectivity_rank, xi_check, BracketReport, XiReport};
pub use spiders::{pair_spiders_theta, SpiderPairing};

pub type Letter = u8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymplecticError {
    #[error("contraction slots ({i}, {j}) are invalid for degree {degree}")]
    BadSlots { i: usize, j: usize, degree: usize },
    #[error("operands live in V_{0} and V_{1}")]
    DimensionMismatch(usize, usize),
    #[error("operands have degrees {0} and {1}")]
    DegreeMismatch(usize, usize),
    #[error("expected a tensor of degree {expected}, got {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("input is not invariant under cyclic rotation")]
    NotCyclicInvariant,
    #[error("ξ_k is only defined for k = 5, 9, 13, ..; got {0}")]
    XiUndefined(usize),
    #[error("expected a {expected}-fold wedge, got {found}")]
    WedgeLength { expected: usize, found: usize },
    #[error("n must be positive and at most 127")]
    BadRank,
    #[error("search needs {needed} gluings, above the cap of {cap}")]
    ResourceCap { needed: usize, cap: usize },
}

/// `ω(a, b)` on basis letters of `V_n`.
pub fn omega(n: usize, a: Letter, b: Letter) -> i64 {
    let (a, b) = (a as usize, b as usize);
    if a < n && b == a + n {
        1
    } else if a >= n && a - n == b {
        -1
    } else {
        0
    }
}

pub fn p(n: usize, i: usize) -> Letter {
    assert!((1..=n).contains(&i));
    (i - 1) as Letter
}

pub fn q(n: usize, i: usize) -> Letter {
    assert!((1..=n).contains(&i));
    (n + i - 1) as Letter
}

pub(crate) fn letter_name(n: usize, a: Letter) -> String {
    let a = a as usize;
    if a < n {
        format!("p{}", a + 1)
    } else {
        format!("q{}", a - n + 1)
    }
}

/// A homogeneous element of `V_n^{⊗degree}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorElement {
    n: usize,
    degree: usize,
    terms: BTreeMap<Vec<Letter>, Rational>,
}

impl TensorElement {
    pub fn zero(n: usize, degree: usize) -> Self {
        TensorElement {
            n,
            degree,
            terms: BTreeMap::new(),
        }
    }

    /// A single basis word with coefficient one.
    pub fn word(n: usize, letters: &[Letter]) -> Self {
        assert!(letters.iter().all(|&a| (a as usize) < 2 * n), "letter outside V_{n}");
        let mut t = TensorElement::zero(n, letters.len());
        t.terms.insert(letters.to_vec(), int(1));
        t
    }

    /// The scalar `c`, a tensor of degree zero.
    pub fn scalar(n: usize, c: Rational) -> Self {
        let mut t = TensorElement::zero(n, 0);
        t.add_word(Vec::new(), c);
        t
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Letter>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, word: &[Letter]) -> Rational {
        self.terms.get(word).cloned().unwrap_or_else(Rational::zero)
    }

    /// The value of a degree-zero tensor.
    pub fn as_scalar(&self) -> Option<Rational> {
        (self.degree == 0).then(|| self.coefficient(&[]))
    }

    pub(crate) fn add_word(&mut self, word: Vec<Letter>, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &TensorElement) -> Result<(), SymplecticError> {
        if self.n != other.n {
            return Err(SymplecticError::DimensionMismatch(self.n, other.n));
        }
        if self.degree != other.degree {
            return Err(SymplecticError::DegreeMismatch(self.degree, other.degree));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &TensorElement) -> Result<TensorElement, SymplecticError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_word(w.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &TensorElement) -> Result<TensorElement, SymplecticError> {
        self.checked_add(&other.scale(&int(-1)))
    }

    pub fn scale(&self, c: &Rational) -> TensorElement {
        let mut out = TensorElement::zero(self.n, self.degree);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect();
        }
        out
    }

    /// `self ⊗ other`.
    pub fn tensor(&self, other: &TensorElement) -> Result<TensorElement, SymplecticError> {
        if self.n != other.n {
            return Err(SymplecticError::DimensionMismatch(self.n, other.n));
        }
        let mut out = TensorElement::zero(self.n, self.degree + other.degree);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mut w = a.clone();
                w.extend_from_slice(b);
                out.add_word(w, x * y);
            }
        }
        Ok(out)
    }

    /// `C_{i,j}` with 1-based slots `i < j`.
    pub fn contraction(&self, i: usize, j: usize) -> Result<TensorElement, SymplecticError> {
        if !(1 <= i && i < j && j <= self.degree) {
            return Err(SymplecticError::BadSlots {
                i,
                j,
                degree: self.degree,
            });
        }
        let mut out = TensorElement::zero(self.n, self.degree - 2);
        for (w, c) in &self.terms {
            let f = omega(self.n, w[i - 1], w[j - 1]);
            if f == 0 {
                continue;
            }
            let rest: Vec<Letter> = w
                .iter()
                .enumerate()
                .filter(|&(s, _)| s != i - 1 && s != j - 1)
                .map(|(_, &a)| a)
                .collect();
            out.add_word(rest, c * int(f));
        }
        Ok(out)
    }

    /// Moves the first `r` slots to the end.
    pub fn rotate(&self, r: usize) -> TensorElement {
        let mut out = TensorElement::zero(self.n, self.degree);
        if self.degree == 0 {
            return self.clone();
        }
        for (w, c) in &self.terms {
            let mut w = w.clone();
            w.rotate_left(r % self.degree);
            out.add_word(w, c.clone());
        }
        out
    }

    /// Sum over all rotations.
    pub fn cyclic_sum(&self) -> TensorElement {
        let mut out = TensorElement::zero(self.n, self.degree);
        for r in 0..self.degree.max(1) {
            for (w, c) in self.rotate(r).terms {
                out.add_word(w, c);
            }
        }
        out
    }

    /// Average over all rotations; a projection onto the invariants.
    pub fn cyclic_project(&self) -> TensorElement {
        self.cyclic_sum().scale(&Rational::new(1.into(), (self.degree.max(1) as i64).into()))
    }

    pub fn is_cyclic_invariant(&self) -> bool {
        self.degree == 0 || self.rotate(1) == *self
    }
}

impl fmt::Display for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (w, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            let word: Vec<String> = w.iter().map(|&a| letter_name(self.n, a)).collect();
            write!(f, "({}) {}", crate::rational::to_string(c), word.join("⊗"))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    #[test]
    fn omega_table() {
        for n in 1..=3 {
            for i in 1..=n {
                assert_eq!(omega(n, p(n, i), q(n, i)), 1);
                assert_eq!(omega(n, q(n, i), p(n, i)), -1);
            }
            for a in 0..2 * n as u8 {
                // antisymmetric, and every letter pairs with exactly one other
                assert_eq!((0..2 * n as u8).filter(|&b| omega(n, a, b) != 0).count(), 1);
                for b in 0..2 * n as u8 {
                    assert_eq!(omega(n, a, b), -omega(n, b, a));
                }
            }
        }
    }

    #[test]
    fn contractions() {
        let n = 2;
        let pq = TensorElement::word(n, &[p(n, 1), q(n, 1)]);
        assert_eq!(pq.contraction(1, 2).unwrap().as_scalar(), Some(int(1)));
        let pp = TensorElement::word(n, &[p(n, 1), p(n, 1)]);
        assert!(pp.contraction(1, 2).unwrap().is_zero());
        let x = TensorElement::word(n, &[p(n, 1), q(n, 2), q(n, 1)]);
        assert_eq!(x.contraction(1, 3).unwrap(), TensorElement::word(n, &[q(n, 2)]));
        assert!(x.contraction(2, 2).is_err());
        assert!(x.contraction(1, 4).is_err());
        assert!(x.contraction(0, 1).is_err());
    }

    #[test]
    fn cyclic_projection() {
        let n = 1;
        let pq = TensorElement::word(n, &[p(n, 1), q(n, 1)]);
        let expected = TensorElement::word(n, &[p(n, 1), q(n, 1)])
            .checked_add(&TensorElement::word(n, &[q(n, 1), p(n, 1)]))
            .unwrap()
            .scale(&ratio(1, 2));
        assert_eq!(pq.cyclic_project(), expected);
        assert_eq!(expected.cyclic_project(), expected);
        assert!(expected.is_cyclic_invariant());
        assert!(!pq.is_cyclic_invariant());
    }
}
