//! The Lie bracket on cyclic invariants.

use std::collections::BTreeSet;

use super::{Letter, SymplecticError, TensorElement};

/// `[x, y]` for cyclic invariants `x` of degree `i + 2` and `y` of degree
/// `j + 2`: contract the first slot of `x` with the first slot of `y`, then
/// sum over rotations of the result.
///
/// Summing (rather than averaging) makes this the bracket of cyclic words
/// transported along `w ↦ Σ rotations of w`, which is what Jacobi needs.
pub fn bracket(x: &TensorElement, y: &TensorElement) -> Result<TensorElement, SymplecticError> {
    if x.n() != y.n() {
        return Err(SymplecticError::DimensionMismatch(x.n(), y.n()));
    }
    if !x.is_cyclic_invariant() || !y.is_cyclic_invariant() {
        return Err(SymplecticError::NotCyclicInvariant);
    }
    let lx = x.degree();
    if lx == 0 || y.degree() == 0 {
        return Err(SymplecticError::BadSlots {
            i: 1,
            j: lx + 1,
            degree: lx + y.degree(),
        });
    }
    Ok(x.tensor(y)?.contraction(1, lx + 1)?.cyclic_sum())
}

/// `Σ rotations of w` for one word per rotation class of length `len`, in
/// lexicographic order of the minimal rotation. A basis of the invariants.
pub fn invariant_basis(n: usize, len: usize) -> Vec<TensorElement> {
    let letters = 2 * n as u64;
    let mut classes = BTreeSet::new();
    let total = letters.pow(len as u32);
    for index in 0..total {
        let mut word: Vec<Letter> = Vec::with_capacity(len);
        let mut rest = index;
        for _ in 0..len {
            word.push((rest % letters) as Letter);
            rest /= letters;
        }
        let min = (0..len)
            .map(|r| {
                let mut w = word.clone();
                w.rotate_left(r);
                w
            })
            .min()
            .unwrap_or_default();
        classes.insert(min);
    }
    classes
        .into_iter()
        .map(|w| TensorElement::word(n, &w).cyclic_sum())
        .collect()
}
