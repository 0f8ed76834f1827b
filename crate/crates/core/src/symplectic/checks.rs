//! Identity checks behind `bracket-check` and `xi-check`.

use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::bivector::{e_kn, pi_n, xi, Bivector, WedgeB};
use super::bracket::{bracket, invariant_basis};
use super::{Letter, SymplecticError, TensorElement};
use crate::enumeration::{rank_over_q, SparseMatrixQ};
use crate::rational::{self, int, ratio, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BracketReport {
    pub n: usize,
    /// Largest Lie degree `i`; invariants have word length `i + 2`.
    pub max_degree: usize,
    pub invariants: usize,
    pub pairs_checked: usize,
    pub triples_checked: usize,
    pub bilinear: bool,
    pub antisymmetric: bool,
    pub invariant_output: bool,
    pub jacobi: bool,
    pub elapsed_ms: u64,
}

impl BracketReport {
    pub fn passed(&self) -> bool {
        self.bilinear && self.antisymmetric && self.invariant_output && self.jacobi
    }
}

fn sum3(a: TensorElement, b: TensorElement, c: TensorElement) -> Result<TensorElement, SymplecticError> {
    a.checked_add(&b)?.checked_add(&c)
}

/// Exhaustive checks on the basis invariants of Lie degree `1..=max_degree`
/// in `V_n`: antisymmetry on all pairs, Jacobi on all unordered triples.
pub fn bracket_check(n: usize, max_degree: usize) -> Result<BracketReport, SymplecticError> {
    let start = Instant::now();
    let basis: Vec<TensorElement> = (3..=max_degree + 2).flat_map(|l| invariant_basis(n, l)).collect();
    let m = basis.len();

    let pair_results: Vec<Result<(bool, bool), SymplecticError>> = (0..m)
        .into_par_iter()
        .flat_map_iter(|i| (i..m).map(move |j| (i, j)))
        .map(|(i, j)| {
            let xy = bracket(&basis[i], &basis[j])?;
            let yx = bracket(&basis[j], &basis[i])?;
            Ok((xy.checked_add(&yx)?.is_zero(), xy.is_cyclic_invariant()))
        })
        .collect();
    let mut antisymmetric = true;
    let mut invariant_output = true;
    for r in &pair_results {
        let (a, inv) = r.clone()?;
        antisymmetric &= a;
        invariant_output &= inv;
    }

    // bilinearity in the first slot along consecutive basis elements
    let mut bilinear = true;
    let (a, b) = (int(2), ratio(-1, 3));
    for i in 0..m {
        let (x, y, z) = (&basis[i], &basis[(i + 1) % m], &basis[(i + 2) % m]);
        if x.degree() != y.degree() {
            continue;
        }
        let lhs = bracket(&x.scale(&a).checked_add(&y.scale(&b))?, z)?;
        let rhs = bracket(x, z)?.scale(&a).checked_add(&bracket(y, z)?.scale(&b))?;
        bilinear &= lhs == rhs;
    }

    let triples: Vec<(usize, usize, usize)> = (0..m)
        .flat_map(|i| (i..m).flat_map(move |j| (j..m).map(move |k| (i, j, k))))
        .collect();
    let jacobi_results: Vec<Result<bool, SymplecticError>> = triples
        .par_iter()
        .map(|&(i, j, k)| {
            let (x, y, z) = (&basis[i], &basis[j], &basis[k]);
            let total = sum3(
                bracket(&bracket(x, y)?, z)?,
                bracket(&bracket(y, z)?, x)?,
                bracket(&bracket(z, x)?, y)?,
            )?;
            Ok(total.is_zero())
        })
        .collect();
    let mut jacobi = true;
    for r in jacobi_results {
        jacobi &= r?;
    }

    Ok(BracketReport {
        n,
        max_degree,
        invariants: m,
        pairs_checked: pair_results.len(),
        triples_checked: triples.len(),
        bilinear,
        antisymmetric,
        invariant_output,
        jacobi,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct XiReport {
    pub k: usize,
    pub n: usize,
    /// `ξ_{k,n}(e^k_n)` as `"p/q"`.
    pub e_value: String,
    pub e_expected: String,
    pub samples: usize,
    pub seed: u64,
    pub omega0_vanishing: bool,
    pub alternating: bool,
    pub reduction_invariant: bool,
    pub elapsed_ms: u64,
}

impl XiReport {
    pub fn passed(&self) -> bool {
        self.e_value == self.e_expected && self.omega0_vanishing && self.alternating && self.reduction_invariant
    }
}

/// A random bivector with at most `terms` small integer terms.
pub(crate) fn random_bivector(rng: &mut ChaCha8Rng, n: usize, terms: usize) -> Bivector {
    let mut out = Bivector::zero(n);
    let d = 2 * n as Letter;
    for _ in 0..terms {
        let a = rng.gen_range(0..d);
        let b = rng.gen_range(0..d);
        out.add(a, b, int(rng.gen_range(-2..=2)));
    }
    out
}

/// `ξ_{k,n}(e^k_n) = −2n`, plus randomized checks that `ξ` vanishes on
/// `ω_0 ∧ x_2 ∧ .. ∧ x_k`, flips sign when two wedge slots are swapped, and
/// does not see the `ω_0`-reduction of the slots.
pub fn xi_check(k: usize, n: usize, samples: usize, seed: u64) -> Result<XiReport, SymplecticError> {
    if n == 0 || n > 127 {
        return Err(SymplecticError::BadRank);
    }
    let start = Instant::now();
    let e_value = xi(k, n, &e_kn(k, n))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut omega0_vanishing = true;
    let mut alternating = true;
    let mut reduction_invariant = true;
    for _ in 0..samples {
        let slots: Vec<Bivector> = (0..k).map(|_| random_bivector(&mut rng, n, 3)).collect();
        let mut with_omega = slots.clone();
        with_omega[0] = Bivector::omega0(n);
        omega0_vanishing &= xi(k, n, &WedgeB::wedge(with_omega))?.is_zero();

        let w = WedgeB::wedge(slots.clone());
        let value = xi(k, n, &w)?;
        let i = rng.gen_range(0..k);
        let j = (i + rng.gen_range(1..k)) % k;
        let mut swapped = slots.clone();
        swapped.swap(i, j);
        alternating &= xi(k, n, &WedgeB::wedge(swapped))? == -value.clone();
        alternating &= xi(k, n, &w.swap_slots(i, j))? == -value.clone();

        reduction_invariant &= xi(k, n, &w.reduce())? == value;
    }
    Ok(XiReport {
        k,
        n,
        e_value: rational::to_string(&e_value),
        e_expected: rational::to_string(&int(-2 * n as i64)),
        samples,
        seed,
        omega0_vanishing,
        alternating,
        reduction_invariant,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Rank of `π_n` on the degree-four invariants, and `dim b_n`.
pub fn pi_surjectivity_rank(n: usize) -> Result<(usize, usize), SymplecticError> {
    let images: Vec<Vec<Rational>> = invariant_basis(n, 4)
        .iter()
        .map(|x| pi_n(x).map(|b| b.reduced_coordinates()))
        .collect::<Result<_, _>>()?;
    let dim = n * (2 * n - 1) - 1;
    let mut entries = Vec::new();
    for (r, row) in images.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            if !v.is_zero() {
                entries.push((r, c, v.clone()));
            }
        }
    }
    let m = SparseMatrixQ::new(images.len(), dim, entries).expect("valid coordinates");
    Ok((rank_over_q(&m), dim))
}
