//! `b_n = Λ²V_n / ℚω_0`, wedges of its elements, `π_n` and `ξ_{k,n}`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::{letter_name, omega, Letter, SymplecticError, TensorElement};
use crate::rational::{int, Rational};
use crate::sign::Sign;

/// An element of `Λ²V_n`, as coefficients on `a ∧ b` with `a < b`.
///
/// It sits inside `V_n ⊗ V_n` as `Σ c (a⊗b − b⊗a)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Bivector {
    n: usize,
    terms: BTreeMap<(Letter, Letter), Rational>,
}

impl Bivector {
    pub fn zero(n: usize) -> Self {
        Bivector {
            n,
            terms: BTreeMap::new(),
        }
    }

    /// `a ∧ b`.
    pub fn wedge(n: usize, a: Letter, b: Letter) -> Self {
        let mut out = Bivector::zero(n);
        out.add(a, b, int(1));
        out
    }

    /// `ω_0 = Σ p_i ∧ q_i`.
    pub fn omega0(n: usize) -> Self {
        let mut out = Bivector::zero(n);
        for i in 0..n {
            out.add(i as Letter, (n + i) as Letter, int(1));
        }
        out
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<(Letter, Letter), Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Adds `c · a∧b`.
    pub fn add(&mut self, a: Letter, b: Letter, c: Rational) {
        if a == b || c.is_zero() {
            return;
        }
        let (key, c) = if a < b { ((a, b), c) } else { ((b, a), -c) };
        let slot = self.terms.entry(key).or_insert_with(Rational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn plus(&self, other: &Bivector) -> Bivector {
        let mut out = self.clone();
        for (&(a, b), c) in &other.terms {
            out.add(a, b, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &Rational) -> Bivector {
        let mut out = Bivector::zero(self.n);
        if !c.is_zero() {
            out.terms = self.terms.iter().map(|(k, v)| (*k, v * c)).collect();
        }
        out
    }

    /// Representative in the complement of `ω_0` cut out by the coefficient
    /// of `p_1 ∧ q_1`: subtracts that coefficient times `ω_0`.
    pub fn reduce_mod_omega0(&self) -> Bivector {
        let pivot = (0, self.n as Letter);
        match self.terms.get(&pivot) {
            None => self.clone(),
            Some(c) => self.plus(&Bivector::omega0(self.n).scale(&-c.clone())),
        }
    }

    /// Equal in `b_n`.
    pub fn equivalent(&self, other: &Bivector) -> bool {
        self.reduce_mod_omega0() == other.reduce_mod_omega0()
    }

    /// The `2n × 2n` matrix `M` with `self = Σ M[a][b] a⊗b`.
    pub fn matrix(&self) -> Vec<Vec<Rational>> {
        let d = 2 * self.n;
        let mut m = vec![vec![Rational::zero(); d]; d];
        for (&(a, b), c) in &self.terms {
            m[a as usize][b as usize] = c.clone();
            m[b as usize][a as usize] = -c.clone();
        }
        m
    }

    /// Image in `V_n ⊗ V_n`.
    pub fn to_tensor(&self) -> TensorElement {
        let mut t = TensorElement::zero(self.n, 2);
        for (&(a, b), c) in &self.terms {
            t.add_word(vec![a, b], c.clone());
            t.add_word(vec![b, a], -c.clone());
        }
        t
    }

    /// Coordinates on the basis `a∧b`, `a < b`, without `p_1 ∧ q_1`, after
    /// reduction. The basis has `dim b_n = n(2n − 1) − 1` elements.
    pub fn reduced_coordinates(&self) -> Vec<Rational> {
        let r = self.reduce_mod_omega0();
        let d = 2 * self.n as Letter;
        let mut out = Vec::new();
        for a in 0..d {
            for b in (a + 1)..d {
                if (a, b) != (0, self.n as Letter) {
                    out.push(r.terms.get(&(a, b)).cloned().unwrap_or_else(Rational::zero));
                }
            }
        }
        out
    }
}

impl std::fmt::Display for Bivector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(&(a, b), c)| format!("({}) {}∧{}", crate::rational::to_string(c), letter_name(self.n, a), letter_name(self.n, b)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// An element of `b_n^{⊗k}`, kept as a sum of pure tensors. Wedges are
/// stored through [`WedgeB::wedge`], which antisymmetrizes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedgeB {
    n: usize,
    k: usize,
    terms: Vec<(Rational, Vec<Bivector>)>,
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for rest in permutations(k - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, k - 1);
            out.push(p);
        }
    }
    out
}

impl WedgeB {
    pub fn zero(n: usize, k: usize) -> Self {
        WedgeB { n, k, terms: Vec::new() }
    }

    /// The pure tensor `x_1 ⊗ .. ⊗ x_k`.
    pub fn tensor(slots: Vec<Bivector>) -> Self {
        let n = slots.first().map_or(1, Bivector::n);
        assert!(slots.iter().all(|s| s.n() == n), "slots from different V_n");
        WedgeB {
            n,
            k: slots.len(),
            terms: vec![(int(1), slots)],
        }
    }

    /// `x_1 ∧ .. ∧ x_k = (1/k!) Σ_σ sign(σ) x_σ(1) ⊗ .. ⊗ x_σ(k)`.
    pub fn wedge(slots: Vec<Bivector>) -> Self {
        let n = slots.first().map_or(1, Bivector::n);
        let k = slots.len();
        let perms = permutations(k);
        let norm = Rational::new(1.into(), (perms.len() as i64).into());
        let terms = perms
            .into_iter()
            .map(|perm| {
                let c = Sign::of_permutation(&perm).to_rational() * &norm;
                (c, perm.iter().map(|&i| slots[i].clone()).collect())
            })
            .collect();
        WedgeB { n, k, terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn terms(&self) -> &[(Rational, Vec<Bivector>)] {
        &self.terms
    }

    pub fn plus(&self, other: &WedgeB) -> WedgeB {
        assert_eq!((self.n, self.k), (other.n, other.k));
        let mut out = self.clone();
        out.terms.extend(other.terms.iter().cloned());
        out
    }

    pub fn scale(&self, c: &Rational) -> WedgeB {
        WedgeB {
            n: self.n,
            k: self.k,
            terms: self.terms.iter().map(|(x, s)| (x * c, s.clone())).collect(),
        }
    }

    /// Swaps slots `i` and `j` (0-based) in every term.
    pub fn swap_slots(&self, i: usize, j: usize) -> WedgeB {
        let mut out = self.clone();
        for (_, slots) in &mut out.terms {
            slots.swap(i, j);
        }
        out
    }

    /// Replaces every slot by its reduced representative.
    pub fn reduce(&self) -> WedgeB {
        WedgeB {
            n: self.n,
            k: self.k,
            terms: self
                .terms
                .iter()
                .map(|(c, s)| (c.clone(), s.iter().map(Bivector::reduce_mod_omega0).collect()))
                .collect(),
        }
    }

    /// Full expansion into `V_n^{⊗2k}`. Exponential in `k`; for checks.
    pub fn to_tensor(&self) -> TensorElement {
        let mut out = TensorElement::zero(self.n, 2 * self.k);
        for (c, slots) in &self.terms {
            let mut t = TensorElement::scalar(self.n, c.clone());
            for s in slots {
                t = t.tensor(&s.to_tensor()).expect("same n");
            }
            out = out.checked_add(&t).expect("same shape");
        }
        out
    }
}

/// `e^k_n`, taken as the diagonal representative `Σ_i (p_i∧q_i)^{⊗k}`. The
/// literal wedge of equal factors vanishes; this is the `k`-gon element whose
/// `ξ`-value is the nonzero invariant.
pub fn e_kn(k: usize, n: usize) -> WedgeB {
    let mut out = WedgeB::zero(n, k);
    for i in 0..n {
        let x = Bivector::wedge(n, i as Letter, (n + i) as Letter);
        out.terms.push((int(1), vec![x; k]));
    }
    out
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let d = a.len();
    let mut out = vec![vec![Rational::zero(); d]; d];
    for i in 0..d {
        for l in 0..d {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..d {
                if !b[l][j].is_zero() {
                    out[i][j] += &a[i][l] * &b[l][j];
                }
            }
        }
    }
    out
}

/// `ξ_{k,n}`: the `k`-gon contraction `ω(v_2,v_3) ω(v_4,v_5) .. ω(v_2k,v_1)` of
/// the embedded tensor. On a pure tensor with matrices `M_j` this is
/// `tr(M_1 Ω M_2 Ω .. M_k Ω)` with `Ω[b][a] = ω(b, a)`.
pub fn xi(k: usize, n: usize, w: &WedgeB) -> Result<Rational, SymplecticError> {
    if k < 5 || k % 4 != 1 {
        return Err(SymplecticError::XiUndefined(k));
    }
    if w.k != k {
        return Err(SymplecticError::WedgeLength { expected: k, found: w.k });
    }
    if w.n != n {
        return Err(SymplecticError::DimensionMismatch(n, w.n));
    }
    let d = 2 * n;
    let omega_matrix: Vec<Vec<Rational>> = (0..d)
        .map(|b| (0..d).map(|a| int(omega(n, b as Letter, a as Letter))).collect())
        .collect();
    let mut total = Rational::zero();
    for (c, slots) in &w.terms {
        if c.is_zero() {
            continue;
        }
        let mut acc: Vec<Vec<Rational>> = (0..d)
            .map(|i| (0..d).map(|j| if i == j { Rational::one() } else { Rational::zero() }).collect())
            .collect();
        for s in slots {
            acc = mat_mul(&mat_mul(&acc, &s.matrix()), &omega_matrix);
        }
        let trace: Rational = (0..d).map(|i| acc[i][i].clone()).sum();
        total += c * trace;
    }
    Ok(total)
}

/// `π_n` on degree-four cyclic invariants:
/// `h_1⊗h_2⊗h_3⊗h_4 ↦ ω(h_1, h_3) h_2∧h_4`, reduced modulo `ω_0`.
pub fn pi_n(x: &TensorElement) -> Result<Bivector, SymplecticError> {
    if x.degree() != 4 {
        return Err(SymplecticError::WrongDegree { expected: 4, found: x.degree() });
    }
    if !x.is_cyclic_invariant() {
        return Err(SymplecticError::NotCyclicInvariant);
    }
    let n = x.n();
    let mut out = Bivector::zero(n);
    for (w, c) in x.terms() {
        let f = omega(n, w[0], w[2]);
        if f != 0 {
            out.add(w[1], w[3], c * int(f));
        }
    }
    Ok(out.reduce_mod_omega0())
}

#[cfg(test)]
mod tests {
    use super::super::{p, q};
    use super::*;
    use crate::rational::ratio;

    /// `ξ` straight from the definition: `−(C_{1,2})^{k−1} ∘ C_{1,2k}` on the
    /// fully expanded tensor (`ω(v_2k, v_1) = −ω(v_1, v_2k)`).
    fn xi_oracle(k: usize, w: &WedgeB) -> Rational {
        let mut t = w.to_tensor().contraction(1, 2 * k).unwrap();
        for _ in 0..(k - 1) {
            t = t.contraction(1, 2).unwrap();
        }
        -t.as_scalar().unwrap()
    }

    #[test]
    fn e_kn_values() {
        for n in 1..=3 {
            assert_eq!(xi(5, n, &e_kn(5, n)).unwrap(), int(-2 * n as i64));
            assert_eq!(xi_oracle(5, &e_kn(5, n)), int(-2 * n as i64));
        }
        assert_eq!(e_kn(5, 2).terms().len(), 2);
        assert_eq!(e_kn(5, 1).terms().len(), 1);
        assert_eq!(xi(9, 2, &e_kn(9, 2)).unwrap(), int(-4));
    }

    #[test]
    fn xi_rejects_bad_k() {
        for k in [1, 3, 4, 7, 11] {
            assert_eq!(xi(k, 1, &e_kn(k, 1)), Err(SymplecticError::XiUndefined(k)));
        }
        assert!(matches!(xi(5, 1, &e_kn(9, 1)), Err(SymplecticError::WedgeLength { .. })));
    }

    #[test]
    fn xi_matches_oracle_on_sparse_wedges() {
        let n = 2;
        let slots = vec![
            Bivector::wedge(n, p(n, 1), p(n, 2)),
            Bivector::wedge(n, q(n, 1), q(n, 2)),
            Bivector::wedge(n, p(n, 1), q(n, 2)),
            Bivector::wedge(n, p(n, 2), q(n, 1)),
            Bivector::wedge(n, p(n, 2), q(n, 2)),
        ];
        let w = WedgeB::wedge(slots);
        assert_eq!(xi(5, n, &w).unwrap(), xi_oracle(5, &w));
    }

    #[test]
    fn pi_on_a_projected_word() {
        let n = 2;
        let x = TensorElement::word(n, &[p(n, 1), p(n, 2), q(n, 1), q(n, 2)]).cyclic_project();
        // rotations 0 and 2 contribute p2∧q2 and −(q2∧p2)... see the sum:
        // (1/4)[ω(p1,q1) p2∧q2 + ω(q1,p1) q2∧p2] = (1/2) p2∧q2, and the other
        // two rotations pair p2 with q2 across slots 1, 3 giving −(1/2) p1∧q1
        let mut expected = Bivector::wedge(n, p(n, 2), q(n, 2)).scale(&ratio(1, 2));
        expected.add(p(n, 1), q(n, 1), ratio(-1, 2));
        assert_eq!(pi_n(&x).unwrap(), expected.reduce_mod_omega0());
        assert!(pi_n(&x).unwrap().equivalent(&Bivector::wedge(n, p(n, 2), q(n, 2))));
    }

    #[test]
    fn pi_rejects_bad_input() {
        let n = 1;
        let raw = TensorElement::word(n, &[p(n, 1), p(n, 1), q(n, 1), p(n, 1)]);
        assert_eq!(pi_n(&raw), Err(SymplecticError::NotCyclicInvariant));
        let short = TensorElement::word(n, &[p(n, 1), q(n, 1)]).cyclic_project();
        assert!(matches!(pi_n(&short), Err(SymplecticError::WrongDegree { .. })));
    }

    #[test]
    fn reduction() {
        let n = 2;
        let w0 = Bivector::omega0(n);
        assert!(w0.reduce_mod_omega0().is_zero());
        let x = Bivector::wedge(n, p(n, 1), q(n, 1));
        assert!(x.equivalent(&Bivector::wedge(n, q(n, 2), p(n, 2))));
        assert_eq!(Bivector::zero(3).reduced_coordinates().len(), 14);
    }
}
