//! `Z_k`, `Θ_k` and the chain-level certificate.

use std::time::Instant;

use num_traits::Zero;
use serde::Serialize;

use super::{
    compositions_up_to_cycle, cyclic_symmetry_count, ornate_necklace, rational_ratio, MoritaError, NecklaceSpec,
};
use crate::canon::{canonicalize, CanonicalGraph};
use crate::chain::{boundary, boundary_of_graph, expansions, quotient_project, Chain, Grade};
use crate::graph::{build_xk, Orientation};
use crate::rational::{self, Rational};
use crate::sign::Sign;

fn check_theta_defined(k: usize) -> Result<(), MoritaError> {
    if k >= 5 && k % 4 == 1 {
        Ok(())
    } else {
        Err(MoritaError::ThetaUndefined(k))
    }
}

/// Canonical `X_k` and the sign `s` with `X_k (as drawn) = s · canonical`.
pub fn x_k_reference_sign(k: usize) -> (CanonicalGraph, Sign) {
    let (g, o) = build_xk(k);
    canonicalize(&g, &o)
}

/// `Θ_k(c)`: the coefficient of `X_k`, with `X_k` oriented by numbering the
/// vertices along the big loop and directing its edges the same way.
pub fn theta(k: usize, chain: &Chain) -> Result<Rational, MoritaError> {
    check_theta_defined(k)?;
    let expected = Grade::new(1, k, k);
    if chain.grade() != expected {
        return Err(MoritaError::Grade {
            expected,
            found: chain.grade(),
        });
    }
    let (x, sign) = x_k_reference_sign(k);
    Ok(chain.coefficient(&x) * sign.to_rational())
}

/// The cyclic classes of compositions of `k` with their coefficients
/// `(−1)^n / |i_1, .., i_n|` in `Z_k`.
pub fn z_coefficients(k: usize) -> Result<Vec<(NecklaceSpec, Rational)>, MoritaError> {
    if k < 3 || k % 2 == 0 {
        return Err(MoritaError::CycleUndefined(k));
    }
    Ok(compositions_up_to_cycle(k)
        .into_iter()
        .map(|spec| {
            let sign = if spec.parts().len() % 2 == 0 { 1 } else { -1 };
            let coeff = rational_ratio(sign, cyclic_symmetry_count(&spec));
            (spec, coeff)
        })
        .collect())
}

/// `Z_k = Σ (−1)^n [i_1, .., i_n] / |i_1, .., i_n|`, projected to the quotient
/// by cut-vertex graphs.
pub fn z_cycle(k: usize) -> Result<Chain, MoritaError> {
    let mut z = Chain::zero(Grade::new(1, k, k));
    for (spec, coeff) in z_coefficients(k)? {
        z.add_assign_chain(&ornate_necklace(&spec).scale(&coeff))
            .expect("necklaces share the grade");
    }
    Ok(quotient_project(&z))
}

/// Machine-readable outcome of the main chain-level checks for one `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Certificate {
    pub k: usize,
    pub x_k_nonzero: bool,
    pub cocycle_ok: bool,
    pub cycle_ok: bool,
    /// `Θ_k(Z_k)` as `"p/q"`.
    pub pairing: String,
    pub elapsed_ms: u64,
}

impl Certificate {
    /// The expected pairing `−1/k`.
    pub fn expected_pairing(&self) -> String {
        rational::to_string(&rational_ratio(-1, self.k))
    }

    pub fn passed(&self) -> bool {
        self.x_k_nonzero && self.cocycle_ok && self.cycle_ok && self.pairing == self.expected_pairing()
    }

    /// Names of the identities that failed.
    pub fn failures(&self) -> Vec<&'static str> {
        let mut out = Vec::new();
        if !self.x_k_nonzero {
            out.push("X_k is nonzero");
        }
        if !self.cocycle_ok {
            out.push("Theta_k(dY) = 0 for every expansion Y of X_k");
        }
        if !self.cycle_ok {
            out.push("d(Z_k) = 0 in the quotient complex");
        }
        if self.pairing != self.expected_pairing() {
            out.push("Theta_k(Z_k) = -1/k");
        }
        out
    }
}

/// `Θ_k(dY) = 0` for every one-edge expansion `Y` of `X_k`. Every graph whose
/// boundary can contain `X_k` is such an expansion.
fn cocycle_holds(k: usize) -> bool {
    let (x, _) = build_xk(k);
    expansions(&x).iter().all(|(y, _)| {
        let d = boundary_of_graph(y, &Orientation::standard(y)).expect("expansions are valid");
        theta(k, &d).expect("grade (1, k, k)").is_zero()
    })
}

/// Runs the four checks for `k ≡ 1 mod 4`, `k ≥ 5`.
pub fn verify_main_theorem(k: usize) -> Result<Certificate, MoritaError> {
    check_theta_defined(k)?;
    let start = Instant::now();
    let (x, _) = x_k_reference_sign(k);
    let cocycle_ok = cocycle_holds(k);
    let z = z_cycle(k)?;
    let cycle_ok = quotient_project(&boundary(&z)).is_zero();
    let pairing = theta(k, &z)?;
    Ok(Certificate {
        k,
        x_k_nonzero: !x.is_zero(),
        cocycle_ok,
        cycle_ok,
        pairing: rational::to_string(&pairing),
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

/// Cycle-only check, meaningful for every odd `k ≥ 3`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CycleReport {
    pub k: usize,
    pub terms: usize,
    pub cycle_ok: bool,
    pub elapsed_ms: u64,
}

pub fn verify_cycle(k: usize) -> Result<CycleReport, MoritaError> {
    let start = Instant::now();
    let z = z_cycle(k)?;
    let cycle_ok = quotient_project(&boundary(&z)).is_zero();
    Ok(CycleReport {
        k,
        terms: z.len(),
        cycle_ok,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use super::super::{ornate_necklace_with, Attachment, NecklaceSpec};
    use super::*;

    #[test]
    fn preconditions() {
        assert_eq!(verify_main_theorem(7), Err(MoritaError::ThetaUndefined(7)));
        assert_eq!(verify_main_theorem(1), Err(MoritaError::ThetaUndefined(1)));
        assert_eq!(z_cycle(4).unwrap_err(), MoritaError::CycleUndefined(4));
        assert_eq!(z_cycle(1).unwrap_err(), MoritaError::CycleUndefined(1));
        let z5 = z_cycle(5).unwrap();
        assert!(matches!(theta(9, &z5), Err(MoritaError::Grade { .. })));
    }

    #[test]
    fn k5_certificate() {
        let c = verify_main_theorem(5).unwrap();
        assert!(c.passed(), "{c:?}");
        assert_eq!(c.pairing, "-1/5");
    }

    #[test]
    fn z5_coefficients() {
        let got: Vec<(Vec<usize>, String)> = z_coefficients(5)
            .unwrap()
            .into_iter()
            .map(|(s, c)| (s.parts().to_vec(), rational::to_string(&c)))
            .collect();
        let want = [
            (vec![1, 1, 1, 1, 1], "-1/5"),
            (vec![1, 1, 1, 2], "1/1"),
            (vec![1, 1, 3], "-1/1"),
            (vec![1, 2, 2], "-1/1"),
            (vec![1, 4], "1/1"),
            (vec![2, 3], "1/1"),
            (vec![5], "-1/1"),
        ];
        let want: Vec<(Vec<usize>, String)> = want.iter().map(|(p, c)| (p.clone(), c.to_string())).collect();
        assert_eq!(got, want);
    }

    #[test]
    fn z3_is_a_cycle() {
        assert!(verify_cycle(3).unwrap().cycle_ok);
    }

    #[test]
    fn no_xk_outside_all_ones() {
        let s = NecklaceSpec::new(vec![2, 3]).unwrap();
        assert_eq!(theta(5, &ornate_necklace(&s)).unwrap(), Rational::zero());
    }

    #[test]
    fn other_attachments_fail_the_pinning_identities() {
        for reverse_leaves in [false, true] {
            for mirror in [false, true] {
                let a = Attachment { reverse_leaves, mirror };
                let mut z = Chain::zero(Grade::new(1, 5, 5));
                let mut shapes_ok = true;
                for spec in compositions_up_to_cycle(5) {
                    let n = spec.parts().len();
                    let coeff = rational_ratio(if n % 2 == 0 { 1 } else { -1 }, cyclic_symmetry_count(&spec));
                    for t in super::super::necklace_terms_with(&spec, a) {
                        shapes_ok &= t.graph.genus_punctures() == Ok((1, 5));
                    }
                    if shapes_ok {
                        z.add_assign_chain(&ornate_necklace_with(&spec, a).scale(&coeff)).unwrap();
                    }
                }
                let ones = &super::super::necklace_terms_with(&NecklaceSpec::new(vec![1; 5]).unwrap(), a)[0];
                let exact = (ones.graph.clone(), ones.orientation.clone()) == build_xk(5);
                let pinned = exact
                    && shapes_ok
                    && quotient_project(&boundary(&quotient_project(&z))).is_zero()
                    && theta(5, &z).unwrap() == rational_ratio(-1, 5);
                assert_eq!(pinned, a == Attachment::default(), "{a:?}");
            }
        }
    }
}
