//! Gluing degree-two invariants into ribbon graphs and reading off the
//! coefficient of `X_k`, for comparison with `ξ_{k,n}` of their `π_n` images.
//!
//! A length-four word is a four-legged vertex with its legs in word order.
//! Gluing two legs into an edge directed from the lower leg to the higher one
//! weighs the term by `ω` of their letters. Only `X_k` shapes matter, and in
//! `X_k` each vertex carries one loop on opposite legs with the other two legs
//! going to two different vertices, so only those gluings are generated.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::Instant;

use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;

use super::bivector::{pi_n, xi, WedgeB};
use super::{omega, Letter, SymplecticError, TensorElement};
use crate::canon::{canonical_code, canonicalize};
use crate::graph::{build_xk, Dart, Orientation, RibbonGraph};
use crate::rational::{self, int, Rational};
use crate::sign::Sign;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpiderPairing {
    pub k: usize,
    pub n: usize,
    /// `Θ_k` of the gluing, as `"p/q"`.
    pub lhs: String,
    /// `ξ_{k,n}(π_n x_1 ∧ .. ∧ π_n x_k)`, as `"p/q"`.
    pub rhs: String,
    /// `lhs / rhs` when `rhs ≠ 0`.
    pub ratio: Option<String>,
    pub gluings: usize,
    pub xk_matches: usize,
    pub elapsed_ms: u64,
}

/// Perfect matchings of `legs` where no edge joins a vertex to itself and no
/// two edges join the same pair of vertices.
fn simple_matchings(legs: &[usize], out: &mut Vec<Vec<[usize; 2]>>, current: &mut Vec<[usize; 2]>) {
    let Some((&first, rest)) = legs.split_first() else {
        out.push(current.clone());
        return;
    };
    for (idx, &other) in rest.iter().enumerate() {
        let (va, vb) = (first / 4, other / 4);
        if va == vb || current.iter().any(|e| (e[0] / 4).min(e[1] / 4) == va.min(vb) && (e[0] / 4).max(e[1] / 4) == va.max(vb)) {
            continue;
        }
        let remaining: Vec<usize> = rest.iter().enumerate().filter(|&(i, _)| i != idx).map(|(_, &l)| l).collect();
        current.push([first, other]);
        simple_matchings(&remaining, out, current);
        current.pop();
    }
}

fn double_factorial_odd(m: usize) -> usize {
    (1..=m).step_by(2).product()
}

/// One way of gluing `k` four-legged vertices into `X_k`, with the sign of
/// the glued orientation against the reference orientation of `X_k`.
struct Gluing {
    /// Partner of every leg.
    mate: Vec<usize>,
    theta: Sign,
}

fn xk_gluings(k: usize) -> Arc<Vec<Gluing>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Gluing>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().expect("cache lock").get(&k) {
        return hit.clone();
    }
    let (x, x_orientation) = build_xk(k);
    let target = canonical_code(&x);
    let (_, x_sign) = canonicalize(&x, &x_orientation);
    let rotation: Vec<Vec<Dart>> = (0..k).map(|v| (4 * v..4 * v + 4).collect()).collect();
    let found: Vec<Gluing> = (0..1usize << k)
        .into_par_iter()
        .flat_map_iter(|mask| {
            let mut loops = Vec::with_capacity(k);
            let mut free = Vec::with_capacity(2 * k);
            for v in 0..k {
                let shift = mask >> v & 1;
                loops.push([4 * v + shift, 4 * v + shift + 2]);
                free.push(4 * v + 1 - shift);
                free.push(4 * v + 3 - shift);
            }
            let mut matchings = Vec::new();
            simple_matchings(&free, &mut matchings, &mut Vec::new());
            let rotation = rotation.clone();
            let target = target.clone();
            matchings.into_iter().filter_map(move |m| {
                let pairing: Vec<[Dart; 2]> = loops.iter().chain(m.iter()).copied().collect();
                let g = RibbonGraph::new(rotation.clone(), pairing.clone()).ok()?;
                if canonical_code(&g) != target {
                    return None;
                }
                let (_, s) = canonicalize(&g, &Orientation::standard(&g));
                let mut mate = vec![0; 4 * k];
                for [a, b] in pairing {
                    mate[a] = b;
                    mate[b] = a;
                }
                Some(Gluing { mate, theta: s * x_sign })
            })
        })
        .collect();
    let found = Arc::new(found);
    cache.lock().expect("cache lock").insert(k, found.clone());
    found
}

/// Σ over word choices for vertices `v..` of the coefficient product times the
/// ω-weights of edges whose both legs are assigned, directed from the lower leg.
fn contract(
    shape: &Gluing,
    words: &[Vec<(&Vec<Letter>, &Rational)>],
    n: usize,
    v: usize,
    letters: &mut [Letter],
) -> Rational {
    if v == words.len() {
        return int(1);
    }
    let mut total = Rational::zero();
    'words: for (w, c) in &words[v] {
        let mut weight = 1;
        for s in 0..4 {
            letters[4 * v + s] = w[s];
        }
        for s in 0..4 {
            let leg = 4 * v + s;
            let other = shape.mate[leg];
            if other < leg {
                weight *= omega(n, letters[other], letters[leg]);
                if weight == 0 {
                    continue 'words;
                }
            }
        }
        let rest = contract(shape, words, n, v + 1, letters);
        if !rest.is_zero() {
            total += *c * rest * int(weight);
        }
    }
    total
}

/// Compares `Θ_k` on the gluing of `x_1 ∧ .. ∧ x_k` (cyclic invariants of
/// degree four) with `ξ_{k,n}` of their `π_n` images. The two agree up to one
/// global sign; both values are reported. `cap` bounds the number of gluings.
pub fn pair_spiders_theta(
    k: usize,
    slots: &[TensorElement],
    cap: usize,
) -> Result<SpiderPairing, SymplecticError> {
    if k < 5 || k % 4 != 1 {
        return Err(SymplecticError::XiUndefined(k));
    }
    if slots.len() != k {
        return Err(SymplecticError::WedgeLength {
            expected: k,
            found: slots.len(),
        });
    }
    let n = slots[0].n();
    if n == 0 || n > 127 {
        return Err(SymplecticError::BadRank);
    }
    for s in slots {
        if s.n() != n {
            return Err(SymplecticError::DimensionMismatch(n, s.n()));
        }
        if s.degree() != 4 {
            return Err(SymplecticError::WrongDegree {
                expected: 4,
                found: s.degree(),
            });
        }
        if !s.is_cyclic_invariant() {
            return Err(SymplecticError::NotCyclicInvariant);
        }
    }
    let start = Instant::now();

    let images = slots.iter().map(pi_n).collect::<Result<Vec<_>, _>>()?;
    let rhs = xi(k, n, &WedgeB::wedge(images))?;

    let candidates = (1usize << k).saturating_mul(double_factorial_odd(2 * k - 1));
    let gluings = slots.iter().fold(candidates, |acc, s| acc.saturating_mul(s.terms().len()));
    if gluings > cap {
        return Err(SymplecticError::ResourceCap { needed: gluings, cap });
    }

    let shapes = xk_gluings(k);
    let words: Vec<Vec<(&Vec<Letter>, &Rational)>> = slots.iter().map(|s| s.terms().iter().collect()).collect();
    let lhs = shapes
        .par_iter()
        .map(|shape| {
            let mut letters = vec![0; 4 * k];
            shape.theta.to_rational() * contract(shape, &words, n, 0, &mut letters)
        })
        .reduce(Rational::zero, |a, b| a + b);
    let xk_matches = shapes.len();
    let ratio = (!rhs.is_zero()).then(|| rational::to_string(&(&lhs / &rhs)));
    Ok(SpiderPairing {
        k,
        n,
        lhs: rational::to_string(&lhs),
        rhs: rational::to_string(&rhs),
        ratio,
        gluings,
        xk_matches,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::*;

    /// `Σ rotations of (a, b, ā, c) + (a', b', ā', c')` with `ā` the ω-partner
    /// of `a`, so the `π_n` image has a chance to survive.
    fn random_spider(rng: &mut ChaCha8Rng, n: usize) -> TensorElement {
        let d = 2 * n as Letter;
        let partner = |a: Letter| (a + n as Letter) % d;
        let mut t = TensorElement::zero(n, 4);
        for _ in 0..2 {
            let a = rng.gen_range(0..d);
            let w = [a, rng.gen_range(0..d), partner(a), rng.gen_range(0..d)];
            let c = int(rng.gen_range(1..=3));
            t = t.checked_add(&TensorElement::word(n, &w).scale(&c)).unwrap();
        }
        t.cyclic_sum()
    }

    #[test]
    fn zero_input_gives_zero() {
        let slots = vec![TensorElement::zero(1, 4); 5];
        let r = pair_spiders_theta(5, &slots, 1 << 30).unwrap();
        assert_eq!((r.lhs.as_str(), r.rhs.as_str()), ("0/1", "0/1"));
    }

    #[test]
    fn rejects_bad_input() {
        let slots = vec![TensorElement::zero(1, 4); 4];
        assert!(pair_spiders_theta(5, &slots, 1 << 30).is_err());
        assert!(pair_spiders_theta(7, &slots, 1 << 30).is_err());
        let slots = vec![TensorElement::zero(1, 3); 5];
        assert!(pair_spiders_theta(5, &slots, 1 << 30).is_err());
    }

    #[test]
    fn ratio_is_a_global_sign() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mut ratios = std::collections::BTreeSet::new();
        let mut nonzero = 0;
        for _ in 0..40 {
            let n = 2;
            let slots: Vec<_> = (0..5).map(|_| random_spider(&mut rng, n)).collect();
            let r = pair_spiders_theta(5, &slots, 1 << 30).unwrap();
            match r.ratio {
                Some(q) => {
                    nonzero += 1;
                    ratios.insert(q);
                }
                None => assert_eq!(r.lhs, "0/1", "{r:?}"),
            }
        }
        eprintln!("ratios {ratios:?} over {nonzero} nonzero samples");
        assert!(nonzero > 0);
        assert_eq!(ratios.len(), 1);
    }
}
