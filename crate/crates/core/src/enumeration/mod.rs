//! Exhaustive generation of ribbon graphs by genus, punctures and vertex count.
//!
//! Two independent strategies are implemented.
//!
//! - **Expansion** (the production path): every connected graph with two or
//!   more vertices has a non-loop edge, and contracting it preserves `(g, m)`
//!   and keeps every valency at least three. So the graphs with `k + 1`
//!   vertices are exactly the one-edge expansions of the graphs with `k`
//!   vertices, starting from the one-vertex chord diagrams.
//! - **Rotation assignment**: fix the rotation as consecutive blocks for each
//!   degree sequence (a partition of `2E` into `k` parts of size at least
//!   three) and run over every pairing of the darts. Exponential, used only to
//!   cross-check small grades.
//!
//! Both deduplicate with canonical codes. Zero graphs (those with an
//! orientation-reversing automorphism) are kept while generating, because
//! nonzero graphs can expand from them, and dropped from [`GradedBasis`].

mod cache;
mod homology;
mod linalg;

use std::collections::{BTreeSet, HashMap, HashSet};
use std::path::PathBuf;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::canon::{canonical_code, CanonicalGraph};
use crate::chain::expand::split_vertex;
use crate::chain::Grade;
use crate::graph::RibbonGraph;

pub use cache::{BasisCache, CACHE_FORMAT_VERSION};
pub use homology::{
    betti_numbers, boundary_matrix, euler_characteristic, BettiRow, BettiTable,
};
pub use linalg::{rank_over_q, rank_over_q_dense, LinalgError, SparseMatrixQ};

/// Default bound on the number of darts in any generated grade.
pub const DEFAULT_MAX_DARTS: usize = 30;

#[derive(Debug, Error)]
pub enum EnumerationError {
    #[error("grade {grade} needs {darts} darts, above the cap of {cap}")]
    ResourceCap { grade: Grade, darts: usize, cap: usize },
    #[error("invalid grade {0}: {1}")]
    InvalidGrade(Grade, &'static str),
    #[error("internal inconsistency: {0}")]
    Internal(String),
    #[error("cache: {0}")]
    Cache(String),
}

/// The nonzero isomorphism classes in one grade, sorted by canonical code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedBasis {
    pub grade: Grade,
    pub graphs: Vec<CanonicalGraph>,
}

impl GradedBasis {
    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    /// Position of `graph` in the basis.
    pub fn index_of(&self, graph: &CanonicalGraph) -> Option<usize> {
        self.graphs.binary_search(graph).ok()
    }
}

/// Per-grade counts, handy for reports.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradeCount {
    pub vertices: usize,
    pub edges: usize,
    pub isomorphism_classes: usize,
    pub nonzero: usize,
}

/// A canonical code stored compactly, with its zero flag. The code alone
/// determines the canonical graph.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct ClassCode {
    code: Box<[u16]>,
    is_zero: bool,
}

impl ClassCode {
    fn materialize(&self) -> CanonicalGraph {
        let code: Vec<u32> = self.code.iter().map(|&c| c as u32).collect();
        CanonicalGraph::from_code(&code)
    }
}

fn compact(code: &[u32]) -> Box<[u16]> {
    code.iter().map(|&c| c as u16).collect()
}

/// Generates and memoizes the graphs of each `(g, m)` family.
#[derive(Debug)]
pub struct Enumerator {
    max_darts: usize,
    cache: Option<BasisCache>,
    /// `(g, m)` → level `k - 1` → every class with `k` vertices, zero or not.
    families: HashMap<(usize, usize), Vec<Vec<ClassCode>>>,
}

impl Default for Enumerator {
    fn default() -> Self {
        Enumerator::new(DEFAULT_MAX_DARTS)
    }
}

impl Enumerator {
    /// Caps above `u16::MAX` darts are clamped; codes are stored as `u16`.
    pub fn new(max_darts: usize) -> Self {
        Enumerator {
            max_darts: max_darts.min(u16::MAX as usize),
            cache: None,
            families: HashMap::new(),
        }
    }

    /// Reads and writes bases under `dir`.
    pub fn with_cache(mut self, dir: impl Into<PathBuf>) -> Self {
        self.cache = Some(BasisCache::new(dir));
        self
    }

    pub fn max_darts(&self) -> usize {
        self.max_darts
    }

    /// Largest vertex count with a nonempty grade: all vertices trivalent.
    pub fn top_vertex_count(genus: usize, punctures: usize) -> usize {
        (2 * (2 * genus + punctures)).saturating_sub(4)
    }

    fn check_grade(&self, grade: Grade) -> Result<Option<usize>, EnumerationError> {
        if grade.punctures == 0 {
            return Err(EnumerationError::InvalidGrade(grade, "at least one puncture is required"));
        }
        let Some(edges) = grade.edges() else {
            return Ok(None);
        };
        if grade.vertices == 0 || 2 * edges < 3 * grade.vertices {
            return Ok(None);
        }
        if 2 * edges > self.max_darts {
            return Err(EnumerationError::ResourceCap {
                grade,
                darts: 2 * edges,
                cap: self.max_darts,
            });
        }
        Ok(Some(edges))
    }

    fn level(&mut self, grade: Grade) -> Result<&[ClassCode], EnumerationError> {
        if self.check_grade(grade)?.is_none() {
            return Ok(&[]);
        }
        let key = (grade.genus, grade.punctures);
        let built = self.families.get(&key).map_or(0, Vec::len);
        if built < grade.vertices {
            let mut levels = self.families.remove(&key).unwrap_or_default();
            if levels.is_empty() {
                levels.push(one_vertex_graphs(grade.genus, grade.punctures));
            }
            while levels.len() < grade.vertices {
                let next = expand_level(levels.last().unwrap());
                levels.push(next);
            }
            self.families.insert(key, levels);
        }
        Ok(&self.families[&key][grade.vertices - 1])
    }

    /// Every isomorphism class in the grade, zero graphs included, sorted.
    pub fn all_graphs(&mut self, genus: usize, punctures: usize, vertices: usize) -> Result<Vec<CanonicalGraph>, EnumerationError> {
        let level = self.level(Grade::new(genus, punctures, vertices))?;
        Ok(level.par_iter().map(ClassCode::materialize).collect())
    }

    /// The nonzero classes of a grade.
    pub fn basis(&mut self, genus: usize, punctures: usize, vertices: usize) -> Result<GradedBasis, EnumerationError> {
        let grade = Grade::new(genus, punctures, vertices);
        if self.check_grade(grade)?.is_none() {
            return Ok(GradedBasis {
                grade,
                graphs: Vec::new(),
            });
        }
        if let Some(cache) = &self.cache {
            if let Some(basis) = cache.load(grade)? {
                return Ok(basis);
            }
        }
        let graphs: Vec<CanonicalGraph> = self
            .level(grade)?
            .par_iter()
            .filter(|c| !c.is_zero)
            .map(ClassCode::materialize)
            .collect();
        let basis = GradedBasis { grade, graphs };
        if let Some(cache) = &self.cache {
            cache.store(&basis)?;
        }
        Ok(basis)
    }

    /// Number of nonzero classes, without building the graphs.
    pub fn dimension(&mut self, genus: usize, punctures: usize, vertices: usize) -> Result<usize, EnumerationError> {
        let level = self.level(Grade::new(genus, punctures, vertices))?;
        Ok(level.iter().filter(|c| !c.is_zero).count())
    }

    /// Class counts for every grade of the family.
    pub fn counts(&mut self, genus: usize, punctures: usize) -> Result<Vec<GradeCount>, EnumerationError> {
        let top = Self::top_vertex_count(genus, punctures);
        let mut out = Vec::new();
        for k in 1..=top {
            let grade = Grade::new(genus, punctures, k);
            let level = self.level(grade)?;
            out.push(GradeCount {
                vertices: k,
                edges: grade.edges().unwrap_or(0),
                isomorphism_classes: level.len(),
                nonzero: level.iter().filter(|c| !c.is_zero).count(),
            });
        }
        Ok(out)
    }
}

/// `enumerate_graphs(g, m, k)` with the default resource cap.
pub fn enumerate_graphs(genus: usize, punctures: usize, vertices: usize) -> Result<GradedBasis, EnumerationError> {
    Enumerator::default().basis(genus, punctures, vertices)
}

fn finish(codes: HashSet<Box<[u16]>>) -> Vec<ClassCode> {
    let mut out: Vec<ClassCode> = codes
        .into_par_iter()
        .map(|code| {
            let is_zero = ClassCode { code: code.clone(), is_zero: false }.materialize().is_zero();
            ClassCode { code, is_zero }
        })
        .collect();
    out.sort();
    out
}

/// Chord diagrams on one vertex with the right number of faces.
fn one_vertex_graphs(genus: usize, punctures: usize) -> Vec<ClassCode> {
    let edges = 2 * genus + punctures - 1;
    if edges < 2 {
        return Vec::new();
    }
    let n = 2 * edges;
    let sigma: Vec<usize> = (0..n).map(|d| (d + 1) % n).collect();
    let mut found = HashSet::new();
    for_each_pairing(n, &mut |iota| {
        if face_count(&sigma, iota) == punctures {
            let g = RibbonGraph::from_permutations_unchecked(&sigma, iota);
            found.insert(compact(&canonical_code(&g)));
        }
    });
    finish(found)
}

/// Classes with one more vertex. Candidates are deduplicated chunk by chunk
/// so memory stays proportional to the number of classes.
fn expand_level(level: &[ClassCode]) -> Vec<ClassCode> {
    let mut unique = HashSet::new();
    for chunk in level.chunks(1024) {
        let found: Vec<Box<[u16]>> = chunk
            .par_iter()
            .flat_map_iter(|c| {
                let canon = c.materialize();
                let g = canon.graph();
                let mut local = HashSet::new();
                for (v, cycle) in g.vertices().iter().enumerate() {
                    let len = cycle.len();
                    if len < 4 {
                        continue;
                    }
                    for start in 0..len {
                        for size in 2..=(len - 2) {
                            local.insert(compact(&canonical_code(&split_vertex(g, v, start, size))));
                        }
                    }
                }
                local.into_iter()
            })
            .collect();
        unique.extend(found);
    }
    finish(unique)
}

fn face_count(sigma: &[usize], iota: &[usize]) -> usize {
    let n = sigma.len();
    let mut seen = vec![false; n];
    let mut faces = 0;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        faces += 1;
        let mut d = start;
        while !seen[d] {
            seen[d] = true;
            d = sigma[iota[d]];
        }
    }
    faces
}

fn is_connected(sigma: &[usize], iota: &[usize]) -> bool {
    let n = sigma.len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    let mut count = 1;
    while let Some(d) = stack.pop() {
        for next in [sigma[d], iota[d]] {
            if !seen[next] {
                seen[next] = true;
                count += 1;
                stack.push(next);
            }
        }
    }
    count == n
}

/// Calls `f` with every fixed-point-free involution of `0..n`.
fn for_each_pairing(n: usize, f: &mut dyn FnMut(&[usize])) {
    fn go(iota: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        let Some(first) = iota.iter().position(|&x| x == usize::MAX) else {
            f(iota);
            return;
        };
        for other in (first + 1)..iota.len() {
            if iota[other] == usize::MAX {
                iota[first] = other;
                iota[other] = first;
                go(iota, f);
                iota[first] = usize::MAX;
                iota[other] = usize::MAX;
            }
        }
    }
    let mut iota = vec![usize::MAX; n];
    go(&mut iota, f);
}

/// Non-increasing partitions of `total` into exactly `parts` parts, each at
/// least `min`.
fn partitions(total: usize, parts: usize, min: usize) -> Vec<Vec<usize>> {
    fn go(total: usize, parts: usize, min: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if total == 0 {
                out.push(prefix.clone());
            }
            return;
        }
        for p in (min..=max.min(total)).rev() {
            if total - p < min * (parts - 1) {
                continue;
            }
            prefix.push(p);
            go(total - p, parts - 1, min, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(total, parts, min, total, &mut Vec::new(), &mut out);
    out
}

/// Every isomorphism class of the grade (zero graphs included), generated by
/// assigning block rotations per degree sequence and running over all
/// pairings. Independent of the expansion strategy; only practical up to
/// about 14 darts.
pub fn enumerate_by_rotation_systems(genus: usize, punctures: usize, vertices: usize) -> Vec<CanonicalGraph> {
    let Some(edges) = Grade::new(genus, punctures, vertices).edges() else {
        return Vec::new();
    };
    if vertices == 0 || 2 * edges < 3 * vertices {
        return Vec::new();
    }
    let n = 2 * edges;
    let mut found = HashSet::new();
    for degrees in partitions(n, vertices, 3) {
        let mut sigma = vec![0; n];
        let mut offset = 0;
        for &deg in &degrees {
            for i in 0..deg {
                sigma[offset + i] = offset + (i + 1) % deg;
            }
            offset += deg;
        }
        for_each_pairing(n, &mut |iota| {
            if face_count(&sigma, iota) == punctures && is_connected(&sigma, iota) {
                let g = RibbonGraph::from_permutations_unchecked(&sigma, iota);
                found.insert(compact(&canonical_code(&g)));
            }
        });
    }
    finish(found).iter().map(ClassCode::materialize).collect()
}

/// Grades `(g, m)` reachable with at most `max_darts` darts at the top.
pub fn families_within(max_darts: usize) -> BTreeSet<(usize, usize)> {
    let mut out = BTreeSet::new();
    for genus in 0..=max_darts / 4 {
        for punctures in 1..=max_darts {
            if 2 * genus + punctures < 3 {
                continue;
            }
            let top = Enumerator::top_vertex_count(genus, punctures);
            if let Some(e) = Grade::new(genus, punctures, top).edges() {
                if 2 * e <= max_darts {
                    out.insert((genus, punctures));
                }
            }
        }
    }
    out
}
