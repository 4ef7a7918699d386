//! Arrangements and their intersection posets, stratified by codimension.

use crate::cyclo::CycField;
use crate::geom::{Flat, Hyperplane, Vector};
use std::collections::{BTreeMap, BTreeSet};

/// Finite set of distinct canonical hyperplanes in C^n over Q(zeta_M).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Arrangement {
    field: CycField,
    dim: usize,
    hyperplanes: Vec<Hyperplane>,
}

impl Arrangement {
    /// Builds an arrangement, dropping duplicate hyperplanes (canonical
    /// comparison). Order of first occurrence is kept.
    pub fn new(field: CycField, dim: usize, hyperplanes: Vec<Hyperplane>) -> Arrangement {
        let mut seen = BTreeSet::new();
        let mut kept = Vec::new();
        for h in hyperplanes {
            assert_eq!(h.dim(), dim, "hyperplane ambient dimension");
            if seen.insert(h.clone()) {
                kept.push(h);
            }
        }
        Arrangement {
            field,
            dim,
            hyperplanes: kept,
        }
    }

    pub fn empty(field: CycField, dim: usize) -> Arrangement {
        Arrangement {
            field,
            dim,
            hyperplanes: Vec::new(),
        }
    }

    pub fn field(&self) -> &CycField {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn hyperplanes(&self) -> &[Hyperplane] {
        &self.hyperplanes
    }

    pub fn len(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.hyperplanes.is_empty()
    }

    pub fn contains(&self, h: &Hyperplane) -> bool {
        self.hyperplanes.iter().any(|m| m == h)
    }

    pub fn index_of(&self, h: &Hyperplane) -> Option<usize> {
        self.hyperplanes.iter().position(|m| m == h)
    }

    /// Every constant term zero.
    pub fn is_homogeneous(&self) -> bool {
        self.hyperplanes.iter().all(|h| h.constant().is_zero())
    }

    /// Same hyperplane set regardless of order.
    pub fn same_set(&self, other: &Arrangement) -> bool {
        if self.dim != other.dim || self.hyperplanes.len() != other.hyperplanes.len() {
            return false;
        }
        let a: BTreeSet<_> = self.hyperplanes.iter().collect();
        let b: BTreeSet<_> = other.hyperplanes.iter().collect();
        a == b
    }

    /// Partition (A_v, A_v^c): indices of hyperplanes transversal to v
    /// (c . v != 0) and parallel to v.
    pub fn split_by_vector(&self, v: &Vector) -> (Vec<usize>, Vec<usize>) {
        assert_eq!(v.dim(), self.dim);
        let mut transversal = Vec::new();
        let mut parallel = Vec::new();
        for (i, h) in self.hyperplanes.iter().enumerate() {
            if h.direction_contains(&self.field, v) {
                parallel.push(i);
            } else {
                transversal.push(i);
            }
        }
        (transversal, parallel)
    }
}

/// The poset L(A): every nonempty intersection of hyperplanes, stratified by
/// codimension, with the through-map S -> A_S (indices of hyperplanes
/// containing S).
#[derive(Debug, Clone)]
pub struct IntersectionPoset {
    dim: usize,
    levels: Vec<Vec<Flat>>,
    through: BTreeMap<Flat, BTreeSet<usize>>,
}

impl IntersectionPoset {
    /// Assemble a poset from externally computed strata (used by the
    /// brute-force oracle so both construction paths share one type).
    pub(crate) fn from_parts(
        dim: usize,
        levels: Vec<Vec<Flat>>,
        through: BTreeMap<Flat, BTreeSet<usize>>,
    ) -> IntersectionPoset {
        IntersectionPoset {
            dim,
            levels,
            through,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// L^(k), canonical order.
    pub fn level(&self, k: usize) -> &[Flat] {
        static EMPTY: Vec<Flat> = Vec::new();
        self.levels.get(k).map(|v| v.as_slice()).unwrap_or(&EMPTY)
    }

    pub fn max_codim(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn level_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.len()).collect()
    }

    pub fn all_flats(&self) -> impl Iterator<Item = &Flat> {
        self.levels.iter().flatten()
    }

    pub fn flat_count(&self) -> usize {
        self.levels.iter().map(|l| l.len()).sum()
    }

    pub fn contains(&self, flat: &Flat) -> bool {
        self.through.contains_key(flat)
    }

    /// A_S as hyperplane indices; empty set for V.
    pub fn through(&self, flat: &Flat) -> Option<&BTreeSet<usize>> {
        self.through.get(flat)
    }

    /// All flats as a set, for whole-poset comparisons.
    pub fn flat_set(&self) -> BTreeSet<Flat> {
        self.all_flats().cloned().collect()
    }

    /// L^(k) restricted to sub- or super-flats of S.
    pub fn flats_between(
        &self,
        k: usize,
        s: &Flat,
        field: &CycField,
        mode: BetweenMode,
    ) -> Option<Vec<Flat>> {
        if !self.contains(s) {
            return None;
        }
        let picked = self
            .level(k)
            .iter()
            .filter(|t| match mode {
                BetweenMode::Sub => s.contains_flat(field, t),
                BetweenMode::Super => t.contains_flat(field, s),
            })
            .cloned()
            .collect();
        Some(picked)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BetweenMode {
    Sub,
    Super,
}

/// Level-by-level construction: L^(k+1) is the set of proper nonempty
/// refinements S /\ H over S in L^(k), deduplicated by canonical form.
pub fn build_poset(arr: &Arrangement) -> IntersectionPoset {
    build_poset_up_to(arr, arr.dim())
}

/// Same construction stopped after codimension `max_codim`; the convolution
/// operator and the closedness predicates only consume L^(2).
pub fn build_poset_up_to(arr: &Arrangement, max_codim: usize) -> IntersectionPoset {
    let field = arr.field();
    let n = arr.dim();
    let stop = max_codim.min(n);
    let mut levels: Vec<Vec<Flat>> = Vec::new();
    levels.push(vec![Flat::whole(n)]);
    if stop >= 1 {
        let level_one: BTreeSet<Flat> = arr
            .hyperplanes()
            .iter()
            .map(|h| h.to_flat(field))
            .collect();
        if !level_one.is_empty() {
            levels.push(level_one.into_iter().collect());
        }
    }
    let mut k = 1;
    while k < levels.len() && k < stop {
        let mut next: BTreeSet<Flat> = BTreeSet::new();
        for s in &levels[k] {
            for h in arr.hyperplanes() {
                if let Some(t) = s.intersect_hyperplane(field, h) {
                    if t.codim() == k + 1 {
                        next.insert(t);
                    }
                }
            }
        }
        if !next.is_empty() {
            levels.push(next.into_iter().collect());
        }
        k += 1;
    }
    let hyperplane_flats: Vec<Flat> = arr
        .hyperplanes()
        .iter()
        .map(|h| h.to_flat(field))
        .collect();
    let mut through = BTreeMap::new();
    for flat in levels.iter().flatten() {
        let mut set = BTreeSet::new();
        for (i, hf) in hyperplane_flats.iter().enumerate() {
            if hf.contains_flat(field, flat) {
                set.insert(i);
            }
        }
        through.insert(flat.clone(), set);
    }
    IntersectionPoset {
        dim: n,
        levels,
        through,
    }
}
