//! Independent brute-force verifiers and enumeration harnesses.
//!
//! `brute_force_poset` re-derives the intersection poset by intersecting
//! every subset of the arrangement directly, with no level recursion, and is
//! the reference the incremental builder is checked against. The census
//! enumerates subsets of a hyperplane pool, filters them, and classifies
//! every survivor. The orbit closure chases a point under the two affine
//! maps z -> a1 z and z -> a2 z + a3 and reports whether the orbit stays
//! finite.

use crate::classify::{classify, ClassificationReport};
use crate::convolve::is_axis_stable_with_poset;
use crate::cyclo::{CycField, CycScalar};
use crate::geom::Flat;
use crate::poset::{build_poset_up_to, Arrangement, IntersectionPoset};
use crate::structure::{decompose, find_reduction};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("arrangement exceeds the brute-force bound of {bound} hyperplanes")]
    TooLarge { bound: usize },
    #[error("pool of {size} hyperplanes exceeds the enumeration bound of {bound}")]
    PoolTooLarge { size: usize, bound: usize },
    #[error("orbit parameters must satisfy a1 a2 (a1 - 1) != 0 and z != 0")]
    BadOrbitParameters,
}

pub const BRUTE_FORCE_BOUND: usize = 12;
pub const POOL_BOUND: usize = 20;

/// Intersect every subset of A directly, deduplicate, stratify. The oracle
/// against `build_poset`.
pub fn brute_force_poset(arr: &Arrangement) -> Result<IntersectionPoset, OracleError> {
    brute_force_poset_bounded(arr, BRUTE_FORCE_BOUND)
}

pub fn brute_force_poset_bounded(
    arr: &Arrangement,
    bound: usize,
) -> Result<IntersectionPoset, OracleError> {
    if arr.len() > bound {
        return Err(OracleError::TooLarge { bound });
    }
    let field = arr.field();
    let n = arr.dim();
    let flats_of: Vec<Flat> = arr
        .hyperplanes()
        .iter()
        .map(|h| h.to_flat(field))
        .collect();
    let mut seen: BTreeSet<Flat> = BTreeSet::new();
    seen.insert(Flat::whole(n));
    for mask in 1u64..(1u64 << arr.len()) {
        let mut current = Flat::whole(n);
        let mut alive = true;
        for (i, hf) in flats_of.iter().enumerate() {
            if mask & (1 << i) != 0 {
                match current.intersect(field, hf) {
                    Some(next) => current = next,
                    None => {
                        alive = false;
                        break;
                    }
                }
            }
        }
        if alive {
            seen.insert(current);
        }
    }
    let mut levels: Vec<Vec<Flat>> = Vec::new();
    for flat in seen {
        let k = flat.codim();
        while levels.len() <= k {
            levels.push(Vec::new());
        }
        levels[k].push(flat);
    }
    let mut through = BTreeMap::new();
    for flat in levels.iter().flatten() {
        let mut set = BTreeSet::new();
        for (i, hf) in flats_of.iter().enumerate() {
            if hf.contains_flat(field, flat) {
                set.insert(i);
            }
        }
        through.insert(flat.clone(), set);
    }
    Ok(IntersectionPoset::from_parts(n, levels, through))
}

/// Pool of candidate hyperplanes plus the census filters.
#[derive(Debug, Clone)]
pub struct PoolSpec {
    pub pool: Arrangement,
    pub require_axis_stable: bool,
    pub require_indecomposable: bool,
    pub require_reduced: bool,
    pub require_nontrivial: bool,
    pub min_size: usize,
    pub max_size: usize,
}

impl PoolSpec {
    pub fn new(pool: Arrangement) -> PoolSpec {
        let max = pool.len();
        PoolSpec {
            pool,
            require_axis_stable: true,
            require_indecomposable: true,
            require_reduced: true,
            require_nontrivial: true,
            min_size: 0,
            max_size: max,
        }
    }
}

#[derive(Debug)]
pub struct CensusEntry {
    pub arrangement: Arrangement,
    pub report: ClassificationReport,
}

/// Enumerate subsets of the pool within the size bounds, apply the filters,
/// classify every survivor.
pub fn enumerate_axis_stable(spec: &PoolSpec) -> Result<Vec<CensusEntry>, OracleError> {
    let pool_size = spec.pool.len();
    if pool_size > POOL_BOUND {
        return Err(OracleError::PoolTooLarge {
            size: pool_size,
            bound: POOL_BOUND,
        });
    }
    let field = spec.pool.field();
    let n = spec.pool.dim();
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << pool_size) {
        let size = mask.count_ones() as usize;
        if size < spec.min_size || size > spec.max_size {
            continue;
        }
        let hyperplanes: Vec<_> = spec
            .pool
            .hyperplanes()
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, h)| h.clone())
            .collect();
        let arr = Arrangement::new(field.clone(), n, hyperplanes);
        let poset = build_poset_up_to(&arr, 2);
        if spec.require_nontrivial && poset.level(2).len() <= 1 {
            continue;
        }
        if spec.require_axis_stable && !is_axis_stable_with_poset(&arr, &poset) {
            continue;
        }
        if spec.require_indecomposable && !decompose(&arr).is_indecomposable() {
            continue;
        }
        if spec.require_reduced && find_reduction(&arr).is_some() {
            continue;
        }
        let report = classify(&arr);
        out.push(CensusEntry {
            arrangement: arr,
            report,
        });
    }
    Ok(out)
}

/// Result of closing a point under T1(z) = a1 z and T2(z) = a2 z + a3.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OrbitOutcome {
    Finite {
        closure: BTreeSet<CycScalar>,
        /// Least m with a1^m = a2^m = 1, available whenever both multipliers
        /// are roots of unity (forced when the closure is finite).
        order: Option<u64>,
        alpha3_zero: bool,
    },
    BudgetExceeded {
        reached: usize,
    },
}

/// Forward closure of {z} under both maps, up to `budget` elements.
pub fn orbit_closure(
    field: &CycField,
    a1: &CycScalar,
    a2: &CycScalar,
    a3: &CycScalar,
    z: &CycScalar,
    budget: usize,
) -> Result<OrbitOutcome, OracleError> {
    let one = field.one();
    if a1.is_zero() || a2.is_zero() || *a1 == one || z.is_zero() {
        return Err(OracleError::BadOrbitParameters);
    }
    let mut closure: BTreeSet<CycScalar> = BTreeSet::new();
    let mut frontier = vec![z.clone()];
    closure.insert(z.clone());
    while let Some(current) = frontier.pop() {
        let t1 = field.mul(a1, &current);
        let t2 = field.add(&field.mul(a2, &current), a3);
        for next in [t1, t2] {
            if closure.insert(next.clone()) {
                if closure.len() > budget {
                    return Ok(OrbitOutcome::BudgetExceeded {
                        reached: closure.len(),
                    });
                }
                frontier.push(next);
            }
        }
    }
    let ord1 = field.root_of_unity_order(a1).ok().flatten();
    let ord2 = field.root_of_unity_order(a2).ok().flatten();
    let order = match (ord1, ord2) {
        (Some(k1), Some(k2)) => Some(k1 / gcd(k1, k2) * k2),
        _ => None,
    };
    Ok(OrbitOutcome::Finite {
        closure,
        order,
        alpha3_zero: a3.is_zero(),
    })
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::Verdict;
    use crate::geom::Hyperplane;

    fn hyperplane(f: &CycField, lin: &[i64], c: i64) -> Hyperplane {
        Hyperplane::new(
            f,
            lin.iter().map(|&v| f.from_i64(v)).collect(),
            f.from_i64(c),
        )
        .unwrap()
    }

    fn braid(f: &CycField, n: usize) -> Arrangement {
        let mut hs = Vec::new();
        for i in 0..n {
            for j in (i + 1)..n {
                let mut lin = vec![0i64; n];
                lin[i] = 1;
                lin[j] = -1;
                hs.push(hyperplane(f, &lin, 0));
            }
        }
        Arrangement::new(f.clone(), n, hs)
    }

    #[test]
    fn brute_force_braid_c3() {
        let f = CycField::new(1);
        let p = brute_force_poset(&braid(&f, 3)).unwrap();
        // hand count: V, three planes, one line
        assert_eq!(p.level_sizes(), vec![1, 3, 1]);
        assert_eq!(p.flat_count(), 5);
        let built = crate::poset::build_poset(&braid(&f, 3));
        assert_eq!(p.flat_set(), built.flat_set());
    }

    #[test]
    fn brute_force_example_three() {
        let f = CycField::new(1);
        let arr = Arrangement::new(
            f.clone(),
            2,
            vec![
                hyperplane(&f, &[1, -1], 0),
                hyperplane(&f, &[1, 1], -1),
                hyperplane(&f, &[1, 1], -2),
            ],
        );
        let p = brute_force_poset(&arr).unwrap();
        let pts: BTreeSet<_> = p
            .level(2)
            .iter()
            .map(|s| s.as_point(&f).unwrap())
            .collect();
        let expected: BTreeSet<_> = [
            vec![f.from_ratio(1, 2), f.from_ratio(1, 2)],
            vec![f.one(), f.one()],
        ]
        .into_iter()
        .collect();
        assert_eq!(pts, expected);
    }

    #[test]
    fn brute_force_empty_arrangement() {
        let f = CycField::new(1);
        let arr = Arrangement::empty(f.clone(), 3);
        let p = brute_force_poset(&arr).unwrap();
        assert_eq!(p.flat_count(), 1);
        assert_eq!(p.level(0), &[Flat::whole(3)]);
    }

    #[test]
    fn brute_force_bound_is_enforced() {
        let f = CycField::new(1);
        let mut hs = Vec::new();
        for c in 0..13 {
            hs.push(hyperplane(&f, &[1, 0], -c));
        }
        let arr = Arrangement::new(f.clone(), 2, hs);
        assert_eq!(
            brute_force_poset(&arr).unwrap_err(),
            OracleError::TooLarge { bound: 12 }
        );
    }

    fn n2_pool(f: &CycField) -> Arrangement {
        Arrangement::new(
            f.clone(),
            2,
            vec![
                hyperplane(f, &[1, 0], 0),
                hyperplane(f, &[0, 1], 0),
                hyperplane(f, &[1, 0], -1),
                hyperplane(f, &[1, 0], 1),
                hyperplane(f, &[0, 1], -1),
                hyperplane(f, &[0, 1], 1),
                hyperplane(f, &[1, -1], 0),
                hyperplane(f, &[1, 1], 0),
            ],
        )
    }

    #[test]
    fn census_classifies_the_n2_pool() {
        let f = CycField::new(2);
        let spec = PoolSpec::new(n2_pool(&f));
        let entries = enumerate_axis_stable(&spec).unwrap();
        assert!(!entries.is_empty());
        for entry in &entries {
            assert!(
                entry.report.fully_recognized(),
                "census arrangement must be recognized: {:?}",
                entry.arrangement
            );
            assert!(matches!(
                entry.report.factors[0].verdict,
                Verdict::Family { .. }
            ));
        }
        // the full order-2 n=2 family is one of the survivors
        let full: Vec<_> = entries
            .iter()
            .filter(|e| e.arrangement.len() == 8)
            .collect();
        assert!(!full.is_empty());
    }

    #[test]
    fn census_trivial_subset_is_filtered_or_trivial() {
        let f = CycField::new(2);
        // {x=y, x=0, y=0} has a single codimension-2 flat
        let mut spec = PoolSpec::new(n2_pool(&f));
        spec.require_nontrivial = false;
        spec.require_reduced = false;
        spec.require_indecomposable = false;
        spec.min_size = 3;
        spec.max_size = 3;
        let entries = enumerate_axis_stable(&spec).unwrap();
        let triple = entries.iter().find(|e| {
            e.arrangement.same_set(&Arrangement::new(
                f.clone(),
                2,
                vec![
                    hyperplane(&f, &[1, -1], 0),
                    hyperplane(&f, &[1, 0], 0),
                    hyperplane(&f, &[0, 1], 0),
                ],
            ))
        });
        let entry = triple.expect("the axis-stable triple shows up");
        assert_eq!(entry.report.factors.len(), 1);
        assert_eq!(entry.report.factors[0].verdict, Verdict::Trivial);
    }

    #[test]
    fn orbit_sign_flips() {
        let f = CycField::new(1);
        let out = orbit_closure(
            &f,
            &f.from_i64(-1),
            &f.from_i64(-1),
            &f.zero(),
            &f.one(),
            512,
        )
        .unwrap();
        match out {
            OrbitOutcome::Finite {
                closure,
                order,
                alpha3_zero,
            } => {
                let expected: BTreeSet<_> = [f.one(), f.from_i64(-1)].into_iter().collect();
                assert_eq!(closure, expected);
                assert_eq!(order, Some(2));
                assert!(alpha3_zero);
            }
            other => panic!("expected a finite orbit, got {:?}", other),
        }
    }

    #[test]
    fn orbit_shift_diverges() {
        let f = CycField::new(1);
        let out = orbit_closure(
            &f,
            &f.from_i64(-1),
            &f.one(),
            &f.one(),
            &f.one(),
            512,
        )
        .unwrap();
        assert!(matches!(out, OrbitOutcome::BudgetExceeded { .. }));
    }

    #[test]
    fn orbit_fourth_roots() {
        let f = CycField::new(4);
        let out = orbit_closure(
            &f,
            &f.zeta_pow(1),
            &f.from_i64(-1),
            &f.zero(),
            &f.one(),
            512,
        )
        .unwrap();
        match out {
            OrbitOutcome::Finite { closure, order, .. } => {
                let expected: BTreeSet<_> = [
                    f.one(),
                    f.zeta_pow(1),
                    f.from_i64(-1),
                    f.neg(&f.zeta_pow(1)),
                ]
                .into_iter()
                .collect();
                assert_eq!(closure, expected);
                assert_eq!(order, Some(4));
            }
            other => panic!("expected the fourth roots, got {:?}", other),
        }
    }

    #[test]
    fn orbit_parameter_validation() {
        let f = CycField::new(1);
        assert_eq!(
            orbit_closure(&f, &f.one(), &f.one(), &f.zero(), &f.one(), 16),
            Err(OracleError::BadOrbitParameters)
        );
        assert_eq!(
            orbit_closure(&f, &f.from_i64(-1), &f.one(), &f.zero(), &f.zero(), 16),
            Err(OracleError::BadOrbitParameters)
        );
    }

    /// The conclusions forced by finiteness: a3 = 0 and both multipliers are
    /// roots of unity, with the closure containing the full orbit of z under
    /// the order-m rotation group.
    #[test]
    fn finite_orbit_forces_the_conclusions() {
        let f = CycField::new(4);
        let cases = [
            (f.from_i64(-1), f.from_i64(-1), f.zero(), f.from_i64(3)),
            (f.zeta_pow(1), f.zeta_pow(3), f.zero(), f.one()),
            (f.from_i64(-1), f.zeta_pow(1), f.zero(), f.zeta_pow(2)),
        ];
        for (a1, a2, a3, z) in cases {
            let out = orbit_closure(&f, &a1, &a2, &a3, &z, 512).unwrap();
            match out {
                OrbitOutcome::Finite {
                    closure,
                    order,
                    alpha3_zero,
                } => {
                    assert!(alpha3_zero);
                    let m = order.expect("multipliers are roots of unity");
                    let omega = f.roots_of_unity(m).unwrap();
                    for w in omega {
                        assert!(closure.contains(&f.mul(&w, &z)));
                    }
                }
                other => panic!("expected finite, got {:?}", other),
            }
        }
    }
}
