//! Normal-form families of stable arrangements and the classifier that
//! recognizes arrangements equivalent to one.
//!
//! A family is parameterized by the ambient dimension n, the order m of the
//! root-of-unity group Omega, parameters alpha_1..alpha_r, and for n = 2 a
//! subset Omega' of Omega containing 1:
//!
//! * slanted members `x_i = w x_j` (w over Omega for n >= 3, over Omega'
//!   for n = 2),
//! * `A_c = {x_i = w alpha_j}` and `A_0 = {x_i = 0}`.
//!
//! Recognition is verify-by-construction: candidate parameters are read off
//! a normalized presentation and every candidate is checked by exact set
//! equality against `make_family`, so a returned descriptor is always a
//! correct certificate.

use crate::convolve::{is_axis_stable, stability_from_family, valid_directions, Stability};
use crate::cyclo::{CycField, CycScalar};
use crate::geom::{rank, Hyperplane, Vector};
use crate::poset::{build_poset_up_to, Arrangement};
use crate::structure::{decompose, reduce_fully, unreduce, AffineMap, Reduction};
use std::collections::{BTreeMap, BTreeSet};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FamilyError {
    #[error("family order m must be positive")]
    ZeroOrder,
    #[error("no roots of unity of order {order} exist in Q(zeta_{modulus})")]
    OrderOutsideField { order: u64, modulus: u64 },
    #[error("alpha parameters must be nonzero")]
    ZeroAlpha,
    #[error("ambient dimension must be at least 2")]
    DimensionTooSmall,
    #[error("two-dimensional families require r >= 1")]
    MissingAlpha,
    #[error("omega' is only meaningful for n = 2")]
    UnexpectedOmegaPrime,
    #[error("two-dimensional families require omega' containing 1")]
    BadOmegaPrime,
    #[error("a slanted-only family requires m = 1, r = 0 and n > 3")]
    BadSlantedOnly,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyVariant {
    /// Slanted members together with A_c and A_0.
    Full,
    /// The slanted members alone (m = 1, n > 3).
    SlantedOnly,
}

/// Parameters of one normal-form family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyDescriptor {
    pub dim: usize,
    pub order: u64,
    pub alphas: Vec<CycScalar>,
    /// For n = 2 only: the slant subset, 1 in it, inside Omega.
    pub omega_prime: Option<Vec<CycScalar>>,
    pub variant: FamilyVariant,
}

impl FamilyDescriptor {
    pub fn r(&self) -> usize {
        self.alphas.len()
    }

    pub fn validate(&self, field: &CycField) -> Result<(), FamilyError> {
        if self.order == 0 {
            return Err(FamilyError::ZeroOrder);
        }
        if !field.root_capacity().is_multiple_of(self.order) {
            return Err(FamilyError::OrderOutsideField {
                order: self.order,
                modulus: field.modulus(),
            });
        }
        if self.dim < 2 {
            return Err(FamilyError::DimensionTooSmall);
        }
        if self.alphas.iter().any(|a| a.is_zero()) {
            return Err(FamilyError::ZeroAlpha);
        }
        match self.variant {
            FamilyVariant::SlantedOnly => {
                if self.order != 1 || !self.alphas.is_empty() || self.dim <= 3 {
                    return Err(FamilyError::BadSlantedOnly);
                }
                if self.omega_prime.is_some() {
                    return Err(FamilyError::UnexpectedOmegaPrime);
                }
            }
            FamilyVariant::Full => {
                if self.dim == 2 {
                    if self.alphas.is_empty() {
                        return Err(FamilyError::MissingAlpha);
                    }
                    let omega_prime =
                        self.omega_prime.as_ref().ok_or(FamilyError::BadOmegaPrime)?;
                    if !omega_prime.contains(&field.one()) {
                        return Err(FamilyError::BadOmegaPrime);
                    }
                    for w in omega_prime {
                        if field.pow(w, self.order) != field.one() {
                            return Err(FamilyError::BadOmegaPrime);
                        }
                    }
                } else if self.omega_prime.is_some() {
                    return Err(FamilyError::UnexpectedOmegaPrime);
                }
            }
        }
        Ok(())
    }
}

/// Emit the family arrangement of a descriptor: exactly the listed
/// hyperplanes, canonical and deduplicated.
pub fn make_family(field: &CycField, d: &FamilyDescriptor) -> Result<Arrangement, FamilyError> {
    d.validate(field)?;
    let n = d.dim;
    let omega = field
        .roots_of_unity(d.order)
        .map_err(|_| FamilyError::OrderOutsideField {
            order: d.order,
            modulus: field.modulus(),
        })?;
    let mut hyperplanes = Vec::new();
    // slanted: x_i = w x_j for i < j
    let slants: &[CycScalar] = match (&d.omega_prime, n) {
        (Some(op), 2) => op,
        _ => &omega,
    };
    for i in 0..n {
        for j in (i + 1)..n {
            for w in slants {
                let mut linear = vec![field.zero(); n];
                linear[i] = field.one();
                linear[j] = field.neg(w);
                hyperplanes
                    .push(Hyperplane::new(field, linear, field.zero()).expect("nonzero row"));
            }
        }
    }
    if d.variant == FamilyVariant::Full {
        // A_c: x_i = w alpha_j, and A_0: x_i = 0
        for i in 0..n {
            for alpha in &d.alphas {
                for w in &omega {
                    let mut linear = vec![field.zero(); n];
                    linear[i] = field.one();
                    let constant = field.neg(&field.mul(w, alpha));
                    hyperplanes
                        .push(Hyperplane::new(field, linear, constant).expect("nonzero row"));
                }
            }
            let mut linear = vec![field.zero(); n];
            linear[i] = field.one();
            hyperplanes.push(Hyperplane::new(field, linear, field.zero()).expect("nonzero row"));
        }
    }
    Ok(Arrangement::new(field.clone(), n, hyperplanes))
}

/// Multiplicative closure of a set of roots of unity: the canonical choice
/// of Omega generated by an Omega'.
pub fn omega_prime_saturation(
    field: &CycField,
    input: &[CycScalar],
) -> Result<Vec<CycScalar>, crate::cyclo::CycError> {
    for w in input {
        if field.root_of_unity_order(w)?.is_none() {
            return Err(crate::cyclo::CycError::ZeroInput);
        }
    }
    let mut closure: BTreeSet<CycScalar> = input.iter().cloned().collect();
    closure.insert(field.one());
    loop {
        let mut added = false;
        let snapshot: Vec<_> = closure.iter().cloned().collect();
        for a in &snapshot {
            for b in &snapshot {
                if closure.insert(field.mul(a, b)) {
                    added = true;
                }
            }
        }
        if !added {
            return Ok(closure.into_iter().collect());
        }
    }
}

/// Verdict for one reduced factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Recognized: `transform.apply(make_family(descriptor))` equals the
    /// reduced factor exactly.
    Family {
        descriptor: FamilyDescriptor,
        transform: AffineMap,
    },
    /// At most one codimension-2 flat.
    Trivial,
    NotStable {
        span_dim: usize,
    },
    Unrecognized {
        reason: String,
    },
}

impl Verdict {
    pub fn is_recognized(&self) -> bool {
        matches!(self, Verdict::Family { .. } | Verdict::Trivial)
    }
}

#[derive(Debug, Clone)]
pub struct FactorReport {
    /// Coordinates of this block in the working coordinate system.
    pub block: Vec<usize>,
    /// Merges applied to the factor before recognition.
    pub reductions: Vec<Reduction>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone)]
pub struct ClassificationReport {
    /// Linear change x = M y from input coordinates to the working ones;
    /// identity whenever the input is already axis-stable.
    pub coordinates: AffineMap,
    pub factors: Vec<FactorReport>,
}

impl ClassificationReport {
    pub fn fully_recognized(&self) -> bool {
        self.factors.iter().all(|f| f.verdict.is_recognized())
    }

    pub fn is_stable_verdict(&self) -> bool {
        !self
            .factors
            .iter()
            .any(|f| matches!(f.verdict, Verdict::NotStable { .. }))
    }

    pub fn reduction_count(&self) -> usize {
        self.factors.iter().map(|f| f.reductions.len()).sum()
    }

    /// Rebuild the input arrangement from the report. Only possible when
    /// every factor carries a Family verdict (Trivial factors have no
    /// generating descriptor).
    pub fn reconstruct(&self, field: &CycField, n: usize) -> Option<Arrangement> {
        let mut hyperplanes = Vec::new();
        for factor in &self.factors {
            match &factor.verdict {
                Verdict::Family {
                    descriptor,
                    transform,
                } => {
                    let fam = make_family(field, descriptor).ok()?;
                    let reduced = transform.apply(&fam);
                    let unreduced = unreduce(&reduced, &factor.reductions);
                    for h in unreduced.hyperplanes() {
                        let mut linear = vec![field.zero(); n];
                        for (pos, &coord) in factor.block.iter().enumerate() {
                            linear[coord] = h.linear()[pos].clone();
                        }
                        hyperplanes.push(
                            Hyperplane::new(field, linear, h.constant().clone())
                                .expect("nonzero linear part"),
                        );
                    }
                }
                _ => return None,
            }
        }
        let working = Arrangement::new(field.clone(), n, hyperplanes);
        if self.coordinates.is_identity(field) {
            return Some(working);
        }
        let inverse = self.coordinates.inverse(field)?;
        Some(inverse.apply(&working))
    }
}

/// Classify an arrangement: find coordinates in which it is axis-stable,
/// split into blocks, reduce each factor, and either certify triviality or
/// recognize a normal-form family per factor.
pub fn classify(arr: &Arrangement) -> ClassificationReport {
    let field = arr.field();
    let n = arr.dim();
    if is_axis_stable(arr) {
        return classify_in_coords(arr, AffineMap::identity(field, n));
    }
    let family = valid_directions(arr);
    match stability_from_family(arr, &family) {
        Stability::Unstable { .. } => {
            // Report per factor so products with one bad block stay legible.
            let dec = decompose(arr);
            let factors = dec
                .blocks
                .iter()
                .zip(&dec.factors)
                .map(|(block, factor)| {
                    let (reductions, verdict) = unstable_branch_verdict(factor);
                    FactorReport {
                        block: block.clone(),
                        reductions,
                        verdict,
                    }
                })
                .collect();
            ClassificationReport {
                coordinates: AffineMap::identity(field, n),
                factors,
            }
        }
        Stability::Stable { .. } => {
            let mut fallback: Option<ClassificationReport> = None;
            for basis in candidate_bases(field, n, &family) {
                let mut matrix = vec![vec![field.zero(); n]; n];
                for (j, v) in basis.iter().enumerate() {
                    for (i, row) in matrix.iter_mut().enumerate() {
                        row[j] = v.entries()[i].clone();
                    }
                }
                let map = AffineMap::linear(matrix, field);
                let moved = map.apply(arr);
                if !is_axis_stable(&moved) {
                    continue;
                }
                let report = classify_in_coords(&moved, map);
                if report.fully_recognized() {
                    if report.reduction_count() == 0 {
                        return report;
                    }
                    match &fallback {
                        Some(prev)
                            if prev.fully_recognized()
                                && prev.reduction_count() <= report.reduction_count() => {}
                        _ => fallback = Some(report),
                    }
                } else if fallback.is_none() {
                    fallback = Some(report);
                }
            }
            fallback.unwrap_or_else(|| ClassificationReport {
                coordinates: AffineMap::identity(field, n),
                factors: vec![FactorReport {
                    block: (0..n).collect(),
                    reductions: Vec::new(),
                    verdict: Verdict::Unrecognized {
                        reason: "no witness basis made the arrangement axis-stable".to_string(),
                    },
                }],
            })
        }
    }
}

fn unstable_branch_verdict(factor: &Arrangement) -> (Vec<Reduction>, Verdict) {
    let field = factor.field();
    let fam = valid_directions(factor);
    let span = fam.span_dim(field, factor.dim());
    if span < factor.dim() {
        return (Vec::new(), Verdict::NotStable { span_dim: span });
    }
    if is_axis_stable(factor) {
        return process_axis_stable_factor(factor);
    }
    (
        Vec::new(),
        Verdict::Unrecognized {
            reason: "stable factor inside an unstable arrangement; re-run on the factor alone"
                .to_string(),
        },
    )
}

/// Candidate witness bases: independent n-subsets of the canonical basis
/// vectors of the valid-direction members, in lexicographic order.
fn candidate_bases(
    field: &CycField,
    n: usize,
    family: &crate::convolve::DirectionFamily,
) -> Vec<Vec<Vector>> {
    let mut pool: Vec<Vec<CycScalar>> = Vec::new();
    for member in family.members() {
        for row in member.basis() {
            if !pool.contains(row) {
                pool.push(row.clone());
            }
        }
    }
    pool.sort();
    let mut out = Vec::new();
    if pool.len() < n {
        return out;
    }
    let mut indices: Vec<usize> = (0..n).collect();
    loop {
        let rows: Vec<Vec<CycScalar>> = indices.iter().map(|&i| pool[i].clone()).collect();
        if rank(field, &rows, n) == n {
            out.push(
                rows.into_iter()
                    .map(|r| Vector::new(r).expect("pool rows nonzero"))
                    .collect(),
            );
            if out.len() >= 512 {
                break;
            }
        }
        // advance to the next index combination
        let mut k = n;
        let mut advanced = false;
        while k > 0 {
            k -= 1;
            if indices[k] < pool.len() - (n - k) {
                indices[k] += 1;
                for t in (k + 1)..n {
                    indices[t] = indices[t - 1] + 1;
                }
                advanced = true;
                break;
            }
        }
        if !advanced {
            break;
        }
    }
    out
}

/// Pipeline in fixed coordinates (the arrangement is axis-stable here):
/// decompose, reduce each factor, certify or recognize.
fn classify_in_coords(arr: &Arrangement, coordinates: AffineMap) -> ClassificationReport {
    let dec = decompose(arr);
    let factors = dec
        .blocks
        .iter()
        .zip(&dec.factors)
        .map(|(block, factor)| {
            let (reductions, verdict) = process_axis_stable_factor(factor);
            FactorReport {
                block: block.clone(),
                reductions,
                verdict,
            }
        })
        .collect();
    ClassificationReport {
        coordinates,
        factors,
    }
}

fn process_axis_stable_factor(factor: &Arrangement) -> (Vec<Reduction>, Verdict) {
    let (reduced, reductions) = reduce_fully(factor);
    let poset = build_poset_up_to(&reduced, 2);
    if poset.level(2).len() <= 1 {
        return (reductions, Verdict::Trivial);
    }
    let verdict = match recognize_family(&reduced) {
        Ok((descriptor, transform)) => Verdict::Family {
            descriptor,
            transform,
        },
        Err(reason) => Verdict::Unrecognized { reason },
    };
    (reductions, verdict)
}

/// Normalized slanted member x_i = ratio * x_j + shift with i < j.
struct Slant {
    i: usize,
    j: usize,
    ratio: CycScalar,
    shift: CycScalar,
}

/// Attempt to express an axis-stable, reduced, indecomposable factor with
/// more than one codimension-2 flat as a diagonal transform of a family.
fn recognize_family(factor: &Arrangement) -> Result<(FamilyDescriptor, AffineMap), String> {
    let field = factor.field();
    let n = factor.dim();
    if n < 2 {
        return Err("factors of dimension below 2 cannot be non-trivial".to_string());
    }
    // 1. split members into per-coordinate constants and two-variable slants
    let mut constants: Vec<BTreeSet<CycScalar>> = vec![BTreeSet::new(); n];
    let mut slants: Vec<Slant> = Vec::new();
    for h in factor.hyperplanes() {
        let support = h.support();
        match support.len() {
            1 => {
                let k = support[0];
                // canonical form x_k + c = 0, so the value is -c
                constants[k].insert(field.neg(h.constant()));
            }
            2 => {
                let (i, j) = (support[0], support[1]);
                // x_i + c_j x_j + c = 0  =>  x_i = -c_j x_j - c
                slants.push(Slant {
                    i,
                    j,
                    ratio: field.neg(&h.linear()[j]),
                    shift: field.neg(h.constant()),
                });
            }
            _ => {
                return Err(format!(
                    "member couples {} coordinates; families couple at most two",
                    support.len()
                ))
            }
        }
    }
    if slants.is_empty() {
        return Err("no slanted members link the coordinates".to_string());
    }
    // 2. spanning tree over the slant graph; lambda_k = rho_k * Lambda and
    // mu_k = rho_k * mu0 + delta_k with unknowns (Lambda, mu0) at the root
    let mut adjacency: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (idx, s) in slants.iter().enumerate() {
        adjacency.entry(s.i).or_default().push(idx);
        adjacency.entry(s.j).or_default().push(idx);
    }
    let mut rho: Vec<Option<CycScalar>> = vec![None; n];
    let mut delta: Vec<CycScalar> = vec![field.zero(); n];
    rho[0] = Some(field.one());
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(p) = queue.pop_front() {
        let Some(edges) = adjacency.get(&p) else {
            continue;
        };
        for &idx in edges {
            let s = &slants[idx];
            let child = if s.i == p { s.j } else { s.i };
            if rho[child].is_some() {
                continue;
            }
            let rp = rho[p].clone().expect("parent resolved");
            if s.i == child {
                // unit member: x_child = ratio x_p + shift maps to y_child = y_p
                rho[child] = Some(field.mul(&s.ratio, &rp));
                delta[child] = field.add(&field.mul(&s.ratio, &delta[p]), &s.shift);
            } else {
                // x_p = ratio x_child + shift
                rho[child] = Some(field.div(&rp, &s.ratio).expect("slant ratio nonzero"));
                delta[child] = field
                    .div(&field.sub(&delta[p], &s.shift), &s.ratio)
                    .expect("slant ratio nonzero");
            }
            queue.push_back(child);
        }
    }
    if rho.iter().any(|r| r.is_none()) {
        return Err("slanted members do not connect all coordinates".to_string());
    }
    let rho: Vec<CycScalar> = rho.into_iter().map(|r| r.unwrap()).collect();
    // 3. slant ratios must be roots of unity; their orders bound m from below
    let mut slant_orders: Vec<u64> = Vec::new();
    let mut omega_observed: BTreeSet<CycScalar> = BTreeSet::new();
    for s in &slants {
        let omega = field
            .div(&field.mul(&s.ratio, &rho[s.j]), &rho[s.i])
            .expect("rho nonzero");
        match field.root_of_unity_order(&omega).map_err(|e| e.to_string())? {
            Some(k) => slant_orders.push(k),
            None => {
                return Err(format!(
                    "slant ratio {} is not a root of unity",
                    field.render(&omega)
                ))
            }
        }
        omega_observed.insert(omega);
    }
    let m_lower = slant_orders.iter().fold(1u64, |acc, &k| lcm(acc, k));
    // 4. pin the base shift mu0 from the slant constraints when possible
    let mut pinned: Option<CycScalar> = None;
    for s in &slants {
        // (rho_i - ratio rho_j) mu0 = ratio delta_j + shift - delta_i
        let coeff = field.sub(&rho[s.i], &field.mul(&s.ratio, &rho[s.j]));
        let rhs = field.sub(
            &field.add(&field.mul(&s.ratio, &delta[s.j]), &s.shift),
            &delta[s.i],
        );
        if coeff.is_zero() {
            if !rhs.is_zero() {
                return Err("slanted members have incompatible shifts".to_string());
            }
        } else {
            let mu0 = field.div(&rhs, &coeff).expect("nonzero coefficient");
            match &pinned {
                Some(prev) if *prev != mu0 => {
                    return Err("slanted members pin conflicting centers".to_string())
                }
                _ => pinned = Some(mu0),
            }
        }
    }
    let mu0_candidates: Vec<CycScalar> = match pinned {
        Some(mu0) => vec![mu0],
        None => {
            if constants[0].is_empty() {
                vec![field.zero()]
            } else {
                constants[0].iter().cloned().collect()
            }
        }
    };
    let has_constants = constants.iter().any(|c| !c.is_empty());
    let mut last_error = "no center candidate produced a family".to_string();
    for mu0 in mu0_candidates {
        match try_center(
            factor,
            &constants,
            &omega_observed,
            m_lower,
            &rho,
            &delta,
            &mu0,
            has_constants,
        ) {
            Ok(found) => return Ok(found),
            Err(e) => last_error = e,
        }
    }
    Err(last_error)
}

#[allow(clippy::too_many_arguments)]
fn try_center(
    factor: &Arrangement,
    constants: &[BTreeSet<CycScalar>],
    omega_observed: &BTreeSet<CycScalar>,
    m_lower: u64,
    rho: &[CycScalar],
    delta: &[CycScalar],
    mu0: &CycScalar,
    has_constants: bool,
) -> Result<(FamilyDescriptor, AffineMap), String> {
    let field = factor.field();
    let n = factor.dim();
    let mu: Vec<CycScalar> = (0..n)
        .map(|k| field.add(&field.mul(&rho[k], mu0), &delta[k]))
        .collect();
    // normalized constant sets W_k = (C_k - mu_k) / rho_k must agree
    let mut shared: Option<BTreeSet<CycScalar>> = None;
    for k in 0..n {
        let w: BTreeSet<CycScalar> = constants[k]
            .iter()
            .map(|c| {
                field
                    .div(&field.sub(c, &mu[k]), &rho[k])
                    .expect("rho nonzero")
            })
            .collect();
        match &shared {
            None => shared = Some(w),
            Some(prev) => {
                if *prev != w {
                    return Err("constant members differ across coordinates".to_string());
                }
            }
        }
    }
    let shared = shared.unwrap_or_default();
    if has_constants && !shared.contains(&field.zero()) {
        return Err("constant members do not include the coordinate hyperplanes".to_string());
    }
    let starred: Vec<CycScalar> = shared.iter().filter(|w| !w.is_zero()).cloned().collect();
    // candidate orders: multiples of the slant order dividing the order
    // generated together with the root-of-unity ratios among constants
    let mut m_upper = m_lower;
    for a in &starred {
        for b in &starred {
            if a == b {
                continue;
            }
            let ratio = field.div(a, b).expect("nonzero");
            if let Ok(Some(k)) = field.root_of_unity_order(&ratio) {
                m_upper = lcm(m_upper, k);
            }
        }
    }
    let mut m_candidates: Vec<u64> = (1..=m_upper)
        .filter(|m| m.is_multiple_of(m_lower) && m_upper.is_multiple_of(*m))
        .collect();
    m_candidates.sort_unstable();
    let mut last_error = "no group order matched the constant members".to_string();
    'candidates: for m in m_candidates {
        let omega = match field.roots_of_unity(m) {
            Ok(o) => o,
            Err(_) => continue,
        };
        // partition the nonzero constants into full Omega-orbits
        let mut remaining: BTreeSet<CycScalar> = starred.iter().cloned().collect();
        let mut reps: Vec<CycScalar> = Vec::new();
        while let Some(w) = remaining.iter().next().cloned() {
            let orbit: BTreeSet<CycScalar> = omega.iter().map(|o| field.mul(o, &w)).collect();
            for member in &orbit {
                if member == &w {
                    continue;
                }
                if !remaining.remove(member) {
                    last_error =
                        "constant members are not unions of root-of-unity orbits".to_string();
                    continue 'candidates;
                }
            }
            remaining.remove(&w);
            reps.push(orbit.iter().next().cloned().expect("orbit nonempty"));
        }
        reps.sort();
        let scale = reps.first().cloned().unwrap_or_else(|| field.one());
        let alphas: Vec<CycScalar> = reps
            .iter()
            .map(|w| field.div(w, &scale).expect("scale nonzero"))
            .collect();
        let omega_prime = if n == 2 {
            let mut set: Vec<CycScalar> = omega_observed.iter().cloned().collect();
            set.sort();
            Some(set)
        } else {
            None
        };
        let variant = if has_constants {
            FamilyVariant::Full
        } else {
            FamilyVariant::SlantedOnly
        };
        let descriptor = FamilyDescriptor {
            dim: n,
            order: m,
            alphas,
            omega_prime,
            variant,
        };
        if let Err(e) = descriptor.validate(field) {
            last_error = e.to_string();
            continue;
        }
        let family = match make_family(field, &descriptor) {
            Ok(f) => f,
            Err(e) => {
                last_error = e.to_string();
                continue;
            }
        };
        // transform sending the family onto the factor:
        // y_k = (x_k - mu_k) / lambda_k with lambda_k = rho_k * scale
        let mut matrix = vec![vec![field.zero(); n]; n];
        let mut shift = vec![field.zero(); n];
        for k in 0..n {
            let lambda = field.mul(&rho[k], &scale);
            let inv = field.inv(&lambda).expect("lambda nonzero");
            matrix[k][k] = inv.clone();
            shift[k] = field.neg(&field.mul(&inv, &mu[k]));
        }
        let transform = AffineMap { matrix, shift };
        let image = transform.apply(&family);
        if image.same_set(factor) {
            return Ok((descriptor, transform));
        }
        last_error = format!(
            "family candidate (m = {}, r = {}) does not reproduce the factor",
            m,
            descriptor.r()
        );
    }
    Err(last_error)
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = b;
        b = a % b;
        a = t;
    }
    a
}
