//! Hyperplanes, flats and direction subspaces of C^n with exact canonical
//! forms.
//!
//! A flat is stored as the reduced row echelon system (B | d) of its
//! defining equations, so two flats are equal exactly when their row
//! systems coincide. All predicates (containment, parallelism, emptiness)
//! are decided exactly over Q(zeta_M); nothing is ever rounded.

use crate::cyclo::{CycField, CycScalar};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GeomError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("zero vector where a direction is required")]
    ZeroVector,
    #[error("hyperplane requires a nonzero linear part")]
    ZeroLinearPart,
}

/// Nonzero direction vector in C^n.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Vector {
    entries: Vec<CycScalar>,
}

impl Vector {
    pub fn new(entries: Vec<CycScalar>) -> Result<Vector, GeomError> {
        if entries.iter().all(|e| e.is_zero()) {
            return Err(GeomError::ZeroVector);
        }
        Ok(Vector { entries })
    }

    pub fn axis(field: &CycField, n: usize, i: usize) -> Vector {
        assert!(i < n);
        let mut entries = vec![field.zero(); n];
        entries[i] = field.one();
        Vector { entries }
    }

    pub fn entries(&self) -> &[CycScalar] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }
}

/// Affine hyperplane sum(c_i x_i) + c = 0, canonicalized so the first
/// nonzero c_i is 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Hyperplane {
    linear: Vec<CycScalar>,
    constant: CycScalar,
}

impl Hyperplane {
    pub fn new(
        field: &CycField,
        linear: Vec<CycScalar>,
        constant: CycScalar,
    ) -> Result<Hyperplane, GeomError> {
        let lead = match linear.iter().position(|c| !c.is_zero()) {
            Some(i) => i,
            None => return Err(GeomError::ZeroLinearPart),
        };
        let inv = field.inv(&linear[lead]).expect("nonzero leading coefficient");
        let linear = linear.iter().map(|c| field.mul(c, &inv)).collect();
        let constant = field.mul(&constant, &inv);
        Ok(Hyperplane { linear, constant })
    }

    pub fn linear(&self) -> &[CycScalar] {
        &self.linear
    }

    pub fn constant(&self) -> &CycScalar {
        &self.constant
    }

    pub fn dim(&self) -> usize {
        self.linear.len()
    }

    /// Coordinates actually appearing in the equation.
    pub fn support(&self) -> Vec<usize> {
        self.linear
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// The flat form: one augmented row (linear | -constant) for Bx = d.
    pub fn to_flat(&self, field: &CycField) -> Flat {
        let mut row = self.linear.clone();
        row.push(field.neg(&self.constant));
        Flat::from_rows(field, self.dim(), vec![row]).expect("hyperplane is nonempty")
    }

    /// c . v, deciding whether v is transversal to the hyperplane.
    pub fn pairing(&self, field: &CycField, v: &Vector) -> CycScalar {
        dot(field, &self.linear, v.entries())
    }

    /// True when v is parallel to H, i.e. H is a member of A_v^c.
    pub fn direction_contains(&self, field: &CycField, v: &Vector) -> bool {
        self.pairing(field, v).is_zero()
    }
}

/// Nonempty affine flat {x : Bx = d} in canonical reduced row echelon form.
/// `rows` are the augmented rows (B | d); the number of rows is the
/// codimension.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Flat {
    ambient: usize,
    rows: Vec<Vec<CycScalar>>,
}

impl Flat {
    /// The whole space C^n (codimension 0).
    pub fn whole(n: usize) -> Flat {
        Flat {
            ambient: n,
            rows: Vec::new(),
        }
    }

    /// Canonicalize a system of augmented rows; None when inconsistent.
    pub fn from_rows(
        field: &CycField,
        ambient: usize,
        rows: Vec<Vec<CycScalar>>,
    ) -> Option<Flat> {
        let mut work = rows;
        for r in &work {
            assert_eq!(r.len(), ambient + 1, "augmented row width");
        }
        rref(field, &mut work, ambient);
        // inconsistent iff some row is (0 .. 0 | nonzero)
        for r in &work {
            if r[..ambient].iter().all(|c| c.is_zero()) && !r[ambient].is_zero() {
                return None;
            }
        }
        work.retain(|r| r.iter().any(|c| !c.is_zero()));
        Some(Flat {
            ambient,
            rows: work,
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn codim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<CycScalar>] {
        &self.rows
    }

    pub fn is_whole(&self) -> bool {
        self.rows.is_empty()
    }

    /// Intersection with a hyperplane; None when empty.
    pub fn intersect_hyperplane(&self, field: &CycField, h: &Hyperplane) -> Option<Flat> {
        assert_eq!(self.ambient, h.dim());
        let mut rows = self.rows.clone();
        let mut row = h.linear().to_vec();
        row.push(field.neg(h.constant()));
        rows.push(row);
        Flat::from_rows(field, self.ambient, rows)
    }

    /// Intersection of two flats; None when empty.
    pub fn intersect(&self, field: &CycField, other: &Flat) -> Option<Flat> {
        assert_eq!(self.ambient, other.ambient);
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Flat::from_rows(field, self.ambient, rows)
    }

    /// self contains other as a set of points: every equation of self is
    /// implied by other's system.
    pub fn contains_flat(&self, field: &CycField, other: &Flat) -> bool {
        assert_eq!(self.ambient, other.ambient);
        self.rows
            .iter()
            .all(|r| reduces_to_zero(field, r, &other.rows, self.ambient + 1))
    }

    /// v lies in the direction space of the flat: Bv = 0.
    pub fn direction_contains(&self, field: &CycField, v: &Vector) -> bool {
        assert_eq!(self.ambient, v.dim());
        self.rows
            .iter()
            .all(|r| dot(field, &r[..self.ambient], v.entries()).is_zero())
    }

    /// The cylinder <v, S>: affine hull of S swept along v. Equal to S when
    /// v is parallel to S; otherwise codimension drops by exactly one.
    pub fn cylinder(&self, field: &CycField, v: &Vector) -> Flat {
        assert_eq!(self.ambient, v.dim());
        let pairings: Vec<CycScalar> = self
            .rows
            .iter()
            .map(|r| dot(field, &r[..self.ambient], v.entries()))
            .collect();
        let pivot = match pairings.iter().position(|p| !p.is_zero()) {
            None => return self.clone(),
            Some(i) => i,
        };
        // Clear the v-component from every other row using the pivot row,
        // then drop the pivot row: the remaining equations are exactly those
        // valid on S + Cv.
        let mut rows = Vec::with_capacity(self.rows.len() - 1);
        let pinv = field.inv(&pairings[pivot]).expect("nonzero pairing");
        for (k, row) in self.rows.iter().enumerate() {
            if k == pivot {
                continue;
            }
            if pairings[k].is_zero() {
                rows.push(row.clone());
            } else {
                let factor = field.mul(&pairings[k], &pinv);
                let adjusted: Vec<CycScalar> = row
                    .iter()
                    .zip(&self.rows[pivot])
                    .map(|(a, b)| field.sub(a, &field.mul(&factor, b)))
                    .collect();
                rows.push(adjusted);
            }
        }
        Flat::from_rows(field, self.ambient, rows).expect("cylinder of nonempty flat is nonempty")
    }

    /// When the flat has codimension 1, view it as a hyperplane.
    pub fn as_hyperplane(&self, field: &CycField) -> Option<Hyperplane> {
        if self.codim() != 1 {
            return None;
        }
        let row = &self.rows[0];
        Hyperplane::new(
            field,
            row[..self.ambient].to_vec(),
            field.neg(&row[self.ambient]),
        )
        .ok()
    }

    /// Coordinates of the unique point when codim = ambient.
    pub fn as_point(&self, field: &CycField) -> Option<Vec<CycScalar>> {
        if self.codim() != self.ambient {
            return None;
        }
        // RREF with full rank: pivot in every column, point = d column.
        let mut point = vec![field.zero(); self.ambient];
        for r in &self.rows {
            let lead = r[..self.ambient]
                .iter()
                .position(|c| !c.is_zero())
                .expect("nonzero row");
            point[lead] = r[self.ambient].clone();
        }
        Some(point)
    }
}

/// Linear subspace of C^n given by an RREF basis (rows span the subspace).
/// Canonical: equal subspaces have identical bases.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<CycScalar>>,
}

impl Subspace {
    pub fn whole(field: &CycField, n: usize) -> Subspace {
        let basis = (0..n)
            .map(|i| {
                let mut row = vec![field.zero(); n];
                row[i] = field.one();
                row
            })
            .collect();
        Subspace { ambient: n, basis }
    }

    pub fn from_spanning(field: &CycField, n: usize, vectors: Vec<Vec<CycScalar>>) -> Subspace {
        let mut rows = vectors;
        rref(field, &mut rows, n);
        rows.retain(|r| r.iter().any(|c| !c.is_zero()));
        Subspace { ambient: n, basis: rows }
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Vec<CycScalar>] {
        &self.basis
    }

    pub fn contains(&self, field: &CycField, v: &Vector) -> bool {
        reduces_to_zero(field, v.entries(), &self.basis, self.ambient)
    }

    pub fn contains_subspace(&self, field: &CycField, other: &Subspace) -> bool {
        other
            .basis
            .iter()
            .all(|r| reduces_to_zero(field, r, &self.basis, self.ambient))
    }

    /// Intersection with the direction hyperplane {w : c.w = 0}.
    pub fn intersect_direction(&self, field: &CycField, normal: &[CycScalar]) -> Subspace {
        // One linear condition on the coordinates t of w = sum t_i g_i.
        let pairings: Vec<CycScalar> = self
            .basis
            .iter()
            .map(|g| dot(field, normal, g))
            .collect();
        let pivot = match pairings.iter().position(|p| !p.is_zero()) {
            None => return self.clone(),
            Some(i) => i,
        };
        let pinv = field.inv(&pairings[pivot]).expect("nonzero pairing");
        let mut vectors = Vec::with_capacity(self.basis.len() - 1);
        for (k, g) in self.basis.iter().enumerate() {
            if k == pivot {
                continue;
            }
            if pairings[k].is_zero() {
                vectors.push(g.clone());
            } else {
                let factor = field.mul(&pairings[k], &pinv);
                vectors.push(
                    g.iter()
                        .zip(&self.basis[pivot])
                        .map(|(a, b)| field.sub(a, &field.mul(&factor, b)))
                        .collect(),
                );
            }
        }
        Subspace::from_spanning(field, self.ambient, vectors)
    }
}

pub(crate) fn dot(field: &CycField, a: &[CycScalar], b: &[CycScalar]) -> CycScalar {
    let mut acc = field.zero();
    for (x, y) in a.iter().zip(b) {
        if !x.is_zero() && !y.is_zero() {
            acc = field.add(&acc, &field.mul(x, y));
        }
    }
    acc
}

/// Reduce `row` against an RREF system; true when it lands on zero, i.e. the
/// row lies in the span of the system.
fn reduces_to_zero(
    field: &CycField,
    row: &[CycScalar],
    system: &[Vec<CycScalar>],
    width: usize,
) -> bool {
    let mut work = row.to_vec();
    for sys_row in system {
        let lead = match sys_row.iter().position(|c| !c.is_zero()) {
            Some(i) => i,
            None => continue,
        };
        if work[lead].is_zero() {
            continue;
        }
        let factor = work[lead].clone();
        for k in lead..width {
            let t = field.mul(&factor, &sys_row[k]);
            work[k] = field.sub(&work[k], &t);
        }
    }
    work.iter().all(|c| c.is_zero())
}

/// In-place reduced row echelon form with pivot choice: leftmost column,
/// first available row; pivots normalized to 1, pivot columns cleared,
/// rows ordered by pivot column. Deterministic canonical keys fall out.
pub(crate) fn rref(field: &CycField, rows: &mut [Vec<CycScalar>], width: usize) {
    let mut pivot_row = 0;
    for col in 0..width {
        let found = (pivot_row..rows.len()).find(|&r| !rows[r][col].is_zero());
        let r = match found {
            Some(r) => r,
            None => continue,
        };
        rows.swap(pivot_row, r);
        let inv = field
            .inv(&rows[pivot_row][col])
            .expect("pivot entry is nonzero");
        for k in col..rows[pivot_row].len() {
            rows[pivot_row][k] = field.mul(&rows[pivot_row][k], &inv);
        }
        for other in 0..rows.len() {
            if other == pivot_row || rows[other][col].is_zero() {
                continue;
            }
            let factor = rows[other][col].clone();
            for k in col..rows[other].len() {
                let t = field.mul(&factor, &rows[pivot_row][k]);
                rows[other][k] = field.sub(&rows[other][k], &t);
            }
        }
        pivot_row += 1;
        if pivot_row == rows.len() {
            break;
        }
    }
    // Width may be smaller than the row length (augmented systems): a row
    // that is zero on the first `width` columns stays put for the caller to
    // interpret (consistency check).
}

/// Rank of a set of vectors, by RREF.
pub(crate) fn rank(field: &CycField, vectors: &[Vec<CycScalar>], width: usize) -> usize {
    let mut rows = vectors.to_vec();
    rref(field, &mut rows, width);
    rows.iter()
        .filter(|r| r.iter().any(|c| !c.is_zero()))
        .count()
}
