//! Logarithmic connections on an arrangement: one square residue matrix per
//! hyperplane, the stratum-wise integrability check, and the addition gauge
//! transform.
//!
//! Integrability of `du = (sum A_H dlog f_H) u` is decided by the residue
//! condition at every codimension-2 flat S: for each H containing S the
//! commutator [A_H, sum over A_S of the residues] must vanish. The 2-form
//! itself is never materialized; the check is an exact finite computation
//! over the intersection poset.

use crate::cyclo::{CycField, CycScalar};
use crate::poset::{build_poset, Arrangement};
use thiserror::Error;

pub type Matrix = Vec<Vec<CycScalar>>;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConnectionError {
    #[error("expected one residue matrix per hyperplane: {hyperplanes} hyperplanes, {residues} matrices")]
    CountMismatch { hyperplanes: usize, residues: usize },
    #[error("residue matrix {index} is not {size}x{size}")]
    SizeMismatch { index: usize, size: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogConnection {
    arrangement: Arrangement,
    size: usize,
    residues: Vec<Matrix>,
}

/// A failed residue condition at one codimension-2 stratum: the flat
/// (by its canonical index in L^(2)) together with every hyperplane whose
/// commutator with the summed residue is nonzero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Violation {
    pub flat_index: usize,
    pub hyperplanes: Vec<usize>,
}

impl LogConnection {
    pub fn new(
        arrangement: Arrangement,
        size: usize,
        residues: Vec<Matrix>,
    ) -> Result<LogConnection, ConnectionError> {
        if residues.len() != arrangement.len() {
            return Err(ConnectionError::CountMismatch {
                hyperplanes: arrangement.len(),
                residues: residues.len(),
            });
        }
        for (i, m) in residues.iter().enumerate() {
            if m.len() != size || m.iter().any(|row| row.len() != size) {
                return Err(ConnectionError::SizeMismatch { index: i, size });
            }
        }
        Ok(LogConnection {
            arrangement,
            size,
            residues,
        })
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn residues(&self) -> &[Matrix] {
        &self.residues
    }

    /// Residue condition at every codimension-2 flat; empty result means the
    /// connection is integrable. One violation per failing flat, indexed by
    /// the flat's canonical position in L^(2), listing the hyperplanes whose
    /// commutator with the summed residue is nonzero.
    pub fn check_integrability(&self) -> Vec<Violation> {
        let field = self.arrangement.field();
        let poset = build_poset(&self.arrangement);
        let mut violations = Vec::new();
        for (flat_index, s) in poset.level(2).iter().enumerate() {
            let through = poset.through(s).expect("flat from the poset");
            let mut total = zero_matrix(field, self.size);
            for &h in through {
                total = mat_add(field, &total, &self.residues[h]);
            }
            let mut bad = Vec::new();
            for &h in through {
                let left = mat_mul(field, &self.residues[h], &total);
                let right = mat_mul(field, &total, &self.residues[h]);
                if left != right {
                    bad.push(h);
                }
            }
            if !bad.is_empty() {
                violations.push(Violation {
                    flat_index,
                    hyperplanes: bad,
                });
            }
        }
        violations
    }

    /// Gauge change u -> (prod f_H^{lambda_H}) u: shifts each residue by
    /// lambda_H * I. The arrangement is unchanged.
    pub fn apply_addition(&self, lambdas: &[CycScalar]) -> LogConnection {
        assert_eq!(lambdas.len(), self.arrangement.len());
        let field = self.arrangement.field();
        let residues = self
            .residues
            .iter()
            .zip(lambdas)
            .map(|(m, lambda)| {
                let mut shifted = m.clone();
                for (d, row) in shifted.iter_mut().enumerate() {
                    row[d] = field.add(&row[d], lambda);
                }
                shifted
            })
            .collect();
        LogConnection {
            arrangement: self.arrangement.clone(),
            size: self.size,
            residues,
        }
    }

    /// Simultaneous conjugation of all residues by an invertible P with the
    /// given inverse (caller supplies both; exactness is asserted).
    pub fn conjugate(&self, p: &Matrix, p_inv: &Matrix) -> LogConnection {
        let field = self.arrangement.field();
        debug_assert_eq!(
            mat_mul(field, p, p_inv),
            identity_matrix(field, self.size)
        );
        let residues = self
            .residues
            .iter()
            .map(|m| mat_mul(field, p_inv, &mat_mul(field, m, p)))
            .collect();
        LogConnection {
            arrangement: self.arrangement.clone(),
            size: self.size,
            residues,
        }
    }
}

pub fn zero_matrix(field: &CycField, n: usize) -> Matrix {
    vec![vec![field.zero(); n]; n]
}

pub fn identity_matrix(field: &CycField, n: usize) -> Matrix {
    let mut m = zero_matrix(field, n);
    for (d, row) in m.iter_mut().enumerate() {
        row[d] = field.one();
    }
    m
}

pub fn mat_add(field: &CycField, a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| field.add(x, y)).collect())
        .collect()
}

pub fn mat_mul(field: &CycField, a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = zero_matrix(field, n);
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..n {
                if b[k][j].is_zero() {
                    continue;
                }
                let t = field.mul(aik, &b[k][j]);
                out[i][j] = field.add(&out[i][j], &t);
            }
        }
    }
    out
}
