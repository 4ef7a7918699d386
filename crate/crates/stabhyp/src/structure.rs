//! Structural operations: decomposition into independent coordinate blocks,
//! reduction (merging collinear coordinate pairs), specialization to
//! coordinate sections, and the coordinate transforms used throughout.

use crate::cyclo::{CycField, CycScalar};
use crate::geom::Hyperplane;
use crate::poset::Arrangement;

/// Diagonal coordinate transform x_j -> a_j * x_{sigma(j)} + b_j with a
/// permutation sigma and nonzero scales. These transforms preserve both
/// stability notions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoordTransform {
    pub permutation: Vec<usize>,
    pub scales: Vec<CycScalar>,
    pub shifts: Vec<CycScalar>,
}

impl CoordTransform {
    pub fn identity(field: &CycField, n: usize) -> CoordTransform {
        CoordTransform {
            permutation: (0..n).collect(),
            scales: vec![field.one(); n],
            shifts: vec![field.zero(); n],
        }
    }

    pub fn new(
        permutation: Vec<usize>,
        scales: Vec<CycScalar>,
        shifts: Vec<CycScalar>,
    ) -> CoordTransform {
        let n = permutation.len();
        assert_eq!(scales.len(), n);
        assert_eq!(shifts.len(), n);
        let mut seen = vec![false; n];
        for &p in &permutation {
            assert!(p < n && !seen[p], "not a permutation");
            seen[p] = true;
        }
        assert!(scales.iter().all(|a| !a.is_zero()), "zero scale");
        CoordTransform {
            permutation,
            scales,
            shifts,
        }
    }

    pub fn to_affine(&self, field: &CycField) -> AffineMap {
        let n = self.permutation.len();
        let mut matrix = vec![vec![field.zero(); n]; n];
        for j in 0..n {
            matrix[j][self.permutation[j]] = self.scales[j].clone();
        }
        AffineMap {
            matrix,
            shift: self.shifts.clone(),
        }
    }
}

/// Invertible affine substitution x = M y + s, applied to arrangements by
/// pullback: the hyperplane f(x) = 0 becomes f(M y + s) = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineMap {
    /// Row-major: x_i = sum_j matrix[i][j] y_j + shift[i].
    pub matrix: Vec<Vec<CycScalar>>,
    pub shift: Vec<CycScalar>,
}

impl AffineMap {
    pub fn identity(field: &CycField, n: usize) -> AffineMap {
        CoordTransform::identity(field, n).to_affine(field)
    }

    pub fn linear(matrix: Vec<Vec<CycScalar>>, field: &CycField) -> AffineMap {
        let n = matrix.len();
        AffineMap {
            matrix,
            shift: vec![field.zero(); n],
        }
    }

    pub fn dim(&self) -> usize {
        self.matrix.len()
    }

    pub fn is_identity(&self, field: &CycField) -> bool {
        let n = self.dim();
        self.shift.iter().all(|s| s.is_zero())
            && (0..n).all(|i| {
                (0..n).all(|j| {
                    if i == j {
                        self.matrix[i][j] == field.one()
                    } else {
                        self.matrix[i][j].is_zero()
                    }
                })
            })
    }

    /// The inverse substitution y = M^{-1} x - M^{-1} s; None when the
    /// matrix is singular.
    pub fn inverse(&self, field: &CycField) -> Option<AffineMap> {
        let n = self.dim();
        // row-reduce [M | I]
        let mut rows: Vec<Vec<CycScalar>> = (0..n)
            .map(|i| {
                let mut row = self.matrix[i].clone();
                for j in 0..n {
                    row.push(if i == j { field.one() } else { field.zero() });
                }
                row
            })
            .collect();
        crate::geom::rref(field, &mut rows, 2 * n);
        for (i, row) in rows.iter().enumerate() {
            for (j, entry) in row[..n].iter().enumerate() {
                let expected = if i == j { field.one() } else { field.zero() };
                if *entry != expected {
                    return None;
                }
            }
        }
        let inv: Vec<Vec<CycScalar>> = rows.iter().map(|r| r[n..].to_vec()).collect();
        let mut shift = vec![field.zero(); n];
        for (i, slot) in shift.iter_mut().enumerate() {
            for (entry, b) in inv[i].iter().zip(&self.shift) {
                if !entry.is_zero() && !b.is_zero() {
                    *slot = field.sub(slot, &field.mul(entry, b));
                }
            }
        }
        Some(AffineMap { matrix: inv, shift })
    }

    /// Pullback of one hyperplane: c.x + c0 = 0 with x = M y + s turns into
    /// (c^T M) y + (c.s + c0) = 0.
    pub fn apply_hyperplane(&self, field: &CycField, h: &Hyperplane) -> Hyperplane {
        let n = self.dim();
        assert_eq!(h.dim(), n);
        let mut linear = vec![field.zero(); n];
        for (j, slot) in linear.iter_mut().enumerate() {
            for (i, c) in h.linear().iter().enumerate() {
                if !c.is_zero() && !self.matrix[i][j].is_zero() {
                    *slot = field.add(slot, &field.mul(c, &self.matrix[i][j]));
                }
            }
        }
        let mut constant = h.constant().clone();
        for (i, c) in h.linear().iter().enumerate() {
            if !c.is_zero() && !self.shift[i].is_zero() {
                constant = field.add(&constant, &field.mul(c, &self.shift[i]));
            }
        }
        Hyperplane::new(field, linear, constant).expect("invertible map keeps linear part nonzero")
    }

    pub fn apply(&self, arr: &Arrangement) -> Arrangement {
        let field = arr.field();
        let hyperplanes = arr
            .hyperplanes()
            .iter()
            .map(|h| self.apply_hyperplane(field, h))
            .collect();
        let out = Arrangement::new(field.clone(), arr.dim(), hyperplanes);
        debug_assert_eq!(
            out.len(),
            arr.len(),
            "invertible pullback keeps members distinct"
        );
        out
    }
}

/// Partition of the coordinates into blocks that no hyperplane straddles,
/// with the projected factor arrangement of each block.
#[derive(Debug, Clone)]
pub struct Decomposition {
    /// Ascending coordinate indices per block; blocks ordered by first
    /// element.
    pub blocks: Vec<Vec<usize>>,
    pub factors: Vec<Arrangement>,
}

impl Decomposition {
    pub fn is_indecomposable(&self) -> bool {
        self.blocks.len() == 1
    }

    /// Reassemble the source: the union over blocks of the pullbacks of the
    /// factors along the block projections.
    pub fn reassemble(&self, field: &CycField, n: usize) -> Arrangement {
        let mut hyperplanes = Vec::new();
        for (block, factor) in self.blocks.iter().zip(&self.factors) {
            for h in factor.hyperplanes() {
                let mut linear = vec![field.zero(); n];
                for (pos, &coord) in block.iter().enumerate() {
                    linear[coord] = h.linear()[pos].clone();
                }
                hyperplanes.push(
                    Hyperplane::new(field, linear, h.constant().clone())
                        .expect("factor hyperplanes are nonzero"),
                );
            }
        }
        Arrangement::new(field.clone(), n, hyperplanes)
    }
}

/// Blocks are the connected components of the graph on coordinates with an
/// edge wherever one hyperplane uses both; factors restrict each hyperplane
/// to its block. Works on any arrangement (meaningful for stable ones).
pub fn decompose(arr: &Arrangement) -> Decomposition {
    let n = arr.dim();
    let field = arr.field();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    for h in arr.hyperplanes() {
        let support = h.support();
        for w in support.windows(2) {
            let (a, b) = (find(&mut parent, w[0]), find(&mut parent, w[1]));
            if a != b {
                parent[a] = b;
            }
        }
    }
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut root_to_block: std::collections::BTreeMap<usize, usize> = Default::default();
    for i in 0..n {
        let r = find(&mut parent, i);
        let idx = *root_to_block.entry(r).or_insert_with(|| {
            blocks.push(Vec::new());
            blocks.len() - 1
        });
        blocks[idx].push(i);
    }
    blocks.sort_by_key(|b| b[0]);
    let mut factors = Vec::with_capacity(blocks.len());
    for block in &blocks {
        let mut hyperplanes = Vec::new();
        for h in arr.hyperplanes() {
            let support = h.support();
            if support.is_empty() {
                continue;
            }
            if block.contains(&support[0]) {
                // a hyperplane lives in exactly one block by construction
                debug_assert!(support.iter().all(|s| block.contains(s)));
                let linear: Vec<CycScalar> =
                    block.iter().map(|&c| h.linear()[c].clone()).collect();
                hyperplanes.push(
                    Hyperplane::new(field, linear, h.constant().clone())
                        .expect("restriction keeps the linear part"),
                );
            }
        }
        factors.push(Arrangement::new(field.clone(), block.len(), hyperplanes));
    }
    Decomposition { blocks, factors }
}

/// One merge step: coordinates (i, j), i < j, every coefficient pair
/// (c_i, c_j) proportional to (a, b); the source is the pullback of the
/// merged arrangement under x -> (.., a x_i + b x_j, ..).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction {
    pub i: usize,
    pub j: usize,
    pub a: CycScalar,
    pub b: CycScalar,
}

/// Scan coordinate pairs in lexicographic order for a pair whose coefficient
/// columns are collinear; (a, b) is normalized with its first nonzero entry
/// equal to 1. An unused coordinate j pairs as (1, 0) against any i < j.
pub fn find_reduction(arr: &Arrangement) -> Option<Reduction> {
    let n = arr.dim();
    let field = arr.field();
    for i in 0..n {
        'pair: for j in (i + 1)..n {
            let mut dir: Option<(CycScalar, CycScalar)> = None;
            for h in arr.hyperplanes() {
                let ci = &h.linear()[i];
                let cj = &h.linear()[j];
                if ci.is_zero() && cj.is_zero() {
                    continue;
                }
                match &dir {
                    None => {
                        // normalize first nonzero to 1
                        if !ci.is_zero() {
                            let inv = field.inv(ci).expect("nonzero");
                            dir = Some((field.one(), field.mul(cj, &inv)));
                        } else {
                            dir = Some((field.zero(), field.one()));
                        }
                    }
                    Some((a, b)) => {
                        // collinearity: ci * b - cj * a = 0
                        let det = field.sub(&field.mul(ci, b), &field.mul(cj, a));
                        if !det.is_zero() {
                            continue 'pair;
                        }
                    }
                }
            }
            let (a, b) = dir.unwrap_or((field.one(), field.zero()));
            return Some(Reduction { i, j, a, b });
        }
    }
    None
}

/// Apply one merge: coordinate j disappears, coordinate i carries the merged
/// variable u = a x_i + b x_j. Each hyperplane's (c_i, c_j) = t (a, b)
/// contributes coefficient t at the merged position.
pub fn apply_reduction(arr: &Arrangement, red: &Reduction) -> Arrangement {
    let field = arr.field();
    let n = arr.dim();
    assert!(red.i < red.j && red.j < n);
    let mut hyperplanes = Vec::new();
    for h in arr.hyperplanes() {
        let ci = &h.linear()[red.i];
        let cj = &h.linear()[red.j];
        // t with (c_i, c_j) = t (a, b)
        let t = if !red.a.is_zero() {
            field.div(ci, &red.a).expect("a nonzero")
        } else {
            field.div(cj, &red.b).expect("b nonzero when a is zero")
        };
        debug_assert_eq!(field.mul(&t, &red.a), *ci);
        debug_assert_eq!(field.mul(&t, &red.b), *cj);
        let mut linear = Vec::with_capacity(n - 1);
        for (k, c) in h.linear().iter().enumerate() {
            if k == red.j {
                continue;
            }
            if k == red.i {
                linear.push(t.clone());
            } else {
                linear.push(c.clone());
            }
        }
        hyperplanes.push(
            Hyperplane::new(field, linear, h.constant().clone())
                .expect("merged hyperplane keeps a linear part"),
        );
    }
    Arrangement::new(field.clone(), n - 1, hyperplanes)
}

/// Iterate `find_reduction` until none applies; stability (in both senses)
/// of the result equals that of the source.
pub fn reduce_fully(arr: &Arrangement) -> (Arrangement, Vec<Reduction>) {
    let mut current = arr.clone();
    let mut steps = Vec::new();
    while current.dim() >= 2 {
        match find_reduction(&current) {
            Some(red) => {
                current = apply_reduction(&current, &red);
                steps.push(red);
            }
            None => break,
        }
    }
    (current, steps)
}

/// Undo a chain of merges: pull an arrangement in the reduced coordinates
/// back through the recorded steps (last step undone first).
pub fn unreduce(arr: &Arrangement, steps: &[Reduction]) -> Arrangement {
    let field = arr.field().clone();
    let mut current = arr.clone();
    for red in steps.iter().rev() {
        let n = current.dim() + 1;
        let mut hyperplanes = Vec::new();
        for h in current.hyperplanes() {
            let mut linear = Vec::with_capacity(n);
            for k in 0..n {
                if k == red.j {
                    let t = &h.linear()[red.i];
                    linear.push(field.mul(t, &red.b));
                } else {
                    let src = if k > red.j { k - 1 } else { k };
                    if k == red.i {
                        let t = &h.linear()[src];
                        linear.push(field.mul(t, &red.a));
                    } else {
                        linear.push(h.linear()[src].clone());
                    }
                }
            }
            hyperplanes.push(
                Hyperplane::new(&field, linear, h.constant().clone())
                    .expect("pullback keeps the linear part"),
            );
        }
        current = Arrangement::new(field.clone(), n, hyperplanes);
    }
    current
}

/// Restriction of A to the section x_{m+1..n} = p: substitute the point into
/// every equation, drop tautologies and contradictions, deduplicate.
pub fn specialize(arr: &Arrangement, keep: usize, point: &[CycScalar]) -> Arrangement {
    let n = arr.dim();
    let field = arr.field();
    assert!(keep >= 1 && keep < n, "keep must satisfy 1 <= m < n");
    assert_eq!(point.len(), n - keep);
    let mut hyperplanes = Vec::new();
    for h in arr.hyperplanes() {
        let linear: Vec<CycScalar> = h.linear()[..keep].to_vec();
        let mut constant = h.constant().clone();
        for (k, p) in point.iter().enumerate() {
            let c = &h.linear()[keep + k];
            if !c.is_zero() {
                constant = field.add(&constant, &field.mul(c, p));
            }
        }
        if linear.iter().all(|c| c.is_zero()) {
            // substituted to a constant equation: V' itself or empty
            continue;
        }
        hyperplanes.push(Hyperplane::new(field, linear, constant).expect("nonzero linear part"));
    }
    Arrangement::new(field.clone(), keep, hyperplanes)
}
