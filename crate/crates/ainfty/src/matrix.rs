//! Sparse matrices over an exact field, with deterministic rank and kernel
//! computations.
//!
//! Storage is column-major. Elimination pivots are chosen deterministically
//! (columns left to right, smallest row index within a column), so repeated
//! runs on the same input produce identical echelon data.

use std::collections::BTreeMap;

use crate::error::LinAlgError;
use crate::scalar::{Field, Scalar};

/// A sparse column: strictly increasing row indices, no explicit zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    field: Field,
    nrows: usize,
    ncols: usize,
    cols: Vec<SparseVec>,
}

impl SparseMatrix {
    pub fn zero(field: Field, nrows: usize, ncols: usize) -> Self {
        SparseMatrix { field, nrows, ncols, cols: vec![Vec::new(); ncols] }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for (j, col) in m.cols.iter_mut().enumerate() {
            col.push((j, field.one()));
        }
        m
    }

    /// Build from (row, col, value) triplets. Rejects out-of-range indices,
    /// duplicate positions, explicit zeros and mixed-field values.
    pub fn from_triplets(
        field: Field,
        nrows: usize,
        ncols: usize,
        entries: impl IntoIterator<Item = (usize, usize, Scalar)>,
    ) -> Result<Self, LinAlgError> {
        let mut m = Self::zero(field, nrows, ncols);
        for (r, c, v) in entries {
            if r >= nrows || c >= ncols {
                return Err(LinAlgError::OutOfBounds { row: r, col: c, rows: nrows, cols: ncols });
            }
            if v.field() != field {
                return Err(LinAlgError::MixedField {
                    row: r,
                    col: c,
                    expected: field,
                    found: v.field(),
                });
            }
            if v.is_zero() {
                continue;
            }
            match m.cols[c].binary_search_by_key(&r, |e| e.0) {
                Ok(_) => return Err(LinAlgError::DuplicateEntry { row: r, col: c }),
                Err(pos) => m.cols[c].insert(pos, (r, v)),
            }
        }
        Ok(m)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.cols.iter().map(Vec::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(Vec::is_empty)
    }

    pub fn col(&self, j: usize) -> &SparseVec {
        &self.cols[j]
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut cols = vec![Vec::new(); self.nrows];
        for (j, col) in self.cols.iter().enumerate() {
            for (i, v) in col {
                cols[*i].push((j, v.clone()));
            }
        }
        SparseMatrix { field: self.field, nrows: self.ncols, ncols: self.nrows, cols }
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &SparseMatrix) -> SparseMatrix {
        assert_eq!(self.ncols, rhs.nrows, "shape mismatch in matrix product");
        assert_eq!(self.field, rhs.field);
        let cols = rhs.cols.iter().map(|col| self.apply(col)).collect();
        SparseMatrix { field: self.field, nrows: self.nrows, ncols: rhs.ncols, cols }
    }

    /// Matrix-vector product with a sparse column vector.
    pub fn apply(&self, v: &SparseVec) -> SparseVec {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        for (j, c) in v {
            for (i, a) in &self.cols[*j] {
                let t = a.mul(c);
                acc.entry(*i)
                    .and_modify(|s| *s = s.add(&t))
                    .or_insert(t);
            }
        }
        acc.into_iter().filter(|(_, s)| !s.is_zero()).collect()
    }

    /// Exact rank.
    pub fn rank(&self) -> usize {
        Eliminator::new().rank_of(self.cols.iter())
    }

    /// Basis of the kernel, as combinations of the original columns.
    pub fn kernel_basis(&self) -> Vec<SparseVec> {
        let mut elim = Eliminator::new();
        let mut kernel = Vec::new();
        for (j, col) in self.cols.iter().enumerate() {
            let mut work = col.clone();
            let mut combo: SparseVec = vec![(j, self.field.one())];
            elim.reduce(&mut work, Some(&mut combo));
            if work.is_empty() {
                kernel.push(combo);
            } else {
                elim.insert_pivot(work, combo);
            }
        }
        kernel
    }

    /// rank of the image of this matrix inside the quotient by the column
    /// span of `modulo`: rank([modulo | self]) - rank(modulo).
    pub fn rank_mod(&self, modulo: &SparseMatrix) -> usize {
        assert_eq!(self.nrows, modulo.nrows);
        let mut elim = Eliminator::new();
        let base = elim.rank_of(modulo.cols.iter());
        let total = base + elim.rank_of(self.cols.iter());
        total - base
    }
}

/// Incremental column eliminator holding the pivot columns found so far.
struct Eliminator {
    /// (pivot row, normalized column, combination) sorted by insertion order.
    pivots: Vec<(usize, SparseVec, SparseVec)>,
    /// pivot row -> index into `pivots`.
    by_row: BTreeMap<usize, usize>,
}

impl Eliminator {
    fn new() -> Self {
        Eliminator { pivots: Vec::new(), by_row: BTreeMap::new() }
    }

    fn rank_of<'a>(&mut self, cols: impl Iterator<Item = &'a SparseVec>) -> usize {
        let mut rank = 0;
        for col in cols {
            let mut work = col.clone();
            self.reduce(&mut work, None);
            if !work.is_empty() {
                self.insert_pivot(work, Vec::new());
                rank += 1;
            }
        }
        rank
    }

    /// Reduce `col` against all pivots, tracking the combination if asked.
    fn reduce(&self, col: &mut SparseVec, mut combo: Option<&mut SparseVec>) {
        loop {
            // Smallest remaining row that is a pivot row decides the next step.
            let hit = col.iter().find_map(|(r, _)| self.by_row.get(r).copied());
            let Some(pi) = hit else { break };
            let (prow, pcol, pcombo) = &self.pivots[pi];
            let coeff = col
                .iter()
                .find(|(r, _)| r == prow)
                .map(|(_, v)| v.clone())
                .expect("pivot row present");
            axpy(col, &coeff.neg(), pcol);
            if let Some(c) = combo.as_deref_mut() {
                axpy(c, &coeff.neg(), pcombo);
            }
        }
    }

    /// Register a fully reduced nonzero column as a new pivot, normalized so
    /// the entry at the smallest row index is 1.
    fn insert_pivot(&mut self, mut col: SparseVec, mut combo: SparseVec) {
        let (prow, pval) = col.first().cloned().expect("nonzero column");
        let inv = pval.inv().expect("pivot entry nonzero");
        scale(&mut col, &inv);
        scale(&mut combo, &inv);
        let idx = self.pivots.len();
        self.pivots.push((prow, col, combo));
        self.by_row.insert(prow, idx);
    }
}

/// x += c * y on sparse vectors.
fn axpy(x: &mut SparseVec, c: &Scalar, y: &SparseVec) {
    if c.is_zero() || y.is_empty() {
        return;
    }
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i].clone());
            i += 1;
        } else if take_y {
            out.push((y[j].0, c.mul(&y[j].1)));
            j += 1;
        } else {
            let s = x[i].1.add(&c.mul(&y[j].1));
            if !s.is_zero() {
                out.push((x[i].0, s));
            }
            i += 1;
            j += 1;
        }
    }
    *x = out;
}

fn scale(x: &mut SparseVec, c: &Scalar) {
    for (_, v) in x.iter_mut() {
        *v = v.mul(c);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Field::Rationals.from_i64(n)
    }

    /// Dense textbook row reduction, kept independent of the sparse path.
    fn dense_rank(field: Field, nrows: usize, ncols: usize, entries: &[(usize, usize, i64)]) -> usize {
        let mut a = vec![vec![field.zero(); ncols]; nrows];
        for (r, c, v) in entries {
            a[*r][*c] = field.from_i64(*v);
        }
        let mut rank = 0;
        for col in 0..ncols {
            let piv = (rank..nrows).find(|&r| !a[r][col].is_zero());
            let Some(piv) = piv else { continue };
            a.swap(rank, piv);
            let inv = a[rank][col].inv().unwrap();
            for entry in a[rank].iter_mut() {
                *entry = entry.mul(&inv);
            }
            for r in 0..nrows {
                if r != rank && !a[r][col].is_zero() {
                    let f = a[r][col].clone();
                    let pivot_row = a[rank].clone();
                    for (entry, p) in a[r].iter_mut().zip(&pivot_row) {
                        let t = p.mul(&f);
                        *entry = entry.sub(&t);
                    }
                }
            }
            rank += 1;
        }
        rank
    }

    fn build(field: Field, nrows: usize, ncols: usize, entries: &[(usize, usize, i64)]) -> SparseMatrix {
        SparseMatrix::from_triplets(
            field,
            nrows,
            ncols,
            entries.iter().map(|(r, c, v)| (*r, *c, field.from_i64(*v))),
        )
        .unwrap()
    }

    #[test]
    fn empty_matrix_has_rank_zero() {
        assert_eq!(SparseMatrix::zero(Field::Rationals, 0, 0).rank(), 0);
    }

    #[test]
    fn identity_rank() {
        assert_eq!(SparseMatrix::identity(Field::Rationals, 2).rank(), 2);
    }

    #[test]
    fn rank_depends_on_field() {
        // [[2, 4], [1, 2]]: rank 1 over Q (hand row reduction: R0 -> R0 - 2 R1
        // kills the first row). Mod 2 the matrix is [[0,0],[1,0]], rank 1;
        // the fully even matrix [[2,4],[6,2]] drops to rank 0 over F2.
        let entries = [(0, 0, 2), (0, 1, 4), (1, 0, 1), (1, 1, 2)];
        let mq = build(Field::Rationals, 2, 2, &entries);
        assert_eq!(mq.rank(), 1);
        let m2 = build(Field::Prime(2), 2, 2, &entries);
        assert_eq!(m2.rank(), dense_rank(Field::Prime(2), 2, 2, &entries));
        assert_eq!(m2.rank(), 1);
        let even = [(0, 0, 2), (0, 1, 4), (1, 0, 6), (1, 1, 2)];
        assert_eq!(build(Field::Prime(2), 2, 2, &even).rank(), 0);
        assert_eq!(build(Field::Rationals, 2, 2, &even).rank(), 2);
    }

    #[test]
    fn rank_matches_dense_oracle() {
        type Case = (usize, usize, Vec<(usize, usize, i64)>);
        let cases: Vec<Case> = vec![
            (3, 4, vec![(0, 0, 1), (0, 1, 2), (1, 1, 3), (2, 3, -5), (1, 3, 7), (2, 0, 4)]),
            (4, 4, vec![(0, 0, 2), (1, 1, 6), (2, 2, 10), (3, 3, 15), (0, 3, 30), (3, 0, 1)]),
            (5, 3, vec![(0, 0, 1), (1, 0, 2), (2, 0, 3), (0, 1, 2), (1, 1, 4), (2, 1, 6), (4, 2, 9)]),
            (2, 2, vec![]),
        ];
        for field in [Field::Rationals, Field::Prime(2), Field::Prime(5)] {
            for (nr, nc, entries) in &cases {
                let m = build(field, *nr, *nc, entries);
                assert_eq!(m.rank(), dense_rank(field, *nr, *nc, entries), "over {field}");
            }
        }
    }

    #[test]
    fn rank_over_q_at_least_rank_over_fp() {
        let entries =
            [(0, 0, 6), (0, 1, 10), (1, 0, 15), (1, 1, 25), (2, 2, 7), (0, 2, 14), (2, 0, 21)];
        let rq = build(Field::Rationals, 3, 3, &entries).rank();
        for p in [2, 3, 5, 7, 11] {
            let rp = build(Field::Prime(p), 3, 3, &entries).rank();
            assert!(rq >= rp, "rank over Q {rq} < rank over F{p} {rp}");
        }
    }

    /// Exhaustive oracle over F2: enumerate all 2^n candidate vectors and
    /// count the kernel directly.
    #[test]
    fn kernel_dimension_matches_exhaustive_enumeration_over_f2() {
        let f = Field::Prime(2);
        type Case = (usize, usize, Vec<(usize, usize, i64)>);
        let cases: Vec<Case> = vec![
            (3, 4, vec![(0, 0, 1), (0, 1, 1), (1, 1, 1), (2, 3, 1), (1, 3, 1), (2, 0, 1)]),
            (2, 5, vec![(0, 0, 1), (1, 1, 1), (0, 2, 1), (1, 2, 1), (0, 4, 1)]),
            (4, 3, vec![(0, 0, 1), (1, 0, 1), (2, 1, 1), (3, 2, 1), (0, 2, 1)]),
        ];
        for (nr, nc, entries) in cases {
            let m = build(f, nr, nc, &entries);
            let mut brute = 0usize;
            for mask in 0..(1u32 << nc) {
                let v: SparseVec = (0..nc)
                    .filter(|j| mask & (1 << j) != 0)
                    .map(|j| (j, f.one()))
                    .collect();
                if m.apply(&v).is_empty() {
                    brute += 1;
                }
            }
            // kernel size 2^dim over F2
            let dim = m.kernel_basis().len();
            assert_eq!(1usize << dim, brute);
        }
    }

    #[test]
    fn kernel_vectors_are_killed() {
        let m = build(
            Field::Rationals,
            3,
            5,
            &[(0, 0, 1), (1, 0, 2), (0, 1, 2), (1, 1, 4), (2, 2, 1), (2, 3, 3), (0, 4, 1)],
        );
        let kernel = m.kernel_basis();
        assert_eq!(kernel.len(), m.ncols() - m.rank());
        for v in &kernel {
            assert!(m.apply(v).is_empty());
        }
    }

    #[test]
    fn rank_mod_quotient() {
        // Image of v inside coker(B): [B | v] has rank 2, B has rank 1.
        let b = build(Field::Rationals, 3, 1, &[(0, 0, 1)]);
        let v = build(Field::Rationals, 3, 2, &[(0, 0, 5), (1, 0, 1), (0, 1, 1)]);
        assert_eq!(v.rank_mod(&b), 1);
    }

    #[test]
    fn construction_rejects_bad_input() {
        let f = Field::Rationals;
        assert!(matches!(
            SparseMatrix::from_triplets(f, 1, 1, vec![(0, 0, q(1)), (0, 0, q(2))]),
            Err(LinAlgError::DuplicateEntry { .. })
        ));
        assert!(matches!(
            SparseMatrix::from_triplets(f, 1, 1, vec![(1, 0, q(1))]),
            Err(LinAlgError::OutOfBounds { .. })
        ));
        assert!(matches!(
            SparseMatrix::from_triplets(f, 1, 1, vec![(0, 0, Field::Prime(3).from_i64(1))]),
            Err(LinAlgError::MixedField { .. })
        ));
        // explicit zeros are dropped, not stored
        let m = SparseMatrix::from_triplets(f, 1, 1, vec![(0, 0, q(0))]).unwrap();
        assert_eq!(m.nnz(), 0);
    }
}
