//! Finite cochain complexes with exact homology.
//!
//! Degrees are cohomological throughout: the differential leaving degree `k`
//! lands in degree `k + 1`. Conversion to the homological degrees used in
//! printed Betti tables (sign reversal) happens only at the reporting layer.

use std::collections::BTreeMap;

use crate::error::ComplexError;
use crate::matrix::SparseMatrix;
use crate::scalar::Field;

#[derive(Clone, Debug)]
pub struct FiniteChainComplex {
    field: Field,
    min_degree: i64,
    /// dims[i] = dim of degree min_degree + i.
    dims: Vec<usize>,
    /// diffs[i]: degree min_degree + i -> min_degree + i + 1.
    diffs: Vec<SparseMatrix>,
}

impl FiniteChainComplex {
    /// The zero complex.
    pub fn empty(field: Field) -> Self {
        FiniteChainComplex { field, min_degree: 0, dims: Vec::new(), diffs: Vec::new() }
    }

    pub fn new(
        field: Field,
        min_degree: i64,
        dims: Vec<usize>,
        diffs: Vec<SparseMatrix>,
    ) -> Result<Self, ComplexError> {
        if dims.is_empty() {
            return Ok(Self::empty(field));
        }
        assert_eq!(diffs.len() + 1, dims.len(), "one differential between consecutive degrees");
        for (i, d) in diffs.iter().enumerate() {
            if d.field() != field {
                return Err(ComplexError::MixedField { expected: field, found: d.field() });
            }
            if d.nrows() != dims[i + 1] || d.ncols() != dims[i] {
                return Err(ComplexError::ShapeMismatch {
                    degree: min_degree + i as i64,
                    rows: d.nrows(),
                    cols: d.ncols(),
                    expected_rows: dims[i + 1],
                    expected_cols: dims[i],
                });
            }
        }
        Ok(FiniteChainComplex { field, min_degree, dims, diffs })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn min_degree(&self) -> i64 {
        self.min_degree
    }

    pub fn max_degree(&self) -> i64 {
        self.min_degree + self.dims.len() as i64 - 1
    }

    pub fn dim(&self, degree: i64) -> usize {
        let i = degree - self.min_degree;
        if i < 0 || i as usize >= self.dims.len() {
            0
        } else {
            self.dims[i as usize]
        }
    }

    pub fn dims(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.dims.iter().enumerate().map(|(i, d)| (self.min_degree + i as i64, *d))
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    /// The differential leaving `degree`, if that degree is in range.
    pub fn differential(&self, degree: i64) -> Option<&SparseMatrix> {
        let i = degree - self.min_degree;
        if i < 0 || i as usize >= self.diffs.len() {
            None
        } else {
            Some(&self.diffs[i as usize])
        }
    }

    /// Verify d after d = 0, reporting the first offending degree and column.
    pub fn verify_dd(&self) -> Result<(), ComplexError> {
        for i in 0..self.diffs.len().saturating_sub(1) {
            let square = self.diffs[i + 1].mul(&self.diffs[i]);
            if !square.is_zero() {
                let column = (0..square.ncols())
                    .find(|&j| !square.col(j).is_empty())
                    .unwrap_or(0);
                return Err(ComplexError::NotAComplex {
                    degree: self.min_degree + i as i64,
                    column,
                });
            }
        }
        Ok(())
    }

    /// Homology dimensions per (cohomological) degree. Degrees inside the
    /// complex's range are always present, zero entries included.
    pub fn homology_dims(&self) -> Result<BTreeMap<i64, usize>, ComplexError> {
        self.verify_dd()?;
        let ranks: Vec<usize> = self.diffs.iter().map(SparseMatrix::rank).collect();
        let mut out = BTreeMap::new();
        for (i, &dim) in self.dims.iter().enumerate() {
            let out_rank = ranks.get(i).copied().unwrap_or(0);
            let in_rank = if i == 0 { 0 } else { ranks[i - 1] };
            out.insert(self.min_degree + i as i64, dim - out_rank - in_rank);
        }
        Ok(out)
    }

    /// Alternating sum of chain dimensions; equals the alternating sum of
    /// homology dimensions for any finite complex.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims()
            .map(|(k, d)| if k.rem_euclid(2) == 0 { d as i64 } else { -(d as i64) })
            .sum()
    }

    /// The dual complex: transposed differentials, negated degrees.
    pub fn dual(&self) -> FiniteChainComplex {
        if self.dims.is_empty() {
            return Self::empty(self.field);
        }
        let dims: Vec<usize> = self.dims.iter().rev().copied().collect();
        let diffs: Vec<SparseMatrix> = self.diffs.iter().rev().map(SparseMatrix::transpose).collect();
        FiniteChainComplex { field: self.field, min_degree: -self.max_degree(), dims, diffs }
    }

    /// Same complex with all degrees shifted by `offset` (degree k becomes
    /// k + offset). Chain groups and differentials are untouched.
    pub fn shift_degrees(&self, offset: i64) -> FiniteChainComplex {
        let mut c = self.clone();
        c.min_degree += offset;
        c
    }
}
