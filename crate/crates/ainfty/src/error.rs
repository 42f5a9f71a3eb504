//! Error types, grouped by the layer that raises them.

use crate::scalar::Field;
use thiserror::Error;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum LinAlgError {
    #[error("entry ({row},{col}) lies in {found} but the matrix is over {expected}")]
    MixedField { row: usize, col: usize, expected: Field, found: Field },
    #[error("duplicate entry at ({row},{col})")]
    DuplicateEntry { row: usize, col: usize },
    #[error("entry ({row},{col}) outside a {rows}x{cols} matrix")]
    OutOfBounds { row: usize, col: usize, rows: usize, cols: usize },
    #[error("cannot parse `{literal}` as an exact scalar over {field}")]
    BadScalarLiteral { literal: String, field: Field },
    #[error("{p} is not a usable prime modulus")]
    BadModulus { p: u64 },
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("differential leaving degree {degree} is {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    ShapeMismatch {
        degree: i64,
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },
    #[error("d \u{2218} d != 0 starting at degree {degree} (column {column})")]
    NotAComplex { degree: i64, column: usize },
    #[error("differential over {found} in a complex over {expected}")]
    MixedField { expected: Field, found: Field },
}

/// Category- and bimodule-level failures: malformed structure tables,
/// violated axioms, or inputs that do not satisfy an operation's contract.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum CatError {
    #[error("unknown object index {0}")]
    UnknownObject(usize),
    #[error("unknown generator index {0}")]
    UnknownGenerator(usize),
    #[error("generator `{name}` duplicates an existing (source, target, name) triple")]
    DuplicateGenerator { name: String },
    #[error("unit of object {object} must be a degree-0 endomorphism; `{name}` is not")]
    BadUnit { object: usize, name: String },
    #[error("operation inputs ({inputs}) are not a composable chain")]
    NotComposable { inputs: String },
    #[error("operation ({inputs}) -> {output}: degree {found} violates the A-infinity degree rule (expected {expected})")]
    DegreeRule { inputs: String, output: String, expected: i64, found: i64 },
    #[error("operation ({inputs}) -> {output}: output does not connect the chain endpoints")]
    OutputEndpoints { inputs: String, output: String },
    #[error("structure constant over {found}, category over {expected}")]
    MixedField { expected: Field, found: Field },
    #[error("category is not strictly unital: {reason}")]
    NotUnital { reason: String },
    #[error("A-infinity relation fails on ({inputs}); residual: {residual}")]
    RelationViolation { inputs: String, residual: String },
    #[error("unit axiom fails: mu({inputs}) = {found}, expected {expected}")]
    UnitAxiom { inputs: String, expected: String, found: String },
    #[error("category is not directed: {reason}")]
    NotDirected { reason: String },
    #[error("expected the directed subcategory of the ambient category: {reason}")]
    NotSubcategory { reason: String },
    #[error("bimodule action ({inputs}) -> {output}: {reason}")]
    BadAction { inputs: String, output: String, reason: String },
    #[error("unsupported request: {reason}")]
    Unsupported { reason: String },
}

/// Failures while assembling one of the word complexes. A nonzero square of
/// the assembled differential means the sign conventions were violated, and
/// the offending basis word is reported.
#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("sign conventions violated: d \u{2218} d != 0 on word {word} (degree {degree})")]
    ConventionViolation { degree: i64, word: String },
    #[error("the span of the enumerated words is not closed under the differential: the image of {word} leaves it")]
    NotClosed { word: String },
    #[error("induced differential is not well defined: image of cycle {word} is not a cycle")]
    InducedMapIllDefined { word: String },
    #[error("weight-0 homology column is {found}, expected dim {expected} in degree 0 only")]
    EdgeColumn { expected: usize, found: String },
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Cat(#[from] CatError),
}

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("line {line}: {msg}")]
    Semantic { line: usize, msg: String },
    #[error("validation: {0}")]
    Validation(#[from] CatError),
}
