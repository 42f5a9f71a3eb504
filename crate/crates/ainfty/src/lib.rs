//! Exact homological invariants of finite A-infinity categories arising from
//! vanishing-cycle data.
//!
//! Starting from a strictly unital A-infinity category B over R = K^m with a
//! preferred object order, the crate builds the directed subcategory A, the
//! t-adically curved category `D = A + t B[[t]]` with curvature t*id, and
//! computes exact Betti tables of
//!
//! * the truncated reduced cyclic bar complexes of D (Hochschild side),
//! * the weight spectral sequence (E^1 page, d^1 ranks, E^2),
//! * the Donaldson complex `(B[d] (x) T(A_+[1]))^diag`,
//! * the reduced Connes complex (cyclic coinvariants) per t-weight,
//! * the reduced bar complex of D and its truncations, together with the
//!   structural comparisons against hom-complexes of the simple module.
//!
//! All arithmetic is exact, over Q or a prime field. See `conventions.md` for
//! the complete sign conventions and `fixtures/` for the bundled example
//! categories. Runnable entry points live in `examples/`; the `ainfty` binary
//! exposes the same computations as subcommands.
//!
//! ```
//! use ainfty::{hochschild, models, scalar::Field};
//!
//! let pair = models::branched_cover(2, Field::Rationals).unwrap();
//! let curved = pair.curved(2).unwrap();
//! let row = hochschild::truncated_hochschild_betti(&curved, 2).unwrap();
//! assert_eq!(row.get(&-4), Some(&3)); // homological degree -4
//! ```

pub mod bar;
pub mod bimodule;
pub mod cat;
pub mod complex;
pub mod curved;
pub mod cyclic;
pub mod error;
pub mod format;
pub mod hochschild;
pub mod matrix;
pub mod models;
pub mod report;
pub mod scalar;

#[cfg(test)]
pub(crate) mod testutil;

pub use bimodule::Bimodule;
pub use cat::{AInftyCategory, CategoryBuilder, Generator, TensorWord};
pub use complex::FiniteChainComplex;
pub use curved::CurvedCategory;
pub use matrix::SparseMatrix;
pub use scalar::{Field, Scalar};
