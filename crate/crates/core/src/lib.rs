//! Mutually unbiased measurements (MUMs) in arbitrary dimension and the
//! entanglement criteria built from their correlation matrix.
//!
//! - [`basis`]: orthonormal Gell-Mann operator bases and their partition.
//! - [`mum`]: the `d + 1` MUMs, the admissible `t` range and `kappa(t)`.
//! - [`criteria`]: the correlation matrix `J(rho)`, concurrence lower bounds,
//!   the separability test and the Schmidt-number bound.
//! - [`states`]: tiles and Horodecki bound entangled states, noise mixtures,
//!   random fixtures and density-matrix files.
//! - [`commands`]: sweeps and detection-threshold search.
//!
//! ```
//! use mum_bounds::{criteria, states, MumFamily, Variant};
//!
//! let fam = MumFamily::gell_mann(3, 0.01).unwrap();
//! let rho = states::horodecki_noisy(0.2, 0.999).unwrap();
//! let report = criteria::concurrence_lower_bound(rho.matrix(), &fam, &fam, Variant::Derived).unwrap();
//! assert_eq!(report.verdict, criteria::Verdict::Entangled);
//! ```

// `!(x > 0.0)` is how NaN gets rejected along with the bad values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod basis;
pub mod commands;
pub mod config;
pub mod criteria;
pub mod error;
pub mod io;
pub mod linalg;
pub mod mum;
pub mod states;

pub use basis::OperatorBasis;
pub use config::Tolerances;
pub use criteria::{BoundReport, Convention, CorrelationMatrix, Variant, Verdict};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, PureState, SchmidtData, C64};
pub use mum::{MumFamily, TInterval};
pub use states::DensityMatrix;
