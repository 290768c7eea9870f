//! Numerical toolkit for universal commutative operator algebras `UC(E)` over
//! finite-dimensional operator spaces `E` on `ℂⁿ`.
//!
//! The crate is organised bottom-up:
//!
//! * [`tensor_core`]: dense complex kernels (Kronecker products, spectral norms,
//!   PSD tests, Gram factors, isometry extension).
//! * [`opspace`]: operator space structures and complete-contractivity verdicts.
//! * [`polyeval`]: matrix polynomials, evaluation on commuting tuples and
//!   norm lower bounds.
//! * [`realization`]: Agler–Nevanlinna factorizations and unitary colligations.
//! * [`agler_cone`]: finite-set cone feasibility.
//! * [`pick`]: Nevanlinna–Pick interpolation.

pub mod agler_cone;
pub mod error;
pub mod opspace;
pub mod pick;
pub mod polyeval;
pub mod random;
pub mod realization;
pub mod tensor_core;

pub use agler_cone::{ConeCertificate, ConeProblem, ConeShape, ConeStatus};
pub use error::{Error, Result};
pub use opspace::{Base, CcStatus, CcVerdict, OperatorSpaceSpec, SamplingBudget, SpaceKind};
pub use pick::{NpWitness, PickOptions, PickProblem, PickResult, PickStatus};
pub use polyeval::{MatrixPolynomial, MultiIndex, SamplePlan, SearchBudget};
pub use realization::{Colligation, FactorizationData};
pub use tensor_core::{ComplexMatrix, IsometryData, MatrixTuple, C64};

/// Default tolerance for PSD and norm comparisons.
pub const DEFAULT_TOL: f64 = 1e-9;
