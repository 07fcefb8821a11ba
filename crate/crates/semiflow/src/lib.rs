//! # semiflow
//!
//! A finite-dimensional toolkit for operator semigroups on B(H): quantum
//! Markov generators in Lindblad form, Choi/Kraus machinery, weak
//! (Pettis-style) integration of operator paths, Laplace-transform
//! resolvents, and executable verification suites for the structural
//! identities that tie them together — the semigroup law, exponential
//! bounds, the resolvent equation R(λ) = (λ − L)⁻¹, and closedness of the
//! generator along weakly convergent sequences.
//!
//! Everything is dense complex `f64` arithmetic at desk scale (Hilbert
//! space dimension up to a few hundred, superoperators materialized up to
//! d = 16). See the book under `book/` for a guided tour.

pub mod error;
pub mod guide;
pub mod integrate;
pub mod linop;
pub mod maps;
pub mod matrix;
pub mod report;
pub mod resolvent;
pub mod semigroup;
pub mod space;

pub use error::{Error, Result};
pub use maps::{KrausSet, LindbladForm, StinespringPair, Superoperator};
pub use matrix::{Complex64, ComplexMatrix, ComplexVector};
pub use report::VerificationReport;
pub use resolvent::{ClosednessCase, DifferenceQuotient, ResolventMethod, ResolventResult};
pub use semigroup::{ContractionSemigroupSpec, ExponentialBound, GridSpec, SemigroupSpec};
pub use space::{Functional, FunctionalBasis, HilbertDim};
