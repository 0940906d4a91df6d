//! Exact symbolic computation for q-skew iterative σ-differential (qsi)
//! algebra: the field Q(q), the quantum torus with Qt = q·tQ, the
//! category of qsi modules, the quantum-group Hopf algebra acting on
//! the Picard-Vessiot ring, and executable verification suites.

pub mod algebra;
pub mod checks;
pub mod hopf;
pub mod linalg;
pub mod module;
pub mod parse;
pub mod report;
pub mod scalar;
pub mod torus;
pub mod verify;

pub use scalar::{qbinom, qfact, qint, QPoly, QScalar, ScalarError};
pub use torus::{ExponentWindow, TorusElement};

/// Dense matrix over the rational-function field Q(q).
pub type QMatrix = linalg::Matrix<QScalar>;
/// Dense matrix over the plain rationals, used by the classical
/// differential warm-up and numeric spot checks.
pub type RatMatrix = linalg::Matrix<num_rational::BigRational>;
