//! Exact symbolic construction of the Rumin `C_infinity`-algebra on the
//! Heisenberg groups `H^{2n+1}`.
//!
//! The crate is organized bottom-up:
//!
//! * [`poly`]: exact rational polynomials in the Heisenberg coordinates;
//! * [`forms`]: differential forms in the adapted coframe, with wedge,
//!   exterior derivative and the Lefschetz operator;
//! * [`rumin`]: the homotopy `Gamma`, the Rumin projection and the
//!   closed-form structure maps;
//! * [`cinfty`]: Koszul signs, shuffles, relation checkers, homotopy
//!   transfer and finite-dimensional cohomology;
//! * [`model`]: the invariant-form model of the Heisenberg Lie algebra and
//!   its Rumin subcomplex;
//! * [`suites`]: seeded verification suites producing [`VerifyReport`]s.

pub mod cinfty;
pub mod error;
pub mod forms;
pub mod linalg;
pub mod model;
pub mod poly;
pub mod random;
pub mod rumin;
pub mod suites;

pub use cinfty::{
    FiniteGradedAlgebra, FiniteVector, GradedElement, GradedOp, GradedOpSet, RetractData,
};
pub use error::{Error, Result};
pub use forms::{lefschetz_power_matrix, ContactModel, Form, Monomial};
pub use linalg::Matrix;
pub use poly::{int, rat, Poly, Rational};
pub use rumin::{gamma, in_rumin, pi, pi_form, RuminElement};
pub use suites::{Suite, VerifyConfig, VerifyReport, Witness};

