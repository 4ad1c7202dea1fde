//! Generic graded-algebra machinery: Koszul signs and shuffles, operator
//! families, Stasheff/morphism/shuffle residuals, homotopy transfer along a
//! deformation retract, and finite-dimensional cohomology rings.

pub mod finite;
pub mod graded;
pub mod relations;
pub mod sign;
pub mod transfer;

pub use finite::{
    check_ring_isomorphism, cohomology, Cohomology, FiniteGradedAlgebra, FiniteVector,
    GradedBasis, GradedLinearMap, RingIsoReport,
};
pub use graded::{
    algebra_op_degree, apply_tensor_ops, audit_homogeneity, morphism_op_degree, GradedElement,
    GradedOp, GradedOpSet,
};
pub use relations::{check_morphism, check_shuffle_vanishing, check_stasheff, compositions};
pub use sign::{
    koszul_operator_sign, koszul_sign, permutation_sign, shuffle_product, shuffles, SignedWord,
};
pub use transfer::{markl_transfer, RetractData};
