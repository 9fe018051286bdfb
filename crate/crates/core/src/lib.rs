//! Exact determinant polynomials and subresultants of several univariate
//! polynomials over the integers, together with checkers that evaluate both
//! sides of the generalized Habicht identity at integer specializations.
//!
//! The crate is organised bottom-up:
//!
//! - [`poly`]: dense univariate polynomials with arbitrary-precision integer
//!   coefficients.
//! - [`detpoly`]: coefficient matrices, determinant polynomials, two exact
//!   determinant kernels, and checkers for the linear-combination and block
//!   reduction properties of determinant polynomials.
//! - [`subresultant`]: δ-indexed subresultants of a polynomial system and the
//!   two-polynomial k-subresultant.
//! - [`habicht`]: parameter derivation and exact verification of the
//!   generalized Habicht identity.
//! - [`reduction`]: planners that rewrite a subresultant as a chain of
//!   identity applications over lower-order subresultants.
//! - [`random`]: seeded instance generators.

pub mod detpoly;
pub mod error;
pub mod habicht;
pub mod poly;
pub mod random;
pub mod reduction;
pub mod subresultant;

pub use detpoly::{
    build_cm, check_block_lemma, det_bareiss, det_cofactor, det_cofactor_capped,
    dp_linear_combination, dp_list, dp_matrix, pcdp_list, pcdp_matrix, BlockLemmaCase,
    BlockLemmaReport, CoeffMatrix, DEFAULT_COFACTOR_CAP,
};
pub use error::{Error, Result};
pub use habicht::{
    all_params, derive_params, lhs, rhs, verify_identity, verify_induction_equations,
    HabichtParams, InductionReport, VerificationReport,
};
pub use poly::{Coeff, Poly};
pub use reduction::{
    execute_plan, plan_reduction, Cluster, ReductionPlan, ReductionStep, Strategy,
};
pub use subresultant::{
    col_count, delta0, enumerate_index_set, ideal_membership_decompose, predicted_top_cofactor,
    subres_two, subresultant, subresultant_of, DeltaIndex, IdealDecomposition, PolySystem,
    SubresultantValue,
};
