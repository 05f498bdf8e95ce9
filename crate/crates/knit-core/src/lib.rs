//! Knit products of graded Lie algebras and finite groups.
//!
//! A graded Lie algebra that splits as a direct sum of two subalgebras can be
//! rebuilt from the two factors together with a pair of mutual representations
//! `(alpha, beta)` satisfying two coupled correction identities; the rebuilt
//! algebra is the *knit product* of the factors. The group-side analogue is the
//! Zappa-Szép product: a group with an exact factorization `G = A.B`,
//! `A ∩ B = {e}` is reconstructed from a pair of mutual actions.
//!
//! This crate implements both directions on exact data:
//!
//! - graded Lie algebras as structure-constant tables over arbitrary-precision
//!   rationals ([`GradedLieAlgebra`]), with exhaustive verification of the
//!   graded Jacobi identity;
//! - knitted pairs of representations ([`KnitPairLie`]), the knit-product
//!   bracket, decomposition of an algebra along a subalgebra splitting, and
//!   the six-equation criterion for maps between knit products;
//! - finite groups as Cayley tables ([`FiniteGroup`]) with subgroup, normality,
//!   homomorphism and small-order isomorphism tests;
//! - knitted pairs of group actions ([`KnitPairGroup`]), the Zappa-Szép
//!   product, exact factorization, the homomorphism equations for maps between
//!   knit products, and brute-force enumeration of knitted pairs.
//!
//! Every check is exact: scalars are arbitrary-precision rationals and group
//! data are index tables, so verification reports carry definite witnesses,
//! never tolerances. All values are immutable after construction and all
//! operations are pure functions.

pub mod catalog;
pub mod error;
pub mod finite_group;
pub mod graded_lie;
pub mod grading;
pub mod knit_group;
pub mod knit_lie;
pub mod linmap;
pub mod rational;
pub mod report;
pub mod vector;

pub use error::Error;
pub use finite_group::{
    are_isomorphic, are_isomorphic_bounded, FiniteGroup, GroupMap, SubgroupSelection,
};
pub use graded_lie::{end_bracket, is_graded_derivation, is_graded_lie_hom, GradedLieAlgebra};
pub use grading::{parity_sign, GradedBasis, GradingMode};
pub use knit_group::{
    assemble_group_hom, check_group_quadruple, decompose_group, enumerate_knit_pairs,
    enumerate_knit_pairs_bounded, extract_group_quadruple, split_pair_map, Enumeration,
    GroupHomQuadruple, KnitPairGroup, DEFAULT_ENUMERATION_BOUND,
};
pub use knit_lie::{
    assemble_lie_hom, check_lie_quadruple, decompose_lie, extract_lie_quadruple, KnitPairLie,
    LieHomQuadruple,
};
pub use linmap::{GradedLinearMap, ShiftedEndomorphism};
pub use rational::Rational;
pub use report::{VerificationReport, Violation};
pub use vector::GradedVector;
