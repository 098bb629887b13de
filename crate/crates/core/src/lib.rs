//! Restricted Lie, Lie–Rinehart and Poisson algebras over GF(2): axiom
//! verification, cohomology, Kähler differentials, deformations and abelian
//! extensions.

pub mod algebra;
pub mod catalog;
pub mod cochains;
pub mod deformations;
pub mod extensions;
pub mod gf2;
pub mod kaehler;

pub use algebra::{
    derivation_lie_rinehart, inner_square_candidates, two_map_from_basis, two_map_lie_rinehart, verify_commutative_associative,
    verify_lie, verify_lie_rinehart, verify_lr_module, verify_module, verify_restricted_lie,
    verify_restricted_poisson, AlgebraError, AlgebraPresentation, LieRinehartPresentation,
    ModulePresentation, VerificationReport, Violation,
};
pub use cochains::{
    CochainComplex, CochainError, CochainLayout, CohomologyResult, RestrictedCochain, Theory,
};
pub use gf2::{GF2Matrix, GF2Vector, Gf2Error, Quotient, Subspace};
pub use deformations::{DeformationData, DeformationError, Extension as DeformationExtension, ObstructionPair};
pub use extensions::{ExtensionData, ExtensionError};
pub use kaehler::{Comparison, KaehlerError, KaehlerModule};
