//! Generalized spinor duals, bilinear covariants and their classification.

pub mod bilinears;
pub mod classify;
pub mod cli;
pub mod clifford;
pub mod duals;
pub mod error;
pub mod fpk;
pub mod reconstruction;
pub mod representatives;
pub mod search;
pub mod tensor;

pub use bilinears::{
    bilinears, bilinears_from_pair, dirac_bilinears, dirac_dual, general_dual, transformed_bilinears, BilinearSet,
    DualSpinor, Spinor,
};
pub use classify::{extended_class, lounesto_class, zero_pattern, Block, ClassLabel, ZeroPattern, ZeroPolicy};
pub use clifford::{matrix_of, multivector_of, Conventions, Multivector, CONVENTIONS};
pub use duals::{
    a_for_vanishing_omega, a_zero_branch, majorana_dual, omega, unit_constraint, us_family, Branch,
    ConstraintReport, DualCoefficients, UsFamily, UsParams,
};
pub use error::{Error, Result};
pub use fpk::{check_fpk, FpkIdentity, FpkReport};
pub use reconstruction::{aggregate, invert, FierzAggregate};
pub use representatives::{
    representative, representative_with, seed_spinor, verify_representative, Infeasibility, Relaxation,
    Representative, SearchOptions, Verification,
};
