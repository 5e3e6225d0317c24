//! Independent ground truth: Jacobi sums of multiplicative characters in
//! `Z[ζ_d]` and exhaustive point counts over small finite fields.

mod character;
mod count;
mod cyclotomic;
mod field;

pub use character::{jacobi_sum, quartic_jacobi_candidates, JacobiCandidate, MultiplicativeCharacter};
pub use count::{
    family_point_count, point_count, CountKind, HomogeneousForm, PointCountReport,
    DOUBLE_COVER_CONVENTION, EVALUATION_LIMIT, PROJECTIVE_CONVENTION,
};
pub use cyclotomic::{cyclotomic_polynomial, CyclotomicInt};
pub use field::{SmallField, MAX_FIELD_SIZE};
