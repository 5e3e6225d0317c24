//! Formal Brauer groups of K3 surface families over prime fields.
//!
//! The crate builds truncated formal group laws from explicit logarithms,
//! classifies their heights, extracts unit roots from coefficient congruences
//! and decomposes Weil polynomials by Newton slopes. Character sums and
//! point counts over small fields serve as independent checks.

pub mod charsum;
pub mod error;
pub mod exact;
pub mod fgl;
pub mod hyperfam;
pub mod padic;
pub mod series;
pub mod weil;

pub use error::{Error, Result};
pub use exact::{BigInt, BigRational, FpPoly};
pub use fgl::{FormalGroupLogarithm, HeightClass, HeightReport, UnitRootReport};
pub use hyperfam::{FamilyId, FamilyParams, K3FamilySpec};
pub use padic::{PadicInt, PadicNumber, PadicUnitCertificate, Valuation};
pub use series::{BivariateSeries, TruncatedSeries};
pub use weil::{SlopeFactorization, WeilPoly};
