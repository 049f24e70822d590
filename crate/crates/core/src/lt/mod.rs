//! Seifert matrices of braid closures and exact Levine–Tristram signatures
//! and nullities at roots of unity of order 2, 3 and 4.

mod cyclo;
mod hermitian;
mod seifert;
mod tristram;

pub use cyclo::{CycloOrder, CycloScalar};
pub use hermitian::{inertia, signature_nullity, HermitianError, HermitianMatrix, Inertia};
pub use seifert::{bennequin_seifert, surface_components, SeifertData, SeifertError};
pub use tristram::{
    branched_cover_invariants, lt_form, lt_sums, lt_value, root_power, sample_signature,
    satellite_sigma, CoverInvariants, LTValue, LtError, RootOfUnity,
};
