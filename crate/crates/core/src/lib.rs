//! Exact braid calculus for quasipositive braid closures: Garside normal
//! forms, Markov-move certificates, Levine–Tristram signatures and nullities
//! at roots of unity of order 2, 3 and 4, and the Euler characteristic /
//! signature arithmetic for exact fillings of cyclic branched covers.

pub mod batch;
pub mod braid;
pub mod catalog;
pub mod geography;
pub mod lt;
pub mod moves;
pub mod reproduce;

/// Directory holding the bundled catalog and certificate files.
pub const BUNDLED_DATA_DIR: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
