//! Truncated power series in one formal variable over an abstract
//! coefficient ring, together with the Faà di Bruno machinery used for
//! composition and reversion of jets.
//!
//! The crate is deliberately small: every higher layer (Laurent jets,
//! normal forms, tangency curves) builds on [`XJet`], [`Ring`] and the
//! partition-indexed polynomials in [`fdb`].

pub mod compose;
pub mod error;
pub mod fdb;
pub mod ring;
pub mod scalar;
pub mod xjet;

pub use compose::{compose, revert};
pub use error::SeriesError;
pub use fdb::{enumerate_partitions, fdb_p, fdb_phat, fdb_ptilde, FdbPartition};
pub use ring::Ring;
pub use scalar::{checked_complex, Complex, ToleranceConfig};
pub use xjet::XJet;
