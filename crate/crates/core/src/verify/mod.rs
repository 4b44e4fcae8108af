//! Theorem-level checks assembled from the series, genus and intersection
//! layers. Every check returns a [`VerificationReport`](crate::report::VerificationReport).

pub mod residue;
pub mod theorem_a;
pub mod transition;
pub mod prop21;
pub mod hodge;
pub mod suite;
