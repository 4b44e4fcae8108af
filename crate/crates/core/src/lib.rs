//! Exact computation of complex genera, Weierstrass/sigma generating series
//! and intersection numbers on small blow-up models, with machinery to check
//! blow-up and change-of-variables identities for them.

#![allow(clippy::needless_range_loop)]

pub mod error;
pub mod ring;
pub mod series;
pub mod weierstrass;
pub mod funeq;
pub mod genus;
pub mod intersection;
pub mod report;
pub mod verify;
