//! Enumeration of real Weil polynomials under point-count constraints and a
//! sieve of tests deciding whether an isogeny class can contain a Jacobian.

pub mod arith;
pub mod cli;
pub mod enumerate;
pub mod intpoly;
pub mod linalg;
pub mod numfield;
pub mod report;
pub mod sieve;
pub mod weil;
