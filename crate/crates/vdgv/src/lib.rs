//! Exact arithmetic for Artin-Schreier curves of the form
//! y^p - y = x R(x) with R additive: finite field towers, cyclotomic
//! integers, Heisenberg groups, Gauss sums and L-polynomials.

pub mod addpoly;
pub mod curve;
pub mod cyclo;
pub mod error;
pub mod gauss;
pub mod gf;
pub mod heis;
pub mod lfunc;
pub mod linalg;
pub mod poly;
pub mod quotient;
pub mod report;

pub use error::{Error, Result};
