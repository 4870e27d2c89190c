//! Changemaker lattices, obtuse superbases and Goeritz forms.
//!
//! The crate bounds and obstructs alternating Dehn surgeries on knots. It
//! recovers stable changemaker coefficients from Alexander polynomial data,
//! builds `p/q`-changemaker lattices, decides whether small lattices admit
//! obtuse superbases (equivalently, are graph lattices) and compares them with
//! white lattices of alternating diagrams.
//!
//! Everything is exact integer arithmetic on 64-bit values with checked
//! overflow; `i128` is used internally for intermediate products.

#![no_std]
extern crate alloc;
#[cfg(test)]
extern crate std;

mod arith;
pub mod changemaker;
pub mod charvec;
pub mod cmlattice;
pub mod enumerate;
pub mod error;
mod frac;
pub mod goeritz;
pub mod graphlat;
pub mod intmat;
pub mod rational;
pub mod recovery;
pub mod reduce;

pub use arith::gcd;
pub use changemaker::{is_changemaker, subset_sum_cover, ChangemakerVector, SUBSET_SUM_CAP};
pub use error::{Error, Result};
pub use intmat::{gram, kernel_basis, GramMatrix, IntVector};
pub use rational::{hj_evaluate, hj_expand, HJExpansion, Rational};
