//! Exact and arbitrary-precision number theory behind CM values of
//! hypergeometric functions on the Shimura curve of discriminant 6.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod error;
pub mod exact;
pub mod numerics;
pub mod padic;
pub mod qseries;
pub mod quadfield;
pub mod quaternion;
pub mod verify;

pub use error::{Error, Result};
pub use numerics::{BigComplex, BigReal, PrecisionContext};
