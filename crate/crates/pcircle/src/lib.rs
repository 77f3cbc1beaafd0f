//! Lattice points in p-circles: generalized Bessel functions, weighted
//! lattice sums and their continuous counterparts, and partial-sum
//! verification of the associated series identities.
//!
//! The crate is `no_std`-compatible (`alloc` required); the default `std`
//! feature only switches float intrinsics and enables `std::error::Error`
//! interop through `core::error::Error`.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod analysis;
pub mod config;
pub mod error;
pub mod identity;
mod kahan;
pub mod lattice;
pub mod pbessel;
pub mod quad;
pub mod special;

pub use error::{Error, Result};
pub use pbessel::{EvalResult, Method, PExponent, PlanePoint};
pub use quad::QuadResult;
