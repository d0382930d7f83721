//! Fibered space groups and fibrifold names.
//!
//! The crate enumerates the fibrations of three-space over the 17 plane
//! groups, names them, builds the 35 irreducible cubic groups from signed
//! permutations, realizes everything as explicit affine groups and
//! assembles the catalog of 219 space groups.
//!
//! Everything is exact integer or rational arithmetic. The crate is
//! `no_std` and only needs `alloc`.

#![no_std]

extern crate alloc;

pub mod atlas;
pub mod basegroups;
pub mod exactnum;
pub mod fibration;
pub mod irreducible;
pub mod linalg;
pub mod notation;
pub mod realization;
pub mod word;

mod error;
mod tsv;

pub use error::Error;

pub type Result<T> = core::result::Result<T, Error>;
