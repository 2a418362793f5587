#![no_std]
// index loops mirror the matrix formulas
#![allow(clippy::needless_range_loop)]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod catalog;
pub mod character;
pub mod checks;
pub mod clutching;
pub mod context;
pub mod cyclotomic;
pub mod error;
pub mod geometry;
pub mod group;
pub mod semigroup;

pub use error::{Error, Result};
