#![no_std]

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod composition;
pub mod error;
pub mod jordan;
pub mod kkt;
pub mod lie;
pub mod linalg;
pub mod orbits;
pub mod rootdata;
pub mod rational;
pub mod sample;

pub use error::{Error, Result};
pub use rational::Rational;
