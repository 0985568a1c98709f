//! Exact shadow characters of self-dual vertex operator superalgebras,
//! together with the lattice and binary-code computations they generalize.
//!
//! Everything is computed in exact rational arithmetic: q-series carry their
//! own precision, and irrational factors such as `sqrt(2)` are eliminated
//! algebraically before any series is formed.

pub mod cli;
pub mod codes;
pub mod error;
pub mod gf2;
pub mod lattice;
pub mod liedata;
pub mod linalg;
pub mod modforms;
pub mod qseries;
pub mod rational;
pub mod svoa;

pub use error::{Error, Result};
pub use qseries::QSeries;
pub use rational::{Rank, Rat};
