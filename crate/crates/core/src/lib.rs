//! Exact verification of ordinary character-table data.
//!
//! Values live in [`cyclonum`], table data and the CTB text format in [`tables`],
//! class-function arithmetic in [`charfun`], constraint searches in [`solvers`],
//! value completion in [`completion`] and global checks in [`verify`].

pub mod arith;
pub mod charfun;
pub mod completion;
pub mod cyclonum;
pub mod linalg;
pub mod report;
pub mod solvers;
pub mod tables;
pub mod verify;

pub use cyclonum::{BigInt, BigRat, CycError, Cyclotomic};
