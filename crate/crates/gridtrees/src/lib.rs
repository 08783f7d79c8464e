//! Balance probabilities for random spanning trees of the 2-by-n grid.
//!
//! A spanning tree is *balanced* when it has an edge whose removal splits
//! the vertices into two equal halves. This crate computes the probability
//! that a random spanning tree of the 2-by-n grid is balanced:
//!
//! - exactly for the uniform (UST) distribution, via closed counting
//!   formulas over arbitrary-precision integers ([`sequences`]);
//! - exactly for the minimum-spanning-tree (MST) distribution on small
//!   grids, via linear-extension counting over fundamental-cycle posets
//!   ([`mst_exact`]);
//! - approximately for both, via seeded, reproducible Monte Carlo
//!   ([`sampling`]);
//! - and by brute-force enumeration as ground truth ([`enumerate`]).
//!
//! The UST probability converges to (3+sqrt(3))/9 for odd column counts
//! and (1+4*sqrt(3))/(6*sqrt(3)) for even ones; both constants are held
//! exactly in Q[sqrt(3)] ([`quadratic`]).

pub mod decimal;
pub mod enumerate;
pub mod error;
pub mod grid;
pub mod mst_exact;
pub mod quadratic;
pub mod report;
pub mod sampling;
pub mod sequences;
pub mod verify;

pub use error::{Error, Result};
