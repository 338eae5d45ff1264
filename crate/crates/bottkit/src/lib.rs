//! Exact sheaf cohomology of homogeneous vector bundles on Grassmannians.
//!
//! The library works over the Grassmannian G(k,n) of projective k-planes in
//! P^n, with tautological sequence `0 -> S^dual -> V (x) O -> Q -> 0`,
//! `V = K^(n+1)`, so Q has rank k+1 and S rank n-k, and `det Q = O(1)`.
//! A bundle is a formal nonnegative sum of irreducible pieces
//! `S_lam Q (x) S_mu S^dual`; [`bott`] computes the cohomology of each piece
//! exactly, and everything else (splitting-criterion condition sets,
//! arithmetically Cohen-Macaulay scans, exactness checks for distinguished
//! complexes) is built on top of that.
//!
//! All arithmetic is exact: dimensions are arbitrary-precision integers and
//! there is no floating point anywhere.

pub mod bott;
pub mod bundles;
pub mod complexes;
pub mod criteria;
pub mod diagram;
pub mod error;
pub mod grammar;
pub mod partitions;
pub mod report;

pub use error::{Error, Result};
