//! Hausdorff and exact Gromov-Hausdorff distances on finite metric spaces,
//! r-disjoint cover certificates, and the asymptotic-dimension lower bound
//! `d_GH(A, X) >= r / 2`.

pub mod cli;
pub mod constructions;
pub mod correspondence;
pub mod covers;
pub mod error;
pub mod io;
pub mod metric;
pub mod report;

pub use error::{Error, Result};
