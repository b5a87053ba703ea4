//! Exact power sums of Stern-type coefficient arrays and the linear
//! recurrences they satisfy.
//!
//! The pipeline: [`sternarrays`] and [`powersums`] generate coefficient arrays
//! and brute-force their windowed power sums; [`transfer`] derives the same
//! values from a finite linear system; [`analysis`] extracts minimal
//! polynomials and checks the structural claims about them; [`verify`] runs
//! everything as one report.

pub mod error;
pub mod exactnum;
pub mod limits;

pub mod analysis;
pub mod powersums;
pub mod sternarrays;
pub mod transfer;
pub mod verify;

pub use error::{Error, Result};
pub use limits::Limits;
