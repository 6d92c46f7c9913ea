//! Preferential attachment graphs, their exact degree laws, and the Pólya urn
//! machinery behind them.
//!
//! The crate is `no_std` (it needs `alloc`). File formats, the command line and
//! parallel trial execution live in the `pa-lab` companion crate.
//!
//! Module map:
//! - [`process`]: the sequential attachment process for `m = 1` and merged `m > 1`.
//! - [`exact_dist`]: forward dynamic programming for the law of `D(n)`.
//! - [`urn`]: two-color urns, their exact enumeration and closed-form pmfs.
//! - [`bounds`]: exact and Monte Carlo checks of the tail and concentration bounds.
//! - [`clique`]: one-subdivided clique witnesses (online finder, greedy search, verifier).

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod bounds;
pub mod clique;
mod error;
pub mod exact_dist;
pub mod exec;
pub mod math;
pub mod pmf;
pub mod process;
pub mod rng;
pub mod stats;
pub mod urn;

pub use error::{Error, Result};
pub use pmf::{ArithmeticMode, Pmf, Probability};
pub use process::{PaGraph, ProcessParams, VertexSet};
