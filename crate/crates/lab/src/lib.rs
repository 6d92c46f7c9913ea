//! File formats, run manifests, parallel trial execution and the command line
//! for the `pa-core` algorithms.

pub mod cli;
pub mod exec;
pub mod figure;
pub mod formats;
pub mod manifest;

pub use exec::Parallel;
