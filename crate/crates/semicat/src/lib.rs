//! File formats, fuzz generators and the command line for `semicat-core`.

pub mod cli;
pub mod fixtures;
pub mod fuzz;
pub mod io;
pub mod par;

pub use semicat_core as core;
