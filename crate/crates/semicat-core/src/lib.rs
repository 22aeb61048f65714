#![doc = include_str!("../README.md")]
#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod kernel;
pub mod semifunctor;

pub use kernel::{validate_category, FinCategory, Mor, Obj};
pub use semifunctor::{IdemNatTransf, Semifunctor};
pub mod audit;
pub mod coident;
pub mod completion;
pub mod gallery;
pub mod morphprop;
pub mod props;
pub mod semiadj;
pub mod transform;
