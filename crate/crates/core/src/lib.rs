pub mod bench;
pub mod error;
pub mod generate;
pub mod graph;
pub mod layering;
pub mod lp;
pub mod path_cutting;
pub mod region;
pub mod rounding;
pub mod separator;
pub mod verify;

#[cfg(test)]
mod testkit;

pub use error::{Error, Result};
