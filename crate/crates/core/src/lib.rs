//! Kernel optimization ladders for three data-parallel workloads: a
//! character-range histogram, a Game of Life step, and multi-query 2-D
//! k-nearest-neighbor search.
//!
//! Every ladder stage is a named variant with a simple sequential oracle next
//! to it. The [`workload`] module generates seeded inputs and reads/writes the
//! on-disk formats; [`bench`] holds the variant registry, the verification
//! gate, the timing loop and report rendering used by the `ladder-bench` CLI.

pub mod bench;
pub mod error;
pub mod gol;
pub mod histogram;
pub mod knn;
mod parallel;
pub mod workload;

pub use error::{Error, FormatError, Result};
pub use parallel::Workers;
