//! Seeded benchmark inputs and their file formats.
//!
//! All randomness comes from [`SeededRng`], so identical seeds and
//! parameters give byte-identical inputs on every platform.

mod gen;
pub mod io;
mod rng;
mod spec;
mod text;

pub use gen::{gen_grid, gen_points};
pub use rng::SeededRng;
pub use spec::{gen_text, GridSpec, KnnSpec, TextSource, TextSpec, Workload, WorkloadSpec};
pub use text::{gen_lorem, repeat_to, to_hexdump};
