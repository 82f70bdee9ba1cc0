//! Game of Life step ladder over three grid encodings.
//!
//! Cells outside the grid are permanently dead. Every step is a pure function
//! of its input that writes a fresh output; internal parallelism splits rows
//! (or tile rows) into contiguous chunks, one per worker, so the output is
//! identical for any worker count.

mod fulladder;
mod grid;
pub mod patterns;
mod reference;
mod row;
mod tile;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::parallel::Workers;

pub use fulladder::{neighbor_planes, next_from_neighbors, step_row_fulladder};
pub use grid::{
    pack_rows, pack_tiles, unpack_rows, unpack_tiles, ByteGrid, RowPackedGrid, TilePackedGrid,
};
pub use reference::{next_state, step_bytes, step_reference};
pub use row::{step_row_naive, step_row_popc};
pub use tile::step_tile_popc;

/// A grid in any of the supported encodings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Grid {
    Bytes(ByteGrid),
    Rows(RowPackedGrid),
    Tiles(TilePackedGrid),
}

impl Grid {
    pub fn encoding(&self) -> Encoding {
        match self {
            Grid::Bytes(_) => Encoding::Bytes,
            Grid::Rows(_) => Encoding::Rows,
            Grid::Tiles(_) => Encoding::Tiles,
        }
    }

    pub fn to_bytes(&self) -> ByteGrid {
        match self {
            Grid::Bytes(g) => g.clone(),
            Grid::Rows(p) => unpack_rows(p),
            Grid::Tiles(p) => unpack_tiles(p),
        }
    }

    pub fn into_encoding(self, encoding: Encoding) -> Result<Grid> {
        if self.encoding() == encoding {
            return Ok(self);
        }
        let bytes = match self {
            Grid::Bytes(g) => g,
            other => other.to_bytes(),
        };
        Ok(match encoding {
            Encoding::Bytes => Grid::Bytes(bytes),
            Encoding::Rows => Grid::Rows(pack_rows(&bytes)?),
            Encoding::Tiles => Grid::Tiles(pack_tiles(&bytes)?),
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Encoding {
    Bytes,
    Rows,
    Tiles,
}

/// The step implementations, in ladder order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GolVariant {
    Reference,
    Bytes,
    RowNaive,
    TilePopc,
    RowPopc,
    RowFullAdder,
}

impl GolVariant {
    pub const ALL: [GolVariant; 6] = [
        GolVariant::Reference,
        GolVariant::Bytes,
        GolVariant::RowNaive,
        GolVariant::TilePopc,
        GolVariant::RowPopc,
        GolVariant::RowFullAdder,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            GolVariant::Reference => "reference",
            GolVariant::Bytes => "bytes",
            GolVariant::RowNaive => "row-naive",
            GolVariant::TilePopc => "tile-popc",
            GolVariant::RowPopc => "row-popc",
            GolVariant::RowFullAdder => "row-fulladder",
        }
    }

    pub fn encoding(self) -> Encoding {
        match self {
            GolVariant::Reference | GolVariant::Bytes => Encoding::Bytes,
            GolVariant::RowNaive | GolVariant::RowPopc | GolVariant::RowFullAdder => Encoding::Rows,
            GolVariant::TilePopc => Encoding::Tiles,
        }
    }

    /// One step on a grid already in this variant's encoding.
    pub fn step(self, grid: &Grid, workers: Workers) -> Result<Grid> {
        Ok(match (self, grid) {
            (GolVariant::Reference, Grid::Bytes(g)) => Grid::Bytes(step_reference(g)),
            (GolVariant::Bytes, Grid::Bytes(g)) => Grid::Bytes(step_bytes(g, workers)),
            (GolVariant::RowNaive, Grid::Rows(p)) => Grid::Rows(step_row_naive(p, workers)),
            (GolVariant::RowPopc, Grid::Rows(p)) => Grid::Rows(step_row_popc(p, workers)),
            (GolVariant::RowFullAdder, Grid::Rows(p)) => Grid::Rows(step_row_fulladder(p, workers)),
            (GolVariant::TilePopc, Grid::Tiles(p)) => Grid::Tiles(step_tile_popc(p, workers)),
            (variant, grid) => {
                return Err(Error::parameter(
                    "grid",
                    format!(
                        "{} expects {:?} encoding, got {:?}",
                        variant.name(),
                        variant.encoding(),
                        grid.encoding()
                    ),
                ))
            }
        })
    }
}

impl fmt::Display for GolVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GolVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        GolVariant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::UnknownVariant {
                task: "gol",
                variant: s.to_string(),
                valid: GolVariant::ALL.map(GolVariant::name).join(", "),
            })
    }
}

/// Applies `variant` `iterations` times. The grid is converted to the
/// variant's encoding once up front and converted back at the end, so the
/// result has the same encoding as `initial`.
pub fn run_iterations(
    initial: Grid,
    iterations: usize,
    variant: GolVariant,
    workers: Workers,
) -> Result<Grid> {
    if iterations == 0 {
        return Ok(initial);
    }
    let encoding = initial.encoding();
    let mut current = initial.into_encoding(variant.encoding())?;
    for _ in 0..iterations {
        current = variant.step(&current, workers)?;
    }
    current.into_encoding(encoding)
}
