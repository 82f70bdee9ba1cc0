use crate::error::{Error, Result};

const WORD_BITS: usize = 64;
const TILE: usize = 8;

/// One byte per cell, row-major. Every cell is 0 (dead) or 1 (alive).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ByteGrid {
    width: usize,
    height: usize,
    cells: Vec<u8>,
}

impl ByteGrid {
    pub fn dead(width: usize, height: usize) -> Result<Self> {
        check_nonempty(width, height)?;
        Ok(ByteGrid {
            width,
            height,
            cells: vec![0; width * height],
        })
    }

    pub fn from_cells(width: usize, height: usize, cells: Vec<u8>) -> Result<Self> {
        check_nonempty(width, height)?;
        if cells.len() != width * height {
            return Err(Error::Dimensions {
                width,
                height,
                reason: "cell buffer length does not match width x height",
            });
        }
        if let Some(bad) = cells.iter().position(|&c| c > 1) {
            return Err(Error::parameter(
                "cells",
                format!("cell {bad} has state {}, expected 0 or 1", cells[bad]),
            ));
        }
        Ok(ByteGrid {
            width,
            height,
            cells,
        })
    }

    /// Builds a grid from rows of `.`/`O` (or any non-`.` for alive).
    pub fn from_ascii(rows: &[&str]) -> Result<Self> {
        let height = rows.len();
        let width = rows.first().map_or(0, |r| r.len());
        let mut grid = ByteGrid::dead(width, height)?;
        for (y, row) in rows.iter().enumerate() {
            if row.len() != width {
                return Err(Error::Dimensions {
                    width,
                    height,
                    reason: "ragged ascii rows",
                });
            }
            for (x, ch) in row.bytes().enumerate() {
                grid.set(y, x, ch != b'.');
            }
        }
        Ok(grid)
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn get(&self, y: usize, x: usize) -> bool {
        self.cells[y * self.width + x] != 0
    }

    pub fn set(&mut self, y: usize, x: usize, alive: bool) {
        self.cells[y * self.width + x] = u8::from(alive);
    }

    pub fn population(&self) -> usize {
        self.cells.iter().filter(|&&c| c != 0).count()
    }

    /// First cell (row, column) where `self` and `other` differ.
    pub fn first_difference(&self, other: &ByteGrid) -> Option<(usize, usize)> {
        if self.width != other.width || self.height != other.height {
            return Some((0, 0));
        }
        self.cells
            .iter()
            .zip(&other.cells)
            .position(|(a, b)| a != b)
            .map(|i| (i / self.width, i % self.width))
    }
}

/// 64 row-consecutive cells per word. Bit `i` of word `j` in row `r` holds
/// cell `(r, 64 * j + i)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RowPackedGrid {
    width: usize,
    height: usize,
    words: Vec<u64>,
}

impl RowPackedGrid {
    pub fn from_words(width: usize, height: usize, words: Vec<u64>) -> Result<Self> {
        check_row_dims(width, height)?;
        if words.len() != height * width / WORD_BITS {
            return Err(Error::Dimensions {
                width,
                height,
                reason: "word buffer length does not match height x width/64",
            });
        }
        Ok(RowPackedGrid {
            width,
            height,
            words,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn words_per_row(&self) -> usize {
        self.width / WORD_BITS
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn row(&self, y: usize) -> &[u64] {
        let wpr = self.words_per_row();
        &self.words[y * wpr..(y + 1) * wpr]
    }

    pub fn get(&self, y: usize, x: usize) -> bool {
        (self.words[y * self.words_per_row() + x / WORD_BITS] >> (x % WORD_BITS)) & 1 != 0
    }

    pub(crate) fn with_words(&self, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), self.words.len());
        RowPackedGrid {
            width: self.width,
            height: self.height,
            words,
        }
    }
}

/// One 8x8 tile per word, tiles stored tile-row-major. Bit `y * 8 + x` of a
/// tile word holds cell `(8 * tile_row + y, 8 * tile_col + x)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TilePackedGrid {
    width: usize,
    height: usize,
    words: Vec<u64>,
}

impl TilePackedGrid {
    pub fn from_words(width: usize, height: usize, words: Vec<u64>) -> Result<Self> {
        check_tile_dims(width, height)?;
        if words.len() != (width / TILE) * (height / TILE) {
            return Err(Error::Dimensions {
                width,
                height,
                reason: "word buffer length does not match tile count",
            });
        }
        Ok(TilePackedGrid {
            width,
            height,
            words,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn tiles_per_row(&self) -> usize {
        self.width / TILE
    }

    pub fn tile_rows(&self) -> usize {
        self.height / TILE
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn get(&self, y: usize, x: usize) -> bool {
        let word = self.words[(y / TILE) * self.tiles_per_row() + x / TILE];
        (word >> ((y % TILE) * TILE + x % TILE)) & 1 != 0
    }

    pub(crate) fn with_words(&self, words: Vec<u64>) -> Self {
        debug_assert_eq!(words.len(), self.words.len());
        TilePackedGrid {
            width: self.width,
            height: self.height,
            words,
        }
    }
}

fn check_nonempty(width: usize, height: usize) -> Result<()> {
    if width == 0 || height == 0 {
        return Err(Error::Dimensions {
            width,
            height,
            reason: "width and height must be at least 1",
        });
    }
    Ok(())
}

pub(crate) fn check_row_dims(width: usize, height: usize) -> Result<()> {
    check_nonempty(width, height)?;
    if !width.is_multiple_of(WORD_BITS) {
        return Err(Error::Dimensions {
            width,
            height,
            reason: "row encoding requires width to be a multiple of 64",
        });
    }
    Ok(())
}

fn check_tile_dims(width: usize, height: usize) -> Result<()> {
    check_nonempty(width, height)?;
    if !width.is_multiple_of(TILE) || !height.is_multiple_of(TILE) {
        return Err(Error::Dimensions {
            width,
            height,
            reason: "tile encoding requires width and height to be multiples of 8",
        });
    }
    Ok(())
}

pub fn pack_rows(g: &ByteGrid) -> Result<RowPackedGrid> {
    check_row_dims(g.width, g.height)?;
    let words = g
        .cells
        .chunks_exact(WORD_BITS)
        .map(|cells| {
            cells
                .iter()
                .enumerate()
                .fold(0u64, |w, (i, &c)| w | (u64::from(c & 1) << i))
        })
        .collect();
    Ok(RowPackedGrid {
        width: g.width,
        height: g.height,
        words,
    })
}

pub fn unpack_rows(p: &RowPackedGrid) -> ByteGrid {
    let mut cells = Vec::with_capacity(p.width * p.height);
    for &word in &p.words {
        cells.extend((0..WORD_BITS).map(|i| ((word >> i) & 1) as u8));
    }
    ByteGrid {
        width: p.width,
        height: p.height,
        cells,
    }
}

pub fn pack_tiles(g: &ByteGrid) -> Result<TilePackedGrid> {
    check_tile_dims(g.width, g.height)?;
    let tiles_per_row = g.width / TILE;
    let mut words = vec![0u64; tiles_per_row * (g.height / TILE)];
    for (y, row) in g.cells.chunks_exact(g.width).enumerate() {
        for (x, &c) in row.iter().enumerate() {
            if c != 0 {
                words[(y / TILE) * tiles_per_row + x / TILE] |= 1 << ((y % TILE) * TILE + x % TILE);
            }
        }
    }
    Ok(TilePackedGrid {
        width: g.width,
        height: g.height,
        words,
    })
}

pub fn unpack_tiles(p: &TilePackedGrid) -> ByteGrid {
    let mut cells = vec![0u8; p.width * p.height];
    let tiles_per_row = p.tiles_per_row();
    for (t, &word) in p.words.iter().enumerate() {
        let (ty, tx) = (t / tiles_per_row, t % tiles_per_row);
        for bit in 0..WORD_BITS {
            let (y, x) = (ty * TILE + bit / TILE, tx * TILE + bit % TILE);
            cells[y * p.width + x] = ((word >> bit) & 1) as u8;
        }
    }
    ByteGrid {
        width: p.width,
        height: p.height,
        cells,
    }
}
