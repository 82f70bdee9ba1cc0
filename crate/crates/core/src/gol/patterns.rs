//! Canonical small patterns, stamped into a grid at a given top-left corner.

use super::grid::ByteGrid;

pub const BLOCK: &[&str] = &["OO", "OO"];
pub const BEEHIVE: &[&str] = &[".OO.", "O..O", ".OO."];
pub const BLINKER: &[&str] = &["OOO"];
pub const GLIDER: &[&str] = &[".O.", "..O", "OOO"];

/// Sets the live cells of `pattern` with its top-left corner at `(y, x)`.
///
/// Panics if the pattern does not fit.
pub fn stamp(grid: &mut ByteGrid, pattern: &[&str], y: usize, x: usize) {
    for (dy, row) in pattern.iter().enumerate() {
        for (dx, ch) in row.bytes().enumerate() {
            if ch != b'.' {
                grid.set(y + dy, x + dx, true);
            }
        }
    }
}

pub fn with_pattern(width: usize, height: usize, pattern: &[&str], y: usize, x: usize) -> ByteGrid {
    let mut grid = ByteGrid::dead(width, height).expect("non-empty grid");
    stamp(&mut grid, pattern, y, x);
    grid
}
