use super::grid::ByteGrid;
use crate::parallel::{fill_rows, Workers};

/// Conway's rule: survive on 2 or 3 live neighbors, birth on exactly 3.
#[inline]
pub fn next_state(alive: bool, live_neighbors: u32) -> bool {
    live_neighbors == 3 || (alive && live_neighbors == 2)
}

/// Sequential rule-level oracle. Cells outside the grid are dead.
pub fn step_reference(g: &ByteGrid) -> ByteGrid {
    let (w, h) = (g.width() as i64, g.height() as i64);
    let mut next = ByteGrid::dead(g.width(), g.height()).expect("source grid is non-empty");
    for y in 0..h {
        for x in 0..w {
            let mut count = 0;
            for dy in -1..=1 {
                for dx in -1..=1 {
                    let (ny, nx) = (y + dy, x + dx);
                    if (dy, dx) != (0, 0)
                        && (0..h).contains(&ny)
                        && (0..w).contains(&nx)
                        && g.get(ny as usize, nx as usize)
                    {
                        count += 1;
                    }
                }
            }
            let alive = g.get(y as usize, x as usize);
            next.set(y as usize, x as usize, next_state(alive, count));
        }
    }
    next
}

/// Byte-per-cell baseline: every cell reads its eight neighbors directly.
pub fn step_bytes(g: &ByteGrid, workers: Workers) -> ByteGrid {
    let (w, h) = (g.width(), g.height());
    let src = g.cells();
    let mut out = vec![0u8; w * h];
    fill_rows(&mut out, w, workers, |first_row, chunk| {
        for (i, out_row) in chunk.chunks_exact_mut(w).enumerate() {
            let y = first_row + i;
            let y0 = y.saturating_sub(1);
            let y1 = (y + 1).min(h - 1);
            for (x, cell) in out_row.iter_mut().enumerate() {
                let x0 = x.saturating_sub(1);
                let x1 = (x + 1).min(w - 1);
                let mut count = 0u32;
                for ny in y0..=y1 {
                    for nx in x0..=x1 {
                        count += u32::from(src[ny * w + nx]);
                    }
                }
                let alive = src[y * w + x];
                count -= u32::from(alive);
                *cell = u8::from(next_state(alive != 0, count));
            }
        }
    });
    ByteGrid::from_cells(w, h, out).expect("dimensions preserved")
}
