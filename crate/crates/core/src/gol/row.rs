//! Row-encoded steps that still evaluate one cell at a time.

use super::grid::RowPackedGrid;
use super::reference::next_state;
use crate::parallel::{fill_rows, Workers};

/// Tests each of the eight neighbors of every cell with its own bit lookup.
pub fn step_row_naive(p: &RowPackedGrid, workers: Workers) -> RowPackedGrid {
    let (w, h) = (p.width() as i64, p.height() as i64);
    let wpr = p.words_per_row();
    let src = p.words();
    let bit = |y: i64, x: i64| -> u32 {
        if y < 0 || y >= h || x < 0 || x >= w {
            0
        } else {
            let (y, x) = (y as usize, x as usize);
            ((src[y * wpr + x / 64] >> (x % 64)) & 1) as u32
        }
    };
    let mut out = vec![0u64; src.len()];
    fill_rows(&mut out, wpr, workers, |first_row, chunk| {
        for (i, out_row) in chunk.chunks_exact_mut(wpr).enumerate() {
            let y = (first_row + i) as i64;
            for (j, out_word) in out_row.iter_mut().enumerate() {
                let mut word = 0u64;
                for b in 0..64 {
                    let x = (j * 64 + b) as i64;
                    let count = bit(y - 1, x - 1)
                        + bit(y - 1, x)
                        + bit(y - 1, x + 1)
                        + bit(y, x - 1)
                        + bit(y, x + 1)
                        + bit(y + 1, x - 1)
                        + bit(y + 1, x)
                        + bit(y + 1, x + 1);
                    if next_state(bit(y, x) != 0, count) {
                        word |= 1 << b;
                    }
                }
                *out_word = word;
            }
        }
    });
    p.with_words(out)
}

/// Three-word window of a row centred on word `j`, shifted so that bit `b`
/// of the result holds column `64 * j + b - 1`.
#[inline]
fn window(row: &[u64], j: usize) -> u128 {
    let prev = if j > 0 { row[j - 1] >> 63 } else { 0 };
    let next = row.get(j + 1).copied().unwrap_or(0);
    u128::from(prev) | (u128::from(row[j]) << 1) | (u128::from(next) << 65)
}

const CENTER: u32 = 1 << 4;

/// Gathers each cell's 3x3 neighborhood into a 9-bit mask and counts it with
/// a population count.
pub fn step_row_popc(p: &RowPackedGrid, workers: Workers) -> RowPackedGrid {
    let wpr = p.words_per_row();
    let h = p.height();
    let mut out = vec![0u64; p.words().len()];
    fill_rows(&mut out, wpr, workers, |first_row, chunk| {
        for (i, out_row) in chunk.chunks_exact_mut(wpr).enumerate() {
            let y = first_row + i;
            for (j, out_word) in out_row.iter_mut().enumerate() {
                let above = if y > 0 { window(p.row(y - 1), j) } else { 0 };
                let middle = window(p.row(y), j);
                let below = if y + 1 < h {
                    window(p.row(y + 1), j)
                } else {
                    0
                };
                let mut word = 0u64;
                for b in 0..64 {
                    let hood = ((above >> b) & 7) as u32
                        | (((middle >> b) & 7) as u32) << 3
                        | (((below >> b) & 7) as u32) << 6;
                    let count = (hood & !CENTER).count_ones();
                    if next_state(hood & CENTER != 0, count) {
                        word |= 1 << b;
                    }
                }
                *out_word = word;
            }
        }
    });
    p.with_words(out)
}
