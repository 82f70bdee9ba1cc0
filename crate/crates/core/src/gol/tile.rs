use super::grid::TilePackedGrid;
use super::reference::next_state;
use crate::parallel::{fill_rows, Workers};

const ROW: u64 = 0xff;

/// Expands a tile and its eight neighbors into ten 10-bit rows: row `k`
/// holds cells `y = k - 1` for `x = -1..=8`, bit `x + 1`.
#[inline]
fn halo_rows(hood: &[[u64; 3]; 3]) -> [u16; 10] {
    let mut rows = [0u16; 10];
    let line = |tiles: &[u64; 3], y: usize| -> u16 {
        let west = (tiles[0] >> (y * 8 + 7)) & 1;
        let mid = (tiles[1] >> (y * 8)) & ROW;
        let east = (tiles[2] >> (y * 8)) & 1;
        (west | (mid << 1) | (east << 9)) as u16
    };
    rows[0] = line(&hood[0], 7);
    for y in 0..8 {
        rows[y + 1] = line(&hood[1], y);
    }
    rows[9] = line(&hood[2], 0);
    rows
}

/// Evaluates all 64 cells of each tile from its 3x3 tile neighborhood,
/// counting neighbors with a population count over a 9-bit window.
pub fn step_tile_popc(p: &TilePackedGrid, workers: Workers) -> TilePackedGrid {
    let tpr = p.tiles_per_row();
    let rows = p.tile_rows();
    let src = p.words();
    let tile = |ty: isize, tx: isize| -> u64 {
        if ty < 0 || tx < 0 || ty as usize >= rows || tx as usize >= tpr {
            0
        } else {
            src[ty as usize * tpr + tx as usize]
        }
    };
    let mut out = vec![0u64; src.len()];
    fill_rows(&mut out, tpr, workers, |first_row, chunk| {
        for (i, out_row) in chunk.chunks_exact_mut(tpr).enumerate() {
            let ty = (first_row + i) as isize;
            for (tx, out_word) in out_row.iter_mut().enumerate() {
                let tx = tx as isize;
                let hood: [[u64; 3]; 3] = std::array::from_fn(|dy| {
                    std::array::from_fn(|dx| tile(ty + dy as isize - 1, tx + dx as isize - 1))
                });
                let halo = halo_rows(&hood);
                let mut word = 0u64;
                for y in 0..8 {
                    for x in 0..8 {
                        let window = ((halo[y] >> x) & 7) as u32
                            | (((halo[y + 1] >> x) & 7) as u32) << 3
                            | (((halo[y + 2] >> x) & 7) as u32) << 6;
                        let alive = window & (1 << 4) != 0;
                        let count = (window & !(1 << 4)).count_ones();
                        if next_state(alive, count) {
                            word |= 1 << (y * 8 + x);
                        }
                    }
                }
                *out_word = word;
            }
        }
    });
    p.with_words(out)
}
