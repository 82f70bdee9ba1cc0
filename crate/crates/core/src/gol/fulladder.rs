//! Bit-sliced step: 64 cells per word evaluated at once by adding the eight
//! shifted neighbor masks with bitwise half and full adders.

use super::grid::RowPackedGrid;
use crate::parallel::{fill_rows, Workers};

#[inline(always)]
fn half_add(a: u64, b: u64) -> (u64, u64) {
    (a ^ b, a & b)
}

#[inline(always)]
fn full_add(a: u64, b: u64, c: u64) -> (u64, u64) {
    let t = a ^ b;
    (t ^ c, (a & b) | (t & c))
}

/// Sum bit-planes (ones, twos, fours) of eight 1-bit-per-lane masks.
///
/// The eights plane is dropped: a count of 8 leaves ones, twos and fours all
/// clear, which the rule treats the same as 0.
#[inline(always)]
pub fn neighbor_planes(n: [u64; 8]) -> (u64, u64, u64) {
    let (s0, c0) = full_add(n[0], n[1], n[2]);
    let (s1, c1) = full_add(n[3], n[4], n[5]);
    let (s2, c2) = half_add(n[6], n[7]);
    let (ones, c3) = full_add(s0, s1, s2);
    let (t, u) = full_add(c0, c1, c2);
    let (twos, v) = half_add(t, c3);
    let fours = u ^ v;
    (ones, twos, fours)
}

/// Next state of 64 lanes given their live state and eight neighbor masks.
/// Alive next iff the count is 2 or 3 (twos set, fours clear) and the cell
/// is alive or the ones bit is set.
#[inline(always)]
pub fn next_from_neighbors(alive: u64, n: [u64; 8]) -> u64 {
    let (ones, twos, fours) = neighbor_planes(n);
    twos & !fours & (ones | alive)
}

#[inline(always)]
fn west(cur: u64, prev: u64) -> u64 {
    (cur << 1) | (prev >> 63)
}

#[inline(always)]
fn east(cur: u64, next: u64) -> u64 {
    (cur >> 1) | (next << 63)
}

pub fn step_row_fulladder(p: &RowPackedGrid, workers: Workers) -> RowPackedGrid {
    let wpr = p.words_per_row();
    let h = p.height();
    let zero_row = vec![0u64; wpr];
    let mut out = vec![0u64; p.words().len()];
    fill_rows(&mut out, wpr, workers, |first_row, chunk| {
        for (i, out_row) in chunk.chunks_exact_mut(wpr).enumerate() {
            let y = first_row + i;
            let up = if y > 0 { p.row(y - 1) } else { &zero_row[..] };
            let mid = p.row(y);
            let down = if y + 1 < h {
                p.row(y + 1)
            } else {
                &zero_row[..]
            };
            for (j, out_word) in out_row.iter_mut().enumerate() {
                let (prev, next) = (j.wrapping_sub(1), j + 1);
                let at = |row: &[u64], k: usize| row.get(k).copied().unwrap_or(0);
                let (u, m, d) = (up[j], mid[j], down[j]);
                let neighbors = [
                    west(u, at(up, prev)),
                    u,
                    east(u, at(up, next)),
                    west(m, at(mid, prev)),
                    east(m, at(mid, next)),
                    west(d, at(down, prev)),
                    d,
                    east(d, at(down, next)),
                ];
                *out_word = next_from_neighbors(m, neighbors);
            }
        }
    });
    p.with_words(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gol::reference::next_state;

    #[test]
    fn planes_count_every_configuration() {
        for mask in 0u32..256 {
            let n: [u64; 8] = std::array::from_fn(|i| u64::from((mask >> i) & 1));
            let (ones, twos, fours) = neighbor_planes(n);
            let count = mask.count_ones();
            assert_eq!(ones, u64::from(count & 1), "mask {mask:08b}");
            assert_eq!(twos, u64::from((count >> 1) & 1), "mask {mask:08b}");
            assert_eq!(fours, u64::from((count >> 2) & 1), "mask {mask:08b}");
        }
    }

    #[test]
    fn formula_agrees_with_rule_on_all_512_neighborhoods() {
        for hood in 0u32..512 {
            let alive = hood & 1;
            let n: [u64; 8] = std::array::from_fn(|i| u64::from((hood >> (i + 1)) & 1));
            let expected = next_state(alive == 1, hood.count_ones() - alive);
            assert_eq!(next_from_neighbors(u64::from(alive), n) == 1, expected);
        }
    }
}
