//! Bitonic sorting network over power-of-two slices.

use std::cmp::Ordering;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Ascending,
    Descending,
}

/// Compare-exchanges the standard bitonic network performs on `len` items:
/// `(len / 2) * log2(len) * (log2(len) + 1) / 2`.
pub fn network_size(len: usize) -> u64 {
    if len < 2 {
        return 0;
    }
    let lg = u64::from(len.trailing_zeros());
    (len as u64 / 2) * lg * (lg + 1) / 2
}

#[inline(always)]
fn compare_exchange<T: Ord>(items: &mut [T], lo: usize, hi: usize, ascending: bool) {
    let out_of_order = match items[lo].cmp(&items[hi]) {
        Ordering::Greater => ascending,
        Ordering::Less => !ascending,
        Ordering::Equal => false,
    };
    if out_of_order {
        items.swap(lo, hi);
    }
}

fn check_power_of_two(len: usize) -> Result<()> {
    if !len.is_power_of_two() {
        return Err(Error::parameter(
            "length",
            format!("{len} is not a power of two"),
        ));
    }
    Ok(())
}

/// Sorts `items` with the bitonic network and returns the number of
/// compare-exchanges performed.
pub fn bitonic_sort<T: Ord>(items: &mut [T], direction: Direction) -> Result<u64> {
    let n = items.len();
    check_power_of_two(n)?;
    let ascending = direction == Direction::Ascending;
    let mut exchanges = 0;
    let mut size = 2;
    while size <= n {
        let mut stride = size / 2;
        while stride > 0 {
            for i in 0..n {
                let partner = i ^ stride;
                if partner > i {
                    // Blocks alternate direction until the final merge.
                    let block_ascending = (i & size) == 0;
                    compare_exchange(items, i, partner, block_ascending == ascending);
                    exchanges += 1;
                }
            }
            stride /= 2;
        }
        size *= 2;
    }
    Ok(exchanges)
}

/// Sorts a bitonic sequence with `log2(len)` half-cleaner stages.
pub fn bitonic_merge<T: Ord>(items: &mut [T], direction: Direction) -> Result<u64> {
    let n = items.len();
    check_power_of_two(n)?;
    let ascending = direction == Direction::Ascending;
    let mut exchanges = 0;
    let mut stride = n / 2;
    while stride > 0 {
        for i in 0..n {
            let partner = i ^ stride;
            if partner > i {
                compare_exchange(items, i, partner, ascending);
                exchanges += 1;
            }
        }
        stride /= 2;
    }
    Ok(exchanges)
}

/// Merges two ascending runs of equal power-of-two length, keeping the
/// smaller half. `top` receives the result, `batch` is left unspecified.
///
/// Pairing `top[i]` with `batch[len - 1 - i]` is the stride-`len` step of a
/// bitonic merge over `top ++ reverse(batch)`; the kept lower half is
/// bitonic and one more merge sorts it.
pub(crate) fn merge_lower_half<T: Ord + Copy>(top: &mut [T], batch: &[T]) -> u64 {
    let n = top.len();
    debug_assert_eq!(n, batch.len());
    for (i, slot) in top.iter_mut().enumerate() {
        let other = batch[n - 1 - i];
        if other < *slot {
            *slot = other;
        }
    }
    n as u64 + bitonic_merge(top, Direction::Ascending).expect("power-of-two length")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sorts_small_example() {
        let mut v = [3, 1, 2, 0];
        bitonic_sort(&mut v, Direction::Ascending).unwrap();
        assert_eq!(v, [0, 1, 2, 3]);
        bitonic_sort(&mut v, Direction::Descending).unwrap();
        assert_eq!(v, [3, 2, 1, 0]);
    }

    #[test]
    fn rejects_non_power_of_two() {
        let mut v = [1, 2, 3];
        assert!(bitonic_sort(&mut v, Direction::Ascending).is_err());
        assert!(bitonic_merge(&mut v, Direction::Ascending).is_err());
    }

    #[test]
    fn sorted_input_unchanged() {
        let mut v: Vec<u32> = (0..1024).collect();
        let count = bitonic_sort(&mut v, Direction::Ascending).unwrap();
        assert!(v.iter().copied().eq(0..1024));
        assert_eq!(count, network_size(1024));
    }

    #[test]
    fn network_size_small_cases() {
        assert_eq!(network_size(1), 0);
        assert_eq!(network_size(2), 1);
        assert_eq!(network_size(4), 6);
        assert_eq!(network_size(8), 24);
    }
}
