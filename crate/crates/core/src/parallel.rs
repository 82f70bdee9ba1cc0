use std::num::NonZeroUsize;
use std::thread;

use crate::error::{Error, Result};

/// Number of OS threads an engine may use. Always at least one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Workers(NonZeroUsize);

impl Workers {
    pub const ONE: Workers = Workers(NonZeroUsize::MIN);

    pub fn new(count: usize) -> Result<Self> {
        NonZeroUsize::new(count)
            .map(Workers)
            .ok_or_else(|| Error::parameter("workers", "must be at least 1"))
    }

    pub fn available() -> Self {
        Workers(thread::available_parallelism().unwrap_or(NonZeroUsize::MIN))
    }

    pub fn get(self) -> usize {
        self.0.get()
    }
}

impl Default for Workers {
    fn default() -> Self {
        Workers::ONE
    }
}

/// Splits `0..len` into at most `parts` contiguous ranges of near-equal size.
pub(crate) fn split_even(len: usize, parts: usize) -> Vec<std::ops::Range<usize>> {
    let parts = parts.clamp(1, len.max(1));
    let base = len / parts;
    let extra = len % parts;
    let mut start = 0;
    (0..parts)
        .map(|p| {
            let end = start + base + usize::from(p < extra);
            let range = start..end;
            start = end;
            range
        })
        .collect()
}

/// Fills `out`, viewed as rows of `row_len` items, by calling
/// `fill(first_row, rows)` on disjoint contiguous row ranges, one per worker.
pub(crate) fn fill_rows<T, F>(out: &mut [T], row_len: usize, workers: Workers, fill: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync,
{
    if row_len == 0 {
        return;
    }
    let rows = out.len() / row_len;
    if workers.get() == 1 || rows <= 1 {
        fill(0, out);
        return;
    }
    let ranges = split_even(rows, workers.get());
    thread::scope(|scope| {
        let mut rest = out;
        for range in ranges {
            let (chunk, tail) = rest.split_at_mut(range.len() * row_len);
            rest = tail;
            let fill = &fill;
            scope.spawn(move || fill(range.start, chunk));
        }
    });
}

/// Maps `0..len` in contiguous ranges, one per worker, concatenating the
/// per-range outputs in order.
pub(crate) fn map_ranges<R, F>(len: usize, workers: Workers, map: F) -> Vec<R>
where
    R: Send,
    F: Fn(std::ops::Range<usize>) -> Vec<R> + Sync,
{
    if workers.get() == 1 || len <= 1 {
        return map(0..len);
    }
    let ranges = split_even(len, workers.get());
    thread::scope(|scope| {
        let handles: Vec<_> = ranges
            .into_iter()
            .map(|range| {
                let map = &map;
                scope.spawn(move || map(range))
            })
            .collect();
        handles
            .into_iter()
            .flat_map(|h| h.join().expect("worker panicked"))
            .collect()
    })
}
