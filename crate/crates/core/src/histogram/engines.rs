use std::ops::Range;
use std::sync::atomic::{AtomicU64, Ordering};
use std::thread;

use super::range::{CharRange, Histogram};
use crate::error::{Error, Result};
use crate::parallel::{split_even, Workers};

/// Sequential oracle.
pub fn histogram_reference(text: &[u8], range: CharRange) -> Histogram {
    let mut bins = vec![0u64; range.bin_count()];
    for &byte in text {
        if range.contains(byte) {
            bins[usize::from(byte - range.from())] += 1;
        }
    }
    Histogram::from_bins(range, bins).expect("bin count matches range")
}

/// How a worker's private counts are folded into the shared result.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MergePolicy {
    /// One atomic add per bin.
    All,
    /// Atomic adds only for bins the worker actually touched.
    SkipZero,
}

/// How workers divide the input, in chunks of `items_per_worker` bytes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IterationPattern {
    /// Worker `w` owns the `w`-th of `workers` contiguous runs of chunks.
    ContiguousBlock,
    /// Worker `w` takes chunks `w, w + workers, w + 2 * workers, ...`.
    WorkerStride,
}

impl IterationPattern {
    pub const ALL: [IterationPattern; 2] = [
        IterationPattern::ContiguousBlock,
        IterationPattern::WorkerStride,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IterationPattern::ContiguousBlock => "contiguous-block",
            IterationPattern::WorkerStride => "worker-stride",
        }
    }
}

impl std::str::FromStr for IterationPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "contiguous-block" | "block" => Ok(IterationPattern::ContiguousBlock),
            "worker-stride" | "stride" => Ok(IterationPattern::WorkerStride),
            other => Err(Error::parameter(
                "pattern",
                format!("`{other}` is not one of contiguous-block, worker-stride"),
            )),
        }
    }
}

/// Assignment of input chunks to workers. The final chunk may be short;
/// every byte index belongs to exactly one worker.
#[derive(Debug, Clone, Copy)]
pub struct ChunkSchedule {
    len: usize,
    items: usize,
    workers: usize,
    pattern: IterationPattern,
}

impl ChunkSchedule {
    pub fn new(
        len: usize,
        workers: Workers,
        items_per_worker: usize,
        pattern: IterationPattern,
    ) -> Result<Self> {
        if items_per_worker == 0 {
            return Err(Error::parameter("items_per_worker", "must be at least 1"));
        }
        Ok(ChunkSchedule {
            len,
            items: items_per_worker,
            workers: workers.get(),
            pattern,
        })
    }

    pub fn chunk_count(&self) -> usize {
        self.len.div_ceil(self.items)
    }

    pub fn workers(&self) -> usize {
        self.workers
    }

    /// Byte ranges processed by worker `w`, in processing order.
    pub fn ranges(&self, w: usize) -> impl Iterator<Item = Range<usize>> + '_ {
        let chunks = self.chunk_count();
        let (first, step, end) = match self.pattern {
            IterationPattern::ContiguousBlock => {
                let owned = split_even(chunks, self.workers)
                    .get(w)
                    .cloned()
                    .unwrap_or(0..0);
                // One contiguous range covers all of this worker's chunks.
                (owned.start, owned.len().max(1), owned.end)
            }
            IterationPattern::WorkerStride => (w, self.workers, chunks),
        };
        let span = match self.pattern {
            IterationPattern::ContiguousBlock => end - first,
            IterationPattern::WorkerStride => 1,
        };
        (first..end).step_by(step).map(move |c| {
            let start = c * self.items;
            start..((c + span) * self.items).min(self.len)
        })
    }
}

fn shared_bins(n: usize) -> Vec<AtomicU64> {
    (0..n).map(|_| AtomicU64::new(0)).collect()
}

fn load_bins(range: CharRange, bins: &[AtomicU64]) -> Histogram {
    Histogram::from_bins(
        range,
        bins.iter().map(|b| b.load(Ordering::Relaxed)).collect(),
    )
    .expect("bin count matches range")
}

/// Runs `body(w)` for every worker `w`, inline when there is only one.
fn spawn_workers<F: Fn(usize) + Sync>(workers: usize, body: F) {
    if workers == 1 {
        body(0);
        return;
    }
    thread::scope(|scope| {
        for w in 0..workers {
            let body = &body;
            scope.spawn(move || body(w));
        }
    });
}

/// Baseline: every in-range byte is an atomic increment on one shared bin
/// array.
pub fn histogram_shared_atomic(text: &[u8], range: CharRange, workers: Workers) -> Histogram {
    let bins = shared_bins(range.bin_count());
    let slices = split_even(text.len(), workers.get());
    spawn_workers(slices.len(), |w| {
        for &byte in &text[slices[w].clone()] {
            if let Some(i) = range.bin(byte) {
                bins[i].fetch_add(1, Ordering::Relaxed);
            }
        }
    });
    load_bins(range, &bins)
}

fn merge_private(shared: &[AtomicU64], local: &[u64], policy: MergePolicy) {
    for (bin, &count) in shared.iter().zip(local) {
        if policy == MergePolicy::All || count != 0 {
            bin.fetch_add(count, Ordering::Relaxed);
        }
    }
}

fn privatized_over(
    text: &[u8],
    range: CharRange,
    schedule: &ChunkSchedule,
    policy: MergePolicy,
) -> Histogram {
    let shared = shared_bins(range.bin_count());
    spawn_workers(schedule.workers(), |w| {
        let mut local = vec![0u64; range.bin_count()];
        for chunk in schedule.ranges(w) {
            for &byte in &text[chunk] {
                if let Some(i) = range.bin(byte) {
                    local[i] += 1;
                }
            }
        }
        merge_private(&shared, &local, policy);
    });
    load_bins(range, &shared)
}

/// Each worker counts its contiguous share privately, then merges once,
/// skipping bins it never touched.
pub fn histogram_privatized(text: &[u8], range: CharRange, workers: Workers) -> Histogram {
    histogram_privatized_with(text, range, workers, MergePolicy::SkipZero)
}

pub fn histogram_privatized_with(
    text: &[u8],
    range: CharRange,
    workers: Workers,
    policy: MergePolicy,
) -> Histogram {
    let items = text.len().div_ceil(workers.get()).max(1);
    let schedule = ChunkSchedule::new(
        text.len(),
        workers,
        items,
        IterationPattern::ContiguousBlock,
    )
    .expect("items >= 1");
    privatized_over(text, range, &schedule, policy)
}

/// Private per-worker counts over an explicit chunk schedule.
pub fn histogram_multiitem(
    text: &[u8],
    range: CharRange,
    workers: Workers,
    items_per_worker: usize,
    pattern: IterationPattern,
) -> Result<Histogram> {
    let schedule = ChunkSchedule::new(text.len(), workers, items_per_worker, pattern)?;
    Ok(privatized_over(
        text,
        range,
        &schedule,
        MergePolicy::SkipZero,
    ))
}

/// Number of histogram copies in a [`MultiCopyLayout`].
pub const COPIES: usize = 32;

/// 32 interleaved histogram copies: bin `i` of copy `c` lives at offset
/// `i * 32 + c`.
#[derive(Debug)]
pub struct MultiCopyLayout {
    bin_count: usize,
    storage: Vec<AtomicU64>,
}

impl MultiCopyLayout {
    pub fn new(bin_count: usize) -> Self {
        MultiCopyLayout {
            bin_count,
            storage: shared_bins(bin_count * COPIES),
        }
    }

    #[inline(always)]
    pub fn offset(bin: usize, copy: usize) -> usize {
        bin * COPIES + copy
    }

    #[inline(always)]
    pub fn add(&self, bin: usize, copy: usize) {
        self.storage[Self::offset(bin, copy)].fetch_add(1, Ordering::Relaxed);
    }

    pub fn storage_len(&self) -> usize {
        self.storage.len()
    }

    pub fn get(&self, bin: usize, copy: usize) -> u64 {
        self.storage[Self::offset(bin, copy)].load(Ordering::Relaxed)
    }

    /// Sums every copy of each bin.
    pub fn reduce(&self) -> Vec<u64> {
        (0..self.bin_count)
            .map(|bin| (0..COPIES).map(|c| self.get(bin, c)).sum())
            .collect()
    }
}

/// Fills a shared [`MultiCopyLayout`]; worker `w` increments copy `w % 32`.
pub fn multicopy_layout(
    text: &[u8],
    range: CharRange,
    workers: Workers,
    items_per_worker: usize,
    pattern: IterationPattern,
) -> Result<MultiCopyLayout> {
    let schedule = ChunkSchedule::new(text.len(), workers, items_per_worker, pattern)?;
    let layout = MultiCopyLayout::new(range.bin_count());
    spawn_workers(schedule.workers(), |w| {
        let copy = w % COPIES;
        for chunk in schedule.ranges(w) {
            for &byte in &text[chunk] {
                if let Some(i) = range.bin(byte) {
                    layout.add(i, copy);
                }
            }
        }
    });
    Ok(layout)
}

pub fn histogram_multicopy(
    text: &[u8],
    range: CharRange,
    workers: Workers,
    items_per_worker: usize,
    pattern: IterationPattern,
) -> Result<Histogram> {
    let layout = multicopy_layout(text, range, workers, items_per_worker, pattern)?;
    Histogram::from_bins(range, layout.reduce())
}
