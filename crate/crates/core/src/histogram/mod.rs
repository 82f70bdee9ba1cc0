//! Character-range histogram ladder: shared atomics, per-worker
//! privatization, chunked multi-item iteration and the 32-copy interleaved
//! layout. Counts are 64-bit throughout.

mod engines;
mod range;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::parallel::Workers;

pub use engines::{
    histogram_multicopy, histogram_multiitem, histogram_privatized, histogram_privatized_with,
    histogram_reference, histogram_shared_atomic, multicopy_layout, ChunkSchedule,
    IterationPattern, MergePolicy, MultiCopyLayout, COPIES,
};
pub use range::{CharRange, Histogram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HistogramVariant {
    Reference,
    SharedAtomic,
    PrivatizedFullMerge,
    Privatized,
    MultiItemBlock,
    MultiItemStride,
    MultiCopyBlock,
    MultiCopyStride,
}

impl HistogramVariant {
    pub const ALL: [HistogramVariant; 8] = [
        HistogramVariant::Reference,
        HistogramVariant::SharedAtomic,
        HistogramVariant::PrivatizedFullMerge,
        HistogramVariant::Privatized,
        HistogramVariant::MultiItemBlock,
        HistogramVariant::MultiItemStride,
        HistogramVariant::MultiCopyBlock,
        HistogramVariant::MultiCopyStride,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            HistogramVariant::Reference => "reference",
            HistogramVariant::SharedAtomic => "shared-atomic",
            HistogramVariant::PrivatizedFullMerge => "privatized-full-merge",
            HistogramVariant::Privatized => "privatized",
            HistogramVariant::MultiItemBlock => "multiitem-block",
            HistogramVariant::MultiItemStride => "multiitem-stride",
            HistogramVariant::MultiCopyBlock => "multicopy-block",
            HistogramVariant::MultiCopyStride => "multicopy-stride",
        }
    }

    /// Whether the variant reads `items_per_worker`.
    pub fn uses_items_per_worker(self) -> bool {
        self.pattern().is_some()
    }

    pub fn pattern(self) -> Option<IterationPattern> {
        match self {
            HistogramVariant::MultiItemBlock | HistogramVariant::MultiCopyBlock => {
                Some(IterationPattern::ContiguousBlock)
            }
            HistogramVariant::MultiItemStride | HistogramVariant::MultiCopyStride => {
                Some(IterationPattern::WorkerStride)
            }
            _ => None,
        }
    }

    pub fn run(
        self,
        text: &[u8],
        range: CharRange,
        workers: Workers,
        items_per_worker: usize,
    ) -> Result<Histogram> {
        Ok(match self {
            HistogramVariant::Reference => histogram_reference(text, range),
            HistogramVariant::SharedAtomic => histogram_shared_atomic(text, range, workers),
            HistogramVariant::PrivatizedFullMerge => {
                histogram_privatized_with(text, range, workers, MergePolicy::All)
            }
            HistogramVariant::Privatized => histogram_privatized(text, range, workers),
            HistogramVariant::MultiItemBlock | HistogramVariant::MultiItemStride => {
                histogram_multiitem(
                    text,
                    range,
                    workers,
                    items_per_worker,
                    self.pattern().expect("multi-item"),
                )?
            }
            HistogramVariant::MultiCopyBlock | HistogramVariant::MultiCopyStride => {
                histogram_multicopy(
                    text,
                    range,
                    workers,
                    items_per_worker,
                    self.pattern().expect("multi-copy"),
                )?
            }
        })
    }
}

impl fmt::Display for HistogramVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HistogramVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        HistogramVariant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::UnknownVariant {
                task: "histogram",
                variant: s.to_string(),
                valid: HistogramVariant::ALL.map(HistogramVariant::name).join(", "),
            })
    }
}
