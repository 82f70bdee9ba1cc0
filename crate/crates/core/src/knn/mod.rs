//! Multi-query 2-D k-nearest neighbors.
//!
//! Distances are squared Euclidean. Results are sorted by `(distance,
//! index)`, so ties resolve to the lower data index and every variant has a
//! unique correct answer. Queries are independent and are split across
//! workers in contiguous ranges.

mod bitonic;
mod buffered;
mod heap;
mod lanes;
mod point;
mod reference;

use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;

use crate::error::{Error, Result};

pub use bitonic::{bitonic_merge, bitonic_sort, network_size, Direction};
pub use buffered::{knn_buffered, knn_buffered_trace, merge_topk, BufferedTrace, CandidateBuffer};
pub use heap::{knn_heap, HeapTopK};
pub use lanes::{validate_lane_partition, LanePartitionView, LANES};
pub use point::{Neighbor, NeighborList, Point, PointCloud, TopK};
pub use reference::knn_reference;

fn check_inputs(data: &PointCloud, k: TopK) -> Result<()> {
    if data.len() < k.get() {
        return Err(Error::InsufficientData {
            needed: k.get(),
            available: data.len(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum KnnVariant {
    Reference,
    Heap,
    Buffered,
}

impl KnnVariant {
    pub const ALL: [KnnVariant; 3] = [
        KnnVariant::Reference,
        KnnVariant::Heap,
        KnnVariant::Buffered,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            KnnVariant::Reference => "reference",
            KnnVariant::Heap => "heap",
            KnnVariant::Buffered => "buffered",
        }
    }
}

impl fmt::Display for KnnVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for KnnVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        KnnVariant::ALL
            .into_iter()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::UnknownVariant {
                task: "knn",
                variant: s.to_string(),
                valid: KnnVariant::ALL.map(KnnVariant::name).join(", "),
            })
    }
}

/// Writes `q=<i> k=<k>:` followed by one `<index>\t<distance>` line per
/// neighbor. Distances use the shortest representation that round-trips.
pub fn write_results<W: Write>(mut out: W, lists: &[NeighborList]) -> io::Result<()> {
    for (q, list) in lists.iter().enumerate() {
        writeln!(out, "q={q} k={}:", list.k())?;
        for n in list.entries() {
            writeln!(out, "{}\t{}", n.index, n.distance)?;
        }
    }
    Ok(())
}
