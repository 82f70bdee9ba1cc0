//! Sorted top-k with a candidate buffer, merged by bitonic sort.
//!
//! Per query the top-k starts as k sentinels. Data points are read in
//! batches; each one closer than the current k-th entry goes into a buffer
//! of capacity k. A full buffer (or the final partial one, padded with
//! sentinels) is bitonic-sorted and merged into the top-k, which tightens
//! the filter threshold.

use super::bitonic::{bitonic_sort, merge_lower_half, Direction};
use super::check_inputs;
use super::point::{Neighbor, NeighborList, Point, PointCloud, TopK};
use crate::error::{Error, Result};
use crate::parallel::{map_ranges, Workers};

/// Unordered staging area for candidates that passed the threshold filter.
#[derive(Debug, Clone)]
pub struct CandidateBuffer {
    entries: Vec<Neighbor>,
    capacity: usize,
}

impl CandidateBuffer {
    pub fn new(k: TopK) -> Self {
        CandidateBuffer {
            entries: Vec::with_capacity(k.get()),
            capacity: k.get(),
        }
    }

    /// Appends a candidate; returns true when the buffer became full.
    #[inline]
    pub fn push(&mut self, candidate: Neighbor) -> bool {
        debug_assert!(self.entries.len() < self.capacity);
        self.entries.push(candidate);
        self.entries.len() == self.capacity
    }

    pub fn fill(&self) -> usize {
        self.entries.len()
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Neighbor] {
        &self.entries
    }

    /// Pads to capacity with sentinels and sorts ascending.
    fn sort_padded(&mut self) {
        self.entries.resize(self.capacity, Neighbor::SENTINEL);
        bitonic_sort(&mut self.entries, Direction::Ascending).expect("capacity is a power of two");
    }

    fn clear(&mut self) {
        self.entries.clear();
    }
}

/// Merges two ascending runs of the same power-of-two length, returning the
/// smaller half in ascending order.
pub fn merge_topk(topk: &[Neighbor], batch: &[Neighbor]) -> Result<Vec<Neighbor>> {
    if topk.len() != batch.len() {
        return Err(Error::parameter(
            "batch",
            format!(
                "length {} does not match top-k length {}",
                batch.len(),
                topk.len()
            ),
        ));
    }
    if !topk.len().is_power_of_two() {
        return Err(Error::parameter(
            "batch",
            format!("length {} is not a power of two", topk.len()),
        ));
    }
    let mut merged = topk.to_vec();
    merge_lower_half(&mut merged, batch);
    Ok(merged)
}

struct QueryState {
    top: Vec<Neighbor>,
    buffer: CandidateBuffer,
    distances: Vec<f64>,
    kth_history: Option<Vec<f64>>,
}

impl QueryState {
    fn new(k: TopK, batch_size: usize, trace: bool) -> Self {
        QueryState {
            top: vec![Neighbor::SENTINEL; k.get()],
            buffer: CandidateBuffer::new(k),
            distances: Vec::with_capacity(batch_size),
            kth_history: trace.then(Vec::new),
        }
    }

    fn flush(&mut self) {
        self.buffer.sort_padded();
        merge_lower_half(&mut self.top, self.buffer.entries());
        self.buffer.clear();
        if let Some(history) = &mut self.kth_history {
            history.push(self.top[self.top.len() - 1].distance);
        }
    }

    fn search(&mut self, data: &[Point], query: Point, batch_size: usize) -> NeighborList {
        self.top.fill(Neighbor::SENTINEL);
        let last = self.top.len() - 1;
        for (b, batch) in data.chunks(batch_size).enumerate() {
            let base = b * batch_size;
            let mut distances = std::mem::take(&mut self.distances);
            distances.clear();
            distances.extend(batch.iter().map(|&p| p.squared_distance(query)));
            for (offset, &distance) in distances.iter().enumerate() {
                let candidate = Neighbor::new((base + offset) as u32, distance);
                if candidate < self.top[last] && self.buffer.push(candidate) {
                    self.flush();
                }
            }
            self.distances = distances;
        }
        if !self.buffer.is_empty() {
            self.flush();
        }
        NeighborList::new(self.top.clone()).expect("data holds at least k points")
    }
}

fn check_batch(batch_size: usize) -> Result<()> {
    if batch_size == 0 {
        return Err(Error::parameter("batch_size", "must be at least 1"));
    }
    Ok(())
}

pub fn knn_buffered(
    data: &PointCloud,
    queries: &PointCloud,
    k: TopK,
    batch_size: usize,
    workers: Workers,
) -> Result<Vec<NeighborList>> {
    check_inputs(data, k)?;
    check_batch(batch_size)?;
    Ok(map_ranges(queries.len(), workers, |range| {
        let mut state = QueryState::new(k, batch_size, false);
        queries.points()[range]
            .iter()
            .map(|&q| state.search(data.points(), q, batch_size))
            .collect()
    }))
}

/// One instrumented buffered search.
#[derive(Debug, Clone)]
pub struct BufferedTrace {
    pub result: NeighborList,
    /// The k-th distance right after each merge, in merge order.
    pub kth_after_merge: Vec<f64>,
}

pub fn knn_buffered_trace(
    data: &PointCloud,
    query: Point,
    k: TopK,
    batch_size: usize,
) -> Result<BufferedTrace> {
    check_inputs(data, k)?;
    check_batch(batch_size)?;
    let mut state = QueryState::new(k, batch_size, true);
    let result = state.search(data.points(), query, batch_size);
    Ok(BufferedTrace {
        result,
        kth_after_merge: state.kth_history.unwrap_or_default(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(values: &[u32]) -> Vec<Neighbor> {
        values
            .iter()
            .map(|&v| Neighbor::new(v, f64::from(v)))
            .collect()
    }

    #[test]
    fn merge_keeps_topk_when_batch_is_worse() {
        let top = run(&(0..32).collect::<Vec<_>>());
        let batch = run(&(100..132).collect::<Vec<_>>());
        assert_eq!(merge_topk(&top, &batch).unwrap(), top);
    }

    #[test]
    fn merge_with_itself_keeps_lowest_duplicates() {
        let top = run(&(0..64).map(|i| i * 3).collect::<Vec<_>>());
        let expected: Vec<Neighbor> = top[..32].iter().flat_map(|&n| [n, n]).collect();
        assert_eq!(merge_topk(&top, &top).unwrap(), expected);
    }

    #[test]
    fn merge_interleaves() {
        let a = run(&[0, 2, 4, 6]);
        let b = run(&[1, 3, 5, 7]);
        assert_eq!(merge_topk(&a, &b).unwrap(), run(&[0, 1, 2, 3]));
    }

    #[test]
    fn merge_length_mismatch() {
        assert!(merge_topk(&run(&[0, 1]), &run(&[0, 1, 2, 3])).is_err());
        assert!(merge_topk(&run(&[0, 1, 2]), &run(&[0, 1, 2])).is_err());
    }

    #[test]
    fn buffer_reports_full() {
        let mut buf = CandidateBuffer::new(TopK::new(32).unwrap());
        for i in 0..31 {
            assert!(!buf.push(Neighbor::new(i, 0.0)));
        }
        assert!(buf.push(Neighbor::new(31, 0.0)));
        assert_eq!(buf.fill(), buf.capacity());
    }

    #[test]
    fn zero_batch_rejected() {
        let data = PointCloud::new(vec![Point::new(0.0, 0.0); 32]).unwrap();
        let k = TopK::new(32).unwrap();
        assert!(knn_buffered(&data, &data, k, 0, Workers::ONE).is_err());
    }
}
