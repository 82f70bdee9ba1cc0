use std::collections::BinaryHeap;

use super::check_inputs;
use super::point::{Neighbor, NeighborList, PointCloud, TopK};
use crate::error::Result;
use crate::parallel::{map_ranges, Workers};

/// Top-k set kept as a max-heap of at most k candidates; the root is the
/// current k-th nearest.
#[derive(Debug, Clone)]
pub struct HeapTopK {
    k: usize,
    heap: BinaryHeap<Neighbor>,
}

impl HeapTopK {
    pub fn new(k: TopK) -> Self {
        HeapTopK {
            k: k.get(),
            heap: BinaryHeap::with_capacity(k.get()),
        }
    }

    /// Offers a candidate. Returns false if it was rejected by the
    /// comparison against the current root.
    #[inline]
    pub fn offer(&mut self, candidate: Neighbor) -> bool {
        if self.heap.len() < self.k {
            self.heap.push(candidate);
            return true;
        }
        let mut root = self.heap.peek_mut().expect("heap is full");
        if candidate < *root {
            *root = candidate;
            true
        } else {
            false
        }
    }

    pub fn into_sorted(self) -> Vec<Neighbor> {
        self.heap.into_sorted_vec()
    }
}

pub fn knn_heap(
    data: &PointCloud,
    queries: &PointCloud,
    k: TopK,
    workers: Workers,
) -> Result<Vec<NeighborList>> {
    check_inputs(data, k)?;
    Ok(map_ranges(queries.len(), workers, |range| {
        queries.points()[range]
            .iter()
            .map(|&q| {
                let mut top = HeapTopK::new(k);
                for (i, &p) in data.points().iter().enumerate() {
                    top.offer(Neighbor::new(i as u32, p.squared_distance(q)));
                }
                NeighborList::new(top.into_sorted()).expect("heap holds k distinct candidates")
            })
            .collect()
    }))
}
