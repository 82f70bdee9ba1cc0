use super::check_inputs;
use super::point::{Neighbor, NeighborList, Point, PointCloud, TopK};
use crate::error::Result;
use crate::parallel::{map_ranges, Workers};

/// Brute force: every distance is computed, the k smallest `(distance,
/// index)` pairs are selected and sorted.
pub fn knn_reference(
    data: &PointCloud,
    queries: &PointCloud,
    k: TopK,
    workers: Workers,
) -> Result<Vec<NeighborList>> {
    check_inputs(data, k)?;
    let k = k.get();
    Ok(map_ranges(queries.len(), workers, |range| {
        let mut scratch = Vec::with_capacity(data.len());
        queries.points()[range]
            .iter()
            .map(|&q| nearest(data.points(), q, k, &mut scratch))
            .collect()
    }))
}

fn nearest(data: &[Point], query: Point, k: usize, scratch: &mut Vec<Neighbor>) -> NeighborList {
    scratch.clear();
    scratch.extend(
        data.iter()
            .enumerate()
            .map(|(i, &p)| Neighbor::new(i as u32, p.squared_distance(query))),
    );
    if k < scratch.len() {
        scratch.select_nth_unstable(k - 1);
    }
    let mut best = scratch[..k].to_vec();
    best.sort_unstable();
    NeighborList::new(best).expect("k smallest distinct candidates form a valid list")
}
