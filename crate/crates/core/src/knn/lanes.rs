use super::point::{Neighbor, NeighborList};

pub const LANES: usize = 32;

/// A sorted top-k list split into 32 runs of `k / 32` consecutive entries,
/// run `t` covering positions `t * k / 32 .. (t + 1) * k / 32`.
#[derive(Debug, Clone, Copy)]
pub struct LanePartitionView<'a> {
    list: &'a NeighborList,
    run_len: usize,
}

impl<'a> LanePartitionView<'a> {
    pub fn run_len(&self) -> usize {
        self.run_len
    }

    pub fn run(&self, lane: usize) -> &'a [Neighbor] {
        let entries = self.list.entries();
        &entries[lane * self.run_len..(lane + 1) * self.run_len]
    }

    pub fn runs(&self) -> impl Iterator<Item = &'a [Neighbor]> + '_ {
        (0..LANES).map(|lane| self.run(lane))
    }

    pub fn concat(&self) -> Vec<Neighbor> {
        self.runs().flatten().copied().collect()
    }
}

/// Builds the lane view. A valid list has k a power of two of at least 32,
/// so the split is always exact.
pub fn validate_lane_partition(list: &NeighborList) -> LanePartitionView<'_> {
    let k = list.k();
    assert_eq!(
        k % LANES,
        0,
        "neighbor list length {k} is not a multiple of {LANES}"
    );
    let view = LanePartitionView {
        list,
        run_len: k / LANES,
    };
    debug_assert!(view.concat() == list.entries());
    view
}

#[cfg(test)]
mod tests {
    use super::*;

    fn list(k: u32) -> NeighborList {
        NeighborList::new(
            (0..k)
                .map(|i| Neighbor::new(i, f64::from(i) * 0.5))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn k32_gives_single_entry_runs() {
        let l = list(32);
        let view = validate_lane_partition(&l);
        assert_eq!(view.run_len(), 1);
        assert_eq!(view.runs().count(), 32);
        assert_eq!(view.run(5)[0].index, 5);
    }

    #[test]
    fn k1024_gives_32_entry_runs() {
        let l = list(1024);
        let view = validate_lane_partition(&l);
        assert_eq!(view.run_len(), 32);
        assert_eq!(view.run(31)[0].index, 992);
        assert_eq!(view.concat(), l.entries());
    }
}
