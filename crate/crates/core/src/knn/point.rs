use std::cmp::Ordering;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    #[inline]
    pub fn squared_distance(self, other: Point) -> f64 {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        dx * dx + dy * dy
    }
}

/// A non-empty set of 2-D points with finite coordinates. A point's index is
/// its position.
#[derive(Debug, Clone, PartialEq)]
pub struct PointCloud {
    points: Vec<Point>,
}

impl PointCloud {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::parameter(
                "points",
                "a point cloud needs at least one point",
            ));
        }
        if points.len() > Neighbor::INVALID_INDEX as usize {
            return Err(Error::parameter(
                "points",
                "too many points for 32-bit indices",
            ));
        }
        if let Some(i) = points
            .iter()
            .position(|p| !p.x.is_finite() || !p.y.is_finite())
        {
            return Err(Error::parameter(
                "points",
                format!("point {i} has a non-finite coordinate"),
            ));
        }
        Ok(PointCloud { points })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// A candidate neighbor: squared Euclidean distance plus data index.
///
/// Ordered by distance, then by index, so every set of candidates has a
/// unique sorted order.
#[derive(Debug, Clone, Copy)]
pub struct Neighbor {
    pub distance: f64,
    pub index: u32,
}

impl Neighbor {
    pub const INVALID_INDEX: u32 = u32::MAX;

    /// Padding entry that sorts after every real candidate.
    pub const SENTINEL: Neighbor = Neighbor {
        distance: f64::INFINITY,
        index: Neighbor::INVALID_INDEX,
    };

    pub fn new(index: u32, distance: f64) -> Self {
        Neighbor { distance, index }
    }

    pub fn is_sentinel(&self) -> bool {
        self.index == Self::INVALID_INDEX
    }
}

impl PartialEq for Neighbor {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Neighbor {}

impl PartialOrd for Neighbor {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Neighbor {
    #[inline]
    fn cmp(&self, other: &Self) -> Ordering {
        self.distance
            .total_cmp(&other.distance)
            .then(self.index.cmp(&other.index))
    }
}

/// Number of neighbors per query: a power of two in `32..=1024`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TopK(usize);

impl TopK {
    pub const MIN: usize = 32;
    pub const MAX: usize = 1024;

    pub fn new(k: usize) -> Result<Self> {
        if !(Self::MIN..=Self::MAX).contains(&k) || !k.is_power_of_two() {
            return Err(Error::parameter(
                "k",
                format!("{k} is not a power of two in {}..={}", Self::MIN, Self::MAX),
            ));
        }
        Ok(TopK(k))
    }

    pub fn get(self) -> usize {
        self.0
    }
}

/// The sorted k nearest neighbors of one query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborList {
    entries: Vec<Neighbor>,
}

impl NeighborList {
    /// Checks the list invariants: valid k, ascending order, no sentinels,
    /// distinct indices.
    pub fn new(entries: Vec<Neighbor>) -> Result<Self> {
        TopK::new(entries.len())?;
        if let Some(i) = entries.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::parameter(
                "entries",
                format!("entries {i} and {} are out of order or duplicated", i + 1),
            ));
        }
        if entries.iter().any(Neighbor::is_sentinel) {
            return Err(Error::parameter(
                "entries",
                "sentinel entry in a neighbor list",
            ));
        }
        let mut indices: Vec<u32> = entries.iter().map(|n| n.index).collect();
        indices.sort_unstable();
        if indices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::parameter("entries", "duplicate data index"));
        }
        Ok(NeighborList { entries })
    }

    pub fn k(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Neighbor] {
        &self.entries
    }

    /// Distance of the farthest kept neighbor.
    pub fn kth_distance(&self) -> f64 {
        self.entries[self.entries.len() - 1].distance
    }

    pub fn into_entries(self) -> Vec<Neighbor> {
        self.entries
    }
}
