use std::fmt;

use serde::{Deserialize, Serialize};

use super::registry::{VariantDescriptor, VariantKind};
use crate::error::{Error, Result};
use crate::gol::{next_state, ByteGrid, Grid};
use crate::histogram::Histogram;
use crate::knn::{
    knn_buffered, knn_heap, knn_reference, KnnVariant, NeighborList, PointCloud, TopK,
};
use crate::parallel::Workers;
use crate::workload::Workload;

/// Tunables a variant may read. Unused fields are ignored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VariantParams {
    pub workers: Workers,
    pub items_per_worker: usize,
    /// Defaults to k when absent.
    pub batch_size: Option<usize>,
}

impl Default for VariantParams {
    fn default() -> Self {
        VariantParams {
            workers: Workers::ONE,
            items_per_worker: 16,
            batch_size: None,
        }
    }
}

/// Result of running a variant on a workload.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Output {
    Histogram(Histogram),
    /// Any encoding; compared cell by cell.
    Grid(Grid),
    Neighbors(Vec<NeighborList>),
}

/// Where two outputs first disagree.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Divergence {
    Shape {
        expected: String,
        actual: String,
    },
    Cell {
        row: usize,
        col: usize,
        expected: u8,
        actual: u8,
    },
    Bin {
        byte: u8,
        expected: u64,
        actual: u64,
    },
    Neighbor {
        query: usize,
        rank: usize,
        expected_index: u32,
        expected_distance: f64,
        actual_index: u32,
        actual_distance: f64,
    },
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Divergence::Shape { expected, actual } => write!(f, "shape mismatch: expected {expected}, got {actual}"),
            Divergence::Cell { row, col, expected, actual } => {
                write!(f, "first mismatching cell (row {row}, col {col}): expected {expected}, got {actual}")
            }
            Divergence::Bin { byte, expected, actual } => {
                write!(f, "first mismatching bin (byte {byte}): expected {expected}, got {actual}")
            }
            Divergence::Neighbor {
                query,
                rank,
                expected_index,
                expected_distance,
                actual_index,
                actual_distance,
            } => write!(
                f,
                "first mismatching neighbor (query {query}, rank {rank}): expected {expected_index}@{expected_distance}, got {actual_index}@{actual_distance}"
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "status")]
pub enum Verdict {
    Pass,
    Fail { divergence: Divergence },
    Skipped,
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail { .. } => "fail",
            Verdict::Skipped => "skipped",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Fail { divergence } => write!(f, "fail: {divergence}"),
            other => f.write_str(other.label()),
        }
    }
}

/// Exact comparison of two outputs.
pub fn compare(expected: &Output, actual: &Output) -> Verdict {
    let divergence = match (expected, actual) {
        (Output::Grid(e), Output::Grid(a)) => {
            let (e, a) = (e.to_bytes(), a.to_bytes());
            if (e.width(), e.height()) != (a.width(), a.height()) {
                Some(Divergence::Shape {
                    expected: format!("{}x{}", e.width(), e.height()),
                    actual: format!("{}x{}", a.width(), a.height()),
                })
            } else {
                e.first_difference(&a).map(|(row, col)| Divergence::Cell {
                    row,
                    col,
                    expected: u8::from(e.get(row, col)),
                    actual: u8::from(a.get(row, col)),
                })
            }
        }
        (Output::Histogram(e), Output::Histogram(a)) => {
            if e.range() != a.range() {
                Some(Divergence::Shape {
                    expected: format!("{:?}", e.range()),
                    actual: format!("{:?}", a.range()),
                })
            } else {
                e.first_difference(a).map(|byte| Divergence::Bin {
                    byte,
                    expected: e.count(byte),
                    actual: a.count(byte),
                })
            }
        }
        (Output::Neighbors(e), Output::Neighbors(a)) => first_neighbor_difference(e, a),
        (e, a) => Some(Divergence::Shape {
            expected: kind_name(e).into(),
            actual: kind_name(a).into(),
        }),
    };
    match divergence {
        None => Verdict::Pass,
        Some(divergence) => Verdict::Fail { divergence },
    }
}

fn kind_name(o: &Output) -> &'static str {
    match o {
        Output::Histogram(_) => "histogram",
        Output::Grid(_) => "grid",
        Output::Neighbors(_) => "neighbor lists",
    }
}

fn first_neighbor_difference(
    expected: &[NeighborList],
    actual: &[NeighborList],
) -> Option<Divergence> {
    if expected.len() != actual.len() {
        return Some(Divergence::Shape {
            expected: format!("{} queries", expected.len()),
            actual: format!("{} queries", actual.len()),
        });
    }
    for (query, (e, a)) in expected.iter().zip(actual).enumerate() {
        if e.k() != a.k() {
            return Some(Divergence::Shape {
                expected: format!("k={}", e.k()),
                actual: format!("k={}", a.k()),
            });
        }
        for (rank, (x, y)) in e.entries().iter().zip(a.entries()).enumerate() {
            // Bitwise distance equality: both sides compute the same expression.
            if x.index != y.index || x.distance.to_bits() != y.distance.to_bits() {
                return Some(Divergence::Neighbor {
                    query,
                    rank,
                    expected_index: x.index,
                    expected_distance: x.distance,
                    actual_index: y.index,
                    actual_distance: y.distance,
                });
            }
        }
    }
    None
}

/// A workload with any per-variant re-encoding already done, so that timed
/// runs only cover the computation.
pub enum Prepared<'a> {
    Text {
        text: &'a [u8],
        range: crate::histogram::CharRange,
    },
    Grid {
        grid: Grid,
        iterations: usize,
    },
    Points {
        data: &'a PointCloud,
        queries: &'a PointCloud,
        k: TopK,
    },
}

fn mismatch(desc: &VariantDescriptor) -> Error {
    Error::parameter(
        "task",
        format!("variant {} does not accept this workload", desc.name),
    )
}

pub fn prepare<'a>(desc: &VariantDescriptor, workload: &'a Workload) -> Result<Prepared<'a>> {
    Ok(match (desc.kind, workload) {
        (VariantKind::Histogram(_), Workload::Text { text, range }) => Prepared::Text {
            text,
            range: *range,
        },
        (VariantKind::Gol(v), Workload::Grid { grid, iterations }) => Prepared::Grid {
            grid: Grid::Bytes(grid.clone()).into_encoding(v.encoding())?,
            iterations: *iterations,
        },
        (VariantKind::GolFaultFixture, Workload::Grid { grid, iterations }) => Prepared::Grid {
            grid: Grid::Bytes(grid.clone()),
            iterations: *iterations,
        },
        (VariantKind::Knn(_), Workload::Points { data, queries, k }) => Prepared::Points {
            data,
            queries,
            k: *k,
        },
        _ => return Err(mismatch(desc)),
    })
}

/// Runs the variant on prepared input. This is the timed region.
pub fn execute(
    desc: &VariantDescriptor,
    input: &Prepared<'_>,
    params: &VariantParams,
) -> Result<Output> {
    let workers = params.workers;
    match (desc.kind, input) {
        (VariantKind::Histogram(v), Prepared::Text { text, range }) => Ok(Output::Histogram(
            v.run(text, *range, workers, params.items_per_worker)?,
        )),
        (VariantKind::Gol(v), Prepared::Grid { grid, iterations }) => {
            if *iterations == 0 {
                return Ok(Output::Grid(grid.clone()));
            }
            let mut current = v.step(grid, workers)?;
            for _ in 1..*iterations {
                current = v.step(&current, workers)?;
            }
            Ok(Output::Grid(current))
        }
        (VariantKind::GolFaultFixture, Prepared::Grid { grid, iterations }) => {
            let mut current = grid.to_bytes();
            for _ in 0..*iterations {
                current = step_off_by_one(&current);
            }
            Ok(Output::Grid(Grid::Bytes(current)))
        }
        (VariantKind::Knn(v), Prepared::Points { data, queries, k }) => {
            Ok(Output::Neighbors(match v {
                KnnVariant::Reference => knn_reference(data, queries, *k, workers)?,
                KnnVariant::Heap => knn_heap(data, queries, *k, workers)?,
                KnnVariant::Buffered => knn_buffered(
                    data,
                    queries,
                    *k,
                    params.batch_size.unwrap_or(k.get()),
                    workers,
                )?,
            }))
        }
        _ => Err(mismatch(desc)),
    }
}

/// The oracle output for a workload.
pub fn oracle_output(workload: &Workload) -> Result<Output> {
    Ok(match workload {
        Workload::Text { text, range } => {
            Output::Histogram(crate::histogram::histogram_reference(text, *range))
        }
        Workload::Grid { grid, iterations } => {
            let mut current = grid.clone();
            for _ in 0..*iterations {
                current = crate::gol::step_reference(&current);
            }
            Output::Grid(Grid::Bytes(current))
        }
        Workload::Points { data, queries, k } => {
            Output::Neighbors(knn_reference(data, queries, *k, Workers::ONE)?)
        }
    })
}

/// Runs `desc` and the oracle on `workload` and compares them exactly.
pub fn verify(
    desc: &VariantDescriptor,
    workload: &Workload,
    params: &VariantParams,
) -> Result<Verdict> {
    let prepared = prepare(desc, workload)?;
    let actual = execute(desc, &prepared, params)?;
    let expected = oracle_output(workload)?;
    Ok(compare(&expected, &actual))
}

/// Fault fixture: the east neighbor is read from column `x + 2`.
fn step_off_by_one(g: &ByteGrid) -> ByteGrid {
    let (w, h) = (g.width() as i64, g.height() as i64);
    let alive = |y: i64, x: i64| {
        (0..h).contains(&y) && (0..w).contains(&x) && g.get(y as usize, x as usize)
    };
    let mut next = g.clone();
    for y in 0..h {
        for x in 0..w {
            let count = [
                (-1, -1),
                (-1, 0),
                (-1, 1),
                (0, -1),
                (0, 2),
                (1, -1),
                (1, 0),
                (1, 1),
            ]
            .iter()
            .filter(|(dy, dx)| alive(y + dy, x + dx))
            .count() as u32;
            next.set(y as usize, x as usize, next_state(alive(y, x), count));
        }
    }
    next
}
