use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gol::GolVariant;
use crate::histogram::{HistogramVariant, IterationPattern};
use crate::knn::KnnVariant;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Task {
    Histogram,
    Gol,
    Knn,
}

impl Task {
    pub const ALL: [Task; 3] = [Task::Histogram, Task::Gol, Task::Knn];

    pub fn name(self) -> &'static str {
        match self {
            Task::Histogram => "histogram",
            Task::Gol => "gol",
            Task::Knn => "knn",
        }
    }
}

impl fmt::Display for Task {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Task {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Task::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| Error::UnknownTask(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VariantKind {
    Histogram(HistogramVariant),
    Gol(GolVariant),
    Knn(KnnVariant),
    /// Game of Life step with a deliberate neighbor bug, used to check that
    /// verification catches faults. Never listed.
    GolFaultFixture,
}

/// A registered kernel variant and the ladder stage it corresponds to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VariantDescriptor {
    pub task: Task,
    pub name: &'static str,
    /// `His1`..`His7`, `GoL1`..`GoL6`, `GoL2-tiled`, `kNN1`..`kNN8`, or
    /// `oracle`.
    pub stage: &'static str,
    /// Flags the variant reads, beyond the task's workload flags.
    pub params: &'static [&'static str],
    pub kind: VariantKind,
    pub summary: &'static str,
    pub hidden: bool,
}

const HIST_BASE: &[&str] = &["--workers"];
const HIST_ITEMS: &[&str] = &["--workers", "--items-per-worker"];
const GOL_SEQ: &[&str] = &[];
const GOL_PAR: &[&str] = &["--workers"];
const KNN_PAR: &[&str] = &["--workers"];
const KNN_BUFFERED: &[&str] = &["--workers", "--batch-size"];

macro_rules! variant {
    ($task:ident, $kind:expr, $stage:literal, $params:expr, $summary:literal) => {
        VariantDescriptor {
            task: Task::$task,
            name: $kind.name(),
            stage: $stage,
            params: $params,
            kind: variant!(@kind $task, $kind),
            summary: $summary,
            hidden: false,
        }
    };
    (@kind Histogram, $kind:expr) => { VariantKind::Histogram($kind) };
    (@kind Gol, $kind:expr) => { VariantKind::Gol($kind) };
    (@kind Knn, $kind:expr) => { VariantKind::Knn($kind) };
}

static REGISTRY: [VariantDescriptor; 18] = [
    variant!(
        Histogram,
        HistogramVariant::Reference,
        "oracle",
        &[],
        "sequential count"
    ),
    variant!(
        Histogram,
        HistogramVariant::SharedAtomic,
        "His1",
        HIST_BASE,
        "atomic increment on one shared bin array"
    ),
    variant!(
        Histogram,
        HistogramVariant::PrivatizedFullMerge,
        "His2",
        HIST_BASE,
        "private bins per worker, every bin merged"
    ),
    variant!(
        Histogram,
        HistogramVariant::Privatized,
        "His3",
        HIST_BASE,
        "private bins per worker, zero bins skipped at merge"
    ),
    variant!(
        Histogram,
        HistogramVariant::MultiItemBlock,
        "His4",
        HIST_ITEMS,
        "private bins, chunks owned as one contiguous block"
    ),
    variant!(
        Histogram,
        HistogramVariant::MultiItemStride,
        "His5",
        HIST_ITEMS,
        "private bins, chunks taken at worker stride"
    ),
    variant!(
        Histogram,
        HistogramVariant::MultiCopyBlock,
        "His6",
        HIST_ITEMS,
        "32 interleaved copies (i*32+c), contiguous blocks"
    ),
    variant!(
        Histogram,
        HistogramVariant::MultiCopyStride,
        "His7",
        HIST_ITEMS,
        "32 interleaved copies (i*32+c), worker stride"
    ),
    variant!(
        Gol,
        GolVariant::Reference,
        "oracle",
        GOL_SEQ,
        "sequential rule evaluation"
    ),
    variant!(
        Gol,
        GolVariant::Bytes,
        "GoL1",
        GOL_PAR,
        "one byte per cell, eight neighbor reads"
    ),
    variant!(
        Gol,
        GolVariant::RowNaive,
        "GoL2",
        GOL_PAR,
        "row encoding, one bit test per neighbor"
    ),
    variant!(
        Gol,
        GolVariant::TilePopc,
        "GoL2-tiled",
        GOL_PAR,
        "8x8 tile encoding, 3x3 tile gather, popcount"
    ),
    variant!(
        Gol,
        GolVariant::RowPopc,
        "GoL4",
        GOL_PAR,
        "row encoding, 9-bit neighborhood popcount"
    ),
    variant!(
        Gol,
        GolVariant::RowFullAdder,
        "GoL6",
        GOL_PAR,
        "row encoding, bit-sliced full-adder count"
    ),
    variant!(
        Knn,
        KnnVariant::Reference,
        "oracle",
        KNN_PAR,
        "all distances, select and sort k smallest"
    ),
    variant!(
        Knn,
        KnnVariant::Heap,
        "kNN1",
        KNN_PAR,
        "per-query binary max-heap"
    ),
    variant!(
        Knn,
        KnnVariant::Buffered,
        "kNN7",
        KNN_BUFFERED,
        "sorted top-k, candidate buffer, bitonic sort and merge"
    ),
    VariantDescriptor {
        task: Task::Gol,
        name: "fault-fixture",
        stage: "fixture",
        params: GOL_SEQ,
        kind: VariantKind::GolFaultFixture,
        summary: "reads the east neighbor one column too far",
        hidden: true,
    },
];

/// Every listed variant in stable order, optionally for one task.
pub fn variants(task: Option<Task>) -> Vec<&'static VariantDescriptor> {
    REGISTRY
        .iter()
        .filter(|d| !d.hidden && task.is_none_or(|t| d.task == t))
        .collect()
}

/// Looks a variant up by name, including hidden fixtures.
pub fn find(task: Task, name: &str) -> Result<&'static VariantDescriptor> {
    REGISTRY
        .iter()
        .find(|d| d.task == task && d.name == name)
        .ok_or_else(|| Error::UnknownVariant {
            task: task.name(),
            variant: name.to_string(),
            valid: variants(Some(task))
                .iter()
                .map(|d| d.name)
                .collect::<Vec<_>>()
                .join(", "),
        })
}

/// Resolves `multiitem`/`multicopy` plus a pattern to the matching
/// histogram variant; other names pass through.
pub fn resolve(
    task: Task,
    name: &str,
    pattern: Option<IterationPattern>,
) -> Result<&'static VariantDescriptor> {
    let suffix = |p: IterationPattern| match p {
        IterationPattern::ContiguousBlock => "block",
        IterationPattern::WorkerStride => "stride",
    };
    match (task, name) {
        (Task::Histogram, "multiitem" | "multicopy") => {
            let pattern = pattern.unwrap_or(IterationPattern::ContiguousBlock);
            find(task, &format!("{name}-{}", suffix(pattern)))
        }
        _ => find(task, name),
    }
}

pub fn oracle(task: Task) -> &'static VariantDescriptor {
    variants(Some(task))
        .into_iter()
        .find(|d| d.stage == "oracle")
        .expect("every task has an oracle")
}

/// The variant speedups are measured against.
pub fn baseline(task: Task) -> &'static VariantDescriptor {
    let name = match task {
        Task::Histogram => "shared-atomic",
        Task::Gol => "bytes",
        Task::Knn => "heap",
    };
    find(task, name).expect("baseline is registered")
}

/// The ladder stages of a task, oracle excluded, in stage order.
pub fn ladder(task: Task) -> Vec<&'static VariantDescriptor> {
    let mut v: Vec<_> = variants(Some(task))
        .into_iter()
        .filter(|d| d.stage != "oracle")
        .collect();
    v.sort_by_key(|d| stage_rank(d.stage));
    v
}

/// Sort key for stage labels: `oracle` first, then by stage number, with a
/// `-tiled` suffix right after its base stage. Unknown labels sort last.
pub fn stage_rank(stage: &str) -> (u32, u32) {
    if stage == "oracle" {
        return (0, 0);
    }
    let digits = stage.trim_start_matches(|c: char| c.is_ascii_alphabetic());
    let (number, suffix) = match digits.find(|c: char| !c.is_ascii_digit()) {
        Some(i) => (&digits[..i], 1),
        None => (digits, 0),
    };
    match number.parse::<u32>() {
        Ok(n) => (n, suffix),
        Err(_) => (u32::MAX, 0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn histogram_ladder_spans_his1_to_his7() {
        let stages: Vec<_> = ladder(Task::Histogram).iter().map(|d| d.stage).collect();
        assert_eq!(
            stages,
            ["His1", "His2", "His3", "His4", "His5", "His6", "His7"]
        );
    }

    #[test]
    fn gol_listing() {
        let names: Vec<_> = variants(Some(Task::Gol)).iter().map(|d| d.name).collect();
        for expected in [
            "bytes",
            "row-naive",
            "row-popc",
            "row-fulladder",
            "tile-popc",
        ] {
            assert!(names.contains(&expected));
        }
        assert!(!names.contains(&"fault-fixture"));
        assert!(find(Task::Gol, "fault-fixture").is_ok());
    }

    #[test]
    fn unknown_task_lists_valid() {
        let err = "foo".parse::<Task>().unwrap_err().to_string();
        assert!(err.contains("histogram") && err.contains("gol") && err.contains("knn"));
    }

    #[test]
    fn stage_order() {
        let mut labels = ["GoL6", "GoL2-tiled", "oracle", "GoL10", "GoL2", "GoL1"];
        labels.sort_by_key(|s| stage_rank(s));
        assert_eq!(
            labels,
            ["oracle", "GoL1", "GoL2", "GoL2-tiled", "GoL6", "GoL10"]
        );
    }

    #[test]
    fn pattern_resolution() {
        let d = resolve(
            Task::Histogram,
            "multicopy",
            Some(IterationPattern::WorkerStride),
        )
        .unwrap();
        assert_eq!(d.stage, "His7");
        assert_eq!(
            resolve(Task::Histogram, "multiitem", None).unwrap().stage,
            "His4"
        );
    }

    #[test]
    fn every_task_has_oracle_and_baseline() {
        for t in Task::ALL {
            assert_eq!(oracle(t).stage, "oracle");
            assert_ne!(baseline(t).stage, "oracle");
        }
    }
}
