use std::collections::BTreeMap;
use std::hint::black_box;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use super::registry::{baseline, Task, VariantDescriptor, VariantKind};
use super::verify::{
    compare, execute, oracle_output, prepare, Output, Prepared, VariantParams, Verdict,
};
use crate::error::{Error, Result};
use crate::parallel::Workers;
use crate::workload::{Workload, WorkloadSpec};

pub const SCHEMA_VERSION: u32 = 1;

/// Stated in every report.
pub const TIMING_SCOPE: &str =
    "wall time of the computation on memory-resident inputs; excludes input generation, re-encoding and verification";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub repeat: usize,
    pub warmup: usize,
    pub skip_verify: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            repeat: 10,
            warmup: 3,
            skip_verify: false,
        }
    }
}

/// Parameter values swept for every variant that reads them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sweep {
    pub workers: Vec<Workers>,
    pub items_per_worker: Vec<usize>,
    pub batch_size: Vec<Option<usize>>,
}

impl Default for Sweep {
    fn default() -> Self {
        Sweep {
            workers: vec![Workers::ONE],
            items_per_worker: vec![VariantParams::default().items_per_worker],
            batch_size: vec![None],
        }
    }
}

impl Sweep {
    /// Every parameter combination `desc` reads, in sweep order.
    pub fn params_for(&self, desc: &VariantDescriptor) -> Vec<VariantParams> {
        let reads = |flag: &str| desc.params.contains(&flag);
        let workers = if reads("--workers") {
            self.workers.clone()
        } else {
            vec![Workers::ONE]
        };
        let items = if reads("--items-per-worker") {
            self.items_per_worker.clone()
        } else {
            vec![VariantParams::default().items_per_worker]
        };
        let batches = if reads("--batch-size") {
            self.batch_size.clone()
        } else {
            vec![None]
        };
        let mut out = Vec::new();
        for &w in &workers {
            for &i in &items {
                for &b in &batches {
                    out.push(VariantParams {
                        workers: w,
                        items_per_worker: i,
                        batch_size: b,
                    });
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MachineDescriptor {
    pub os: String,
    pub arch: String,
    pub logical_cpus: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cpu_model: Option<String>,
}

impl MachineDescriptor {
    pub fn current() -> Self {
        let cpu_model = std::fs::read_to_string("/proc/cpuinfo")
            .ok()
            .and_then(|info| {
                info.lines()
                    .find(|l| l.starts_with("model name"))
                    .and_then(|l| l.split_once(':'))
                    .map(|(_, v)| v.trim().to_string())
            });
        MachineDescriptor {
            os: std::env::consts::OS.to_string(),
            arch: std::env::consts::ARCH.to_string(),
            logical_cpus: Workers::available().get(),
            cpu_model,
        }
    }
}

impl std::fmt::Display for MachineDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{} {} cpus", self.os, self.arch, self.logical_cpus)?;
        if let Some(model) = &self.cpu_model {
            write!(f, " ({model})")?;
        }
        Ok(())
    }
}

/// One timed variant/parameter combination.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BenchRecord {
    pub machine: MachineDescriptor,
    pub task: Task,
    pub variant: String,
    pub stage: String,
    pub workload: WorkloadSpec,
    pub parameters: BTreeMap<String, String>,
    pub repetitions: usize,
    pub warmups: usize,
    pub times_ns: Vec<u64>,
    pub median_ns: f64,
    /// Median time per unit of work: per byte, per cell per iteration, or
    /// per point-query pair.
    pub normalized_ns: f64,
    pub throughput: f64,
    pub throughput_unit: String,
    pub baseline: String,
    pub speedup: f64,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BenchReport {
    pub schema: u32,
    pub timing_scope: String,
    pub records: Vec<BenchRecord>,
}

impl BenchReport {
    pub fn new(records: Vec<BenchRecord>) -> Self {
        BenchReport {
            schema: SCHEMA_VERSION,
            timing_scope: TIMING_SCOPE.to_string(),
            records,
        }
    }
}

/// True median: middle value, or the mean of the two middle values.
pub fn median(times: &[u64]) -> f64 {
    assert!(!times.is_empty(), "median of no samples");
    let mut sorted = times.to_vec();
    sorted.sort_unstable();
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid] as f64
    } else {
        (sorted[mid - 1] as f64 + sorted[mid] as f64) / 2.0
    }
}

/// Runs `warmup` untimed then `repeat` timed executions.
pub fn time_variant(
    desc: &VariantDescriptor,
    input: &Prepared<'_>,
    params: &VariantParams,
    config: &RunConfig,
) -> Result<Vec<u64>> {
    if config.repeat == 0 {
        return Err(Error::parameter("repeat", "must be at least 1"));
    }
    for _ in 0..config.warmup {
        black_box(execute(desc, input, params)?);
    }
    let mut times = Vec::with_capacity(config.repeat);
    for _ in 0..config.repeat {
        let start = Instant::now();
        let out = execute(desc, input, params)?;
        let elapsed = start.elapsed();
        black_box(out);
        times.push(elapsed.as_nanos() as u64);
    }
    Ok(times)
}

/// Units of work in one execution, and their name.
fn work_units(workload: &Workload) -> (f64, &'static str) {
    match workload {
        Workload::Text { text, .. } => (text.len() as f64, "bytes/s"),
        Workload::Grid { grid, iterations } => (
            (grid.width() * grid.height()) as f64 * (*iterations).max(1) as f64,
            "cell-updates/s",
        ),
        Workload::Points { data, queries, .. } => {
            ((data.len() * queries.len()) as f64, "point-query pairs/s")
        }
    }
}

/// The parameters `desc` reads, as report key/value pairs.
pub fn describe(desc: &VariantDescriptor, params: &VariantParams) -> BTreeMap<String, String> {
    let mut map = BTreeMap::new();
    if desc.params.contains(&"--workers") {
        map.insert("workers".into(), params.workers.get().to_string());
    }
    if desc.params.contains(&"--items-per-worker") {
        map.insert(
            "items_per_worker".into(),
            params.items_per_worker.to_string(),
        );
    }
    if let VariantKind::Histogram(v) = desc.kind {
        if let Some(p) = v.pattern() {
            map.insert("pattern".into(), p.name().into());
        }
    }
    if desc.params.contains(&"--batch-size") {
        let batch = params
            .batch_size
            .map_or_else(|| "k".to_string(), |b| b.to_string());
        map.insert("batch_size".into(), batch);
    }
    map
}

/// Verifies and times every variant/parameter combination on the workload
/// generated from `spec`. A failed verification aborts the run.
pub fn run(
    spec: &WorkloadSpec,
    series: &[&VariantDescriptor],
    sweep: &Sweep,
    config: &RunConfig,
) -> Result<BenchReport> {
    let workload = spec.generate()?;
    let task: Task = spec.task_name().parse()?;
    if let Some(d) = series.iter().find(|d| d.task != task) {
        return Err(Error::parameter(
            "variant",
            format!("{} is a {} variant, workload is {task}", d.name, d.task),
        ));
    }
    let expected: Option<Output> = if config.skip_verify {
        None
    } else {
        Some(oracle_output(&workload)?)
    };
    let machine = MachineDescriptor::current();
    let (units, unit_name) = work_units(&workload);
    let base = baseline(task);

    // Baseline medians keyed by worker count.
    let mut baseline_medians: BTreeMap<usize, f64> = BTreeMap::new();
    let baseline_median = |medians: &mut BTreeMap<usize, f64>, workers: Workers| -> Result<f64> {
        if let Some(&m) = medians.get(&workers.get()) {
            return Ok(m);
        }
        let params = VariantParams {
            workers,
            ..VariantParams::default()
        };
        let prepared = prepare(base, &workload)?;
        let m = median(&time_variant(base, &prepared, &params, config)?);
        medians.insert(workers.get(), m);
        Ok(m)
    };

    let mut records = Vec::new();
    for desc in series {
        let prepared = prepare(desc, &workload)?;
        for params in sweep.params_for(desc) {
            let verdict = match &expected {
                None => Verdict::Skipped,
                Some(expected) => {
                    let verdict = compare(expected, &execute(desc, &prepared, &params)?);
                    if let Verdict::Fail { divergence } = &verdict {
                        return Err(Error::Verification {
                            variant: format!("{}/{} ({})", task, desc.name, desc.stage),
                            detail: divergence.to_string(),
                        });
                    }
                    verdict
                }
            };
            let times = time_variant(desc, &prepared, &params, config)?;
            let med = median(&times);
            // The baseline's own rows are their own reference.
            let base_med = if desc.name == base.name {
                baseline_medians.entry(params.workers.get()).or_insert(med);
                med
            } else {
                baseline_median(&mut baseline_medians, params.workers)?
            };
            records.push(BenchRecord {
                machine: machine.clone(),
                task,
                variant: desc.name.to_string(),
                stage: desc.stage.to_string(),
                workload: spec.clone(),
                parameters: describe(desc, &params),
                repetitions: config.repeat,
                warmups: config.warmup,
                times_ns: times,
                median_ns: med,
                normalized_ns: med / units,
                throughput: units / (med.max(1.0) * 1e-9),
                throughput_unit: unit_name.to_string(),
                baseline: base.name.to_string(),
                speedup: base_med / med.max(1.0),
                verdict,
            });
        }
    }
    Ok(BenchReport::new(records))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn median_odd_and_even() {
        assert_eq!(median(&[5]), 5.0);
        assert_eq!(median(&[3, 1, 2]), 2.0);
        assert_eq!(median(&[4, 1, 3, 2]), 2.5);
    }
}
