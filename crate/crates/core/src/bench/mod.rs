//! Variant registry, verification gate, timing loop and reports.

mod registry;
mod report;
mod run;
mod verify;

pub use registry::{
    baseline, find, ladder, oracle, resolve, stage_rank, variants, Task, VariantDescriptor,
    VariantKind,
};
pub use report::{load_report, merge_reports, render, ReportFormat};
pub use run::{
    describe, median, run, time_variant, BenchRecord, BenchReport, MachineDescriptor, RunConfig,
    Sweep, SCHEMA_VERSION, TIMING_SCOPE,
};
pub use verify::{
    compare, execute, oracle_output, prepare, verify, Divergence, Output, Prepared, VariantParams,
    Verdict,
};
