use std::fmt::Write as _;
use std::str::FromStr;

use super::registry::stage_rank;
use super::run::{BenchRecord, BenchReport, SCHEMA_VERSION};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Table,
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "table" => Ok(ReportFormat::Table),
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(Error::parameter(
                "format",
                format!("`{other}` is not one of table, csv, json"),
            )),
        }
    }
}

/// Parses a JSON report, reporting the field path of any schema violation.
pub fn load_report(json: &str) -> Result<BenchReport> {
    let de = &mut serde_json::Deserializer::from_str(json);
    let report: BenchReport = serde_path_to_error::deserialize(de).map_err(|e| Error::Schema {
        path: e.path().to_string(),
        message: e.inner().to_string(),
    })?;
    if report.schema != SCHEMA_VERSION {
        return Err(Error::Schema {
            path: "schema".into(),
            message: format!(
                "unsupported schema version {}, expected {SCHEMA_VERSION}",
                report.schema
            ),
        });
    }
    Ok(report)
}

/// Concatenates reports and orders records by task, then stage. Records of
/// the same stage keep their input order.
pub fn merge_reports(reports: Vec<BenchReport>, allow_mixed: bool) -> Result<BenchReport> {
    let mut records: Vec<BenchRecord> = reports.into_iter().flat_map(|r| r.records).collect();
    if !allow_mixed {
        if let Some(first) = records.first() {
            if let Some(other) = records.iter().find(|r| r.task != first.task) {
                return Err(Error::parameter(
                    "inputs",
                    format!(
                        "reports mix tasks {} and {} (pass --allow-mixed)",
                        first.task, other.task
                    ),
                ));
            }
        }
    }
    records.sort_by_key(|r| (r.task, stage_rank(&r.stage)));
    Ok(BenchReport::new(records))
}

fn parameters(r: &BenchRecord) -> String {
    r.parameters
        .iter()
        .map(|(k, v)| format!("{k}={v}"))
        .collect::<Vec<_>>()
        .join(";")
}

fn workload(r: &BenchRecord) -> String {
    // The tag is the task, already in its own column.
    let mut value = serde_json::to_value(&r.workload).expect("workload serializes");
    if let Some(map) = value.as_object_mut() {
        map.remove("task");
    }
    value.to_string()
}

pub fn render(report: &BenchReport, format: ReportFormat) -> Result<String> {
    match format {
        ReportFormat::Json => {
            Ok(serde_json::to_string_pretty(report).expect("report serializes") + "\n")
        }
        ReportFormat::Csv => render_csv(report),
        ReportFormat::Table => Ok(render_table(report)),
    }
}

/// Columns: task, stage, variant, parameters, workload, repetitions,
/// warmups, median_ns, normalized_ns, throughput, throughput_unit,
/// baseline, speedup, verdict, machine.
fn render_csv(report: &BenchReport) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let csv_err = |e: csv::Error| Error::Io(std::io::Error::other(e));
    w.write_record([
        "task",
        "stage",
        "variant",
        "parameters",
        "workload",
        "repetitions",
        "warmups",
        "median_ns",
        "normalized_ns",
        "throughput",
        "throughput_unit",
        "baseline",
        "speedup",
        "verdict",
        "machine",
    ])
    .map_err(csv_err)?;
    for r in &report.records {
        w.write_record([
            r.task.name().to_string(),
            r.stage.clone(),
            r.variant.clone(),
            parameters(r),
            workload(r),
            r.repetitions.to_string(),
            r.warmups.to_string(),
            r.median_ns.to_string(),
            r.normalized_ns.to_string(),
            r.throughput.to_string(),
            r.throughput_unit.clone(),
            r.baseline.clone(),
            r.speedup.to_string(),
            r.verdict.label().to_string(),
            r.machine.to_string(),
        ])
        .map_err(csv_err)?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn render_table(report: &BenchReport) -> String {
    let header = [
        "stage",
        "variant",
        "parameters",
        "median ms",
        "ns/unit",
        "throughput",
        "speedup",
        "verdict",
    ];
    let rows: Vec<[String; 8]> = report
        .records
        .iter()
        .map(|r| {
            [
                r.stage.clone(),
                r.variant.clone(),
                parameters(r),
                format!("{:.3}", r.median_ns / 1e6),
                format!("{:.4}", r.normalized_ns),
                format!("{:.3e} {}", r.throughput, r.throughput_unit),
                format!("{:.2}x", r.speedup),
                r.verdict.label().to_string(),
            ]
        })
        .collect();
    let mut widths = header.map(str::len);
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.len());
        }
    }
    let mut out = String::new();
    let mut tasks: Vec<_> = report
        .records
        .iter()
        .map(|r| (r.task, r.baseline.as_str()))
        .collect();
    tasks.dedup();
    for (task, baseline) in tasks {
        let _ = writeln!(out, "task {task}, speedup vs {baseline}");
    }
    if let Some(first) = report.records.first() {
        let _ = writeln!(out, "machine {}", first.machine);
        let _ = writeln!(out, "workload {}", workload(first));
    }
    let line = |cells: Vec<&str>| {
        cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
            .trim_end()
            .to_string()
    };
    let _ = writeln!(out, "{}", line(header.to_vec()));
    let _ = writeln!(
        out,
        "{}",
        line(
            widths
                .iter()
                .map(
                    |&w| &"----------------------------------------------------------------"
                        [..w.min(64)]
                )
                .collect()
        )
    );
    for row in &rows {
        let _ = writeln!(out, "{}", line(row.iter().map(String::as_str).collect()));
    }
    out
}
