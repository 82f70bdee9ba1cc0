use kernel_ladder::bench::{
    find, ladder, load_report, merge_reports, render, resolve, run, variants, verify, BenchReport,
    Divergence, ReportFormat, RunConfig, Sweep, Task, VariantParams, Verdict,
};
use kernel_ladder::gol::{patterns, ByteGrid};
use kernel_ladder::histogram::{CharRange, IterationPattern};
use kernel_ladder::workload::{GridSpec, KnnSpec, TextSource, TextSpec, Workload, WorkloadSpec};
use kernel_ladder::{Error, Workers};

fn text_spec(bytes: usize) -> WorkloadSpec {
    WorkloadSpec::Histogram(TextSpec {
        seed: 7,
        bytes,
        source: TextSource::Lorem,
        repeat_unit: None,
        range: CharRange::PRINTABLE,
    })
}

fn grid_spec() -> WorkloadSpec {
    WorkloadSpec::Gol(GridSpec {
        seed: 8,
        width: 128,
        height: 96,
        density: 0.4,
        iterations: 3,
    })
}

fn knn_spec() -> WorkloadSpec {
    WorkloadSpec::Knn(KnnSpec {
        seed: 9,
        n: 2000,
        m: 4,
        k: 32,
        lo: 0.0,
        hi: 1.0,
    })
}

fn quick() -> RunConfig {
    RunConfig {
        repeat: 1,
        warmup: 0,
        skip_verify: false,
    }
}

#[test]
fn listing() {
    let gol: Vec<&str> = variants(Some(Task::Gol)).iter().map(|d| d.name).collect();
    for name in [
        "bytes",
        "row-naive",
        "row-popc",
        "row-fulladder",
        "tile-popc",
    ] {
        assert!(gol.contains(&name), "{name}");
    }
    assert!(!gol.contains(&"fault-fixture"));
    let his: Vec<&str> = ladder(Task::Histogram).iter().map(|d| d.stage).collect();
    assert_eq!(
        his,
        ["His1", "His2", "His3", "His4", "His5", "His6", "His7"]
    );
    let err = "foo".parse::<Task>().unwrap_err();
    let msg = err.to_string();
    assert!(
        msg.contains("histogram") && msg.contains("gol") && msg.contains("knn"),
        "{msg}"
    );
    assert_eq!(variants(None), variants(None));
}

#[test]
fn pattern_resolution() {
    let d = resolve(
        Task::Histogram,
        "multicopy",
        Some(IterationPattern::WorkerStride),
    )
    .unwrap();
    assert_eq!(d.name, "multicopy-stride");
    assert!(matches!(
        find(Task::Knn, "nope"),
        Err(Error::UnknownVariant { .. })
    ));
}

#[test]
fn every_variant_verifies() {
    for spec in [text_spec(50_000), grid_spec(), knn_spec()] {
        let workload = spec.generate().unwrap();
        let task: Task = spec.task_name().parse().unwrap();
        for desc in variants(Some(task)) {
            for w in [1, 3] {
                let params = VariantParams {
                    workers: Workers::new(w).unwrap(),
                    ..VariantParams::default()
                };
                assert_eq!(
                    verify(desc, &workload, &params).unwrap(),
                    Verdict::Pass,
                    "{}",
                    desc.name
                );
            }
        }
    }
}

#[test]
fn fault_fixture_reports_first_cell() {
    let grid = patterns::with_pattern(64, 8, patterns::BLINKER, 2, 2);
    let fixture = find(Task::Gol, "fault-fixture").unwrap();
    let workload = Workload::Grid {
        grid: grid.clone(),
        iterations: 1,
    };
    let verdict = verify(fixture, &workload, &VariantParams::default()).unwrap();
    let Verdict::Fail { divergence } = verdict else {
        panic!("{verdict:?}")
    };
    // Scan for the first differing cell independently.
    let expected = kernel_ladder::gol::step_reference(&grid);
    let mut first = None;
    'scan: for y in 0..8 {
        for x in 0..64 {
            let mut n = 0;
            for (dy, dx) in [
                (-1, -1),
                (-1, 0),
                (-1, 1),
                (0, -1),
                (0, 2),
                (1, -1),
                (1, 0),
                (1, 1),
            ] {
                let (yy, xx) = (y as i64 + dy, x as i64 + dx);
                if (0..8).contains(&yy)
                    && (0..64).contains(&xx)
                    && grid.get(yy as usize, xx as usize)
                {
                    n += 1;
                }
            }
            let alive = grid.get(y, x);
            let faulty = n == 3 || (alive && n == 2);
            if faulty != expected.get(y, x) {
                first = Some((y, x));
                break 'scan;
            }
        }
    }
    let (row, col) = first.unwrap();
    assert!(matches!(divergence, Divergence::Cell { row: r, col: c, .. } if r == row && c == col));
    assert!(divergence.to_string().contains("first mismatching cell"));
}

#[test]
fn oracle_against_itself() {
    let workload = grid_spec().generate().unwrap();
    let oracle = find(Task::Gol, "reference").unwrap();
    assert!(verify(oracle, &workload, &VariantParams::default())
        .unwrap()
        .passed());
    let g = ByteGrid::dead(64, 1).unwrap();
    let w = Workload::Grid {
        grid: g,
        iterations: 0,
    };
    assert!(verify(
        find(Task::Gol, "row-fulladder").unwrap(),
        &w,
        &VariantParams::default()
    )
    .unwrap()
    .passed());
}

#[test]
fn single_repetition_median() {
    let report = run(
        &grid_spec(),
        &[find(Task::Gol, "row-popc").unwrap()],
        &Sweep::default(),
        &quick(),
    )
    .unwrap();
    let r = &report.records[0];
    assert_eq!(r.times_ns.len(), 1);
    assert_eq!(r.median_ns, r.times_ns[0] as f64);
    assert!(r.verdict.passed());
    assert_eq!(r.normalized_ns, r.median_ns / (128.0 * 96.0 * 3.0));
}

#[test]
fn items_sweep_gives_four_rows() {
    let sweep = Sweep {
        workers: vec![Workers::new(2).unwrap()],
        items_per_worker: vec![1, 4, 16, 64],
        batch_size: vec![None],
    };
    let desc = find(Task::Histogram, "multiitem-stride").unwrap();
    let report = run(&text_spec(20_000), &[desc], &sweep, &quick()).unwrap();
    assert_eq!(report.records.len(), 4);
    let items: Vec<&str> = report
        .records
        .iter()
        .map(|r| r.parameters["items_per_worker"].as_str())
        .collect();
    assert_eq!(items, ["1", "4", "16", "64"]);
    assert!(report.records.iter().all(|r| r.verdict.passed()));
}

#[test]
fn run_rejects_wrong_task_and_failing_variant() {
    let desc = find(Task::Knn, "heap").unwrap();
    assert!(run(&grid_spec(), &[desc], &Sweep::default(), &quick()).is_err());
    let fixture = find(Task::Gol, "fault-fixture").unwrap();
    let err = run(&grid_spec(), &[fixture], &Sweep::default(), &quick()).unwrap_err();
    assert!(matches!(err, Error::Verification { .. }));
    let skipped = RunConfig {
        skip_verify: true,
        ..quick()
    };
    let report = run(&grid_spec(), &[fixture], &Sweep::default(), &skipped).unwrap();
    assert_eq!(report.records[0].verdict, Verdict::Skipped);
}

fn ladder_report() -> BenchReport {
    let series = ladder(Task::Histogram);
    let mut reversed = series.clone();
    reversed.reverse();
    run(&text_spec(30_000), &reversed, &Sweep::default(), &quick()).unwrap()
}

#[test]
fn report_rendering() {
    let report = ladder_report();
    let json = render(&report, ReportFormat::Json).unwrap();
    assert!(json.contains("\"schema\": 1"));
    let loaded = load_report(&json).unwrap();
    assert_eq!(loaded, report);
    assert_eq!(render(&loaded, ReportFormat::Json).unwrap(), json);

    let merged = merge_reports(vec![loaded], false).unwrap();
    let stages: Vec<&str> = merged.records.iter().map(|r| r.stage.as_str()).collect();
    assert_eq!(
        stages,
        ["His1", "His2", "His3", "His4", "His5", "His6", "His7"]
    );
    assert!(merged.records.iter().all(|r| r.baseline == "shared-atomic"));

    let csv = render(&merged, ReportFormat::Csv).unwrap();
    assert_eq!(csv.lines().count(), 8);
    assert!(csv.starts_with("task,stage,variant,parameters,"));
    let table = render(&merged, ReportFormat::Table).unwrap();
    let his1 = table.find("His1").unwrap();
    assert!(table.find("His7").unwrap() > his1);
}

#[test]
fn report_errors() {
    let err = load_report("{\"schema\": 1, \"timing_scope\": \"x\", \"records\": [{\"task\": 5}]}")
        .unwrap_err();
    let Error::Schema { path, .. } = err else {
        panic!("{err:?}")
    };
    assert!(path.starts_with("records[0]"), "{path}");
    assert!(matches!(
        load_report("{not json"),
        Err(Error::Schema { .. })
    ));
    let v2 = render(&ladder_report(), ReportFormat::Json)
        .unwrap()
        .replace("\"schema\": 1", "\"schema\": 2");
    assert!(matches!(load_report(&v2), Err(Error::Schema { path, .. }) if path == "schema"));

    let a = ladder_report();
    let b = run(
        &knn_spec(),
        &[find(Task::Knn, "heap").unwrap()],
        &Sweep::default(),
        &quick(),
    )
    .unwrap();
    assert!(merge_reports(vec![a.clone(), b.clone()], false).is_err());
    let mixed = merge_reports(vec![b, a], true).unwrap();
    assert_eq!(mixed.records.first().unwrap().task, Task::Histogram);
    assert_eq!(mixed.records.last().unwrap().task, Task::Knn);
}
