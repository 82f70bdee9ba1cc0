use std::process::{Command, Output};

fn bench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ladder-bench"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

#[test]
fn list_is_stable_and_filtered() {
    let all = bench(&["list"]);
    assert!(all.status.success());
    assert_eq!(stdout(&all), stdout(&bench(&["list"])));
    let gol = stdout(&bench(&["list", "--task", "gol"]));
    for name in [
        "bytes",
        "row-naive",
        "row-popc",
        "row-fulladder",
        "tile-popc",
    ] {
        assert!(gol.contains(name), "{name}");
    }
    assert!(!gol.contains("fault-fixture"));
    let his = stdout(&bench(&["list", "--task", "histogram"]));
    for i in 1..=7 {
        assert!(his.contains(&format!("His{i} ")), "His{i}");
    }
}

#[test]
fn unknown_task_is_a_parameter_error() {
    let out = bench(&["list", "--task", "foo"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("histogram, gol, knn"));
    let out = bench(&["verify", "--task", "knn", "--variant", "nope", "--n", "100"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("heap"));
}

#[test]
fn bad_parameters_exit_2() {
    for args in [
        &["verify", "--task", "gol", "--width", "100"][..],
        &["verify", "--task", "knn", "--n", "10", "--k", "32"],
        &["verify", "--task", "knn", "--n", "100", "--k", "48"],
        &[
            "verify",
            "--task",
            "histogram",
            "--bytes",
            "10",
            "--workers",
            "0",
        ],
        &[
            "run", "--task", "gol", "--width", "64", "--height", "8", "--repeat", "0",
        ],
    ] {
        assert_eq!(bench(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn fault_fixture_fails_verification() {
    let args = [
        "--task",
        "gol",
        "--width",
        "64",
        "--height",
        "32",
        "--iters",
        "2",
        "--variant",
        "fault-fixture",
    ];
    let out = bench(&[&["verify"][..], &args].concat());
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("first mismatching cell"));
    let out = bench(&[&["run", "--repeat", "1"][..], &args].concat());
    assert_eq!(out.status.code(), Some(3));
    let out = bench(&[&["run", "--repeat", "1", "--skip-verify"][..], &args].concat());
    assert!(out.status.success());
    assert!(stdout(&out).contains("skipped"));
}

#[test]
fn gen_then_verify_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let grid = dir.path().join("g.golb");
    let g = grid.to_str().unwrap();
    assert!(
        bench(&["gen", "--task", "gol", "--width", "128", "--height", "16", "--output", g])
            .status
            .success()
    );
    let out = bench(&[
        "verify",
        "--task",
        "gol",
        "--input",
        g,
        "--iters",
        "3",
        "--workers",
        "1,2",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out).lines().count(), 11);

    let pts = dir.path().join("p.pts");
    let p = pts.to_str().unwrap();
    assert!(
        bench(&["gen", "--task", "knn", "--n", "500", "--m", "3", "--output", p])
            .status
            .success()
    );
    assert!(dir.path().join("p.pts.queries").exists());
    let out = bench(&[
        "verify",
        "--task",
        "knn",
        "--input",
        p,
        "--k",
        "64",
        "--batch-size",
        "16,64,500",
    ]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(stdout(&out).contains("batch_size=500"));
}

#[test]
fn malformed_inputs_exit_4() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.golb");
    std::fs::write(&bad, b"XXXXxxxxxxxxxxxxxxxx").unwrap();
    let out = bench(&["verify", "--task", "gol", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("offset 0"));

    let report = dir.path().join("r.json");
    std::fs::write(
        &report,
        r#"{"schema": 1, "timing_scope": "", "records": [{"task": "gol", "machine": 7}]}"#,
    )
    .unwrap();
    let out = bench(&["report", report.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("records[0]"), "{}", stderr(&out));

    let out = bench(&["report", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn run_and_report_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let gol = dir.path().join("gol.json");
    let knn = dir.path().join("knn.json");
    let common = [
        "--repeat", "2", "--warmup", "0", "--format", "json", "--output",
    ];
    let out = bench(
        &[
            &[
                "run", "--task", "gol", "--width", "128", "--height", "64", "--iters", "2",
            ][..],
            &common,
            &[gol.to_str().unwrap()],
        ]
        .concat(),
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let out = bench(
        &[
            &[
                "run",
                "--task",
                "knn",
                "--n",
                "2000",
                "--m",
                "2",
                "--variant",
                "heap,buffered",
            ][..],
            &common,
            &[knn.to_str().unwrap()],
        ]
        .concat(),
    );
    assert!(out.status.success(), "{}", stderr(&out));

    let json = std::fs::read_to_string(&gol).unwrap();
    assert!(json.contains("\"schema\": 1"));
    let again = bench(&["report", gol.to_str().unwrap(), "--format", "json"]);
    assert_eq!(stdout(&again), json);

    let table = stdout(&bench(&["report", gol.to_str().unwrap()]));
    let order: Vec<usize> = ["GoL1", "GoL2 ", "GoL2-tiled", "GoL4", "GoL6"]
        .iter()
        .map(|s| table.find(s).unwrap_or_else(|| panic!("{s} missing")))
        .collect();
    assert!(order.windows(2).all(|w| w[0] < w[1]), "{table}");

    let (g, k) = (gol.to_str().unwrap(), knn.to_str().unwrap());
    assert_eq!(bench(&["report", g, k]).status.code(), Some(2));
    let mixed = bench(&["report", g, k, "--allow-mixed", "--format", "csv"]);
    assert!(mixed.status.success());
    assert_eq!(stdout(&mixed).lines().count(), 1 + 5 + 2);
}
