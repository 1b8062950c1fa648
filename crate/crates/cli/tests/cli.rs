use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn igx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_igx"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

/// Twelve points on two concentric rings.
fn write_instance(dir: &Path, name: &str) -> PathBuf {
    let mut text = format!("NAME: {name}\nTYPE: TSP\nDIMENSION: 12\nEDGE_WEIGHT_TYPE: EUC_2D\nNODE_COORD_SECTION\n");
    for i in 0..12 {
        let r = if i % 2 == 0 { 100.0 } else { 60.0 };
        let a = i as f64 * std::f64::consts::TAU / 12.0;
        text.push_str(&format!("{} {:.3} {:.3}\n", i + 1, r * a.cos(), r * a.sin()));
    }
    text.push_str("EOF\n");
    let path = dir.join(format!("{name}.tsp"));
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn trace_logs_first_selection() {
    let o = igx(&[
        "trace",
        "--operator",
        "igx",
        "--fixture",
        "fig1",
        "--father",
        "4,5,7,3,2,1,6,8",
        "--mother",
        "5,1,7,3,6,2,4,8",
        "--start",
        "1",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    let first = out
        .lines()
        .find(|l| l.starts_with("at 1:"))
        .expect("a step from node 1");
    assert!(first.ends_with("-> 2 (nearest)"), "{first}");
    for c in [
        "2 (father-prev, d=12)",
        "6 (father-next",
        "5 (mother-prev",
        "7 (mother-next",
    ] {
        assert!(first.contains(c), "{first} lacks {c}");
    }
    assert!(out.contains("child: 1 2 3 7 6 8 5 4"), "{out}");
    assert!(out.contains("length: 180"), "{out}");
}

#[test]
fn trace_vgx_matches_hand_trace() {
    let o = igx(&[
        "trace",
        "--operator",
        "vgx",
        "--fixture",
        "fig1",
        "--father",
        "4 5 7 3 2 1 6 8",
        "--mother",
        "5 1 7 3 6 2 4 8",
        "--start-node",
        "1",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("child: 1 2 3 7 5 4 8 6"), "{out}");
    assert!(!out.contains("nearest unvisited overall"));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(igx(&["solve", "--bogus"]).status.code(), Some(2));
    assert_eq!(igx(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(igx(&["solve"]).status.code(), Some(2));
    assert_eq!(
        igx(&["solve", "--instance", "x", "--pop", "many"]).status.code(),
        Some(2)
    );
    assert_eq!(igx(&["--help"]).status.code(), Some(0));
}

#[test]
fn runtime_errors_exit_1() {
    let o = igx(&["solve", "--instance", "/nonexistent/none.tsp"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("none.tsp"));

    let o = igx(&["trace", "--fixture", "fig1", "--father", "1,2,3", "--mother", "1,2,3"]);
    assert_eq!(o.status.code(), Some(1));

    let dir = tempfile::tempdir().unwrap();
    let path = write_instance(dir.path(), "rings");
    let o = igx(&["solve", "--instance", path.to_str().unwrap(), "--operator", "pmx"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(
        err.contains("pmx") && err.contains("igx") && err.contains("gx_four_best20"),
        "{err}"
    );

    let o = igx(&["solve", "--instance", path.to_str().unwrap(), "--start-node", "0"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn solve_resolves_names_against_tsplib_dir() {
    let dir = tempfile::tempdir().unwrap();
    write_instance(dir.path(), "rings");
    let o = igx(&[
        "solve",
        "--instance",
        "rings",
        "--tsplib-dir",
        dir.path().to_str().unwrap(),
        "--pop",
        "10",
        "--gen",
        "20",
        "--seed",
        "4",
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("instance: rings (n = 12)"), "{out}");
    assert!(out.contains("quality: n/a"), "{out}");
    let tour = out.lines().find_map(|l| l.strip_prefix("tour: ")).expect("tour line");
    let mut labels: Vec<usize> = tour.split(' ').map(|t| t.parse().unwrap()).collect();
    labels.sort_unstable();
    assert_eq!(labels, (1..=12).collect::<Vec<_>>());
}

#[test]
fn bench_csv_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_instance(dir.path(), "rings");
    let run = |out: &Path| {
        let o = igx(&[
            "bench",
            "--instance",
            path.to_str().unwrap(),
            "--operator",
            "igx,gx_random",
            "--runs",
            "3",
            "--pop",
            "8",
            "--gen",
            "15",
            "--seed",
            "11",
            "--no-timing",
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", stderr(&o));
        std::fs::read_to_string(out).unwrap()
    };
    let a = run(&dir.path().join("a.csv"));
    let b = run(&dir.path().join("b.csv"));
    assert_eq!(a, b);
    let lines: Vec<&str> = a.lines().collect();
    assert_eq!(
        lines[0],
        "instance,operator,runs,best,best_q,avg,avg_q,worst,worst_q,avg_loops,avg_secs"
    );
    assert_eq!(lines.len(), 3);
    assert!(
        lines[1].starts_with("rings,igx,3,") && lines[1].ends_with(','),
        "{}",
        lines[1]
    );
    assert!(lines[2].starts_with("rings,gx_random,3,"), "{}", lines[2]);
}

#[test]
fn bench_reports_every_problem_before_running() {
    let o = igx(&[
        "bench",
        "--instance",
        "/nonexistent/a.tsp,/nonexistent/b.tsp",
        "--operator",
        "igx,ox",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(
        err.contains("a.tsp") && err.contains("b.tsp") && err.contains("ox"),
        "{err}"
    );
}
