use std::fs;
use std::process::{Command, Output};

use exstat_cli::Report;

fn exstat(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_exstat"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = exstat(args);
    assert!(
        o.status.success(),
        "{args:?} failed: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    stdout(&o)
}

#[test]
fn compute_prints_the_statistics_group() {
    let out = ok(&[
        "compute",
        "--builtin",
        "centered-triangle",
        "--group",
        "Z2",
        "--p",
        "0",
    ]);
    assert!(out.lines().any(|l| l == "T = Z4"), "{out}");
    let out = ok(&[
        "compute",
        "--builtin",
        "points:2",
        "--group",
        "Z2xZ2",
        "--p",
        "-1",
    ]);
    assert!(out.lines().any(|l| l == "T = Z2"), "{out}");
    let out = ok(&[
        "compute",
        "--builtin",
        "triangle",
        "--group",
        "Z3",
        "--p",
        "0",
    ]);
    assert!(out.lines().any(|l| l == "T = Z3"), "{out}");
}

#[test]
fn order_codes() {
    let tri = [
        "order",
        "--builtin",
        "triangle",
        "--group",
        "Z2",
        "--p",
        "0",
        "--process",
    ];
    let run = |w: &str| {
        let mut a = tri.to_vec();
        a.push(w);
        ok(&a).trim().to_string()
    };
    assert_eq!(run("[U3,U2^2]"), "2");
    assert_eq!(run("U1 U1^-1"), "1");
    assert_eq!(run("U1"), "0");
}

#[test]
fn report_files_feed_the_other_commands() {
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().to_str().unwrap();
    let model = [
        "--builtin",
        "centered-triangle",
        "--group",
        "Z2",
        "--p",
        "0",
    ];
    let with = |cmd: &str, extra: &[&str]| -> Vec<String> {
        let mut a = vec![cmd.to_string()];
        a.extend(model.iter().map(|s| s.to_string()));
        a.extend(extra.iter().map(|s| s.to_string()));
        a
    };
    let args = with("compute", &["--out", d]);
    ok(&args.iter().map(String::as_str).collect::<Vec<_>>());
    let report =
        Report::parse(&fs::read_to_string(dir.path().join("report.txt")).unwrap()).unwrap();
    assert_eq!(report.t, "Z4");
    assert_eq!(report.generators.len(), 1);
    assert_eq!(report.generators[0].order, "4");
    let gen = dir.path().join(&report.generators[0].file);
    let gen = gen.to_str().unwrap();

    let run = |cmd: &str, extra: &[&str]| {
        let a = with(cmd, extra);
        ok(&a.iter().map(String::as_str).collect::<Vec<_>>())
    };
    assert_eq!(run("order", &["--expr", gen]).trim(), "4");

    let simplified = dir.path().join("simplified.expr");
    let s = simplified.to_str().unwrap();
    run(
        "simplify",
        &[
            "--expr",
            gen,
            "--tries",
            "2000",
            "--restarts",
            "4",
            "--seed",
            "3",
            "--out",
            s,
        ],
    );
    assert_eq!(run("order", &["--expr", s]).trim(), "4");
    let again = dir.path().join("again.expr");
    run(
        "simplify",
        &[
            "--expr",
            gen,
            "--tries",
            "2000",
            "--restarts",
            "4",
            "--seed",
            "3",
            "--out",
            again.to_str().unwrap(),
        ],
    );
    assert_eq!(
        fs::read_to_string(&simplified).unwrap(),
        fs::read_to_string(&again).unwrap()
    );

    let word = run("reconstruct", &["--expr", s]);
    assert_eq!(run("order", &["--process", word.trim()]).trim(), "4");

    let dot = run("draw", &["--expr", gen]);
    assert!(dot.starts_with("digraph"));
}

#[test]
fn draw_f_symbol() {
    let dot = ok(&["draw", "--builtin", "triangle", "--process", "[U3,U2^2]"]);
    assert_eq!(
        dot.matches("[label=").count() - dot.matches("->").count(),
        4
    );
    assert_eq!(dot.matches("->").count(), 4);
}

#[test]
fn impose_all_three_squares_kills_loop_statistics() {
    let mut args = vec![
        "impose",
        "--builtin",
        "boundary-simplex:3",
        "--group",
        "Z2xZ2",
        "--p",
        "1",
    ];
    let words: Vec<String> = ["0,1,2", "0,1,3", "0,2,3", "1,2,3"]
        .iter()
        .flat_map(|f| {
            [
                format!("U[{f};0]^2"),
                format!("U[{f};1]^2"),
                format!("(U[{f};0] U[{f};1])^2"),
            ]
        })
        .collect();
    for w in &words {
        args.push("--impose");
        args.push(w);
    }
    let out = ok(&args);
    let orders: Vec<&str> = out
        .lines()
        .filter_map(|l| l.split("modified order ").nth(1))
        .collect();
    assert_eq!(orders, ["1", "1"], "{out}");
}

#[test]
fn model_files() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("loops.model");
    fs::write(
        &path,
        "[group]      invariants = 2\n\
         [complex]    vertices = 4\n\
         \x20            maximal = 0 1 2 | 0 1 3 | 0 2 3 | 1 2 3\n\
         [excitation] p = 1\n",
    )
    .unwrap();
    let out = ok(&["compute", "--model", path.to_str().unwrap()]);
    assert!(out.lines().any(|l| l == "T = 0"), "{out}");
}

#[test]
fn exit_codes() {
    let bad_word = exstat(&["order", "--builtin", "triangle", "--process", "[U3,"]);
    assert_eq!(bad_word.status.code(), Some(2));
    let bad_builtin = exstat(&["compute", "--builtin", "nope"]);
    assert_eq!(bad_builtin.status.code(), Some(2));
    let bad_group = exstat(&["compute", "--builtin", "triangle", "--group", "Q8"]);
    assert_eq!(bad_group.status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.model");
    fs::write(
        &path,
        "[group]\ninvariants = 2\n[complex]\nvertices = four\n",
    )
    .unwrap();
    let o = exstat(&["compute", "--model", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 4"));
    let big = dir.path().join("big.model");
    fs::write(&big, "[group]\ninvariants = 2\n[complex]\nvertices = 20\nmaximal = 0 1 2 3 4 5 6 7 8 9 10 11 12 13 14 15 16 17 18 19\n[excitation]\np = 0\n").unwrap();
    let o = exstat(&["compute", "--model", big.to_str().unwrap()]);
    assert_eq!(
        o.status.code(),
        Some(3),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    let not_closed = exstat(&["reconstruct", "--builtin", "triangle", "--process", "U1"]);
    assert_eq!(not_closed.status.code(), Some(1));
}
