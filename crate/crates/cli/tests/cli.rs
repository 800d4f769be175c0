use std::path::PathBuf;
use std::process::{Command, Output};

fn example(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../problems")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    run_with_threads(args, None)
}

fn run_with_threads(args: &[&str], threads: Option<usize>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hodgeci"));
    cmd.args(args);
    if let Some(t) = threads {
        cmd.env("RAYON_NUM_THREADS", t.to_string());
    }
    cmd.output().expect("spawn hodgeci")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let path = std::env::temp_dir().join(format!("hodgeci-{}-{name}", std::process::id()));
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn line_self_intersection() {
    let file = example("cubic_line.hci");
    let o = run(&["intersect", file.to_str().unwrap(), "L", "L"]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.starts_with("L.L = -1\n"), "{out}");
    assert!(out.contains("c = 1/4\n") && out.contains("c*(d-1)^(n+2) = 4\n"));
}

#[test]
fn intersection_matrix_from_queries() {
    let o = run(&["intersect", example("quartic_lines.hci").to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(
        out.contains("A.A = -2\n") && out.contains("A.B = 1\n"),
        "{out}"
    );
    let o = run(&["intersect", example("cubic_line.hci").to_str().unwrap()]);
    let out = stdout(&o);
    for line in ["L.L = -1\n", "L.H = 1\n", "H.H = 3\n", "D.D = 3\n"] {
        assert!(out.contains(line), "{out}");
    }
}

#[test]
fn period_text_and_json() {
    let file = example("cubic_line.hci");
    let o = run(&["period", file.to_str().unwrap(), "L", "x0*x2"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("period = (2*pi*i)^1/1! * (1/9)\n"));
    let o = run(&[
        "--format",
        "json",
        "period",
        file.to_str().unwrap(),
        "L",
        "x0*x2",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    let p = &v["results"][0]["period"];
    assert_eq!(p["tpi_power"], 1);
    assert_eq!(p["inv_factorial"], 1);
    assert_eq!(p["algebraic_coords"], serde_json::json!(["1/9", "0/1"]));
}

#[test]
fn verdict_and_hilbert() {
    let o = run(&["fermat-verdict", "--n", "6", "--d", "4", "--m", "0"]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(
        stdout(&o).lines().next().unwrap(),
        "equal=true expected=true consistent=true codim=38"
    );
    let o = run(&[
        "fermat-verdict",
        "--n",
        "6",
        "--d",
        "3",
        "--m",
        "0",
        "--a",
        "-1",
        "--b",
        "2",
    ]);
    assert!(stdout(&o).starts_with("equal=false expected=false consistent=true"));
    let o = run(&["hilbert", "--n", "2", "--d", "3"]);
    assert_eq!(stdout(&o), "1,4,6,4,1,0\n");
    let o = run(&["hilbert", example("quartic_lines.hci").to_str().unwrap()]);
    assert_eq!(stdout(&o), "1,4,10,16,19,16,10,4,1,0\n");
}

#[test]
fn tangent_and_class() {
    let file = example("quartic_lines.hci");
    let o = run(&["tangent", file.to_str().unwrap()]);
    let out = stdout(&o);
    assert!(
        out.contains("tangent A: ambient = 35, dim = 34, codim = 1\n"),
        "{out}"
    );
    let o = run(&[
        "--basis",
        "--format",
        "json",
        "tangent",
        file.to_str().unwrap(),
        "A",
    ]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["results"][0]["basis"].as_array().unwrap().len(), 34);
    let o = run(&["class", example("cubic_line.hci").to_str().unwrap(), "H"]);
    assert!(stdout(&o).contains("theta_multiple = true"));
}

#[test]
fn colon_equality_command() {
    let file = example("cubic_line.hci");
    let args = |e: &'static str| {
        vec![
            "colon-eq",
            file.to_str().unwrap(),
            "x0 + x1",
            "x0 - x1",
            "--ideal",
            "x0^2; x1^2; x2; x3",
            "--degree",
            e,
        ]
        .into_iter()
        .map(String::from)
        .collect::<Vec<_>>()
    };
    let a1 = args("1");
    let o = run(&a1.iter().map(String::as_str).collect::<Vec<_>>());
    let out = stdout(&o);
    assert!(
        out.contains("holds = false\n") && out.contains("witness = x0\n"),
        "{out}"
    );
    let a2 = args("2");
    let o = run(&a2.iter().map(String::as_str).collect::<Vec<_>>());
    assert!(stdout(&o).contains("holds = true\n"));
}

#[test]
fn exit_codes() {
    let bad = temp_file("syntax.hci", "n = 2\nd = 3\nF = x0^3 + * x1\n");
    let o = run(&["validate", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("3:"), "{}", stderr(&o));

    let arity = temp_file(
        "arity.hci",
        "n = 2\nd = 3\ncycle L { f = [x0]; g = [x1] }\n",
    );
    assert_eq!(
        run(&["validate", arity.to_str().unwrap()]).status.code(),
        Some(1)
    );

    let wrong = temp_file(
        "wrong.hci",
        "n = 2\nd = 3\ncycle L { f = [x0; x1]; g = [x0^2; x1^2 + x2^2] }\n",
    );
    let o = run(&["validate", wrong.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("sum f*g - F ="), "{}", stderr(&o));

    let singular = temp_file("singular.hci", "n = 2\nd = 3\nF = x0*x1*x2 + x3^3\n");
    assert_eq!(
        run(&["hilbert", singular.to_str().unwrap()]).status.code(),
        Some(0)
    );
    let o = run(&["validate", singular.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let file = example("cubic_line.hci");
    let o = run(&[
        "--max-dim",
        "3",
        "intersect",
        file.to_str().unwrap(),
        "L",
        "L",
    ]);
    assert_eq!(o.status.code(), Some(3));
    for p in [bad, arity, wrong, singular] {
        let _ = std::fs::remove_file(p);
    }
}

#[test]
fn output_is_deterministic() {
    let file = example("quartic_lines.hci");
    let f = file.to_str().unwrap();
    let cases: Vec<Vec<&str>> = vec![
        vec!["--format", "json", "intersect", f],
        vec!["--basis", "tangent", f],
        vec![
            "--format",
            "json",
            "fermat-verdict",
            "--n",
            "6",
            "--d",
            "3",
            "--m",
            "0",
        ],
        vec!["class", f],
    ];
    for args in cases {
        let first = run_with_threads(&args, Some(1));
        assert!(first.status.success());
        for threads in [1, 4] {
            let again = run_with_threads(&args, Some(threads));
            assert_eq!(
                first.stdout, again.stdout,
                "{args:?} with {threads} threads"
            );
        }
    }
}
