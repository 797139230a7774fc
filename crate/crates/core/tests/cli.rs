use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_gramcalc");

fn run(args: &[&str]) -> Output {
    Command::new(BIN)
        .args(args)
        .env_remove("GRAMCALC_ENUM_CAP")
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn derive_prints_fourth_derivative_of_z() {
    let out = run(&[
        "derive",
        "--grammar",
        "paper_G",
        "--start",
        "z",
        "--n",
        "4",
        "--format",
        "text",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "z*w^4 + 11*x*z^2*w^2 + 6*x*y*z^2*w + 5*x^2*z^3 + x*y^2*z^2\n"
    );
}

#[test]
fn gram_file_matches_builtin() {
    for n in ["0", "3", "6"] {
        let file = run(&[
            "derive",
            "--grammar",
            "grammars/peak_descent.gram",
            "--n",
            n,
            "--format",
            "json",
        ]);
        let builtin = run(&[
            "derive",
            "--grammar",
            "G",
            "--start",
            "z",
            "--n",
            n,
            "--format",
            "json",
        ]);
        assert_eq!(file.status.code(), Some(0));
        let a: serde_json::Value = serde_json::from_slice(&file.stdout).unwrap();
        let b: serde_json::Value = serde_json::from_slice(&builtin.stdout).unwrap();
        assert_eq!(a["terms"], b["terms"]);
        assert_eq!(a["text"], b["text"]);
    }
}

#[test]
fn output_is_pasteable() {
    let first = stdout(&run(&[
        "derive",
        "--grammar",
        "paper_G",
        "--start",
        "x^-1*z",
        "--n",
        "2",
    ]));
    let again = stdout(&run(&[
        "derive",
        "--grammar",
        "paper_G",
        "--start",
        first.trim(),
        "--n",
        "0",
    ]));
    assert_eq!(first, again);
}

#[test]
fn json_is_stable() {
    let args = [
        "table",
        "--kind",
        "carlitz_quadruple",
        "--n",
        "6",
        "--format",
        "json",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
    let args = [
        "derive",
        "--grammar",
        "paper_G",
        "--start",
        "y",
        "--n",
        "6",
        "--format",
        "json",
        "--all",
    ];
    assert_eq!(run(&args).stdout, run(&args).stdout);
}

#[test]
fn table_csv_for_one_letter() {
    let out = run(&[
        "table",
        "--kind",
        "exterior_pdd",
        "--n",
        "1",
        "--format",
        "csv",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout(&out), "0,0,1\n");
}

#[test]
fn table_text_and_triangle() {
    let out = stdout(&run(&["table", "--kind", "exterior_pdd", "--n", "4"]));
    assert!(out.contains("(1,1) 6"), "{out}");
    let out = stdout(&run(&[
        "table",
        "--kind",
        "exterior_pdd",
        "--n",
        "4",
        "--triangle",
        "T",
        "--format",
        "csv",
    ]));
    assert_eq!(out, "4,0,1\n4,1,18\n4,2,5\n");
}

#[test]
fn cap_from_environment_and_flag() {
    let out = Command::new(BIN)
        .args(["table", "--kind", "peak_dd", "--n", "6"])
        .env("GRAMCALC_ENUM_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    let out = run(&["table", "--kind", "peak_dd", "--n", "6", "--cap", "5"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains('5'));
}

#[test]
fn series_prints_exact_coefficients() {
    let out = run(&[
        "series",
        "--which",
        "gen_z",
        "--point",
        "x=4,y=2,z=1,w=3",
        "--root",
        "3",
        "--order",
        "12",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 13);
    assert_eq!(lines[0], "0: 1");
    assert_eq!(lines[1], "1: 3");
    assert_eq!(lines[2], "2: 13/2");
    let egf = stdout(&run(&[
        "series",
        "--which",
        "gen_z",
        "--point",
        "x=4,y=2,z=1,w=3",
        "--root",
        "3",
        "--order",
        "4",
        "--egf",
    ]));
    assert_eq!(egf, "0: 1\n1: 3\n2: 13\n3: 83\n4: 717\n");
}

#[test]
fn inadmissible_point_exits_one() {
    let out = run(&[
        "series",
        "--which",
        "gen_z",
        "--point",
        "x=4,y=2,z=1,w=3",
        "--root",
        "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    assert!(out.stdout.is_empty());
}

#[test]
fn bad_input_exits_one() {
    assert_eq!(
        run(&[
            "derive",
            "--grammar",
            "paper_G",
            "--start",
            "x y",
            "--n",
            "1"
        ])
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        run(&["derive", "--grammar", "nope", "--start", "x", "--n", "1"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(&["table", "--kind", "exterior_pdd"]).status.code(),
        Some(1)
    );
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["verify", "--check", "nope"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_passes() {
    let out = run(&["verify"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    let text = stdout(&out);
    assert_eq!(
        text.lines().filter(|l| l.ends_with("pass")).count(),
        7,
        "{text}"
    );
}

#[test]
fn verify_single_check_json() {
    let out = run(&["verify", "--check", "invariants", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["check"], "invariants");
    assert_eq!(v[0]["passed"], true);
}
