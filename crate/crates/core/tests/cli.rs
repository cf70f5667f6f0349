use std::io::Write;
use std::process::{Command, Output};

fn extrafun(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extrafun"))
        .args(args)
        .env_remove("EXTRAFUN_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn eval_prints_the_value() {
    let o = extrafun(&["eval", "(1/2)^n*sin(2^n*x)", "--x", "0.25", "--n", "2"]);
    assert_eq!(code(&o), 0);
    let v: f64 = stdout(&o).trim().parse().unwrap();
    assert!((v - 0.25 * 1f64.sin()).abs() < 1e-15);

    let o = extrafun(&["eval", "x^2", "--x", "-3"]);
    assert_eq!(stdout(&o).trim(), "9");
}

#[test]
fn eval_csv_has_a_header() {
    let o = extrafun(&["--format", "csv", "eval", "x + n", "--x", "1", "--n", "3"]);
    assert_eq!(code(&o), 0);
    assert_eq!(stdout(&o), "key,value\nx,1\nn,3\nvalue,4\n");
}

#[test]
fn errors_map_to_exit_codes() {
    let o = extrafun(&["eval", "sin(", "--x", "1"]);
    assert_eq!(code(&o), 2);
    assert!(String::from_utf8_lossy(&o.stderr).contains("syntax error at byte 4"));
    assert_eq!(code(&extrafun(&["eval", "log(x)", "--x", "-1"])), 3);
    assert_eq!(code(&extrafun(&["eval", "1/x", "--x", "0"])), 3);
    assert_eq!(code(&extrafun(&["frobnicate"])), 2);
    assert_eq!(code(&extrafun(&["equiv", "--f", "x"])), 2);
    assert_eq!(
        code(&extrafun(&[
            "equiv", "--f", "x", "--g", "x", "--family", "sup:0:1"
        ])),
        2
    );
    assert_eq!(
        code(&extrafun(&[
            "--window", "8:4:1e-6", "equiv", "--f", "x", "--g", "x"
        ])),
        2
    );
}

#[test]
fn equiv_exit_codes_follow_the_verdict() {
    let holds = extrafun(&["equiv", "--f", "(1/2)^n*sin(2^n*x)", "--g", "0"]);
    assert_eq!(code(&holds), 0);
    assert!(stdout(&holds).contains("f ~ g: Holds"));

    let fails = extrafun(&[
        "equiv",
        "--f",
        "cos(2^n*x)",
        "--g",
        "0",
        "--family",
        "pointwise:0.3,1.1",
    ]);
    assert_eq!(code(&fails), 1);
    assert!(stdout(&fails).contains("witness: pt("));

    let short = extrafun(&[
        "--window",
        "2:10:1e-2",
        "equiv",
        "--f",
        "1/n",
        "--g",
        "0",
        "--family",
        "abs",
    ]);
    assert_eq!(code(&short), 4);
}

#[test]
fn equiv_csv_lists_every_value() {
    let o = extrafun(&[
        "--format", "csv", "--window", "1:8:1e-2", "equiv", "--f", "1/2^n", "--g", "0",
    ]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("section,probe,index,value,bound"));
    assert_eq!(
        text.lines()
            .filter(|l| l.starts_with("f ~ g,\"sup[0,1]#1001\","))
            .count(),
        8
    );
    assert!(text.trim_end().ends_with("f ~ g,verdict,,Holds,"));
}

#[test]
fn config_file_supplies_the_run() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(
        file,
        r#"
        f = {{ kind = "list", head = ["abs(x)"], tail = "x^2 + (1/3)^n" }}
        g = {{ kind = "expr", src = "x^2" }}

        [family]
        kind = "pointwise"
        points = [0.5, 2.0]

        [window]
        start = 4
        end = 60
        epsilon = 1e-6
        "#
    )
    .unwrap();
    let path = file.path().to_str().unwrap();
    let o = extrafun(&["--config", path, "equiv"]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));
    assert!(stdout(&o).contains("window 4:60:1e-6"));

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    write!(bad, "[window]\nstart = 1\nend = 9\nepsilon = 0.1\nstride = 2\n").unwrap();
    assert_eq!(
        code(&extrafun(&["--config", bad.path().to_str().unwrap(), "equiv"])),
        2
    );
}

#[test]
fn diff_reports_terms_and_comparison() {
    let o = extrafun(&[
        "diff",
        "--f",
        "(1/2)^n*sin(2^n*x)",
        "--indices",
        "1,2",
        "--compare",
        "0",
    ]);
    assert_eq!(code(&o), 1);
    let text = stdout(&o);
    assert!(text.contains("cos(2*x)"), "{text}");
    assert!(text.contains("cos(4*x)"), "{text}");

    let o = extrafun(&["diff", "--f", "x^3 + 1/n", "--compare", "3*x^2"]);
    assert_eq!(code(&o), 0);

    let o = extrafun(&[
        "diff",
        "--f",
        "sin(x)",
        "--section",
        "smoothing",
        "--compare",
        "cos(x)",
    ]);
    assert_eq!(code(&o), 0, "{}", stdout(&o));

    assert_eq!(code(&extrafun(&["diff", "--f", "abs(x)", "--compare", "0"])), 5);
}

#[test]
fn demos_reproduce() {
    for demo in [
        "irregularity-compact",
        "irregularity-pointwise",
        "nonadditive-section",
        "hausdorff-witness",
    ] {
        let o = extrafun(&["demo", demo]);
        assert_eq!(code(&o), 0, "{demo}: {}", stdout(&o));
        assert!(stdout(&o).contains("true"));
    }
    let o = extrafun(&["demo", "nonadditive-section"]);
    assert!(stdout(&o).contains("first differing index  1"));
}

#[test]
fn checks_pass_and_respect_the_seed() {
    let o = extrafun(&["check", "vector-laws"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("6/6 properties pass"));

    let seeded = |seed: &str| {
        let o = Command::new(env!("CARGO_BIN_EXE_extrafun"))
            .args(["--format", "csv", "check", "seminorm-axioms"])
            .env("EXTRAFUN_SEED", seed)
            .output()
            .unwrap();
        assert_eq!(code(&o), 0);
        stdout(&o)
    };
    assert_eq!(seeded("17"), seeded("17"));
}
