use std::path::Path;
use std::process::{Command, Output};

use qess_core::mw::closed_form;
use qess_core::PayoffBimatrix;

fn qess(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qess"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = qess(args);
    assert!(
        out.status.success(),
        "qess {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    qess(args).status.code().expect("exited normally")
}

#[test]
fn payoff_examples() {
    assert_eq!(
        stdout(&["payoff", "--preset", "pd", "--scheme", "eisert", "--alice", "Q", "--bob", "Q"]),
        "3.000000 3.000000\n"
    );
    assert_eq!(
        stdout(&[
            "payoff", "--preset", "pd", "--scheme", "mw", "--b2", "0", "--p", "1", "--q", "1"
        ]),
        "3.000000 3.000000\n"
    );
    let (a, b) = closed_form::aligned(
        PayoffBimatrix::ess_gained_under_entanglement().cells(),
        0.5,
        0.5,
        0.0,
        0.0,
    );
    assert_eq!(
        stdout(&[
            "payoff", "--preset", "game29", "--scheme", "mw", "--b2", "0.5", "--p", "0", "--q", "0"
        ]),
        format!("{a:.6} {b:.6}\n")
    );
}

#[test]
fn payoff_needs_matching_arguments() {
    assert_eq!(
        code(&["payoff", "--preset", "pd", "--scheme", "eisert", "--alice", "Q"]),
        2
    );
    assert_eq!(
        code(&["payoff", "--preset", "pd", "--scheme", "mw", "--p", "1", "--q", "1"]),
        2
    );
    assert_eq!(
        code(&[
            "payoff", "--preset", "pd", "--scheme", "mw", "--b2", "1.5", "--p", "1", "--q", "1"
        ]),
        2
    );
    assert_eq!(
        code(&["payoff", "--preset", "pd", "--alice", "Q", "--bob", "Q"]),
        2
    );
    assert_eq!(
        code(&["payoff", "--scheme", "eisert", "--alice", "Q", "--bob", "Q"]),
        2
    );
    assert_eq!(
        code(&["payoff", "--preset", "pd", "--scheme", "eisert", "--alice", "7", "--bob", "Q"]),
        2
    );
}

#[test]
fn ess_scan_examples() {
    let lines = |preset: &str, b2: &str| -> Vec<String> {
        stdout(&["ess-scan", "--preset", preset, "--star", "0,0", "--b2", b2])
            .lines()
            .map(str::to_string)
            .collect()
    };
    let verdicts = |rows: &[String]| -> Vec<String> {
        rows[1..]
            .iter()
            .map(|r| r.split(',').nth(1).unwrap().to_string())
            .collect()
    };

    let game28 = lines("game28", "0,0.5,1");
    assert_eq!(game28[0], "b2,verdict,min_delta_a,min_delta_b");
    // at b2 = 1 the row player gains by deviating: dA = p(2 - 3|b|^2) < 0
    assert_eq!(verdicts(&game28), ["ESS", "NE-not-ESS", "not-NE"]);
    assert_eq!(game28[2], "0.500000,NE-not-ESS,0.000500,0.000000");

    assert_eq!(verdicts(&lines("game29", "0,0.5")), ["NE-not-ESS", "ESS"]);
    assert_eq!(verdicts(&lines("pd", "0.2")), ["ESS"]);
}

#[test]
fn ess_scan_json_mirrors_csv() {
    let csv = stdout(&["ess-scan", "--preset", "game28", "--b2-steps", "5"]);
    let json = stdout(&[
        "ess-scan",
        "--preset",
        "game28",
        "--b2-steps",
        "5",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let points = v["points"].as_array().unwrap();
    let rows: Vec<&str> = csv.lines().skip(1).collect();
    assert_eq!(points.len(), rows.len());
    for (p, row) in points.iter().zip(rows) {
        let cols: Vec<&str> = row.split(',').collect();
        assert_eq!(format!("{:.6}", p["b2"].as_f64().unwrap()), cols[0]);
        assert_eq!(p["verdict"].as_str().unwrap(), cols[1]);
    }
    assert!(!v["intervals"].as_array().unwrap().is_empty());
}

#[test]
fn invade_examples() {
    let out = stdout(&["invade", "--case", "B", "--theta", "0", "--phi", "0.6"]);
    let lines: Vec<&str> = out.lines().collect();
    assert_eq!(lines[0], "step,mutant_frequency");
    assert_eq!(lines[1], "0,0.010000");
    assert_eq!(lines.len(), 1 + 201 + 1);
    assert_eq!(*lines.last().unwrap(), "verdict=invaded");

    let out = stdout(&["invade", "--case", "A", "--theta", "pi/2"]);
    assert_eq!(out.lines().last().unwrap(), "verdict=resists");

    assert_eq!(
        code(&["invade", "--case", "C", "--theta", "0", "--phi", "pi/2"]),
        2
    );
    assert_eq!(
        code(&["invade", "--case", "A", "--theta", "1", "--phi", "0.3"]),
        2
    );
    assert_eq!(code(&["invade", "--case", "B", "--theta", "1"]), 2);
    assert_eq!(
        code(&["invade", "--case", "B", "--phi", "0.3", "--eps", "0"]),
        2
    );
}

#[test]
fn bos_lists_equilibria() {
    let aligned = stdout(&["bos", "--format", "csv"]);
    assert_eq!(
        aligned,
        "p,q,verdict\n1.000000,1.000000,ESS\n0.000000,0.000000,ESS\n0.666667,0.333333,NE-not-ESS\n"
    );
    let crossed = stdout(&[
        "bos",
        "--format",
        "csv",
        "--pairing",
        "crossed",
        "--b2",
        "0.3",
    ]);
    assert_eq!(crossed.lines().count(), 4);
    assert_eq!(code(&["bos", "--payoffs", "1,2,3"]), 2);
}

#[test]
fn ess_check_both_schemes() {
    let q = stdout(&[
        "ess-check",
        "--preset",
        "pd",
        "--scheme",
        "eisert",
        "--candidate",
        "Q",
    ]);
    assert!(q.contains("verdict: ESS"), "{q}");
    let d = stdout(&[
        "ess-check",
        "--preset",
        "pd",
        "--scheme",
        "eisert",
        "--candidate",
        "pi",
    ]);
    assert!(
        d.contains("verdict: ESS"),
        "one-parameter D resists one-parameter mutants: {d}"
    );
    let mw = stdout(&[
        "ess-check",
        "--preset",
        "game28",
        "--scheme",
        "mw",
        "--b2",
        "0.5",
        "--format",
        "csv",
    ]);
    assert!(
        mw.starts_with("p,q,b2,pairing,is_nash,is_strict,is_ess,verdict,min_delta_a,min_delta_b\n")
    );
    assert!(mw.contains(",NE-not-ESS,"));
    assert_eq!(
        code(&[
            "ess-check",
            "--preset",
            "bos",
            "--scheme",
            "eisert",
            "--candidate",
            "Q"
        ]),
        2
    );
    assert_eq!(
        code(&[
            "ess-check",
            "--preset",
            "pd",
            "--b2",
            "0.2",
            "--resolution",
            "50"
        ]),
        2
    );
}

#[test]
fn ne_scan_reports_pd_families() {
    let out = stdout(&["ne-scan", "--preset", "pd", "--b2", "0.2,0.8"]);
    assert_eq!(
        out,
        "b2,p,q,verdict\n0.200000,0.000000,0.000000,ESS\n0.800000,1.000000,1.000000,ESS\n"
    );
    assert_eq!(code(&["ne-scan", "--preset", "pd", "--b2", "0.8,0.2"]), 2);
    assert_eq!(
        code(&["ne-scan", "--preset", "pd", "--scheme", "eisert"]),
        2
    );
}

#[test]
fn output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let mut contents = Vec::new();
    for name in ["a.csv", "b.csv"] {
        let path = dir.path().join(name);
        let p = path.to_str().unwrap();
        stdout(&[
            "ess-scan",
            "--preset",
            "game28",
            "--b2-steps",
            "21",
            "--out",
            p,
        ]);
        contents.push(std::fs::read(&path).unwrap());
    }
    assert_eq!(contents[0], contents[1]);
    let again = stdout(&["invade", "--case", "B", "--theta", "0", "--phi", "0.6"]);
    assert_eq!(
        again,
        stdout(&["invade", "--case", "B", "--theta", "0", "--phi", "0.6"])
    );
}

#[test]
fn errors_leave_no_output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let p = path.to_str().unwrap();
    assert_eq!(
        code(&["ess-scan", "--preset", "game28", "--b2", "0,2", "--out", p]),
        2
    );
    assert_eq!(
        code(&["invade", "--case", "C", "--theta", "0", "--phi", "pi/2", "--out", p]),
        2
    );
    assert!(!path.exists());

    let unwritable = dir.path().join("missing").join("out.csv");
    assert_eq!(
        code(&[
            "ess-scan",
            "--preset",
            "pd",
            "--b2",
            "0.2",
            "--out",
            unwritable.to_str().unwrap()
        ]),
        3
    );
}

#[test]
fn game_files() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let path = dir.path().join(name);
        std::fs::write(&path, text).unwrap();
        path
    };
    let good = write(
        "pd.toml",
        "scheme = \"mw\"\nbimatrix = [3, 3, 0, 5, 5, 0, 1, 1]\n[initial_state]\nb2 = 0\n",
    );
    let arg = |p: &Path| p.to_str().unwrap().to_string();
    assert_eq!(
        stdout(&["payoff", "--game", &arg(&good), "--p", "1", "--q", "1"]),
        "3.000000 3.000000\n"
    );
    // command-line state overrides the file
    assert_eq!(
        stdout(&[
            "payoff",
            "--game",
            &arg(&good),
            "--b2",
            "1",
            "--p",
            "1",
            "--q",
            "1"
        ]),
        "1.000000 1.000000\n"
    );

    let eisert = write(
        "e.toml",
        "scheme = \"eisert\"\npreset = \"pd\"\n[initial_state]\ngamma = 0\n",
    );
    assert_eq!(
        stdout(&[
            "payoff",
            "--game",
            &arg(&eisert),
            "--alice",
            "C",
            "--bob",
            "D"
        ]),
        "0.000000 5.000000\n"
    );

    let bad = write("bad.toml", "scheme = \"mw\"\nbimatrix = [1, 2]\n");
    assert_eq!(
        code(&[
            "payoff",
            "--game",
            &arg(&bad),
            "--b2",
            "0",
            "--p",
            "1",
            "--q",
            "1"
        ]),
        2
    );
    let missing = dir.path().join("nope.toml");
    assert_eq!(
        code(&["payoff", "--game", &arg(&missing), "--p", "1", "--q", "1"]),
        3
    );
    assert_eq!(
        code(&[
            "payoff",
            "--game",
            &arg(&good),
            "--preset",
            "pd",
            "--p",
            "1",
            "--q",
            "1"
        ]),
        2
    );
}

#[test]
fn tolerance_flag_is_validated() {
    assert_eq!(code(&["--tol", "-1", "bos"]), 2);
    assert_eq!(code(&["bos", "--tol", "nan"]), 2);
    assert_eq!(
        stdout(&["bos", "--tol", "1e-6", "--format", "csv"])
            .lines()
            .count(),
        4
    );
}
