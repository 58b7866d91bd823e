use std::path::PathBuf;
use std::process::{Command, Output};

use geode::coeffring::{Integer, PolyT};
use geode::json::series_from_json;
use geode::lagrange::{g_t, geode};
use geode::ncsf::Basis;

fn geode_cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_geode"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = geode_cli(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

#[test]
fn expansions_match_golden_files() {
    let cases: [(&[&str], &str); 8] = [
        (
            &["expand", "--series", "g", "--degree", "3"],
            "expand_g_S_3.txt",
        ),
        (
            &[
                "expand", "--series", "gamma", "--degree", "3", "--basis", "S",
            ],
            "expand_gamma_S_3.txt",
        ),
        (
            &[
                "expand", "--series", "gamma", "--degree", "3", "--basis", "R",
            ],
            "expand_gamma_R_3.txt",
        ),
        (
            &[
                "expand", "--series", "g", "--ring", "polyt", "--degree", "4",
            ],
            "expand_g_polyt_4.txt",
        ),
        (
            &[
                "expand", "--series", "gamma", "--ring", "polyt", "--degree", "3",
            ],
            "expand_gamma_polyt_3.txt",
        ),
        (&["eseries", "--degree", "4"], "eseries_4.txt"),
        (
            &["trees", "--kind", "lukasiewicz", "--n", "3"],
            "trees_lukasiewicz_3.txt",
        ),
        (
            &["trees", "--kind", "pqr", "--shape", "3,1"],
            "trees_pqr_3_1.txt",
        ),
    ];
    for (args, file) in cases {
        assert_eq!(stdout(args), golden(file), "{args:?}");
    }
}

#[test]
fn single_lines() {
    assert_eq!(
        stdout(&["expand", "--series", "g", "--degree", "0"]),
        "g_0 = 1\n"
    );
    let lam = stdout(&[
        "expand", "--series", "gamma", "--degree", "3", "--basis", "L",
    ]);
    assert!(lam.ends_with("gamma_3 = 3*L^{3} - 6*L^{21} - 5*L^{12} + 9*L^{111}\n"));
    let gessel = stdout(&["expand", "--series", "gessel", "--degree", "3"]);
    assert_eq!(gessel, golden("expand_gamma_S_3.txt"));
    let k = stdout(&["klagrange", "--k", "-1", "--degree", "2"]);
    assert!(k.ends_with("g^(-1)_2 = S_2 - S^{11}\n"));
}

#[test]
fn tree_counts() {
    assert_eq!(
        stdout(&["trees", "--kind", "lukasiewicz", "--n", "3", "--count"]),
        "5\n"
    );
    assert_eq!(
        stdout(&["trees", "--kind", "prime-schroeder", "--n", "3", "--count"]),
        "6\n"
    );
    assert_eq!(
        stdout(&["trees", "--kind", "schroeder", "--n", "3", "--count"]),
        "11\n"
    );
    assert_eq!(
        stdout(&["trees", "--kind", "pqr", "--shape", "3,1", "--count"]),
        "9\n"
    );
}

#[test]
fn verify_suites() {
    let out = geode_cli(&["verify", "--suite", "oeis", "--degree", "7"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("PASS A071724: coefficient sums of gamma_n, n <= 7"));

    let out = geode_cli(&["verify", "--suite", "identities", "--degree", "6"]);
    assert_eq!(out.status.code(), Some(0));

    let out = geode_cli(&["verify", "--suite", "paper", "--degree", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.lines().filter(|l| l.starts_with("DEVIATION")).count(),
        3
    );
    assert!(!text.contains("FAIL "));
    assert!(text
        .trim_end()
        .ends_with("3 documented deviations, 0 failed"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["expand", "--series", "nope"][..],
        &["expand", "--series", "gessel", "--ring", "polyt"],
        &["expand", "--series", "theta"],
        &["verify", "--suite", "everything"],
        &["trees", "--kind", "pqr", "--shape", "3,0"],
        &["trees", "--kind", "pqr", "--n", "3"],
        &["specialize", "--map", "catalan", "--series", "ge"],
        &["expand", "--series", "g", "--degree", "-1"],
    ] {
        assert_eq!(geode_cli(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn specializations_agree_with_closed_forms() {
    for map in ["catalan", "coeff-sum", "ribbon-u", "lambda-abs", "zq"] {
        let out = geode_cli(&["specialize", "--map", map, "--degree", "6", "--compare"]);
        assert_eq!(out.status.code(), Some(0), "{map}");
        assert!(
            String::from_utf8(out.stdout)
                .unwrap()
                .trim_end()
                .ends_with("agree"),
            "{map}"
        );
    }
    let cat = stdout(&["specialize", "--map", "catalan", "--degree", "5"]);
    assert_eq!(cat, "g under catalan:\n1, 1, 2, 5, 14, 42\n");
}

#[test]
fn json_round_trips() {
    let text = stdout(&[
        "expand", "--series", "gamma", "--degree", "5", "--basis", "R", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let (name, s) = series_from_json::<Integer>(&v).unwrap();
    assert_eq!(name, "gamma");
    assert_eq!(s, geode(5, 1).convert(Basis::R));

    let text = stdout(&[
        "expand", "--series", "g", "--ring", "polyt", "--degree", "4", "--format", "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let (_, s) = series_from_json::<PolyT>(&v).unwrap();
    assert_eq!(s, g_t(4));
}

#[test]
fn output_is_deterministic() {
    let runs: [&[&str]; 4] = [
        &["verify", "--suite", "paper", "--degree", "4"],
        &[
            "expand", "--series", "eta", "--degree", "5", "--basis", "L", "--format", "json",
        ],
        &["eseries", "--route", "system", "--degree", "5"],
        &[
            "trees",
            "--kind",
            "schroeder",
            "--n",
            "4",
            "--format",
            "json",
        ],
    ];
    for args in runs {
        let a = geode_cli(args);
        let b = geode_cli(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), b.status.code());
    }
}
