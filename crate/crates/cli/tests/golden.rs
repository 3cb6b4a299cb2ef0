use std::path::PathBuf;
use std::process::Command;

const BIN: &str = env!("CARGO_BIN_EXE_hookbranch");

fn run(args: &[&str]) -> (String, i32) {
    let out = Command::new(BIN).args(args).output().expect("binary runs");
    (
        String::from_utf8(out.stdout).expect("utf-8 output"),
        out.status.code().expect("exit code"),
    )
}

fn golden_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(format!("{name}.txt"))
}

/// Compares `$ hookbranch <args>`, stdout and the exit code with a stored
/// file. Set `UPDATE_GOLDEN=1` to rewrite the files.
fn golden(name: &str, args: &[&str], want_exit: i32) {
    let (stdout, code) = run(args);
    assert_eq!(code, want_exit, "exit code of {args:?}; stdout:\n{stdout}");
    let actual = format!("$ hookbranch {}\n{stdout}exit {code}\n", args.join(" "));
    let path = golden_path(name);
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::create_dir_all(path.parent().unwrap()).unwrap();
        std::fs::write(&path, &actual).unwrap();
        return;
    }
    let expected =
        std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
    assert_eq!(
        actual,
        expected,
        "output of {args:?} differs from {}",
        path.display()
    );
}

#[test]
fn verify_sweep_by_expansion() {
    golden(
        "verify_cwbr_n5_expand",
        &[
            "verify",
            "--identity",
            "cwbr",
            "--n",
            "5",
            "--mode",
            "expand",
        ],
        0,
    );
}

#[test]
fn verify_single_partition() {
    golden(
        "verify_cwbr_3211",
        &["verify", "--identity", "cwbr", "--partition", "3211"],
        0,
    );
}

#[test]
fn verify_unknown_identity_is_a_usage_error() {
    golden(
        "verify_unknown_identity",
        &["verify", "--identity", "nosuch"],
        2,
    );
}

#[test]
fn bijection_exhaustive() {
    golden(
        "bijection_3211_exhaustive",
        &["bijection", "--partition", "3211", "--exhaustive"],
        0,
    );
}

#[test]
fn bijection_demo() {
    golden("bijection_demo", &["bijection", "--demo", "988666542"], 0);
}

#[test]
fn bijection_single_box() {
    golden("bijection_1", &["bijection", "--partition", "1"], 0);
}

#[test]
fn walk_uniform_monte_carlo() {
    golden(
        "walk_322_r1",
        &[
            "walk",
            "--partition",
            "322",
            "--region",
            "R1",
            "--uniform",
            "--trials",
            "100000",
            "--seed",
            "7",
        ],
        0,
    );
}

#[test]
fn stats_content() {
    golden(
        "stats_322_content",
        &["stats", "--partition", "322", "--content"],
        0,
    );
}

#[test]
fn stats_sum_squares() {
    golden(
        "stats_sum_squares_8",
        &["stats", "--sum-squares", "--n", "8"],
        0,
    );
}

#[test]
fn verify_json() {
    golden(
        "verify_3211_json",
        &[
            "verify",
            "--identity",
            "cwbr",
            "--partition",
            "3211",
            "--format",
            "json",
        ],
        0,
    );
}

#[test]
fn walk_json() {
    golden(
        "walk_322_r8_json",
        &[
            "walk",
            "--partition",
            "322",
            "--region",
            "R8",
            "--uniform",
            "--margin",
            "1",
            "--trials",
            "20000",
            "--seed",
            "3",
            "--format",
            "json",
        ],
        0,
    );
}

#[test]
fn json_output_is_reproducible() {
    let cases: [&[&str]; 3] = [
        &[
            "verify",
            "--identity",
            "cwbr-xy",
            "--partition",
            "54321",
            "--mode",
            "random",
            "--seed",
            "5",
            "--format",
            "json",
        ],
        &[
            "bijection",
            "--partition",
            "4431",
            "--samples",
            "300",
            "--seed",
            "2",
            "--variant",
            "x",
            "--format",
            "json",
        ],
        &[
            "walk",
            "--partition",
            "3211",
            "--region",
            "R6",
            "--uniform",
            "--trials",
            "30000",
            "--seed",
            "11",
            "--format",
            "json",
        ],
    ];
    for args in cases {
        let (a, code_a) = run(args);
        let (b, code_b) = run(args);
        assert_eq!(code_a, 0, "{args:?}");
        assert_eq!(code_a, code_b);
        assert_eq!(a, b, "{args:?}");
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["pass"], true);
        assert!(v["results"].as_array().is_some_and(|r| !r.is_empty()));
    }
}

#[test]
fn randomized_commands_need_a_seed() {
    let cases: [&[&str]; 3] = [
        &[
            "verify",
            "--identity",
            "cwbr",
            "--partition",
            "321",
            "--mode",
            "random",
        ],
        &["bijection", "--partition", "321", "--samples", "5"],
        &[
            "walk",
            "--partition",
            "321",
            "--region",
            "R1",
            "--uniform",
            "--trials",
            "10",
        ],
    ];
    for args in cases {
        assert_eq!(run(args).1, 2, "{args:?}");
    }
}

#[test]
fn departures_beyond_sigma_exit_with_one() {
    let (out, code) = run(&[
        "walk",
        "--partition",
        "322",
        "--region",
        "R1",
        "--uniform",
        "--trials",
        "2000",
        "--seed",
        "7",
        "--sigma",
        "0.0001",
    ]);
    assert_eq!(code, 1, "{out}");
    assert!(out.trim_end().ends_with("FAIL"));
}

#[test]
fn bad_weight_files_are_usage_errors() {
    let dir = std::env::temp_dir().join(format!("hookbranch-golden-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"x": {"1": "-2"}, "y": {}}"#).unwrap();
    let good = dir.join("good.json");
    std::fs::write(
        &good,
        r#"{"x": {"0": "1", "1": "3/2", "2": 2, "3": "1/3"}, "y": {"1": "1", "2": "5/2", "3": 1}}"#,
    )
    .unwrap();
    assert_eq!(
        run(&[
            "walk",
            "--partition",
            "21",
            "--region",
            "R1",
            "--weights",
            bad.to_str().unwrap()
        ])
        .1,
        2
    );
    let (out, code) = run(&[
        "walk",
        "--partition",
        "21",
        "--region",
        "R1",
        "--weights",
        good.to_str().unwrap(),
    ]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("total probability 1"));
    std::fs::remove_dir_all(&dir).unwrap();
}
