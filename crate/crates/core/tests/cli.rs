use std::process::Command;

use odot::cli::run;

fn odot(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("odot").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn ok(args: &[&str]) -> String {
    let (code, out, err) = odot(args);
    assert_eq!(code, 0, "{args:?}: {err}");
    out
}

#[test]
fn worked_composition() {
    assert_eq!(
        ok(&["compose", "--outer", "x1^2", "--inner", "x1+1", "--via", "matrix"]),
        "1 + 2*x1 + x1^2\n"
    );
    let (code, out, err) = odot(&[
        "compose", "--outer", "x1^2", "--inner", "x1+1", "--via", "direct", "--check",
    ]);
    assert_eq!((code, out.as_str()), (0, "1 + 2*x1 + x1^2\n"));
    assert!(err.contains("agrees"));
}

#[test]
fn homogeneous_norm() {
    let out = ok(&["norm", "--rho", "2", "--poly", "x1+x2", "--homogeneous"]);
    assert!(out.starts_with("1.4142135"), "{out}");
    let out = ok(&["norm", "--bombieri", "1,1"]);
    assert!(out.starts_with("1.4142135"), "{out}");
}

#[test]
fn verify_suite_counts() {
    let (code, out, _) = odot(&[
        "verify",
        "--suite",
        "odot-laws",
        "--seed",
        "7",
        "--cases",
        "20",
    ]);
    assert_eq!(code, 0);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines.len() > 5);
    assert!(
        lines
            .iter()
            .all(|l| l.starts_with("odot-laws ") && l.ends_with(" 20/20")),
        "{out}"
    );
}

#[test]
fn exit_codes() {
    assert_eq!(odot(&["compose", "--outer", "x1", "--bogus"]).0, 2);
    assert_eq!(odot(&[]).0, 2);
    assert_eq!(odot(&["frobnicate"]).0, 2);
    let (code, _, err) = odot(&["compose", "--outer", "x3", "--inner", "x1"]);
    assert_eq!(code, 1);
    assert!(err.starts_with("error: "), "{err}");
    assert_eq!(odot(&["eval", "--poly", "x1 +", "--at", "1"]).0, 1);
    assert_eq!(odot(&["norm", "--rho", "0.5", "--poly", "x1"]).0, 1);
    assert_eq!(
        odot(&["iterate", "--poly", "x1; x1", "--arity", "1", "--times", "2"]).0,
        1
    );
    assert_eq!(odot(&["--help"]).0, 0);
}

#[test]
fn matrix_round_trip_through_files() {
    let dir = tempfile::tempdir().unwrap();
    let outer = "x1^2 - 1/3*x2; x1*x2 + 2";
    let inner = "x1 + x2^2; 1/2*x1*x2 - 1";
    let write = |name: &str, poly: &str| {
        let path = dir.path().join(name);
        std::fs::write(&path, ok(&["matrix", "--poly", poly, "--arity", "2"])).unwrap();
        format!("@{}", path.display())
    };
    let (fo, fi) = (write("outer.json", outer), write("inner.json", inner));
    let text = ok(&["compose", "--outer", outer, "--inner", inner]);
    assert_eq!(
        ok(&["compose", "--from-matrix", "--outer", &fo, "--inner", &fi]),
        text
    );
    let json = ok(&[
        "compose", "--outer", outer, "--inner", inner, "--format", "json",
    ]);
    assert_eq!(
        ok(&[
            "compose",
            "--from-matrix",
            "--outer",
            &fo,
            "--inner",
            &fi,
            "--format",
            "json"
        ]),
        json
    );

    let map_file = dir.path().join("phi.map");
    std::fs::write(&map_file, format!("# n_in=2\n{outer}\n")).unwrap();
    let at = format!("@{}", map_file.display());
    assert_eq!(ok(&["compose", "--outer", &at, "--inner", inner]), text);
}

#[test]
fn seeded_output_is_reproducible() {
    let lambda = [
        "lambda",
        "--p",
        "2",
        "--q",
        "1",
        "--samples",
        "500",
        "--seed",
        "42",
    ];
    assert_eq!(ok(&lambda), ok(&lambda));
    let lambda_json = [
        "lambda",
        "--p",
        "2",
        "--q",
        "1",
        "--samples",
        "500",
        "--seed",
        "42",
        "--format",
        "json",
    ];
    assert_eq!(ok(&lambda_json), ok(&lambda_json));
    let verify = ["verify", "--seed", "3", "--cases", "5", "--format", "json"];
    assert_eq!(ok(&verify), ok(&verify));
}

#[test]
fn seed_from_environment() {
    let bin = env!("CARGO_BIN_EXE_odot");
    let args = ["lambda", "--p", "1", "--q", "1", "--samples", "300"];
    let with_env = Command::new(bin)
        .args(args)
        .env("ODOT_SEED", "9")
        .output()
        .unwrap();
    let with_flag = Command::new(bin)
        .args(args)
        .args(["--seed", "9"])
        .env_remove("ODOT_SEED")
        .output()
        .unwrap();
    assert!(with_env.status.success());
    assert_eq!(with_env.stdout, with_flag.stdout);
    let bad = Command::new(bin)
        .args(args)
        .env("ODOT_SEED", "nope")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    let usage = Command::new(bin).arg("--nope").output().unwrap();
    assert_eq!(usage.status.code(), Some(2));
}

#[test]
fn other_verbs() {
    assert_eq!(
        ok(&["eval", "--poly", "x1^2 - x2", "--at", "1/2,-3"]),
        "13/4\n"
    );
    assert_eq!(
        ok(&[
            "eval",
            "--poly",
            "x1^2 - x2",
            "--at",
            "1/2,-3",
            "--via-matrix"
        ]),
        "13/4\n"
    );
    assert_eq!(
        ok(&["eval", "--poly", "x1*x2", "--at", "0.5,4", "--domain", "float"]),
        "2\n"
    );
    assert_eq!(ok(&["iterate", "--poly", "x1^2", "--times", "3"]), "x1^8\n");
    let exp = ok(&["exp", "--poly", "x1 + 1", "--qmax", "2", "--format", "text"]);
    assert!(exp.contains("block (2,2)\n  (2) (2) 1"), "{exp}");
    let radius = ok(&[
        "radius",
        "--geometric",
        "0.5",
        "--terms",
        "20",
        "--point",
        "1",
    ]);
    assert!(radius.starts_with("radius 0.5"), "{radius}");
    assert_eq!(radius.lines().count(), 21);
    assert_eq!(
        ok(&["radius", "--norms", "1,0.5,0.25,0.125"]),
        "radius 0.5\n"
    );
    let norm = ok(&[
        "norm", "--poly", "x1^2; x2", "--arity", "2", "--format", "json",
    ]);
    assert!(norm.contains("\"norm\""));
}
