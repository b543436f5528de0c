use std::process::{Command, Output};

fn satake(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_satake"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn basic_gl2_golden() {
    let o = satake(&["basic", "--preset", "group:gl2", "--truncate", "3"]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "lambda\tcoefficient\n0,0\t1\n1,-1\tq^-1 - 1\n2,-2\tq^-2 - q^-1\n3,-3\tq^-3 - q^-2\n"
    );
}

#[test]
fn inverse_satake_gl2_golden_head() {
    let o = satake(&[
        "inverse-satake",
        "--preset",
        "group:gl2",
        "--rep",
        "std",
        "--truncate",
        "4",
    ]);
    assert!(o.status.success());
    assert_eq!(
        stdout(&o),
        "lambda\tseries\thecke\n\
         0,0\t1\t1\n\
         0,1\t1\tq^-1/2\n\
         0,2\t1\tq^-1\n\
         0,3\t1\tq^-3/2\n\
         0,4\t1\tq^-2\n\
         1,1\tq^-1\tq^-1\n\
         1,2\tq^-1\tq^-3/2\n"
    );
}

#[test]
fn output_is_byte_deterministic() {
    let args = [
        "inverse-satake",
        "--preset",
        "group:gl3",
        "--truncate",
        "7",
        "--format",
        "json",
    ];
    let a = satake(&args);
    let b = satake(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.tsv");
    let o = satake(&[
        "inverse-satake",
        "--preset",
        "group:gl2",
        "--truncate",
        "3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("lambda\tseries\thecke\n0,0\t1\t1\n"));
}

#[test]
fn datum_file_round_trip_through_the_binary() {
    let dir = tempfile::tempdir().unwrap();
    for preset in ["group:gl3", "sp2n_gl2n:2", "whittaker:sp4"] {
        let path = dir.path().join("datum.toml");
        let o = satake(&["datum", "--preset", preset, "--out", path.to_str().unwrap()]);
        assert!(o.status.success());
        let again = satake(&["datum", "--datum-file", path.to_str().unwrap()]);
        assert!(again.status.success());
        assert_eq!(stdout(&again), std::fs::read_to_string(&path).unwrap());
        let from_preset = satake(&["basic", "--preset", preset, "--truncate", "4"]);
        let from_file = satake(&[
            "basic",
            "--datum-file",
            path.to_str().unwrap(),
            "--truncate",
            "4",
        ]);
        assert_eq!(from_preset.stdout, from_file.stdout);
    }
}

#[test]
fn exit_statuses() {
    let o = satake(&[
        "inverse-satake",
        "--preset",
        "group:sl2",
        "--lowest-weight",
        "-1",
    ]);
    assert_eq!(o.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&o.stderr).contains("rho"));

    let o = satake(&["inverse-satake", "--preset", "group:gl9"]);
    assert_eq!(o.status.code(), Some(2));

    let o = satake(&["basic"]);
    assert_eq!(o.status.code(), Some(2));

    let o = satake(&["frobnicate"]);
    assert_eq!(o.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(
        &path,
        "name = \"bad\"\nrank = 2\ncone = [[1, -1]]\nrho_px = [0, 0]\n\
         [[reflection]]\nroot = [1, -1]\ncoroot = [1, -1]\n\
         [[theta]]\ntheta = [0, 1]\nsigma = 1\nr = 1\n",
    )
    .unwrap();
    let o = satake(&["basic", "--datum-file", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("Theta+"));
}

#[test]
fn verify_reports() {
    let o = satake(&[
        "verify",
        "li",
        "--preset",
        "group:gl2",
        "--rep",
        "std",
        "--truncate",
        "8",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("status: pass"));
    let o = satake(&["verify", "denominator", "--preset", "group:gl3"]);
    assert_eq!(
        stdout(&o),
        "suite: denominator\ndatum: group:gl3\nstatus: pass\nchecked: 1\n"
    );
    let o = satake(&[
        "verify",
        "orthogonality",
        "--preset",
        "sp2n_gl2n:2",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["failure"], serde_json::Value::Null);
}
