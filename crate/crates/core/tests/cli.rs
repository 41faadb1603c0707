mod common;

use std::process::{Command, Output};

use common::*;
use spinorial::report::{basis_section, Payload, Report};
use spinorial::text::render_multivector;
use spinorial::unitary::{induce_idempotent, standard_structure};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spinorial"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn classify() {
    let out = run(&["classify", "--signature", "3,4"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "C(8), k=3, ideal_dim=16\n");
    let out = run(&["classify", "--signature", "1,0"]);
    assert_eq!(stdout(&out), "R(1)⊕R(1), k=1, ideal_dim=1\n");
}

#[test]
fn classify_rejects_empty_signature() {
    for bad in ["0,0", "3", "x,y", "9,9"] {
        let out = run(&["classify", "--signature", bad]);
        assert!(!out.status.success(), "{bad}");
        assert!(stdout(&out).is_empty());
        assert!(!stderr(&out).is_empty());
    }
}

#[test]
fn ideal_line_counts() {
    for (s, lines) in [("3,3", 8), ("3,4", 16), ("3,5", 32)] {
        let out = run(&["ideal", "--signature", s, "--structure", "u3"]);
        assert!(out.status.success());
        assert_eq!(basis_section(&stdout(&out)).len(), lines, "{s}");
    }
    let out = run(&["ideal", "--signature", "2,2", "--generators", "e13,e24"]);
    assert!(out.status.success());
    assert_eq!(basis_section(&stdout(&out)).len(), 4);
}

#[test]
fn ideal_rejects_wrong_structure() {
    let out = run(&["ideal", "--signature", "3,6", "--structure", "u3"]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("unsupported signature"));
    let out = run(&["ideal", "--signature", "3,3", "--structure", "v3"]);
    assert!(!out.status.success());
    let out = run(&["ideal", "--signature", "3,3"]);
    assert!(!out.status.success());
}

#[test]
fn project() {
    let out = run(&["project", "--signature", "5,2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("pairs: (1,6), (2,7)"));
    assert!(text.contains("extra generators: e{3}\n"));
    assert!(text.contains("σ*(h) = P^ℚ(ω̃₀) ∧ σ*(e): holds"));
    let out = run(&["project", "--signature", "2,5"]);
    assert!(stdout(&out).contains("extra generators: e{5,6,7}\n"));
    let out = run(&["project", "--signature", "3,4"]);
    assert!(!out.status.success());
    assert!(stdout(&out).is_empty());
}

#[test]
fn recover_from_files() {
    let dir = tempfile::tempdir().unwrap();
    let f = induce_idempotent(3, sig(3, 3)).unwrap().f;
    let path = dir.path().join("f.txt");
    std::fs::write(&path, render_multivector(&f) + "\n").unwrap();
    let path = path.to_str().unwrap();
    let j0 = standard_structure(3).unwrap().j;

    for s in ["3,3", "3,4"] {
        let out = run(&[
            "recover",
            "--signature",
            s,
            "--idempotent",
            path,
            "--format",
            "json",
        ]);
        assert!(out.status.success(), "{}", stderr(&out));
        let report = Report::from_json(&stdout(&out)).unwrap();
        let Payload::Structure(st) = report.payload else {
            panic!("expected a structure");
        };
        assert_eq!(st.j, j0);
        assert_eq!(render_multivector(&st.omega), "e{1,4} + e{2,5} + e{3,6}");
    }

    let zero = dir.path().join("zero.txt");
    std::fs::write(&zero, "0").unwrap();
    let out = run(&[
        "recover",
        "--signature",
        "3,3",
        "--idempotent",
        zero.to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    assert!(stderr(&out).contains("not a Kahler idempotent"));

    let bad = dir.path().join("bad.txt");
    std::fs::write(&bad, "1/8 +\n e{1,1}").unwrap();
    let out = run(&[
        "recover",
        "--signature",
        "3,3",
        "--idempotent",
        bad.to_str().unwrap(),
    ]);
    assert!(!out.status.success());
    assert!(
        stderr(&out).contains("line 2, column 6"),
        "{}",
        stderr(&out)
    );
}

#[test]
fn verify_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.txt");
    std::fs::write(&path, "1/2 + 1/2*e13").unwrap();
    let out = run(&[
        "verify",
        "--signature",
        "1,2",
        "--idempotent",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("primitive: yes"), "{text}");
    assert!(text.contains("generators: e{1,3}"));
}

#[test]
fn kahler() {
    let out = run(&["kahler", "--n", "2"]);
    assert_eq!(
        stdout(&out),
        "P(omega_0) on R^4 = 1 + e{1,3} + e{2,4} - e{1,2,3,4}\n"
    );
    let out = run(&["kahler", "--n", "1", "--rational"]);
    assert_eq!(stdout(&out), "P^Q(omega_0) on R^2 = 1/2 + 1/2*e{1,2}\n");
    assert!(!run(&["kahler", "--n", "0"]).status.success());
}

#[test]
fn json_output_round_trips_and_is_deterministic() {
    let args = [
        "ideal",
        "--signature",
        "3,4",
        "--structure",
        "u3",
        "--format",
        "json",
    ];
    let a = stdout(&run(&args));
    let b = stdout(&run(&args));
    assert_eq!(a, b);
    let report = Report::from_json(&a).unwrap();
    assert_eq!(report.to_json(), a);
    assert_eq!(report.format_version, 1);
    assert_eq!(report.command, "ideal");
}

#[test]
fn output_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.txt");
    let out = run(&[
        "classify",
        "--signature",
        "3,5",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(stdout(&out).is_empty());
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        "H(8), k=3, ideal_dim=32\n"
    );
}
