use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_curve-milnor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn default_summary() {
    let o = run(&["analyze", "y^2+x^3"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.contains("zeta: (1-t^6)/((1-t^2)(1-t^3))"));
    assert!(s.contains("charpoly: t^2 - t + 1"));
    assert!(s.contains("milnor number: 2"));
    assert!(s.contains("spectrum: t^(5/6) + t^(7/6)"));
    assert!(!s.contains("jacobian"));
}

#[test]
fn selected_sections_only() {
    let s = stdout(&run(&["analyze", "y^2+x^3", "--zeta"]));
    assert!(s.contains("zeta:"));
    assert!(!s.contains("charpoly:"));
    assert!(!s.contains("motivic fiber:"));
}

#[test]
fn json_to_stdout_and_dot_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("g.dot");
    let o = run(&[
        "analyze",
        "(y^2-x^3)^2+x^7",
        "--json",
        "-",
        "--dot",
        dot.to_str().unwrap(),
        "--verify",
        "jacobian",
    ]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "curve-milnor/1");
    assert_eq!(v["milnor_number"], 17);
    assert_eq!(v["verification"]["jacobian"]["milnor_number"], 17);
    assert_eq!(v["verification"]["jacobian"]["agrees"], true);
    let dot = std::fs::read_to_string(dot).unwrap();
    assert!(dot.starts_with("graph Gs {"));
    assert!(dot.contains("B1.1.1 P=(1,1) m=14 r=2"));
}

#[test]
fn json_file_is_byte_stable() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.json");
    let b = dir.path().join("b.json");
    for p in [&a, &b] {
        assert!(run(&["analyze", "(y+x)(y^2+x^3)", "--json", p.to_str().unwrap()])
            .status
            .success());
    }
    assert_eq!(std::fs::read(a).unwrap(), std::fs::read(b).unwrap());
}

#[test]
fn arcs_verification() {
    let o = run(&[
        "analyze",
        "y^2+x^3",
        "--verify",
        "arcs",
        "--arc-prime",
        "3",
        "--arc-nmax",
        "6",
    ]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("arc identities:"));
}

#[test]
fn exit_codes() {
    let cases: [(&[&str], i32, &str); 5] = [
        (&["analyze", "y^2 +"], 2, "E_PARSE"),
        (&["analyze", "y^2 + 1"], 3, "E_NOT_VANISHING"),
        (&["analyze", "0"], 3, "E_ZERO"),
        (
            &["analyze", "(y^2-x^3)^2+x^7", "--max-tower-degree", "1"],
            4,
            "E_TOWER_LIMIT",
        ),
        (
            &["analyze", "y^4 - 2x^3y^2 - x^5y + x^6", "--max-depth", "1"],
            4,
            "E_DEPTH",
        ),
    ];
    for (args, code, tag) in cases {
        let o = run(args);
        assert_eq!(o.status.code(), Some(code), "{args:?}");
        assert!(String::from_utf8_lossy(&o.stderr).contains(tag), "{args:?}");
    }
}

#[test]
fn nonreduced_note() {
    let s = stdout(&run(&["analyze", "x^5"]));
    assert!(s.contains("motivic fiber: [mu_5]"));
    assert!(s.contains("zeta: 1/(1-t^5)"));
    assert!(s.contains("E_NONREDUCED"));
    assert!(!s.contains("milnor number"));
}
