use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name).display().to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_diffuse")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("diffuse-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn decide_hantzsche_wendt() {
    let o = run(&["decide", &fixture("hw_standard.ags")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("verdict=non-diffuse\n"));
    assert!(out.contains("chain=3:0:TrivialCenter\n"));
}

#[test]
fn decide_example_verbose_shows_reduction() {
    let o = run(&["--verbose", "decide", &fixture("example_05_01_06_006.ags")]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("chain=4:1:CalabiReduce;3:0:TrivialCenter\n"));
    assert_eq!(out.lines().filter(|l| l.starts_with("conjugator=")).count(), 5);
    assert!(out.contains("kernel=dim 3\n"));
}

#[test]
fn hw_check_min88() {
    let o = run(&["hw-check", &fixture("min88.ags")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("hw=not-contained\n"));
    let o = run(&["--verbose", "hw-check", &fixture("min88.ags")]);
    assert!(stdout(&o).lines().any(|l| l.starts_with("witness=4*")));
}

#[test]
fn hw_check_standard_prints_pair() {
    let o = run(&["hw-check", "--explore-bound", "10", &fixture("hw_standard.ags")]);
    let out = stdout(&o);
    assert!(out.contains("hw=contained\n"));
    assert_eq!(out.lines().filter(|l| l.starts_with("alpha=")).count(), 4);
}

#[test]
fn invalid_group_exits_2() {
    let o = run(&["decide", &fixture("infinite_dihedral.ags")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("torsion"));
    let o = run(&["validate", &fixture("infinite_dihedral.ags")]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("valid=false\n"));
    let o = run(&["decide", "/nonexistent/file.ags"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn parse_error_reports_position() {
    let p = scratch("bad.ags");
    std::fs::write(&p, "ags 1\ndim 1\ngen\n1 0\n0 2\n").unwrap();
    let o = run(&["validate", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["decide"]).status.code(), Some(1));
    assert_eq!(run(&["classify", "--format", "xml", "."]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn validate_and_info() {
    let o = run(&["validate", &fixture("min88.ags")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("holonomy_order=8\n"));
    let o = run(&["info", &fixture("min88.ags")]);
    let out = stdout(&o);
    for line in
        ["dimension=5", "betti=0", "holonomy_order=8", "solvable=true", "sylow_cyclic=false", "shortcut=inconclusive"]
    {
        assert!(out.lines().any(|l| l == line), "{line}");
    }
}

#[test]
fn reduce_writes_kernel() {
    let out_file = scratch("kernel.ags");
    let o = run(&["reduce", &fixture("example_05_01_06_006.ags"), "--out", out_file.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("k=1\nkernel_dimension=3\n"));
    let o = run(&["decide", out_file.to_str().unwrap()]);
    assert!(stdout(&o).contains("chain=3:0:TrivialCenter\n"));
    assert_eq!(run(&["reduce", &fixture("hw_standard.ags")]).status.code(), Some(2));
}

#[test]
fn witness_check_modes() {
    let set = scratch("set.ags");
    std::fs::write(&set, "ags 1\ndim 1\nelt\n1 0\n0 1\nelt\n1 1\n0 1\nelt\n1 2\n0 1\n").unwrap();
    let o = run(&["witness-check", &fixture("z1.ags"), set.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "set_size=3\nextremal_points=2\ncertificate=false\n");
    let o = run(&["witness-check", &fixture("hw_standard.ags"), "--radius", "2"]);
    let out = stdout(&o);
    assert!(out.starts_with("ball_size=57\npeeled_size=57\ncertificate=true\n"));
    let cert = scratch("cert.ags");
    std::fs::write(&cert, out.lines().skip(3).map(|l| format!("{l}\n")).collect::<String>()).unwrap();
    let o = run(&["witness-check", &fixture("hw_standard.ags"), cert.to_str().unwrap()]);
    assert!(stdout(&o).ends_with("extremal_points=0\ncertificate=true\n"));
    let o = run(&["witness-check", &fixture("hw_standard.ags"), "--radius", "4", "--max-size", "100"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn classify_is_deterministic() {
    let cat = fixture("catalog");
    let one = run(&["classify", &cat, "--jobs", "1"]);
    let four = run(&["classify", &cat, "--jobs", "4"]);
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    let csv = stdout(&one);
    assert!(csv.starts_with("name,dimension,betti,holonomy_order,solvable,sylow_cyclic,verdict,chain\n"));
    assert_eq!(csv.lines().count(), 88);
    assert_eq!(csv.lines().filter(|l| l.contains(",non-diffuse,")).count(), 18);
    let json = stdout(&run(&["classify", &cat, "--format", "json", "--jobs", "2"]));
    assert!(json.contains("\"non_diffuse\": 17"));
    let table = stdout(&run(&["classify", &cat, "--format", "table"]));
    assert!(table.lines().any(|l| l.split_whitespace().collect::<Vec<_>>() == ["4", "74", "17", "57"]));
}

#[test]
fn classify_with_hw_column_and_invalid_entries() {
    let o = run(&[
        "classify",
        &fixture("hw_standard.ags"),
        &fixture("min88.ags"),
        &fixture("infinite_dihedral.ags"),
        "--hw",
    ]);
    assert_eq!(o.status.code(), Some(2));
    let out = stdout(&o);
    assert!(out.starts_with("name,dimension,betti,holonomy_order,solvable,sylow_cyclic,verdict,chain,hw\n"));
    assert!(out.contains("hantzsche-wendt,3,0,4,true,false,non-diffuse,3:0:TrivialCenter,contained\n"));
    assert!(out.contains("min.88.1.1.15,5,0,8,true,false,non-diffuse,5:0:TrivialCenter,not-contained\n"));
    assert!(String::from_utf8_lossy(&o.stderr).contains("invalid entries excluded"));
}
