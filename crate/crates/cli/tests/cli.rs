use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn ped(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ped"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn path(dir: &Path, name: &str) -> String {
    dir.join(name).to_str().unwrap().to_string()
}

#[test]
fn knn_layout_validates() {
    let dir = tempfile::tempdir().unwrap();
    let (g, s) = (path(dir.path(), "k.graph"), path(dir.path(), "k.stubs"));
    let out = ped(&[
        "generate", "knn", "--n", "8", "--delta", "1/4", "-o", &g, "--stubs", &s,
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = ped(&["validate", &g, &s]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("VALID"));
}

#[test]
fn oversized_stubs_fail_validation() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "x.graph");
    let s = path(dir.path(), "x.stubs");
    fs::write(&g, "ped-graph 1\n4 2\n0 0\n4 0\n1 -1\n1 3\n0 1\n2 3\n").unwrap();
    fs::write(&s, "ped-stubs 1\n0 1/2\n1 1/2\n").unwrap();
    let out = ped(&["validate", &g, &s]);
    assert_eq!(out.status.code(), Some(1));
    fs::write(&s, "ped-stubs 1\n0 1/4\n1 1/4\n").unwrap();
    assert_eq!(ped(&["validate", &g, &s]).status.code(), Some(0));
}

#[test]
fn maxsped_rejects_three_crossings() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "three.graph");
    // One long horizontal edge crossed by three verticals.
    fs::write(
        &g,
        "ped-graph 1\n8 4\n0 0\n10 0\n2 -1\n2 1\n5 -1\n5 1\n8 -1\n8 1\n0 1\n2 3\n4 5\n6 7\n",
    )
    .unwrap();
    let out = ped(&["maxsped", &g]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not 2-planar"));
}

#[test]
fn maxsped_writes_a_valid_assignment() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "r.graph");
    let s = path(dir.path(), "r.stubs");
    let out = ped(&[
        "--seed", "5", "generate", "random", "--edges", "40", "--span", "30", "-o", &g,
    ]);
    assert_eq!(out.status.code(), Some(0));
    for flags in [&["--exact"][..], &[][..], &["--zero-one"][..]] {
        let mut args = vec!["maxsped", g.as_str(), "-o", s.as_str()];
        args.extend_from_slice(flags);
        let out = ped(&args);
        assert_eq!(out.status.code(), Some(0), "{flags:?}");
        assert!(stdout(&out).starts_with("ink "));
        assert_eq!(ped(&["validate", &g, &s]).status.code(), Some(0));
    }
}

#[test]
fn minsped_writes_a_valid_assignment() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "u.graph");
    let s = path(dir.path(), "u.stubs");
    let out = ped(&[
        "--seed",
        "2",
        "generate",
        "random",
        "--edges",
        "6",
        "--span",
        "12",
        "--unrestricted",
        "-o",
        &g,
    ]);
    assert_eq!(out.status.code(), Some(0));
    for flag in ["--relative", "--exact-oracle"] {
        let out = ped(&["minsped", &g, flag, "-o", &s]);
        assert_eq!(out.status.code(), Some(0), "{flag}");
        assert_eq!(ped(&["validate", &g, &s]).status.code(), Some(0));
    }
}

#[test]
fn generation_is_deterministic() {
    let a = ped(&["--seed", "11", "generate", "random", "--edges", "50"]);
    let b = ped(&["--seed", "11", "generate", "random", "--edges", "50"]);
    let c = ped(&["--seed", "12", "generate", "random", "--edges", "50"]);
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn maxdelta_of_two_edges() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "two.graph");
    fs::write(&g, "ped-graph 1\n4 2\n0 0\n4 0\n1 -1\n1 3\n0 1\n2 3\n").unwrap();
    let out = ped(&["maxdelta", &g]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("1/4 "));
}

#[test]
fn bounds_table_and_json() {
    let out = ped(&["bounds"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.lines().any(|l| l.trim() == "upper bound 240"));

    let out = ped(&["bounds", "--json", "--t", "1/3"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["totals"]["upper_bound"], 240);
    assert_eq!(v["middle"]["total"], 45);
    assert_eq!(v["middle"]["strips"][7]["consumption"], "24337/117649");
    assert_eq!(v["upper"]["lower_forms"][4][0], "17/81");

    assert_eq!(ped(&["bounds", "--t", "2/3"]).status.code(), Some(2));
}

#[test]
fn render_counts_stub_lines() {
    let dir = tempfile::tempdir().unwrap();
    let (g, s) = (path(dir.path(), "k.graph"), path(dir.path(), "k.stubs"));
    let svg = path(dir.path(), "k.svg");
    ped(&["generate", "knn", "--n", "8", "-o", &g, "--stubs", &s]);
    let out = ped(&["render", &g, &s, "-o", &svg]);
    assert_eq!(out.status.code(), Some(0));
    let first = fs::read_to_string(&svg).unwrap();
    assert_eq!(first.matches("<line").count(), 128);
    ped(&["render", &g, &s, "-o", &svg]);
    assert_eq!(first, fs::read_to_string(&svg).unwrap());
}

#[test]
fn unknown_subcommand_exits_2() {
    let out = ped(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Usage"));
}

#[test]
fn malformed_graph_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let g = path(dir.path(), "bad.graph");
    fs::write(&g, "not a graph\n").unwrap();
    assert_eq!(ped(&["crossings", &g]).status.code(), Some(2));
}
