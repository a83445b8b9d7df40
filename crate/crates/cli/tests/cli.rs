use std::process::{Command, Output};

fn repvar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_repvar"))
        .args(args)
        .env_remove("REPVAR_TOL")
        .output()
        .expect("spawn repvar")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn first_line(args: &[&str]) -> String {
    let o = repvar(args);
    assert!(o.status.success(), "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
    stdout(&o).lines().next().unwrap().to_string()
}

#[test]
fn documented_examples() {
    assert_eq!(first_line(&["bs-count", "--graph", "theta", "--level", "3"]), "4");
    assert_eq!(first_line(&["polytope", "--graph", "theta", "--volume", "exact"]), "1/3 * pi^3");
    assert_eq!(first_line(&["verlinde", "--genus", "2", "--level", "3"]), "4");
    assert_eq!(first_line(&["sphere-bs", "--alpha", "2"]), "-1 1");
    assert_eq!(first_line(&["sphere-bs", "--alpha", "2", "--uncorrected"]), "-2 0 2");
}

#[test]
fn trace_poly_prints_graded_order() {
    assert_eq!(
        first_line(&["trace-poly", "--word", "1 2 -1 -2"]),
        "-x*y*z + y^2 + x^2 + z^2 - 2"
    );
    assert_eq!(first_line(&["trace-poly", "--two-bridge", "3", "1"]), "y - 1");
}

#[test]
fn config_echo_carries_seed_and_tolerance() {
    let o = repvar(&["polytope", "--graph", "theta", "--volume", "mc", "--samples", "5000", "--seed", "9"]);
    let out = stdout(&o);
    let last = out.lines().last().unwrap();
    assert!(last.starts_with("# config command=polytope seed=9 tol=1e-8"), "{last}");
    assert!(last.contains("samples=5000"));
}

#[test]
fn env_tolerance_is_echoed() {
    let o = Command::new(env!("CARGO_BIN_EXE_repvar"))
        .args(["cohomology", "--surface", "2"])
        .env("REPVAR_TOL", "1e-6")
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).contains("tol=1e-6"));
    let flag = repvar(&["cohomology", "--surface", "2", "--tol", "1e-7"]);
    assert!(stdout(&flag).contains("tol=1e-7"));
}

#[test]
fn identical_argv_gives_identical_bytes() {
    for args in [
        &["polytope", "--graph", "dumbbell", "--volume", "mc", "--samples", "200000", "--seed", "3"][..],
        &["cohomology", "--surface", "3", "--seed", "5", "--format", "json"],
        &["torsion", "--surface", "2", "--seed", "1"],
        &["bs-count", "--graph", "chain:3", "--level", "6", "--list"],
        &["zero-set", "--two-bridge", "7", "3", "--resolution", "32"],
    ] {
        let a = repvar(args);
        let b = repvar(args);
        assert!(a.status.success(), "{args:?}");
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn json_output_uses_rational_strings() {
    let o = repvar(&["polytope", "--graph", "theta", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["volume"]["coefficient"], "1/3");
    assert_eq!(v["result"]["volume"]["power"], 3);
    assert_eq!(v["config"]["seed"], "0");
    let o = repvar(&["torus-knot", "3", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["arcs"][0]["lo_over_pi"], "1/6");
    assert_eq!(v["result"]["arcs"][0]["hi_over_pi"], "5/6");
}

#[test]
fn zero_set_csv_header() {
    let o = repvar(&["zero-set", "--two-bridge", "5", "3", "--resolution", "16", "--format", "csv"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("x,y,branch\n"));
    assert!(out.contains(",irreducible\n") && out.contains(",abelian\n"));
}

#[test]
fn graph_from_file_and_output_path() {
    let dir = std::env::temp_dir().join(format!("repvar-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let graph = dir.join("theta.json");
    std::fs::write(&graph, r#"{"vertices": 2, "edges": [[0,1],[0,1],[0,1]]}"#).unwrap();
    let out = dir.join("out.txt");
    let o = repvar(&[
        "bs-count",
        "--graph",
        graph.to_str().unwrap(),
        "--level",
        "3",
        "--output",
        out.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert!(std::fs::read_to_string(&out).unwrap().starts_with("4\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn regularity_of_trefoil_arc() {
    let o = repvar(&["regularity", "--torus-knot", "3", "2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("regular true\n"), "{out}");
    assert!(out.contains("h1_manifold 1\nh1_boundary 2\n"));
}

#[test]
fn validation_errors_exit_2() {
    for args in [
        &["no-such-command"][..],
        &["bs-count", "--graph", "theta", "--level", "3", "--bogus"],
        &["polytope", "--graph", "/nonexistent/graph.json"],
        &["polytope", "--graph", "pentagon"],
        &["verlinde", "--genus", "1", "--level", "5"],
        &["torus-knot", "4", "2"],
        &["sphere-bs", "--alpha", "1.5"],
        &["cohomology", "--surface", "2", "--format", "csv"],
        &["cohomology", "--surface", "2", "--tol", "2"],
    ] {
        assert_eq!(repvar(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn relator_failure_exits_3() {
    let dir = std::env::temp_dir().join(format!("repvar-cli-rep-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let pres = dir.join("z2.json");
    std::fs::write(&pres, r#"{"generators": 2, "relators": [[1, 2, -1, -2]]}"#).unwrap();
    let rep = dir.join("rep.json");
    // i and j anticommute, so the commutator is -1
    std::fs::write(&rep, "[[0, 1, 0, 0], [0, 0, 1, 0]]").unwrap();
    let args = ["cohomology", "--presentation", pres.to_str().unwrap(), "--rep", rep.to_str().unwrap()];
    assert_eq!(repvar(&args).status.code(), Some(3));
    std::fs::write(&rep, "[[0, 1, 0, 0], [0, 1, 0, 0]]").unwrap();
    let o = repvar(&args);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("h0 1\nh1 2\nh2 1\n"));
    std::fs::remove_dir_all(&dir).unwrap();
}
