use entbound::cli::{run, EXIT_OK, EXIT_PARSE, EXIT_VALIDATION};

fn invoke(args: &[&str]) -> (i32, String) {
    let mut out = Vec::new();
    let code = run(std::iter::once("entbound").chain(args.iter().copied()), &mut out);
    (code, String::from_utf8(out).unwrap())
}

#[test]
fn demo_reports_worked_example() {
    let (code, out) = invoke(&["demo"]);
    assert_eq!(code, EXIT_OK, "{out}");
    for needle in ["lower bound           0.929", "tau_obs               1.210", "upper bound analytic  0.9999", "upper bound marginal  0.9808"] {
        assert!(out.contains(needle), "missing {needle:?} in\n{out}");
    }
}

#[test]
fn uniform_table_has_no_violation() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("uniform.json");
    entbound::io::save_table(&entbound::stats::ProbabilityTable::uniform(), &path).unwrap();
    let report = dir.path().join("report.json");
    let (code, out) = invoke(&["bound", "--input", path.to_str().unwrap(), "--output", report.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(out.contains("lower bound           0.0000"));
    assert!(out.contains("no violation"));
    let json: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(report).unwrap()).unwrap();
    assert_eq!(json["lower_bound"], 0.0);
}

#[test]
fn malformed_and_invalid_inputs() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"format\": ").unwrap();
    assert_eq!(invoke(&["bound", "--input", bad.to_str().unwrap()]).0, EXIT_PARSE);

    // Normalized per setting pair but signalling: Alice's marginal depends on y.
    let mut p = [0.0; 16];
    p[0] = 1.0; // (0,0): a=0,b=0
    p[4 + 3] = 1.0; // (0,1): a=1,b=1
    p[8] = 1.0; // (1,0)
    p[12] = 1.0; // (1,1)
    let table = entbound::stats::ProbabilityTable::new(p).unwrap();
    let signalling = dir.path().join("signalling.json");
    entbound::io::save_table(&table, &signalling).unwrap();
    let (code, out) = invoke(&["bound", "--input", signalling.to_str().unwrap()]);
    assert_eq!(code, EXIT_VALIDATION, "{out}");

    assert_eq!(invoke(&["optimize", "--tau", "1.6"]).0, EXIT_PARSE);
    assert_eq!(invoke(&["frobnicate"]).0, EXIT_PARSE);
}

#[test]
fn simulate_maximally_entangled_along_z() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("table.json");
    let gamma = std::f64::consts::FRAC_PI_4.to_string();
    let (code, out) = invoke(&["simulate", "--gamma", &gamma, "--output", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK, "{out}");
    let entbound::io::StatisticsInput::Full(t) = entbound::io::load(&path).unwrap() else { panic!() };
    assert!((t.get(0, 0, 0, 0) - 0.5).abs() < 1e-12);
    assert_eq!(invoke(&["simulate", "--gamma", "1.0", "--output", path.to_str().unwrap()]).0, EXIT_PARSE);
}

#[test]
fn optimize_interior_optimum() {
    let (code, out) = invoke(&["optimize", "--tau", "1.3"]);
    assert_eq!(code, EXIT_OK);
    let gamma: f64 = out
        .lines()
        .find_map(|l| l.strip_prefix("gamma*"))
        .unwrap()
        .trim()
        .parse()
        .unwrap();
    assert!(gamma > 0.05 && gamma < std::f64::consts::FRAC_PI_4 - 0.05, "{gamma}");
}

#[test]
fn verify_passes_by_default() {
    let (code, out) = invoke(&["verify"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert!(!out.contains("FAIL"));
    assert!(out.contains("PASS theorem1_maximally_entangled"));
    assert!(out.contains("PASS coefficient_domain"));
}
