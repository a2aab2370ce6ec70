use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use behavnet::Network;
use behavnet_cli::model::{network_to_file, to_json};
use behavnet_cli::{parse_model, Model};
use behavnet_testkit::{self as tk, SvarShape};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use tempfile::TempDir;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_behavnet"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn write(dir: &TempDir, name: &str, contents: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, contents).unwrap();
    p
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).unwrap()
}

#[test]
fn analyze_circuit() {
    let circuit = data("circuit.json");
    let o = run(&["analyze", path_str(&circuit)]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("interconnection: p=3  n=2"));
    assert!(text.contains("regular: true"));
    assert!(text.contains("regular_feedback: false"));

    let v = json(&run(&["analyze", path_str(&circuit), "--json"]));
    assert_eq!(v["p"], 3);
    assert_eq!(v["n"], 2);
    assert_eq!(v["regular_feedback"], false);
    for c in v["components"].as_array().unwrap() {
        assert_eq!((c["p"].as_u64(), c["n"].as_u64()), (Some(1), Some(1)));
    }
}

#[test]
fn analyze_reports_the_incidence_matrix() {
    let v = json(&run(&["analyze", path_str(&data("eq4.json")), "--json"]));
    assert_eq!(
        v["incidence"],
        serde_json::json!([[1, 1, 1, 0], [0, 1, 0, 1], [0, 0, 1, 1], [0, 0, 1, 1]])
    );
}

#[test]
fn analyze_autonomous_component() {
    let dir = TempDir::new().unwrap();
    // det = (s+1)(s+2) - 2 = s^2 + 3s, degree 2
    let f = write(
        &dir,
        "auto.json",
        r#"{"version": 1, "network": {"signals": ["a", "b"],
            "components": [{"rows": [[[1, 1], [1]], [[2], [2, 1]]]}]}}"#,
    );
    let v = json(&run(&["analyze", path_str(&f), "--json"]));
    assert_eq!((v["p"].as_u64(), v["n"].as_u64()), (Some(2), Some(2)));
    assert_eq!(v["regular"], true);
    assert_eq!(v["components"][0]["name"], "Σ1");
}

#[test]
fn analyze_is_invariant_under_unimodular_rewriting() {
    let dir = TempDir::new().unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for k in 0..8 {
        let net = tk::regular_feedback_network(&mut rng, SvarShape::default());
        let rewritten = Network::new(
            net.space().clone(),
            net.components()
                .iter()
                .map(|c| {
                    let (u, _) = tk::unimodular(&mut rng, c.kernel.r().rows(), 4, 1);
                    (c.name.clone(), u.matmul(c.kernel.r()).unwrap())
                })
                .collect(),
        )
        .unwrap();
        let a = write(
            &dir,
            &format!("a{k}.json"),
            &to_json(&network_to_file(&net, None)),
        );
        let b = write(
            &dir,
            &format!("b{k}.json"),
            &to_json(&network_to_file(&rewritten, None)),
        );
        let ra = run(&["analyze", path_str(&a)]);
        let rb = run(&["analyze", path_str(&b)]);
        assert_eq!(ra.status.code(), Some(0));
        assert_eq!(stdout(&ra), stdout(&rb));
    }
}

#[test]
fn signal_graph_matches_golden_dot() {
    let eq4 = data("eq4.json");
    let golden = fs::read_to_string(data("eq4_signal.dot")).unwrap();
    let o = run(&["graph", path_str(&eq4), "--kind", "signal"]);
    assert_eq!(stdout(&o), golden);
    // deterministic
    assert_eq!(
        stdout(&run(&["graph", path_str(&eq4), "--kind", "signal"])),
        golden
    );

    let v = json(&run(&[
        "graph",
        path_str(&eq4),
        "--kind",
        "signal",
        "--format",
        "json",
    ]));
    assert_eq!(v["vertices"].as_array().unwrap().len(), 4);
    let edges: Vec<Vec<String>> = v["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| serde_json::from_value(e["members"].clone()).unwrap())
        .collect();
    assert_eq!(
        edges,
        [
            vec!["w1", "w2", "w3"],
            vec!["w2", "w4"],
            vec!["w3", "w4"],
            vec!["w3", "w4"]
        ]
    );
}

#[test]
fn system_graph_json() {
    let v = json(&run(&[
        "graph",
        path_str(&data("eq4.json")),
        "--kind",
        "system",
        "--format",
        "json",
    ]));
    let edges: Vec<Vec<String>> = v["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| serde_json::from_value(e["members"].clone()).unwrap())
        .collect();
    assert_eq!(
        edges,
        [
            vec!["Σ1"],
            vec!["Σ1", "Σ2"],
            vec!["Σ1", "Σ3", "Σ4"],
            vec!["Σ2", "Σ3", "Σ4"]
        ]
    );
}

#[test]
fn svar_digraph_and_kind_mismatch() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("g.dot");
    let o = run(&[
        "graph",
        path_str(&data("example3_svar.json")),
        "--kind",
        "svar",
        "-o",
        path_str(&out),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let dot = fs::read_to_string(&out).unwrap();
    assert_eq!(dot.matches(" -> ").count(), 4);
    for edge in ["v0 -> v1", "v1 -> v0", "v3 -> v0", "v3 -> v2"] {
        assert!(dot.contains(edge), "{edge} missing from\n{dot}");
    }
    let o = run(&["graph", path_str(&data("circuit.json")), "--kind", "svar"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("svar"));
}

#[test]
fn unconstrained_component_has_no_edges() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "free.json",
        r#"{"version": 1, "network": {"signals": ["a", "b"], "components": [{"name": "F", "rows": []}]}}"#,
    );
    let o = run(&["graph", path_str(&f)]);
    assert_eq!(o.status.code(), Some(0));
    let dot = stdout(&o);
    assert!(!dot.contains("--"));
    assert!(dot.contains("v0 [label=\"a\"]"));
    assert!(dot.contains("// empty net \"F\""));
}

#[test]
fn svar_round_trip_through_files() {
    let dir = TempDir::new().unwrap();
    let net_file = dir.path().join("net.json");
    let o = run(&[
        "svar",
        path_str(&data("example3_svar.json")),
        "--direction",
        "to",
        "-o",
        path_str(&net_file),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&run(&["analyze", path_str(&net_file), "--json"]));
    assert_eq!(
        v["incidence"],
        serde_json::json!([[1, 1, 0, 1], [1, 1, 0, 0], [0, 0, 1, 1]])
    );
    assert_eq!(v["regular_feedback"], true);

    let o = run(&["svar", path_str(&net_file), "--direction", "from"]);
    assert_eq!(o.status.code(), Some(0));
    let back = parse_model(&stdout(&o)).unwrap();
    let orig = parse_model(&fs::read_to_string(data("example3_svar.json")).unwrap()).unwrap();
    let (Model::Svar(back), Model::Svar(orig)) = (back, orig) else {
        panic!("svar payloads expected");
    };
    assert_eq!(back.x(), orig.x());
    assert_eq!(back.q(), orig.q());
    let v = json(&o);
    assert_eq!(v["permutation"]["order"], serde_json::json!([0, 1, 2, 3]));
}

#[test]
fn svar_from_circuit_names_the_violated_hypothesis() {
    let o = run(&[
        "svar",
        path_str(&data("circuit.json")),
        "--direction",
        "from",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("not a regular feedback interconnection"));
}

#[test]
fn merge_reports() {
    let o = run(&["merge", path_str(&data("circuit.json"))]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("partition: {1},{2,3}"));
    assert!(text.contains("k: 2"));
    assert!(text.contains("regular_feedback: true"));

    let v = json(&run(&["merge", path_str(&data("eq4.json")), "--json"]));
    assert_eq!(v["partition"], serde_json::json!([[1], [2], [3], [4]]));

    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "dup.json",
        r#"{"version": 1, "network": {"signals": ["a", "b"], "components": [
            {"rows": [[[0, 1], [1]]]}, {"rows": [[[0, 1], [1]]]}]}}"#,
    );
    let v = json(&run(&[
        "merge",
        path_str(&f),
        "--mode",
        "regular",
        "--json",
    ]));
    assert_eq!(v["partition"], serde_json::json!([[1, 2]]));
    assert_eq!(v["k"], 1);
}

fn input_names(model: &Path) -> Vec<String> {
    let m = parse_model(&fs::read_to_string(model).unwrap()).unwrap();
    let k = m.to_network().interconnect();
    let part = k.io_partition().unwrap();
    let names = k.space().column_names();
    part.input_cols.iter().map(|&c| names[c].clone()).collect()
}

#[test]
fn simulate_and_check() {
    let dir = TempDir::new().unwrap();
    let merged = dir.path().join("merged.json");
    run(&[
        "merge",
        path_str(&data("circuit.json")),
        "-o",
        path_str(&merged),
    ]);
    let inputs = input_names(&merged);
    assert_eq!(inputs.len(), 1);

    // zero input, zero initial window: zero trajectory
    let zeros = write(&dir, "u0.csv", &format!("{}\n0\n0\n0\n0\n", inputs[0]));
    let o = run(&[
        "simulate",
        path_str(&merged),
        "--input",
        path_str(&zeros),
        "--horizon",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("V,V_C,I1,I2"));
    assert!(lines.all(|l| l == "0,0,0,0"));

    let u = write(
        &dir,
        "u.csv",
        &format!("{}\n1\n-2\n1/3\n0\n5\n0\n7\n", inputs[0]),
    );
    let traj = dir.path().join("traj.csv");
    let o = run(&[
        "simulate",
        path_str(&merged),
        "--input",
        path_str(&u),
        "--horizon",
        "7",
        "-o",
        path_str(&traj),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    for model in [merged.clone(), data("circuit.json")] {
        let o = run(&["check", path_str(&model), "--trajectory", path_str(&traj)]);
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).starts_with("member"));
    }

    // disturb one sample
    let text = fs::read_to_string(&traj).unwrap();
    let mut rows: Vec<String> = text.lines().map(str::to_string).collect();
    let rest = rows[3].split_once(',').unwrap().1.to_string();
    rows[3] = format!("99,{rest}");
    let bad = write(&dir, "bad.csv", &(rows.join("\n") + "\n"));
    let o = run(&[
        "check",
        path_str(&data("circuit.json")),
        "--trajectory",
        path_str(&bad),
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).starts_with("not a member: first violation at t="));
}

#[test]
fn static_system_copies_its_input() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "static.json",
        r#"{"version": 1, "network": {"signals": ["y", "u"], "components": [{"rows": [[[1], [-1]]]}]}}"#,
    );
    let u = write(&dir, "u.csv", "u\n3\n-1/2\n7\n");
    let o = run(&[
        "simulate",
        path_str(&f),
        "--input",
        path_str(&u),
        "--horizon",
        "3",
    ]);
    assert_eq!(stdout(&o), "y,u\n3,3\n-1/2,-1/2\n7,7\n");
}

#[test]
fn simulate_reports_bad_initial_data_and_short_inputs() {
    let dir = TempDir::new().unwrap();
    // y1(t+1) = u(t), y2(t+2) = y1(t): y1(1) is fixed by u(0)
    let f = write(
        &dir,
        "lags.json",
        r#"{"version": 1, "network": {"signals": ["y1", "y2", "u"], "components": [
            {"rows": [[[0, 1], [], [-1]]]}, {"rows": [[[-1], [0, 0, 1], []]]}]}}"#,
    );
    let u = write(&dir, "u.csv", "u\n4\n0\n0\n");
    let init = write(&dir, "init.csv", "y1,y2\n0,0\n0,0\n");
    let o = run(&[
        "simulate",
        path_str(&f),
        "--input",
        path_str(&u),
        "--init",
        path_str(&init),
        "--horizon",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("initial"), "{}", stderr(&o));
    let o = run(&[
        "simulate",
        path_str(&f),
        "--input",
        path_str(&u),
        "--horizon",
        "5",
    ]);
    assert_eq!(o.status.code(), Some(1));
    let o = run(&[
        "simulate",
        path_str(&f),
        "--input",
        path_str(&u),
        "--horizon",
        "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn malformed_input_exits_with_2() {
    let dir = TempDir::new().unwrap();
    let cases = [
        (
            r#"{"version": 1, "network": {"signals": ["a"], "components": [{"rows": [[[0.5]]]}]}}"#,
            "floating-point",
        ),
        (
            r#"{"version": 2, "network": {"signals": ["a"], "components": [{"rows": [[[1]]]}]}}"#,
            "version",
        ),
        (
            r#"{"version": 1, "network": {"signals": ["a"], "components": [{"signals": ["b"], "rows": []}]}}"#,
            "unknown signal",
        ),
        (
            r#"{"version": 1, "network": {"signals": ["a", "b"], "components": [{"rows": [[[1]]]}]}}"#,
            "expected 2 entries",
        ),
        (
            r#"{"version": 1, "network": {"signals": ["a"], "components": [{"rows": [[["1/0"]]]}]}}"#,
            "invalid rational",
        ),
        ("{\"version\": 1,\n \"network\": }", "line 2"),
        (r#"{"version": 1}"#, "exactly one"),
    ];
    for (k, (text, needle)) in cases.iter().enumerate() {
        let f = write(&dir, &format!("bad{k}.json"), text);
        let o = run(&["analyze", path_str(&f)]);
        assert_eq!(o.status.code(), Some(2), "case {k}");
        assert!(stderr(&o).contains(needle), "case {k}: {}", stderr(&o));
    }
    let o = run(&["analyze", "/nonexistent/model.json"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn invalid_svar_is_a_hypothesis_violation() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "sing.json",
        r#"{"version": 1, "svar": {"X": [[[0, 1], [0, 1]], [[0, 1], [0, 1]]]}}"#,
    );
    let o = run(&["analyze", path_str(&f)]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("singular"), "{}", stderr(&o));
}

#[test]
fn written_models_parse_back() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..10 {
        let net = tk::regular_feedback_network(&mut rng, SvarShape::default());
        let Model::Network(back) = parse_model(&to_json(&network_to_file(&net, None))).unwrap()
        else {
            panic!("network payload expected");
        };
        assert_eq!(back, net);
    }
}
