//! Exercises the subcommands end to end through the binary: file round
//! trips, JSON side outputs, and the exit codes.

use std::process::Command;

use evencycle::graph::Graph;
use evencycle::trilayered::Trilayered;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_evencycle"))
}

#[test]
fn explore_reports_levels_and_writes_the_audit() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("host.txt");
    let json = dir.path().join("audit.json");
    let gen = bin()
        .args(["gen", "--kind", "min-degree-bipartite", "--left", "10", "--right", "10"])
        .args(["--delta", "3", "--seed", "5", "--out"])
        .arg(&input)
        .output()
        .unwrap();
    assert_eq!(gen.status.code(), Some(0));

    let out = bin()
        .args(["explore", "--input"])
        .arg(&input)
        .args(["-k", "2", "--strict", "--json"])
        .arg(&json)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{:?}", out);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("level 0: 1 chosen"));
    assert!(text.contains("all inequalities hold"));

    let audit: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert!(audit["levels"].as_array().unwrap().len() >= 2);
    let first = &audit["inequalities"][0];
    assert_eq!(first["id"], "(5)");
    assert_eq!(first["holds"], true);
}

#[test]
fn theta_modes_and_their_exit_codes() {
    let dir = tempfile::tempdir().unwrap();

    // K(6,6) clears every mode's hypothesis for k = 3, including the
    // average-degree floor of 2k
    let dense = dir.path().join("dense.txt");
    bin()
        .args(["gen", "--kind", "complete-bipartite", "--left", "6", "--right", "6", "--out"])
        .arg(&dense)
        .output()
        .unwrap();
    for mode in ["exhaustive", "min-degree", "avg-degree", "auto"] {
        let out = bin()
            .args(["theta", "--input"])
            .arg(&dense)
            .args(["-k", "3", "--mode", mode])
            .output()
            .unwrap();
        assert_eq!(out.status.code(), Some(0), "mode {}: {:?}", mode, out);
        let text = String::from_utf8(out.stdout).unwrap();
        assert!(text.contains("cycle:") && text.contains("chord:"), "mode {}", mode);
    }

    // a plain cycle has no chord: exhaustive honestly reports none
    let ring = dir.path().join("ring.txt");
    let edges: Vec<(usize, usize)> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
    std::fs::write(&ring, Graph::from_edges(8, &edges).unwrap().to_text()).unwrap();
    let out = bin()
        .args(["theta", "--input"])
        .arg(&ring)
        .args(["-k", "3", "--mode", "exhaustive"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    // the min-degree route demands degree k everywhere: precondition, not none
    let out = bin()
        .args(["theta", "--input"])
        .arg(&ring)
        .args(["-k", "3", "--mode", "min-degree"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn generated_trilayered_files_parse_back() {
    let dir = tempfile::tempdir().unwrap();
    let host_path = dir.path().join("host.txt");
    let layers_path = dir.path().join("layers.txt");
    let out = bin()
        .args(["gen", "--kind", "min-degree-trilayered"])
        .args(["--n1", "5", "--n2", "6", "--n3", "4", "--seed", "3", "--out"])
        .arg(&host_path)
        .arg("--layers-out")
        .arg(&layers_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0), "{:?}", out);

    let host = Graph::parse(&std::fs::read_to_string(&host_path).unwrap()).unwrap();
    let t =
        Trilayered::parse_layers(host, &std::fs::read_to_string(&layers_path).unwrap()).unwrap();
    assert_eq!(t.layer(1).len(), 5);
    assert_eq!(t.layer(2).len(), 6);
    assert_eq!(t.layer(3).len(), 4);

    // omitting the layer file for a trilayered kind is a usage error
    let out = bin()
        .args(["gen", "--kind", "random-trilayered", "--out"])
        .arg(dir.path().join("x.txt"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bound_and_ex_print_usable_numbers() {
    let out = bin().args(["bound", "-n", "100", "-k", "2", "--edges", "120"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("120 edges: within"), "{}", text);

    let out = bin().args(["ex", "-n", "6", "-k", "2", "--naive"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.last(), Some(&"6 7"));

    // bad flags come back as usage errors from the parser itself
    let out = bin().args(["bound", "-n", "100"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
