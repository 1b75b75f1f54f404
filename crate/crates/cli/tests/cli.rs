use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const EXAMPLE: &str = "a*f,b*f,c*f,d*f,e*f,a*b*c*d*e";

fn synor(args: &[&str], dir: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_synor")).args(args).current_dir(dir).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn betti_table_of_the_worked_example_from_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("example.ideal");
    fs::write(&file, "# six generators\nvars: a b c d e f\na*f\nb*f\nc*f\nd*f\ne*f\na*b*c*d*e\n").unwrap();
    let o = synor(&["betti", file.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let expected = "       0 1  2  3 4 5\n\
                    total: 1 6 11 10 5 1\n    \
                    0: 1 .  .  . . .\n    \
                    1: . 5 10 10 5 1\n    \
                    2: . .  .  . . .\n    \
                    3: . .  .  . . .\n    \
                    4: . 1  1  . . .\n";
    assert_eq!(stdout(&o), expected);
}

#[test]
fn betti_variants() {
    let dir = tempfile::tempdir().unwrap();
    let o = synor(&["betti", "x^2*y"], dir.path());
    assert_eq!(stdout(&o), "       0 1\ntotal: 1 1\n    0: 1 .\n    1: . .\n    2: . 1\n");
    let o = synor(&["betti", "--field", "2", EXAMPLE], dir.path());
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("total: 1 6 11 10 5 1"));
    let o = synor(&["betti", "--format", "json", EXAMPLE], dir.path());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["t"], serde_json::json!([0, 5, 6, 4, 5, 6]));
}

#[test]
fn resolve_reports_ranks_and_certifies() {
    let dir = tempfile::tempdir().unwrap();
    for (ideal, ranks) in [("x*y,x*z,y*z", vec![1, 3, 2]), (EXAMPLE, vec![1, 6, 11, 10, 5, 1]), ("x^3", vec![1, 1])] {
        let o = synor(&["resolve", "--format", "json", ideal], dir.path());
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
        assert_eq!(v["resolution"]["ranks"], serde_json::json!(ranks));
        assert_eq!(v["certification"]["certified"], Value::Bool(true));
    }
}

#[test]
fn lattice_json_round_trips_through_shuffle_demo() {
    let dir = tempfile::tempdir().unwrap();
    let o = synor(&["lattice", "--format", "json", EXAMPLE], dir.path());
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["n"], 33);
    assert_eq!(v["labels"].as_array().unwrap().len(), 33);
    assert!(v["synors"].as_array().unwrap().iter().any(|s| s["label"] == "a*b*c*d*e*f" && s["i"] == 4));
    let file = dir.path().join("lattice.json");
    fs::write(&file, stdout(&o)).unwrap();
    let o = synor(&["shuffle-demo", file.to_str().unwrap(), "a*f", "b*f"], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("product: +1(a*b*f>b*f) -1(a*b*f>a*f)"), "{}", stdout(&o));
    let o = synor(&["lattice", "x^2"], dir.path());
    assert!(stdout(&o).starts_with("2 elements"));
}

#[test]
fn input_errors_exit_one_with_a_position() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.ideal");
    fs::write(&file, "vars: x y\nx*y\ny*q\n").unwrap();
    let o = synor(&["betti", file.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("bad.ideal:3:3"), "{}", stderr(&o));

    let o = synor(&["betti", "x*y, x*y*z"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("x*y divides x*y*z"), "{}", stderr(&o));

    let o = synor(&["betti", "--field", "6", "x"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    let o = synor(&["shuffle-demo", "x*y,x*z,y*z", "x*z>x*y*z", ""], dir.path());
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn subadditivity_passes_and_the_exact_degree_variant_leaves_a_reproducer() {
    let dir = tempfile::tempdir().unwrap();
    let o = synor(&["verify", "subadditivity", EXAMPLE], dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).ends_with("84 checks, 0 failed\n"));

    // witnesses of exactly the maximal degrees do not always exist
    let o = synor(&["verify", "subadditivity", "--exact", EXAMPLE], dir.path());
    assert_eq!(o.status.code(), Some(2));
    let reproducer = dir.path().join("synor-reproducer.txt");
    let text = fs::read_to_string(&reproducer).unwrap();
    assert!(text.contains("i1=1 i2=1 k=0"));
    let o = synor(&["verify", "subadditivity", "--exact", reproducer.to_str().unwrap()], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn subadditivity_is_tight_at_k_zero_for_powers() {
    let dir = tempfile::tempdir().unwrap();
    let o = synor(&["verify", "subadditivity", "--format", "json", "x^2,y^2,z^2"], dir.path());
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let mut tight = 0;
    for c in v["checks"].as_array().unwrap() {
        let (i1, i2, k) = (c["i1"].as_u64().unwrap(), c["i2"].as_u64().unwrap(), c["k"].as_u64().unwrap());
        if k == 0 && i1 + i2 <= 3 {
            assert_eq!(c["lhs"], c["rhs"], "{c}");
            tight += 1;
        }
    }
    assert!(tight > 0);
}

#[test]
fn decomposition_lattice_sweep_and_properties_pass() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["verify", "decomposition", EXAMPLE][..],
        &["verify", "lattices", "--max", "6"],
        &["verify", "properties", "--seed", "7", "--count", "30"],
    ] {
        let o = synor(args, dir.path());
        assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
        assert!(stdout(&o).contains(" 0 failed"));
    }
    assert!(!dir.path().join("synor-reproducer.txt").exists());
}

#[test]
fn thread_count_does_not_change_output() {
    let run = |threads: &str| {
        Command::new(env!("CARGO_BIN_EXE_synor"))
            .args(["verify", "lattices", "--max", "6"])
            .env("SYNOR_THREADS", threads)
            .output()
            .unwrap()
    };
    assert_eq!(stdout(&run("1")), stdout(&run("4")));
    assert_eq!(run("0").status.code(), Some(1));
}
