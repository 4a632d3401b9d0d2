//! End-to-end checks of the binary: formats round-trip and separate
//! processes agree with each other.

use std::io::Write;
use std::process::{Command, Output, Stdio};

use outerpack::gadgets;
use outerpack::Graph;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_outerpack"))
}

fn run(args: &[&str], stdin: Option<&str>) -> Output {
    let mut cmd = bin();
    cmd.args(args).stdin(Stdio::piped()).stdout(Stdio::piped()).stderr(Stdio::piped());
    let mut child = cmd.spawn().expect("spawn");
    if let Some(text) = stdin {
        child.stdin.as_mut().unwrap().write_all(text.as_bytes()).unwrap();
    }
    drop(child.stdin.take());
    child.wait_with_output().expect("wait")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn gadget_round_trip_preserves_identifiers() {
    for name in ["ex13", "g1", "g3", "unit", "petersen", "h"] {
        let out = run(&["gadget", name], None);
        assert!(out.status.success());
        let text = stdout(&out);
        let parsed = Graph::parse_text(&text).expect("gadget output parses");
        let reference = match name {
            "ex13" => gadgets::example_c4_two_ears(),
            "g1" => gadgets::gadget_g1(false),
            "g3" => gadgets::gadget_g3(false),
            "unit" => gadgets::double_triangle_unit(),
            "petersen" => gadgets::petersen(),
            "h" => gadgets::gadget_h(),
            _ => unreachable!(),
        };
        assert_eq!(parsed, reference.graph, "{name} round trip");
        // Label lines survive as comments.
        for label in reference.labels.keys() {
            assert!(text.contains(&format!("# label {label} ")));
        }
    }
}

#[test]
fn solve_exit_codes_match_the_sharpness_example() {
    let ex13 = stdout(&run(&["gadget", "ex13"], None));
    let unsat = run(&["solve", "--sequence", "1,1,3"], Some(&ex13));
    assert_eq!(unsat.status.code(), Some(1));
    assert!(stdout(&unsat).contains("result unsat"));
    let sat = run(&["solve", "--sequence", "1,1,2"], Some(&ex13));
    assert_eq!(sat.status.code(), Some(0));
    assert!(stdout(&sat).contains("result sat"));
}

#[test]
fn color_output_is_accepted_by_verify_in_a_separate_process() {
    let dir = tempfile::tempdir().unwrap();
    let graph_path = dir.path().join("g.txt");
    let coloring_path = dir.path().join("c.txt");

    let graph_text = stdout(&run(&["gadget", "g3"], None));
    std::fs::write(&graph_path, &graph_text).unwrap();

    let colored = run(&["color", "--sequence", "1,1,2,4", graph_path.to_str().unwrap()], None);
    assert_eq!(colored.status.code(), Some(0));
    std::fs::write(&coloring_path, stdout(&colored)).unwrap();

    let verified = run(
        &[
            "verify",
            "--feasible",
            "--sequence",
            "1,1,2,4",
            "--coloring",
            coloring_path.to_str().unwrap(),
            graph_path.to_str().unwrap(),
        ],
        None,
    );
    assert_eq!(verified.status.code(), Some(0), "{}", stdout(&verified));
    assert!(stdout(&verified).contains("verify ok"));
}

#[test]
fn solve_payload_feeds_verify() {
    let dir = tempfile::tempdir().unwrap();
    let graph_path = dir.path().join("g.txt");
    let coloring_path = dir.path().join("c.txt");
    let graph_text = stdout(&run(&["gen", "--n", "18", "--seed", "5"], None));
    std::fs::write(&graph_path, &graph_text).unwrap();

    let solved = run(
        &["solve", "--sequence", "1,1,2,4", "--engine", "dp", graph_path.to_str().unwrap()],
        None,
    );
    assert_eq!(solved.status.code(), Some(0));
    std::fs::write(&coloring_path, stdout(&solved)).unwrap();
    let verified = run(
        &["verify", "--coloring", coloring_path.to_str().unwrap(), graph_path.to_str().unwrap()],
        None,
    );
    assert_eq!(verified.status.code(), Some(0));
}

#[test]
fn verify_reports_violations() {
    let dir = tempfile::tempdir().unwrap();
    let graph_path = dir.path().join("g.txt");
    let coloring_path = dir.path().join("c.txt");
    std::fs::write(&graph_path, "3 2\n0 1\n1 2\n").unwrap();
    std::fs::write(&coloring_path, "sequence 1 2\ncolor 0 2\ncolor 1 1\ncolor 2 2\n").unwrap();
    let out = run(
        &["verify", "--coloring", coloring_path.to_str().unwrap(), graph_path.to_str().unwrap()],
        None,
    );
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("violation packing class=2 u=0 v=2"));
}

#[test]
fn pins_and_engines() {
    let g1 = stdout(&run(&["gadget", "g1", "--pendant"], None));
    // z6 is the pendant vertex; find its identifier from the label table.
    let z6 = g1
        .lines()
        .find_map(|l| l.strip_prefix("# label z6 "))
        .unwrap()
        .trim()
        .to_string();
    for engine in ["backtrack", "dp"] {
        let out = run(
            &[
                "solve",
                "--sequence",
                "1,1,2,5",
                "--engine",
                engine,
                "--pin",
                &format!("{z6}=4"),
            ],
            Some(&g1),
        );
        assert_eq!(out.status.code(), Some(1), "engine {engine}");
    }
}

#[test]
fn recognize_rejects_petersen() {
    let petersen = stdout(&run(&["gadget", "petersen"], None));
    let out = run(&["recognize"], Some(&petersen));
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("outerplanar false"));
    assert!(stdout(&out).contains("offending_block"));
}

#[test]
fn gen_is_deterministic_per_seed() {
    let a = stdout(&run(&["gen", "--n", "30", "--seed", "11", "--two-connected"], None));
    let b = stdout(&run(&["gen", "--n", "30", "--seed", "11", "--two-connected"], None));
    assert_eq!(a, b);
    let c = stdout(&run(&["gen", "--n", "30", "--seed", "12", "--two-connected"], None));
    assert_ne!(a, c);
}

#[test]
fn subdivide_reports_midpoints() {
    let out = run(&["subdivide"], Some("2 1\n0 1\n"));
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("3 2\n"));
    assert!(text.contains("# midpoint 0 1 2"));
}

#[test]
fn usage_and_input_errors_exit_2() {
    let out = run(&["solve", "--sequence", "2,1"], Some("1 0\n"));
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["solve", "--sequence", "1,2"], Some("not a graph"));
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["gadget", "nonsense"], None);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["color", "--sequence", "1,2,3"], Some("1 0\n"));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn timeout_exits_3() {
    let g = stdout(&run(&["gadget", "bigg"], None));
    let out = run(&["solve", "--sequence", "1,1,2,2", "--budget", "0", "--engine", "backtrack"], Some(&g));
    assert_eq!(out.status.code(), Some(3));
    assert!(stdout(&out).contains("result timeout"));
}

#[test]
fn color_out_of_class_is_a_negative_answer() {
    let petersen = stdout(&run(&["gadget", "petersen"], None));
    let out = run(&["color", "--sequence", "1,1,2"], Some(&petersen));
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("result out-of-class"));
}
