use std::io::Write;
use std::process::{Command, Output, Stdio};

fn permdual(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permdual"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn permdual_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_permdual"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn dual_methods_agree_on_fixture() {
    let o = permdual(&["dual", "--fixture", "fig1", "--method", "all"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("graph-alg: n=4; (3,4) (1,4) (2,4) (1,3) (3,4)\n"));
    assert!(text.ends_with("agree: yes\n"));
}

#[test]
fn dual_reads_graph_file_and_writes_dot() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("g.graph");
    std::fs::write(&input, permdual::fixtures::load("fig1.graph").unwrap()).unwrap();
    let dot = dir.path().join("out.dot");
    let o = permdual(&[
        "dual",
        input.to_str().unwrap(),
        "--method",
        "trail",
        "--emit-dot",
        dot.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "n=4; (3,4) (1,4) (2,4) (1,3) (3,4)\n");
    let dot = std::fs::read_to_string(dot).unwrap();
    assert!(dot.contains("graph input {") && dot.contains("graph dual {"));
}

#[test]
fn mb_trace_rows() {
    let o = permdual(&["mb-trace", "--fixture", "fig1"]);
    let text = stdout(&o);
    assert!(text.starts_with("A_0 = [1,2,3,4 / 1,2,3,4]\n"));
    assert!(text.contains("A_2 = [1,2,3,4 / 3,2,4,1]\n"));
    assert!(text.ends_with("A_5 = [1,2,3,4 / 4,1,2,3]\n"));
}

#[test]
fn migt_output_feeds_realize() {
    let cover = stdout(&permdual(&["migt", "--fixture", "fig1"]));
    assert_eq!(cover, permdual::fixtures::cover("fig2").unwrap().to_string());
    let o = permdual_stdin(&["realize"], &cover);
    assert!(o.status.success());
    assert!(stdout(&o).starts_with("realizable\norder: 1 2 3 4 5\n"));
}

#[test]
fn realize_reports_cycle() {
    let dir = tempfile::tempdir().unwrap();
    let dot = dir.path().join("d.dot");
    let o = permdual(&["realize", "--fixture", "fig3", "--emit-dot", dot.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "not realizable\ncycle: 1 2 3 4 5 6\n");
    assert!(std::fs::read_to_string(dot).unwrap().contains("e6 -> e1;"));
}

#[test]
fn enumerate_counts_and_generators() {
    let o = permdual(&["enumerate", "--n", "5", "--count-only"]);
    assert_eq!(stdout(&o), "n=5 direction=down generator=dfs count=125\n");
    let dfs = stdout(&permdual(&["enumerate", "--n", "4", "--emit"]));
    let prufer = stdout(&permdual(&["enumerate", "--n", "4", "--emit", "--generator", "prufer"]));
    assert_eq!(dfs.lines().count(), 16);
    assert_eq!(dfs, prufer);
    let up = stdout(&permdual(&["enumerate", "--n", "3", "--emit", "--direction", "up"]));
    assert_eq!(up.lines().count(), 3);
}

#[test]
fn enumeration_cap() {
    let o = permdual(&["enumerate", "--n", "9", "--count-only"]);
    assert_eq!(o.status.code(), Some(3));
    let o = Command::new(env!("CARGO_BIN_EXE_permdual"))
        .args(["enumerate", "--n", "5", "--count-only"])
        .env("PERMDUAL_MAX_N", "4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn bijection_round_trip() {
    let tree = stdout(&permdual(&["bijection", "--forward", "--fixture", "fig9"]));
    let back = permdual_stdin(&["bijection", "--inverse"], &tree);
    assert!(back.status.success());
    assert_eq!(stdout(&back), format!("{}\n", permdual::fixtures::sequence("fig9").unwrap()));
}

#[test]
fn chord_svg_and_checks() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("c.svg");
    let o = permdual(&["chord", "--fixture", "fig9", "--check", "--overlay", "--emit-svg", svg.to_str().unwrap()]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("non-crossing: ok\nclockwise-decreasing: ok\n"));
    assert!(text.contains("region 6: 6 -3- 3 -4- 5\n"));
    assert!(std::fs::read_to_string(svg).unwrap().starts_with("<svg"));

    let bad = permdual_stdin(&["chord", "--check"], "n=4; (1,3) (2,4) (1,2)");
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("chords 1 and 2 cross"));
}

#[test]
fn bad_input_exits_two() {
    let o = permdual_stdin(&["dual"], "n=3; (1,1)");
    assert_eq!(o.status.code(), Some(2));
    let o = permdual(&["dual", "--fixture", "nope"]);
    assert_eq!(o.status.code(), Some(2));
    let o = permdual_stdin(&["bijection", "--forward"], "n=3; (2,3) (1,2)");
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_duals_counts() {
    let o = permdual(&["verify", "--suite", "duals", "--n", "3..6", "--sample-size", "200"]);
    assert!(o.status.success());
    let text = stdout(&o);
    for (n, count) in [(3, 3), (4, 16), (5, 125), (6, 1296)] {
        assert!(text.contains(&format!("pass duals n={n}: {count} sequences\n")), "{text}");
    }
}

#[test]
fn verify_tdc_fixture_fails_with_certificate() {
    let o = permdual(&["verify", "--suite", "tdc", "--fixture", "fig3"]);
    assert_eq!(o.status.code(), Some(1));
    let text = stdout(&o);
    assert!(text.contains("fail tdc fixture fig3: not realizable; edge digraph cycle 1 -> 2 -> 3 -> 4 -> 5 -> 6\n"));
    // the counterexample block parses back as a cover
    let payload: String = text
        .lines()
        .skip_while(|l| !l.contains("counterexample:"))
        .skip(1)
        .take_while(|l| l.starts_with("    "))
        .map(|l| format!("{}\n", l.trim()))
        .collect();
    let cover: permdual::TrailDoubleCover = payload.parse().unwrap();
    assert_eq!(cover, permdual::fixtures::cover("fig3").unwrap());
}

#[test]
fn verify_all_passes_and_is_deterministic() {
    let args = ["verify", "--suite", "all", "--n", "3..5", "--seed", "9", "--sample-size", "300"];
    let first = permdual(&args);
    let second = permdual(&args);
    assert!(first.status.success(), "{}", stdout(&first));
    assert_eq!(first.stdout, second.stdout);
    assert!(stdout(&first).ends_with("items\n"));
}

#[test]
fn verify_rejects_bad_range() {
    let o = permdual(&["verify", "--n", "6..3"]);
    assert_eq!(o.status.code(), Some(2));
}
