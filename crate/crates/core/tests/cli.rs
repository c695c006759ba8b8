use std::io::Cursor;

use greedy_nim::cli::run;
use serde_json::Value;

fn cli(args: &[&str]) -> (i32, String, String) {
    cli_with_input(args, "")
}

fn cli_with_input(args: &[&str], input: &str) -> (i32, String, String) {
    let mut full = vec!["greedy-nim"];
    full.extend_from_slice(args);
    let mut inp = Cursor::new(input.as_bytes().to_vec());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run(full, &mut inp, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

#[test]
fn classify_reports_winning_moves() {
    let (code, out, _) = cli(&["classify", "--variant", "bounded", "--k", "2", "--play", "misere", "2", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("N, winning moves: [2]"));
    assert!(out.contains("beta: 0, alpha: 1, r1: 1"));
}

#[test]
fn classify_greedy_p_position() {
    let (code, out, _) = cli(&["classify", "--variant", "greedy", "--play", "misere", "1", "1", "1"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().next(), Some("P"));
    assert!(out.contains("x1_le_1_alpha_odd"));
    assert!(out.contains("singular: true"));
}

#[test]
fn classify_usage_errors_exit_2() {
    let (code, _, err) = cli(&["classify", "--variant", "bounded", "--k", "0", "--play", "misere", "1"]);
    assert_eq!(code, 2);
    assert!(err.contains("k must be at least 1"));
    assert_eq!(cli(&["classify", "--variant", "bounded", "--play", "misere", "1"]).0, 2);
    assert_eq!(cli(&["classify", "--variant", "greedy", "--play", "misere", "3", "-1"]).0, 2);
    assert_eq!(cli(&["classify", "--variant", "greedy", "--play", "sideways", "3"]).0, 2);
}

#[test]
fn classify_json_matches_service_schema() {
    let (code, out, _) = cli(&[
        "classify", "--variant", "bounded", "--k", "2", "--play", "misere", "--format", "json", "2", "4", "2",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    let req = greedy_nim::service::ClassifyRequest::from_json(
        br#"{"variant":"bounded","k":2,"play":"misere","heaps":[4,2,2]}"#,
    )
    .unwrap();
    let expected = serde_json::to_value(greedy_nim::service::handle_classify(&req).unwrap()).unwrap();
    assert_eq!(v, expected);
    assert_eq!(v["detail"]["matchedClause"], "x3_ge_2_beta_odd_k_good_1");
}

#[test]
fn classify_empty_position() {
    let (code, out, _) = cli(&["classify", "--variant", "greedy", "--play", "misere"]);
    assert_eq!(code, 0);
    assert!(out.starts_with("N, winning moves: []"));
    assert!(out.contains("immobility"));
}

#[test]
fn verify_tiny_and_small() {
    let (code, out, _) = cli(&["verify", "--max-heaps", "1", "--max-size", "0"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.contains("(1 positions)"));
    assert!(out.contains("result: PASS"));

    let (code, out, _) = cli(&[
        "verify", "--max-heaps", "3", "--max-size", "6", "--k", "1,2..4", "--variants", "both", "--plays", "both",
        "--strategy", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["sweep"]["distinctPositions"], 84);
    assert_eq!(v["sweep"]["positionsChecked"], 840);
    assert_eq!(v["sweep"]["strategyChecked"], true);
    assert!(v["sweep"]["mismatches"].as_array().unwrap().is_empty());
}

#[test]
fn verify_writes_report_file() {
    let dir = std::env::temp_dir().join(format!("greedy-nim-report-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("report.json");
    let (code, _, _) = cli(&[
        "verify", "--max-heaps", "2", "--max-size", "3", "--k", "2", "--variants", "bounded", "--plays", "misere",
        "--report", path.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["sweep"]["positionsChecked"], 10);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn verify_rejects_bad_k() {
    assert_eq!(cli(&["verify", "--max-heaps", "1", "--max-size", "1", "--k", "0"]).0, 2);
    assert_eq!(cli(&["verify", "--max-heaps", "1", "--max-size", "1", "--k", "4..2"]).0, 2);
}

#[test]
fn table_misere_bounded() {
    let (code, out, _) = cli(&[
        "table", "--variant", "bounded", "--k", "2", "--play", "misere", "--max-heaps", "2", "--max-size", "2",
    ]);
    assert_eq!(code, 0);
    let rows: Vec<&str> = out.lines().skip(1).collect();
    assert_eq!(rows, vec!["1 0 0 0 : P", "2 2 0 0 : P"]);
    assert!(out.lines().next().unwrap().starts_with('#'));
}

#[test]
fn table_normal_greedy_json() {
    let (code, out, _) = cli(&[
        "table", "--variant", "greedy", "--play", "normal", "--max-heaps", "2", "--max-size", "2", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let v: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v, serde_json::json!([[0, 0, 0, 0], [1, 1, 0, 0], [2, 2, 0, 0]]));
}

#[test]
fn table_header_only_and_all_rows() {
    let (code, out, _) = cli(&[
        "table", "--variant", "greedy", "--play", "misere", "--max-heaps", "0", "--max-size", "0",
    ]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 1);

    let (_, out, _) = cli(&[
        "table", "--variant", "greedy", "--play", "misere", "--max-heaps", "1", "--max-size", "1", "--all",
    ]);
    assert_eq!(out.lines().skip(1).collect::<Vec<_>>(), vec!["0 0 0 0 : N", "1 0 0 0 : P"]);
}

#[test]
fn table_rejects_huge_bounds() {
    let (code, _, err) = cli(&["table", "--variant", "greedy", "--max-heaps", "40", "--max-size", "40"]);
    assert_eq!(code, 2);
    assert!(err.contains("too many"));
}

#[test]
fn play_engine_punishes_a_mistake() {
    // (3,2) greedy misère is N; taking 2 leaves (2,1) and the engine answers with (1)
    let (code, out, _) = cli_with_input(
        &["play", "--variant", "greedy", "--play", "misere", "3", "2"],
        "0\nhint\n2\n1\n1\n",
    );
    assert_eq!(code, 0);
    assert!(out.contains("illegal move `0`"));
    assert!(out.contains("hint: winning moves [1]"));
    assert!(out.contains("engine takes 2"));
    assert!(out.contains("the engine wins."), "{out}");
}

#[test]
fn play_following_hints_wins() {
    let (code, out, _) = cli_with_input(
        &["play", "--variant", "bounded", "--k", "2", "--play", "misere", "2", "1"],
        "2\n",
    );
    assert_eq!(code, 0);
    assert!(out.contains("engine takes 1"));
    assert!(out.contains("you win!"), "{out}");
}

#[test]
fn play_quits_on_eof_and_quit() {
    assert_eq!(cli_with_input(&["play", "--variant", "greedy", "5"], "").0, 0);
    let (code, out, _) = cli_with_input(&["play", "--variant", "greedy", "5"], "quit\n");
    assert_eq!(code, 0);
    assert!(out.contains("bye"));
}

#[test]
fn normal_play_terminal_announcement() {
    let (_, out, _) = cli_with_input(
        &["play", "--variant", "bounded", "--k", "3", "--play", "normal", "3"],
        "3\n",
    );
    assert!(out.contains("the engine cannot move: you win!"), "{out}");
}
