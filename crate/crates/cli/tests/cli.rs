//! End-to-end tests of the binary: argument parsing, output formats, exit
//! codes, and agreement with the library on a few golden values.

use std::io::Write;
use std::process::{Command, Output};

use votepower::Game;

fn votepower_cmd() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_votepower"));
    cmd.env_remove("VOTEPOWER_EXACT_CAP");
    cmd
}

fn run(args: &[&str]) -> Output {
    votepower_cmd().args(args).output().expect("binary runs")
}

fn stdout(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).expect("utf-8 stdout")
}

fn stderr(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).expect("utf-8 stderr")
}

#[test]
fn compute_prints_the_golden_recursive_measure() {
    let output = run(&["compute", "--game", "8;5,4,3,2", "--measure", "rm", "--player", "2"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("53/96"), "missing total in:\n{text}");
    assert!(text.contains("33/128") && text.contains("113/384"));
}

#[test]
fn compute_json_reports_lowest_terms_fractions() {
    let output = run(&["compute", "--game", "8;5,4,3,2", "--measure", "rm,pb", "--format", "json"]);
    assert!(output.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).expect("valid JSON");
    let players = doc["players"].as_array().expect("players array");
    let pb_totals: Vec<&str> = players
        .iter()
        .map(|p| p["pb"]["total"].as_str().expect("fraction string"))
        .collect();
    assert_eq!(pb_totals, ["5/8", "3/8", "3/8", "1/8"]);
    assert_eq!(players[1]["rm"]["total"], "53/96");
    // No ss key when it was not requested.
    assert!(players[0].get("ss").is_none());
}

#[test]
fn compute_csv_has_one_row_per_player_and_measure() {
    let output = run(&["compute", "--game", "3;2,1,1", "--format", "csv"]);
    assert!(output.status.success());
    let text = stdout(&output);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("player,name,measure,plus,minus,total"));
    assert_eq!(lines.count(), 9); // 3 players x rm,pb,ss
    assert!(text.contains("1,1,ss,2/3,2/3,2/3"));
}

#[test]
fn compute_reads_game_files() {
    let dir = tempfile::tempdir().expect("temp dir");
    let path = dir.path().join("game.txt");
    let mut file = std::fs::File::create(&path).expect("create file");
    writeln!(file, "8;5,4,3,2").expect("write file");
    let output = run(&["compute", "--game", path.to_str().unwrap(), "--measure", "rm", "--player", "2"]);
    assert!(output.status.success());
    assert!(stdout(&output).contains("53/96"));
}

#[test]
fn compute_rejects_ss_under_a_biased_profile() {
    let output = run(&[
        "compute", "--game", "3;2,1,1", "--measure", "ss", "--profile", "1/3,1/2,1/2",
    ]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("equiprobable"));
}

#[test]
fn audit_failure_sets_exit_code_one_and_reports_the_ratio() {
    let output = run(&[
        "audit", "--game", "3;2,1,1", "--measure", "ss", "--postulate", "add-1", "--format", "jsonl",
    ]);
    assert_eq!(output.status.code(), Some(1));
    let line = stdout(&output);
    let doc: serde_json::Value = serde_json::from_str(line.lines().next().unwrap()).unwrap();
    assert_eq!(doc["verdict"], "fail");
    let witness = doc["witnesses"]
        .as_array()
        .unwrap()
        .iter()
        .find(|w| w["players"] == serde_json::json!([1, 2]))
        .expect("witness for players 1,2");
    assert_eq!(witness["expected"], "4/1");
    assert_eq!(witness["actual"], "5/1");
}

#[test]
fn audit_pass_sets_exit_code_zero() {
    let output = run(&["audit", "--game", "8;5,4,3,2", "--measure", "rm", "--postulate", "all"]);
    assert_eq!(output.status.code(), Some(0));
    let text = stdout(&output);
    assert_eq!(text.matches(" pass").count(), 12);
    assert!(!text.contains(" fail"));
}

#[test]
fn transform_output_round_trips_as_a_game() {
    let output = run(&[
        "transform", "--game", "8;5,4,3,2", "--op", "donate", "--players", "3,2", "--format", "json",
    ]);
    assert!(output.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    let result = doc["result"].to_string();

    // The result document is itself a valid --game argument.
    let reparsed = run(&["compute", "--game", &result, "--measure", "pb", "--format", "csv"]);
    assert!(reparsed.status.success());

    // And it matches the library's own transform exactly.
    let base = Game::from_weighted(8, &[5, 4, 3, 2]).unwrap();
    let (expected, _) = votepower::transforms::donate(&base, 2, 1).unwrap();
    let coalitions: Vec<Vec<usize>> = doc["result"]["winning"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            c.as_array()
                .unwrap()
                .iter()
                .map(|p| p.as_u64().unwrap() as usize - 1)
                .collect()
        })
        .collect();
    let rebuilt = Game::from_winning_coalitions(4, coalitions).unwrap();
    assert_eq!(rebuilt.winning_table(), expected.winning_table());
}

#[test]
fn blocker_transform_names_the_new_seat_zero() {
    let output = run(&[
        "transform", "--game", "3;2,1,1", "--op", "add-yes-blocker", "--format", "json",
    ]);
    assert!(output.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&output)).unwrap();
    assert_eq!(doc["result"]["names"], serde_json::json!(["1", "2", "3", "0"]));
    assert_eq!(doc["record"]["added"]["player"], 4);
}

#[test]
fn impossible_quarrel_reports_no_result_with_exit_zero() {
    let output = run(&["transform", "--game", "2;1,1", "--op", "quarrel", "--players", "1,2"]);
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("no result"));
}

#[test]
fn estimates_are_reproducible_and_echo_the_seed() {
    let args = [
        "estimate", "--game", "8;5,4,3,2", "--player", "2", "--division", "empty",
        "--sign", "minus", "--trials", "2000", "--seed", "99", "--format", "json",
    ];
    let first = run(&args);
    let second = run(&args);
    assert!(first.status.success());
    assert_eq!(stdout(&first), stdout(&second));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&first)).unwrap();
    assert_eq!(doc["seed"], 99);
    assert_eq!(doc["trials"], 2000);
    assert!(doc["estimate"].as_str().unwrap().contains('/'));
}

#[test]
fn lattice_export_has_all_nodes_and_covering_edges() {
    let output = run(&["lattice", "--game", "8;5,4,3,2"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.starts_with("digraph"));
    assert_eq!(text.matches("label=").count(), 16);
    assert_eq!(text.matches(" -> ").count(), 32);
}

#[test]
fn lattice_annotations_show_efficacy_scores() {
    let output = run(&["lattice", "--game", "8;5,4,3,2", "--player", "2"]);
    assert!(output.status.success());
    let text = stdout(&output);
    assert!(text.contains("13/24"), "missing the empty-division score:\n{text}");
    assert!(text.contains("5/8"));
}

#[test]
fn parse_errors_exit_with_code_two() {
    let output = run(&["compute", "--game", "8;"]);
    assert_eq!(output.status.code(), Some(2));
    assert!(stderr(&output).contains("empty weight list"));

    let output = run(&["compute", "--game", "8;5,4", "--measure", "zz"]);
    assert_eq!(output.status.code(), Some(2));

    let output = run(&["compute", "--no-such-flag"]);
    assert_eq!(output.status.code(), Some(2));
}

#[test]
fn size_limits_exit_with_code_three_unless_overridden() {
    let weights = vec!["1"; 21].join(",");
    let game = format!("21;{weights}");
    let output = run(&["compute", "--game", &game, "--measure", "pb", "--player", "1"]);
    assert_eq!(output.status.code(), Some(3));

    let output = votepower_cmd()
        .env("VOTEPOWER_EXACT_CAP", "22")
        .args(["compute", "--game", &game, "--measure", "pb", "--player", "1"])
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(0));
    assert!(stdout(&output).contains("1/1048576"));

    let output = votepower_cmd()
        .env("VOTEPOWER_EXACT_CAP", "not-a-number")
        .args(["compute", "--game", "3;2,1,1"])
        .output()
        .expect("binary runs");
    assert_eq!(output.status.code(), Some(2));
}

#[cfg(unix)]
#[test]
fn closing_stdout_early_does_not_panic_the_process() {
    use std::io::Read;
    use std::process::Stdio;

    // A 14-player lattice is a few megabytes of DOT text, far more than a
    // pipe buffer holds, so dropping the read end mid-stream exercises the
    // broken-pipe path.
    let weights = vec!["1"; 14].join(",");
    let game = format!("14;{weights}");
    let mut child = votepower_cmd()
        .args(["lattice", "--game", &game])
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary starts");

    let mut prefix = [0u8; 64];
    child
        .stdout
        .take()
        .expect("stdout handle")
        .read_exact(&mut prefix)
        .expect("some output arrives");
    // Dropping the handle closes the pipe; the writer should stop quietly,
    // either by finishing normally or by dying of SIGPIPE like cat/grep do.
    let status = child.wait().expect("child reaped");
    let mut err = String::new();
    child
        .stderr
        .take()
        .expect("stderr handle")
        .read_to_string(&mut err)
        .expect("utf-8 stderr");
    assert!(!err.contains("panicked"), "stderr: {err}");
    use std::os::unix::process::ExitStatusExt;
    assert!(
        status.code() == Some(0) || status.signal() == Some(13),
        "unexpected status: {status:?}"
    );
}

#[test]
fn estimate_answers_point_queries_beyond_the_exact_table_cap() {
    // compute needs the dense table and refuses n=30...
    let weights = vec!["1"; 30].join(",");
    let game = format!("30;{weights}");
    let output = run(&["compute", "--game", &game, "--measure", "pb"]);
    assert_eq!(output.status.code(), Some(3));

    // ...but the walk estimator only asks point queries of the weighted
    // rule. In the unanimity game every player is decisive at the full
    // division, so the estimate is exactly 1 regardless of budget.
    let output = run(&[
        "estimate", "--game", &game, "--player", "1", "--division", "full",
        "--sign", "plus", "--trials", "50", "--seed", "1",
    ]);
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));
    assert!(stdout(&output).contains("estimate 1/1"));

    let output = run(&[
        "estimate", "--game", &game, "--player", "1", "--trials", "64",
        "--seed", "9", "--workers", "4",
    ]);
    assert_eq!(output.status.code(), Some(0), "stderr: {}", stderr(&output));

    // Explicit documents are their own winning table, so the cap stands.
    let output = run(&["estimate", "--game",
        r#"{"n": 30, "winning": [[1]]}"#, "--player", "1", "--trials", "10"]);
    assert_eq!(output.status.code(), Some(3));
}
