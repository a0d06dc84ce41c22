//! The `audit` subcommand: run a measure × postulate matrix over one game.
//! Audits are independent and run in parallel; output is strictly ordered.
//! Exit code 1 signals at least one failed audit.

use rayon::prelude::*;
use serde::Serialize;
use votepower::measures::MeasureId;
use votepower::postulates::{audit, AuditConfig, AuditReport, PostulateId, Verdict, ALL_POSTULATES};
use votepower::rational::to_fraction_string;

use crate::compute::parse_measures;
use crate::{load_game, AuditArgs, Failure, ReportFormat};

#[derive(Serialize)]
struct ReportDoc {
    game: String,
    measure: String,
    postulate: String,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    checks: usize,
    witnesses: Vec<WitnessDoc>,
    skipped: Vec<SkippedDoc>,
}

#[derive(Serialize)]
struct WitnessDoc {
    players: Vec<usize>,
    divisions: Vec<String>,
    expected: String,
    actual: String,
    note: String,
}

#[derive(Serialize)]
struct SkippedDoc {
    players: Vec<usize>,
    reason: String,
}

fn report_doc(report: &AuditReport) -> ReportDoc {
    let (verdict, reason) = match &report.verdict {
        Verdict::Pass => ("pass", None),
        Verdict::Fail => ("fail", None),
        Verdict::Skipped(reason) => ("skipped", Some(reason.clone())),
    };
    ReportDoc {
        game: report.game.clone(),
        measure: report.measure.to_string(),
        postulate: report.postulate.to_string(),
        verdict,
        reason,
        checks: report.checks,
        witnesses: report
            .witnesses
            .iter()
            .map(|w| WitnessDoc {
                players: w.players.iter().map(|&p| p + 1).collect(),
                divisions: w.divisions.iter().map(|d| d.label()).collect(),
                expected: to_fraction_string(&w.expected),
                actual: to_fraction_string(&w.actual),
                note: w.note.clone(),
            })
            .collect(),
        skipped: report
            .skipped
            .iter()
            .map(|s| SkippedDoc {
                players: s.players.iter().map(|&p| p + 1).collect(),
                reason: s.reason.clone(),
            })
            .collect(),
    }
}

fn parse_postulates(text: &str) -> Result<Vec<PostulateId>, Failure> {
    if text.trim() == "all" {
        return Ok(ALL_POSTULATES.to_vec());
    }
    let mut postulates = Vec::new();
    for part in text.split(',') {
        let id: PostulateId = part.trim().parse().map_err(Failure::Usage)?;
        if !postulates.contains(&id) {
            postulates.push(id);
        }
    }
    if postulates.is_empty() {
        return Err(Failure::Usage("no postulates requested".into()));
    }
    Ok(postulates)
}

pub fn run(args: AuditArgs) -> Result<i32, Failure> {
    let loaded = load_game(&args.game)?;
    let measures = parse_measures(&args.measure)?;
    let postulates = parse_postulates(&args.postulate)?;
    let cfg = AuditConfig {
        ss_cap: args.ss_cap,
        iso_samples: args.iso_samples,
        ..AuditConfig::default()
    };

    let matrix: Vec<(MeasureId, PostulateId)> = measures
        .iter()
        .flat_map(|&m| postulates.iter().map(move |&p| (m, p)))
        .collect();
    let reports = matrix
        .par_iter()
        .map(|&(m, p)| audit(&loaded.game, m, p, &cfg))
        .collect::<Result<Vec<AuditReport>, _>>()
        .map_err(Failure::from)?;

    let mut failed = false;
    match args.format {
        ReportFormat::Human => {
            println!("game: {}", loaded.game.description());
            println!(
                "{:<10} {:<8} {:<8} {:>7} {:>10} {:>8}",
                "postulate", "measure", "verdict", "checks", "witnesses", "skipped"
            );
            for report in &reports {
                let verdict = match &report.verdict {
                    Verdict::Pass => "pass",
                    Verdict::Fail => "fail",
                    Verdict::Skipped(_) => "skipped",
                };
                println!(
                    "{:<10} {:<8} {:<8} {:>7} {:>10} {:>8}",
                    report.postulate.to_string(),
                    report.measure.to_string(),
                    verdict,
                    report.checks,
                    report.witnesses.len(),
                    report.skipped.len(),
                );
            }
            for report in &reports {
                if let Verdict::Skipped(reason) = &report.verdict {
                    println!("note: {} ({}) skipped: {reason}", report.postulate, report.measure);
                }
                for witness in &report.witnesses {
                    let players: Vec<String> =
                        witness.players.iter().map(|&p| (p + 1).to_string()).collect();
                    println!(
                        "witness: {} ({}) players {}: expected {}, got {} — {}",
                        report.postulate,
                        report.measure,
                        players.join(","),
                        to_fraction_string(&witness.expected),
                        to_fraction_string(&witness.actual),
                        witness.note,
                    );
                }
            }
        }
        ReportFormat::Jsonl => {
            for report in &reports {
                let doc = report_doc(report);
                println!("{}", serde_json::to_string(&doc).expect("serializable"));
            }
        }
    }
    for report in &reports {
        if report.verdict == Verdict::Fail {
            failed = true;
        }
    }
    Ok(if failed { 1 } else { 0 })
}
