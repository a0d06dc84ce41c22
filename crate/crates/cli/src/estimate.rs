//! The `estimate` subcommand: Monte-Carlo walk estimates. With a starting
//! division it estimates one efficacy score; without one it estimates the
//! player's whole recursive measure by uniform division sampling. Seeds are
//! always echoed so runs can be reproduced exactly.

use serde::Serialize;
use votepower::efficacy::Sign;
use votepower::game::WinningRule;
use votepower::montecarlo::{rm_estimate_workers, walk_estimate, ComponentEstimate};
use votepower::rational::{to_f64, to_fraction_string};

use crate::gamespec::EstimateRule;
use crate::{gamespec, parse_player, DocFormat, EstimateArgs, Failure};

#[derive(Serialize)]
struct WalkDoc {
    kind: &'static str,
    player: usize,
    division: String,
    sign: String,
    trials: u64,
    hits: u64,
    estimate: String,
    estimate_decimal: f64,
    std_error: f64,
    seed: u64,
}

#[derive(Serialize)]
struct MeasureDoc {
    kind: &'static str,
    player: usize,
    trials: u64,
    workers: u64,
    seed: u64,
    plus: ComponentDoc,
    minus: ComponentDoc,
    total: ComponentDoc,
}

#[derive(Serialize)]
struct ComponentDoc {
    hits: u64,
    estimate: String,
    estimate_decimal: f64,
    std_error: f64,
}

impl ComponentDoc {
    fn new(component: &ComponentEstimate) -> ComponentDoc {
        ComponentDoc {
            hits: component.hits,
            estimate: to_fraction_string(&component.estimate),
            estimate_decimal: to_f64(&component.estimate),
            std_error: component.std_error,
        }
    }
}

pub fn run(args: EstimateArgs) -> Result<i32, Failure> {
    // Unlike the exact subcommands, the estimators only ever ask point
    // queries, so a weighted game beyond the exact-table cap still works.
    let spec = gamespec::parse_game_spec(&args.game.game).map_err(Failure::Usage)?;
    let cap = gamespec::resolve_cap()?;
    match spec.to_estimate_rule(cap)? {
        EstimateRule::Exact(game) => run_with_rule(&game, &args),
        EstimateRule::PointQuery(rule) => run_with_rule(&rule, &args),
    }
}

fn run_with_rule<R: WinningRule>(rule: &R, args: &EstimateArgs) -> Result<i32, Failure> {
    let n = rule.player_count();
    let player = parse_player(n, args.player)?;
    if args.trials == 0 {
        return Err(Failure::Usage("at least one trial required".into()));
    }

    match &args.division {
        Some(division_text) => {
            if args.workers != 1 {
                return Err(Failure::Usage(
                    "worker streams only apply to the whole-measure estimate".into(),
                ));
            }
            let sign_text = args
                .sign
                .as_ref()
                .ok_or_else(|| Failure::Usage("--division needs --sign plus|minus".into()))?;
            let sign: Sign = sign_text.parse().map_err(Failure::Usage)?;
            let division =
                gamespec::parse_division(n, division_text).map_err(Failure::Usage)?;
            let estimate = walk_estimate(rule, player, division, sign, args.trials, args.seed)
                .map_err(Failure::from)?;
            let doc = WalkDoc {
                kind: "walk",
                player: player + 1,
                division: estimate.division.label(),
                sign: sign.to_string(),
                trials: estimate.trials,
                hits: estimate.hits,
                estimate: to_fraction_string(&estimate.estimate),
                estimate_decimal: to_f64(&estimate.estimate),
                std_error: estimate.std_error,
                seed: estimate.seed,
            };
            match args.format {
                DocFormat::Json => {
                    println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
                }
                DocFormat::Human => {
                    println!(
                        "player {} at {} ({}): estimate {} ≈ {:.5} ± {:.5} ({} hits in {} trials, seed {})",
                        doc.player,
                        doc.division,
                        doc.sign,
                        doc.estimate,
                        doc.estimate_decimal,
                        doc.std_error,
                        doc.hits,
                        doc.trials,
                        doc.seed,
                    );
                }
            }
        }
        None => {
            if args.sign.is_some() {
                return Err(Failure::Usage(
                    "--sign only applies to a single-division walk estimate".into(),
                ));
            }
            let estimate =
                rm_estimate_workers(rule, player, args.trials, args.seed, args.workers)
                    .map_err(Failure::from)?;
            let doc = MeasureDoc {
                kind: "rm",
                player: player + 1,
                trials: estimate.trials,
                workers: args.workers,
                seed: estimate.seed,
                plus: ComponentDoc::new(&estimate.plus),
                minus: ComponentDoc::new(&estimate.minus),
                total: ComponentDoc::new(&estimate.total),
            };
            match args.format {
                DocFormat::Json => {
                    println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
                }
                DocFormat::Human => {
                    println!(
                        "player {}: rm ≈ {:.5} ± {:.5} (plus {:.5}, minus {:.5}; {} trials, seed {})",
                        doc.player,
                        doc.total.estimate_decimal,
                        doc.total.std_error,
                        doc.plus.estimate_decimal,
                        doc.minus.estimate_decimal,
                        doc.trials,
                        doc.seed,
                    );
                }
            }
        }
    }
    Ok(0)
}
