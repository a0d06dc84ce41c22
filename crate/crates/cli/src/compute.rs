//! The `compute` subcommand: per-player power values in human, JSON or CSV
//! form. Players are computed in parallel and always reported in index
//! order; every exact value is printed as a lowest-terms fraction, with
//! decimals only in the explicitly approximate column.

use rayon::prelude::*;
use serde::Serialize;
use votepower::measures::{
    pb_player, rm_player, ss_with_cap, MeasureId, SignedPower, VoteProfile,
};
use votepower::rational::{to_f64, to_fraction_string};
use votepower::Game;

use crate::{gamespec, load_game, parse_player, ComputeArgs, Failure, TableFormat};

#[derive(Serialize)]
struct ComputeDoc {
    game: GameDoc,
    profile: Vec<String>,
    players: Vec<PlayerDoc>,
}

#[derive(Serialize)]
struct GameDoc {
    players: usize,
    description: String,
}

#[derive(Serialize)]
struct PlayerDoc {
    player: usize,
    name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    rm: Option<ValueDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pb: Option<ValueDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ss: Option<ValueDoc>,
}

#[derive(Serialize)]
struct ValueDoc {
    plus: String,
    minus: String,
    total: String,
}

impl ValueDoc {
    fn new(power: &SignedPower) -> ValueDoc {
        ValueDoc {
            plus: to_fraction_string(&power.plus),
            minus: to_fraction_string(&power.minus),
            total: to_fraction_string(&power.total),
        }
    }
}

pub fn parse_measures(text: &str) -> Result<Vec<MeasureId>, Failure> {
    let mut measures = Vec::new();
    for part in text.split(',') {
        let id: MeasureId = part.trim().parse().map_err(Failure::Usage)?;
        if !measures.contains(&id) {
            measures.push(id);
        }
    }
    if measures.is_empty() {
        return Err(Failure::Usage("no measures requested".into()));
    }
    Ok(measures)
}

fn column(
    game: &Game,
    profile: &VoteProfile,
    measure: MeasureId,
    ss_cap: usize,
) -> Result<Vec<SignedPower>, Failure> {
    let players: Vec<usize> = (0..game.player_count()).collect();
    match measure {
        MeasureId::Rm => players
            .par_iter()
            .map(|&p| rm_player(game, profile, p))
            .collect::<Result<Vec<_>, _>>()
            .map_err(Failure::from),
        MeasureId::Pb => players
            .par_iter()
            .map(|&p| pb_player(game, profile, p))
            .collect::<Result<Vec<_>, _>>()
            .map_err(Failure::from),
        MeasureId::Ss => {
            if !profile.is_equiprobable() {
                return Err(Failure::Usage(
                    "the permutation index is only defined under the equiprobable profile".into(),
                ));
            }
            ss_with_cap(game, ss_cap).map_err(Failure::from)
        }
    }
}

pub fn run(args: ComputeArgs) -> Result<i32, Failure> {
    let loaded = load_game(&args.game)?;
    let n = loaded.game.player_count();
    let measures = parse_measures(&args.measure)?;
    let profile = match &args.profile {
        Some(text) => gamespec::parse_profile(n, text).map_err(Failure::Usage)?,
        None => VoteProfile::equiprobable(n),
    };
    let only = args.player.map(|p| parse_player(n, p)).transpose()?;

    let mut columns: Vec<(MeasureId, Vec<SignedPower>)> = Vec::new();
    for &measure in &measures {
        columns.push((measure, column(&loaded.game, &profile, measure, args.ss_cap)?));
    }

    let players: Vec<usize> = match only {
        Some(p) => vec![p],
        None => (0..n).collect(),
    };

    match args.format {
        TableFormat::Human => {
            println!("game: {}", loaded.game.description());
            let profile_text = if profile.is_equiprobable() {
                "equiprobable".to_string()
            } else {
                profile
                    .probs()
                    .iter()
                    .map(to_fraction_string)
                    .collect::<Vec<_>>()
                    .join(",")
            };
            println!("profile: {profile_text}");
            println!(
                "{:<8} {:<8} {:>12} {:>12} {:>12} {:>10}",
                "player", "measure", "plus", "minus", "total", "~total"
            );
            for &p in &players {
                for (measure, values) in &columns {
                    let v = &values[p];
                    println!(
                        "{:<8} {:<8} {:>12} {:>12} {:>12} {:>10.4}",
                        loaded.names[p],
                        measure.to_string(),
                        to_fraction_string(&v.plus),
                        to_fraction_string(&v.minus),
                        to_fraction_string(&v.total),
                        to_f64(&v.total),
                    );
                }
            }
        }
        TableFormat::Json => {
            let doc = ComputeDoc {
                game: GameDoc {
                    players: n,
                    description: loaded.game.description(),
                },
                profile: profile.probs().iter().map(to_fraction_string).collect(),
                players: players
                    .iter()
                    .map(|&p| {
                        let lookup = |id: MeasureId| {
                            columns
                                .iter()
                                .find(|(m, _)| *m == id)
                                .map(|(_, values)| ValueDoc::new(&values[p]))
                        };
                        PlayerDoc {
                            player: p + 1,
                            name: loaded.names[p].clone(),
                            rm: lookup(MeasureId::Rm),
                            pb: lookup(MeasureId::Pb),
                            ss: lookup(MeasureId::Ss),
                        }
                    })
                    .collect(),
            };
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
        TableFormat::Csv => {
            println!("player,name,measure,plus,minus,total");
            for &p in &players {
                for (measure, values) in &columns {
                    let v = &values[p];
                    println!(
                        "{},{},{},{},{},{}",
                        p + 1,
                        loaded.names[p],
                        measure,
                        to_fraction_string(&v.plus),
                        to_fraction_string(&v.minus),
                        to_fraction_string(&v.total),
                    );
                }
            }
        }
    }
    Ok(0)
}
