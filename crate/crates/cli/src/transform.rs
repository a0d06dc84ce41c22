//! The `transform` subcommand: apply one of the six game transformations
//! and print the resulting game (as a reusable explicit JSON document) plus
//! the bookkeeping record. A quarrel that leaves the class of simple games
//! is a determinate answer, not an error: it is reported with a null result
//! and exit code 0.

use serde::Serialize;
use votepower::transforms::{
    add_dummy, add_no_blocker, add_yes_blocker, bloc, donate, quarrel, TransformRecord,
};
use votepower::{Error, Game};

use crate::{load_game, parse_player, DocFormat, Failure, TransformArgs, TransformOp};

#[derive(Serialize)]
struct TransformDoc {
    /// Explicit game document, reusable as a `--game` argument. Null when
    /// the transform has no simple-game result.
    result: Option<GameDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    failure: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    record: Option<RecordDoc>,
}

#[derive(Serialize)]
struct GameDoc {
    n: usize,
    winning: Vec<Vec<usize>>,
    names: Vec<String>,
}

#[derive(Serialize)]
struct RecordDoc {
    kind: String,
    players: Vec<usize>,
    source_players: usize,
    result_players: usize,
    /// For each source player (1-indexed position), the 1-indexed seat in
    /// the result.
    index_map: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    added: Option<AddedDoc>,
}

#[derive(Serialize)]
struct AddedDoc {
    player: usize,
    name: String,
}

fn game_doc(game: &Game, names: Vec<String>) -> GameDoc {
    let winning = game
        .winning_masks()
        .map(|mask| {
            (0..game.player_count())
                .filter(|&i| mask & (1 << i) != 0)
                .map(|i| i + 1)
                .collect()
        })
        .collect();
    GameDoc {
        n: game.player_count(),
        winning,
        names,
    }
}

fn record_doc(record: &TransformRecord) -> RecordDoc {
    RecordDoc {
        kind: record.kind.to_string(),
        players: record.players.iter().map(|&p| p + 1).collect(),
        source_players: record.source_n,
        result_players: record.result_n,
        index_map: record.index_map.iter().map(|&i| i + 1).collect(),
        added: record.added.as_ref().map(|a| AddedDoc {
            player: a.index + 1,
            name: a.display_name.clone(),
        }),
    }
}

/// Display names for the result: source names flow along the index map
/// (annexations join with `+`), added players keep their recorded name.
fn result_names(source: &[String], record: &TransformRecord) -> Vec<String> {
    let mut buckets: Vec<Vec<String>> = vec![Vec::new(); record.result_n];
    for (i, &slot) in record.index_map.iter().enumerate() {
        buckets[slot].push(source[i].clone());
    }
    if let Some(added) = &record.added {
        buckets[added.index].push(added.display_name.clone());
    }
    buckets.into_iter().map(|parts| parts.join("+")).collect()
}

fn parse_pair(n: usize, players: &Option<String>, op: &str) -> Result<(usize, usize), Failure> {
    let text = players
        .as_ref()
        .ok_or_else(|| Failure::Usage(format!("{op} needs --players i,j")))?;
    let parts: Vec<&str> = text.split(',').map(str::trim).collect();
    if parts.len() != 2 {
        return Err(Failure::Usage(format!(
            "{op} needs exactly two players, got {text:?}"
        )));
    }
    let a: usize = parts[0]
        .parse()
        .map_err(|e| Failure::Usage(format!("bad player {:?}: {e}", parts[0])))?;
    let b: usize = parts[1]
        .parse()
        .map_err(|e| Failure::Usage(format!("bad player {:?}: {e}", parts[1])))?;
    Ok((parse_player(n, a)?, parse_player(n, b)?))
}

pub fn run(args: TransformArgs) -> Result<i32, Failure> {
    let loaded = load_game(&args.game)?;
    let n = loaded.game.player_count();
    let no_players = |op: &str| -> Result<(), Failure> {
        if args.players.is_some() {
            Err(Failure::Usage(format!("{op} takes no --players")))
        } else {
            Ok(())
        }
    };

    let applied: Result<(Game, TransformRecord), Error> = match args.op {
        TransformOp::AddDummy => {
            no_players("add-dummy")?;
            add_dummy(&loaded.game)
        }
        TransformOp::AddYesBlocker => {
            no_players("add-yes-blocker")?;
            add_yes_blocker(&loaded.game)
        }
        TransformOp::AddNoBlocker => {
            no_players("add-no-blocker")?;
            add_no_blocker(&loaded.game)
        }
        TransformOp::Donate => {
            let (donor, recipient) = parse_pair(n, &args.players, "donate")?;
            donate(&loaded.game, donor, recipient)
        }
        TransformOp::Bloc => {
            let (annexer, annexed) = parse_pair(n, &args.players, "bloc")?;
            bloc(&loaded.game, annexer, annexed)
        }
        TransformOp::Quarrel => {
            let (a, b) = parse_pair(n, &args.players, "quarrel")?;
            quarrel(&loaded.game, a, b)
        }
    };

    let doc = match applied {
        Ok((game, record)) => {
            let names = result_names(&loaded.names, &record);
            TransformDoc {
                result: Some(game_doc(&game, names)),
                failure: None,
                record: Some(record_doc(&record)),
            }
        }
        Err(Error::NonSimpleResult(violation)) => TransformDoc {
            result: None,
            failure: Some(format!(
                "the transform result is not a simple game: {violation}"
            )),
            record: None,
        },
        Err(e) => return Err(Failure::from(e)),
    };

    match args.format {
        DocFormat::Json => {
            println!("{}", serde_json::to_string_pretty(&doc).expect("serializable"));
        }
        DocFormat::Human => match (&doc.result, &doc.record, &doc.failure) {
            (Some(result), Some(record), _) => {
                println!("kind: {}", record.kind);
                println!("players: {} -> {}", record.source_players, record.result_players);
                println!("names: {}", result.names.join(", "));
                let coalitions: Vec<String> = result
                    .winning
                    .iter()
                    .map(|c| {
                        let parts: Vec<String> = c.iter().map(|p| p.to_string()).collect();
                        format!("{{{}}}", parts.join(","))
                    })
                    .collect();
                println!("winning: {}", coalitions.join(" "));
                if let Some(added) = &record.added {
                    println!("added: player {} ({})", added.player, added.name);
                }
            }
            (_, _, Some(failure)) => println!("no result: {failure}"),
            _ => unreachable!("document has either a result or a failure"),
        },
    }
    Ok(0)
}
