//! Textual game descriptions: the weighted `"quota;w1,w2,..."` grammar, the
//! explicit JSON document, and file paths holding either. Also the small
//! parsers shared by several subcommands (divisions, vote profiles).

use serde::Deserialize;
use votepower::measures::VoteProfile;
use votepower::rational::parse_rational;
use votepower::{Division, Game, WeightedRule};

use crate::Failure;

/// Environment variable overriding the exact-mode player cap.
pub const CAP_ENV: &str = "VOTEPOWER_EXACT_CAP";

/// A parsed game description: either a weighted rule or an explicit list of
/// all winning coalitions, with optional display names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GameSpec {
    Weighted {
        quota: u64,
        weights: Vec<u64>,
    },
    Explicit {
        n: usize,
        /// 0-indexed winning coalitions, complete (not closed upward).
        winning: Vec<Vec<usize>>,
        names: Option<Vec<String>>,
    },
}

#[derive(Deserialize)]
struct ExplicitDoc {
    n: usize,
    /// 1-indexed player sets, as in all human-facing output.
    winning: Vec<Vec<usize>>,
    #[serde(default)]
    names: Option<Vec<String>>,
}

/// Parses inline text or, when the text names an existing file, that file's
/// contents. JSON documents start with `{`; everything else must match the
/// weighted grammar `INT ";" INT ("," INT)*`.
pub fn parse_game_spec(text: &str) -> Result<GameSpec, String> {
    let trimmed = text.trim();
    if std::path::Path::new(trimmed).is_file() {
        let contents = std::fs::read_to_string(trimmed)
            .map_err(|e| format!("cannot read game file {trimmed:?}: {e}"))?;
        let inner = contents.trim();
        if std::path::Path::new(inner).is_file() {
            return Err(format!("game file {trimmed:?} names another file"));
        }
        return parse_game_spec(inner);
    }
    if trimmed.starts_with('{') {
        parse_explicit(trimmed)
    } else {
        parse_weighted(trimmed)
    }
}

fn parse_weighted(text: &str) -> Result<GameSpec, String> {
    let (quota_text, weights_text) = text
        .split_once(';')
        .ok_or_else(|| format!("expected \"quota;w1,w2,...\", got {text:?}"))?;
    let quota: u64 = quota_text
        .trim()
        .parse()
        .map_err(|e| format!("bad quota {:?}: {e}", quota_text.trim()))?;
    let weights_text = weights_text.trim();
    if weights_text.is_empty() {
        return Err("empty weight list".into());
    }
    let weights = weights_text
        .split(',')
        .enumerate()
        .map(|(i, w)| {
            w.trim()
                .parse::<u64>()
                .map_err(|e| format!("bad weight #{}: {:?}: {e}", i + 1, w.trim()))
        })
        .collect::<Result<Vec<u64>, String>>()?;
    Ok(GameSpec::Weighted { quota, weights })
}

fn parse_explicit(text: &str) -> Result<GameSpec, String> {
    let doc: ExplicitDoc =
        serde_json::from_str(text).map_err(|e| format!("bad game document: {e}"))?;
    if let Some(names) = &doc.names {
        if names.len() != doc.n {
            return Err(format!(
                "{} names given for {} players",
                names.len(),
                doc.n
            ));
        }
    }
    let mut winning = Vec::with_capacity(doc.winning.len());
    for coalition in &doc.winning {
        let mut members = Vec::with_capacity(coalition.len());
        for &player in coalition {
            if player == 0 || player > doc.n {
                return Err(format!(
                    "player {player} out of range 1..={} in winning coalition",
                    doc.n
                ));
            }
            members.push(player - 1);
        }
        members.sort_unstable();
        members.dedup();
        winning.push(members);
    }
    winning.sort();
    winning.dedup();
    Ok(GameSpec::Explicit {
        n: doc.n,
        winning,
        names: doc.names,
    })
}

impl GameSpec {
    pub fn player_count(&self) -> usize {
        match self {
            GameSpec::Weighted { weights, .. } => weights.len(),
            GameSpec::Explicit { n, .. } => *n,
        }
    }

    /// Builds the game under `cap`, mapping construction failures onto the
    /// process-level failure kinds.
    pub fn to_game(&self, cap: usize) -> Result<Game, Failure> {
        let built = match self {
            GameSpec::Weighted { quota, weights } => {
                Game::from_weighted_with_cap(*quota, weights, cap)
            }
            GameSpec::Explicit { n, winning, .. } => {
                if *n > cap {
                    return Err(Failure::SizeLimit(format!(
                        "{n} players exceed the exact-mode cap of {cap} (override with {CAP_ENV})"
                    )));
                }
                let mut table = vec![false; 1usize << *n];
                for coalition in winning {
                    let mask: u64 = coalition.iter().map(|&i| 1u64 << i).sum();
                    table[mask as usize] = true;
                }
                Game::from_winning_table_with_cap(*n, table, cap)
            }
        };
        built.map_err(Failure::from)
    }

    /// Display names: explicit ones when given, else 1-based indices.
    pub fn names(&self) -> Vec<String> {
        match self {
            GameSpec::Explicit { names: Some(names), .. } => names.clone(),
            _ => (1..=self.player_count()).map(|i| i.to_string()).collect(),
        }
    }

    /// Builds a winning rule for the Monte-Carlo estimators: the exact table
    /// when the game fits the cap, point queries of the weighted rule beyond
    /// it (the walks never need the full table). Explicit documents are
    /// themselves table-sized, so they always stay under the cap.
    pub fn to_estimate_rule(&self, cap: usize) -> Result<EstimateRule, Failure> {
        match self {
            GameSpec::Weighted { quota, weights } if weights.len() > cap => {
                WeightedRule::new(*quota, weights.clone())
                    .map(EstimateRule::PointQuery)
                    .map_err(Failure::from)
            }
            _ => self.to_game(cap).map(EstimateRule::Exact),
        }
    }
}

/// See [`GameSpec::to_estimate_rule`].
pub enum EstimateRule {
    Exact(Game),
    PointQuery(WeightedRule),
}

/// Resolves the exact-mode cap: the override variable when set, else the
/// library default.
pub fn resolve_cap() -> Result<usize, Failure> {
    match std::env::var(CAP_ENV) {
        Ok(value) => value.trim().parse().map_err(|e| {
            Failure::Usage(format!("bad {CAP_ENV} value {value:?}: {e}"))
        }),
        Err(std::env::VarError::NotPresent) => Ok(votepower::game::DEFAULT_EXACT_CAP),
        Err(e) => Err(Failure::Usage(format!("bad {CAP_ENV} value: {e}"))),
    }
}

/// Parses a division given 1-indexed players: `empty`, `full`, a digit
/// string like `134` (only unambiguous for at most 9 players), or a
/// comma-separated list with optional braces like `{1,3,11}`.
pub fn parse_division(n: usize, text: &str) -> Result<Division, String> {
    let trimmed = text.trim();
    match trimmed {
        "empty" | "" => return Division::new(0, n).map_err(|e| e.to_string()),
        "full" => return Ok(Division::full(n)),
        _ => {}
    }
    let inner = trimmed
        .strip_prefix('{')
        .and_then(|rest| rest.strip_suffix('}'))
        .unwrap_or(trimmed);
    let voters: Vec<usize> = if inner.contains(',') {
        inner
            .split(',')
            .map(|part| part.trim().parse::<usize>().map_err(|e| format!("bad player {part:?}: {e}")))
            .collect::<Result<_, String>>()?
    } else if n <= 9 && inner.chars().all(|c| c.is_ascii_digit()) {
        inner
            .chars()
            .map(|c| c.to_digit(10).unwrap() as usize)
            .collect()
    } else {
        vec![inner
            .parse::<usize>()
            .map_err(|e| format!("bad division {trimmed:?}: {e}"))?]
    };
    for &v in &voters {
        if v == 0 || v > n {
            return Err(format!("player {v} out of range 1..={n}"));
        }
    }
    Division::from_yes_voters(n, voters.into_iter().map(|v| v - 1)).map_err(|e| e.to_string())
}

/// Parses `--profile` values: comma-separated rationals (fractions,
/// integers or decimals), one per player.
pub fn parse_profile(n: usize, text: &str) -> Result<VoteProfile, String> {
    let probs = text
        .split(',')
        .map(|part| parse_rational(part.trim()))
        .collect::<Result<Vec<_>, String>>()?;
    if probs.len() != n {
        return Err(format!("{} probabilities given for {n} players", probs.len()));
    }
    VoteProfile::new(probs).map_err(|e| e.to_string())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weighted_grammar_round_trips() {
        let spec = parse_game_spec("8;5,4,3,2").unwrap();
        assert_eq!(
            spec,
            GameSpec::Weighted { quota: 8, weights: vec![5, 4, 3, 2] }
        );
        let spec = parse_game_spec(" 3 ; 2 , 1 , 1 ").unwrap();
        assert_eq!(spec, GameSpec::Weighted { quota: 3, weights: vec![2, 1, 1] });
    }

    #[test]
    fn weighted_grammar_rejects_malformed_input() {
        assert!(parse_game_spec("8;").unwrap_err().contains("empty weight list"));
        assert!(parse_game_spec("8").unwrap_err().contains("quota;w1"));
        assert!(parse_game_spec("q;1,2").unwrap_err().contains("bad quota"));
        assert!(parse_game_spec("8;1,x").unwrap_err().contains("bad weight #2"));
    }

    #[test]
    fn explicit_documents_are_one_indexed_and_deduplicated() {
        let spec = parse_game_spec(
            r#"{"n": 2, "winning": [[1,2],[2,1],[1]], "names": ["Ada","Ben"]}"#,
        )
        .unwrap();
        assert_eq!(
            spec,
            GameSpec::Explicit {
                n: 2,
                winning: vec![vec![0], vec![0, 1]],
                names: Some(vec!["Ada".into(), "Ben".into()]),
            }
        );
        let game = spec.to_game(20).unwrap();
        assert!(game.wins(0b01));
        assert!(!game.wins(0b10));
    }

    #[test]
    fn explicit_documents_reject_out_of_range_players() {
        let err = parse_game_spec(r#"{"n": 2, "winning": [[3]]}"#).unwrap_err();
        assert!(err.contains("out of range"));
        let err = parse_game_spec(r#"{"n": 2, "winning": [[1,2]], "names": ["solo"]}"#)
            .unwrap_err();
        assert!(err.contains("names"));
    }

    #[test]
    fn division_labels_parse_in_both_styles() {
        assert_eq!(parse_division(4, "empty").unwrap().mask(), 0);
        assert_eq!(parse_division(4, "full").unwrap().mask(), 0b1111);
        assert_eq!(parse_division(4, "134").unwrap().mask(), 0b1101);
        assert_eq!(parse_division(11, "{1,3,11}").unwrap().mask(), 0b100_0000_0101);
        assert!(parse_division(4, "5").is_err());
        assert!(parse_division(4, "0").is_err());
    }

    #[test]
    fn profiles_parse_fractions_and_decimals() {
        let profile = parse_profile(3, "1/2, 0.25, 1").unwrap();
        assert_eq!(profile.yes_prob(1), &votepower::rational::ratio(1, 4));
        assert!(parse_profile(3, "1/2,1/2").unwrap_err().contains("3 players"));
        assert!(parse_profile(2, "1/2,3/2").unwrap_err().contains("probability"));
    }
}
