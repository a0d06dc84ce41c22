//! Game transformations used by the postulate audits.
//!
//! Each transform produces a new game plus a [`TransformRecord`] describing
//! which players were involved and how indices moved. Results are validated;
//! the only transform that can legitimately leave the class of simple games
//! is `quarrel` (reported as [`Error::NonSimpleResult`]), every other
//! failure of the axioms would be a bug and surfaces as an internal error.
//!
//! Index conventions:
//!
//! * `add_dummy`, `add_yes_blocker`, `add_no_blocker` append the new player
//!   at internal index `n`. Added blockers carry the display name `"0"`;
//!   an added dummy is named like any other player.
//! * `bloc` merges the annexed player into the annexer: the result has
//!   `n - 1` players, the bloc player sits in the annexer's slot, players
//!   above the annexed index shift down by one, and the record's
//!   `index_map` sends the annexed player to the bloc player.

use crate::error::{Error, Result};
use crate::game::{Game, SimpleViolation};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TransformKind {
    AddDummy,
    Donate,
    Bloc,
    Quarrel,
    AddYesBlocker,
    AddNoBlocker,
}

impl fmt::Display for TransformKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TransformKind::AddDummy => "add_dummy",
            TransformKind::Donate => "donate",
            TransformKind::Bloc => "bloc",
            TransformKind::Quarrel => "quarrel",
            TransformKind::AddYesBlocker => "add_yes_blocker",
            TransformKind::AddNoBlocker => "add_no_blocker",
        })
    }
}

impl FromStr for TransformKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.replace('-', "_").as_str() {
            "add_dummy" => Ok(TransformKind::AddDummy),
            "donate" => Ok(TransformKind::Donate),
            "bloc" => Ok(TransformKind::Bloc),
            "quarrel" => Ok(TransformKind::Quarrel),
            "add_yes_blocker" => Ok(TransformKind::AddYesBlocker),
            "add_no_blocker" => Ok(TransformKind::AddNoBlocker),
            other => Err(format!("unknown transform {other:?}")),
        }
    }
}

/// A player introduced by a transform, with its display name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AddedPlayer {
    pub index: usize,
    pub display_name: String,
}

/// What a transform did: the players involved (source indices), how every
/// source player's index maps into the result, and any added player.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformRecord {
    pub kind: TransformKind,
    pub players: Vec<usize>,
    pub source_n: usize,
    pub result_n: usize,
    /// `index_map[old] = new`; an absorbed player maps to the bloc player.
    pub index_map: Vec<usize>,
    pub added: Option<AddedPlayer>,
}

fn identity_map(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn check_player(game: &Game, player: usize) -> Result<()> {
    let n = game.player_count();
    if player >= n {
        return Err(Error::IndexOutOfRange { index: player, n });
    }
    Ok(())
}

fn check_pair(game: &Game, a: usize, b: usize) -> Result<()> {
    check_player(game, a)?;
    check_player(game, b)?;
    if a == b {
        return Err(Error::SamePlayer { player: a });
    }
    Ok(())
}

/// Appends a player whose vote never matters.
pub fn add_dummy(game: &Game) -> Result<(Game, TransformRecord)> {
    let n = game.player_count();
    crate::game::check_cap(n + 1, game.exact_cap())?;
    let low = 1u64 << n;
    let table: Vec<bool> = (0..low << 1)
        .map(|mask| game.wins(mask & (low - 1)))
        .collect();
    let result = Game::from_proved_table(n + 1, table, game.exact_cap())?;
    let record = TransformRecord {
        kind: TransformKind::AddDummy,
        players: vec![],
        source_n: n,
        result_n: n + 1,
        index_map: identity_map(n),
        added: Some(AddedPlayer {
            index: n,
            display_name: (n + 1).to_string(),
        }),
    };
    Ok((result, record))
}

/// The donor hands their entire contribution to the recipient: afterwards
/// the recipient alone achieves whatever the pair achieved together, and
/// the donor's vote is worthless.
pub fn donate(game: &Game, donor: usize, recipient: usize) -> Result<(Game, TransformRecord)> {
    check_pair(game, donor, recipient)?;
    let n = game.player_count();
    let bd = 1u64 << donor;
    let br = 1u64 << recipient;
    let table: Vec<bool> = (0..1u64 << n)
        .map(|mask| {
            let source = match (mask & br != 0, mask & bd != 0) {
                (true, false) => mask | bd, // recipient now carries both votes
                (false, true) => mask & !bd, // donor's yes is worthless
                _ => mask,
            };
            game.wins(source)
        })
        .collect();
    let result = Game::from_proved_table(n, table, game.exact_cap())?;
    let record = TransformRecord {
        kind: TransformKind::Donate,
        players: vec![donor, recipient],
        source_n: n,
        result_n: n,
        index_map: identity_map(n),
        added: None,
    };
    Ok((result, record))
}

/// The annexer absorbs the annexed player: one player fewer, with the bloc
/// voting as the pair voted together.
pub fn bloc(game: &Game, annexer: usize, annexed: usize) -> Result<(Game, TransformRecord)> {
    check_pair(game, annexer, annexed)?;
    let n = game.player_count();
    let bloc_index = if annexer < annexed { annexer } else { annexer - 1 };
    let bj = 1u64 << annexed;
    let low_mask = bj - 1;
    let table: Vec<bool> = (0..1u64 << (n - 1))
        .map(|mask| {
            // Re-insert a cleared bit at the annexed slot; the bloc player's
            // bit lands back on the annexer via the same expansion.
            let mut source = (mask & low_mask) | ((mask & !low_mask) << 1);
            if mask >> bloc_index & 1 == 1 {
                source |= bj;
            }
            game.wins(source)
        })
        .collect();
    let result = Game::from_proved_table(n - 1, table, game.exact_cap())?;
    let mut index_map: Vec<usize> = (0..n)
        .map(|k| if k <= annexed { k } else { k - 1 })
        .collect();
    index_map[annexed] = bloc_index;
    let record = TransformRecord {
        kind: TransformKind::Bloc,
        players: vec![annexer, annexed],
        source_n: n,
        result_n: n - 1,
        index_map,
        added: None,
    };
    Ok((result, record))
}

/// Two players refuse to cooperate, striking every outcome that depended on
/// their acting together. Where both vote yes, the division now wins only
/// if one of their yes-votes alone would have carried it; where both vote
/// no, it now wins already when each of their yes-votes alone would have
/// carried it (a loss that needed their joint refusal is struck). Divisions
/// splitting the pair are unchanged. The result can fail unanimity, which
/// is reported as [`Error::NonSimpleResult`]; monotonicity is always
/// preserved.
pub fn quarrel(game: &Game, a: usize, b: usize) -> Result<(Game, TransformRecord)> {
    check_pair(game, a, b)?;
    let n = game.player_count();
    let ba = 1u64 << a;
    let bb = 1u64 << b;
    let table: Vec<bool> = (0..1u64 << n)
        .map(|mask| match (mask & ba != 0, mask & bb != 0) {
            (true, true) => game.wins(mask & !bb) || game.wins(mask & !ba),
            (false, false) => game.wins(mask | ba) && game.wins(mask | bb),
            _ => game.wins(mask),
        })
        .collect();
    let report = crate::game::validate_simple(n, &table);
    if let Some(violation) = report.violations.into_iter().next() {
        return match violation {
            SimpleViolation::NonMonotone { .. } => Err(Error::InternalInvariant(format!(
                "quarrel broke monotonicity: {violation}"
            ))),
            other => Err(Error::NonSimpleResult(other)),
        };
    }
    let result = Game::from_proved_table(n, table, game.exact_cap())?;
    let record = TransformRecord {
        kind: TransformKind::Quarrel,
        players: vec![a, b],
        source_n: n,
        result_n: n,
        index_map: identity_map(n),
        added: None,
    };
    Ok((result, record))
}

/// Appends a player whose yes is necessary (though never sufficient) for
/// any win: the winning sets are the old ones with the blocker added.
/// The added player carries the display name `"0"`.
pub fn add_yes_blocker(game: &Game) -> Result<(Game, TransformRecord)> {
    let n = game.player_count();
    crate::game::check_cap(n + 1, game.exact_cap())?;
    let low = 1u64 << n;
    let table: Vec<bool> = (0..low << 1)
        .map(|mask| mask & low != 0 && game.wins(mask & (low - 1)))
        .collect();
    let result = Game::from_proved_table(n + 1, table, game.exact_cap())?;
    let record = TransformRecord {
        kind: TransformKind::AddYesBlocker,
        players: vec![],
        source_n: n,
        result_n: n + 1,
        index_map: identity_map(n),
        added: Some(AddedPlayer {
            index: n,
            display_name: "0".to_string(),
        }),
    };
    Ok((result, record))
}

/// Appends a player whose no is necessary for any loss: every division with
/// the new player's yes wins, the rest resolve as before. The added player
/// carries the display name `"0"`.
pub fn add_no_blocker(game: &Game) -> Result<(Game, TransformRecord)> {
    let n = game.player_count();
    crate::game::check_cap(n + 1, game.exact_cap())?;
    let low = 1u64 << n;
    let table: Vec<bool> = (0..low << 1)
        .map(|mask| mask & low != 0 || game.wins(mask & (low - 1)))
        .collect();
    let result = Game::from_proved_table(n + 1, table, game.exact_cap())?;
    let record = TransformRecord {
        kind: TransformKind::AddNoBlocker,
        players: vec![],
        source_n: n,
        result_n: n + 1,
        index_map: identity_map(n),
        added: Some(AddedPlayer {
            index: n,
            display_name: "0".to_string(),
        }),
    };
    Ok((result, record))
}

/// Removes a player that cannot affect any outcome. The inverse of
/// `add_dummy` up to index shifting; players above the removed index shift
/// down by one.
pub fn delete_dummy(game: &Game, player: usize) -> Result<Game> {
    check_player(game, player)?;
    if !game.is_dummy(player) {
        return Err(Error::NotADummy { player });
    }
    let n = game.player_count();
    let low_mask = (1u64 << player) - 1;
    let table: Vec<bool> = (0..1u64 << (n - 1))
        .map(|mask| game.wins((mask & low_mask) | ((mask & !low_mask) << 1)))
        .collect();
    Game::from_proved_table(n - 1, table, game.exact_cap())
}
