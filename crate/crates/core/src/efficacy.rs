//! Decisiveness and recursive efficacy scores.
//!
//! Player `i` is *yes-decisive* at a division when their yes is necessary
//! for the win (the division wins, but loses without `i`), and *no-decisive*
//! when their no is necessary for the loss. Classical measures stop there;
//! the recursive efficacy score also credits divisions from which decisive
//! ground is merely reachable.
//!
//! The yes-efficacy of `i` at a winning division is:
//!
//! * `1` if `i` is yes-decisive there;
//! * `0` if `i` is not among the yes-voters (nothing to credit);
//! * otherwise the average efficacy over the division's loyal children —
//!   equivalently, the probability that a uniform random walk towards
//!   minimal winning ground ever reaches a division where `i` is
//!   yes-decisive.
//!
//! No-efficacy is the mirror image on the losing side. Efficacy at a
//! division on the wrong side of the outcome is `0` by definition, so the
//! two scores never overlap.
//!
//! Tables are filled bottom-up in popcount order (children of a winning
//! division have one fewer yes-vote; children of a losing division one
//! more), so evaluation is iterative and every averaging step only reads
//! finished entries.

use crate::error::Result;
use crate::game::{Division, Game};
use crate::rational::Rational;
use num::{One, Zero};
use std::fmt;
use std::str::FromStr;

/// Which component of power: the yes side or the no side.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "plus",
            Sign::Minus => "minus",
        })
    }
}

impl FromStr for Sign {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "plus" | "+" => Ok(Sign::Plus),
            "minus" | "-" => Ok(Sign::Minus),
            other => Err(format!("unknown sign {other:?}, expected plus|minus")),
        }
    }
}

/// Decisiveness of one player at one division. At most one flag is set:
/// yes-decisiveness needs a winning division, no-decisiveness a losing one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Decisiveness {
    pub yes_decisive: bool,
    pub no_decisive: bool,
}

pub fn decisive(game: &Game, player: usize, division: Division) -> Decisiveness {
    assert!(player < game.player_count(), "player out of range");
    assert_eq!(division.player_count(), game.player_count());
    let mask = division.mask();
    let bit = 1u64 << player;
    if game.wins(mask) {
        Decisiveness {
            yes_decisive: mask & bit != 0 && !game.wins(mask & !bit),
            no_decisive: false,
        }
    } else {
        Decisiveness {
            yes_decisive: false,
            no_decisive: mask & bit == 0 && game.wins(mask | bit),
        }
    }
}

/// How the non-decisive interior of the lattice is scored.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EfficacyMode {
    /// Average over loyal children: the recursive score.
    Recursive,
    /// Zero unless outright decisive: degenerates to the decisiveness
    /// indicator, which is exactly the Penrose–Banzhaf evaluation.
    DecisiveOnly,
}

/// Dense per-division efficacy scores for one player and one sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EfficacyTable {
    pub player: usize,
    pub sign: Sign,
    values: Vec<Rational>,
}

impl EfficacyTable {
    pub fn value(&self, division: Division) -> &Rational {
        &self.values[division.mask() as usize]
    }

    pub fn value_mask(&self, mask: u64) -> &Rational {
        &self.values[mask as usize]
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }
}

/// Yes-efficacy of one player at one division.
pub fn alpha_plus(game: &Game, player: usize, division: Division) -> Rational {
    assert_eq!(division.player_count(), game.player_count());
    let (plus, _) = alpha_tables(game, player);
    plus.value(division).clone()
}

/// No-efficacy of one player at one division.
pub fn alpha_minus(game: &Game, player: usize, division: Division) -> Rational {
    assert_eq!(division.player_count(), game.player_count());
    let (_, minus) = alpha_tables(game, player);
    minus.value(division).clone()
}

/// Both efficacy tables (yes and no side) for one player.
pub fn alpha_tables(game: &Game, player: usize) -> (EfficacyTable, EfficacyTable) {
    alpha_tables_mode(game, player, EfficacyMode::Recursive)
}

pub fn alpha_tables_mode(
    game: &Game,
    player: usize,
    mode: EfficacyMode,
) -> (EfficacyTable, EfficacyTable) {
    assert!(player < game.player_count(), "player out of range");
    let n = game.player_count();
    let size = 1usize << n;
    let bit = 1u64 << player;
    let masks = masks_by_popcount(n);

    let mut plus = vec![Rational::zero(); size];
    for &mask in &masks {
        // Ascending popcount: children (one fewer yes) are already final.
        if !game.wins(mask) || mask & bit == 0 {
            continue;
        }
        if !game.wins(mask & !bit) {
            plus[mask as usize] = Rational::one();
        } else if mode == EfficacyMode::Recursive {
            let mut sum = Rational::zero();
            let mut count = 0usize;
            for k in 0..n {
                let child = mask & !(1 << k);
                if mask >> k & 1 == 1 && game.wins(child) {
                    sum += &plus[child as usize];
                    count += 1;
                }
            }
            debug_assert!(count > 0, "non-decisive winning division with no loyal children");
            plus[mask as usize] = sum / Rational::from_integer(count.into());
        }
    }

    let mut minus = vec![Rational::zero(); size];
    for &mask in masks.iter().rev() {
        // Descending popcount: children (one more yes) are already final.
        if game.wins(mask) || mask & bit != 0 {
            continue;
        }
        if game.wins(mask | bit) {
            minus[mask as usize] = Rational::one();
        } else if mode == EfficacyMode::Recursive {
            let mut sum = Rational::zero();
            let mut count = 0usize;
            for k in 0..n {
                let child = mask | 1 << k;
                if mask >> k & 1 == 0 && !game.wins(child) {
                    sum += &minus[child as usize];
                    count += 1;
                }
            }
            debug_assert!(count > 0, "non-decisive losing division with no loyal children");
            minus[mask as usize] = sum / Rational::from_integer(count.into());
        }
    }

    (
        EfficacyTable {
            player,
            sign: Sign::Plus,
            values: plus,
        },
        EfficacyTable {
            player,
            sign: Sign::Minus,
            values: minus,
        },
    )
}

/// Floating-point efficacy tables for rules too large for exact tables.
/// Same recursion in `f64`; results are approximate and must be labelled as
/// such by callers. `cap` bounds the table memory (`2^n` doubles per sign).
pub fn alpha_tables_f64<R: crate::game::WinningRule>(
    rule: &R,
    player: usize,
    cap: usize,
) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = rule.player_count();
    crate::game::check_cap(n, cap)?;
    assert!(player < n, "player out of range");
    let size = 1usize << n;
    let bit = 1u64 << player;
    let masks = masks_by_popcount(n);

    let mut plus = vec![0.0f64; size];
    for &mask in &masks {
        if !rule.wins_mask(mask) || mask & bit == 0 {
            continue;
        }
        if !rule.wins_mask(mask & !bit) {
            plus[mask as usize] = 1.0;
        } else {
            let mut sum = 0.0;
            let mut count = 0usize;
            for k in 0..n {
                let child = mask & !(1 << k);
                if mask >> k & 1 == 1 && rule.wins_mask(child) {
                    sum += plus[child as usize];
                    count += 1;
                }
            }
            plus[mask as usize] = sum / count as f64;
        }
    }

    let mut minus = vec![0.0f64; size];
    for &mask in masks.iter().rev() {
        if rule.wins_mask(mask) || mask & bit != 0 {
            continue;
        }
        if rule.wins_mask(mask | bit) {
            minus[mask as usize] = 1.0;
        } else {
            let mut sum = 0.0;
            let mut count = 0usize;
            for k in 0..n {
                let child = mask | 1 << k;
                if mask >> k & 1 == 0 && !rule.wins_mask(child) {
                    sum += minus[child as usize];
                    count += 1;
                }
            }
            minus[mask as usize] = sum / count as f64;
        }
    }

    Ok((plus, minus))
}

fn masks_by_popcount(n: usize) -> Vec<u64> {
    let mut masks: Vec<u64> = (0..1u64 << n).collect();
    masks.sort_by_key(|m| m.count_ones());
    masks
}
