//! Voting profiles and the three power measures.
//!
//! * `rm` — the recursive measure: the probability-weighted sum of a
//!   player's efficacy over all divisions. Under the equiprobable profile
//!   this is the expected efficacy of a uniformly drawn division.
//! * `pb` — the Penrose–Banzhaf measure: the same sum with efficacy
//!   replaced by the bare decisiveness indicator (the `DecisiveOnly`
//!   evaluator mode). Under the equiprobable profile the yes- and
//!   no-components coincide and the total reduces to the classical
//!   swing-count over `2^(n-1)`.
//! * `ss` — the Shapley–Shubik index, split into yes- and no-pivot
//!   components. Computed by the coalition-counting formula; defined for
//!   the equiprobable profile only.
//!
//! Voting profiles assign each player an independent probability of voting
//! yes; a division's probability is the product of its voters' choices.

use crate::efficacy::{alpha_tables_f64, alpha_tables_mode, EfficacyMode};
use crate::error::{Error, Result};
use crate::game::{Division, Game, WinningRule};
use crate::rational::{ratio, Rational};
use num::bigint::BigInt;
use num::{One, Zero};
use std::fmt;
use std::str::FromStr;

/// Cap on player count for the factorial-weighted `ss` computation.
pub const DEFAULT_SS_CAP: usize = 12;

/// Which power measure is being requested or audited.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MeasureId {
    Rm,
    Pb,
    Ss,
}

pub const ALL_MEASURES: [MeasureId; 3] = [MeasureId::Rm, MeasureId::Pb, MeasureId::Ss];

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MeasureId::Rm => "rm",
            MeasureId::Pb => "pb",
            MeasureId::Ss => "ss",
        })
    }
}

impl FromStr for MeasureId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "rm" => Ok(MeasureId::Rm),
            "pb" => Ok(MeasureId::Pb),
            "ss" => Ok(MeasureId::Ss),
            other => Err(format!("unknown measure {other:?}, expected rm|pb|ss")),
        }
    }
}

/// Independent yes-probabilities, one per player, each in `[0, 1]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VoteProfile {
    probs: Vec<Rational>,
}

impl VoteProfile {
    pub fn new(probs: Vec<Rational>) -> Result<VoteProfile> {
        for (index, p) in probs.iter().enumerate() {
            if p < &Rational::zero() || p > &Rational::one() {
                return Err(Error::InvalidProbability {
                    index,
                    value: p.to_string(),
                });
            }
        }
        Ok(VoteProfile { probs })
    }

    /// Every player votes yes with probability 1/2: all divisions equally
    /// likely.
    pub fn equiprobable(n: usize) -> VoteProfile {
        VoteProfile {
            probs: vec![ratio(1, 2); n],
        }
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    pub fn yes_prob(&self, player: usize) -> &Rational {
        &self.probs[player]
    }

    pub fn probs(&self) -> &[Rational] {
        &self.probs
    }

    pub fn is_equiprobable(&self) -> bool {
        let half = ratio(1, 2);
        self.probs.iter().all(|p| *p == half)
    }

    fn check_len(&self, n: usize) -> Result<()> {
        if self.len() != n {
            return Err(Error::ProfileMismatch {
                profile_len: self.len(),
                n,
            });
        }
        Ok(())
    }
}

/// Probability that exactly this division occurs under the profile.
pub fn division_probability(profile: &VoteProfile, division: Division) -> Result<Rational> {
    profile.check_len(division.player_count())?;
    let mut p = Rational::one();
    for i in 0..division.player_count() {
        if division.contains(i) {
            p *= profile.yes_prob(i);
        } else {
            p *= Rational::one() - profile.yes_prob(i);
        }
    }
    Ok(p)
}

/// Probabilities of all `2^n` divisions, indexed by mask.
pub fn division_probabilities(profile: &VoteProfile) -> Vec<Rational> {
    let n = profile.len();
    let mut out = vec![Rational::one(); 1 << n];
    for (mask, slot) in out.iter_mut().enumerate() {
        for i in 0..n {
            if mask >> i & 1 == 1 {
                *slot *= profile.yes_prob(i);
            } else {
                *slot *= Rational::one() - profile.yes_prob(i);
            }
        }
    }
    out
}

/// One player's power split into its yes-component, no-component and total.
/// For the recursive and decisiveness measures the total is the sum of the
/// components; for the permutation index the components coincide and the
/// total is their common value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPower {
    pub plus: Rational,
    pub minus: Rational,
    pub total: Rational,
}

impl SignedPower {
    fn new(plus: Rational, minus: Rational) -> SignedPower {
        let total = &plus + &minus;
        SignedPower { plus, minus, total }
    }
}

/// Recursive measure of every player under `profile`.
pub fn rm(game: &Game, profile: &VoteProfile) -> Result<Vec<SignedPower>> {
    weighted_efficacy_sums(game, profile, EfficacyMode::Recursive)
}

/// Recursive measure of a single player.
pub fn rm_player(game: &Game, profile: &VoteProfile, player: usize) -> Result<SignedPower> {
    profile.check_len(game.player_count())?;
    let weights = division_probabilities(profile);
    Ok(weighted_efficacy_sum(
        game,
        &weights,
        player,
        EfficacyMode::Recursive,
    ))
}

/// Penrose–Banzhaf measure of every player under `profile`: the same
/// aggregation with the decisiveness-indicator evaluator.
pub fn pb(game: &Game, profile: &VoteProfile) -> Result<Vec<SignedPower>> {
    if profile.is_equiprobable() {
        return Ok((0..game.player_count())
            .map(|player| pb_by_swing_count(game, player))
            .collect());
    }
    weighted_efficacy_sums(game, profile, EfficacyMode::DecisiveOnly)
}

/// Penrose–Banzhaf measure of a single player.
pub fn pb_player(game: &Game, profile: &VoteProfile, player: usize) -> Result<SignedPower> {
    profile.check_len(game.player_count())?;
    if profile.is_equiprobable() {
        return Ok(pb_by_swing_count(game, player));
    }
    let weights = division_probabilities(profile);
    Ok(weighted_efficacy_sum(
        game,
        &weights,
        player,
        EfficacyMode::DecisiveOnly,
    ))
}

/// Equiprobable fast path: pure integer swing counting, no rational
/// arithmetic until the final fractions. Each yes-swing at `S` pairs with a
/// no-swing at `S` minus the player, so one count serves both components.
fn pb_by_swing_count(game: &Game, player: usize) -> SignedPower {
    let n = game.player_count();
    let bit = 1u64 << player;
    let mut swings = 0u64;
    for mask in 0..(1u64 << n) {
        if mask & bit != 0 && game.wins(mask) && !game.wins(mask & !bit) {
            swings += 1;
        }
    }
    let cell = BigInt::from(1u64) << n;
    let component = Rational::new(BigInt::from(swings), cell);
    SignedPower::new(component.clone(), component)
}

fn weighted_efficacy_sums(
    game: &Game,
    profile: &VoteProfile,
    mode: EfficacyMode,
) -> Result<Vec<SignedPower>> {
    let n = game.player_count();
    profile.check_len(n)?;
    let weights = division_probabilities(profile);
    Ok((0..n)
        .map(|player| weighted_efficacy_sum(game, &weights, player, mode))
        .collect())
}

fn weighted_efficacy_sum(
    game: &Game,
    weights: &[Rational],
    player: usize,
    mode: EfficacyMode,
) -> SignedPower {
    let (plus_table, minus_table) = alpha_tables_mode(game, player, mode);
    let mut plus = Rational::zero();
    let mut minus = Rational::zero();
    for (mask, weight) in weights.iter().enumerate() {
        let p = plus_table.value_mask(mask as u64);
        if !p.is_zero() {
            plus += p * weight;
        }
        let m = minus_table.value_mask(mask as u64);
        if !m.is_zero() {
            minus += m * weight;
        }
    }
    SignedPower::new(plus, minus)
}

/// Shapley–Shubik index of every player, split into yes-pivot and no-pivot
/// components (which provably coincide).
pub fn ss(game: &Game) -> Result<Vec<SignedPower>> {
    ss_with_cap(game, DEFAULT_SS_CAP)
}

/// `ss` with an explicit player-count cap. The computation itself is a
/// `2^n` scan with factorial weights; the cap keeps requests deliberate.
pub fn ss_with_cap(game: &Game, cap: usize) -> Result<Vec<SignedPower>> {
    let n = game.player_count();
    if n > cap {
        return Err(Error::SizeLimit {
            what: "the permutation-based index",
            n,
            cap,
        });
    }
    // Weight of a pivot at coalition size s (including the pivot):
    // (s-1)! * (n-s)! / n! — the share of orderings placing exactly that
    // coalition before the pivot's vote is cast.
    let mut factorial = vec![BigInt::one(); n + 1];
    for k in 1..=n {
        factorial[k] = &factorial[k - 1] * BigInt::from(k);
    }
    let total = factorial[n].clone();
    let pivot_weight = |s: usize| -> Rational {
        Rational::new(&factorial[s - 1] * &factorial[n - s], total.clone())
    };

    let mut plus = vec![Rational::zero(); n];
    let mut minus = vec![Rational::zero(); n];
    for mask in 0..1u64 << n {
        let wins = game.wins(mask);
        let size = mask.count_ones() as usize;
        if wins {
            // Yes-pivots: members whose defection breaks the win. In an
            // ascending ordering the pivot votes yes at position |S|.
            for i in 0..n {
                if mask >> i & 1 == 1 && !game.wins(mask & !(1 << i)) {
                    plus[i] += pivot_weight(size);
                }
            }
        } else {
            // No-pivots: outsiders whose joining would rescue the win; in a
            // descending ordering their no at position n-|S| seals the loss.
            for i in 0..n {
                if mask >> i & 1 == 0 && game.wins(mask | 1 << i) {
                    minus[i] += pivot_weight(size + 1);
                }
            }
        }
    }
    Ok(plus
        .into_iter()
        .zip(minus)
        .map(|(p, m)| {
            // The two pivot proportions coincide for every simple game, and
            // the index is conventionally identified with either one; the
            // total reports that common value so the index sums to one,
            // unlike the additive yes/no split of the other measures.
            debug_assert_eq!(p, m);
            let total = p.clone();
            SignedPower { plus: p, minus: m, total }
        })
        .collect())
}

/// Approximate recursive measure of one player for a rule beyond the exact
/// cap, under the equiprobable profile. Returns `(plus, minus, total)`;
/// values are floating-point and must be labelled approximate by callers.
pub fn rm_f64<R: WinningRule>(rule: &R, player: usize, cap: usize) -> Result<(f64, f64, f64)> {
    let (plus_table, minus_table) = alpha_tables_f64(rule, player, cap)?;
    let size = plus_table.len() as f64;
    let plus: f64 = plus_table.iter().sum::<f64>() / size;
    let minus: f64 = minus_table.iter().sum::<f64>() / size;
    Ok((plus, minus, plus + minus))
}

/// Flat per-player power rows for a selection of measures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerReport {
    pub players: Vec<PlayerPower>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlayerPower {
    pub player: usize,
    pub rm: Option<SignedPower>,
    pub pb: Option<SignedPower>,
    pub ss: Option<SignedPower>,
}

/// Computes the requested measures for every player. `ss` is defined for
/// the equiprobable profile only and is rejected under any other.
pub fn power_report(
    game: &Game,
    profile: &VoteProfile,
    measures: &[MeasureId],
) -> Result<PowerReport> {
    let n = game.player_count();
    profile.check_len(n)?;
    let rm_values = if measures.contains(&MeasureId::Rm) {
        Some(rm(game, profile)?)
    } else {
        None
    };
    let pb_values = if measures.contains(&MeasureId::Pb) {
        Some(pb(game, profile)?)
    } else {
        None
    };
    let ss_values = if measures.contains(&MeasureId::Ss) {
        if !profile.is_equiprobable() {
            return Err(Error::Unsupported(
                "the permutation-based index is defined for the equiprobable profile only".into(),
            ));
        }
        Some(ss(game)?)
    } else {
        None
    };
    let row = |i: usize| PlayerPower {
        player: i,
        rm: rm_values.as_ref().map(|v| v[i].clone()),
        pb: pb_values.as_ref().map(|v| v[i].clone()),
        ss: ss_values.as_ref().map(|v| v[i].clone()),
    };
    Ok(PowerReport {
        players: (0..n).map(row).collect(),
    })
}
