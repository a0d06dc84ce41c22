//! Seeded Monte-Carlo estimation of efficacy and the recursive measure.
//!
//! The recursive efficacy of a player at a division equals the probability
//! that a random walk on the division lattice — moving to a uniformly
//! chosen loyal child at each step — ever visits a division where the
//! player is outright decisive. This module runs exactly that walk, so it
//! needs nothing but outcome queries and works for rules far beyond the
//! exact-table cap (any [`WinningRule`]).
//!
//! Reproducibility contract (frozen by golden tests):
//!
//! * the generator is ChaCha8 seeded with `seed_from_u64(seed)`, worker `w`
//!   switching to stream `w`;
//! * each trial first tests decisiveness at the current node (including the
//!   start), then aborts if the watched player has left the relevant side
//!   (no hit is possible afterwards), then draws one uniform index into the
//!   loyal-children list ordered by ascending defector index;
//! * `rm_estimate` draws the start division uniformly (one `gen_range` per
//!   trial), then walks on whichever side that division lies.
//!
//! Estimates are exact hit fractions (rationals); standard errors are the
//! usual binomial `sqrt(p(1-p)/trials)` and are labelled approximate.

use crate::error::{Error, Result};
use crate::game::{full_mask, Division, WinningRule};
use crate::efficacy::Sign;
use crate::rational::Rational;
use num::bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Deterministic per-worker generator: one seed, disjoint streams.
pub fn worker_rng(seed: u64, worker: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(worker);
    rng
}

/// Estimated efficacy of one player at one division.
#[derive(Debug, Clone, PartialEq)]
pub struct WalkEstimate {
    pub player: usize,
    pub division: Division,
    pub sign: Sign,
    pub trials: u64,
    pub hits: u64,
    /// Exact hit fraction.
    pub estimate: Rational,
    /// Approximate binomial standard error.
    pub std_error: f64,
    pub seed: u64,
}

/// Estimated recursive-measure component: hit counts over the whole trial
/// budget.
#[derive(Debug, Clone, PartialEq)]
pub struct ComponentEstimate {
    pub hits: u64,
    pub estimate: Rational,
    pub std_error: f64,
}

/// Estimated recursive measure of one player (yes side, no side, total).
#[derive(Debug, Clone, PartialEq)]
pub struct RmEstimate {
    pub player: usize,
    pub trials: u64,
    pub plus: ComponentEstimate,
    pub minus: ComponentEstimate,
    pub total: ComponentEstimate,
    pub seed: u64,
}

fn fraction(hits: u64, trials: u64) -> Rational {
    Rational::new(BigInt::from(hits), BigInt::from(trials))
}

fn binomial_std_error(hits: u64, trials: u64) -> f64 {
    let p = hits as f64 / trials as f64;
    (p * (1.0 - p) / trials as f64).sqrt()
}

/// One walk from `mask` (already on the side matching `sign`); true on
/// reaching a division where `player` is decisive for that sign.
fn walk<R: WinningRule>(
    rule: &R,
    player: usize,
    start: u64,
    sign: Sign,
    rng: &mut ChaCha8Rng,
) -> bool {
    let n = rule.player_count();
    let bit = 1u64 << player;
    let mut children: Vec<u64> = Vec::with_capacity(n);
    let mut current = start;
    loop {
        match sign {
            Sign::Plus => {
                if current & bit != 0 && !rule.wins_mask(current & !bit) {
                    return true; // yes-decisive here
                }
                if current & bit == 0 {
                    return false; // the player has left the yes-set
                }
                children.clear();
                for k in 0..n {
                    let child = current & !(1 << k);
                    if current >> k & 1 == 1 && rule.wins_mask(child) {
                        children.push(child);
                    }
                }
            }
            Sign::Minus => {
                if current & bit == 0 && rule.wins_mask(current | bit) {
                    return true; // no-decisive here
                }
                if current & bit != 0 {
                    return false; // the player has joined the yes-set
                }
                children.clear();
                for k in 0..n {
                    let child = current | 1 << k;
                    if current >> k & 1 == 0 && !rule.wins_mask(child) {
                        children.push(child);
                    }
                }
            }
        }
        if children.is_empty() {
            return false; // lattice extreme reached without a hit
        }
        current = children[rng.gen_range(0..children.len())];
    }
}

/// Estimates the efficacy of `player` at `division` by `trials` independent
/// walks. The division must lie on the side matching `sign` (winning for
/// the yes side, losing for the no side).
pub fn walk_estimate<R: WinningRule>(
    rule: &R,
    player: usize,
    division: Division,
    sign: Sign,
    trials: u64,
    seed: u64,
) -> Result<WalkEstimate> {
    let n = rule.player_count();
    assert_eq!(division.player_count(), n, "division size mismatch");
    assert!(trials > 0, "at least one trial required");
    if player >= n {
        return Err(Error::IndexOutOfRange { index: player, n });
    }
    let wins = rule.wins_mask(division.mask());
    match sign {
        Sign::Plus if !wins => {
            return Err(Error::SignMismatch(format!(
                "yes-side walk needs a winning division, but {division} loses"
            )));
        }
        Sign::Minus if wins => {
            return Err(Error::SignMismatch(format!(
                "no-side walk needs a losing division, but {division} wins"
            )));
        }
        _ => {}
    }
    let mut rng = worker_rng(seed, 0);
    let mut hits = 0u64;
    for _ in 0..trials {
        if walk(rule, player, division.mask(), sign, &mut rng) {
            hits += 1;
        }
    }
    Ok(WalkEstimate {
        player,
        division,
        sign,
        trials,
        hits,
        estimate: fraction(hits, trials),
        std_error: binomial_std_error(hits, trials),
        seed,
    })
}

/// Estimates the recursive measure of `player` under equiprobable voting:
/// each trial draws a division uniformly and walks on its own side. The
/// per-side hit fractions estimate the yes- and no-components; their sum
/// estimates the total (each trial can hit on at most one side).
pub fn rm_estimate<R: WinningRule>(
    rule: &R,
    player: usize,
    trials: u64,
    seed: u64,
) -> Result<RmEstimate> {
    rm_estimate_workers(rule, player, trials, seed, 1)
}

/// `rm_estimate` with the trial budget split across `workers` derived
/// streams. Counts merge by summation, so the result is identical however
/// the per-worker batches are scheduled.
pub fn rm_estimate_workers<R: WinningRule>(
    rule: &R,
    player: usize,
    trials: u64,
    seed: u64,
    workers: u64,
) -> Result<RmEstimate> {
    let n = rule.player_count();
    assert!(trials > 0, "at least one trial required");
    assert!(workers > 0 && workers <= trials, "worker count out of range");
    if player >= n {
        return Err(Error::IndexOutOfRange { index: player, n });
    }
    let full = full_mask(n);
    let mut plus_hits = 0u64;
    let mut minus_hits = 0u64;
    for worker in 0..workers {
        let budget = trials / workers + u64::from(worker < trials % workers);
        let mut rng = worker_rng(seed, worker);
        for _ in 0..budget {
            let mask = if n == 64 {
                rng.gen()
            } else {
                rng.gen_range(0..=full)
            };
            if rule.wins_mask(mask) {
                if walk(rule, player, mask, Sign::Plus, &mut rng) {
                    plus_hits += 1;
                }
            } else if walk(rule, player, mask, Sign::Minus, &mut rng) {
                minus_hits += 1;
            }
        }
    }
    let component = |hits: u64| ComponentEstimate {
        hits,
        estimate: fraction(hits, trials),
        std_error: binomial_std_error(hits, trials),
    };
    Ok(RmEstimate {
        player,
        trials,
        plus: component(plus_hits),
        minus: component(minus_hits),
        total: component(plus_hits + minus_hits),
        seed,
    })
}
