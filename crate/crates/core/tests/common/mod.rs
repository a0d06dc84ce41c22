//! Shared helpers for the integration suites: independent oracle
//! implementations and exhaustive generators of small games.
//!
//! The oracles are deliberately written in a different style from the
//! library — plain top-down recursion, full path enumeration, brute-force
//! counting — so that agreement with the library's table-filling and
//! coalition-counting code is meaningful evidence rather than a tautology.
//! They only touch the `Game::wins` point query, never the library's
//! lattice or efficacy modules.

#![allow(dead_code)]

use num::{BigInt, BigRational, One, Zero};
use votepower::efficacy::Sign;
use votepower::{Game, Rational};

pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// The worked example used throughout the docs: quota 8, weights 5,4,3,2.
pub fn running_example() -> Game {
    Game::from_weighted(8, &[5, 4, 3, 2]).unwrap()
}

/// Three-player game whose blocker extension changes the power ratio
/// between players 1 and 2 under the permutation-based measure.
pub fn ratio_counterexample() -> Game {
    Game::from_weighted(3, &[2, 1, 1]).unwrap()
}

fn in_mask(mask: u64, player: usize) -> bool {
    mask & (1 << player) != 0
}

fn yes_decisive(game: &Game, player: usize, mask: u64) -> bool {
    in_mask(mask, player) && game.wins(mask) && !game.wins(mask & !(1 << player))
}

fn no_decisive(game: &Game, player: usize, mask: u64) -> bool {
    !in_mask(mask, player) && !game.wins(mask) && game.wins(mask | (1 << player))
}

fn decisive_for(game: &Game, player: usize, mask: u64, sign: Sign) -> bool {
    match sign {
        Sign::Plus => yes_decisive(game, player, mask),
        Sign::Minus => no_decisive(game, player, mask),
    }
}

/// Outcome-preserving one-defection successors of `mask`, recomputed from
/// point queries: on the winning side one yes-voter flips to no, on the
/// losing side one no-voter flips to yes.
fn loyal_child_masks(game: &Game, mask: u64) -> Vec<u64> {
    let n = game.player_count();
    let mut children = Vec::new();
    let winning = game.wins(mask);
    for k in 0..n {
        let bit = 1u64 << k;
        let child = if winning {
            if mask & bit == 0 {
                continue;
            }
            mask & !bit
        } else {
            if mask & bit != 0 {
                continue;
            }
            mask | bit
        };
        if game.wins(child) == winning {
            children.push(child);
        }
    }
    children
}

/// Direct, non-memoized evaluation of the efficacy recursion: 1 when the
/// player is decisive on `sign`'s side, 0 on the wrong side of the outcome
/// or the wrong side of the vote, otherwise the plain average over loyal
/// children. No tables, no sharing — every subtree is recomputed.
pub fn naive_alpha(game: &Game, player: usize, sign: Sign, mask: u64) -> Rational {
    let winning = game.wins(mask);
    match sign {
        Sign::Plus if !winning => return Rational::zero(),
        Sign::Minus if winning => return Rational::zero(),
        _ => {}
    }
    if decisive_for(game, player, mask, sign) {
        return Rational::one();
    }
    // A yes-score needs a yes vote; a no-score needs a no vote.
    match sign {
        Sign::Plus if !in_mask(mask, player) => return Rational::zero(),
        Sign::Minus if in_mask(mask, player) => return Rational::zero(),
        _ => {}
    }
    let children = loyal_child_masks(game, mask);
    if children.is_empty() {
        return Rational::zero();
    }
    let share = BigRational::new(BigInt::one(), BigInt::from(children.len() as i64));
    let mut sum = Rational::zero();
    for child in children {
        sum += naive_alpha(game, player, sign, child);
    }
    sum * share
}

/// Probability that a uniform walk from `mask` ever visits a node where the
/// player is decisive, computed by enumerating every maximal walk path and
/// summing the probabilities of those containing a decisive node. Unlike
/// the recursion this never stops early at a hit: it carries a flag to the
/// terminal node of each path, so structurally it is a different algorithm
/// that happens to compute the same number.
pub fn walk_hit_probability(game: &Game, player: usize, sign: Sign, start: u64) -> Rational {
    fn paths(game: &Game, player: usize, sign: Sign, mask: u64, hit: bool) -> Rational {
        let hit = hit || decisive_for(game, player, mask, sign);
        let children = loyal_child_masks(game, mask);
        if children.is_empty() {
            return if hit { Rational::one() } else { Rational::zero() };
        }
        let share = BigRational::new(BigInt::one(), BigInt::from(children.len() as i64));
        let mut total = Rational::zero();
        for child in children {
            total += paths(game, player, sign, child, hit);
        }
        total * share
    }
    paths(game, player, sign, start, false)
}

/// Brute-force swing counts: for each player, the number of divisions where
/// flipping that player's yes vote flips the outcome.
pub fn swing_counts(game: &Game) -> Vec<u64> {
    let n = game.player_count();
    let mut counts = vec![0u64; n];
    for mask in 0..(1u64 << n) {
        for (player, count) in counts.iter_mut().enumerate() {
            if yes_decisive(game, player, mask) {
                *count += 1;
            }
        }
    }
    counts
}

/// Swing count over two to the n minus one: the classical full-decisiveness
/// measure, computed independently of the library's aggregation.
pub fn brute_force_pb(game: &Game) -> Vec<Rational> {
    let n = game.player_count();
    let scale = BigInt::from(1u64 << (n - 1));
    swing_counts(game)
        .into_iter()
        .map(|c| BigRational::new(BigInt::from(c), scale.clone()))
        .collect()
}

/// Pivot proportions by explicit enumeration of all n! joining orders: in
/// each order, the pivot is the player whose arrival first makes the yes
/// camp winning. Usable up to n = 8 or so; the suites stay at n <= 6.
pub fn ss_by_permutations(game: &Game) -> Vec<Rational> {
    let n = game.player_count();
    let mut order: Vec<usize> = (0..n).collect();
    let mut pivots = vec![0u64; n];
    let mut total = 0u64;
    permute(&mut order, 0, &mut |perm| {
        total += 1;
        let mut mask = 0u64;
        for &player in perm {
            mask |= 1 << player;
            if game.wins(mask) {
                pivots[player] += 1;
                break;
            }
        }
    });
    let denom = BigInt::from(total);
    pivots
        .into_iter()
        .map(|c| BigRational::new(BigInt::from(c), denom.clone()))
        .collect()
}

fn permute(items: &mut Vec<usize>, start: usize, visit: &mut impl FnMut(&[usize])) {
    if start == items.len() {
        visit(items);
        return;
    }
    for i in start..items.len() {
        items.swap(start, i);
        permute(items, start + 1, visit);
        items.swap(start, i);
    }
}

/// Every simple game on `n` players, found by scanning all two to the two
/// to the n candidate winning tables and keeping those that validate.
/// Counts: 1, 4, 18, 166 for n = 1..=4. Only sensible for n <= 4.
pub fn all_simple_games(n: usize) -> Vec<Game> {
    assert!(n <= 4, "table scan is exponential in 2^n");
    let cells = 1usize << n;
    let mut games = Vec::new();
    for pattern in 0u64..(1u64 << cells) {
        // Cheap pre-filter before paying for construction.
        if pattern & 1 != 0 || pattern >> (cells - 1) & 1 == 0 {
            continue;
        }
        let table: Vec<bool> = (0..cells).map(|m| pattern >> m & 1 == 1).collect();
        if let Ok(game) = Game::from_winning_table(n, table) {
            games.push(game);
        }
    }
    games
}

/// All weighted games with `n <= max_n` players, weights in 1..=max_w and
/// every quota that keeps the game simple, deduplicated by winning table.
pub fn weighted_sweep(max_n: usize, max_w: u64) -> Vec<Game> {
    let mut seen = std::collections::HashSet::new();
    let mut games = Vec::new();
    for n in 1..=max_n {
        let mut weights = vec![1u64; n];
        loop {
            let total: u64 = weights.iter().sum();
            for quota in 1..=total {
                let game = Game::from_weighted(quota, &weights)
                    .expect("a positive quota at most the weight total is simple");
                if seen.insert(game.winning_table().to_vec()) {
                    games.push(game);
                }
            }
            // Odometer step through the weight vectors.
            let mut pos = 0;
            loop {
                if pos == n {
                    break;
                }
                if weights[pos] < max_w {
                    weights[pos] += 1;
                    break;
                }
                weights[pos] = 1;
                pos += 1;
            }
            if pos == n {
                break;
            }
        }
    }
    games
}
