//! Simple voting games and divisions.
//!
//! A division is a complete record of how all `n` players vote on a binary
//! question, stored as a bitmask (bit `i` set means player `i` votes yes).
//! A game is a table over all `2^n` divisions marking which yes-sets win.
//! Games constructed here always satisfy the simple-game axioms:
//!
//! * monotonicity — growing the yes-set never turns a win into a loss;
//! * unanimity — the empty yes-set loses and the full yes-set wins.
//!
//! Exact tables are capped (default [`DEFAULT_EXACT_CAP`] players, override
//! per constructor); larger games are served by [`WeightedRule`], which
//! answers point queries without a table, for use by the Monte-Carlo module.

use crate::error::{Error, Result};
use rand::Rng;
use std::fmt;
use std::hash::{Hash, Hasher};

/// Default cap on player count for exact (full-table) mode.
pub const DEFAULT_EXACT_CAP: usize = 20;

/// Hard bound from the `u64` division masks.
pub const MAX_PLAYERS: usize = 63;

/// How a division resolves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    Yes,
    No,
}

impl Outcome {
    pub fn is_yes(self) -> bool {
        matches!(self, Outcome::Yes)
    }
}

/// A complete vote: the set of yes-voters among `n` players.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Division {
    mask: u64,
    n: usize,
}

impl Division {
    pub fn new(mask: u64, n: usize) -> Result<Division> {
        if n > MAX_PLAYERS {
            return Err(Error::SizeLimit {
                what: "a division mask",
                n,
                cap: MAX_PLAYERS,
            });
        }
        if mask >> n != 0 {
            return Err(Error::IndexOutOfRange {
                index: (63 - mask.leading_zeros()) as usize,
                n,
            });
        }
        Ok(Division { mask, n })
    }

    pub fn empty(n: usize) -> Division {
        Division { mask: 0, n }
    }

    pub fn full(n: usize) -> Division {
        Division {
            mask: full_mask(n),
            n,
        }
    }

    pub fn from_yes_voters<I: IntoIterator<Item = usize>>(n: usize, voters: I) -> Result<Division> {
        let mut mask = 0u64;
        for i in voters {
            if i >= n {
                return Err(Error::IndexOutOfRange { index: i, n });
            }
            mask |= 1 << i;
        }
        Division::new(mask, n)
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn player_count(&self) -> usize {
        self.n
    }

    pub fn contains(&self, player: usize) -> bool {
        debug_assert!(player < self.n);
        self.mask >> player & 1 == 1
    }

    /// This division with `player` switched to yes.
    pub fn with(&self, player: usize) -> Division {
        debug_assert!(player < self.n);
        Division {
            mask: self.mask | 1 << player,
            n: self.n,
        }
    }

    /// This division with `player` switched to no.
    pub fn without(&self, player: usize) -> Division {
        debug_assert!(player < self.n);
        Division {
            mask: self.mask & !(1 << player),
            n: self.n,
        }
    }

    pub fn yes_count(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn yes_voters(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(|i| self.mask >> i & 1 == 1)
    }

    pub fn no_voters(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(|i| self.mask >> i & 1 == 0)
    }

    /// Display label with 1-indexed players: `∅`, `134`, or `{1,3,14}` once
    /// two-digit players would make the compact form ambiguous.
    pub fn label(&self) -> String {
        mask_label(self.mask, self.n)
    }
}

impl fmt::Display for Division {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

pub(crate) fn mask_label(mask: u64, n: usize) -> String {
    if mask == 0 {
        return "∅".to_string();
    }
    if n <= 9 {
        (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| (i + 1).to_string())
            .collect()
    } else {
        let inner: Vec<String> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| (i + 1).to_string())
            .collect();
        format!("{{{}}}", inner.join(","))
    }
}

/// Anything that can answer "does this yes-set win?" — exact-table games and
/// table-free weighted rules alike.
pub trait WinningRule {
    fn player_count(&self) -> usize;
    fn wins_mask(&self, mask: u64) -> bool;
}

/// A failed simple-game axiom, with a concrete witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SimpleViolation {
    /// The empty yes-set wins.
    EmptyWins,
    /// The full yes-set loses.
    FullLoses,
    /// A winning yes-set has a losing superset.
    NonMonotone {
        winning_subset: u64,
        losing_superset: u64,
    },
}

impl fmt::Display for SimpleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SimpleViolation::EmptyWins => write!(f, "the empty yes-set wins"),
            SimpleViolation::FullLoses => write!(f, "the full yes-set loses"),
            SimpleViolation::NonMonotone {
                winning_subset,
                losing_superset,
            } => write!(
                f,
                "not monotone: winning yes-set {} has losing superset {}",
                set_bits_label(*winning_subset),
                set_bits_label(*losing_superset)
            ),
        }
    }
}

fn set_bits_label(mask: u64) -> String {
    mask_label(mask, 64.min(MAX_PLAYERS))
}

/// Outcome of checking a winning table against the simple-game axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub n: usize,
    pub violations: Vec<SimpleViolation>,
}

impl ValidationReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks an arbitrary winning table (`table[mask]` = yes-set `mask` wins)
/// against monotonicity and unanimity. Monotonicity witnesses come first so
/// a non-monotone table is reported as such even when unanimity also fails;
/// only the first witness per axiom is kept.
pub fn validate_simple(n: usize, table: &[bool]) -> ValidationReport {
    assert_eq!(table.len(), 1usize << n, "table must cover all divisions");
    let mut violations = Vec::new();
    'monotone: for mask in 0..table.len() as u64 {
        if !table[mask as usize] {
            continue;
        }
        for k in 0..n {
            let sup = mask | 1 << k;
            if !table[sup as usize] {
                violations.push(SimpleViolation::NonMonotone {
                    winning_subset: mask,
                    losing_superset: sup,
                });
                break 'monotone;
            }
        }
    }
    if table[0] {
        violations.push(SimpleViolation::EmptyWins);
    }
    if !table[full_mask(n) as usize] {
        violations.push(SimpleViolation::FullLoses);
    }
    ValidationReport { n, violations }
}

/// Whether one player weakly/strictly dominates another.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dominance {
    /// Every coalition the weaker player completes, the dominant one does too.
    pub weak: bool,
    /// Weak dominance plus at least one coalition only the dominant completes.
    pub strict: bool,
}

/// Blocker roles of a single player.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockerStatus {
    /// Member of every winning yes-set: a yes outcome needs this player.
    pub yes_blocker: bool,
    /// Absent from every losing yes-set: a no outcome needs this player's no.
    pub no_blocker: bool,
}

/// A simple voting game: `n` players and the full winning table.
///
/// Equality and hashing consider only `(n, table)`; the exact-mode cap the
/// game was built with is construction metadata.
#[derive(Debug, Clone)]
pub struct Game {
    n: usize,
    winning: Vec<bool>,
    cap: usize,
}

impl PartialEq for Game {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.winning == other.winning
    }
}

impl Eq for Game {}

impl Hash for Game {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.winning.hash(state);
    }
}

impl WinningRule for Game {
    fn player_count(&self) -> usize {
        self.n
    }

    fn wins_mask(&self, mask: u64) -> bool {
        self.winning[mask as usize]
    }
}

impl Game {
    /// Weighted game: yes-set `S` wins iff its weight sum reaches `quota`.
    pub fn from_weighted(quota: u64, weights: &[u64]) -> Result<Game> {
        Game::from_weighted_with_cap(quota, weights, DEFAULT_EXACT_CAP)
    }

    pub fn from_weighted_with_cap(quota: u64, weights: &[u64], cap: usize) -> Result<Game> {
        let n = weights.len();
        check_cap(n, cap)?;
        let table: Vec<bool> = (0..1u64 << n)
            .map(|mask| {
                let total: u128 = (0..n)
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| weights[i] as u128)
                    .sum();
                total >= quota as u128
            })
            .collect();
        Game::from_winning_table_with_cap(n, table, cap)
    }

    /// Game from an explicit list of all winning coalitions (0-indexed
    /// player sets). The list is taken as complete and validated; it is not
    /// closed upward automatically.
    pub fn from_winning_coalitions<C, I>(n: usize, coalitions: C) -> Result<Game>
    where
        C: IntoIterator<Item = I>,
        I: IntoIterator<Item = usize>,
    {
        check_cap(n, DEFAULT_EXACT_CAP)?;
        let mut table = vec![false; 1usize << n];
        for coalition in coalitions {
            let mut mask = 0u64;
            for i in coalition {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, n });
                }
                mask |= 1 << i;
            }
            table[mask as usize] = true;
        }
        Game::from_winning_table_with_cap(n, table, DEFAULT_EXACT_CAP)
    }

    /// Game from a raw winning table, validated against the axioms.
    pub fn from_winning_table(n: usize, table: Vec<bool>) -> Result<Game> {
        Game::from_winning_table_with_cap(n, table, DEFAULT_EXACT_CAP)
    }

    pub fn from_winning_table_with_cap(n: usize, table: Vec<bool>, cap: usize) -> Result<Game> {
        check_cap(n, cap)?;
        assert_eq!(table.len(), 1usize << n, "table must cover all divisions");
        let report = validate_simple(n, &table);
        match report.violations.into_iter().next() {
            Some(violation) => Err(Error::NonSimple(violation)),
            None => Ok(Game {
                n,
                winning: table,
                cap,
            }),
        }
    }

    pub fn player_count(&self) -> usize {
        self.n
    }

    /// Cap this game was constructed under; derived games inherit it.
    pub fn exact_cap(&self) -> usize {
        self.cap
    }

    pub fn wins(&self, mask: u64) -> bool {
        self.winning[mask as usize]
    }

    pub fn winning_table(&self) -> &[bool] {
        &self.winning
    }

    pub fn outcome(&self, division: Division) -> Outcome {
        assert_eq!(division.player_count(), self.n, "division size mismatch");
        if self.wins(division.mask()) {
            Outcome::Yes
        } else {
            Outcome::No
        }
    }

    pub fn division(&self, mask: u64) -> Result<Division> {
        Division::new(mask, self.n)
    }

    pub fn divisions(&self) -> impl Iterator<Item = Division> + '_ {
        (0..1u64 << self.n).map(|mask| Division { mask, n: self.n })
    }

    /// Winning yes-sets as masks, ascending.
    pub fn winning_masks(&self) -> impl Iterator<Item = u64> + '_ {
        (0..1u64 << self.n).filter(|&m| self.wins(m))
    }

    /// Winning yes-sets with no winning proper subset, as masks, ascending.
    pub fn minimal_winning_masks(&self) -> Vec<u64> {
        self.winning_masks()
            .filter(|&m| (0..self.n).all(|k| m >> k & 1 == 0 || !self.wins(m & !(1 << k))))
            .collect()
    }

    /// Compact human description: player count plus minimal winning sets.
    pub fn description(&self) -> String {
        let minimal: Vec<String> = self
            .minimal_winning_masks()
            .iter()
            .map(|&m| mask_label(m, self.n))
            .collect();
        format!("n={} minimal-winning {{{}}}", self.n, minimal.join(", "))
    }

    /// Relabels players: player `i` becomes player `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Game> {
        validate_permutation(self.n, perm)?;
        let mut table = vec![false; self.winning.len()];
        for mask in 0..self.winning.len() as u64 {
            table[permute_mask(mask, perm) as usize] = self.winning[mask as usize];
        }
        Ok(Game {
            n: self.n,
            winning: table,
            cap: self.cap,
        })
    }

    /// A dummy's vote never changes any outcome.
    pub fn is_dummy(&self, player: usize) -> bool {
        assert!(player < self.n, "player out of range");
        let bit = 1u64 << player;
        (0..1u64 << self.n)
            .filter(|m| m & bit == 0)
            .all(|m| self.wins(m) == self.wins(m | bit))
    }

    pub fn blocker_status(&self, player: usize) -> BlockerStatus {
        assert!(player < self.n, "player out of range");
        let bit = 1u64 << player;
        let mut yes_blocker = true;
        let mut no_blocker = true;
        for mask in 0..1u64 << self.n {
            let wins = self.wins(mask);
            if wins && mask & bit == 0 {
                yes_blocker = false;
            }
            if !wins && mask & bit != 0 {
                no_blocker = false;
            }
        }
        BlockerStatus {
            yes_blocker,
            no_blocker,
        }
    }

    /// Whether `dominant` (weakly/strictly) dominates `other`: every yes-set
    /// not containing either that `other` completes to a win, `dominant`
    /// completes too.
    pub fn dominance(&self, dominant: usize, other: usize) -> Result<Dominance> {
        if dominant == other {
            return Err(Error::SamePlayer { player: dominant });
        }
        assert!(dominant < self.n && other < self.n, "player out of range");
        let weak = self.weakly_dominates(dominant, other);
        let strict = weak && !self.weakly_dominates(other, dominant);
        Ok(Dominance { weak, strict })
    }

    fn weakly_dominates(&self, j: usize, i: usize) -> bool {
        let bi = 1u64 << i;
        let bj = 1u64 << j;
        (0..1u64 << self.n)
            .filter(|m| m & bi == 0 && m & bj == 0)
            .all(|m| !self.wins(m | bi) || self.wins(m | bj))
    }

    /// Internal constructor for transforms whose output is proved simple;
    /// still validated, with failures reported as internal errors.
    pub(crate) fn from_proved_table(n: usize, table: Vec<bool>, cap: usize) -> Result<Game> {
        Game::from_winning_table_with_cap(n, table, cap).map_err(|e| match e {
            Error::NonSimple(v) => {
                Error::InternalInvariant(format!("transform broke the simple-game axioms: {v}"))
            }
            other => other,
        })
    }
}

pub(crate) fn check_cap(n: usize, cap: usize) -> Result<()> {
    let effective = cap.min(MAX_PLAYERS);
    if n > effective {
        return Err(Error::SizeLimit {
            what: "an exact winning table",
            n,
            cap: effective,
        });
    }
    Ok(())
}

pub(crate) fn validate_permutation(n: usize, perm: &[usize]) -> Result<()> {
    if perm.len() != n {
        return Err(Error::InvalidPermutation {
            n,
            reason: format!("length {} != {}", perm.len(), n),
        });
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p >= n {
            return Err(Error::InvalidPermutation {
                n,
                reason: format!("entry {p} out of range"),
            });
        }
        if seen[p] {
            return Err(Error::InvalidPermutation {
                n,
                reason: format!("entry {p} repeated"),
            });
        }
        seen[p] = true;
    }
    Ok(())
}

pub(crate) fn permute_mask(mask: u64, perm: &[usize]) -> u64 {
    let mut out = 0u64;
    for (i, &p) in perm.iter().enumerate() {
        if mask >> i & 1 == 1 {
            out |= 1 << p;
        }
    }
    out
}

/// A weighted voting rule answering point queries without a table, for game
/// sizes beyond the exact cap. Weight sums use 128-bit arithmetic, so they
/// cannot overflow for any supported player count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightedRule {
    quota: u64,
    weights: Vec<u64>,
}

impl WeightedRule {
    pub fn new(quota: u64, weights: Vec<u64>) -> Result<WeightedRule> {
        let n = weights.len();
        if n > MAX_PLAYERS {
            return Err(Error::SizeLimit {
                what: "a weighted rule",
                n,
                cap: MAX_PLAYERS,
            });
        }
        if quota == 0 {
            return Err(Error::NonSimple(SimpleViolation::EmptyWins));
        }
        let total: u128 = weights.iter().map(|&w| w as u128).sum();
        if total < quota as u128 {
            return Err(Error::NonSimple(SimpleViolation::FullLoses));
        }
        Ok(WeightedRule { quota, weights })
    }

    pub fn quota(&self) -> u64 {
        self.quota
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }
}

impl WinningRule for WeightedRule {
    fn player_count(&self) -> usize {
        self.weights.len()
    }

    fn wins_mask(&self, mask: u64) -> bool {
        let total: u128 = (0..self.weights.len())
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| self.weights[i] as u128)
            .sum();
        total >= self.quota as u128
    }
}

/// Random monotone simple game by upward closure of random generator
/// coalitions: between 1 and `n` nonempty proper coalitions are drawn and
/// everything above them (plus the grand coalition) wins. Deterministic for
/// a given RNG state.
pub fn random_monotone_game<R: Rng>(n: usize, rng: &mut R) -> Game {
    assert!((1..=MAX_PLAYERS.min(DEFAULT_EXACT_CAP)).contains(&n));
    let size = 1usize << n;
    let full = full_mask(n);
    let mut generator = vec![false; size];
    generator[full as usize] = true;
    if n > 1 {
        let picks = rng.gen_range(1..=n);
        for _ in 0..picks {
            let mask = rng.gen_range(1..full);
            generator[mask as usize] = true;
        }
    }
    // Upward closure: a yes-set wins iff it is a generator or some
    // one-smaller subset already wins. Filling in ascending popcount order
    // makes each lookup hit a finished entry.
    let mut table = vec![false; size];
    let mut by_popcount: Vec<Vec<u64>> = vec![Vec::new(); n + 1];
    for mask in 0..size as u64 {
        by_popcount[mask.count_ones() as usize].push(mask);
    }
    for bucket in by_popcount {
        for mask in bucket {
            let grown = generator[mask as usize]
                || (0..n).any(|k| mask >> k & 1 == 1 && table[(mask & !(1 << k)) as usize]);
            table[mask as usize] = grown;
        }
    }
    Game::from_winning_table(n, table).expect("upward closure yields a simple game")
}
