//! Error type shared across the crate.

use crate::game::SimpleViolation;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The winning table fails one of the simple-game axioms; the violation
    /// carries a concrete witness.
    #[error("not a simple voting game: {0}")]
    NonSimple(SimpleViolation),

    /// A coalition or division refers to a player outside `0..n`.
    #[error("player index {index} out of range for {n} players")]
    IndexOutOfRange { index: usize, n: usize },

    /// The request would exceed a configured size cap.
    #[error("{what} requires n = {n}, above the cap of {cap}")]
    SizeLimit {
        what: &'static str,
        n: usize,
        cap: usize,
    },

    /// A permutation argument is not a bijection on `0..n`.
    #[error("not a permutation of 0..{n}: {reason}")]
    InvalidPermutation { n: usize, reason: String },

    /// An operation on a pair of players received the same player twice.
    #[error("players must be distinct, got {player} twice")]
    SamePlayer { player: usize },

    /// A walk was started on the wrong side of the lattice for its sign.
    #[error("division outcome does not match walk sign: {0}")]
    SignMismatch(String),

    /// A transform produced a table that is no longer a simple game.
    /// This is a legal outcome for `quarrel`, not a bug.
    #[error("transform result is not a simple game: {0}")]
    NonSimpleResult(SimpleViolation),

    /// Deleting a player that still matters would change the game.
    #[error("player {player} is not a dummy and cannot be deleted")]
    NotADummy { player: usize },

    /// A probability outside `[0, 1]` was supplied.
    #[error("probability {value} for player {index} is outside [0, 1]")]
    InvalidProbability { index: usize, value: String },

    /// Profile length does not match the game's player count.
    #[error("profile has {profile_len} entries but the game has {n} players")]
    ProfileMismatch { profile_len: usize, n: usize },

    /// The requested combination of options is not defined.
    #[error("unsupported combination: {0}")]
    Unsupported(String),

    /// Violation of an internal invariant; indicates a bug in this crate.
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
