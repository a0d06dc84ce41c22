//! Exact voting-power analysis on simple voting games.
//!
//! A *simple voting game* is a set of `n` players together with a monotone
//! set of winning coalitions that excludes the empty coalition and includes
//! the grand coalition. A *division* records how every player votes on a
//! binary question; the winning table decides the outcome of each division.
//!
//! This crate computes, in exact rational arithmetic:
//!
//! * the recursive measure of voting power (`rm`), which scores every
//!   division — not just the ones where a player is outright decisive — by
//!   walking the lattice of divisions towards the decided outcome;
//! * the Penrose–Banzhaf measure (`pb`) and the Shapley–Shubik index (`ss`),
//!   each split into its yes- and no-components;
//! * six game transformations (adding dummies or blockers, donating voting
//!   weight, forming blocs, quarrelling pairs) with machine-checkable
//!   records of how player indices move;
//! * audits of the classical voting-power postulates (iso, dum, dom, don,
//!   bloc, quar, add) for any of the three measures, reporting exact
//!   witnesses on failure;
//! * seeded Monte-Carlo estimates of the recursive measure via random walks
//!   on the division lattice, for games too large for exact tables.
//!
//! Module map:
//!
//! * [`game`] — divisions, winning tables, validation, weighted games;
//! * [`lattice`] — loyal children of a division (the walk structure);
//! * [`efficacy`] — decisiveness and the recursive efficacy tables;
//! * [`measures`] — voting profiles and the rm/pb/ss power measures;
//! * [`transforms`] — the six game transformations;
//! * [`postulates`] — postulate audits with witnesses;
//! * [`montecarlo`] — seeded random-walk estimation.
//!
//! Players are 0-indexed throughout the library; display layers are expected
//! to present them 1-indexed.

pub mod efficacy;
pub mod error;
pub mod game;
pub mod lattice;
pub mod measures;
pub mod montecarlo;
pub mod postulates;
pub mod rational;
pub mod transforms;

pub use error::Error;
pub use game::{Division, Game, Outcome, WeightedRule, WinningRule};
pub use rational::Rational;
