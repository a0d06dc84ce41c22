//! The division lattice and its loyal-children relation.
//!
//! Divisions ordered by yes-set inclusion form a lattice with the all-yes
//! division at the top and the all-no division at the bottom. The recursive
//! measure walks this lattice *towards the outcome*: from a winning division
//! down the yes-poset (one yes-voter defects at a time, the division still
//! winning), from a losing division up the no-poset (one no-voter defects at
//! a time, the division still losing).
//!
//! The *loyal children* of a division are exactly the one-defection
//! neighbours that preserve its outcome. A winning division with no loyal
//! children is a minimal winning coalition; a losing division with none is a
//! maximal losing one.

use crate::game::{Division, Game};

/// Which poset a division sits in, determined by its outcome.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    /// Winning divisions: children drop one yes-vote and still win.
    Yes,
    /// Losing divisions: children add one yes-vote and still lose.
    No,
}

/// The loyal children of one division, in ascending player order of the
/// defecting voter. The ordering is part of the walk-reproducibility
/// contract of the Monte-Carlo module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoyalChildSet {
    pub parent: Division,
    pub side: Side,
    pub children: Vec<Division>,
}

impl LoyalChildSet {
    pub fn is_empty(&self) -> bool {
        self.children.is_empty()
    }

    pub fn len(&self) -> usize {
        self.children.len()
    }
}

/// Loyal children of `division` in `game`, on the side given by its outcome.
pub fn loyal_children(game: &Game, division: Division) -> LoyalChildSet {
    let n = game.player_count();
    assert_eq!(division.player_count(), n, "division size mismatch");
    let mask = division.mask();
    if game.wins(mask) {
        let children = (0..n)
            .filter(|&k| mask >> k & 1 == 1 && game.wins(mask & !(1 << k)))
            .map(|k| division.without(k))
            .collect();
        LoyalChildSet {
            parent: division,
            side: Side::Yes,
            children,
        }
    } else {
        let children = (0..n)
            .filter(|&k| mask >> k & 1 == 0 && !game.wins(mask | 1 << k))
            .map(|k| division.with(k))
            .collect();
        LoyalChildSet {
            parent: division,
            side: Side::No,
            children,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::Game;

    fn running_example() -> Game {
        Game::from_weighted(8, &[5, 4, 3, 2]).unwrap()
    }

    fn division(game: &Game, players: &[usize]) -> Division {
        Division::from_yes_voters(game.player_count(), players.iter().copied()).unwrap()
    }

    #[test]
    fn grand_coalition_keeps_all_single_defections() {
        let g = running_example();
        let set = loyal_children(&g, Division::full(4));
        assert_eq!(set.side, Side::Yes);
        let labels: Vec<String> = set.children.iter().map(|d| d.label()).collect();
        // Every single defection from 1234 still wins.
        assert_eq!(labels, vec!["234", "134", "124", "123"]);
    }

    #[test]
    fn minimal_winning_division_has_no_loyal_children() {
        let g = running_example();
        let set = loyal_children(&g, division(&g, &[0, 1]));
        assert_eq!(set.side, Side::Yes);
        assert!(set.is_empty());
    }

    #[test]
    fn empty_division_grows_on_the_losing_side() {
        let g = running_example();
        let set = loyal_children(&g, Division::empty(4));
        assert_eq!(set.side, Side::No);
        let labels: Vec<String> = set.children.iter().map(|d| d.label()).collect();
        // Every single yes-vote still loses against a quota of 8.
        assert_eq!(labels, vec!["1", "2", "3", "4"]);
    }

    #[test]
    fn losing_children_preserve_the_outcome() {
        let g = running_example();
        let set = loyal_children(&g, division(&g, &[2])); // "3", weight 3
        assert_eq!(set.side, Side::No);
        // 13 (weight 8) wins, so only 23 and 34 are loyal.
        let labels: Vec<String> = set.children.iter().map(|d| d.label()).collect();
        assert_eq!(labels, vec!["23", "34"]);
    }

    #[test]
    fn children_differ_from_parent_by_exactly_one_voter() {
        let g = running_example();
        for parent in g.divisions() {
            let set = loyal_children(&g, parent);
            for child in &set.children {
                assert_eq!(g.wins(child.mask()), g.wins(parent.mask()));
                let diff = child.mask() ^ parent.mask();
                assert_eq!(diff.count_ones(), 1);
                match set.side {
                    Side::Yes => assert_eq!(child.mask() & diff, 0),
                    Side::No => assert_eq!(child.mask() & diff, diff),
                }
            }
        }
    }
}
