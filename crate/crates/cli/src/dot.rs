//! The `lattice` subcommand: the division lattice as a DOT digraph. Nodes
//! are divisions (winning ones shaded), edges are the covering relations,
//! drawn upward from each division to its one-voter-larger supersets.
//! With `--player` every node also shows that player's efficacy score on
//! the node's own side.

use votepower::efficacy::alpha_tables;
use votepower::rational::to_fraction_string;

use crate::{load_game, parse_player, Failure, LatticeArgs};

pub fn run(args: LatticeArgs) -> Result<i32, Failure> {
    let loaded = load_game(&args.game)?;
    let game = &loaded.game;
    let n = game.player_count();
    let tables = args
        .player
        .map(|p| parse_player(n, p))
        .transpose()?
        .map(|p| alpha_tables(game, p));

    println!("digraph division_lattice {{");
    println!("  rankdir=BT;");
    println!("  node [shape=ellipse, style=filled, fontname=\"Helvetica\"];");
    for mask in 0..(1u64 << n) {
        let division = game.division(mask).expect("mask in range");
        let mut label = division.label();
        if let Some((plus, minus)) = &tables {
            let annotation = if game.wins(mask) {
                format!("α+ = {}", to_fraction_string(plus.value_mask(mask)))
            } else {
                format!("α- = {}", to_fraction_string(minus.value_mask(mask)))
            };
            label = format!("{label}\\n{annotation}");
        }
        let fill = if game.wins(mask) { "gray80" } else { "white" };
        println!("  d{mask} [label=\"{label}\", fillcolor=\"{fill}\"];");
    }
    for mask in 0..(1u64 << n) {
        for bit in 0..n {
            if mask & (1 << bit) == 0 {
                println!("  d{mask} -> d{};", mask | (1 << bit));
            }
        }
    }
    println!("}}");
    Ok(0)
}
