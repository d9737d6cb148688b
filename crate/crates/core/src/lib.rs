//! Exact analysis of Rock-Paper-Scissors games played on tournaments.
//!
//! A tournament orients every pair of objects; the game pays `+1` to the
//! winner of a pair and `-1` to the loser. The crate computes symmetric
//! equilibria exactly, classifies playability, measures imbalance and
//! verifies extremality claims exhaustively on small sizes.

pub mod cli;
pub mod construct;
pub mod equilibrium;
pub mod imbalance;
pub mod lp;
pub mod matrix;
pub mod rational;
pub mod tournament;
pub mod verify;
