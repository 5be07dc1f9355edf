//! Engine for a two-player data-protection awareness board game.
//!
//! An attacker and a defender alternately place tokens on a 25-intersection
//! board of three rings and a center. A judging entity scores 16 evaluation
//! pairs at the end of the game using a table of judged token matchups.
//!
//! - [`catalog`]: tokens, trick tags and the judged matchup table
//! - [`board`]: topology, placement rules and termination
//! - [`judge`]: matchup verdicts and pair scoring
//! - [`strategies`]: AI players and zero-sum analysis of the matchup table
//! - [`analytics`]: awareness reports, trick breakdowns and tournaments

pub mod analytics;
pub mod board;
pub mod catalog;
pub mod judge;
pub mod strategies;

pub use board::{Action, GameConfig, GameState, Position, Region, Ring, TerminalReason};
pub use catalog::{Catalog, MatchupMatrix, Role, TokenId, TrickTag};
pub use judge::{FinalResult, Outcome, ScoreEvent, ScoreKind};
