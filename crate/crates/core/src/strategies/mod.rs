//! AI players and game-theoretic analysis of the matchup table.

mod hypergame;
mod matrix_game;
mod policy;

pub use hypergame::{hypergame_eval, HypergameOptions, MisperceptionReport, PlayerOutcome};
pub use matrix_game::{
    exploitability, payoff_matrix, solve_matrix_game, EquilibriumReport, MixedStrategy, PayoffMatrix, SolveError,
    SolveSummary, TokenDistribution, UNJUDGED_PAYOFF,
};
pub use policy::{choose_action, Policy, PolicyError, DEFAULT_MINIMAX_DEPTH};
