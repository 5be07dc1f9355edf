//! Misperception analysis: each player solves the game it believes it is
//! playing, then both strategies meet under the true payoffs.

use serde::Serialize;

use super::matrix_game::{solve_matrix_game, MixedStrategy, PayoffMatrix, SolveError};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HypergameOptions {
    pub iterations: u64,
    pub tolerance: f64,
}

impl Default for HypergameOptions {
    fn default() -> Self {
        Self { iterations: 100_000, tolerance: 1e-4 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PlayerOutcome {
    #[serde(serialize_with = "probabilities")]
    pub strategy: MixedStrategy,
    /// Value of the player's own perceived game, attacker payoff scale.
    pub perceived_value: f64,
    /// Gain forgone versus best-responding to the opponent's actual strategy
    /// under the true payoffs.
    pub regret: f64,
}

fn probabilities<S: serde::Serializer>(s: &MixedStrategy, serializer: S) -> Result<S::Ok, S::Error> {
    s.probabilities().serialize(serializer)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MisperceptionReport {
    pub attacker: PlayerOutcome,
    pub defender: PlayerOutcome,
    /// Attacker payoff when both chosen strategies meet under the true matrix.
    pub realized_value: f64,
}

impl MisperceptionReport {
    /// The report as it reads with the seats exchanged, i.e. the result of
    /// running the analysis on mirrored matrices.
    pub fn mirrored(&self) -> MisperceptionReport {
        let flip = |side: &PlayerOutcome| PlayerOutcome {
            strategy: side.strategy.clone(),
            perceived_value: 1.0 - side.perceived_value,
            regret: side.regret,
        };
        MisperceptionReport {
            attacker: flip(&self.defender),
            defender: flip(&self.attacker),
            realized_value: 1.0 - self.realized_value,
        }
    }
}

fn same_shape(expected: &PayoffMatrix, other: &PayoffMatrix) -> Result<(), SolveError> {
    if expected.rows() != other.rows() || expected.cols() != other.cols() {
        return Err(SolveError::Dimension {
            expected: expected.rows() * expected.cols(),
            actual: other.rows() * other.cols(),
        });
    }
    Ok(())
}

pub fn hypergame_eval(
    true_payoff: &PayoffMatrix,
    perceived_attacker: &PayoffMatrix,
    perceived_defender: &PayoffMatrix,
    options: HypergameOptions,
) -> Result<MisperceptionReport, SolveError> {
    same_shape(true_payoff, perceived_attacker)?;
    same_shape(true_payoff, perceived_defender)?;
    let attacker_view = solve_matrix_game(perceived_attacker, options.iterations, options.tolerance)?;
    let defender_view = solve_matrix_game(perceived_defender, options.iterations, options.tolerance)?;
    let attack = attacker_view.attacker_strategy;
    let defence = defender_view.defender_strategy;

    let realized_value = true_payoff.expected_value(&attack, &defence);
    let best_attack = true_payoff.row_payoffs(&defence).into_iter().fold(f64::NEG_INFINITY, f64::max);
    let best_defence = true_payoff.col_payoffs(&attack).into_iter().fold(f64::INFINITY, f64::min);

    Ok(MisperceptionReport {
        attacker: PlayerOutcome {
            strategy: attack,
            perceived_value: attacker_view.value,
            regret: (best_attack - realized_value).max(0.0),
        },
        defender: PlayerOutcome {
            strategy: defence,
            perceived_value: defender_view.value,
            regret: (realized_value - best_defence).max(0.0),
        },
        realized_value,
    })
}
