//! The judging entity.
//!
//! Authoritative scoring walks the 16 evaluation pairs in round order. A pair
//! holding one attacker and one defender token is a matchup worth one point
//! to the judged winner; a pair held entirely by one player is a sequential
//! placement worth two. The per-iteration verdict stream is advisory and
//! never feeds the final score.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::board::{EvaluationPair, GameState, EVALUATION_PAIRS};
use crate::catalog::{MatchupMatrix, Role, TokenId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JudgeError {
    #[error("matchup needs an attacker and a defender token, got {attacker} vs {defender}")]
    RoleMismatch { attacker: TokenId, defender: TokenId },
    #[error("the game is not over yet")]
    NotTerminal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictSource {
    Judged,
    Unjudged,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub winner: Option<Role>,
    pub source: VerdictSource,
    pub comment: String,
}

impl Verdict {
    fn unjudged() -> Self {
        Self { winner: None, source: VerdictSource::Unjudged, comment: String::new() }
    }

    pub fn is_judged(&self) -> bool {
        self.source == VerdictSource::Judged
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScoreKind {
    MixedMatchup,
    SequentialBonus,
    Incomplete,
    UnjudgedMatchup,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScoreEvent {
    pub pair: EvaluationPair,
    pub kind: ScoreKind,
    pub attacker_points: u8,
    pub defender_points: u8,
}

impl ScoreEvent {
    pub fn points(&self, role: Role) -> u8 {
        match role {
            Role::Attacker => self.attacker_points,
            Role::Defender => self.defender_points,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    AttackerWin,
    DefenderWin,
    Draw,
}

impl Outcome {
    pub fn from_totals(attacker_total: u32, defender_total: u32) -> Outcome {
        match attacker_total.cmp(&defender_total) {
            std::cmp::Ordering::Greater => Outcome::AttackerWin,
            std::cmp::Ordering::Less => Outcome::DefenderWin,
            std::cmp::Ordering::Equal => Outcome::Draw,
        }
    }

    pub fn winner(self) -> Option<Role> {
        match self {
            Outcome::AttackerWin => Some(Role::Attacker),
            Outcome::DefenderWin => Some(Role::Defender),
            Outcome::Draw => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinalResult {
    pub events: Vec<ScoreEvent>,
    pub attacker_total: u32,
    pub defender_total: u32,
    pub outcome: Outcome,
}

impl FinalResult {
    pub fn total(&self, role: Role) -> u32 {
        match role {
            Role::Attacker => self.attacker_total,
            Role::Defender => self.defender_total,
        }
    }

    /// Score differential from `role`'s point of view.
    pub fn margin(&self, role: Role) -> i32 {
        self.total(role) as i32 - self.total(role.opponent()) as i32
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IterationVerdict {
    pub iteration: u32,
    pub attacker_token: TokenId,
    pub defender_token: TokenId,
    pub verdict: Verdict,
    pub a_points: u8,
    pub d_points: u8,
}

pub fn judge_matchup(matrix: &MatchupMatrix, attacker: TokenId, defender: TokenId) -> Result<Verdict, JudgeError> {
    if attacker.role() != Role::Attacker || defender.role() != Role::Defender {
        return Err(JudgeError::RoleMismatch { attacker, defender });
    }
    Ok(match matrix.get(attacker, defender) {
        Some(entry) => {
            Verdict { winner: Some(entry.winner), source: VerdictSource::Judged, comment: entry.comment.clone() }
        }
        None => Verdict::unjudged(),
    })
}

fn points_for(winner: Role, amount: u8) -> (u8, u8) {
    match winner {
        Role::Attacker => (amount, 0),
        Role::Defender => (0, amount),
    }
}

pub fn evaluate_pair(state: &GameState, pair: &EvaluationPair, matrix: &MatchupMatrix) -> ScoreEvent {
    let (kind, (attacker_points, defender_points)) = match (state.occupant(pair.a), state.occupant(pair.b)) {
        (Some((first, _)), Some((second, _))) if first == second => (ScoreKind::SequentialBonus, points_for(first, 2)),
        (Some((_, x)), Some((_, y))) => {
            let (attacker, defender) = if x.role() == Role::Attacker { (x, y) } else { (y, x) };
            let verdict = judge_matchup(matrix, attacker, defender).expect("occupants have opposite roles");
            match verdict.winner {
                Some(winner) => (ScoreKind::MixedMatchup, points_for(winner, 1)),
                None => (ScoreKind::UnjudgedMatchup, (0, 0)),
            }
        }
        _ => (ScoreKind::Incomplete, (0, 0)),
    };
    ScoreEvent { pair: *pair, kind, attacker_points, defender_points }
}

/// Scores the current board without requiring the game to be over. AI
/// players use this as their evaluation.
pub fn score_position(state: &GameState, matrix: &MatchupMatrix) -> FinalResult {
    let events: Vec<ScoreEvent> = EVALUATION_PAIRS.iter().map(|pair| evaluate_pair(state, pair, matrix)).collect();
    let attacker_total = events.iter().map(|e| u32::from(e.attacker_points)).sum();
    let defender_total = events.iter().map(|e| u32::from(e.defender_points)).sum();
    FinalResult {
        events,
        attacker_total,
        defender_total,
        outcome: Outcome::from_totals(attacker_total, defender_total),
    }
}

/// Attacker-minus-defender points of the current board, without allocating.
pub fn score_margin(state: &GameState, matrix: &MatchupMatrix, role: Role) -> i32 {
    let mut margin = 0i32;
    for pair in &EVALUATION_PAIRS {
        let event = evaluate_pair(state, pair, matrix);
        margin += i32::from(event.points(role)) - i32::from(event.points(role.opponent()));
    }
    margin
}

pub fn final_result(state: &GameState, matrix: &MatchupMatrix) -> Result<FinalResult, JudgeError> {
    if !state.is_terminal() {
        return Err(JudgeError::NotTerminal);
    }
    Ok(score_position(state, matrix))
}

/// Judges a sequence of (attacker token, defender token) iterations.
pub fn judge_iterations(
    matrix: &MatchupMatrix,
    pairs: &[(TokenId, TokenId)],
) -> Result<Vec<IterationVerdict>, JudgeError> {
    pairs
        .iter()
        .enumerate()
        .map(|(i, &(attacker, defender))| {
            let verdict = judge_matchup(matrix, attacker, defender)?;
            let (a_points, d_points) = verdict.winner.map_or((0, 0), |w| points_for(w, 1));
            Ok(IterationVerdict {
                iteration: i as u32 + 1,
                attacker_token: attacker,
                defender_token: defender,
                verdict,
                a_points,
                d_points,
            })
        })
        .collect()
}

/// Pairs the log's plies (2k, 2k+1) into iterations and judges each. A
/// trailing attacker ply forms no iteration.
pub fn iteration_log(state: &GameState, matrix: &MatchupMatrix) -> Vec<IterationVerdict> {
    let pairs: Vec<(TokenId, TokenId)> =
        state.log().chunks_exact(2).map(|plies| (plies[0].action.token, plies[1].action.token)).collect();
    judge_iterations(matrix, &pairs).expect("attacker moves on even plies")
}
