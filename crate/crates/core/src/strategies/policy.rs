//! AI players for the board game.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::board::{Action, GameState};
use crate::catalog::{MatchupMatrix, Role};
use crate::judge::score_margin;

pub const DEFAULT_MINIMAX_DEPTH: u8 = 2;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolicyError {
    #[error("unknown policy {0:?}")]
    UnknownPolicy(String),
    #[error("the game is over; no action to choose")]
    Terminal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Policy {
    Random { seed: u64 },
    Greedy,
    Minimax { depth: u8 },
}

impl Policy {
    /// Replaces the seed of a `Random` policy; other kinds are unchanged.
    pub fn reseeded(self, seed: u64) -> Policy {
        match self {
            Policy::Random { .. } => Policy::Random { seed },
            other => other,
        }
    }

    pub fn name(&self) -> String {
        match self {
            Policy::Random { .. } => "random".into(),
            Policy::Greedy => "greedy".into(),
            Policy::Minimax { depth } => format!("minimax:{depth}"),
        }
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Policy::Random { seed } => write!(f, "random:{seed}"),
            other => f.write_str(&other.name()),
        }
    }
}

/// Accepts `random`, `random:SEED`, `greedy`, `minimax` and `minimax:DEPTH`.
impl FromStr for Policy {
    type Err = PolicyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let unknown = || PolicyError::UnknownPolicy(s.to_string());
        let lowered = s.trim().to_ascii_lowercase();
        let (kind, arg) = match lowered.split_once(':') {
            Some((kind, arg)) => (kind, Some(arg)),
            None => (lowered.as_str(), None),
        };
        match (kind, arg) {
            ("random", None) => Ok(Policy::Random { seed: 0 }),
            ("random", Some(seed)) => seed.parse().map(|seed| Policy::Random { seed }).map_err(|_| unknown()),
            ("greedy", None) => Ok(Policy::Greedy),
            ("minimax", None) => Ok(Policy::Minimax { depth: DEFAULT_MINIMAX_DEPTH }),
            ("minimax", Some(depth)) => match depth.parse() {
                Ok(depth) if depth >= 1 => Ok(Policy::Minimax { depth }),
                _ => Err(unknown()),
            },
            _ => Err(unknown()),
        }
    }
}

impl Serialize for Policy {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Policy {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(deserializer)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}

/// Picks the policy's move. The result is always an element of
/// `state.legal_actions()`.
pub fn choose_action(policy: &Policy, state: &GameState, matrix: &MatchupMatrix) -> Result<Action, PolicyError> {
    let actions = state.legal_actions();
    if actions.is_empty() {
        return Err(PolicyError::Terminal);
    }
    let choice = match *policy {
        Policy::Random { seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ u64::from(state.ply()).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            actions[rng.gen_range(0..actions.len())]
        }
        Policy::Greedy => best_by(state, &actions, |child| score_margin(child, matrix, state.to_move())),
        Policy::Minimax { depth } => {
            let root = state.to_move();
            let mut best: Option<(i32, Action)> = None;
            for action in &actions {
                let child = state.apply(action).expect("legal action applies");
                let alpha = best.map_or(i32::MIN, |(v, _)| v);
                let value = alphabeta(&child, depth.saturating_sub(1), alpha, i32::MAX, root, matrix);
                if best.is_none_or(|(v, _)| value > v) {
                    best = Some((value, *action));
                }
            }
            best.expect("non-empty action list").1
        }
    };
    Ok(choice)
}

/// First action (in legal order) maximizing `value` of the resulting state.
fn best_by(state: &GameState, actions: &[Action], value: impl Fn(&GameState) -> i32) -> Action {
    let mut best: Option<(i32, Action)> = None;
    for action in actions {
        let child = state.apply(action).expect("legal action applies");
        let v = value(&child);
        if best.is_none_or(|(b, _)| v > b) {
            best = Some((v, *action));
        }
    }
    best.expect("non-empty action list").1
}

// Fail-soft alpha-beta; values are score margins from `root`'s side.
fn alphabeta(state: &GameState, depth: u8, mut alpha: i32, mut beta: i32, root: Role, matrix: &MatchupMatrix) -> i32 {
    if depth == 0 || state.is_terminal() {
        return score_margin(state, matrix, root);
    }
    let maximizing = state.to_move() == root;
    let mut best = if maximizing { i32::MIN } else { i32::MAX };
    for action in state.legal_actions() {
        let child = state.apply(&action).expect("legal action applies");
        let value = alphabeta(&child, depth - 1, alpha, beta, root, matrix);
        if maximizing {
            best = best.max(value);
            alpha = alpha.max(value);
        } else {
            best = best.min(value);
            beta = beta.min(value);
        }
        if alpha >= beta {
            break;
        }
    }
    best
}
