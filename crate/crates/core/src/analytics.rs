//! Awareness and intrusion reporting, trick breakdowns and tournaments.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::board::{new_game, EvaluationPair, GameConfig, GameState, MoveError};
use crate::catalog::{Catalog, MatchupMatrix, Role, TokenId, TrickTag};
use crate::judge::{
    final_result, iteration_log, score_position, FinalResult, IterationVerdict, JudgeError, Outcome, ScoreKind,
};
use crate::strategies::{choose_action, Policy, PolicyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalyticsError {
    #[error(transparent)]
    Judge(#[from] JudgeError),
    #[error(transparent)]
    Policy(#[from] PolicyError),
    #[error(transparent)]
    Rules(#[from] MoveError),
    #[error("a tournament needs at least one game")]
    NoGames,
}

/// A judged attacker-vs-defender pair on the final board.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairMatchup {
    pub pair: EvaluationPair,
    pub attacker: TokenId,
    pub defender: TokenId,
    pub winner: Role,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrickTally {
    pub trick: TrickTag,
    pub side: Role,
    pub wins: u32,
    pub losses: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameReport {
    #[serde(rename = "final")]
    pub final_result: FinalResult,
    pub iterations: Vec<IterationVerdict>,
    pub matchups: Vec<PairMatchup>,
    pub awareness_score: f64,
    pub intrusion_score: f64,
    pub per_trick: Vec<TrickTally>,
    pub unjudged_count: u32,
}

/// Defender's and attacker's share of awarded points, as percentages. Both
/// are zero when nothing was awarded.
pub fn awareness_and_intrusion(attacker_total: u32, defender_total: u32) -> (f64, f64) {
    let awarded = attacker_total + defender_total;
    if awarded == 0 {
        return (0.0, 0.0);
    }
    let awareness = 100.0 * f64::from(defender_total) / f64::from(awarded);
    let intrusion = 100.0 * f64::from(attacker_total) / f64::from(awarded);
    (awareness, intrusion)
}

fn judged_matchups(state: &GameState, result: &FinalResult) -> Vec<PairMatchup> {
    result
        .events
        .iter()
        .filter(|e| e.kind == ScoreKind::MixedMatchup)
        .map(|e| {
            let (_, x) = state.occupant(e.pair.a).expect("matchup cell occupied");
            let (_, y) = state.occupant(e.pair.b).expect("matchup cell occupied");
            let (attacker, defender) = if x.role() == Role::Attacker { (x, y) } else { (y, x) };
            let winner = if e.attacker_points > 0 { Role::Attacker } else { Role::Defender };
            PairMatchup { pair: e.pair, attacker, defender, winner }
        })
        .collect()
}

fn tally_tricks<'a>(
    matchups: impl IntoIterator<Item = &'a PairMatchup>,
    catalog: &Catalog,
) -> BTreeMap<(Role, &'static str), TrickTally> {
    let mut table: BTreeMap<(Role, &'static str), TrickTally> = BTreeMap::new();
    for m in matchups {
        for token in [m.attacker, m.defender] {
            let trick = catalog.trick(token);
            let row = table.entry((token.role(), trick.name())).or_insert(TrickTally {
                trick,
                side: token.role(),
                wins: 0,
                losses: 0,
            });
            if token.role() == m.winner {
                row.wins += 1;
            } else {
                row.losses += 1;
            }
        }
    }
    table
}

/// Report for any position, finished or not.
pub fn report_position(state: &GameState, matrix: &MatchupMatrix, catalog: &Catalog) -> GameReport {
    let final_result = score_position(state, matrix);
    let matchups = judged_matchups(state, &final_result);
    let per_trick = tally_tricks(&matchups, catalog).into_values().collect();
    let unjudged_count = final_result.events.iter().filter(|e| e.kind == ScoreKind::UnjudgedMatchup).count() as u32;
    let (awareness_score, intrusion_score) =
        awareness_and_intrusion(final_result.attacker_total, final_result.defender_total);
    GameReport {
        iterations: iteration_log(state, matrix),
        final_result,
        matchups,
        awareness_score,
        intrusion_score,
        per_trick,
        unjudged_count,
    }
}

pub fn game_report(state: &GameState, matrix: &MatchupMatrix, catalog: &Catalog) -> Result<GameReport, AnalyticsError> {
    final_result(state, matrix)?;
    Ok(report_position(state, matrix, catalog))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrickRow {
    pub trick: TrickTag,
    pub played: u32,
    pub won: u32,
    pub win_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct TrickBreakdown {
    pub attacker: Vec<TrickRow>,
    pub defender: Vec<TrickRow>,
}

/// Per-trick play and win counts over the judged matchups of `reports`,
/// one table per side, ordered by tag name.
pub fn trick_breakdown(reports: &[GameReport], catalog: &Catalog) -> TrickBreakdown {
    let table = tally_tricks(reports.iter().flat_map(|r| &r.matchups), catalog);
    let mut out = TrickBreakdown::default();
    for ((side, _), tally) in table {
        let played = tally.wins + tally.losses;
        let row = TrickRow {
            trick: tally.trick,
            played,
            won: tally.wins,
            win_rate: f64::from(tally.wins) / f64::from(played),
        };
        match side {
            Role::Attacker => out.attacker.push(row),
            Role::Defender => out.defender.push(row),
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TournamentConfig {
    pub games: u32,
    pub attacker: Policy,
    pub defender: Policy,
    pub seed: u64,
    #[serde(default)]
    pub rules: GameConfig,
}

/// Seed for one seat of one game: base seed plus game index, split by seat.
pub fn seat_seed(base: u64, game_index: u32, role: Role) -> u64 {
    base.wrapping_add(u64::from(game_index)).wrapping_mul(2).wrapping_add(role.slot() as u64)
}

/// Plays one game to the end.
pub fn play_game(
    rules: &GameConfig,
    attacker: &Policy,
    defender: &Policy,
    matrix: &MatchupMatrix,
) -> Result<GameState, AnalyticsError> {
    let mut state = new_game(rules)?;
    while !state.is_terminal() {
        let policy = match state.to_move() {
            Role::Attacker => attacker,
            Role::Defender => defender,
        };
        let action = choose_action(policy, &state, matrix)?;
        state.apply_in_place(&action)?;
    }
    Ok(state)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SeatRecord {
    pub wins: u32,
    pub draws: u32,
    pub losses: u32,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TokenStat {
    pub token: TokenId,
    pub label: String,
    pub played: u32,
    pub judged: u32,
    pub wins: u32,
    pub win_rate: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TournamentSummary {
    pub games: u32,
    pub attacker_policy: String,
    pub defender_policy: String,
    pub seed: u64,
    pub attacker: SeatRecord,
    pub defender: SeatRecord,
    pub mean_attacker_score: f64,
    pub mean_defender_score: f64,
    /// Defender share of all points awarded over the tournament.
    pub pooled_awareness: f64,
    pub pooled_intrusion: f64,
    pub total_placements: u32,
    pub tokens: Vec<TokenStat>,
    pub tricks: TrickBreakdown,
}

/// A finished game reduced to what the summary needs.
#[derive(Debug, Clone, PartialEq)]
pub struct GameRecord {
    pub report: GameReport,
    pub placements: Vec<TokenId>,
}

impl GameRecord {
    pub fn from_state(state: &GameState, matrix: &MatchupMatrix, catalog: &Catalog) -> Result<Self, AnalyticsError> {
        Ok(Self {
            report: game_report(state, matrix, catalog)?,
            placements: state.log().iter().map(|entry| entry.action.token).collect(),
        })
    }
}

impl TournamentSummary {
    /// Aggregates finished games. Only sums are accumulated, so the result
    /// does not depend on the order of `records`.
    pub fn from_records(config: &TournamentConfig, records: &[GameRecord], catalog: &Catalog) -> TournamentSummary {
        let mut attacker = SeatRecord::default();
        let mut defender = SeatRecord::default();
        let (mut attacker_points, mut defender_points) = (0u64, 0u64);
        let mut played: BTreeMap<TokenId, u32> = BTreeMap::new();
        let mut judged: BTreeMap<TokenId, (u32, u32)> = BTreeMap::new();
        for record in records {
            let result = &record.report.final_result;
            attacker_points += u64::from(result.attacker_total);
            defender_points += u64::from(result.defender_total);
            match result.outcome {
                Outcome::AttackerWin => {
                    attacker.wins += 1;
                    defender.losses += 1;
                }
                Outcome::DefenderWin => {
                    defender.wins += 1;
                    attacker.losses += 1;
                }
                Outcome::Draw => {
                    attacker.draws += 1;
                    defender.draws += 1;
                }
            }
            for &token in &record.placements {
                *played.entry(token).or_default() += 1;
            }
            for m in &record.report.matchups {
                for token in [m.attacker, m.defender] {
                    let slot = judged.entry(token).or_default();
                    slot.0 += 1;
                    if token.role() == m.winner {
                        slot.1 += 1;
                    }
                }
            }
        }
        let games = records.len() as u32;
        let tokens = Role::ALL
            .into_iter()
            .flat_map(TokenId::all)
            .map(|token| {
                let (judged, wins) = judged.get(&token).copied().unwrap_or_default();
                TokenStat {
                    token,
                    label: catalog.label(token).to_string(),
                    played: played.get(&token).copied().unwrap_or_default(),
                    judged,
                    wins,
                    win_rate: if judged == 0 { 0.0 } else { f64::from(wins) / f64::from(judged) },
                }
            })
            .collect::<Vec<_>>();
        let awarded = attacker_points + defender_points;
        let share = |points: u64| if awarded == 0 { 0.0 } else { 100.0 * points as f64 / awarded as f64 };
        let reports: Vec<GameReport> = records.iter().map(|r| r.report.clone()).collect();
        TournamentSummary {
            games,
            attacker_policy: config.attacker.name(),
            defender_policy: config.defender.name(),
            seed: config.seed,
            attacker,
            defender,
            mean_attacker_score: attacker_points as f64 / f64::from(games.max(1)),
            mean_defender_score: defender_points as f64 / f64::from(games.max(1)),
            pooled_awareness: share(defender_points),
            pooled_intrusion: share(attacker_points),
            total_placements: tokens.iter().map(|t| t.played).sum(),
            tokens,
            tricks: trick_breakdown(&reports, catalog),
        }
    }
}

/// Plays `config.games` games in parallel, game `i` seeding its random seats
/// from `config.seed + i`, and aggregates them.
pub fn tournament_summary(
    config: &TournamentConfig,
    matrix: &MatchupMatrix,
    catalog: &Catalog,
) -> Result<TournamentSummary, AnalyticsError> {
    let records = tournament_records(config, matrix, catalog)?;
    Ok(TournamentSummary::from_records(config, &records, catalog))
}

/// The finished games of a tournament, in game-index order.
pub fn tournament_records(
    config: &TournamentConfig,
    matrix: &MatchupMatrix,
    catalog: &Catalog,
) -> Result<Vec<GameRecord>, AnalyticsError> {
    if config.games == 0 {
        return Err(AnalyticsError::NoGames);
    }
    (0..config.games)
        .into_par_iter()
        .map(|index| {
            let attacker = config.attacker.reseeded(seat_seed(config.seed, index, Role::Attacker));
            let defender = config.defender.reseeded(seat_seed(config.seed, index, Role::Defender));
            let state = play_game(&config.rules, &attacker, &defender, matrix)?;
            GameRecord::from_state(&state, matrix, catalog)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn percentages() {
        let (aware, intrude) = awareness_and_intrusion(9, 17);
        assert!((aware - 65.4).abs() <= 0.1, "{aware}");
        assert!((intrude - 34.6).abs() <= 0.1, "{intrude}");
        assert_eq!(awareness_and_intrusion(0, 0), (0.0, 0.0));
        assert_eq!(awareness_and_intrusion(3, 0), (0.0, 100.0));
    }

    #[test]
    fn seat_seeds_differ() {
        assert_ne!(seat_seed(7, 0, Role::Attacker), seat_seed(7, 0, Role::Defender));
        assert_ne!(seat_seed(7, 0, Role::Attacker), seat_seed(7, 1, Role::Attacker));
    }

    #[test]
    fn empty_breakdown() {
        let b = trick_breakdown(&[], &Catalog::default_catalog());
        assert!(b.attacker.is_empty() && b.defender.is_empty());
    }

    #[test]
    fn zero_games_rejected() {
        let config = TournamentConfig {
            games: 0,
            attacker: Policy::Greedy,
            defender: Policy::Greedy,
            seed: 0,
            rules: GameConfig::default(),
        };
        let catalog = Catalog::default_catalog();
        assert_eq!(tournament_summary(&config, catalog.matchup_matrix(), &catalog), Err(AnalyticsError::NoGames));
    }
}
