//! Zero-sum analysis of the token matchup game.
//!
//! Rows are attacker tokens (maximizer), columns defender tokens
//! (minimizer), and an entry is the attacker's payoff in `[0, 1]`.

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::catalog::{MatchupMatrix, Role, TokenId, TOKENS_PER_SIDE};

/// Payoff given to cells the judge has no verdict for.
pub const UNJUDGED_PAYOFF: f64 = 0.5;

const STRATEGY_SUM_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolveError {
    #[error("payoff entry ({row}, {col}) is not finite: {value}")]
    NonFinite { row: usize, col: usize, value: f64 },
    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },
    #[error("payoff matrix must have at least one row and one column")]
    Empty,
    #[error("iterations must be at least 1")]
    NoIterations,
    #[error("invalid mixed strategy: {0}")]
    InvalidStrategy(String),
}

/// Dense row-major payoff matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PayoffMatrix {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl PayoffMatrix {
    pub fn new(rows: usize, cols: usize, values: Vec<f64>) -> Result<Self, SolveError> {
        if rows == 0 || cols == 0 {
            return Err(SolveError::Empty);
        }
        if values.len() != rows * cols {
            return Err(SolveError::Dimension { expected: rows * cols, actual: values.len() });
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(SolveError::NonFinite { row: pos / cols, col: pos % cols, value: values[pos] });
        }
        Ok(Self { rows, cols, values })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self, SolveError> {
        let cols = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(SolveError::Dimension { expected: cols, actual: bad.len() });
        }
        Self::new(rows.len(), cols, rows.concat())
    }

    /// A matrix with every entry equal to `value`.
    pub fn constant(rows: usize, cols: usize, value: f64) -> Result<Self, SolveError> {
        Self::new(rows, cols, vec![value; rows * cols])
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.values[row * self.cols..(row + 1) * self.cols]
    }

    pub fn min_entry(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max_entry(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    /// The same game seen from the other seat: transposed, with payoffs
    /// replaced by `1 - x`, so the former column player now maximizes.
    pub fn mirrored(&self) -> PayoffMatrix {
        let mut values = Vec::with_capacity(self.values.len());
        for col in 0..self.cols {
            for row in 0..self.rows {
                values.push(1.0 - self.get(row, col));
            }
        }
        PayoffMatrix { rows: self.cols, cols: self.rows, values }
    }

    /// `P · d`: the row player's expected payoff for each pure row.
    pub fn row_payoffs(&self, defender: &MixedStrategy) -> Vec<f64> {
        (0..self.rows).map(|i| self.row(i).iter().zip(defender.probabilities()).map(|(p, q)| p * q).sum()).collect()
    }

    /// `aᵀ · P`: the row player's expected payoff against each pure column.
    pub fn col_payoffs(&self, attacker: &MixedStrategy) -> Vec<f64> {
        let mut out = vec![0.0; self.cols];
        for (i, &weight) in attacker.probabilities().iter().enumerate() {
            if weight == 0.0 {
                continue;
            }
            for (slot, p) in out.iter_mut().zip(self.row(i)) {
                *slot += weight * p;
            }
        }
        out
    }

    pub fn expected_value(&self, attacker: &MixedStrategy, defender: &MixedStrategy) -> f64 {
        attacker.probabilities().iter().zip(self.row_payoffs(defender)).map(|(a, v)| a * v).sum()
    }
}

/// 13×13 payoff of the token game: judged attacker wins 1, judged defender
/// wins 0, unjudged cells 0.5.
pub fn payoff_matrix(matrix: &MatchupMatrix) -> PayoffMatrix {
    let n = usize::from(TOKENS_PER_SIDE);
    let mut values = vec![UNJUDGED_PAYOFF; n * n];
    for entry in matrix.entries() {
        values[entry.attacker.offset() * n + entry.defender.offset()] = match entry.winner {
            Role::Attacker => 1.0,
            Role::Defender => 0.0,
        };
    }
    PayoffMatrix::new(n, n, values).expect("13x13 finite payoff")
}

#[derive(Debug, Clone, PartialEq)]
pub struct MixedStrategy(Vec<f64>);

impl MixedStrategy {
    pub fn new(probabilities: Vec<f64>) -> Result<Self, SolveError> {
        if probabilities.is_empty() {
            return Err(SolveError::InvalidStrategy("empty".into()));
        }
        if probabilities.iter().any(|p| !p.is_finite() || *p < 0.0) {
            return Err(SolveError::InvalidStrategy("negative or non-finite probability".into()));
        }
        let sum: f64 = probabilities.iter().sum();
        if (sum - 1.0).abs() > STRATEGY_SUM_TOLERANCE {
            return Err(SolveError::InvalidStrategy(format!("probabilities sum to {sum}")));
        }
        Ok(Self(probabilities))
    }

    pub fn pure(len: usize, index: usize) -> Self {
        let mut p = vec![0.0; len];
        p[index] = 1.0;
        Self(p)
    }

    pub fn uniform(len: usize) -> Self {
        Self(vec![1.0 / len as f64; len])
    }

    fn from_counts(counts: &[u64], total: u64) -> Self {
        Self(counts.iter().map(|&c| c as f64 / total as f64).collect())
    }

    pub fn probabilities(&self) -> &[f64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Indices with positive weight.
    pub fn support(&self) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, p)| **p > 0.0).map(|(i, _)| i).collect()
    }
}

fn check_dims(payoff: &PayoffMatrix, attacker: &MixedStrategy, defender: &MixedStrategy) -> Result<(), SolveError> {
    if attacker.len() != payoff.rows() {
        return Err(SolveError::Dimension { expected: payoff.rows(), actual: attacker.len() });
    }
    if defender.len() != payoff.cols() {
        return Err(SolveError::Dimension { expected: payoff.cols(), actual: defender.len() });
    }
    Ok(())
}

/// `maxᵢ (P·d)ᵢ − minⱼ (aᵀ·P)ⱼ`; zero exactly at equilibrium.
pub fn exploitability(
    payoff: &PayoffMatrix,
    attacker: &MixedStrategy,
    defender: &MixedStrategy,
) -> Result<f64, SolveError> {
    check_dims(payoff, attacker, defender)?;
    let best_attack = payoff.row_payoffs(defender).into_iter().fold(f64::NEG_INFINITY, f64::max);
    let best_defence = payoff.col_payoffs(attacker).into_iter().fold(f64::INFINITY, f64::min);
    Ok((best_attack - best_defence).max(0.0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumReport {
    pub attacker_strategy: MixedStrategy,
    pub defender_strategy: MixedStrategy,
    pub value: f64,
    pub iterations: u64,
    pub exploitability: f64,
}

fn argmax_first(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v > values[best] {
            best = i;
        }
    }
    best
}

fn argmin_first(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate().skip(1) {
        if v < values[best] {
            best = i;
        }
    }
    best
}

/// Running totals drift from the averaged strategies by rounding, so the
/// stopping test is confirmed on the strategies actually reported.
fn averaged_gap(
    payoff: &PayoffMatrix,
    attacker_counts: &[u64],
    defender_counts: &[u64],
    rounds: u64,
) -> Result<f64, SolveError> {
    exploitability(
        payoff,
        &MixedStrategy::from_counts(attacker_counts, rounds),
        &MixedStrategy::from_counts(defender_counts, rounds),
    )
}

/// Simultaneous fictitious play. Each round both players best-respond to the
/// other's empirical mixture (uniform before the first round), ties going to
/// the lowest index. Stops after `iterations` rounds or once the averaged
/// strategies are within `tolerance` of equilibrium.
pub fn solve_matrix_game(
    payoff: &PayoffMatrix,
    iterations: u64,
    tolerance: f64,
) -> Result<EquilibriumReport, SolveError> {
    if iterations == 0 {
        return Err(SolveError::NoIterations);
    }
    let (m, n) = (payoff.rows(), payoff.cols());
    let mut attacker_counts = vec![0u64; m];
    let mut defender_counts = vec![0u64; n];
    // Cumulative payoff of each pure row against the defender's plays so far,
    // and of each pure column against the attacker's plays.
    let mut row_totals = vec![0.0; m];
    let mut col_totals = vec![0.0; n];

    let mut attacker_move = argmax_first(&(0..m).map(|i| payoff.row(i).iter().sum()).collect::<Vec<f64>>());
    let mut defender_move = argmin_first(&payoff.col_payoffs(&MixedStrategy(vec![1.0; m])));

    let mut rounds = 0;
    while rounds < iterations {
        rounds += 1;
        attacker_counts[attacker_move] += 1;
        defender_counts[defender_move] += 1;
        for (i, total) in row_totals.iter_mut().enumerate() {
            *total += payoff.get(i, defender_move);
        }
        for (total, p) in col_totals.iter_mut().zip(payoff.row(attacker_move)) {
            *total += p;
        }
        attacker_move = argmax_first(&row_totals);
        defender_move = argmin_first(&col_totals);
        let gap = (row_totals[attacker_move] - col_totals[defender_move]) / rounds as f64;
        if gap <= tolerance && averaged_gap(payoff, &attacker_counts, &defender_counts, rounds)? <= tolerance {
            break;
        }
    }

    let attacker_strategy = MixedStrategy::from_counts(&attacker_counts, rounds);
    let defender_strategy = MixedStrategy::from_counts(&defender_counts, rounds);
    let value = payoff.expected_value(&attacker_strategy, &defender_strategy);
    let exploitability = exploitability(payoff, &attacker_strategy, &defender_strategy)?;
    Ok(EquilibriumReport { attacker_strategy, defender_strategy, value, iterations: rounds, exploitability })
}

/// A strategy keyed by token id, serialized as an ordered JSON object.
#[derive(Debug, Clone, PartialEq)]
pub struct TokenDistribution(pub Vec<(TokenId, f64)>);

impl TokenDistribution {
    pub fn new(role: Role, strategy: &MixedStrategy) -> Self {
        Self(TokenId::all(role).zip(strategy.probabilities().iter().copied()).collect())
    }

    pub fn to_csv_rows(&self) -> Vec<(String, f64)> {
        self.0.iter().map(|(t, p)| (t.to_string(), *p)).collect()
    }
}

impl Serialize for TokenDistribution {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (token, p) in &self.0 {
            map.serialize_entry(&token.to_string(), p)?;
        }
        map.end()
    }
}

/// JSON form of a solve over the 13×13 token game.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SolveSummary {
    pub value: f64,
    pub exploitability: f64,
    pub iterations: u64,
    pub attacker_strategy: TokenDistribution,
    pub defender_strategy: TokenDistribution,
}

impl SolveSummary {
    pub fn from_report(report: &EquilibriumReport) -> Self {
        Self {
            value: report.value,
            exploitability: report.exploitability,
            iterations: report.iterations,
            attacker_strategy: TokenDistribution::new(Role::Attacker, &report.attacker_strategy),
            defender_strategy: TokenDistribution::new(Role::Defender, &report.defender_strategy),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;

    fn pennies() -> PayoffMatrix {
        PayoffMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap()
    }

    #[test]
    fn default_payoff_cells() {
        let p = payoff_matrix(Catalog::default_catalog().matchup_matrix());
        assert_eq!(p.get(1, 6), 1.0);
        assert_eq!(p.get(0, 12), 0.5);
        assert_eq!(p.get(0, 4), 0.0);
        let ones = (0..13).flat_map(|i| (0..13).map(move |j| (i, j))).filter(|&(i, j)| p.get(i, j) == 1.0).count();
        let zeros = (0..13).flat_map(|i| (0..13).map(move |j| (i, j))).filter(|&(i, j)| p.get(i, j) == 0.0).count();
        assert_eq!((ones, zeros), (9, 17));
    }

    #[test]
    fn pennies_exploitability() {
        let p = pennies();
        let u = MixedStrategy::uniform(2);
        assert_eq!(exploitability(&p, &u, &u).unwrap(), 0.0);
        assert_eq!(exploitability(&p, &MixedStrategy::pure(2, 0), &u).unwrap(), 0.5);
        assert!(exploitability(&p, &MixedStrategy::uniform(3), &u).is_err());
    }

    #[test]
    fn pennies_solve() {
        let report = solve_matrix_game(&pennies(), 10_000, 0.0).unwrap();
        assert!((report.value - 0.5).abs() <= 0.02);
        for s in [&report.attacker_strategy, &report.defender_strategy] {
            assert!((s.probabilities()[0] - 0.5).abs() <= 0.02, "{s:?}");
        }
    }

    #[test]
    fn dominated_subgame_is_pure() {
        // Phone and Chat against Trust and Network monitoring.
        let p = PayoffMatrix::from_rows(&[vec![1.0, 0.0], vec![1.0, 0.5]]).unwrap();
        let report = solve_matrix_game(&p, 10_000, 1e-9).unwrap();
        assert_eq!(report.attacker_strategy.support(), vec![1]);
        assert_eq!(report.defender_strategy.support(), vec![1]);
        assert_eq!(report.value, 0.5);
        assert_eq!(report.exploitability, 0.0);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(PayoffMatrix::from_rows(&[vec![f64::NAN, 0.0]]), Err(SolveError::NonFinite { .. })));
        assert!(solve_matrix_game(&pennies(), 0, 0.0).is_err());
        assert!(MixedStrategy::new(vec![0.6, 0.6]).is_err());
        assert!(MixedStrategy::new(vec![-0.1, 1.1]).is_err());
    }

    #[test]
    fn mirrored_twice_is_identity() {
        let p = PayoffMatrix::from_rows(&[vec![1.0, 0.0, 0.5], vec![0.25, 0.75, 1.0]]).unwrap();
        let m = p.mirrored();
        assert_eq!((m.rows(), m.cols()), (3, 2));
        assert_eq!(m.get(2, 1), 0.0);
        assert_eq!(m.mirrored(), p);
    }

    #[test]
    fn summary_keys_follow_token_order() {
        let report = solve_matrix_game(&payoff_matrix(Catalog::default_catalog().matchup_matrix()), 50, 0.0).unwrap();
        let json = serde_json::to_string(&SolveSummary::from_report(&report)).unwrap();
        let a2 = json.find("\"A2\"").unwrap();
        let a10 = json.find("\"A10\"").unwrap();
        assert!(a2 < a10);
    }
}
