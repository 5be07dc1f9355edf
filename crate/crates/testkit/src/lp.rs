//! Zero-sum game value by linear programming (dense tableau simplex with
//! Bland's rule).
//!
//! With every entry shifted positive, the column player's problem becomes
//! `max Σy  s.t.  M y ≤ 1, y ≥ 0`; the game value is `1 / Σy` minus the
//! shift, and the row strategy is read from the slack duals.

const EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub value: f64,
    pub row_strategy: Vec<f64>,
    pub col_strategy: Vec<f64>,
}

/// Solves the game whose row player maximizes `payoff[i][j]`.
pub fn solve_zero_sum(payoff: &[Vec<f64>]) -> LpSolution {
    let m = payoff.len();
    let n = payoff[0].len();
    let min = payoff.iter().flatten().copied().fold(f64::INFINITY, f64::min);
    let shift = 1.0 - min;

    // Tableau: m constraint rows + objective row; columns n decision vars,
    // m slacks, rhs.
    let width = n + m + 1;
    let mut t = vec![vec![0.0; width]; m + 1];
    for i in 0..m {
        for j in 0..n {
            t[i][j] = payoff[i][j] + shift;
        }
        t[i][n + i] = 1.0;
        t[i][width - 1] = 1.0;
    }
    for j in 0..n {
        t[m][j] = -1.0;
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    while let Some(enter) = (0..n + m).find(|&j| t[m][j] < -EPS) {
        let mut leave: Option<usize> = None;
        for i in 0..m {
            if t[i][enter] > EPS {
                let ratio = t[i][width - 1] / t[i][enter];
                leave = match leave {
                    None => Some(i),
                    Some(l) => {
                        let best = t[l][width - 1] / t[l][enter];
                        if ratio < best - EPS || ((ratio - best).abs() <= EPS && basis[i] < basis[l]) {
                            Some(i)
                        } else {
                            Some(l)
                        }
                    }
                };
            }
        }
        let leave = leave.expect("bounded: every column has a positive entry");
        let pivot = t[leave][enter];
        for value in t[leave].iter_mut() {
            *value /= pivot;
        }
        for i in 0..=m {
            if i != leave {
                let factor = t[i][enter];
                if factor != 0.0 {
                    for j in 0..width {
                        t[i][j] -= factor * t[leave][j];
                    }
                }
            }
        }
        basis[leave] = enter;
    }

    let objective = t[m][width - 1];
    let shifted_value = 1.0 / objective;
    let mut col_strategy = vec![0.0; n];
    for (i, &var) in basis.iter().enumerate() {
        if var < n {
            col_strategy[var] = t[i][width - 1] * shifted_value;
        }
    }
    let row_strategy = (0..m).map(|i| t[m][n + i] * shifted_value).collect();
    LpSolution { value: shifted_value - shift, row_strategy, col_strategy }
}
