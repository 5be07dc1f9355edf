//! Brute-force equilibrium search by support enumeration.
//!
//! For each pair of equal-size supports, solve the indifference equations of
//! both players and keep the first profile where both strategies are
//! non-negative and no pure deviation pays. Sound for nondegenerate games,
//! which random continuous matrices are almost surely.

const EPS: f64 = 1e-9;

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

/// Gaussian elimination with partial pivoting; `None` if singular.
fn solve_linear(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Option<Vec<f64>> {
    let n = b.len();
    for col in 0..n {
        let pivot = (col..n).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))?;
        if a[pivot][col].abs() < 1e-12 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in 0..n {
            if row != col {
                let factor = a[row][col] / a[col][col];
                for k in col..n {
                    a[row][k] -= factor * a[col][k];
                }
                b[row] -= factor * b[col];
            }
        }
    }
    Some((0..n).map(|i| b[i] / a[i][i]).collect())
}

#[derive(Debug, Clone, PartialEq)]
pub struct SupportEquilibrium {
    pub value: f64,
    pub row_strategy: Vec<f64>,
    pub col_strategy: Vec<f64>,
}

/// Equilibrium of the game where the row player maximizes `payoff`.
pub fn solve(payoff: &[Vec<f64>]) -> Option<SupportEquilibrium> {
    let m = payoff.len();
    let n = payoff[0].len();
    for k in 1..=m.min(n) {
        for rows in subsets(m, k) {
            for cols in subsets(n, k) {
                // Unknowns: y over `cols`, then v. Rows in support are indifferent.
                let mut a = Vec::with_capacity(k + 1);
                let mut b = Vec::with_capacity(k + 1);
                for &i in &rows {
                    let mut eq: Vec<f64> = cols.iter().map(|&j| payoff[i][j]).collect();
                    eq.push(-1.0);
                    a.push(eq);
                    b.push(0.0);
                }
                let mut norm = vec![1.0; k];
                norm.push(0.0);
                a.push(norm);
                b.push(1.0);
                let Some(ysol) = solve_linear(a, b) else { continue };

                let mut a = Vec::with_capacity(k + 1);
                let mut b = Vec::with_capacity(k + 1);
                for &j in &cols {
                    let mut eq: Vec<f64> = rows.iter().map(|&i| payoff[i][j]).collect();
                    eq.push(-1.0);
                    a.push(eq);
                    b.push(0.0);
                }
                let mut norm = vec![1.0; k];
                norm.push(0.0);
                a.push(norm);
                b.push(1.0);
                let Some(xsol) = solve_linear(a, b) else { continue };

                if ysol[..k].iter().chain(&xsol[..k]).any(|&p| p < -EPS) {
                    continue;
                }
                let v = ysol[k];
                let mut col_strategy = vec![0.0; n];
                for (slot, &j) in cols.iter().enumerate() {
                    col_strategy[j] = ysol[slot].max(0.0);
                }
                let mut row_strategy = vec![0.0; m];
                for (slot, &i) in rows.iter().enumerate() {
                    row_strategy[i] = xsol[slot].max(0.0);
                }
                let row_ok = (0..m).all(|i| (0..n).map(|j| payoff[i][j] * col_strategy[j]).sum::<f64>() <= v + EPS);
                let col_ok = (0..n).all(|j| (0..m).map(|i| payoff[i][j] * row_strategy[i]).sum::<f64>() >= v - EPS);
                if row_ok && col_ok {
                    return Some(SupportEquilibrium { value: v, row_strategy, col_strategy });
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{lp, SplitMix64};

    #[test]
    fn agrees_with_lp_on_random_games() {
        let mut rng = SplitMix64::new(99);
        for _ in 0..300 {
            let m = rng.matrix(3, 3);
            let brute = solve(&m).expect("nondegenerate game has an equilibrium");
            let lp = lp::solve_zero_sum(&m);
            assert!((brute.value - lp.value).abs() < 1e-9, "{m:?}");
        }
    }

    #[test]
    fn pure_saddle() {
        let e = solve(&[vec![1.0, 0.0], vec![1.0, 0.5]]).unwrap();
        assert_eq!(e.value, 0.5);
        assert_eq!(e.row_strategy, vec![0.0, 1.0]);
        assert_eq!(e.col_strategy, vec![0.0, 1.0]);
    }
}
