use dpgame_core::catalog::Catalog;
use dpgame_core::strategies::{
    exploitability, hypergame_eval, payoff_matrix, solve_matrix_game, HypergameOptions, MixedStrategy, PayoffMatrix,
};
use dpgame_testkit::{golden_payoff, lp, support, SplitMix64};

fn rows_of(p: &PayoffMatrix) -> Vec<Vec<f64>> {
    (0..p.rows()).map(|i| p.row(i).to_vec()).collect()
}

fn default_payoff() -> PayoffMatrix {
    payoff_matrix(Catalog::default_catalog().matchup_matrix())
}

/// Maximin value of the default matrix, from the LP oracle.
const DEFAULT_VALUE: f64 = 3.0 / 7.0;

#[test]
fn payoff_matrix_matches_the_independent_transcription() {
    assert_eq!(rows_of(&default_payoff()), golden_payoff());
}

#[test]
fn oracle_value_of_the_default_matrix() {
    let solution = lp::solve_zero_sum(&golden_payoff());
    assert!((solution.value - DEFAULT_VALUE).abs() < 1e-12, "{}", solution.value);
}

#[test]
fn random_three_by_three_games_agree_with_support_enumeration() {
    let mut rng = SplitMix64::new(0xC0FFEE);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let rows = rng.matrix(3, 3);
        let oracle = support::solve(&rows).expect("equilibrium exists");
        let report = solve_matrix_game(&PayoffMatrix::from_rows(&rows).unwrap(), 100_000, 0.0).unwrap();
        worst = worst.max((report.value - oracle.value).abs());
    }
    assert!(worst < 1e-2, "worst deviation {worst}");
}

#[test]
fn default_matrix_converges_to_the_oracle_value() {
    let report = solve_matrix_game(&default_payoff(), 100_000, 0.0).unwrap();
    assert!(report.exploitability <= 0.02, "{}", report.exploitability);
    assert!((report.value - DEFAULT_VALUE).abs() < 1e-3, "{}", report.value);
    // Frozen run: 10⁵ rounds, no early stop.
    assert_eq!(report.iterations, 100_000);
    assert!((report.value - 0.428_575).abs() < 1e-5, "{}", report.value);
}

#[test]
fn early_stop_honours_the_tolerance() {
    let report = solve_matrix_game(&default_payoff(), 100_000, 0.02).unwrap();
    assert!(report.iterations < 100_000);
    assert!(report.exploitability <= 0.02, "{} after {}", report.exploitability, report.iterations);
}

#[test]
fn matching_pennies_is_uniform() {
    let p = PayoffMatrix::from_rows(&[vec![1.0, 0.0], vec![0.0, 1.0]]).unwrap();
    let report = solve_matrix_game(&p, 10_000, 0.0).unwrap();
    assert!((report.value - 0.5).abs() <= 0.02);
    for s in [&report.attacker_strategy, &report.defender_strategy] {
        assert!((s.probabilities()[0] - 0.5).abs() <= 0.02);
    }
    let pure = MixedStrategy::pure(2, 0);
    let uniform = MixedStrategy::uniform(2);
    assert_eq!(exploitability(&p, &uniform, &uniform).unwrap(), 0.0);
    assert_eq!(exploitability(&p, &pure, &uniform).unwrap(), 0.5);
}

#[test]
fn reports_are_well_formed_at_every_length() {
    let mut rng = SplitMix64::new(12);
    for _ in 0..50 {
        let rows = rng.matrix(4, 5);
        let p = PayoffMatrix::from_rows(&rows).unwrap();
        for iterations in 1..40 {
            let r = solve_matrix_game(&p, iterations, 0.0).unwrap();
            for s in [&r.attacker_strategy, &r.defender_strategy] {
                assert!(s.probabilities().iter().all(|&x| x >= 0.0));
                assert!((s.probabilities().iter().sum::<f64>() - 1.0).abs() < 1e-9);
            }
            assert!(r.value >= p.min_entry() - 1e-12 && r.value <= p.max_entry() + 1e-12);
            assert!(r.exploitability >= 0.0);
            let again = exploitability(&p, &r.attacker_strategy, &r.defender_strategy).unwrap();
            assert_eq!(again, r.exploitability);
        }
    }
}

#[test]
fn hypergame_with_accurate_beliefs_matches_the_solver() {
    let p = default_payoff();
    let options = HypergameOptions::default();
    let report = hypergame_eval(&p, &p, &p, options).unwrap();
    let solved = solve_matrix_game(&p, options.iterations, options.tolerance).unwrap();
    assert!((report.realized_value - solved.value).abs() <= 2.0 * options.tolerance);
    assert!(report.attacker.regret <= solved.exploitability + 1e-12);
    assert!(report.defender.regret <= solved.exploitability + 1e-12);
    assert!(report.attacker.regret < 0.01 && report.defender.regret < 0.01);
}

#[test]
fn ignorant_attacker_golden_regrets() {
    let p = default_payoff();
    let ignorance = PayoffMatrix::constant(13, 13, 0.5).unwrap();
    let report = hypergame_eval(&p, &ignorance, &p, HypergameOptions::default()).unwrap();
    // A flat matrix leaves every row tied, so the attacker settles on A1.
    assert_eq!(report.attacker.strategy, MixedStrategy::pure(13, 0));
    assert!((report.attacker.regret - 0.003_835).abs() < 1e-5, "{}", report.attacker.regret);
    assert!((report.defender.regret - 0.426_495).abs() < 1e-5, "{}", report.defender.regret);
    assert!((report.realized_value - 0.426_495).abs() < 1e-5, "{}", report.realized_value);
    assert!(report.attacker.regret < report.defender.regret);
}

#[test]
fn swapping_beliefs_mirrors_the_report() {
    let p = default_payoff();
    let mut rng = SplitMix64::new(8);
    let noisy: Vec<Vec<f64>> =
        (0..13).map(|i| (0..13).map(|j| if rng.below(4) == 0 { 0.5 } else { p.get(i, j) }).collect()).collect();
    let perceived = PayoffMatrix::from_rows(&noisy).unwrap();
    let options = HypergameOptions { iterations: 5_000, tolerance: 0.0 };
    for (pa, pd) in [(&perceived, &p), (&p, &perceived), (&perceived, &perceived.mirrored())] {
        let forward = hypergame_eval(&p, pa, pd, options).unwrap();
        let swapped = hypergame_eval(&p.mirrored(), &pd.mirrored(), &pa.mirrored(), options).unwrap();
        let expected = forward.mirrored();
        assert_eq!(swapped.attacker.strategy, expected.attacker.strategy);
        assert_eq!(swapped.defender.strategy, expected.defender.strategy);
        for (x, y) in [
            (swapped.realized_value, expected.realized_value),
            (swapped.attacker.regret, expected.attacker.regret),
            (swapped.defender.regret, expected.defender.regret),
            (swapped.attacker.perceived_value, expected.attacker.perceived_value),
            (swapped.defender.perceived_value, expected.defender.perceived_value),
        ] {
            assert!((x - y).abs() < 1e-12, "{x} vs {y}");
        }
    }
}

#[test]
fn mismatched_shapes_are_rejected() {
    let p = default_payoff();
    let small = PayoffMatrix::constant(2, 2, 0.5).unwrap();
    assert!(hypergame_eval(&p, &small, &p, HypergameOptions::default()).is_err());
    assert!(exploitability(&p, &MixedStrategy::uniform(2), &MixedStrategy::uniform(13)).is_err());
}
