use dpgame_core::analytics::{
    game_report, play_game, report_position, tournament_records, tournament_summary, trick_breakdown, GameRecord,
    TournamentConfig, TournamentSummary,
};
use dpgame_core::board::{apply_action, legal_actions, new_game, Action, GameConfig, GameState, Ring};
use dpgame_core::catalog::{Catalog, Role, TokenId, TrickTag};
use dpgame_core::judge::{final_result, ScoreKind};
use dpgame_core::strategies::Policy;
use dpgame_testkit::SplitMix64;

fn config(games: u32, attacker: Policy, defender: Policy, seed: u64) -> TournamentConfig {
    TournamentConfig { games, attacker, defender, seed, rules: GameConfig::default() }
}

/// A full legal game whose only judged matchup is Phone vs Trust on (9, 17).
fn phone_versus_trust_game() -> GameState {
    let a = TokenId::attacker;
    let d = TokenId::defender;
    let mut state = new_game(&GameConfig::default()).unwrap();
    state = apply_action(&state, &Action::open(a(2), Ring::Middle, 1)).unwrap();
    state = apply_action(&state, &Action::open(d(7), Ring::Outer, 1)).unwrap();
    let attackers = [1, 4, 12, 9, 6, 7].map(a);
    let defenders = [1, 4, 6, 7, 9, 11].map(d);
    while !state.is_terminal() {
        let pool: &[TokenId] = if state.to_move() == Role::Attacker { &attackers } else { &defenders };
        let action = legal_actions(&state).into_iter().find(|x| pool.contains(&x.token)).unwrap();
        state = apply_action(&state, &action).unwrap();
    }
    state
}

#[test]
fn single_judged_matchup_drives_the_trick_table() {
    let catalog = Catalog::default_catalog();
    let state = phone_versus_trust_game();
    let report = game_report(&state, catalog.matchup_matrix(), &catalog).unwrap();
    assert_eq!(report.matchups.len(), 1);
    let m = &report.matchups[0];
    assert_eq!((m.attacker, m.defender, m.winner), (TokenId::attacker(2), TokenId::defender(7), Role::Attacker));
    assert_eq!((m.pair.a.index(), m.pair.b.index()), (9, 17));

    let table = trick_breakdown(std::slice::from_ref(&report), &catalog);
    assert_eq!(table.attacker.len(), 1);
    assert_eq!(table.attacker[0].trick, TrickTag::FalseInformation);
    assert_eq!((table.attacker[0].played, table.attacker[0].won), (1, 1));
    assert_eq!(table.attacker[0].win_rate, 1.0);
    assert_eq!(table.defender.len(), 1);
    assert_eq!(table.defender[0].trick, TrickTag::RiskManagement);
    assert_eq!(table.defender[0].win_rate, 0.0);
}

#[test]
fn reports_satisfy_their_invariants() {
    let catalog = Catalog::default_catalog();
    let matrix = catalog.matchup_matrix();
    let mut rng = SplitMix64::new(6);
    let mut reports = Vec::new();
    for _ in 0..300 {
        let mut state = new_game(&GameConfig::default()).unwrap();
        while !state.is_terminal() {
            let actions = legal_actions(&state);
            state = apply_action(&state, &actions[rng.below(actions.len())]).unwrap();
        }
        let report = game_report(&state, matrix, &catalog).unwrap();
        assert_eq!(report, report_position(&state, matrix, &catalog));
        let sum = report.awareness_score + report.intrusion_score;
        assert!(sum == 0.0 || (sum - 100.0).abs() < 1e-9);
        assert!((0.0..=100.0).contains(&report.awareness_score));
        let judged = report.final_result.events.iter().filter(|e| e.kind == ScoreKind::MixedMatchup).count();
        assert_eq!(report.matchups.len(), judged);
        let unjudged = report.final_result.events.iter().filter(|e| e.kind == ScoreKind::UnjudgedMatchup).count();
        assert_eq!(report.unjudged_count as usize, unjudged);
        let tally: u32 = report.per_trick.iter().map(|t| t.wins + t.losses).sum();
        assert_eq!(tally as usize, 2 * judged);
        reports.push(report);
    }
    let table = trick_breakdown(&reports, &catalog);
    let judged: usize = reports.iter().map(|r| r.matchups.len()).sum();
    for side in [&table.attacker, &table.defender] {
        assert_eq!(side.iter().map(|r| r.played as usize).sum::<usize>(), judged);
        let names: Vec<&str> = side.iter().map(|r| r.trick.name()).collect();
        let mut sorted = names.clone();
        sorted.sort();
        assert_eq!(names, sorted);
    }
}

#[test]
fn unjudged_only_game_scores_zero_awareness() {
    let catalog = Catalog::default_catalog();
    let a = TokenId::attacker;
    let d = TokenId::defender;
    // Email against Backup is not in the table.
    let mut state = new_game(&GameConfig { budget: 2, token_limit: 2 }).unwrap();
    state = apply_action(&state, &Action::open(a(1), Ring::Middle, 1)).unwrap();
    state = apply_action(&state, &Action::open(d(13), Ring::Outer, 1)).unwrap();
    state = apply_action(&state, &Action::next_on(a(1), Ring::Middle)).unwrap();
    assert!(state.is_terminal());
    let report = game_report(&state, catalog.matchup_matrix(), &catalog).unwrap();
    assert_eq!((report.awareness_score, report.intrusion_score), (0.0, 0.0));
    assert_eq!(report.unjudged_count, 1);
    assert!(report.matchups.is_empty());
}

#[test]
fn tournaments_are_reproducible() {
    let catalog = Catalog::default_catalog();
    let cfg = config(10, Policy::Random { seed: 0 }, Policy::Random { seed: 0 }, 42);
    let first = tournament_summary(&cfg, catalog.matchup_matrix(), &catalog).unwrap();
    let second = tournament_summary(&cfg, catalog.matchup_matrix(), &catalog).unwrap();
    assert_eq!(first, second);
    assert_eq!(serde_json::to_string(&first).unwrap(), serde_json::to_string(&second).unwrap());
    for seat in [first.attacker, first.defender] {
        assert_eq!(seat.wins + seat.draws + seat.losses, 10);
    }
    assert_eq!(first.total_placements, 10 * 25);
    assert_eq!(first.tokens.iter().map(|t| t.played).sum::<u32>(), first.total_placements);
}

#[test]
fn aggregation_ignores_game_order() {
    let catalog = Catalog::default_catalog();
    let cfg = config(40, Policy::Random { seed: 0 }, Policy::Greedy, 3);
    let mut records = tournament_records(&cfg, catalog.matchup_matrix(), &catalog).unwrap();
    let forward = TournamentSummary::from_records(&cfg, &records, &catalog);
    let mut rng = SplitMix64::new(1);
    for i in (1..records.len()).rev() {
        records.swap(i, rng.below(i + 1));
    }
    assert_eq!(TournamentSummary::from_records(&cfg, &records, &catalog), forward);
    records.reverse();
    assert_eq!(TournamentSummary::from_records(&cfg, &records, &catalog), forward);
}

#[test]
fn records_match_sequential_play() {
    let catalog = Catalog::default_catalog();
    let matrix = catalog.matchup_matrix();
    let cfg = config(5, Policy::Random { seed: 0 }, Policy::Minimax { depth: 2 }, 11);
    let records = tournament_records(&cfg, matrix, &catalog).unwrap();
    for (index, record) in records.iter().enumerate() {
        let attacker = cfg.attacker.reseeded(dpgame_core::analytics::seat_seed(11, index as u32, Role::Attacker));
        let state = play_game(&cfg.rules, &attacker, &cfg.defender, matrix).unwrap();
        assert_eq!(*record, GameRecord::from_state(&state, matrix, &catalog).unwrap());
        assert_eq!(record.report.final_result, final_result(&state, matrix).unwrap());
    }
}

#[test]
fn greedy_defender_outscores_random_defender() {
    let catalog = Catalog::default_catalog();
    let matrix = catalog.matchup_matrix();
    let greedy =
        tournament_summary(&config(1000, Policy::Random { seed: 0 }, Policy::Greedy, 7), matrix, &catalog).unwrap();
    let random =
        tournament_summary(&config(1000, Policy::Random { seed: 0 }, Policy::Random { seed: 0 }, 7), matrix, &catalog)
            .unwrap();
    assert!(greedy.mean_defender_score > random.mean_defender_score);
    assert!((greedy.mean_defender_score - 15.065).abs() < 1e-9, "{}", greedy.mean_defender_score);
    assert!((random.mean_defender_score - 8.209).abs() < 1e-9, "{}", random.mean_defender_score);
}

#[test]
fn zero_games_is_an_error() {
    let catalog = Catalog::default_catalog();
    let cfg = config(0, Policy::Greedy, Policy::Greedy, 1);
    assert!(tournament_summary(&cfg, catalog.matchup_matrix(), &catalog).is_err());
}
