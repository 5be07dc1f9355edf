use dpgame_core::board::{
    apply_action, board_topology, legal_actions, new_game, replay_log_lines, Action, GameConfig, GameState, Position,
    Region, Ring, TerminalReason, EVALUATION_PAIRS,
};
use dpgame_core::catalog::{Role, TokenId};
use dpgame_testkit::SplitMix64;

fn random_playout(rng: &mut SplitMix64, config: &GameConfig) -> (GameState, Vec<GameState>) {
    let mut state = new_game(config).unwrap();
    let mut history = vec![state.clone()];
    while !state.is_terminal() {
        let actions = legal_actions(&state);
        assert!(!actions.is_empty(), "non-terminal state without legal actions");
        let action = actions[rng.below(actions.len())];
        state = apply_action(&state, &action).unwrap();
        history.push(state.clone());
    }
    (state, history)
}

fn check_invariants(state: &GameState) {
    let a = state.placements(Role::Attacker);
    let d = state.placements(Role::Defender);
    assert!(a <= 13 && d <= 13);
    assert!(a == d || a == d + 1, "placements {a} vs {d}");
    assert_eq!(state.occupied_count(), usize::from(a + d));
    assert_eq!(state.log().len(), usize::from(a + d));
    for role in Role::ALL {
        for token in TokenId::all(role) {
            assert!(state.usage(token) <= 2);
        }
    }
    for (ply, entry) in state.log().iter().enumerate() {
        assert_eq!(entry.ply as usize, ply);
        let expected = if ply % 2 == 0 { Role::Attacker } else { Role::Defender };
        assert_eq!(entry.player, expected);
        assert_eq!(state.occupant(entry.position), Some((entry.player, entry.action.token)));
    }
    // Each ring fills a contiguous clockwise arc from its opening angle.
    for ring in Ring::ALL {
        let angles: Vec<u8> = state
            .log()
            .iter()
            .filter(|e| e.position.ring() == Some(ring))
            .map(|e| e.position.angle().unwrap())
            .collect();
        if let Some(&open) = angles.first() {
            for (k, &angle) in angles.iter().enumerate() {
                assert_eq!((angle + 8 - open) % 8, k as u8, "ring {ring:?} angles {angles:?}");
            }
            assert_eq!(state.ring_cursor(ring), angles.last().copied());
        } else {
            assert_eq!(state.ring_cursor(ring), None);
        }
    }
}

#[test]
fn ten_thousand_playouts_respect_the_rules() {
    let config = GameConfig::default();
    let mut rng = SplitMix64::new(2024);
    for _ in 0..10_000 {
        let (last, history) = random_playout(&mut rng, &config);
        assert!(last.ply() <= 25);
        for state in &history {
            check_invariants(state);
        }
        let lines = last.log_lines();
        let replayed = replay_log_lines(&config, lines.iter().map(String::as_str)).unwrap();
        assert_eq!(replayed, last);
        let mut again = new_game(&config).unwrap();
        for entry in last.log() {
            again = apply_action(&again, &entry.action).unwrap();
        }
        assert_eq!(again, last);
    }
}

#[test]
fn default_games_end_when_the_attacker_places_thirteen() {
    let config = GameConfig::default();
    let mut rng = SplitMix64::new(5);
    for _ in 0..500 {
        let (last, _) = random_playout(&mut rng, &config);
        assert_eq!(last.terminal_reason(), Some(TerminalReason::BudgetsExhausted));
        assert_eq!(last.ply(), 25);
        assert_eq!(last.placements(Role::Attacker), 13);
        assert_eq!(last.placements(Role::Defender), 12);
    }
}

fn candidate_actions() -> Vec<Action> {
    let mut out = Vec::new();
    for role in Role::ALL {
        for token in TokenId::all(role) {
            for region in Region::ALL {
                out.push(Action::new(token, region, None));
                for angle in 0..=9 {
                    out.push(Action::new(token, region, Some(angle)));
                }
            }
        }
    }
    out
}

#[test]
fn legal_actions_are_sound_and_complete() {
    let config = GameConfig::default();
    let candidates = candidate_actions();
    let mut rng = SplitMix64::new(77);
    let mut checked = 0;
    for _ in 0..150 {
        let (_, history) = random_playout(&mut rng, &config);
        for state in history.iter().step_by(3) {
            let legal = legal_actions(state);
            for action in &candidates {
                let ok = apply_action(state, action).is_ok();
                assert_eq!(ok, legal.contains(action), "{action} on ply {}", state.ply());
            }
            checked += 1;
        }
    }
    assert!(checked > 1000);
}

#[test]
fn terminal_states_list_no_actions() {
    let (last, _) = random_playout(&mut SplitMix64::new(1), &GameConfig::default());
    assert!(legal_actions(&last).is_empty());
    let err = apply_action(&last, &Action::center(TokenId::defender(1))).unwrap_err();
    assert_eq!(err.to_string(), "game is over");
}

#[test]
fn larger_budget_ends_on_a_full_board() {
    let config = GameConfig { budget: 15, token_limit: 2 };
    let mut rng = SplitMix64::new(9);
    for _ in 0..200 {
        let (last, _) = random_playout(&mut rng, &config);
        assert_eq!(last.terminal_reason(), Some(TerminalReason::BoardFull));
        assert_eq!(last.occupied_count(), 25);
    }
}

#[test]
fn topology_matches_the_published_rounds() {
    let (positions, pairs) = board_topology();
    assert_eq!(positions.len(), 25);
    assert_eq!(pairs.len(), 16);
    let listed = [
        [(25, 1), (9, 17), (25, 5), (13, 21)],
        [(25, 3), (11, 19), (25, 7), (15, 23)],
        [(25, 2), (10, 18), (25, 6), (14, 22)],
        [(25, 8), (16, 24), (25, 4), (12, 20)],
    ];
    for (k, pair) in pairs.iter().enumerate() {
        let (round, order) = (k / 4, k % 4);
        assert_eq!((pair.a.index(), pair.b.index()), listed[round][order]);
        assert_eq!(usize::from(pair.round), round + 1);
        assert_eq!(usize::from(pair.order_in_round), order + 1);
    }
    for p in 1..=25u8 {
        let n = EVALUATION_PAIRS.iter().filter(|q| q.contains(Position::new(p).unwrap())).count();
        assert_eq!(n, if p == 25 { 8 } else { 1 }, "position {p}");
    }
    for i in 1..=8u8 {
        assert!(EVALUATION_PAIRS.iter().any(|q| q.a.index() == 8 + i && q.b.index() == 16 + i));
    }
}
