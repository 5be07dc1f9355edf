//! Plain-text renderings for the terminal.

use std::fmt::Write;

use dpgame_core::analytics::{trick_breakdown, GameReport, TrickRow};
use dpgame_core::board::{GameState, Position, Ring, CENTER};
use dpgame_core::catalog::{Catalog, Role};
use dpgame_core::judge::{IterationVerdict, ScoreKind};

fn judge_column(v: &IterationVerdict) -> &'static str {
    match v.verdict.winner {
        Some(Role::Attacker) => "Attacker best move",
        Some(Role::Defender) => "Defender best move",
        None => "Unjudged",
    }
}

fn kind_label(kind: ScoreKind) -> &'static str {
    match kind {
        ScoreKind::MixedMatchup => "matchup",
        ScoreKind::SequentialBonus => "sequential",
        ScoreKind::Incomplete => "incomplete",
        ScoreKind::UnjudgedMatchup => "unjudged",
    }
}

/// Iteration-by-iteration scoring table, then the pair
/// evaluation, totals and the trick breakdown.
pub fn render_report(report: &GameReport, catalog: &Catalog) -> String {
    let mut out = String::new();
    let name = |id| format!("{id} {}", catalog.label(id));
    let _ =
        writeln!(out, "{:<9} {:<20} {:<24} {:>2} {:>2}  {:<19} Comments", "Iteration", "A", "D", "A%", "D%", "Judge");
    for v in &report.iterations {
        let _ = writeln!(
            out,
            "{:<9} {:<20} {:<24} {:>2} {:>2}  {:<19} {}",
            v.iteration,
            name(v.attacker_token),
            name(v.defender_token),
            v.a_points,
            v.d_points,
            judge_column(v),
            v.verdict.comment
        );
    }
    if report.iterations.is_empty() {
        let _ = writeln!(out, "(no completed iterations)");
    }

    let _ = writeln!(out, "\nRound  Pair      Kind        A  D");
    for e in &report.final_result.events {
        let _ = writeln!(
            out,
            "{:<6} {:>2}-{:<6} {:<11} {}  {}",
            e.pair.round,
            e.pair.a.index(),
            e.pair.b.index(),
            kind_label(e.kind),
            e.attacker_points,
            e.defender_points
        );
    }
    let result = &report.final_result;
    let _ = writeln!(
        out,
        "\nAttacker {}  Defender {}  Outcome {}",
        result.attacker_total,
        result.defender_total,
        serde_json::to_value(result.outcome).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default()
    );
    let _ = writeln!(
        out,
        "Awareness {:.1}%  Intrusion {:.1}%  Unjudged pairs {}",
        report.awareness_score, report.intrusion_score, report.unjudged_count
    );

    let tricks = trick_breakdown(std::slice::from_ref(report), catalog);
    out.push_str(&render_tricks("Attacker tricks", &tricks.attacker));
    out.push_str(&render_tricks("Defender tricks", &tricks.defender));
    out
}

pub fn render_tricks(title: &str, rows: &[TrickRow]) -> String {
    let mut out = format!("\n{title}\n");
    if rows.is_empty() {
        out.push_str("  (none judged)\n");
    }
    for row in rows {
        let _ = writeln!(
            out,
            "  {:<24} played {:>3}  won {:>3}  {:>5.1}%",
            row.trick.name(),
            row.played,
            row.won,
            100.0 * row.win_rate
        );
    }
    out
}

fn cell(state: &GameState, catalog: &Catalog, position: Position) -> String {
    match state.occupant(position) {
        Some((_, token)) => format!("{token} {}", catalog.label(token)),
        None => "·".to_string(),
    }
}

/// The three rings and the center, one line each.
pub fn render_board(state: &GameState, catalog: &Catalog) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "center  25 [{}]", cell(state, catalog, CENTER));
    for ring in Ring::ALL {
        let cursor = state.ring_cursor(ring).map_or("-".to_string(), |a| a.to_string());
        let _ = write!(out, "{:<7} cursor {cursor}:", ring.region().as_str());
        for angle in 1..=8 {
            let position = Position::on_ring(ring, angle);
            let _ = write!(out, " {}[{}]", position.index(), cell(state, catalog, position));
        }
        out.push('\n');
    }
    out
}
