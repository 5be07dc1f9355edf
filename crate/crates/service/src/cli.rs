//! The `dpgame` command line.

use std::fs::{self, OpenOptions};
use std::io::{BufRead, Write};
use std::net::{IpAddr, SocketAddr};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use chrono::Utc;
use clap::{Args, Parser, Subcommand, ValueEnum};
use dpgame_core::analytics::{
    awareness_and_intrusion, tournament_summary, trick_breakdown, TournamentConfig, TournamentSummary,
};
use dpgame_core::board::{GameConfig, Region};
use dpgame_core::catalog::{Catalog, Role};
use dpgame_core::strategies::{payoff_matrix, solve_matrix_game, Policy, SolveSummary};

use crate::render::{render_board, render_report, render_tricks};
use crate::session::{
    load_catalog_ref, Command, CommandRequest, CreateSession, EventBody, Hint, Seat, Session, WireEvent,
    DEFAULT_CATALOG,
};
use crate::store::{load_log, SessionStore};

#[derive(Debug, Parser)]
#[command(
    name = "dpgame",
    version,
    about = "Data-protection awareness board game: play, simulate, solve, report, serve"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Play a game in the terminal.
    Play(PlayArgs),
    /// Run a seeded tournament between two AI policies.
    Simulate(SimulateArgs),
    /// Solve the token matchup game by fictitious play.
    Solve(SolveArgs),
    /// Re-render one or more session logs.
    Report(ReportArgs),
    /// Run the HTTP session service.
    Serve(ServeArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ReportFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Args)]
pub struct PlayArgs {
    /// `human` or a policy: random[:seed], greedy, minimax[:depth].
    #[arg(long, default_value = "human")]
    pub attacker: String,
    #[arg(long, default_value = "greedy")]
    pub defender: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Catalog file, or `default`.
    #[arg(long, default_value = DEFAULT_CATALOG)]
    pub catalog: String,
    #[arg(long)]
    pub no_hints: bool,
    /// Append the session's events to this JSONL file.
    #[arg(long)]
    pub log: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, default_value_t = 100)]
    pub games: u32,
    #[arg(long, default_value = "random")]
    pub attacker: String,
    #[arg(long, default_value = "greedy")]
    pub defender: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Placements per player.
    #[arg(long, default_value_t = GameConfig::default().budget)]
    pub budget: u8,
    #[arg(long, default_value = DEFAULT_CATALOG)]
    pub catalog: String,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long, default_value_t = 100_000)]
    pub iterations: u64,
    /// Stop once exploitability is at or below this.
    #[arg(long, default_value_t = 0.0)]
    pub tolerance: f64,
    #[arg(long, default_value = DEFAULT_CATALOG)]
    pub catalog: String,
    #[arg(long, value_enum, default_value = "json")]
    pub format: Format,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Session log (JSONL). Repeat to pool several sessions.
    #[arg(long = "log", required = true)]
    pub logs: Vec<PathBuf>,
    #[arg(long, value_enum, default_value = "text")]
    pub format: ReportFormat,
}

#[derive(Debug, Args)]
pub struct ServeArgs {
    #[arg(long, env = "DPGAME_PORT", default_value_t = 8080)]
    pub port: u16,
    #[arg(long, default_value = "127.0.0.1")]
    pub host: IpAddr,
    /// Directory for session logs; sessions stay in memory without it.
    #[arg(long, env = "DPGAME_DATA_DIR")]
    pub data: Option<PathBuf>,
}

pub fn run(cli: Cli, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<()> {
    match cli.command {
        CliCommand::Play(args) => play(&args, input, out).map(|_| ()),
        CliCommand::Simulate(args) => simulate(&args, out),
        CliCommand::Solve(args) => solve(&args, out),
        CliCommand::Report(args) => report(&args, out),
        CliCommand::Serve(args) => serve(&args),
    }
}

fn catalog(reference: &str) -> Result<Arc<Catalog>> {
    Ok(load_catalog_ref(reference)?)
}

pub fn simulate(args: &SimulateArgs, out: &mut dyn Write) -> Result<()> {
    let attacker: Policy = args.attacker.parse()?;
    let defender: Policy = args.defender.parse()?;
    let rules = GameConfig { budget: args.budget, ..GameConfig::default() };
    rules.validate()?;
    let config = TournamentConfig { games: args.games, attacker, defender, seed: args.seed, rules };
    let catalog = catalog(&args.catalog)?;
    let summary = tournament_summary(&config, catalog.matchup_matrix(), &catalog)?;
    match args.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&summary)?)?,
        Format::Csv => write_summary_csv(&summary, out)?,
    }
    Ok(())
}

/// Flattens a summary into `metric,value` rows.
fn write_summary_csv(summary: &TournamentSummary, out: &mut dyn Write) -> Result<()> {
    let mut csv = csv::Writer::from_writer(out);
    csv.write_record(["metric", "value"])?;
    let mut row = |metric: String, value: String| csv.write_record([metric, value]);
    row("games".into(), summary.games.to_string())?;
    row("seed".into(), summary.seed.to_string())?;
    row("attacker.policy".into(), summary.attacker_policy.clone())?;
    row("defender.policy".into(), summary.defender_policy.clone())?;
    for (side, record) in [("attacker", &summary.attacker), ("defender", &summary.defender)] {
        row(format!("{side}.wins"), record.wins.to_string())?;
        row(format!("{side}.draws"), record.draws.to_string())?;
        row(format!("{side}.losses"), record.losses.to_string())?;
    }
    row("attacker.mean_score".into(), summary.mean_attacker_score.to_string())?;
    row("defender.mean_score".into(), summary.mean_defender_score.to_string())?;
    row("pooled_awareness".into(), summary.pooled_awareness.to_string())?;
    row("pooled_intrusion".into(), summary.pooled_intrusion.to_string())?;
    row("total_placements".into(), summary.total_placements.to_string())?;
    for token in &summary.tokens {
        row(format!("token.{}.played", token.token), token.played.to_string())?;
        row(format!("token.{}.judged", token.token), token.judged.to_string())?;
        row(format!("token.{}.wins", token.token), token.wins.to_string())?;
        row(format!("token.{}.win_rate", token.token), token.win_rate.to_string())?;
    }
    for (side, rows) in [("attacker", &summary.tricks.attacker), ("defender", &summary.tricks.defender)] {
        for trick in rows {
            row(format!("trick.{side}.{}.played", trick.trick), trick.played.to_string())?;
            row(format!("trick.{side}.{}.won", trick.trick), trick.won.to_string())?;
            row(format!("trick.{side}.{}.win_rate", trick.trick), trick.win_rate.to_string())?;
        }
    }
    csv.flush()?;
    Ok(())
}

pub fn solve(args: &SolveArgs, out: &mut dyn Write) -> Result<()> {
    let catalog = catalog(&args.catalog)?;
    let payoff = payoff_matrix(catalog.matchup_matrix());
    let report = solve_matrix_game(&payoff, args.iterations, args.tolerance)?;
    let summary = SolveSummary::from_report(&report);
    match args.format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&summary)?)?,
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(out);
            csv.write_record(["role", "token", "probability"])?;
            for (role, dist) in
                [(Role::Attacker, &summary.attacker_strategy), (Role::Defender, &summary.defender_strategy)]
            {
                for (token, p) in dist.to_csv_rows() {
                    csv.write_record([role.as_str().to_string(), token, p.to_string()])?;
                }
            }
            csv.flush()?;
        }
    }
    Ok(())
}

fn read_session(path: &Path) -> Result<Session> {
    if !path.exists() {
        bail!("file not found: {}", path.display());
    }
    load_log(path).with_context(|| format!("cannot replay {}", path.display()))
}

pub fn report(args: &ReportArgs, out: &mut dyn Write) -> Result<()> {
    let sessions = args.logs.iter().map(|p| read_session(p)).collect::<Result<Vec<_>>>()?;
    let reports: Vec<_> = sessions.iter().map(Session::report).collect();
    match args.format {
        ReportFormat::Json => {
            let doc =
                if reports.len() == 1 { serde_json::to_value(&reports[0])? } else { serde_json::to_value(&reports)? };
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
        ReportFormat::Csv => {
            let mut csv = csv::Writer::from_writer(out);
            csv.write_record([
                "session",
                "iteration",
                "attacker",
                "defender",
                "a_points",
                "d_points",
                "winner",
                "comment",
            ])?;
            for (session, report) in sessions.iter().zip(&reports) {
                for v in &report.iterations {
                    csv.write_record([
                        session.id().to_string(),
                        v.iteration.to_string(),
                        v.attacker_token.to_string(),
                        v.defender_token.to_string(),
                        v.a_points.to_string(),
                        v.d_points.to_string(),
                        v.verdict.winner.map_or("unjudged".to_string(), |r| r.to_string()),
                        v.verdict.comment.clone(),
                    ])?;
                }
            }
            csv.flush()?;
        }
        ReportFormat::Text => {
            for (session, report) in sessions.iter().zip(&reports) {
                writeln!(out, "Session {} ({:?})", session.id(), session.status())?;
                writeln!(out, "{}", render_report(report, session.catalog()))?;
            }
            if reports.len() > 1 {
                let a: u32 = reports.iter().map(|r| r.final_result.attacker_total).sum();
                let d: u32 = reports.iter().map(|r| r.final_result.defender_total).sum();
                let (aware, intrude) = awareness_and_intrusion(a, d);
                let catalog = sessions[0].catalog();
                writeln!(out, "Pooled over {} sessions: attacker {a}  defender {d}", reports.len())?;
                writeln!(out, "Awareness {aware:.1}%  Intrusion {intrude:.1}%")?;
                let tricks = trick_breakdown(&reports, catalog);
                write!(out, "{}", render_tricks("Attacker tricks", &tricks.attacker))?;
                write!(out, "{}", render_tricks("Defender tricks", &tricks.defender))?;
            }
        }
    }
    Ok(())
}

fn serve(args: &ServeArgs) -> Result<()> {
    let store = match &args.data {
        Some(dir) => SessionStore::open(dir).with_context(|| format!("cannot open data dir {}", dir.display()))?,
        None => SessionStore::in_memory(),
    };
    let addr = SocketAddr::new(args.host, args.port);
    let runtime = tokio::runtime::Runtime::new()?;
    runtime.block_on(crate::http::serve(Arc::new(store), addr))?;
    Ok(())
}

const PLAY_HELP: &str = "\
Commands:
  <token> <region> [angle]   place a token, e.g. `Email inner 1`, `D5 center`, `Phone middle`
  hint                       suggest a move
  board                      show the board
  resign                     give up the game
  quit                       stop without finishing
  help                       this text";

/// Parses `<token words...> <region> [angle]`.
pub fn parse_placement(line: &str) -> Option<Command> {
    let mut words: Vec<&str> = line.split_whitespace().collect();
    let opening_angle = match words.last()?.parse::<u8>() {
        Ok(angle) => {
            words.pop();
            Some(angle)
        }
        Err(_) => None,
    };
    let region: Region = words.pop()?.parse().ok()?;
    if words.is_empty() {
        return None;
    }
    Some(Command::PlaceToken { token: words.join(" "), region, opening_angle })
}

fn describe(session: &Session, event: &WireEvent) -> Option<String> {
    let catalog = session.catalog();
    match &event.body {
        EventBody::GameCreated(_) => None,
        EventBody::MovePlaced(m) => Some(format!(
            "{} plays {} {} at {} (position {})",
            m.player,
            m.action.token,
            catalog.label(m.action.token),
            m.position.region(),
            m.position
        )),
        EventBody::VerdictIssued(v) => Some(format!(
            "judge, iteration {}: {} {} vs {} {}: {} ({})",
            v.iteration,
            v.attacker_token,
            catalog.label(v.attacker_token),
            v.defender_token,
            catalog.label(v.defender_token),
            v.verdict.winner.map_or("unjudged".to_string(), |w| format!("{w} wins")),
            v.verdict.comment
        )),
        EventBody::GameEnded(end) => Some(format!(
            "game over ({:?}): attacker {} defender {}, {}",
            end.reason,
            end.final_result.attacker_total,
            end.final_result.defender_total,
            end.winner.map_or("draw".to_string(), |w| format!("{w} wins"))
        )),
    }
}

fn describe_hint(session: &Session, hint: &Hint) -> String {
    let catalog = session.catalog();
    let mut text = format!(
        "hint: {} {} at {} (position {})",
        hint.action.token,
        hint.label,
        hint.position.region(),
        hint.position
    );
    if let Some(target) = &hint.target {
        if target.sequential_bonus {
            text.push_str(&format!(", completing a sequential pair with {} at {}", target.token, target.position));
        } else {
            text.push_str(&format!(", facing {} {} at {}", target.token, catalog.label(target.token), target.position));
            if let Some(verdict) = &target.verdict {
                text.push_str(&format!(": {}", verdict.comment));
            }
        }
    }
    text.push_str(&format!(", worth {} point(s)", hint.points));
    text
}

fn append_log(path: Option<&Path>, events: &[WireEvent]) -> Result<()> {
    let Some(path) = path else { return Ok(()) };
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    for event in events {
        writeln!(file, "{}", event.to_line())?;
    }
    Ok(())
}

fn legal_prompt(session: &Session) -> String {
    let view = session.view();
    let Some(legal) = view.legal else { return String::new() };
    let tokens: Vec<String> = legal.tokens.iter().map(|t| format!("{t} {}", session.catalog().label(*t))).collect();
    let regions: Vec<String> = legal
        .regions
        .iter()
        .map(|r| match r.next_position {
            Some(p) => format!("{} (next {p})", r.region),
            None => format!("{} (open at angle {:?})", r.region, r.opening_angles),
        })
        .collect();
    format!("tokens: {}\nregions: {}\n", tokens.join(", "), regions.join(", "))
}

/// Runs a terminal game. Returns the session as it stands when play stops.
pub fn play(args: &PlayArgs, input: &mut dyn BufRead, out: &mut dyn Write) -> Result<Session> {
    let request = CreateSession {
        catalog: Some(args.catalog.clone()),
        attacker: Some(args.attacker.clone()),
        defender: Some(args.defender.clone()),
        seed: Some(args.seed),
        hints: Some(!args.no_hints),
        rules: None,
    };
    let config = request.resolve()?;
    if let Some(path) = &args.log {
        if path.exists() && fs::metadata(path)?.len() > 0 {
            bail!("log file {} already exists", path.display());
        }
    }
    let mut session = Session::create(config, uuid::Uuid::new_v4().to_string(), Utc::now())?;
    append_log(args.log.as_deref(), session.events())?;
    writeln!(out, "{PLAY_HELP}\n")?;
    let mut line = String::new();
    while session.ended().is_none() {
        let role = session.state().to_move();
        let request: CommandRequest = match session.config().seat(role) {
            Seat::Ai(_) => Command::RequestAiMove.into(),
            Seat::Human => {
                write!(
                    out,
                    "\n{}{}{role}> ",
                    render_board(session.state(), session.catalog()),
                    legal_prompt(&session)
                )?;
                out.flush()?;
                line.clear();
                if input.read_line(&mut line)? == 0 {
                    writeln!(out)?;
                    break;
                }
                let text = line.trim();
                match text.to_ascii_lowercase().as_str() {
                    "" => continue,
                    "quit" | "exit" | "q" => break,
                    "help" | "?" => {
                        writeln!(out, "{PLAY_HELP}")?;
                        continue;
                    }
                    "board" => {
                        write!(out, "{}", render_board(session.state(), session.catalog()))?;
                        continue;
                    }
                    "hint" => {
                        match session.hint() {
                            Ok(hint) => writeln!(out, "{}", describe_hint(&session, &hint))?,
                            Err(err) => writeln!(out, "error: {err}")?,
                        }
                        continue;
                    }
                    "resign" => Command::Resign { role: Some(role) }.into(),
                    _ => match parse_placement(text) {
                        Some(command) => command.into(),
                        None => {
                            writeln!(out, "error: expected `<token> <region> [angle]`, try `help`")?;
                            continue;
                        }
                    },
                }
            }
        };
        match session.execute(&request) {
            Ok(events) => {
                append_log(args.log.as_deref(), &events)?;
                for event in &events {
                    if let Some(text) = describe(&session, event) {
                        writeln!(out, "{text}")?;
                    }
                }
            }
            Err(err) => writeln!(out, "error: {err}")?,
        }
    }
    if session.ended().is_some() {
        writeln!(out, "\n{}", render_board(session.state(), session.catalog()))?;
        writeln!(out, "{}", render_report(&session.report(), session.catalog()))?;
    }
    Ok(session)
}
