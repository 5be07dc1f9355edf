//! Event-sourced game sessions.
//!
//! A session is nothing but its event log. The live [`Session`] keeps a
//! derived `GameState` for speed, and that state is rebuilt from the log by
//! [`session_replay`] with every follow-up event re-derived and compared.

use std::collections::VecDeque;
use std::fmt;
use std::path::Path;
use std::str::FromStr;
use std::sync::{Arc, OnceLock};

use chrono::{DateTime, Utc};
use dpgame_core::analytics::{report_position, seat_seed, GameReport};
use dpgame_core::board::{new_game, Action, GameConfig, GameState, MoveError, Position, Region, Ring};
use dpgame_core::board::{TerminalReason, EVALUATION_PAIRS};
use dpgame_core::catalog::{load_catalog, Catalog, CatalogError, Role, TokenId, TrickTag};
use dpgame_core::judge::{
    evaluate_pair, iteration_log, judge_matchup, score_position, FinalResult, IterationVerdict, Verdict,
};
use dpgame_core::strategies::{choose_action, Policy, PolicyError};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_CATALOG: &str = "default";

#[derive(Debug, Error)]
pub enum SessionError {
    #[error("unknown session {0}")]
    UnknownSession(String),
    #[error("unknown policy {0:?}")]
    UnknownPolicy(String),
    #[error("invalid session config: {0}")]
    BadConfig(String),
    #[error("catalog {reference}: {source}")]
    Catalog { reference: String, source: CatalogError },
    #[error("{0}")]
    Illegal(#[from] MoveError),
    #[error("out of turn: {to_move} to move, command is for {requested}")]
    OutOfTurn { to_move: Role, requested: Role },
    #[error("{0} seat is AI-controlled; send RequestAiMove")]
    AiSeat(Role),
    #[error("{0} seat is played by a human")]
    HumanSeat(Role),
    #[error("session is finished")]
    Finished,
    #[error("stale command: last sequence is {actual}, client saw {expected}")]
    Conflict { expected: u64, actual: u64 },
    #[error("hints are disabled for this session")]
    HintsDisabled,
    #[error(transparent)]
    Replay(#[from] ReplayError),
    #[error("storage: {0}")]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReplayError {
    #[error("empty event log")]
    Empty,
    #[error("sequence gap at {0}")]
    SequenceGap(u64),
    #[error("malformed event on line {line}: {message}")]
    Malformed { line: usize, message: String },
    #[error("replay divergence at sequence {sequence}: {detail}")]
    Divergence { sequence: u64, detail: String },
}

fn diverge(sequence: u64, detail: impl Into<String>) -> ReplayError {
    ReplayError::Divergence { sequence, detail: detail.into() }
}

/// Who plays a seat.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Seat {
    Human,
    Ai(Policy),
}

impl Seat {
    pub fn policy(self) -> Option<Policy> {
        match self {
            Seat::Human => None,
            Seat::Ai(policy) => Some(policy),
        }
    }
}

impl fmt::Display for Seat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Seat::Human => f.write_str("human"),
            Seat::Ai(policy) => write!(f, "{policy}"),
        }
    }
}

impl FromStr for Seat {
    type Err = SessionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.trim().eq_ignore_ascii_case("human") {
            return Ok(Seat::Human);
        }
        s.parse().map(Seat::Ai).map_err(|_: PolicyError| SessionError::UnknownPolicy(s.to_string()))
    }
}

impl Serialize for Seat {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Seat {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(deserializer)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}

/// Settings fixed at creation and recorded in the `GameCreated` event.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SessionConfig {
    pub catalog: String,
    pub attacker: Seat,
    pub defender: Seat,
    pub seed: u64,
    pub hints: bool,
    pub rules: GameConfig,
}

impl SessionConfig {
    pub fn seat(&self, role: Role) -> Seat {
        match role {
            Role::Attacker => self.attacker,
            Role::Defender => self.defender,
        }
    }
}

/// Body of a create request. Seats are `"human"` or a policy name; a bare
/// `"random"` seat is seeded from `seed`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CreateSession {
    #[serde(default)]
    pub catalog: Option<String>,
    #[serde(default)]
    pub attacker: Option<String>,
    #[serde(default)]
    pub defender: Option<String>,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub hints: Option<bool>,
    #[serde(default)]
    pub rules: Option<GameConfig>,
}

impl CreateSession {
    pub fn resolve(&self) -> Result<SessionConfig, SessionError> {
        let seed = self.seed.unwrap_or(0);
        let seat = |raw: Option<&str>, fallback: &str, role: Role| -> Result<Seat, SessionError> {
            let raw = raw.unwrap_or(fallback);
            let parsed: Seat = raw.parse()?;
            Ok(match parsed {
                Seat::Ai(policy @ Policy::Random { .. }) if !raw.contains(':') => {
                    Seat::Ai(policy.reseeded(seat_seed(seed, 0, role)))
                }
                other => other,
            })
        };
        let rules = self.rules.unwrap_or_default();
        rules.validate().map_err(|e| SessionError::BadConfig(e.to_string()))?;
        let config = SessionConfig {
            catalog: self.catalog.clone().unwrap_or_else(|| DEFAULT_CATALOG.to_string()),
            attacker: seat(self.attacker.as_deref(), "greedy", Role::Attacker)?,
            defender: seat(self.defender.as_deref(), "human", Role::Defender)?,
            seed,
            hints: self.hints.unwrap_or(true),
            rules,
        };
        load_catalog_ref(&config.catalog)?;
        Ok(config)
    }
}

/// Loads `"default"` or a catalog file path.
pub fn load_catalog_ref(reference: &str) -> Result<Arc<Catalog>, SessionError> {
    static DEFAULT: OnceLock<Arc<Catalog>> = OnceLock::new();
    if reference == DEFAULT_CATALOG {
        return Ok(DEFAULT.get_or_init(|| Arc::new(Catalog::default_catalog())).clone());
    }
    let text = std::fs::read_to_string(Path::new(reference))
        .map_err(|e| SessionError::BadConfig(format!("catalog {reference}: {e}")))?;
    load_catalog(&text)
        .map(Arc::new)
        .map_err(|source| SessionError::Catalog { reference: reference.to_string(), source })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SessionStatus {
    Open,
    Finished,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EndReason {
    BudgetsExhausted,
    BoardFull,
    NoLegalMove,
    Resigned,
}

impl From<TerminalReason> for EndReason {
    fn from(reason: TerminalReason) -> Self {
        match reason {
            TerminalReason::BudgetsExhausted => EndReason::BudgetsExhausted,
            TerminalReason::BoardFull => EndReason::BoardFull,
            TerminalReason::NoLegalMove => EndReason::NoLegalMove,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameCreated {
    pub session_id: String,
    pub created_at: DateTime<Utc>,
    pub config: SessionConfig,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MovePlaced {
    pub ply: u32,
    pub player: Role,
    pub action: Action,
    pub position: Position,
    /// Set when the move came from the seat's AI policy.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub policy: Option<Policy>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GameEnded {
    pub reason: EndReason,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub resigned_by: Option<Role>,
    /// Winner of the game; on resignation the opponent of the resigning seat.
    pub winner: Option<Role>,
    #[serde(rename = "final")]
    pub final_result: FinalResult,
    pub report: GameReport,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "payload")]
pub enum EventBody {
    GameCreated(GameCreated),
    MovePlaced(MovePlaced),
    VerdictIssued(IterationVerdict),
    GameEnded(GameEnded),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WireEvent {
    pub sequence: u64,
    #[serde(flatten)]
    pub body: EventBody,
}

impl WireEvent {
    pub fn kind(&self) -> &'static str {
        match self.body {
            EventBody::GameCreated(_) => "GameCreated",
            EventBody::MovePlaced(_) => "MovePlaced",
            EventBody::VerdictIssued(_) => "VerdictIssued",
            EventBody::GameEnded(_) => "GameEnded",
        }
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("events serialize")
    }
}

/// Parses a JSON-lines event log. Blank lines are skipped.
pub fn parse_event_log(text: &str) -> Result<Vec<WireEvent>, ReplayError> {
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(i, line)| {
            serde_json::from_str(line).map_err(|e| ReplayError::Malformed { line: i + 1, message: e.to_string() })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum Command {
    /// `token` is an id such as `"D5"` or a label or alias of the mover's side.
    PlaceToken {
        token: String,
        region: Region,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        opening_angle: Option<u8>,
    },
    RequestAiMove,
    /// Ends the game in the opponent's favour. Defaults to the seat to move.
    Resign {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        role: Option<Role>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommandRequest {
    #[serde(flatten)]
    pub command: Command,
    /// Optimistic lock: the last sequence number the client has seen.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub last_seen_sequence: Option<u64>,
}

impl From<Command> for CommandRequest {
    fn from(command: Command) -> Self {
        Self { command, last_seen_sequence: None }
    }
}

/// A live session: the event log plus state derived from it.
#[derive(Debug, Clone)]
pub struct Session {
    id: String,
    created_at: DateTime<Utc>,
    config: SessionConfig,
    catalog: Arc<Catalog>,
    events: Vec<WireEvent>,
    state: GameState,
    last_verdict: Option<IterationVerdict>,
    ended: Option<GameEnded>,
    pending: VecDeque<EventBody>,
}

impl Session {
    pub fn create(config: SessionConfig, id: String, created_at: DateTime<Utc>) -> Result<Session, SessionError> {
        let created =
            WireEvent { sequence: 0, body: EventBody::GameCreated(GameCreated { session_id: id, created_at, config }) };
        Ok(Session::from_first(&created)?)
    }

    fn from_first(event: &WireEvent) -> Result<Session, ReplayError> {
        if event.sequence != 0 {
            return Err(ReplayError::SequenceGap(0));
        }
        let EventBody::GameCreated(created) = &event.body else {
            return Err(diverge(0, "first event must be GameCreated"));
        };
        let catalog = load_catalog_ref(&created.config.catalog).map_err(|e| diverge(0, e.to_string()))?;
        let state = new_game(&created.config.rules).map_err(|e| diverge(0, e.to_string()))?;
        let mut session = Session {
            id: created.session_id.clone(),
            created_at: created.created_at,
            config: created.config.clone(),
            catalog,
            events: vec![event.clone()],
            state,
            last_verdict: None,
            ended: None,
            pending: VecDeque::new(),
        };
        session.pending = session.follow_ups().into();
        Ok(session)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn created_at(&self) -> DateTime<Utc> {
        self.created_at
    }

    pub fn config(&self) -> &SessionConfig {
        &self.config
    }

    pub fn catalog(&self) -> &Catalog {
        &self.catalog
    }

    pub fn events(&self) -> &[WireEvent] {
        &self.events
    }

    pub fn state(&self) -> &GameState {
        &self.state
    }

    pub fn last_verdict(&self) -> Option<&IterationVerdict> {
        self.last_verdict.as_ref()
    }

    pub fn ended(&self) -> Option<&GameEnded> {
        self.ended.as_ref()
    }

    pub fn status(&self) -> SessionStatus {
        if self.ended.is_some() {
            SessionStatus::Finished
        } else {
            SessionStatus::Open
        }
    }

    pub fn last_sequence(&self) -> u64 {
        self.events.len() as u64 - 1
    }

    /// The report of the current position, final or not.
    pub fn report(&self) -> GameReport {
        match &self.ended {
            Some(ended) => ended.report.clone(),
            None => report_position(&self.state, self.catalog.matchup_matrix(), &self.catalog),
        }
    }

    /// Events a just-applied move implies: the verdict of a completed
    /// iteration when it is judged, then the end of the game.
    fn follow_ups(&self) -> Vec<EventBody> {
        let mut out = Vec::new();
        let matrix = self.catalog.matchup_matrix();
        let plies = self.state.log().len();
        if plies > 0 && plies.is_multiple_of(2) {
            if let Some(verdict) = iteration_log(&self.state, matrix).pop() {
                if verdict.verdict.is_judged() {
                    out.push(EventBody::VerdictIssued(verdict));
                }
            }
        }
        if let Some(reason) = self.state.terminal_reason() {
            let final_result = score_position(&self.state, matrix);
            out.push(EventBody::GameEnded(GameEnded {
                reason: reason.into(),
                resigned_by: None,
                winner: final_result.outcome.winner(),
                report: report_position(&self.state, matrix, &self.catalog),
                final_result,
            }));
        }
        out
    }

    fn resignation(&self, role: Role) -> EventBody {
        let matrix = self.catalog.matchup_matrix();
        EventBody::GameEnded(GameEnded {
            reason: EndReason::Resigned,
            resigned_by: Some(role),
            winner: Some(role.opponent()),
            final_result: score_position(&self.state, matrix),
            report: report_position(&self.state, matrix, &self.catalog),
        })
    }

    /// Folds one event into the session, checking it against what the log
    /// so far implies.
    pub fn apply_event(&mut self, event: &WireEvent) -> Result<(), ReplayError> {
        let sequence = self.events.len() as u64;
        if event.sequence != sequence {
            return Err(ReplayError::SequenceGap(sequence));
        }
        if self.ended.is_some() && self.pending.is_empty() {
            return Err(diverge(sequence, "event after GameEnded"));
        }
        if let Some(expected) = self.pending.pop_front() {
            if expected != event.body {
                let found = serde_json::to_string(&event.body).unwrap_or_default();
                let wanted = serde_json::to_string(&expected).unwrap_or_default();
                return Err(diverge(sequence, format!("expected {wanted}, found {found}")));
            }
        } else {
            match &event.body {
                EventBody::MovePlaced(placed) => self.check_move(sequence, placed)?,
                EventBody::GameEnded(ended) => {
                    let Some(role) = ended.resigned_by.filter(|_| ended.reason == EndReason::Resigned) else {
                        return Err(diverge(sequence, "GameEnded before the game is over"));
                    };
                    if self.resignation(role) != event.body {
                        return Err(diverge(sequence, "resignation does not match the board"));
                    }
                }
                other => {
                    let kind = WireEvent { sequence, body: other.clone() }.kind();
                    return Err(diverge(sequence, format!("unexpected {kind}")));
                }
            }
        }
        match &event.body {
            EventBody::MovePlaced(placed) => {
                self.state.apply_in_place(&placed.action).map_err(|e| diverge(sequence, e.to_string()))?;
                self.pending = self.follow_ups().into();
            }
            EventBody::VerdictIssued(verdict) => self.last_verdict = Some(verdict.clone()),
            EventBody::GameEnded(ended) => self.ended = Some(ended.clone()),
            EventBody::GameCreated(_) => return Err(diverge(sequence, "second GameCreated")),
        }
        self.events.push(event.clone());
        Ok(())
    }

    fn check_move(&self, sequence: u64, placed: &MovePlaced) -> Result<(), ReplayError> {
        let state = &self.state;
        if placed.ply != state.ply() || placed.player != state.to_move() {
            return Err(diverge(sequence, format!("ply {} by {} out of order", placed.ply, placed.player)));
        }
        let position = state.resolve(&placed.action).map_err(|e| diverge(sequence, e.to_string()))?;
        if position != placed.position {
            return Err(diverge(sequence, format!("move resolves to {position}, log says {}", placed.position)));
        }
        let seat = self.config.seat(placed.player);
        if placed.policy != seat.policy() {
            return Err(diverge(sequence, format!("move source does not match the {} seat", placed.player)));
        }
        if let Some(policy) = placed.policy {
            let chosen = choose_action(&policy, state, self.catalog.matchup_matrix())
                .map_err(|e| diverge(sequence, e.to_string()))?;
            if chosen != placed.action {
                return Err(diverge(sequence, format!("{policy} now chooses {chosen}, log says {}", placed.action)));
            }
        }
        Ok(())
    }

    /// The events `request` would append, without changing the session.
    pub fn plan(&self, request: &CommandRequest) -> Result<Vec<EventBody>, SessionError> {
        if let Some(seen) = request.last_seen_sequence {
            if seen != self.last_sequence() {
                return Err(SessionError::Conflict { expected: seen, actual: self.last_sequence() });
            }
        }
        if self.ended.is_some() {
            return Err(SessionError::Finished);
        }
        let to_move = self.state.to_move();
        let placed = match &request.command {
            Command::Resign { role } => return Ok(vec![self.resignation(role.unwrap_or(to_move))]),
            Command::PlaceToken { token, region, opening_angle } => {
                let token = self.parse_token(token, to_move)?;
                if token.role() != to_move {
                    return Err(SessionError::OutOfTurn { to_move, requested: token.role() });
                }
                if self.config.seat(to_move) != Seat::Human {
                    return Err(SessionError::AiSeat(to_move));
                }
                (Action::new(token, *region, *opening_angle), None)
            }
            Command::RequestAiMove => {
                let Seat::Ai(policy) = self.config.seat(to_move) else {
                    return Err(SessionError::HumanSeat(to_move));
                };
                let action = choose_action(&policy, &self.state, self.catalog.matchup_matrix())
                    .map_err(|e| SessionError::BadConfig(e.to_string()))?;
                (action, Some(policy))
            }
        };
        let (action, policy) = placed;
        let position = self.state.resolve(&action)?;
        let mut scratch = self.clone();
        let body =
            EventBody::MovePlaced(MovePlaced { ply: self.state.ply(), player: to_move, action, position, policy });
        scratch.apply_event(&WireEvent { sequence: scratch.events.len() as u64, body: body.clone() })?;
        let mut out = vec![body];
        out.extend(scratch.pending.iter().cloned());
        Ok(out)
    }

    fn parse_token(&self, raw: &str, to_move: Role) -> Result<TokenId, SessionError> {
        if let Ok(id) = raw.trim().parse::<TokenId>() {
            return Ok(id);
        }
        self.catalog
            .resolve(to_move, raw)
            .map_err(|source| SessionError::Catalog { reference: self.config.catalog.clone(), source })
    }

    /// Appends planned events. They must come from [`Session::plan`] on this
    /// same session.
    pub fn commit(&mut self, bodies: Vec<EventBody>) -> Result<Vec<WireEvent>, ReplayError> {
        let start = self.events.len();
        for body in bodies {
            let event = WireEvent { sequence: self.events.len() as u64, body };
            self.apply_event(&event)?;
        }
        Ok(self.events[start..].to_vec())
    }

    pub fn execute(&mut self, request: &CommandRequest) -> Result<Vec<WireEvent>, SessionError> {
        let bodies = self.plan(request)?;
        Ok(self.commit(bodies)?)
    }

    /// Greedy suggestion for the human seat to move.
    pub fn hint(&self) -> Result<Hint, SessionError> {
        if !self.config.hints {
            return Err(SessionError::HintsDisabled);
        }
        if self.ended.is_some() {
            return Err(SessionError::Finished);
        }
        let role = self.state.to_move();
        if self.config.seat(role) != Seat::Human {
            return Err(SessionError::AiSeat(role));
        }
        let matrix = self.catalog.matchup_matrix();
        let action =
            choose_action(&Policy::Greedy, &self.state, matrix).map_err(|e| SessionError::BadConfig(e.to_string()))?;
        let position = self.state.resolve(&action)?;
        let after = self.state.apply(&action)?;
        let pair = EVALUATION_PAIRS.iter().find(|p| p.contains(position)).copied();
        let target = pair.and_then(|pair| {
            let other = if pair.a == position { pair.b } else { pair.a };
            let (owner, token) = after.occupant(other)?;
            if owner == role {
                return Some(HintTarget { position: other, token, verdict: None, sequential_bonus: true });
            }
            let (a, d) = if role == Role::Attacker { (action.token, token) } else { (token, action.token) };
            let verdict = judge_matchup(matrix, a, d).ok();
            Some(HintTarget { position: other, token, verdict, sequential_bonus: false })
        });
        let event = pair.map(|p| evaluate_pair(&after, &p, matrix));
        Ok(Hint {
            role,
            action,
            position,
            label: self.catalog.label(action.token).to_string(),
            target,
            points: event.map_or(0, |e| e.points(role)),
        })
    }

    pub fn view(&self) -> SessionView {
        SessionView::of(self)
    }
}

/// Rebuilds a session from its log, re-deriving every verdict and the final
/// report. Returns the replayed session; its state and report are the
/// authoritative reconstruction.
pub fn session_replay(events: &[WireEvent]) -> Result<Session, ReplayError> {
    let first = events.first().ok_or(ReplayError::Empty)?;
    let mut session = Session::from_first(first)?;
    for event in &events[1..] {
        session.apply_event(event)?;
    }
    if let Some(missing) = session.pending.front() {
        let kind = WireEvent { sequence: 0, body: missing.clone() }.kind();
        return Err(diverge(events.len() as u64, format!("log ends before {kind}")));
    }
    Ok(session)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HintTarget {
    pub position: Position,
    pub token: TokenId,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verdict: Option<Verdict>,
    pub sequential_bonus: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hint {
    pub role: Role,
    pub action: Action,
    pub position: Position,
    pub label: String,
    /// The occupied cell this placement is scored against, if any.
    pub target: Option<HintTarget>,
    /// Points the placement earns on its evaluation pair right away.
    pub points: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Occupant {
    pub player: Role,
    pub token: TokenId,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellView {
    pub position: Position,
    pub region: Region,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub angle: Option<u8>,
    pub occupant: Option<Occupant>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PaletteEntry {
    pub token: TokenId,
    pub label: String,
    pub definition: String,
    pub trick: TrickTag,
    pub uses_left: u8,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionOption {
    pub region: Region,
    /// Where a placement lands when the region is already open.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub next_position: Option<Position>,
    /// Free angles when the ring is still empty.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub opening_angles: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LegalSummary {
    pub role: Role,
    pub tokens: Vec<TokenId>,
    pub regions: Vec<RegionOption>,
    pub action_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub attacker: u32,
    pub defender: u32,
}

/// Everything a client needs to draw the game, derived from the log.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionView {
    pub session_id: String,
    pub created_at: DateTime<Utc>,
    pub status: SessionStatus,
    pub config: SessionConfig,
    pub last_sequence: u64,
    pub ply: u32,
    pub to_move: Option<Role>,
    pub seat_to_move: Option<Seat>,
    pub board: Vec<CellView>,
    pub placements: Totals,
    pub score: Totals,
    pub palette: Vec<PaletteEntry>,
    pub last_verdict: Option<IterationVerdict>,
    pub legal: Option<LegalSummary>,
    pub result: Option<GameEnded>,
}

impl SessionView {
    fn of(session: &Session) -> SessionView {
        let state = &session.state;
        let catalog = &session.catalog;
        let board = Position::all()
            .map(|position| CellView {
                position,
                region: position.region(),
                angle: position.angle(),
                occupant: state.occupant(position).map(|(player, token)| Occupant {
                    player,
                    token,
                    label: catalog.label(token).to_string(),
                }),
            })
            .collect();
        let palette = Role::ALL
            .into_iter()
            .flat_map(|role| catalog.tokens(role).iter())
            .map(|def| PaletteEntry {
                token: def.id,
                label: def.label.clone(),
                definition: def.definition.clone(),
                trick: def.trick,
                uses_left: state.config().token_limit.saturating_sub(state.usage(def.id)),
            })
            .collect();
        let open = session.ended.is_none() && !state.is_terminal();
        let legal = open.then(|| legal_summary(state));
        let score = score_position(state, catalog.matchup_matrix());
        SessionView {
            session_id: session.id.clone(),
            created_at: session.created_at,
            status: session.status(),
            config: session.config.clone(),
            last_sequence: session.last_sequence(),
            ply: state.ply(),
            to_move: open.then(|| state.to_move()),
            seat_to_move: open.then(|| session.config.seat(state.to_move())),
            board,
            placements: Totals {
                attacker: u32::from(state.placements(Role::Attacker)),
                defender: u32::from(state.placements(Role::Defender)),
            },
            score: Totals { attacker: score.attacker_total, defender: score.defender_total },
            palette,
            last_verdict: session.last_verdict.clone(),
            legal,
            result: session.ended.clone(),
        }
    }
}

pub fn legal_summary(state: &GameState) -> LegalSummary {
    let actions = state.legal_actions();
    let mut tokens: Vec<TokenId> = actions.iter().map(|a| a.token).collect();
    tokens.dedup();
    let mut regions: Vec<RegionOption> = Vec::new();
    if let Some(first) = tokens.first() {
        for action in actions.iter().filter(|a| a.token == *first) {
            match regions.last_mut() {
                Some(last) if last.region == action.region => last.opening_angles.extend(action.opening_angle),
                _ => {
                    let next_position = match action.opening_angle {
                        None => state.resolve(action).ok(),
                        Some(_) => None,
                    };
                    regions.push(RegionOption {
                        region: action.region,
                        next_position,
                        opening_angles: action.opening_angle.into_iter().collect(),
                    });
                }
            }
        }
    }
    LegalSummary { role: state.to_move(), tokens, regions, action_count: actions.len() }
}

/// Ring cursor helper for text renderings.
pub fn ring_cursors(state: &GameState) -> [(Ring, Option<u8>); 3] {
    Ring::ALL.map(|ring| (ring, state.ring_cursor(ring)))
}
