//! Board topology and placement rules.
//!
//! The board has 25 intersections: three rings of eight angles (inner 1..=8,
//! middle 9..=16, outer 17..=24) and the center (25). Within a ring the first
//! placement picks its angle; every later placement in that ring lands on the
//! first empty angle clockwise (increasing, wrapping 8 -> 1) after the ring's
//! most recent placement, whoever made it. The center is a standalone region.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::catalog::{Role, TokenId, TOKENS_PER_SIDE};

pub const POSITION_COUNT: usize = 25;
pub const ANGLES: u8 = 8;
pub const CENTER: Position = Position(25);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Ring {
    Inner,
    Middle,
    Outer,
}

impl Ring {
    pub const ALL: [Ring; 3] = [Ring::Inner, Ring::Middle, Ring::Outer];

    fn base(self) -> u8 {
        match self {
            Ring::Inner => 0,
            Ring::Middle => 8,
            Ring::Outer => 16,
        }
    }

    fn slot(self) -> usize {
        match self {
            Ring::Inner => 0,
            Ring::Middle => 1,
            Ring::Outer => 2,
        }
    }

    pub fn region(self) -> Region {
        match self {
            Ring::Inner => Region::Inner,
            Ring::Middle => Region::Middle,
            Ring::Outer => Region::Outer,
        }
    }
}

/// Placement target. Declaration order is the tie-break order used by the
/// AI players.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Region {
    Center,
    Inner,
    Middle,
    Outer,
}

impl Region {
    pub const ALL: [Region; 4] = [Region::Center, Region::Inner, Region::Middle, Region::Outer];

    pub fn ring(self) -> Option<Ring> {
        match self {
            Region::Center => None,
            Region::Inner => Some(Ring::Inner),
            Region::Middle => Some(Ring::Middle),
            Region::Outer => Some(Ring::Outer),
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Region::Center => "center",
            Region::Inner => "inner",
            Region::Middle => "middle",
            Region::Outer => "outer",
        }
    }
}

impl fmt::Display for Region {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Region {
    type Err = MoveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "center" | "centre" | "c" => Ok(Region::Center),
            "inner" | "i" => Ok(Region::Inner),
            "middle" | "m" => Ok(Region::Middle),
            "outer" | "o" => Ok(Region::Outer),
            _ => Err(MoveError::UnknownRegion(s.to_string())),
        }
    }
}

/// One of the 25 intersections, numbered 1..=25.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position(u8);

impl Position {
    pub fn new(index: u8) -> Option<Position> {
        (1..=25).contains(&index).then_some(Position(index))
    }

    pub fn on_ring(ring: Ring, angle: u8) -> Position {
        assert!((1..=ANGLES).contains(&angle), "angle {angle} out of range");
        Position(ring.base() + angle)
    }

    pub fn index(self) -> u8 {
        self.0
    }

    fn cell(self) -> usize {
        usize::from(self.0 - 1)
    }

    pub fn ring(self) -> Option<Ring> {
        match self.0 {
            1..=8 => Some(Ring::Inner),
            9..=16 => Some(Ring::Middle),
            17..=24 => Some(Ring::Outer),
            _ => None,
        }
    }

    pub fn region(self) -> Region {
        self.ring().map_or(Region::Center, Ring::region)
    }

    /// Angle 1..=8 on its ring; `None` for the center.
    pub fn angle(self) -> Option<u8> {
        self.ring().map(|ring| self.0 - ring.base())
    }

    pub fn all() -> impl Iterator<Item = Position> {
        (1..=25).map(Position)
    }

    /// Ring neighbours, spoke neighbours and the center link for inner
    /// positions. Used for rendering only; scoring reads evaluation pairs.
    pub fn neighbors(self) -> Vec<Position> {
        let Some(ring) = self.ring() else {
            return Ring::Inner.positions().collect();
        };
        let angle = self.angle().expect("ring position has an angle");
        let prev = if angle == 1 { ANGLES } else { angle - 1 };
        let next = if angle == ANGLES { 1 } else { angle + 1 };
        let mut out = vec![Position::on_ring(ring, prev), Position::on_ring(ring, next)];
        match ring {
            Ring::Inner => {
                out.push(CENTER);
                out.push(Position::on_ring(Ring::Middle, angle));
            }
            Ring::Middle => {
                out.push(Position::on_ring(Ring::Inner, angle));
                out.push(Position::on_ring(Ring::Outer, angle));
            }
            Ring::Outer => out.push(Position::on_ring(Ring::Middle, angle)),
        }
        out.sort();
        out
    }
}

impl Ring {
    pub fn positions(self) -> impl Iterator<Item = Position> {
        (1..=ANGLES).map(move |angle| Position::on_ring(self, angle))
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl Serialize for Position {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_u8(self.0)
    }
}

impl<'de> Deserialize<'de> for Position {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = u8::deserialize(deserializer)?;
        Position::new(raw).ok_or_else(|| serde::de::Error::custom(format!("position {raw} out of range")))
    }
}

/// Two intersections compared by the judge at scoring time.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EvaluationPair {
    pub a: Position,
    pub b: Position,
    pub round: u8,
    pub order_in_round: u8,
}

impl EvaluationPair {
    pub fn contains(&self, position: Position) -> bool {
        self.a == position || self.b == position
    }
}

const fn pair(a: u8, b: u8, round: u8, order_in_round: u8) -> EvaluationPair {
    EvaluationPair { a: Position(a), b: Position(b), round, order_in_round }
}

/// The four evaluation rounds, in scoring order.
pub const EVALUATION_PAIRS: [EvaluationPair; 16] = [
    pair(25, 1, 1, 1),
    pair(9, 17, 1, 2),
    pair(25, 5, 1, 3),
    pair(13, 21, 1, 4),
    pair(25, 3, 2, 1),
    pair(11, 19, 2, 2),
    pair(25, 7, 2, 3),
    pair(15, 23, 2, 4),
    pair(25, 2, 3, 1),
    pair(10, 18, 3, 2),
    pair(25, 6, 3, 3),
    pair(14, 22, 3, 4),
    pair(25, 8, 4, 1),
    pair(16, 24, 4, 2),
    pair(25, 4, 4, 3),
    pair(12, 20, 4, 4),
];

pub fn board_topology() -> (Vec<Position>, Vec<EvaluationPair>) {
    (Position::all().collect(), EVALUATION_PAIRS.to_vec())
}

/// A placement request. `opening_angle` is required exactly when the target
/// ring is still empty.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Action {
    pub token: TokenId,
    pub region: Region,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub opening_angle: Option<u8>,
}

impl Action {
    pub fn new(token: TokenId, region: Region, opening_angle: Option<u8>) -> Self {
        Self { token, region, opening_angle }
    }

    pub fn center(token: TokenId) -> Self {
        Self::new(token, Region::Center, None)
    }

    /// Placement into a ring that is already open.
    pub fn next_on(token: TokenId, ring: Ring) -> Self {
        Self::new(token, ring.region(), None)
    }

    pub fn open(token: TokenId, ring: Ring, angle: u8) -> Self {
        Self::new(token, ring.region(), Some(angle))
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.token, self.region)?;
        if let Some(angle) = self.opening_angle {
            write!(f, " {angle}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TerminalReason {
    BudgetsExhausted,
    BoardFull,
    NoLegalMove,
}

/// Placement limits. The defaults are 13 placements per player and two uses
/// per token type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GameConfig {
    pub budget: u8,
    pub token_limit: u8,
}

impl Default for GameConfig {
    fn default() -> Self {
        Self { budget: TOKENS_PER_SIDE, token_limit: 2 }
    }
}

impl GameConfig {
    pub fn validate(&self) -> Result<(), MoveError> {
        if usize::from(self.budget) > POSITION_COUNT {
            return Err(MoveError::InvalidConfig(format!(
                "budget {} exceeds the {POSITION_COUNT} intersections",
                self.budget
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MoveError {
    #[error("game is over")]
    GameOver,
    #[error("{token} is not a {to_move} token")]
    WrongRole { token: TokenId, to_move: Role },
    #[error("{0} has placed all of its tokens")]
    BudgetExhausted(Role),
    #[error("{0} already used twice")]
    UsageLimit(TokenId),
    #[error("center occupied")]
    CenterOccupied,
    #[error("center takes no opening angle")]
    AngleOnCenter,
    #[error("{0} ring is full")]
    RingFull(Region),
    #[error("{0} ring is already open; placements follow clockwise order")]
    RingAlreadyOpen(Region),
    #[error("{0} ring is empty; an opening angle is required")]
    MissingOpeningAngle(Region),
    #[error("angle {0} out of range 1..=8")]
    InvalidAngle(u8),
    #[error("position {0} occupied")]
    Occupied(Position),
    #[error("unknown region {0:?}")]
    UnknownRegion(String),
    #[error("invalid game configuration: {0}")]
    InvalidConfig(String),
    #[error("malformed log line {0:?}")]
    BadLogLine(String),
    #[error("log line {line}: expected position {expected}, resolved {actual}")]
    ReplayMismatch { line: usize, expected: Position, actual: Position },
}

/// One ply of the move log.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LogEntry {
    pub ply: u32,
    pub player: Role,
    pub action: Action,
    pub position: Position,
}

impl LogEntry {
    /// `ply,player,token,region,resolved_position`
    pub fn to_line(&self) -> String {
        format!("{},{},{},{},{}", self.ply, self.player, self.action.token, self.action.region, self.position)
    }
}

/// Full game state. A value: operations return new states.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GameState {
    config: GameConfig,
    cells: [Option<(Role, TokenId)>; POSITION_COUNT],
    ring_cursor: [Option<u8>; 3],
    placements: [u8; 2],
    usage: [[u8; TOKENS_PER_SIDE as usize]; 2],
    to_move: Role,
    log: Vec<LogEntry>,
    terminal: Option<TerminalReason>,
}

pub fn new_game(config: &GameConfig) -> Result<GameState, MoveError> {
    config.validate()?;
    let mut state = GameState {
        config: *config,
        cells: [None; POSITION_COUNT],
        ring_cursor: [None; 3],
        placements: [0; 2],
        usage: [[0; TOKENS_PER_SIDE as usize]; 2],
        to_move: Role::Attacker,
        log: Vec::new(),
        terminal: None,
    };
    if config.budget == 0 {
        state.terminal = Some(TerminalReason::BudgetsExhausted);
    } else if !state.has_legal_action(Role::Attacker) {
        state.terminal = Some(TerminalReason::NoLegalMove);
    }
    Ok(state)
}

impl GameState {
    pub fn config(&self) -> &GameConfig {
        &self.config
    }

    pub fn occupant(&self, position: Position) -> Option<(Role, TokenId)> {
        self.cells[position.cell()]
    }

    pub fn occupied_count(&self) -> usize {
        self.cells.iter().flatten().count()
    }

    pub fn ring_cursor(&self, ring: Ring) -> Option<u8> {
        self.ring_cursor[ring.slot()]
    }

    pub fn placements(&self, role: Role) -> u8 {
        self.placements[role.slot()]
    }

    pub fn usage(&self, token: TokenId) -> u8 {
        self.usage[token.role().slot()][token.offset()]
    }

    pub fn to_move(&self) -> Role {
        self.to_move
    }

    pub fn log(&self) -> &[LogEntry] {
        &self.log
    }

    pub fn ply(&self) -> u32 {
        self.log.len() as u32
    }

    pub fn terminal_reason(&self) -> Option<TerminalReason> {
        self.terminal
    }

    pub fn is_terminal(&self) -> bool {
        self.terminal.is_some()
    }

    /// Move log rendered one `ply,player,token,region,resolved_position` line
    /// per ply.
    pub fn log_lines(&self) -> Vec<String> {
        self.log.iter().map(LogEntry::to_line).collect()
    }

    fn first_empty_after(&self, ring: Ring, cursor: u8) -> Option<u8> {
        (1..=ANGLES)
            .map(|step| (cursor - 1 + step) % ANGLES + 1)
            .find(|&angle| self.cells[Position::on_ring(ring, angle).cell()].is_none())
    }

    fn ring_has_space(&self, ring: Ring) -> bool {
        ring.positions().any(|p| self.cells[p.cell()].is_none())
    }

    fn has_legal_action(&self, role: Role) -> bool {
        if self.placements[role.slot()] >= self.config.budget {
            return false;
        }
        if !self.usage[role.slot()].iter().any(|&used| used < self.config.token_limit) {
            return false;
        }
        self.cells[CENTER.cell()].is_none() || Ring::ALL.iter().any(|&ring| self.ring_has_space(ring))
    }

    /// Where `action` would land, or why it cannot be played.
    pub fn resolve(&self, action: &Action) -> Result<Position, MoveError> {
        if self.terminal.is_some() {
            return Err(MoveError::GameOver);
        }
        let mover = self.to_move;
        if action.token.role() != mover {
            return Err(MoveError::WrongRole { token: action.token, to_move: mover });
        }
        if self.placements[mover.slot()] >= self.config.budget {
            return Err(MoveError::BudgetExhausted(mover));
        }
        if self.usage(action.token) >= self.config.token_limit {
            return Err(MoveError::UsageLimit(action.token));
        }
        let Some(ring) = action.region.ring() else {
            if action.opening_angle.is_some() {
                return Err(MoveError::AngleOnCenter);
            }
            if self.cells[CENTER.cell()].is_some() {
                return Err(MoveError::CenterOccupied);
            }
            return Ok(CENTER);
        };
        match (self.ring_cursor[ring.slot()], action.opening_angle) {
            (Some(_), Some(_)) => {
                if self.ring_has_space(ring) {
                    Err(MoveError::RingAlreadyOpen(action.region))
                } else {
                    Err(MoveError::RingFull(action.region))
                }
            }
            (Some(cursor), None) => self
                .first_empty_after(ring, cursor)
                .map(|angle| Position::on_ring(ring, angle))
                .ok_or(MoveError::RingFull(action.region)),
            (None, None) => Err(MoveError::MissingOpeningAngle(action.region)),
            (None, Some(angle)) => {
                if !(1..=ANGLES).contains(&angle) {
                    return Err(MoveError::InvalidAngle(angle));
                }
                let target = Position::on_ring(ring, angle);
                if self.cells[target.cell()].is_some() {
                    return Err(MoveError::Occupied(target));
                }
                Ok(target)
            }
        }
    }

    /// Every action that [`GameState::apply`] accepts, ordered by token index,
    /// then region, then opening angle.
    pub fn legal_actions(&self) -> Vec<Action> {
        if self.terminal.is_some() {
            return Vec::new();
        }
        let mover = self.to_move;
        if self.placements[mover.slot()] >= self.config.budget {
            return Vec::new();
        }
        let mut targets = Vec::with_capacity(25);
        if self.cells[CENTER.cell()].is_none() {
            targets.push((Region::Center, None));
        }
        for ring in Ring::ALL {
            match self.ring_cursor[ring.slot()] {
                Some(_) if self.ring_has_space(ring) => targets.push((ring.region(), None)),
                Some(_) => {}
                None => {
                    for angle in 1..=ANGLES {
                        if self.cells[Position::on_ring(ring, angle).cell()].is_none() {
                            targets.push((ring.region(), Some(angle)));
                        }
                    }
                }
            }
        }
        let mut actions = Vec::with_capacity(targets.len() * usize::from(TOKENS_PER_SIDE));
        for token in TokenId::all(mover) {
            if self.usage(token) >= self.config.token_limit {
                continue;
            }
            actions.extend(targets.iter().map(|&(region, angle)| Action::new(token, region, angle)));
        }
        actions
    }

    pub fn apply(&self, action: &Action) -> Result<GameState, MoveError> {
        let mut next = self.clone();
        next.apply_in_place(action)?;
        Ok(next)
    }

    /// Mutating form of [`GameState::apply`]; leaves `self` untouched on error.
    pub fn apply_in_place(&mut self, action: &Action) -> Result<Position, MoveError> {
        let target = self.resolve(action)?;
        let mover = self.to_move;
        self.cells[target.cell()] = Some((mover, action.token));
        if let (Some(ring), Some(angle)) = (target.ring(), target.angle()) {
            self.ring_cursor[ring.slot()] = Some(angle);
        }
        self.placements[mover.slot()] += 1;
        self.usage[mover.slot()][action.token.offset()] += 1;
        self.log.push(LogEntry { ply: self.log.len() as u32, player: mover, action: *action, position: target });
        self.to_move = mover.opponent();
        self.terminal = if self.placements[mover.slot()] >= self.config.budget {
            Some(TerminalReason::BudgetsExhausted)
        } else if self.occupied_count() == POSITION_COUNT {
            Some(TerminalReason::BoardFull)
        } else if !self.has_legal_action(self.to_move) {
            Some(TerminalReason::NoLegalMove)
        } else {
            None
        };
        Ok(target)
    }

    /// Builds an arranged position for analysis, such as a puzzle or a
    /// scoring illustration that strict alternation cannot reach. Per-token
    /// limits and cell exclusivity are enforced; the budget and turn order
    /// are not. The log stays empty, placements are counted from the layout,
    /// and the side with fewer tokens moves next.
    pub fn arranged(config: &GameConfig, layout: &[(Position, TokenId)]) -> Result<GameState, MoveError> {
        let mut state = new_game(config)?;
        state.terminal = None;
        for &(position, token) in layout {
            if state.cells[position.cell()].is_some() {
                return Err(MoveError::Occupied(position));
            }
            if state.usage(token) >= config.token_limit {
                return Err(MoveError::UsageLimit(token));
            }
            let role = token.role();
            state.cells[position.cell()] = Some((role, token));
            state.placements[role.slot()] += 1;
            state.usage[role.slot()][token.offset()] += 1;
            if let (Some(ring), Some(angle)) = (position.ring(), position.angle()) {
                state.ring_cursor[ring.slot()] = Some(angle);
            }
        }
        state.to_move = if state.placements[1] < state.placements[0] { Role::Defender } else { Role::Attacker };
        state.terminal = if state.occupied_count() == POSITION_COUNT {
            Some(TerminalReason::BoardFull)
        } else if !state.has_legal_action(state.to_move) {
            Some(TerminalReason::NoLegalMove)
        } else {
            None
        };
        Ok(state)
    }
}

pub fn legal_actions(state: &GameState) -> Vec<Action> {
    state.legal_actions()
}

pub fn apply_action(state: &GameState, action: &Action) -> Result<GameState, MoveError> {
    state.apply(action)
}

pub fn is_terminal(state: &GameState) -> Option<TerminalReason> {
    state.terminal_reason()
}

/// Rebuilds a game from its move-log lines. Opening placements take their
/// angle from the recorded position; every other line must resolve to the
/// recorded position.
pub fn replay_log_lines<'a, I>(config: &GameConfig, lines: I) -> Result<GameState, MoveError>
where
    I: IntoIterator<Item = &'a str>,
{
    let mut state = new_game(config)?;
    for (line_no, line) in lines.into_iter().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let bad = || MoveError::BadLogLine(line.to_string());
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let [ply, player, token, region, position] = fields[..] else {
            return Err(bad());
        };
        let ply: u32 = ply.parse().map_err(|_| bad())?;
        let player: Role = player.parse().map_err(|_| bad())?;
        let token: TokenId = token.parse().map_err(|_| bad())?;
        let region: Region = region.parse()?;
        let position = position.parse().ok().and_then(Position::new).ok_or_else(bad)?;
        if ply != state.ply() || player != state.to_move() || position.region() != region {
            return Err(bad());
        }
        let opening_angle = match region.ring() {
            Some(ring) if state.ring_cursor(ring).is_none() => position.angle(),
            _ => None,
        };
        let actual = state.apply_in_place(&Action::new(token, region, opening_angle))?;
        if actual != position {
            return Err(MoveError::ReplayMismatch { line: line_no + 1, expected: position, actual });
        }
    }
    Ok(state)
}
