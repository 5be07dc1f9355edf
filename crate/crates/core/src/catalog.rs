//! Token taxonomy, psychological-factor taxonomy and judged matchups.
//!
//! A [`Catalog`] is loaded from a JSON document with three top-level lists
//! (`attacker_tokens`, `defender_tokens`, `matchups`) and validated on load:
//! exactly 13 tokens per side, known trick tags, unique labels and a closed
//! alias map. The shipped default lives in `data/default_catalog.json`.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Tokens per side.
pub const TOKENS_PER_SIDE: u8 = 13;

const DEFAULT_CATALOG_JSON: &str = include_str!("../data/default_catalog.json");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Attacker,
    Defender,
}

impl Role {
    pub const ALL: [Role; 2] = [Role::Attacker, Role::Defender];

    pub fn opponent(self) -> Role {
        match self {
            Role::Attacker => Role::Defender,
            Role::Defender => Role::Attacker,
        }
    }

    /// 0 for the attacker, 1 for the defender.
    pub fn slot(self) -> usize {
        match self {
            Role::Attacker => 0,
            Role::Defender => 1,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Role::Attacker => "attacker",
            Role::Defender => "defender",
        }
    }

    fn prefix(self) -> char {
        match self {
            Role::Attacker => 'A',
            Role::Defender => 'D',
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Role {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "attacker" | "a" => Ok(Role::Attacker),
            "defender" | "d" => Ok(Role::Defender),
            _ => Err(CatalogError::UnknownRole(s.to_string())),
        }
    }
}

/// A token identity such as `A7` or `D13`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TokenId {
    role: Role,
    index: u8,
}

impl TokenId {
    pub fn new(role: Role, index: u8) -> Result<Self, CatalogError> {
        if !(1..=TOKENS_PER_SIDE).contains(&index) {
            return Err(CatalogError::BadTokenId(format!("{}{}", role.prefix(), index)));
        }
        Ok(Self { role, index })
    }

    /// Shorthand for ids known to be in range; panics otherwise.
    pub fn attacker(index: u8) -> Self {
        Self::new(Role::Attacker, index).expect("attacker index in 1..=13")
    }

    pub fn defender(index: u8) -> Self {
        Self::new(Role::Defender, index).expect("defender index in 1..=13")
    }

    pub fn role(self) -> Role {
        self.role
    }

    /// 1-based index.
    pub fn index(self) -> u8 {
        self.index
    }

    /// 0-based index, for array addressing.
    pub fn offset(self) -> usize {
        usize::from(self.index - 1)
    }

    /// Every id of one side in index order.
    pub fn all(role: Role) -> impl Iterator<Item = TokenId> {
        (1..=TOKENS_PER_SIDE).map(move |index| TokenId { role, index })
    }
}

impl fmt::Display for TokenId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.role.prefix(), self.index)
    }
}

impl FromStr for TokenId {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let trimmed = s.trim();
        let mut chars = trimmed.chars();
        let role = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Role::Attacker,
            Some('D') => Role::Defender,
            _ => return Err(CatalogError::BadTokenId(s.to_string())),
        };
        let index: u8 = chars.as_str().parse().map_err(|_| CatalogError::BadTokenId(s.to_string()))?;
        TokenId::new(role, index).map_err(|_| CatalogError::BadTokenId(s.to_string()))
    }
}

impl Serialize for TokenId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TokenId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(deserializer)?;
        raw.parse().map_err(serde::de::Error::custom)
    }
}

/// Psychological label attached to each token.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TrickTag {
    Deceptive,
    FalseInformation,
    Threats,
    LackOfTraining,
    Distraction,
    LackOfAccountability,
    LackOfTechnology,
    RiskManagement,
    Audit,
    SecurityPolicy,
    StrategicThinking,
    IntrusionPrevention,
    Training,
    Autonomy,
    DataClassification,
    ThreatsLandscape,
    Collaboration,
    SecurityTool,
    IncidentResponse,
}

impl TrickTag {
    pub const ALL: [TrickTag; 19] = [
        TrickTag::Deceptive,
        TrickTag::FalseInformation,
        TrickTag::Threats,
        TrickTag::LackOfTraining,
        TrickTag::Distraction,
        TrickTag::LackOfAccountability,
        TrickTag::LackOfTechnology,
        TrickTag::RiskManagement,
        TrickTag::Audit,
        TrickTag::SecurityPolicy,
        TrickTag::StrategicThinking,
        TrickTag::IntrusionPrevention,
        TrickTag::Training,
        TrickTag::Autonomy,
        TrickTag::DataClassification,
        TrickTag::ThreatsLandscape,
        TrickTag::Collaboration,
        TrickTag::SecurityTool,
        TrickTag::IncidentResponse,
    ];

    pub fn name(self) -> &'static str {
        match self {
            TrickTag::Deceptive => "Deceptive",
            TrickTag::FalseInformation => "False information",
            TrickTag::Threats => "Threats",
            TrickTag::LackOfTraining => "Lack of training",
            TrickTag::Distraction => "Distraction",
            TrickTag::LackOfAccountability => "Lack of accountability",
            TrickTag::LackOfTechnology => "Lack of technology",
            TrickTag::RiskManagement => "Risk management",
            TrickTag::Audit => "Audit",
            TrickTag::SecurityPolicy => "Security policy",
            TrickTag::StrategicThinking => "Strategic thinking",
            TrickTag::IntrusionPrevention => "Intrusion prevention",
            TrickTag::Training => "Training",
            TrickTag::Autonomy => "Autonomy",
            TrickTag::DataClassification => "Data classification",
            TrickTag::ThreatsLandscape => "Threats landscape",
            TrickTag::Collaboration => "Collaboration",
            TrickTag::SecurityTool => "Security tool",
            TrickTag::IncidentResponse => "Incident response",
        }
    }

    pub fn side(self) -> Role {
        match self {
            TrickTag::Deceptive
            | TrickTag::FalseInformation
            | TrickTag::Threats
            | TrickTag::LackOfTraining
            | TrickTag::Distraction
            | TrickTag::LackOfAccountability
            | TrickTag::LackOfTechnology => Role::Attacker,
            _ => Role::Defender,
        }
    }

    /// Case-insensitive parse. Accepts the two spellings found in the source
    /// table: "Treats landscape" and the singular "Threat".
    pub fn parse(name: &str) -> Option<TrickTag> {
        let wanted = normalize(name);
        match wanted.as_str() {
            "treats landscape" => return Some(TrickTag::ThreatsLandscape),
            "threat" => return Some(TrickTag::Threats),
            _ => {}
        }
        TrickTag::ALL.into_iter().find(|tag| normalize(tag.name()) == wanted)
    }
}

impl fmt::Display for TrickTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl Serialize for TrickTag {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for TrickTag {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let raw = String::deserialize(deserializer)?;
        TrickTag::parse(&raw).ok_or_else(|| serde::de::Error::custom(format!("unknown trick tag {raw:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Pole {
    Vulnerability,
    Protection,
    Stimulus,
}

/// Psychological factors of data protection. Reporting metadata only; no
/// mapping to trick tags exists.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PsychFactor {
    LackOfControl,
    Distrust,
    Apathy,
    Exposure,
    Misconception,
    Ignorance,
    Powerlessness,
    Safety,
    DataDiligence,
    DataNegligence,
}

impl PsychFactor {
    pub const ALL: [PsychFactor; 10] = [
        PsychFactor::LackOfControl,
        PsychFactor::Distrust,
        PsychFactor::Apathy,
        PsychFactor::Exposure,
        PsychFactor::Misconception,
        PsychFactor::Ignorance,
        PsychFactor::Powerlessness,
        PsychFactor::Safety,
        PsychFactor::DataDiligence,
        PsychFactor::DataNegligence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PsychFactor::LackOfControl => "lack of control",
            PsychFactor::Distrust => "distrust",
            PsychFactor::Apathy => "apathy",
            PsychFactor::Exposure => "exposure",
            PsychFactor::Misconception => "misconception",
            PsychFactor::Ignorance => "ignorance",
            PsychFactor::Powerlessness => "powerlessness",
            PsychFactor::Safety => "safety",
            PsychFactor::DataDiligence => "data diligence",
            PsychFactor::DataNegligence => "data negligence",
        }
    }

    pub fn pole(self) -> Pole {
        match self {
            PsychFactor::Safety => Pole::Protection,
            PsychFactor::DataDiligence | PsychFactor::DataNegligence => Pole::Stimulus,
            _ => Pole::Vulnerability,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenDef {
    pub id: TokenId,
    pub label: String,
    pub definition: String,
    pub trick: TrickTag,
    #[serde(default)]
    pub aliases: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchupEntry {
    pub attacker: TokenId,
    pub defender: TokenId,
    pub winner: Role,
    #[serde(default)]
    pub comment: String,
}

/// How cells without a judged entry are treated. Only one policy exists:
/// they award no points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UnjudgedPolicy {
    #[default]
    NoPoints,
}

/// Partial attacker × defender table of judged verdicts.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MatchupMatrix {
    entries: BTreeMap<(TokenId, TokenId), MatchupEntry>,
    default_for_unjudged: UnjudgedPolicy,
}

impl MatchupMatrix {
    pub fn from_entries<I>(entries: I) -> Result<Self, CatalogError>
    where
        I: IntoIterator<Item = MatchupEntry>,
    {
        let mut matrix = MatchupMatrix::default();
        for entry in entries {
            if entry.attacker.role() != Role::Attacker || entry.defender.role() != Role::Defender {
                return Err(CatalogError::MatchupRoles { attacker: entry.attacker, defender: entry.defender });
            }
            let key = (entry.attacker, entry.defender);
            if let Some(existing) = matrix.entries.get(&key) {
                if existing.winner != entry.winner {
                    return Err(CatalogError::ConflictingMatchup {
                        attacker: entry.attacker,
                        defender: entry.defender,
                    });
                }
                return Err(CatalogError::DuplicateMatchup { attacker: entry.attacker, defender: entry.defender });
            }
            matrix.entries.insert(key, entry);
        }
        Ok(matrix)
    }

    pub fn get(&self, attacker: TokenId, defender: TokenId) -> Option<&MatchupEntry> {
        self.entries.get(&(attacker, defender))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries ordered by (attacker, defender).
    pub fn entries(&self) -> impl Iterator<Item = &MatchupEntry> {
        self.entries.values()
    }

    pub fn unjudged_policy(&self) -> UnjudgedPolicy {
        self.default_for_unjudged
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("catalog is not valid JSON for the catalog schema: {0}")]
    Parse(String),
    #[error("{role} count {count} \u{2260} {expected}", expected = TOKENS_PER_SIDE)]
    Count { role: Role, count: usize },
    #[error("malformed token id {0:?}")]
    BadTokenId(String),
    #[error("unknown role {0:?}")]
    UnknownRole(String),
    #[error("token {id} listed under {listed}")]
    WrongSide { id: TokenId, listed: Role },
    #[error("duplicate token id {0}")]
    DuplicateId(TokenId),
    #[error("missing token {0}")]
    MissingToken(TokenId),
    #[error("token {id}: trick tag {trick} belongs to the {side} side")]
    TrickSide { id: TokenId, trick: TrickTag, side: Role },
    #[error("duplicate {role} label {label:?}")]
    DuplicateLabel { role: Role, label: String },
    #[error("alias {alias:?} maps to both {first} and {second}")]
    ConflictingAlias { alias: String, first: TokenId, second: TokenId },
    #[error("matchup {attacker} vs {defender} has tokens on the wrong sides")]
    MatchupRoles { attacker: TokenId, defender: TokenId },
    #[error("matchup {attacker} vs {defender} listed with conflicting winners")]
    ConflictingMatchup { attacker: TokenId, defender: TokenId },
    #[error("matchup {attacker} vs {defender} listed twice")]
    DuplicateMatchup { attacker: TokenId, defender: TokenId },
    #[error("no {role} token named {name:?}")]
    UnknownName { role: Role, name: String },
    #[error("{role} name {name:?} is ambiguous")]
    AmbiguousName { role: Role, name: String },
}

#[derive(Debug, Serialize, Deserialize)]
struct CatalogFile {
    attacker_tokens: Vec<TokenDef>,
    defender_tokens: Vec<TokenDef>,
    #[serde(default)]
    matchups: Vec<MatchupEntry>,
}

/// Validated token catalog. Immutable after load.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Catalog {
    attacker: Vec<TokenDef>,
    defender: Vec<TokenDef>,
    matchups: MatchupMatrix,
    names: HashMap<(Role, String), TokenId>,
}

impl Catalog {
    /// The catalog shipped with the crate.
    pub fn default_catalog() -> Catalog {
        load_catalog(DEFAULT_CATALOG_JSON).expect("shipped catalog is valid")
    }

    pub fn default_json() -> &'static str {
        DEFAULT_CATALOG_JSON
    }

    pub fn tokens(&self, role: Role) -> &[TokenDef] {
        match role {
            Role::Attacker => &self.attacker,
            Role::Defender => &self.defender,
        }
    }

    pub fn token(&self, id: TokenId) -> &TokenDef {
        &self.tokens(id.role())[id.offset()]
    }

    pub fn label(&self, id: TokenId) -> &str {
        &self.token(id).label
    }

    pub fn trick(&self, id: TokenId) -> TrickTag {
        self.token(id).trick
    }

    /// Judged matchups listed in the catalog file.
    pub fn matchup_matrix(&self) -> &MatchupMatrix {
        &self.matchups
    }

    pub fn resolve(&self, role: Role, name: &str) -> Result<TokenId, CatalogError> {
        resolve_token_name(self, role, name)
    }

    pub fn to_json(&self) -> String {
        let file = CatalogFile {
            attacker_tokens: self.attacker.clone(),
            defender_tokens: self.defender.clone(),
            matchups: self.matchups.entries().cloned().collect(),
        };
        serde_json::to_string_pretty(&file).expect("catalog serializes")
    }
}

impl Default for Catalog {
    fn default() -> Self {
        Catalog::default_catalog()
    }
}

impl Serialize for Catalog {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        CatalogFile {
            attacker_tokens: self.attacker.clone(),
            defender_tokens: self.defender.clone(),
            matchups: self.matchups.entries().cloned().collect(),
        }
        .serialize(serializer)
    }
}

fn normalize(name: &str) -> String {
    name.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase()
}

fn validate_side(role: Role, mut tokens: Vec<TokenDef>) -> Result<Vec<TokenDef>, CatalogError> {
    if tokens.len() != usize::from(TOKENS_PER_SIDE) {
        // Duplicates explain a wrong count better than the count itself.
        let mut seen = std::collections::BTreeSet::new();
        for def in &tokens {
            if !seen.insert(def.id) {
                return Err(CatalogError::DuplicateId(def.id));
            }
        }
        return Err(CatalogError::Count { role, count: tokens.len() });
    }
    tokens.sort_by_key(|def| def.id);
    for def in &tokens {
        if def.id.role() != role {
            return Err(CatalogError::WrongSide { id: def.id, listed: role });
        }
        if def.trick.side() != role {
            return Err(CatalogError::TrickSide { id: def.id, trick: def.trick, side: def.trick.side() });
        }
    }
    for pair in tokens.windows(2) {
        if pair[0].id == pair[1].id {
            return Err(CatalogError::DuplicateId(pair[0].id));
        }
    }
    for (expected, def) in TokenId::all(role).zip(&tokens) {
        if def.id != expected {
            return Err(CatalogError::MissingToken(expected));
        }
    }
    Ok(tokens)
}

fn index_names(
    role: Role,
    tokens: &[TokenDef],
    names: &mut HashMap<(Role, String), TokenId>,
) -> Result<(), CatalogError> {
    for def in tokens {
        let key = (role, normalize(&def.label));
        if names.insert(key, def.id).is_some() {
            return Err(CatalogError::DuplicateLabel { role, label: def.label.clone() });
        }
    }
    for def in tokens {
        for alias in &def.aliases {
            let key = (role, normalize(alias));
            match names.get(&key) {
                Some(&other) if other == def.id => {}
                Some(&other) => {
                    return Err(CatalogError::ConflictingAlias { alias: alias.clone(), first: other, second: def.id })
                }
                None => {
                    names.insert(key, def.id);
                }
            }
        }
    }
    Ok(())
}

/// Parses and validates a catalog document.
pub fn load_catalog(source: &str) -> Result<Catalog, CatalogError> {
    let file: CatalogFile = serde_json::from_str(source).map_err(|err| CatalogError::Parse(err.to_string()))?;
    let attacker = validate_side(Role::Attacker, file.attacker_tokens)?;
    let defender = validate_side(Role::Defender, file.defender_tokens)?;
    let mut names = HashMap::new();
    index_names(Role::Attacker, &attacker, &mut names)?;
    index_names(Role::Defender, &defender, &mut names)?;
    let matchups = MatchupMatrix::from_entries(file.matchups)?;
    Ok(Catalog { attacker, defender, matchups, names })
}

/// Case-insensitive lookup over labels, then aliases.
pub fn resolve_token_name(catalog: &Catalog, role: Role, name: &str) -> Result<TokenId, CatalogError> {
    if let Ok(id) = name.parse::<TokenId>() {
        if id.role() == role {
            return Ok(id);
        }
    }
    catalog
        .names
        .get(&(role, normalize(name)))
        .copied()
        .ok_or_else(|| CatalogError::UnknownName { role, name: name.to_string() })
}

/// One row of the published scoring table, with the token names as printed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScoringRow {
    pub iteration: u8,
    pub attacker: &'static str,
    pub defender: &'static str,
    pub attacker_points: u8,
    pub defender_points: u8,
    pub judge: &'static str,
    pub comment: &'static str,
}

impl ScoringRow {
    pub fn winner(&self) -> Role {
        if self.judge.starts_with("Attacker") {
            Role::Attacker
        } else {
            Role::Defender
        }
    }
}

const fn row(
    iteration: u8,
    attacker: &'static str,
    defender: &'static str,
    attacker_points: u8,
    defender_points: u8,
    judge: &'static str,
    comment: &'static str,
) -> ScoringRow {
    ScoringRow { iteration, attacker, defender, attacker_points, defender_points, judge, comment }
}

/// The 26 judged iterations of the published scoring table.
pub const SCORING_TABLE: [ScoringRow; 26] = [
    row(1, "Email", "Zero trust", 0, 1, "Defender best move", "Never trust malicious emails"),
    row(2, "Click", "Denying", 0, 1, "Defender best move", "Denied malicious link"),
    row(3, "Chat", "Identification", 0, 1, "Defender best move", "Identified malicious chats"),
    row(4, "Phone", "Trust", 1, 0, "Attacker best move", "Malicious calls trusted"),
    row(5, "Connection", "Connection", 0, 1, "Defender best move", "Secure connections suggested"),
    row(6, "Access", "Identification", 0, 1, "Defender best move", "Data access monitored"),
    row(7, "Data loss", "Backups", 0, 1, "Defender best move", "The defender data recovery"),
    row(8, "Message", "Identification", 0, 1, "Defender best move", "Abnormal message identified"),
    row(9, "Click", "Upload", 1, 0, "Attacker best move", "The defender uploaded files"),
    row(10, "Password", "Provide", 1, 0, "Attacker best move", "The defender shared passwords"),
    row(11, "Data", "Network monitoring", 0, 1, "Defender best move", "Malicious data monitored"),
    row(12, "Donate", "No trust", 0, 1, "Defender best move", "The defender did not share data"),
    row(13, "Donate", "Provide", 1, 0, "Attacker best move", "Device validation details shared"),
    row(14, "Donate", "Social media", 1, 0, "Attacker best move", "Relevant information shared"),
    row(15, "Connection", "Report", 0, 1, "Defender best move", "Malicious connection reported"),
    row(16, "Access", "Connect", 0, 1, "Defender best move", "Secure connection"),
    row(17, "Data loss", "Provide", 1, 0, "Attacker best's move", "The defender lost information"),
    row(18, "Click", "Identification", 0, 1, "Defender best's move", "Malicious link identification"),
    row(19, "Message", "Backups", 1, 0, "Attacker best's move", "The defender shared backups"),
    row(20, "Attachment", "Avoid", 0, 1, "Defender best's move", "Malicious attachments avoided"),
    row(21, "Chat", "Trust", 1, 0, "Attacker's best move", "Malicious chat trusted"),
    row(22, "Phone", "Network monitoring", 0, 1, "Defender best's move", "Secure network monitored"),
    row(23, "Data", "Avoid", 0, 1, "Defender best's move", "Abnormal data avoided"),
    row(24, "Sensitive data", "Backup", 0, 1, "Defender best's move", "Data recovery"),
    row(25, "Password", "Avoid", 0, 1, "Defender best's move", "Secured passwords"),
    row(26, "Data loss", "Upload", 1, 0, "Attacker best's move", "Information uploaded and lost"),
];

/// Builds the matchup matrix from [`SCORING_TABLE`], resolving its printed
/// names through `catalog`.
pub fn seeded_matchup_matrix(catalog: &Catalog) -> Result<MatchupMatrix, CatalogError> {
    let entries = SCORING_TABLE
        .iter()
        .map(|row| {
            Ok(MatchupEntry {
                attacker: catalog.resolve(Role::Attacker, row.attacker)?,
                defender: catalog.resolve(Role::Defender, row.defender)?,
                winner: row.winner(),
                comment: row.comment.to_string(),
            })
        })
        .collect::<Result<Vec<_>, CatalogError>>()?;
    MatchupMatrix::from_entries(entries)
}
