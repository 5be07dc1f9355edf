//! Session store: one writer lock per session, snapshot reads, and optional
//! JSON-lines persistence (one file per session).

use std::collections::HashMap;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use chrono::Utc;
use dpgame_core::analytics::GameReport;
use parking_lot::{Mutex, RwLock};
use serde::Serialize;
use tracing::warn;
use uuid::Uuid;

use crate::session::{
    parse_event_log, session_replay, CommandRequest, CreateSession, Hint, Session, SessionError, SessionStatus,
    SessionView, WireEvent,
};

/// An immutable published state of one session.
#[derive(Debug, Clone)]
pub struct Snapshot {
    pub events: Arc<Vec<WireEvent>>,
    pub view: SessionView,
    pub report: GameReport,
}

impl Snapshot {
    fn of(session: &Session) -> Snapshot {
        Snapshot { events: Arc::new(session.events().to_vec()), view: session.view(), report: session.report() }
    }

    /// Events with `sequence >= since`.
    pub fn events_since(&self, since: u64) -> &[WireEvent] {
        let start = usize::try_from(since).unwrap_or(usize::MAX).min(self.events.len());
        &self.events[start..]
    }
}

struct Slot {
    writer: Mutex<Session>,
    published: RwLock<Arc<Snapshot>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CommandOutcome {
    pub view: SessionView,
    pub events: Vec<WireEvent>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SessionSummary {
    pub session_id: String,
    pub status: SessionStatus,
    pub last_sequence: u64,
}

pub struct SessionStore {
    dir: Option<PathBuf>,
    sessions: RwLock<HashMap<String, Arc<Slot>>>,
}

impl SessionStore {
    pub fn in_memory() -> SessionStore {
        SessionStore { dir: None, sessions: RwLock::new(HashMap::new()) }
    }

    /// Opens `dir`, creating it if needed, and replays every `*.jsonl` log in
    /// it. Logs that fail to replay are skipped with a warning.
    pub fn open(dir: impl Into<PathBuf>) -> Result<SessionStore, SessionError> {
        let dir = dir.into();
        fs::create_dir_all(&dir)?;
        let mut sessions = HashMap::new();
        for entry in fs::read_dir(&dir)? {
            let path = entry?.path();
            if path.extension().and_then(|e| e.to_str()) != Some("jsonl") {
                continue;
            }
            match load_log(&path) {
                Ok(session) => {
                    sessions.insert(session.id().to_string(), Arc::new(slot(session)));
                }
                Err(err) => warn!(path = %path.display(), %err, "skipping session log"),
            }
        }
        Ok(SessionStore { dir: Some(dir), sessions: RwLock::new(sessions) })
    }

    pub fn data_dir(&self) -> Option<&Path> {
        self.dir.as_deref()
    }

    fn log_path(&self, id: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|dir| dir.join(format!("{id}.jsonl")))
    }

    fn append(&self, id: &str, events: &[WireEvent]) -> Result<(), SessionError> {
        let Some(path) = self.log_path(id) else { return Ok(()) };
        let mut buffer = String::new();
        for event in events {
            buffer.push_str(&event.to_line());
            buffer.push('\n');
        }
        let mut file = OpenOptions::new().create(true).append(true).open(path)?;
        file.write_all(buffer.as_bytes())?;
        file.sync_data()?;
        Ok(())
    }

    fn slot(&self, id: &str) -> Result<Arc<Slot>, SessionError> {
        self.sessions.read().get(id).cloned().ok_or_else(|| SessionError::UnknownSession(id.to_string()))
    }

    pub fn create(&self, request: &CreateSession) -> Result<CommandOutcome, SessionError> {
        let config = request.resolve()?;
        let id = Uuid::new_v4().to_string();
        let session = Session::create(config, id.clone(), Utc::now())?;
        self.append(&id, session.events())?;
        let outcome = CommandOutcome { view: session.view(), events: session.events().to_vec() };
        self.sessions.write().insert(id, Arc::new(slot(session)));
        Ok(outcome)
    }

    pub fn snapshot(&self, id: &str) -> Result<Arc<Snapshot>, SessionError> {
        Ok(self.slot(id)?.published.read().clone())
    }

    /// Runs one command. Commands on the same session are serialized; a
    /// failed command, including a failed write, appends nothing.
    pub fn command(&self, id: &str, request: &CommandRequest) -> Result<CommandOutcome, SessionError> {
        let slot = self.slot(id)?;
        let mut session = slot.writer.lock();
        let planned = session.plan(request)?;
        let mut next = session.clone();
        let events = next.commit(planned)?;
        self.append(id, &events)?;
        *session = next;
        let snapshot = Arc::new(Snapshot::of(&session));
        *slot.published.write() = snapshot.clone();
        Ok(CommandOutcome { view: snapshot.view.clone(), events })
    }

    pub fn hint(&self, id: &str) -> Result<Hint, SessionError> {
        self.slot(id)?.writer.lock().hint()
    }

    pub fn list(&self) -> Vec<SessionSummary> {
        let mut out: Vec<SessionSummary> = self
            .sessions
            .read()
            .values()
            .map(|slot| {
                let snap = slot.published.read().clone();
                SessionSummary {
                    session_id: snap.view.session_id.clone(),
                    status: snap.view.status,
                    last_sequence: snap.view.last_sequence,
                }
            })
            .collect();
        out.sort_by(|a, b| a.session_id.cmp(&b.session_id));
        out
    }
}

fn slot(session: Session) -> Slot {
    let snapshot = Arc::new(Snapshot::of(&session));
    Slot { writer: Mutex::new(session), published: RwLock::new(snapshot) }
}

/// Reads and replays one session log file.
pub fn load_log(path: &Path) -> Result<Session, SessionError> {
    let text = fs::read_to_string(path)?;
    let events = parse_event_log(&text)?;
    Ok(session_replay(&events)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::session::Command;

    #[test]
    fn persisted_sessions_reload() {
        let dir = tempfile::tempdir().unwrap();
        let store = SessionStore::open(dir.path()).unwrap();
        let created = store
            .create(&CreateSession {
                attacker: Some("greedy".into()),
                defender: Some("random".into()),
                ..Default::default()
            })
            .unwrap();
        let id = created.view.session_id.clone();
        for _ in 0..6 {
            store.command(&id, &Command::RequestAiMove.into()).unwrap();
        }
        let before = store.snapshot(&id).unwrap();
        let reopened = SessionStore::open(dir.path()).unwrap();
        let after = reopened.snapshot(&id).unwrap();
        assert_eq!(after.events, before.events);
        assert_eq!(after.view, before.view);
    }

    #[test]
    fn unknown_session() {
        let store = SessionStore::in_memory();
        assert!(matches!(store.snapshot("nope"), Err(SessionError::UnknownSession(_))));
    }

    #[test]
    fn since_is_inclusive() {
        let store = SessionStore::in_memory();
        let id = store.create(&CreateSession::default()).unwrap().view.session_id;
        store.command(&id, &Command::RequestAiMove.into()).unwrap();
        let snap = store.snapshot(&id).unwrap();
        assert_eq!(snap.events_since(1).len(), 1);
        assert_eq!(snap.events_since(1)[0].sequence, 1);
        assert!(snap.events_since(99).is_empty());
    }
}
