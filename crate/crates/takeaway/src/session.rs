//! In-memory game sessions: a human plays against the perfect-play engine.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};
use takeaway_core::classify::classify;
use takeaway_core::grundy::{engine_reply, grundy, GrundyResult, SearchConfig, SearchError, TranspositionTable};
use takeaway_core::position::{Labels, Move, Position};

use crate::instance::{document_of, instance_from_document, InstanceDocument};
use crate::report::{GrundyDocument, MoveDocument, StructureReportDocument};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mover {
    Human,
    Engine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ToMove {
    Human,
    /// The game is over.
    None,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorCode {
    IllegalMove,
    UnknownSession,
    Malformed,
    SizeBound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, thiserror::Error)]
#[error("{error_code:?}: {message}")]
pub struct ServiceError {
    pub error_code: ErrorCode,
    pub message: String,
}

impl ServiceError {
    fn new(error_code: ErrorCode, message: impl Into<String>) -> Self {
        ServiceError { error_code, message: message.into() }
    }
}

impl From<SearchError> for ServiceError {
    fn from(e: SearchError) -> Self {
        ServiceError::new(ErrorCode::SizeBound, e.to_string())
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NewGameRequest {
    pub instance: InstanceDocument,
    /// Overrides the service default.
    #[serde(default)]
    pub auto_reply: Option<bool>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NewGameResponse {
    pub session_id: String,
    pub position: InstanceDocument,
    pub structure_report: StructureReportDocument,
    pub grundy: GrundyDocument,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub mover: Mover,
    #[serde(rename = "move")]
    pub mv: MoveDocument,
}

#[derive(Clone, Debug, Serialize)]
pub struct GameStateResponse {
    pub position: InstanceDocument,
    pub history: Vec<HistoryEntry>,
    pub grundy: GrundyDocument,
    pub to_move: ToMove,
    /// Whoever removed the last vertex, once the game is over.
    pub winner: Option<Mover>,
}

#[derive(Clone, Debug, Serialize)]
pub struct MoveResponse {
    pub applied: MoveDocument,
    pub engine_reply: Option<MoveDocument>,
    pub position: InstanceDocument,
    pub grundy: GrundyDocument,
}

#[derive(Clone, Debug, Serialize)]
pub struct AdviceResponse {
    pub value: u8,
    pub winning_moves: Vec<MoveDocument>,
}

#[derive(Clone, Debug)]
pub struct GameSession {
    pub id: String,
    pub labels: Labels,
    pub initial: Position,
    pub position: Position,
    pub history: Vec<(Mover, Move)>,
    pub auto_reply: bool,
}

impl GameSession {
    /// Position obtained by replaying the history from the initial position.
    pub fn replay(&self) -> Position {
        self.history
            .iter()
            .fold(self.initial.clone(), |p, (_, m)| p.apply_move(m).expect("history holds legal moves"))
    }

    pub fn winner(&self) -> Option<Mover> {
        if self.position.is_terminal() {
            self.history.last().map(|(who, _)| *who)
        } else {
            None
        }
    }
}

/// Session store shared by all requests. Sessions are numbered in creation
/// order, so identical request sequences yield identical responses.
pub struct SessionStore {
    sessions: Mutex<HashMap<String, Arc<Mutex<GameSession>>>>,
    next_id: Mutex<u64>,
    table: Mutex<TranspositionTable>,
    cfg: SearchConfig,
    auto_reply: bool,
}

impl SessionStore {
    pub fn new(auto_reply: bool) -> Self {
        SessionStore {
            sessions: Mutex::new(HashMap::new()),
            next_id: Mutex::new(1),
            table: Mutex::new(TranspositionTable::new()),
            cfg: SearchConfig::default(),
            auto_reply,
        }
    }

    fn analyze(&self, p: &Position) -> Result<GrundyResult, ServiceError> {
        let mut table = self.table.lock().expect("table lock");
        Ok(grundy(p, &mut table, &self.cfg)?)
    }

    fn session(&self, id: &str) -> Result<Arc<Mutex<GameSession>>, ServiceError> {
        self.sessions
            .lock()
            .expect("session map lock")
            .get(id)
            .cloned()
            .ok_or_else(|| ServiceError::new(ErrorCode::UnknownSession, format!("no session {id:?}")))
    }

    pub fn create(&self, req: NewGameRequest) -> Result<NewGameResponse, ServiceError> {
        let instance =
            instance_from_document(&req.instance).map_err(|e| ServiceError::new(ErrorCode::Malformed, e.to_string()))?;
        let result = self.analyze(&instance.position)?;
        let report = classify(&instance.position);

        let id = {
            let mut next = self.next_id.lock().expect("id lock");
            let id = format!("g{}", *next);
            *next += 1;
            id
        };
        let response = NewGameResponse {
            session_id: id.clone(),
            position: document_of(&instance.labels, &instance.position),
            structure_report: StructureReportDocument::of(&instance.labels, &report),
            grundy: GrundyDocument::of(&instance.labels, &result),
        };
        let session = GameSession {
            id: id.clone(),
            labels: instance.labels,
            initial: instance.position.clone(),
            position: instance.position,
            history: Vec::new(),
            auto_reply: req.auto_reply.unwrap_or(self.auto_reply),
        };
        self.sessions.lock().expect("session map lock").insert(id, Arc::new(Mutex::new(session)));
        Ok(response)
    }

    pub fn state(&self, id: &str) -> Result<GameStateResponse, ServiceError> {
        let session = self.session(id)?;
        let s = session.lock().expect("session lock");
        let result = self.analyze(&s.position)?;
        Ok(GameStateResponse {
            position: document_of(&s.labels, &s.position),
            history: s
                .history
                .iter()
                .map(|(who, m)| HistoryEntry { mover: *who, mv: MoveDocument::of(&s.labels, m) })
                .collect(),
            grundy: GrundyDocument::of(&s.labels, &result),
            to_move: if s.position.is_terminal() { ToMove::None } else { ToMove::Human },
            winner: s.winner(),
        })
    }

    /// Applies a human move, then the engine reply when auto-reply is on.
    pub fn play(&self, id: &str, mv: &MoveDocument) -> Result<MoveResponse, ServiceError> {
        let session = self.session(id)?;
        let mut s = session.lock().expect("session lock");
        let m = mv
            .resolve(&s.labels)
            .filter(|m| s.position.is_legal(m))
            .ok_or_else(|| ServiceError::new(ErrorCode::IllegalMove, format!("{mv:?} is not legal in this position")))?;
        s.position = s.position.apply_move(&m).expect("legality checked");
        s.history.push((Mover::Human, m));

        let mut reply_doc = None;
        if s.auto_reply && !s.position.is_terminal() {
            let reply = {
                let mut table = self.table.lock().expect("table lock");
                engine_reply(&s.position, &mut table, &self.cfg)?.expect("non-terminal position has moves")
            };
            s.position = s.position.apply_move(&reply).expect("engine plays legal moves");
            s.history.push((Mover::Engine, reply));
            reply_doc = Some(MoveDocument::of(&s.labels, &reply));
        }
        let result = self.analyze(&s.position)?;
        Ok(MoveResponse {
            applied: MoveDocument::of(&s.labels, &m),
            engine_reply: reply_doc,
            position: document_of(&s.labels, &s.position),
            grundy: GrundyDocument::of(&s.labels, &result),
        })
    }

    pub fn advice(&self, id: &str) -> Result<AdviceResponse, ServiceError> {
        let session = self.session(id)?;
        let s = session.lock().expect("session lock");
        let result = self.analyze(&s.position)?;
        Ok(AdviceResponse {
            value: result.value,
            winning_moves: result.winning_moves.iter().map(|m| MoveDocument::of(&s.labels, m)).collect(),
        })
    }

    /// Snapshot of a session, for replay checks.
    pub fn snapshot(&self, id: &str) -> Result<GameSession, ServiceError> {
        Ok(self.session(id)?.lock().expect("session lock").clone())
    }
}
