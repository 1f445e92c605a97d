use std::collections::HashMap;
use std::path::Path;
use std::sync::{Arc, Mutex, MutexGuard};

use nusus::corpus::{CorpusStore, DocId, DocSummary, IngestOutcome};
use nusus::exercises::{available_kinds, generate, generate_any, grade, Exercise, ExerciseKind, GenParams, Grade, StudentExercise, Submission};
use nusus::facets::{document_difficulty, Difficulty, ExerciseCategory, Facet, Objective, PedagogicalContext};
use nusus::search::{build_query, execute, next_from_collection, Next, RotationSession};
use nusus::AnnotatedDocument;
use rand::Rng;

use crate::accounts::{random_token, Credential, JsonTable, Session, UserAccount, MIN_CREDENTIAL_LEN};
use crate::api::{
    AddTextRequest, AddTextResponse, LoginRequest, LoginResponse, RegisterRequest, RegisterResponse, SearchHit,
    TextView,
};
use crate::{Role, ServiceError};

pub const ACCOUNTS_FILE: &str = "accounts.json";
pub const SESSIONS_FILE: &str = "sessions.json";

/// Per-token exercise loop state. Lives in memory only.
#[derive(Debug, Default)]
struct StudentState {
    context: Option<PedagogicalContext>,
    rotation: Option<RotationSession>,
    current: Option<Exercise>,
}

/// The student and teacher flows over one corpus directory. Accounts and
/// sessions are stored next to the corpus.
pub struct Service {
    store: CorpusStore,
    accounts: Mutex<JsonTable<UserAccount>>,
    sessions: Mutex<JsonTable<Session>>,
    students: Mutex<HashMap<String, Arc<Mutex<StudentState>>>>,
    dummy: Credential,
}

impl std::fmt::Debug for Service {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Service").field("store", &self.store).finish_non_exhaustive()
    }
}

fn locked<T>(m: &Mutex<T>) -> MutexGuard<'_, T> {
    m.lock().unwrap_or_else(|e| e.into_inner())
}

/// Drops a student level that has no word list in the store; such a level
/// would make the unknown-vocabulary facet fail for every text.
pub fn effective_context(store: &CorpusStore, cp: &PedagogicalContext) -> PedagogicalContext {
    let mut cp = cp.clone();
    if cp.student_level.as_deref().is_some_and(|l| store.levels().get(l).is_none()) {
        cp.student_level = None;
    }
    cp
}

/// Builds a context from optional textual fields, as given on a command
/// line or in a query string.
pub fn context_from_fields(
    objective: Option<&str>,
    level: Option<&str>,
    difficulty: Option<&str>,
    category: Option<&str>,
) -> Result<PedagogicalContext, String> {
    let mut cp = PedagogicalContext::default();
    if let Some(o) = objective {
        cp.objective = o.parse::<Objective>().map_err(|e| e.to_string())?;
    }
    if let Some(l) = level.filter(|l| !l.is_empty()) {
        cp.student_level = Some(l.to_owned());
    }
    if let Some(d) = difficulty {
        let n: u8 = d.parse().map_err(|_| format!("difficulty must be 1, 2 or 3, got {d:?}"))?;
        cp.difficulty = Difficulty::new(n).ok_or_else(|| format!("difficulty must be 1, 2 or 3, got {n}"))?;
    }
    if let Some(c) = category {
        cp.exercise_category = c.parse::<ExerciseCategory>().map_err(|e| e.to_string())?;
    }
    Ok(cp)
}

/// Ranked texts for a context, each with the exercise kinds it supports.
pub fn search_hits(store: &CorpusStore, cp: &PedagogicalContext) -> Result<Vec<SearchHit>, ServiceError> {
    let cp = effective_context(store, cp);
    let collection = execute(&build_query(&cp), &cp, store)?;
    collection
        .doc_ids
        .iter()
        .map(|id| {
            let doc = store.get(id)?;
            Ok(SearchHit {
                summary: DocSummary::of(&doc),
                difficulty: document_difficulty(&doc),
                exercise_kinds: available_kinds(&doc),
            })
        })
        .collect()
}

/// The facet vector of a document in a context.
pub fn facet_vector(store: &CorpusStore, doc: &AnnotatedDocument, cp: &PedagogicalContext) -> Vec<Facet> {
    store.registry().compute_all(doc, &effective_context(store, cp))
}

impl Service {
    pub fn open(dir: &Path) -> Result<Self, ServiceError> {
        Self::with_store(CorpusStore::open(dir)?)
    }

    pub fn with_store(store: CorpusStore) -> Result<Self, ServiceError> {
        let root = store.root().to_owned();
        Ok(Service {
            accounts: Mutex::new(JsonTable::load(&root.join(ACCOUNTS_FILE))?),
            sessions: Mutex::new(JsonTable::load(&root.join(SESSIONS_FILE))?),
            students: Mutex::new(HashMap::new()),
            dummy: Credential::new("placeholder credential"),
            store,
        })
    }

    pub fn store(&self) -> &CorpusStore {
        &self.store
    }

    pub fn register(&self, req: &RegisterRequest) -> Result<RegisterResponse, ServiceError> {
        let login = req.login.trim();
        if login.is_empty() {
            return Err(ServiceError::BadRequest("login must not be empty".into()));
        }
        if req.credential.chars().count() < MIN_CREDENTIAL_LEN {
            return Err(ServiceError::WeakCredential(format!(
                "credential must have at least {MIN_CREDENTIAL_LEN} characters"
            )));
        }
        let mut accounts = locked(&self.accounts);
        if accounts.values().any(|a| a.login == login) {
            return Err(ServiceError::Conflict(login.to_owned()));
        }
        let id = format!("u-{:06}", accounts.len() + 1);
        let account = UserAccount {
            id: id.clone(),
            role: req.role,
            login: login.to_owned(),
            credential: Credential::new(&req.credential),
            level: req.level.clone().filter(|l| !l.trim().is_empty()),
        };
        accounts.insert(id.clone(), account)?;
        Ok(RegisterResponse { id })
    }

    /// A fresh session token. Wrong login and wrong credential fail the
    /// same way.
    pub fn login(&self, req: &LoginRequest) -> Result<LoginResponse, ServiceError> {
        let account = {
            let accounts = locked(&self.accounts);
            let found = accounts.values().find(|a| a.login == req.login.trim()).cloned();
            found
        };
        let ok = match &account {
            Some(a) => a.credential.verify(&req.credential),
            None => {
                self.dummy.verify(&req.credential);
                false
            }
        };
        let Some(account) = account.filter(|_| ok) else { return Err(ServiceError::InvalidCredentials) };
        let token = random_token();
        locked(&self.sessions).insert(token.clone(), Session { user_id: account.id.clone(), role: account.role })?;
        Ok(LoginResponse { token, role: account.role })
    }

    /// The session behind `token`, provided it has `role`.
    pub fn authorize(&self, token: &str, role: Role) -> Result<Session, ServiceError> {
        let session = locked(&self.sessions).get(token).cloned().ok_or(ServiceError::Unauthorized)?;
        if session.role != role {
            return Err(ServiceError::Forbidden(match role {
                Role::Student => "student",
                Role::Teacher => "teacher",
            }));
        }
        Ok(session)
    }

    fn account(&self, id: &str) -> Option<UserAccount> {
        locked(&self.accounts).get(id).cloned()
    }

    fn student_state(&self, token: &str) -> Arc<Mutex<StudentState>> {
        locked(&self.students).entry(token.to_owned()).or_default().clone()
    }

    /// Serves an exercise from the next unseen text of the collection the
    /// context selects. A changed context starts a new rotation; after
    /// exhaustion the next request starts over.
    pub fn student_exercise(&self, token: &str, cp: &PedagogicalContext) -> Result<StudentExercise, ServiceError> {
        let session = self.authorize(token, Role::Student)?;
        let mut cp = cp.clone();
        if cp.student_level.is_none() {
            cp.student_level = self.account(&session.user_id).and_then(|a| a.level);
        }
        let cp = effective_context(&self.store, &cp);

        let state = self.student_state(token);
        let mut state = locked(&state);
        if state.context.as_ref() != Some(&cp) || state.rotation.is_none() {
            let collection = execute(&build_query(&cp), &cp, &self.store)?;
            state.context = Some(cp.clone());
            if collection.is_empty() {
                state.rotation = None;
                return Err(ServiceError::NoMatchingText);
            }
            state.rotation = Some(RotationSession::new(collection));
        }
        let kind = ExerciseKind::for_category(cp.exercise_category);
        let rotation = state.rotation.as_mut().expect("rotation set above");
        loop {
            match next_from_collection(rotation) {
                Next::Doc(id) => {
                    let doc = self.store.get(&id)?;
                    let params = GenParams::default().with_seed(rand::thread_rng().gen());
                    if let Ok(ex) = generate_any(&doc, kind, &params) {
                        let view = ex.student_view();
                        state.current = Some(ex);
                        return Ok(view);
                    }
                }
                Next::Exhausted => {
                    state.rotation = None;
                    return Err(ServiceError::CollectionExhausted);
                }
            }
        }
    }

    /// Grades a submission against the session's current exercise. The
    /// exercise stays current, so a replay gets the same grade.
    pub fn submit(&self, token: &str, sub: &Submission) -> Result<Grade, ServiceError> {
        self.authorize(token, Role::Student)?;
        let state = self.student_state(token);
        let state = locked(&state);
        let current = state
            .current
            .as_ref()
            .ok_or_else(|| ServiceError::MalformedSubmission("no exercise is in progress".into()))?;
        if current.id != sub.exercise_id {
            return Err(ServiceError::MalformedSubmission(format!(
                "exercise {} is not the current exercise",
                sub.exercise_id
            )));
        }
        Ok(grade(current, sub)?)
    }

    pub fn teacher_search(&self, token: &str, cp: &PedagogicalContext) -> Result<Vec<SearchHit>, ServiceError> {
        self.authorize(token, Role::Teacher)?;
        search_hits(&self.store, cp)
    }

    pub fn add_text(&self, token: &str, req: AddTextRequest) -> Result<AddTextResponse, ServiceError> {
        self.authorize(token, Role::Teacher)?;
        match req {
            AddTextRequest { document: Some(doc), text: None, metadata: None } => {
                let id = self.store.ingest_annotated(doc, self.store.profile())?;
                Ok(AddTextResponse::Stored { id: id.to_string() })
            }
            AddTextRequest { document: None, text: Some(text), metadata } => {
                match self.store.ingest_text(&text, metadata.unwrap_or_default())? {
                    IngestOutcome::Stored(id) => Ok(AddTextResponse::Stored { id: id.to_string() }),
                    IngestOutcome::Pending(p) => Ok(AddTextResponse::Pending { tokens: p.tokens }),
                }
            }
            _ => Err(ServiceError::BadRequest("send either a document, or text with metadata".into())),
        }
    }

    /// A stored text with its facets in `cp`, plus a preview exercise when
    /// a kind is given.
    pub fn get_text(
        &self,
        token: &str,
        id: &str,
        cp: &PedagogicalContext,
        preview: Option<(ExerciseKind, u64)>,
    ) -> Result<TextView, ServiceError> {
        self.authorize(token, Role::Teacher)?;
        let doc = self.store.get(&DocId::new(id))?;
        let facets = facet_vector(&self.store, &doc, cp);
        let exercise = match preview {
            Some((kind, seed)) => Some(generate(&doc, kind, &GenParams::default().with_seed(seed))?),
            None => None,
        };
        Ok(TextView { document: doc, facets, exercise })
    }
}
