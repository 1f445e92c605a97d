use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex, MutexGuard, RwLock};
use std::time::{Duration, SystemTime};

use serde::{Deserialize, Serialize};

use super::{
    annotate_raw, validate_metadata, AnnotatedDocument, ApplicationProfile, AutoAnnotation, CorpusError, DocId,
    DocumentMetadata, PendingAnnotation,
};
use crate::facets::{cache_entries, cache_key, FacetOutcome, LevelWordLists, PedagogicalContext, PrismRegistry};
use crate::morphology::{CliticInventory, Lexicon};

const MANIFEST: &str = "manifest.json";
const DOCS_DIR: &str = "docs";
const LEVELS_DIR: &str = "levels";
const LEXICON: &str = "lexicon.tsv";
const PROFILE: &str = "profile.json";
const LOCK: &str = ".lock";
const STALE_LOCK: Duration = Duration::from_secs(30);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DocSummary {
    pub id: DocId,
    pub metadata: DocumentMetadata,
    pub line_count: usize,
    pub word_count: usize,
}

impl DocSummary {
    pub fn of(doc: &AnnotatedDocument) -> Self {
        DocSummary {
            id: doc.id.clone(),
            metadata: doc.metadata.clone(),
            line_count: doc.line_count,
            word_count: doc.word_count,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub file: String,
    pub summary: DocSummary,
    /// Cached facet values keyed by prism name, or `name@context` for
    /// context-dependent prisms.
    #[serde(default)]
    pub facets: BTreeMap<String, FacetOutcome>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Manifest {
    pub v: u32,
    pub next_seq: u64,
    pub docs: BTreeMap<DocId, ManifestEntry>,
}

impl Default for Manifest {
    fn default() -> Self {
        Manifest { v: 1, next_seq: 1, docs: BTreeMap::new() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IngestOutcome {
    Stored(DocId),
    Pending(PendingAnnotation),
}

/// Metadata equality constraints; an empty filter matches every document.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetadataFilter {
    pub fields: BTreeMap<String, String>,
}

impl MetadataFilter {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, field: &str, value: &str) -> Self {
        self.fields.insert(field.to_owned(), value.to_owned());
        self
    }

    pub fn matches(&self, md: &DocumentMetadata) -> bool {
        self.fields.iter().all(|(k, v)| md.field(k) == *v)
    }
}

static TMP_SEQ: AtomicU64 = AtomicU64::new(0);

/// Writes `bytes` to `path` through a temporary sibling and a rename.
fn write_atomic(path: &Path, bytes: &[u8]) -> io::Result<()> {
    let dir = path.parent().unwrap_or(Path::new("."));
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("file");
    let tmp = dir.join(format!(".{name}.{}.{}.tmp", std::process::id(), TMP_SEQ.fetch_add(1, Ordering::Relaxed)));
    let result = (|| {
        let mut f = fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
        fs::rename(&tmp, path)
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

/// Cross-process writer lock, released on drop.
struct FileLock(PathBuf);

impl FileLock {
    fn acquire(path: PathBuf) -> Result<Self, CorpusError> {
        for _ in 0..2 {
            match OpenOptions::new().write(true).create_new(true).open(&path) {
                Ok(mut f) => {
                    let _ = writeln!(f, "{}", std::process::id());
                    return Ok(FileLock(path));
                }
                Err(e) if e.kind() == io::ErrorKind::AlreadyExists => {
                    let stale = fs::metadata(&path)
                        .and_then(|m| m.modified())
                        .ok()
                        .and_then(|t| SystemTime::now().duration_since(t).ok())
                        .is_some_and(|age| age > STALE_LOCK);
                    if !stale {
                        return Err(CorpusError::Locked);
                    }
                    let _ = fs::remove_file(&path);
                }
                Err(e) => return Err(e.into()),
            }
        }
        Err(CorpusError::Locked)
    }
}

impl Drop for FileLock {
    fn drop(&mut self) {
        let _ = fs::remove_file(&self.0);
    }
}

struct WriteGuard<'a> {
    _file: FileLock,
    _mem: MutexGuard<'a, ()>,
}

/// A directory of annotated documents with a manifest carrying summaries and
/// cached facet values.
///
/// Layout: `manifest.json`, `docs/<id>.json`, `levels/<level>.txt`, and the
/// optional `lexicon.tsv` and `profile.json`. Without a `lexicon.tsv` the
/// store starts from the shipped starter lexicon.
pub struct CorpusStore {
    root: PathBuf,
    profile: ApplicationProfile,
    levels: Arc<LevelWordLists>,
    registry: PrismRegistry,
    lexicon: RwLock<Lexicon>,
    inventory: CliticInventory,
    writer: Mutex<()>,
}

impl std::fmt::Debug for CorpusStore {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CorpusStore").field("root", &self.root).finish_non_exhaustive()
    }
}

impl CorpusStore {
    /// Opens (creating if needed) the store at `root` with the built-in
    /// prisms.
    pub fn open(root: impl Into<PathBuf>) -> Result<Self, CorpusError> {
        let root = root.into();
        let levels = Arc::new(LevelWordLists::load_dir(&root.join(LEVELS_DIR))?);
        let registry = PrismRegistry::builtin(levels.clone());
        Self::open_with(root, levels, registry)
    }

    pub fn open_with(
        root: impl Into<PathBuf>,
        levels: Arc<LevelWordLists>,
        registry: PrismRegistry,
    ) -> Result<Self, CorpusError> {
        let root = root.into();
        fs::create_dir_all(root.join(DOCS_DIR))?;
        let profile = match fs::read_to_string(root.join(PROFILE)) {
            Ok(s) => serde_json::from_str(&s)?,
            Err(e) if e.kind() == io::ErrorKind::NotFound => ApplicationProfile::default(),
            Err(e) => return Err(e.into()),
        };
        let lexicon_path = root.join(LEXICON);
        let lexicon = if lexicon_path.exists() {
            Lexicon::load(&lexicon_path).map_err(|e| CorpusError::InvalidRequest(format!("{LEXICON}: {e}")))?
        } else {
            Lexicon::starter()
        };
        let store = CorpusStore {
            root,
            profile,
            levels,
            registry,
            lexicon: RwLock::new(lexicon),
            inventory: CliticInventory::default(),
            writer: Mutex::new(()),
        };
        if !store.root.join(MANIFEST).exists() {
            let _w = store.lock()?;
            store.write_manifest(&Manifest::default())?;
        }
        Ok(store)
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn profile(&self) -> &ApplicationProfile {
        &self.profile
    }

    pub fn registry(&self) -> &PrismRegistry {
        &self.registry
    }

    pub fn levels(&self) -> &LevelWordLists {
        &self.levels
    }

    pub fn lexicon(&self) -> Lexicon {
        self.lexicon.read().unwrap_or_else(|e| e.into_inner()).clone()
    }

    /// Adds entries to the store lexicon and persists it.
    pub fn extend_lexicon(&self, extra: Lexicon) -> Result<(), CorpusError> {
        let _w = self.lock()?;
        let mut lex = self.lexicon.write().unwrap_or_else(|e| e.into_inner());
        let mut merged = lex.clone();
        merged.merge(extra);
        write_atomic(&self.root.join(LEXICON), merged.to_tsv().as_bytes())?;
        *lex = merged;
        Ok(())
    }

    fn lock(&self) -> Result<WriteGuard<'_>, CorpusError> {
        let mem = self.writer.lock().unwrap_or_else(|e| e.into_inner());
        let file = FileLock::acquire(self.root.join(LOCK))?;
        Ok(WriteGuard { _file: file, _mem: mem })
    }

    /// Current manifest, read from disk.
    pub fn manifest(&self) -> Result<Manifest, CorpusError> {
        let bytes = fs::read(self.root.join(MANIFEST))?;
        Ok(serde_json::from_slice(&bytes)?)
    }

    fn write_manifest(&self, m: &Manifest) -> Result<(), CorpusError> {
        write_atomic(&self.root.join(MANIFEST), &serde_json::to_vec_pretty(m)?)?;
        Ok(())
    }

    fn doc_path(&self, file: &str) -> PathBuf {
        self.root.join(DOCS_DIR).join(file)
    }

    fn check(&self, doc: &AnnotatedDocument, profile: &ApplicationProfile) -> Result<(), CorpusError> {
        let report = validate_metadata(&doc.metadata, profile);
        if !report.is_ok() {
            return Err(CorpusError::Rejected(report));
        }
        if doc.tokens.is_empty() {
            return Err(CorpusError::EmptyDocument);
        }
        doc.validate()?;
        Ok(())
    }

    /// Stores a manually annotated document. Its id is kept when given and
    /// free; otherwise a new one is assigned.
    pub fn ingest_annotated(
        &self,
        mut doc: AnnotatedDocument,
        profile: &ApplicationProfile,
    ) -> Result<DocId, CorpusError> {
        doc.refresh_counts();
        self.check(&doc, profile)?;
        let _w = self.lock()?;
        let mut manifest = self.manifest()?;
        if doc.id.is_empty() {
            loop {
                let id = DocId::new(format!("doc-{:06}", manifest.next_seq));
                manifest.next_seq += 1;
                if !manifest.docs.contains_key(&id) {
                    doc.id = id;
                    break;
                }
            }
        } else if !doc.id.is_valid() {
            return Err(CorpusError::InvalidRequest(format!("invalid document id {:?}", doc.id.as_str())));
        } else if manifest.docs.contains_key(&doc.id) {
            return Err(CorpusError::InvalidRequest(format!("document id {} already exists", doc.id)));
        }
        self.write_entry(&mut manifest, &doc, false)?;
        Ok(doc.id)
    }

    /// Auto-annotates and stores raw text, or reports the words that need
    /// manual annotation. Nothing is stored in the latter case.
    pub fn ingest_raw(
        &self,
        text: &str,
        metadata: DocumentMetadata,
        lexicon: &Lexicon,
        profile: &ApplicationProfile,
    ) -> Result<IngestOutcome, CorpusError> {
        let report = validate_metadata(&metadata, profile);
        if !report.is_ok() {
            return Err(CorpusError::Rejected(report));
        }
        if text.trim().is_empty() {
            return Err(CorpusError::EmptyDocument);
        }
        match annotate_raw(text, metadata, lexicon, &self.inventory) {
            AutoAnnotation::Pending(p) => Ok(IngestOutcome::Pending(p)),
            AutoAnnotation::Complete(doc) => self.ingest_annotated(doc, profile).map(IngestOutcome::Stored),
        }
    }

    /// Raw ingestion against the store's own lexicon and profile.
    pub fn ingest_text(&self, text: &str, metadata: DocumentMetadata) -> Result<IngestOutcome, CorpusError> {
        let lexicon = self.lexicon();
        self.ingest_raw(text, metadata, &lexicon, &self.profile)
    }

    /// Replaces a stored document and recomputes its facets.
    pub fn replace(
        &self,
        id: &DocId,
        mut doc: AnnotatedDocument,
        profile: &ApplicationProfile,
    ) -> Result<(), CorpusError> {
        doc.id = id.clone();
        doc.refresh_counts();
        self.check(&doc, profile)?;
        let _w = self.lock()?;
        let mut manifest = self.manifest()?;
        if !manifest.docs.contains_key(id) {
            return Err(CorpusError::NotFound(id.clone()));
        }
        self.write_entry(&mut manifest, &doc, true)
    }

    fn write_entry(&self, manifest: &mut Manifest, doc: &AnnotatedDocument, replacing: bool) -> Result<(), CorpusError> {
        let file = format!("{}.json", doc.id);
        let path = self.doc_path(&file);
        let previous = if replacing { fs::read(&path).ok() } else { None };
        write_atomic(&path, &serde_json::to_vec_pretty(doc)?)?;
        manifest.docs.insert(
            doc.id.clone(),
            ManifestEntry { file, summary: DocSummary::of(doc), facets: cache_entries(&self.registry, doc) },
        );
        if let Err(e) = self.write_manifest(manifest) {
            match previous {
                Some(bytes) => {
                    let _ = write_atomic(&path, &bytes);
                }
                None => {
                    let _ = fs::remove_file(&path);
                }
            }
            return Err(e);
        }
        Ok(())
    }

    pub fn get(&self, id: &DocId) -> Result<AnnotatedDocument, CorpusError> {
        let manifest = self.manifest()?;
        let entry = manifest.docs.get(id).ok_or_else(|| CorpusError::NotFound(id.clone()))?;
        self.load(entry)
    }

    fn load(&self, entry: &ManifestEntry) -> Result<AnnotatedDocument, CorpusError> {
        let bytes = fs::read(self.doc_path(&entry.file))?;
        Ok(serde_json::from_slice(&bytes)?)
    }

    pub fn list(&self, filter: &MetadataFilter) -> Result<Vec<DocId>, CorpusError> {
        Ok(self
            .manifest()?
            .docs
            .into_iter()
            .filter(|(_, e)| filter.matches(&e.summary.metadata))
            .map(|(id, _)| id)
            .collect())
    }

    pub fn summaries(&self) -> Result<Vec<DocSummary>, CorpusError> {
        Ok(self.manifest()?.docs.into_values().map(|e| e.summary).collect())
    }

    pub fn remove(&self, id: &DocId) -> Result<(), CorpusError> {
        let _w = self.lock()?;
        let mut manifest = self.manifest()?;
        let entry = manifest.docs.remove(id).ok_or_else(|| CorpusError::NotFound(id.clone()))?;
        self.write_manifest(&manifest)?;
        match fs::remove_file(self.doc_path(&entry.file)) {
            Err(e) if e.kind() != io::ErrorKind::NotFound => Err(e.into()),
            _ => Ok(()),
        }
    }

    /// Value of `prism` for a stored document: the cached entry when the
    /// manifest has one for this context, a fresh computation otherwise.
    pub fn facet(
        &self,
        entry: &ManifestEntry,
        prism: &str,
        cp: &PedagogicalContext,
    ) -> Result<Option<FacetOutcome>, CorpusError> {
        let Some(p) = self.registry.get(prism) else { return Ok(None) };
        if let Some(v) = entry.facets.get(&cache_key(p, cp)) {
            return Ok(Some(v.clone()));
        }
        let doc = self.load(entry)?;
        Ok(Some(p.compute(&doc, cp).into()))
    }

    /// Recomputes every cached facet, e.g. after word lists changed.
    pub fn refresh_facets(&self) -> Result<(), CorpusError> {
        let _w = self.lock()?;
        let mut manifest = self.manifest()?;
        for entry in manifest.docs.values_mut() {
            let doc = self.load(entry)?;
            entry.facets = cache_entries(&self.registry, &doc);
        }
        self.write_manifest(&manifest)
    }
}
