//! The `nusus` command: corpus administration and batch analysis.
//!
//! Exit codes: 0 on success, 1 when the request fails for a domain reason
//! (unknown document, no matching text, unannotated words), 2 on usage
//! errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use nusus::corpus::{
    annotate_raw, AutoAnnotation, CorpusStore, DocumentMetadata, IngestOutcome, LanguageVariant, PendingToken,
    SentenceKind,
};
use nusus::exercises::{generate, generate_any, ExerciseKind, GenParams};
use nusus::facets::{FacetOutcome, PedagogicalContext};
use nusus::morphology::{CliticInventory, Lexicon};
use nusus::{AnnotatedDocument, DocId};
use nusus_service::{context_from_fields, facet_vector, search_hits, Service};
use serde::Serialize;

pub const EXIT_OK: u8 = 0;
pub const EXIT_DOMAIN: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "nusus", version, about = "Pedagogically indexed Arabic text corpus")]
pub struct Cli {
    /// Corpus directory.
    #[arg(long, global = true, env = "NUSUS_CORPUS", default_value = "corpus")]
    pub corpus: PathBuf,
    /// Seed for exercise generation.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Print JSON instead of tables.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Default, Clone)]
pub struct ContextArgs {
    /// conjugation, grammar or mixed.
    #[arg(long)]
    pub objective: Option<String>,
    /// Student level; needs a word list in <corpus>/levels.
    #[arg(long)]
    pub level: Option<String>,
    /// 1, 2 or 3.
    #[arg(long)]
    pub difficulty: Option<String>,
    /// cloze_wordbank, cloze_select, role_mcq, extraction or any.
    #[arg(long)]
    pub category: Option<String>,
}

impl ContextArgs {
    fn context(&self) -> Result<PedagogicalContext, Failure> {
        context_from_fields(
            self.objective.as_deref(),
            self.level.as_deref(),
            self.difficulty.as_deref(),
            self.category.as_deref(),
        )
        .map_err(Failure::Usage)
    }
}

#[derive(Debug, Args, Default, Clone)]
pub struct MetadataArgs {
    #[arg(long)]
    pub title: Option<String>,
    #[arg(long)]
    pub author: Option<String>,
    #[arg(long)]
    pub level: Option<String>,
    /// native or foreign.
    #[arg(long)]
    pub variant: Option<String>,
    #[arg(long)]
    pub source: Option<String>,
}

impl MetadataArgs {
    fn metadata(&self) -> Result<DocumentMetadata, Failure> {
        let language_variant = match &self.variant {
            Some(v) => Some(v.parse::<LanguageVariant>().map_err(Failure::Usage)?),
            None => None,
        };
        Ok(DocumentMetadata {
            title: self.title.clone().unwrap_or_default(),
            author: self.author.clone().unwrap_or_default(),
            level: self.level.clone().unwrap_or_default(),
            source: self.source.clone(),
            language_variant,
            ..Default::default()
        })
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Add a text file (raw UTF-8 text, or an annotated document with
    /// --annotated).
    Add {
        file: PathBuf,
        #[arg(long)]
        annotated: bool,
        #[command(flatten)]
        metadata: MetadataArgs,
    },
    /// Report the words of a text file that need manual annotation. With
    /// --resolve, first add the entries of a lexicon TSV to the corpus.
    Annotate {
        file: PathBuf,
        #[arg(long)]
        resolve: Option<PathBuf>,
    },
    /// Rank the texts matching a pedagogical context.
    Search {
        #[command(flatten)]
        context: ContextArgs,
    },
    /// Print the facet vector of a stored text.
    Facets {
        id: String,
        #[command(flatten)]
        context: ContextArgs,
    },
    /// Generate an exercise (with answer keys) from a stored text.
    Gen {
        id: String,
        /// Exercise kind; the first kind with material when omitted.
        #[arg(long)]
        kind: Option<String>,
    },
    /// Corpus counts.
    Stats,
    /// Run the HTTP service.
    Serve {
        #[arg(long, default_value = "127.0.0.1:8080")]
        addr: SocketAddr,
    },
}

#[derive(Debug)]
enum Failure {
    Usage(String),
    Domain(String),
}

impl<E: std::error::Error> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Domain(e.to_string())
    }
}

/// Parses `args` and runs the command, writing results to `out` and
/// diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_USAGE
        }
        Err(Failure::Domain(m)) => {
            let _ = writeln!(err, "error: {m}");
            EXIT_DOMAIN
        }
    }
}

fn emit<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    writeln!(out, "{}", serde_json::to_string(value).map_err(|e| Failure::Domain(e.to_string()))?)?;
    Ok(())
}

fn open(dir: &Path) -> Result<CorpusStore, Failure> {
    Ok(CorpusStore::open(dir)?)
}

fn pending_lines(out: &mut dyn Write, tokens: &[PendingToken]) -> Result<(), Failure> {
    writeln!(out, "{} word(s) need manual annotation:", tokens.len())?;
    for t in tokens {
        writeln!(out, "  token {:>4}  {}", t.index, t.surface)?;
    }
    Ok(())
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<u8, Failure> {
    match &cli.command {
        Command::Add { file, annotated, metadata } => {
            let store = open(&cli.corpus)?;
            let text = fs::read_to_string(file)?;
            let outcome = if *annotated {
                let doc: AnnotatedDocument =
                    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
                IngestOutcome::Stored(store.ingest_annotated(doc, store.profile())?)
            } else {
                store.ingest_text(&text, metadata.metadata()?)?
            };
            if cli.json {
                emit(out, &outcome)?;
            }
            match outcome {
                IngestOutcome::Stored(id) => {
                    if !cli.json {
                        writeln!(out, "stored {id}")?;
                    }
                    Ok(EXIT_OK)
                }
                IngestOutcome::Pending(p) => {
                    if !cli.json {
                        pending_lines(out, &p.tokens)?;
                    }
                    Ok(EXIT_DOMAIN)
                }
            }
        }
        Command::Annotate { file, resolve } => {
            let store = open(&cli.corpus)?;
            if let Some(path) = resolve {
                let extra = Lexicon::load(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
                store.extend_lexicon(extra)?;
            }
            let text = fs::read_to_string(file)?;
            match annotate_raw(&text, DocumentMetadata::default(), &store.lexicon(), &CliticInventory::default()) {
                AutoAnnotation::Complete(doc) => {
                    if cli.json {
                        emit(out, &doc)?;
                    } else {
                        writeln!(out, "all {} words analyzed, {} sentence(s)", doc.word_count, doc.sentences.len())?;
                    }
                    Ok(EXIT_OK)
                }
                AutoAnnotation::Pending(p) => {
                    if cli.json {
                        emit(out, &p)?;
                    } else {
                        pending_lines(out, &p.tokens)?;
                    }
                    Ok(EXIT_DOMAIN)
                }
            }
        }
        Command::Search { context } => {
            let store = open(&cli.corpus)?;
            let hits = search_hits(&store, &context.context()?).map_err(|e| Failure::Domain(e.to_string()))?;
            if cli.json {
                emit(out, &hits)?;
            } else {
                writeln!(out, "{:<16} {:>5} {:>5} {:>4}  {:<40} kinds", "id", "lines", "words", "diff", "title")?;
                for h in &hits {
                    let kinds: Vec<&str> = h.exercise_kinds.iter().map(|k| k.label()).collect();
                    writeln!(
                        out,
                        "{:<16} {:>5} {:>5} {:>4}  {:<40} {}",
                        h.summary.id,
                        h.summary.line_count,
                        h.summary.word_count,
                        h.difficulty.get(),
                        h.summary.metadata.title,
                        kinds.join(",")
                    )?;
                }
            }
            Ok(if hits.is_empty() { EXIT_DOMAIN } else { EXIT_OK })
        }
        Command::Facets { id, context } => {
            let store = open(&cli.corpus)?;
            let doc = store.get(&DocId::new(id.as_str()))?;
            let facets = facet_vector(&store, &doc, &context.context()?);
            if cli.json {
                emit(out, &facets)?;
            } else {
                for f in &facets {
                    let shown = match &f.value {
                        FacetOutcome::Value(v) => serde_json::to_string(v).unwrap_or_default(),
                        FacetOutcome::Error { error } => format!("error: {error}"),
                    };
                    writeln!(out, "{:<26} {shown}", f.prism)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Gen { id, kind } => {
            let store = open(&cli.corpus)?;
            let doc = store.get(&DocId::new(id.as_str()))?;
            let params = GenParams::default().with_seed(cli.seed);
            let ex = match kind {
                Some(k) => generate(&doc, k.parse::<ExerciseKind>().map_err(Failure::Usage)?, &params)?,
                None => generate_any(&doc, None, &params)?,
            };
            if cli.json {
                emit(out, &ex)?;
            } else {
                writeln!(out, "{} exercise {} from {}", ex.kind, ex.id, ex.doc_id)?;
                writeln!(out, "{}", ex.rendered_text)?;
                if let Some(bank) = &ex.word_bank {
                    writeln!(out, "word bank: {}", bank.join(" - "))?;
                }
                for (i, item) in ex.items.iter().enumerate() {
                    let options = item.options.as_ref().map(|o| format!("  [{}]", o.join(" | "))).unwrap_or_default();
                    writeln!(out, "  {i}: {}{options}", item.answer_key)?;
                }
            }
            Ok(EXIT_OK)
        }
        Command::Stats => {
            let store = open(&cli.corpus)?;
            let stats = Stats::collect(&store)?;
            if cli.json {
                emit(out, &stats)?;
            } else {
                writeln!(out, "documents  {}", stats.documents)?;
                writeln!(out, "tokens     {}", stats.tokens)?;
                writeln!(out, "words      {}", stats.words)?;
                writeln!(out, "lines      {}", stats.lines)?;
                writeln!(out, "nominal    {}", stats.nominal_sentences)?;
                writeln!(out, "verbal     {}", stats.verbal_sentences)?;
                writeln!(out, "pro-drop   {}", stats.pro_drop)?;
            }
            Ok(EXIT_OK)
        }
        Command::Serve { addr } => {
            let service = Arc::new(Service::open(&cli.corpus).map_err(|e| Failure::Domain(e.to_string()))?);
            let runtime = tokio::runtime::Runtime::new()?;
            writeln!(out, "listening on http://{addr}")?;
            runtime.block_on(nusus_service::serve(service, *addr))?;
            Ok(EXIT_OK)
        }
    }
}

#[derive(Debug, Default, Serialize)]
pub struct Stats {
    pub documents: usize,
    pub tokens: usize,
    pub words: usize,
    pub lines: usize,
    pub nominal_sentences: usize,
    pub verbal_sentences: usize,
    pub pro_drop: usize,
}

impl Stats {
    fn collect(store: &CorpusStore) -> Result<Self, Failure> {
        let mut s = Stats::default();
        for id in store.manifest()?.docs.keys() {
            let doc = store.get(id)?;
            s.documents += 1;
            s.tokens += doc.tokens.len();
            s.words += doc.word_count;
            s.lines += doc.line_count;
            for sentence in &doc.sentences {
                match sentence.kind {
                    SentenceKind::Nominal => s.nominal_sentences += 1,
                    SentenceKind::Verbal => {
                        s.verbal_sentences += 1;
                        if nusus::corpus::detect_pro_drop(sentence).unwrap_or(false) {
                            s.pro_drop += 1;
                        }
                    }
                }
            }
        }
        Ok(s)
    }
}
