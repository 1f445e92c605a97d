//! Annotated documents, application-profile metadata and the on-disk store.

mod annotate;
mod document;
mod error;
mod metadata;
mod store;

pub use annotate::{annotate_raw, split_sentences, AutoAnnotation, PendingAnnotation, PendingToken};
pub use document::{
    detect_pro_drop, AnnotatedDocument, AnnotatedToken, DocId, KhabarForm, MubtadaForm, SentenceAnalysis,
    SentenceKind, SentenceRole, SubjectForm, TokenSpan, DOCUMENT_VERSION,
};
pub use error::{AnnotationError, CorpusError};
pub use metadata::{
    validate_metadata, ApplicationProfile, DocumentMetadata, LanguageVariant, Obligation, ProfileElement,
    ValidationReport,
};
pub use store::{CorpusStore, DocSummary, IngestOutcome, Manifest, ManifestEntry, MetadataFilter};
