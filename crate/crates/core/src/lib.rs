//! Pedagogically indexed Arabic text corpus.
//!
//! The crate is split along the pipeline a text goes through:
//!
//! - [`morphology`]: diacritics, tokenization, clitic segmentation, root
//!   classification and the regular inflection/derivation generators.
//! - [`corpus`]: annotated documents, application-profile metadata and the
//!   directory-backed store.
//! - [`facets`]: prisms that compute facet values of a document under a
//!   pedagogical context.
//! - [`search`]: context → query translation, conjunctive matching,
//!   shortest-first ranking and no-repeat rotation.
//! - [`exercises`]: cloze, role MCQ and extraction exercises plus grading.

pub mod corpus;
pub mod exercises;
pub mod facets;
pub mod morphology;
pub mod search;

pub use corpus::{AnnotatedDocument, CorpusStore, DocId};
pub use facets::{FacetValue, PedagogicalContext, PrismRegistry};
pub use morphology::{Lexicon, Skeleton};
