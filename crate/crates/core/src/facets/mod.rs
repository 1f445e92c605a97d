//! Prisms compute facet values of a document in a pedagogical context.

mod builtin;
mod context;
mod levels;
mod prism;

use std::sync::Arc;

pub use builtin::{
    document_difficulty, has_core_roles, sentence_score, verb_score, DifficultyPrism, LengthPrism, MetadataPrism,
    RepresentativeElementsPrism, SentenceTypePrism, TokenCategoriesPrism, UnknownVocabularyPrism, VerbClassPrism,
    WordCountPrism,
};
pub use context::{Comprehension, Difficulty, ExerciseCategory, Objective, PedagogicalContext};
pub use levels::LevelWordLists;
pub use prism::{
    cache_entries, cache_key, DuplicatePrism, Facet, FacetOutcome, FacetType, FacetValue, Prism, PrismError,
    PrismRegistry,
};

impl PrismRegistry {
    /// The built-in prisms, in a fixed order.
    pub fn builtin(levels: Arc<LevelWordLists>) -> Self {
        let mut r = PrismRegistry::new();
        let prisms: Vec<Arc<dyn Prism>> = vec![
            Arc::new(LengthPrism),
            Arc::new(WordCountPrism),
            Arc::new(RepresentativeElementsPrism),
            Arc::new(UnknownVocabularyPrism::new(levels)),
            Arc::new(SentenceTypePrism),
            Arc::new(VerbClassPrism),
            Arc::new(DifficultyPrism),
            Arc::new(TokenCategoriesPrism),
            Arc::new(MetadataPrism::new("title")),
            Arc::new(MetadataPrism::new("author")),
        ];
        for p in prisms {
            r.register_arc(p).expect("built-in prism names are distinct");
        }
        r
    }
}
