//! Rule-based Arabic morphology.

mod clitics;
mod conjugation;
mod declension;
mod derivation;
mod diacritics;
mod error;
mod lexicon;
mod pos;
mod roots;
mod segment;
mod tokenize;

pub use clitics::{CliticInventory, Enclitic, Proclitic, ProcliticKind, Slot};
pub use conjugation::{conjugate, Baab, Paradigm, ParadigmRow, Subject, Tense};
pub use declension::{decline, Case, CaseMarking, Definiteness, NounLemma, PluralKind};
pub use derivation::{derive, derive_with, DerivedKind};
pub use diacritics::{is_diacritic, strip_diacritics, Skeleton};
pub use error::MorphError;
pub use lexicon::{Lexicon, LexiconEntry};
pub use pos::{Major, PosTag, Sub};
pub use roots::{classify_root, Root, RootClass, WeakPosition};
pub use segment::{
    check_agglutination, segment, segment_with, AgglutinationRules, BaseFeatures, Mood, RuleId, Segmentation, MAX_MORPHEMES,
    Transitivity, Voice,
};
pub use tokenize::{is_arabic_letter, tokenize, Token, TokenKind};

/// Grammatical person.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub enum Person {
    #[serde(rename = "1")]
    First,
    #[serde(rename = "2")]
    Second,
    #[serde(rename = "3")]
    Third,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Gender {
    Masculine,
    Feminine,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GrammaticalNumber {
    Singular,
    Dual,
    Plural,
}
