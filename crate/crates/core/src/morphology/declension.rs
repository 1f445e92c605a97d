use serde::{Deserialize, Serialize};

use super::{is_diacritic, GrammaticalNumber, MorphError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Case {
    #[serde(rename = "NOM", alias = "nom")]
    Nom,
    #[serde(rename = "ACC", alias = "acc")]
    Acc,
    #[serde(rename = "GEN", alias = "gen")]
    Gen,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Definiteness {
    Definite,
    Indefinite,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CaseMarking {
    pub case: Case,
    pub definiteness: Definiteness,
}

impl CaseMarking {
    pub fn new(case: Case, definiteness: Definiteness) -> Self {
        CaseMarking { case, definiteness }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PluralKind {
    SoundMasc,
    SoundFem,
    Broken,
}

/// A declinable noun with the lexical facts declension needs.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NounLemma {
    pub lemma: String,
    /// Diptote singulars never take tanwin.
    pub diptote: bool,
    pub broken_plural: Option<String>,
}

impl NounLemma {
    pub fn new(lemma: &str) -> Self {
        NounLemma { lemma: lemma.to_owned(), ..Default::default() }
    }

    pub fn diptote(mut self) -> Self {
        self.diptote = true;
        self
    }

    pub fn with_broken_plural(mut self, plural: &str) -> Self {
        self.broken_plural = Some(plural.to_owned());
        self
    }
}

const TA_MARBUTA: char = 'ة';

fn trim_final_marks(s: &str) -> &str {
    s.trim_end_matches(is_diacritic)
}

/// Short vowel or tanwin ending for singular-pattern stems (singulars,
/// broken plurals, sound feminine plurals).
fn case_ending(stem: &str, marking: CaseMarking, diptote: bool, fem_plural: bool) -> String {
    let definite = marking.definiteness == Definiteness::Definite;
    let mut out = stem.to_owned();
    match (marking.case, definite || diptote) {
        (Case::Nom, true) => out.push('\u{064F}'),
        (Case::Nom, false) => out.push('\u{064C}'),
        (Case::Acc, true) if fem_plural => out.push('\u{0650}'),
        (Case::Acc, true) => out.push('\u{064E}'),
        (Case::Acc, false) if fem_plural => out.push('\u{064D}'),
        (Case::Acc, false) => {
            out.push('\u{064B}');
            let bare = stem.trim_end_matches(is_diacritic);
            if !(bare.ends_with(TA_MARBUTA) || bare.ends_with('ى') || bare.ends_with("اء")) {
                out.push('ا');
            }
        }
        // Diptotes take fatha in the indefinite genitive.
        (Case::Gen, _) if diptote && !definite => out.push('\u{064E}'),
        (Case::Gen, true) => out.push('\u{0650}'),
        (Case::Gen, false) => out.push('\u{064D}'),
    }
    out
}

/// Dual and sound masculine plural suffixes: ان/ون in the nominative,
/// ين otherwise.
fn suffix(number: GrammaticalNumber, case: Case) -> &'static str {
    match (number, case) {
        (GrammaticalNumber::Dual, Case::Nom) => "ان",
        (GrammaticalNumber::Plural, Case::Nom) => "ون",
        _ => "ين",
    }
}

/// Inflects a noun for number and case.
pub fn decline(
    noun: &NounLemma,
    number: GrammaticalNumber,
    marking: CaseMarking,
    plural_kind: PluralKind,
) -> Result<String, MorphError> {
    let stem = trim_final_marks(&noun.lemma);
    if stem.is_empty() {
        return Err(MorphError::InvalidRequest("empty lemma".into()));
    }
    match number {
        GrammaticalNumber::Singular => Ok(case_ending(stem, marking, noun.diptote, false)),
        GrammaticalNumber::Dual => {
            let mut out = match stem.strip_suffix(TA_MARBUTA) {
                Some(s) => format!("{s}ت"),
                None => stem.to_owned(),
            };
            out.push_str(suffix(number, marking.case));
            Ok(out)
        }
        GrammaticalNumber::Plural => match plural_kind {
            PluralKind::SoundMasc => Ok(format!("{stem}{}", suffix(number, marking.case))),
            PluralKind::SoundFem => {
                let base = stem.strip_suffix(TA_MARBUTA).unwrap_or(stem);
                Ok(case_ending(&format!("{base}ات"), marking, false, true))
            }
            PluralKind::Broken => {
                let plural = noun
                    .broken_plural
                    .as_deref()
                    .ok_or_else(|| MorphError::MissingLexiconEntry(format!("broken plural of {}", noun.lemma)))?;
                Ok(case_ending(trim_final_marks(plural), marking, false, false))
            }
        },
    }
}
