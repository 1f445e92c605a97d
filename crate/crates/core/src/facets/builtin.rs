use std::collections::BTreeMap;
use std::sync::Arc;

use super::{Difficulty, FacetType, FacetValue, LevelWordLists, Objective, PedagogicalContext, Prism, PrismError};
use crate::corpus::{
    AnnotatedDocument, KhabarForm, MubtadaForm, SentenceAnalysis, SentenceKind, SentenceRole, SubjectForm,
};
use crate::exercises::{ClosedClasses, ExtractionCategory};
use crate::morphology::{Major, RootClass, Sub, Tense};

fn bump(m: &mut BTreeMap<String, u64>, key: impl Into<String>) {
    *m.entry(key.into()).or_insert(0) += 1;
}

/// Number of non-empty lines.
pub struct LengthPrism;

impl Prism for LengthPrism {
    fn name(&self) -> &str {
        "length"
    }
    fn facet_type(&self) -> FacetType {
        FacetType::Integer
    }
    fn compute(&self, doc: &AnnotatedDocument, _: &PedagogicalContext) -> Result<FacetValue, PrismError> {
        Ok(FacetValue::Integer(doc.line_count as i64))
    }
}

pub struct WordCountPrism;

impl Prism for WordCountPrism {
    fn name(&self) -> &str {
        "word_count"
    }
    fn facet_type(&self) -> FacetType {
        FacetType::Integer
    }
    fn compute(&self, doc: &AnnotatedDocument, _: &PedagogicalContext) -> Result<FacetValue, PrismError> {
        Ok(FacetValue::Integer(doc.word_count as i64))
    }
}

/// Counts of the elements the teaching objective is about: verb tense, baab
/// and root class for conjugation; word classes and sentence constituent
/// forms for grammar; both for mixed.
pub struct RepresentativeElementsPrism;

fn verb_features(doc: &AnnotatedDocument, out: &mut BTreeMap<String, u64>) {
    for t in doc.words().filter(|t| t.tag.major() == Major::Verb) {
        let f = &t.segmentation.base_features;
        let tense = f.tense.or(match t.tag.sub() {
            Some(Sub::Past) => Some(Tense::Past),
            Some(Sub::Present) => Some(Tense::Present),
            Some(Sub::Imperative) => Some(Tense::Imperative),
            _ => None,
        });
        if let Some(tense) = tense {
            bump(out, format!("verb.{}", tense.label()));
        }
        if let Some(baab) = f.baab {
            bump(out, format!("verb.baab.{}", baab.id()));
        }
        if let Some(class) = f.root_class {
            bump(out, format!("verb.{}", class.label()));
        }
    }
}

fn grammar_features(doc: &AnnotatedDocument, out: &mut BTreeMap<String, u64>) {
    for t in doc.words() {
        bump(out, format!("pos.{}", t.tag.major().label()));
    }
    for s in &doc.sentences {
        if let Some(m) = s.mubtada_form {
            bump(out, format!("mubtada.{}", m.label()));
        }
        if let Some(k) = s.khabar_form {
            bump(out, format!("khabar.{}", k.label()));
        }
        if let Some(sf) = s.subject_form {
            bump(out, format!("subject.{}", sf.label()));
        }
    }
}

impl Prism for RepresentativeElementsPrism {
    fn name(&self) -> &str {
        "representative_elements"
    }
    fn facet_type(&self) -> FacetType {
        FacetType::ValueSet
    }
    fn context_key(&self, cp: &PedagogicalContext) -> Option<String> {
        Some(cp.objective.label().to_owned())
    }
    fn cached_contexts(&self) -> Vec<PedagogicalContext> {
        Objective::ALL.iter().map(|o| PedagogicalContext::default().with_objective(*o)).collect()
    }
    fn compute(&self, doc: &AnnotatedDocument, cp: &PedagogicalContext) -> Result<FacetValue, PrismError> {
        let mut out = BTreeMap::new();
        if cp.objective != Objective::Grammar {
            verb_features(doc, &mut out);
        }
        if cp.objective != Objective::Conjugation {
            grammar_features(doc, &mut out);
        }
        Ok(FacetValue::Set(out))
    }
}

/// Share of words missing from the student level's known-word list. A word
/// is known when either its full form or its base is listed.
pub struct UnknownVocabularyPrism {
    lists: Arc<LevelWordLists>,
}

impl UnknownVocabularyPrism {
    pub fn new(lists: Arc<LevelWordLists>) -> Self {
        UnknownVocabularyPrism { lists }
    }
}

impl Prism for UnknownVocabularyPrism {
    fn name(&self) -> &str {
        "unknown_vocabulary"
    }
    fn facet_type(&self) -> FacetType {
        FacetType::Fraction
    }
    fn context_key(&self, cp: &PedagogicalContext) -> Option<String> {
        let level = cp.student_level.as_deref().unwrap_or("");
        let digest = self.lists.digest(level).unwrap_or_default();
        Some(format!("{level}#{digest}"))
    }
    fn cached_contexts(&self) -> Vec<PedagogicalContext> {
        self.lists.levels().map(|l| PedagogicalContext::default().with_level(l)).collect()
    }
    fn compute(&self, doc: &AnnotatedDocument, cp: &PedagogicalContext) -> Result<FacetValue, PrismError> {
        let level = cp.student_level.as_deref().ok_or(PrismError::MissingContext("student_level"))?;
        let known = self.lists.get(level).ok_or_else(|| PrismError::MissingWordList(level.to_owned()))?;
        let (mut total, mut unknown) = (0u64, 0u64);
        for t in doc.words() {
            total += 1;
            if !known.contains(t.skeleton.as_str()) && !known.contains(t.segmentation.base.as_str()) {
                unknown += 1;
            }
        }
        Ok(FacetValue::Fraction(if total == 0 { 0.0 } else { unknown as f64 / total as f64 }))
    }
}

/// True when a verbal sentence has a token annotated as verb, subject or
/// object.
pub fn has_core_roles(doc: &AnnotatedDocument, s: &SentenceAnalysis) -> bool {
    s.kind == SentenceKind::Verbal
        && doc.sentence_tokens(s).iter().any(|t| {
            matches!(t.sentence_role, Some(SentenceRole::Verb | SentenceRole::Subject | SentenceRole::Object))
        })
}

/// Counts of nominal and verbal sentences, pro-drop sentences, and verbal
/// sentences carrying role annotations.
pub struct SentenceTypePrism;

impl Prism for SentenceTypePrism {
    fn name(&self) -> &str {
        "sentence_type"
    }
    fn facet_type(&self) -> FacetType {
        FacetType::ValueSet
    }
    fn compute(&self, doc: &AnnotatedDocument, _: &PedagogicalContext) -> Result<FacetValue, PrismError> {
        let mut out: BTreeMap<String, u64> =
            ["nominal", "verbal", "pro_drop", "verbal_with_roles"].iter().map(|k| ((*k).to_owned(), 0)).collect();
        for s in &doc.sentences {
            match s.kind {
                SentenceKind::Nominal => bump(&mut out, "nominal"),
                SentenceKind::Verbal => {
                    bump(&mut out, "verbal");
                    if s.subject_form == Some(SubjectForm::DhamirMostatir) {
                        bump(&mut out, "pro_drop");
                    }
                    if has_core_roles(doc, s) {
                        bump(&mut out, "verbal_with_roles");
                    }
                }
            }
        }
        Ok(FacetValue::Set(out))
    }
}

/// Root class counts among verb tokens; verbs of unknown root count as
/// `unknown`.
pub struct VerbClassPrism;

impl Prism for VerbClassPrism {
    fn name(&self) -> &str {
        "verb_class"
    }
    fn facet_type(&self) -> FacetType {
        FacetType::ValueSet
    }
    fn compute(&self, doc: &AnnotatedDocument, _: &PedagogicalContext) -> Result<FacetValue, PrismError> {
        let mut out = BTreeMap::new();
        for t in doc.words().filter(|t| t.tag.major() == Major::Verb) {
            bump(&mut out, t.segmentation.base_features.root_class.map_or("unknown", |c| c.label()));
        }
        Ok(FacetValue::Set(out))
    }
}

pub fn sentence_score(doc: &AnnotatedDocument, s: &SentenceAnalysis) -> u8 {
    let manner = doc.sentence_tokens(s).iter().any(|t| t.sentence_role == Some(SentenceRole::MannerComplement));
    if manner || matches!(s.mubtada_form, Some(MubtadaForm::MourakabTawkidi | MubtadaForm::MourakabBadali)) {
        return 3;
    }
    let composite_mubtada = !matches!(
        s.mubtada_form,
        None | Some(MubtadaForm::SimpleNoun | MubtadaForm::Pronoun | MubtadaForm::Demonstrative)
    );
    let composite_khabar = !matches!(s.khabar_form, None | Some(KhabarForm::Mofrada));
    let implicit = s.subject_form == Some(SubjectForm::DhamirMostatir);
    if composite_mubtada || composite_khabar || implicit {
        2
    } else {
        1
    }
}

pub fn verb_score(doc: &AnnotatedDocument, s: &SentenceAnalysis) -> u8 {
    doc.sentence_tokens(s)
        .iter()
        .filter(|t| t.is_word() && t.tag.major() == Major::Verb)
        .map(|t| match t.segmentation.base_features.root_class {
            Some(RootClass::Mutal(_)) => 3,
            Some(RootClass::Mahmuz) => 2,
            _ => 1,
        })
        .max()
        .unwrap_or(1)
}

/// Combined sentence-composition and verb-conjugation level, 1 to 3.
pub fn document_difficulty(doc: &AnnotatedDocument) -> Difficulty {
    let level = doc
        .sentences
        .iter()
        .map(|s| (sentence_score(doc, s) + verb_score(doc, s)).div_ceil(2).min(3))
        .max()
        .unwrap_or(1);
    Difficulty::new(level).unwrap_or(Difficulty::MIN)
}

pub struct DifficultyPrism;

impl Prism for DifficultyPrism {
    fn name(&self) -> &str {
        "difficulty"
    }
    fn facet_type(&self) -> FacetType {
        FacetType::Integer
    }
    fn compute(&self, doc: &AnnotatedDocument, _: &PedagogicalContext) -> Result<FacetValue, PrismError> {
        Ok(FacetValue::Integer(document_difficulty(doc).get().into()))
    }
}

/// Counts of the token kinds exercise generators draw on: `verb`,
/// `closed_class` (clitic-free selectable closed-class words), `extractable`
/// and one entry per closed category.
pub struct TokenCategoriesPrism;

impl Prism for TokenCategoriesPrism {
    fn name(&self) -> &str {
        "token_categories"
    }
    fn facet_type(&self) -> FacetType {
        FacetType::ValueSet
    }
    fn compute(&self, doc: &AnnotatedDocument, _: &PedagogicalContext) -> Result<FacetValue, PrismError> {
        let tables = ClosedClasses::standard();
        let mut out = BTreeMap::new();
        for t in doc.words() {
            if t.tag.major() == Major::Verb {
                bump(&mut out, "verb");
            }
            let Some(c) = tables.category_of(t) else { continue };
            bump(&mut out, c.label());
            if c.is_selectable() && t.segmentation.clitic_count() == 0 {
                bump(&mut out, "closed_class");
            }
            if ExtractionCategory::of(c).is_some() {
                bump(&mut out, "extractable");
            }
        }
        Ok(FacetValue::Set(out))
    }
}

/// A metadata element exposed as a constant facet.
pub struct MetadataPrism {
    field: &'static str,
}

impl MetadataPrism {
    pub fn new(field: &'static str) -> Self {
        MetadataPrism { field }
    }
}

impl Prism for MetadataPrism {
    fn name(&self) -> &str {
        self.field
    }
    fn facet_type(&self) -> FacetType {
        FacetType::Enumeration
    }
    fn compute(&self, doc: &AnnotatedDocument, _: &PedagogicalContext) -> Result<FacetValue, PrismError> {
        Ok(FacetValue::Label(doc.metadata.field(self.field)))
    }
}
