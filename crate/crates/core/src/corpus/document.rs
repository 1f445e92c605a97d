use std::fmt;

use serde::{Deserialize, Serialize};

use super::{AnnotationError, CorpusError, DocumentMetadata};
use crate::morphology::{strip_diacritics, Major, PosTag, Segmentation, Skeleton, TokenKind, Transitivity};

pub const DOCUMENT_VERSION: u32 = 1;

/// Opaque document identifier.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DocId(String);

impl DocId {
    pub fn new(s: impl Into<String>) -> Self {
        DocId(s.into())
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Safe to use as a file stem.
    pub fn is_valid(&self) -> bool {
        !self.0.is_empty() && self.0.chars().all(|c| c.is_ascii_alphanumeric() || c == '-' || c == '_')
    }
}

impl fmt::Display for DocId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for DocId {
    fn from(s: &str) -> Self {
        DocId(s.to_owned())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SentenceKind {
    Nominal,
    Verbal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SentenceRole {
    Verb,
    Subject,
    Object,
    TimeComplement,
    PlaceComplement,
    MannerComplement,
    Mubtada,
    Khabar,
}

impl SentenceRole {
    pub fn allowed_in(self, kind: SentenceKind) -> bool {
        match self {
            SentenceRole::Mubtada | SentenceRole::Khabar => kind == SentenceKind::Nominal,
            _ => kind == SentenceKind::Verbal,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            SentenceRole::Verb => "verb",
            SentenceRole::Subject => "subject",
            SentenceRole::Object => "object",
            SentenceRole::TimeComplement => "time_complement",
            SentenceRole::PlaceComplement => "place_complement",
            SentenceRole::MannerComplement => "manner_complement",
            SentenceRole::Mubtada => "mubtada",
            SentenceRole::Khabar => "khabar",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MubtadaForm {
    SimpleNoun,
    Pronoun,
    Demonstrative,
    MourakabNaati,
    MourakabIdhafi,
    MourakabBadali,
    MourakabAtfi,
    MourakabTawkidi,
    Interrogative,
    Relative,
    Masdar,
}

impl MubtadaForm {
    pub fn label(self) -> String {
        serde_json::to_value(self).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum KhabarForm {
    Mofrada,
    MourakabJar,
    MourakabIdhafi,
    MourakabAtfi,
    MourakabIsnedi,
}

impl KhabarForm {
    pub fn label(self) -> String {
        serde_json::to_value(self).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SubjectForm {
    ExplicitMoarab,
    ExplicitMabni,
    /// Implicit subject pronoun (pro-drop).
    DhamirMostatir,
}

impl SubjectForm {
    pub fn label(self) -> String {
        serde_json::to_value(self).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default()
    }
}

/// Half-open range of token indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TokenSpan {
    pub start: usize,
    pub end: usize,
}

impl TokenSpan {
    pub fn new(start: usize, end: usize) -> Self {
        TokenSpan { start, end }
    }

    pub fn range(&self) -> std::ops::Range<usize> {
        self.start..self.end
    }

    pub fn contains(&self, index: usize) -> bool {
        self.range().contains(&index)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentenceAnalysis {
    pub kind: SentenceKind,
    pub tokens: TokenSpan,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mubtada_form: Option<MubtadaForm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub khabar_form: Option<KhabarForm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub subject_form: Option<SubjectForm>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verb_transitivity: Option<Transitivity>,
}

impl SentenceAnalysis {
    pub fn nominal(tokens: TokenSpan, mubtada: MubtadaForm, khabar: KhabarForm) -> Self {
        SentenceAnalysis {
            kind: SentenceKind::Nominal,
            tokens,
            mubtada_form: Some(mubtada),
            khabar_form: Some(khabar),
            subject_form: None,
            verb_transitivity: None,
        }
    }

    pub fn verbal(tokens: TokenSpan, subject: SubjectForm) -> Self {
        SentenceAnalysis {
            kind: SentenceKind::Verbal,
            tokens,
            mubtada_form: None,
            khabar_form: None,
            subject_form: Some(subject),
            verb_transitivity: None,
        }
    }
}

/// True when a verbal sentence leaves its subject pronoun implicit.
pub fn detect_pro_drop(s: &SentenceAnalysis) -> Result<bool, CorpusError> {
    match s.kind {
        SentenceKind::Verbal => Ok(s.subject_form == Some(SubjectForm::DhamirMostatir)),
        SentenceKind::Nominal => Err(CorpusError::InvalidRequest("pro-drop applies to verbal sentences".into())),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotatedToken {
    pub surface: String,
    pub skeleton: Skeleton,
    pub kind: TokenKind,
    pub segmentation: Segmentation,
    /// Other analyses proposed by the segmenter, kept for manual review.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub alternatives: Vec<Segmentation>,
    pub tag: PosTag,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sentence_role: Option<SentenceRole>,
}

impl AnnotatedToken {
    /// A clitic-free word token.
    pub fn word(surface: &str, tag: PosTag) -> Self {
        let skeleton = strip_diacritics(surface);
        AnnotatedToken {
            surface: surface.to_owned(),
            segmentation: Segmentation::bare(skeleton.clone(), tag.major()),
            skeleton,
            kind: TokenKind::Word,
            alternatives: Vec::new(),
            tag,
            sentence_role: None,
        }
    }

    pub fn punctuation(surface: &str) -> Self {
        let skeleton = Skeleton::new(surface);
        AnnotatedToken {
            surface: surface.to_owned(),
            segmentation: Segmentation::bare(skeleton.clone(), Major::Punctuation),
            skeleton,
            kind: TokenKind::Punctuation,
            alternatives: Vec::new(),
            tag: PosTag::major_only(Major::Punctuation),
            sentence_role: None,
        }
    }

    pub fn with_role(mut self, role: SentenceRole) -> Self {
        self.sentence_role = Some(role);
        self
    }

    pub fn with_segmentation(mut self, seg: Segmentation) -> Self {
        self.segmentation = seg;
        self
    }

    pub fn is_word(&self) -> bool {
        self.kind == TokenKind::Word
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnnotatedDocument {
    pub v: u32,
    #[serde(default)]
    pub id: DocId,
    pub metadata: DocumentMetadata,
    pub raw_text: String,
    pub tokens: Vec<AnnotatedToken>,
    pub sentences: Vec<SentenceAnalysis>,
    #[serde(default)]
    pub line_count: usize,
    #[serde(default)]
    pub word_count: usize,
}

/// Non-empty lines of `text`.
pub fn count_lines(text: &str) -> usize {
    text.lines().filter(|l| !l.trim().is_empty()).count()
}

impl AnnotatedDocument {
    pub fn new(
        metadata: DocumentMetadata,
        raw_text: impl Into<String>,
        tokens: Vec<AnnotatedToken>,
        sentences: Vec<SentenceAnalysis>,
    ) -> Self {
        let mut doc = AnnotatedDocument {
            v: DOCUMENT_VERSION,
            id: DocId::default(),
            metadata,
            raw_text: raw_text.into(),
            tokens,
            sentences,
            line_count: 0,
            word_count: 0,
        };
        doc.refresh_counts();
        doc
    }

    /// Recomputes the derived line and word counts.
    pub fn refresh_counts(&mut self) {
        self.word_count = self.tokens.iter().filter(|t| t.is_word()).count();
        self.line_count = count_lines(&self.raw_text);
    }

    pub fn words(&self) -> impl Iterator<Item = &AnnotatedToken> {
        self.tokens.iter().filter(|t| t.is_word())
    }

    pub fn sentence_tokens<'a>(&'a self, s: &SentenceAnalysis) -> &'a [AnnotatedToken] {
        &self.tokens[s.tokens.range()]
    }

    /// Checks every token and sentence invariant.
    pub fn validate(&self) -> Result<(), AnnotationError> {
        for (index, t) in self.tokens.iter().enumerate() {
            if strip_diacritics(&t.surface) != t.skeleton {
                return Err(AnnotationError::SkeletonMismatch { index });
            }
            let seg_ok = |s: &Segmentation| s.surface() == t.skeleton.as_str() && s.is_well_formed();
            if !seg_ok(&t.segmentation) || !t.alternatives.iter().all(seg_ok) {
                return Err(AnnotationError::SegmentationMismatch { index });
            }
        }

        let mut prev_end = 0;
        for (index, s) in self.sentences.iter().enumerate() {
            if s.tokens.start >= s.tokens.end || s.tokens.start < prev_end || s.tokens.end > self.tokens.len() {
                return Err(AnnotationError::BadSpan { index });
            }
            prev_end = s.tokens.end;
            let form_err = |message: &str| AnnotationError::SentenceForm { index, message: message.to_owned() };
            match s.kind {
                SentenceKind::Nominal => {
                    if s.mubtada_form.is_none() || s.khabar_form.is_none() {
                        return Err(form_err("nominal sentence needs mubtada and khabar forms"));
                    }
                    if s.subject_form.is_some() {
                        return Err(form_err("nominal sentence has no subject form"));
                    }
                }
                SentenceKind::Verbal => {
                    let Some(subject) = s.subject_form else {
                        return Err(form_err("verbal sentence needs a subject form"));
                    };
                    let has_subject_token =
                        self.sentence_tokens(s).iter().any(|t| t.sentence_role == Some(SentenceRole::Subject));
                    if (subject == SubjectForm::DhamirMostatir) == has_subject_token {
                        return Err(form_err("implicit subject must match the absence of a subject token"));
                    }
                }
            }
        }

        for (index, t) in self.tokens.iter().enumerate() {
            let Some(role) = t.sentence_role else { continue };
            let ok = self
                .sentences
                .iter()
                .find(|s| s.tokens.contains(index))
                .is_some_and(|s| role.allowed_in(s.kind));
            if !ok {
                return Err(AnnotationError::RoleOutOfPlace { index, role: role.label().to_owned() });
            }
        }
        Ok(())
    }
}
