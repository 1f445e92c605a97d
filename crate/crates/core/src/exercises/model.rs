use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::corpus::DocId;
use crate::facets::{Difficulty, ExerciseCategory};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExerciseKind {
    ClozeWordbank,
    ClozeSelect,
    RoleMcq,
    Extraction,
}

impl ExerciseKind {
    pub const ALL: [ExerciseKind; 4] =
        [ExerciseKind::ClozeWordbank, ExerciseKind::ClozeSelect, ExerciseKind::RoleMcq, ExerciseKind::Extraction];

    pub fn label(self) -> &'static str {
        match self {
            ExerciseKind::ClozeWordbank => "cloze_wordbank",
            ExerciseKind::ClozeSelect => "cloze_select",
            ExerciseKind::RoleMcq => "role_mcq",
            ExerciseKind::Extraction => "extraction",
        }
    }

    /// The kind a category asks for; `None` for `any`.
    pub fn for_category(c: ExerciseCategory) -> Option<Self> {
        match c {
            ExerciseCategory::ClozeWordbank => Some(ExerciseKind::ClozeWordbank),
            ExerciseCategory::ClozeSelect => Some(ExerciseKind::ClozeSelect),
            ExerciseCategory::RoleMcq => Some(ExerciseKind::RoleMcq),
            ExerciseCategory::Extraction => Some(ExerciseKind::Extraction),
            ExerciseCategory::Any => None,
        }
    }
}

impl fmt::Display for ExerciseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for ExerciseKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL.into_iter().find(|k| k.label() == s).ok_or_else(|| format!("unknown exercise kind {s:?}"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExerciseItem {
    /// Token index in the source document.
    pub position: usize,
    pub answer_key: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<Vec<String>>,
    pub category: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Exercise {
    pub id: String,
    pub kind: ExerciseKind,
    pub doc_id: DocId,
    /// Text with `___i___` blanks or `<u id="i">…</u>` underlines, `i`
    /// being the item index.
    pub rendered_text: String,
    pub items: Vec<ExerciseItem>,
    pub difficulty: Difficulty,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word_bank: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StudentItem {
    pub position: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub options: Option<Vec<String>>,
    pub category: String,
}

/// An exercise as shown to a student: no answer keys.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StudentExercise {
    pub id: String,
    pub kind: ExerciseKind,
    pub doc_id: DocId,
    pub rendered_text: String,
    pub items: Vec<StudentItem>,
    pub difficulty: Difficulty,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub word_bank: Option<Vec<String>>,
}

impl Exercise {
    pub fn student_view(&self) -> StudentExercise {
        StudentExercise {
            id: self.id.clone(),
            kind: self.kind,
            doc_id: self.doc_id.clone(),
            rendered_text: self.rendered_text.clone(),
            items: self
                .items
                .iter()
                .map(|i| StudentItem { position: i.position, options: i.options.clone(), category: i.category.clone() })
                .collect(),
            difficulty: self.difficulty,
            word_bank: self.word_bank.clone(),
        }
    }

    pub fn answer_keys(&self) -> Vec<String> {
        self.items.iter().map(|i| i.answer_key.clone()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Submission {
    pub exercise_id: String,
    pub answers: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Correct,
    Incorrect,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Grade {
    pub exercise_id: String,
    pub verdicts: Vec<Verdict>,
    pub score: f64,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExerciseError {
    #[error("not enough target tokens: {available} available")]
    InsufficientTargets { available: usize },
    #[error("not enough distractors for {category}: {available} available")]
    InsufficientDistractors { category: String, available: usize },
    #[error("the document has no material for this exercise")]
    NoMaterial,
    #[error("malformed submission: {0}")]
    MalformedSubmission(String),
}
