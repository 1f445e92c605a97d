//! Cloze, role and extraction exercises generated from annotated documents,
//! and item-by-item grading.

mod generate;
mod grade;
mod model;
mod tables;

pub use generate::{
    available_kinds, blank, extraction_targets, generate, generate_any, generate_cloze_select,
    generate_cloze_wordbank, generate_extraction, generate_role_mcq, role_label, select_targets, token_layout,
    wordbank_targets, GenParams, DEFAULT_BLANKS, ROLE_LABELS,
};
pub use grade::{accepts, grade};
pub use model::{
    Exercise, ExerciseError, ExerciseItem, ExerciseKind, Grade, StudentExercise, StudentItem, Submission, Verdict,
};
pub use tables::{ClosedCategory, ClosedClasses, ExtractionCategory};
