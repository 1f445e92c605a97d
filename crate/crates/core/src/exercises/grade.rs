use super::{Exercise, ExerciseError, Grade, Submission, Verdict};
use crate::morphology::strip_diacritics;

/// Whether `answer` is accepted for item `index`. Answers are trimmed; the
/// comparison ignores diacritics only when no other option (or word-bank
/// entry) shares the key's skeleton.
pub fn accepts(ex: &Exercise, index: usize, answer: &str) -> bool {
    let item = &ex.items[index];
    let answer = answer.trim();
    let key = item.answer_key.trim();
    if answer == key {
        return true;
    }
    let skeleton = strip_diacritics(key);
    let others = item.options.as_ref().or(ex.word_bank.as_ref());
    let ambiguous = others.is_some_and(|opts| {
        opts.iter().filter(|o| o.trim() != key).any(|o| strip_diacritics(o.trim()) == skeleton)
    });
    !ambiguous && strip_diacritics(answer) == skeleton
}

pub fn grade(ex: &Exercise, sub: &Submission) -> Result<Grade, ExerciseError> {
    if sub.exercise_id != ex.id {
        return Err(ExerciseError::MalformedSubmission(format!("submission is for exercise {}", sub.exercise_id)));
    }
    if sub.answers.len() != ex.items.len() {
        return Err(ExerciseError::MalformedSubmission(format!(
            "{} answers for {} items",
            sub.answers.len(),
            ex.items.len()
        )));
    }
    let verdicts: Vec<Verdict> = sub
        .answers
        .iter()
        .enumerate()
        .map(|(i, a)| if accepts(ex, i, a) { Verdict::Correct } else { Verdict::Incorrect })
        .collect();
    let correct = verdicts.iter().filter(|v| **v == Verdict::Correct).count();
    let score = if verdicts.is_empty() { 1.0 } else { correct as f64 / verdicts.len() as f64 };
    Ok(Grade { exercise_id: ex.id.clone(), verdicts, score })
}
