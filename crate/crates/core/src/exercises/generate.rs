use std::ops::Range;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use super::{
    ClosedCategory, ClosedClasses, Exercise, ExerciseError, ExerciseItem, ExerciseKind, ExtractionCategory,
};
use crate::corpus::{AnnotatedDocument, AnnotatedToken, SentenceRole};
use crate::facets::{document_difficulty, has_core_roles};
use crate::morphology::{strip_diacritics, Major, PosTag};

/// Labels offered in role questions, in display order.
pub const ROLE_LABELS: [&str; 3] = ["فعل", "فاعل", "مفعول به"];
const ROLES: [SentenceRole; 3] = [SentenceRole::Verb, SentenceRole::Subject, SentenceRole::Object];

pub fn blank(i: usize) -> String {
    format!("___{i}___")
}

pub fn role_label(role: SentenceRole) -> Option<&'static str> {
    ROLES.iter().position(|r| *r == role).map(|i| ROLE_LABELS[i])
}

/// Byte ranges of the tokens in the text they are rendered from. The raw
/// text is used when every surface can be found in it in order; otherwise
/// the surfaces are joined by spaces.
pub fn token_layout(doc: &AnnotatedDocument) -> (String, Vec<Range<usize>>) {
    let mut cursor = 0;
    let mut spans = Vec::with_capacity(doc.tokens.len());
    for t in &doc.tokens {
        match doc.raw_text[cursor..].find(&t.surface) {
            Some(off) => {
                let start = cursor + off;
                cursor = start + t.surface.len();
                spans.push(start..cursor);
            }
            None => break,
        }
    }
    if spans.len() == doc.tokens.len() {
        return (doc.raw_text.clone(), spans);
    }
    let mut text = String::new();
    spans.clear();
    for (i, t) in doc.tokens.iter().enumerate() {
        if i > 0 {
            text.push(' ');
        }
        spans.push(text.len()..text.len() + t.surface.len());
        text.push_str(&t.surface);
    }
    (text, spans)
}

/// `text` restricted to `range` of tokens, with each `(token, replacement)`
/// substituted.
fn render(text: &str, spans: &[Range<usize>], range: Range<usize>, subs: &[(usize, String)]) -> String {
    if range.is_empty() {
        return String::new();
    }
    let mut out = String::new();
    let mut cursor = spans[range.start].start;
    let end = spans[range.end - 1].end;
    let mut subs: Vec<&(usize, String)> = subs.iter().filter(|(i, _)| range.contains(i)).collect();
    subs.sort_by_key(|(i, _)| *i);
    for (i, replacement) in subs {
        out.push_str(&text[cursor..spans[*i].start]);
        out.push_str(replacement);
        cursor = spans[*i].end;
    }
    out.push_str(&text[cursor..end]);
    out
}

fn render_all(doc: &AnnotatedDocument, subs: &[(usize, String)]) -> String {
    let (text, spans) = token_layout(doc);
    if spans.is_empty() {
        return text;
    }
    let body = render(&text, &spans, 0..spans.len(), subs);
    let lead = &text[..spans[0].start];
    let tail = &text[spans[spans.len() - 1].end..];
    format!("{lead}{body}{tail}")
}

fn exercise_id(doc: &AnnotatedDocument, kind: ExerciseKind, params: &str, rendered: &str) -> String {
    let mut h = Sha256::new();
    for part in [doc.id.as_str(), kind.label(), params, rendered] {
        h.update(part.as_bytes());
        h.update([0]);
    }
    hex::encode(&h.finalize()[..8])
}

fn build(
    doc: &AnnotatedDocument,
    kind: ExerciseKind,
    params: String,
    rendered_text: String,
    items: Vec<ExerciseItem>,
    word_bank: Option<Vec<String>>,
) -> Exercise {
    Exercise {
        id: exercise_id(doc, kind, &params, &rendered_text),
        kind,
        doc_id: doc.id.clone(),
        rendered_text,
        items,
        difficulty: document_difficulty(doc),
        word_bank,
    }
}

fn tag_matches(target: PosTag, t: &AnnotatedToken) -> bool {
    t.is_word() && t.tag.major() == target.major() && target.sub().is_none_or(|s| t.tag.sub() == Some(s))
}

/// Word tokens a word-bank cloze can blank for `target`.
pub fn wordbank_targets(doc: &AnnotatedDocument, target: PosTag) -> Vec<usize> {
    (0..doc.tokens.len()).filter(|&i| tag_matches(target, &doc.tokens[i])).collect()
}

/// Blanks the first `n` tokens matching `target` and offers their surfaces,
/// shuffled, as a word bank.
pub fn generate_cloze_wordbank(
    doc: &AnnotatedDocument,
    target: PosTag,
    n: usize,
    seed: u64,
) -> Result<Exercise, ExerciseError> {
    let targets = wordbank_targets(doc, target);
    if n == 0 || targets.len() < n {
        return Err(ExerciseError::InsufficientTargets { available: targets.len() });
    }
    let chosen = &targets[..n];
    let items: Vec<ExerciseItem> = chosen
        .iter()
        .map(|&pos| ExerciseItem {
            position: pos,
            answer_key: doc.tokens[pos].surface.clone(),
            options: None,
            category: doc.tokens[pos].tag.to_string(),
        })
        .collect();
    let subs: Vec<(usize, String)> = chosen.iter().enumerate().map(|(i, &pos)| (pos, blank(i))).collect();
    let mut bank: Vec<String> = items.iter().map(|i| i.answer_key.clone()).collect();
    bank.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    Ok(build(
        doc,
        ExerciseKind::ClozeWordbank,
        format!("{target}/{n}/{seed}"),
        render_all(doc, &subs),
        items,
        Some(bank),
    ))
}

/// Clitic-free closed-class tokens usable as same-category selectors.
pub fn select_targets(
    doc: &AnnotatedDocument,
    category: Option<ClosedCategory>,
    tables: &ClosedClasses,
) -> Vec<(usize, ClosedCategory)> {
    doc.tokens
        .iter()
        .enumerate()
        .filter(|(_, t)| t.segmentation.clitic_count() == 0)
        .filter_map(|(i, t)| tables.category_of(t).map(|c| (i, c)))
        .filter(|(_, c)| c.is_selectable() && category.is_none_or(|want| want == *c))
        .collect()
}

/// Blanks every clitic-free word of the closed category (or of any
/// selectable category) and offers the answer with `k` distractors from the
/// same table.
pub fn generate_cloze_select(
    doc: &AnnotatedDocument,
    category: Option<ClosedCategory>,
    k: usize,
    seed: u64,
    tables: &ClosedClasses,
) -> Result<Exercise, ExerciseError> {
    let targets = select_targets(doc, category, tables);
    if targets.is_empty() {
        return Err(ExerciseError::NoMaterial);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut items = Vec::with_capacity(targets.len());
    for &(pos, cat) in &targets {
        let answer = doc.tokens[pos].surface.clone();
        let skeleton = strip_diacritics(&answer);
        let pool: Vec<&String> = tables.members(cat).iter().filter(|w| strip_diacritics(w) != skeleton).collect();
        if pool.len() < k {
            return Err(ExerciseError::InsufficientDistractors { category: cat.label().to_owned(), available: pool.len() });
        }
        let mut options: Vec<String> = pool.choose_multiple(&mut rng, k).map(|w| (*w).clone()).collect();
        options.push(answer.clone());
        options.shuffle(&mut rng);
        items.push(ExerciseItem { position: pos, answer_key: answer, options: Some(options), category: cat.label().to_owned() });
    }
    let subs: Vec<(usize, String)> = targets.iter().enumerate().map(|(i, &(pos, _))| (pos, blank(i))).collect();
    let cat = category.map_or("all", |c| c.label());
    Ok(build(doc, ExerciseKind::ClozeSelect, format!("{cat}/{k}/{seed}"), render_all(doc, &subs), items, None))
}

/// Underlines one verb, subject or object per role-annotated verbal
/// sentence, cycling through the three roles from sentence to sentence.
pub fn generate_role_mcq(doc: &AnnotatedDocument) -> Result<Exercise, ExerciseError> {
    let mut items = Vec::new();
    let mut subs = Vec::new();
    for s in doc.sentences.iter().filter(|s| has_core_roles(doc, s)) {
        let turn = items.len();
        let picked = (0..ROLES.len()).map(|j| ROLES[(turn + j) % ROLES.len()]).find_map(|role| {
            s.tokens.range().find(|&i| doc.tokens[i].sentence_role == Some(role)).map(|i| (i, role))
        });
        let Some((pos, role)) = picked else { continue };
        let label = role_label(role).expect("core role");
        subs.push((pos, format!("<u id=\"{turn}\">{}</u>", doc.tokens[pos].surface)));
        items.push(ExerciseItem {
            position: pos,
            answer_key: label.to_owned(),
            options: Some(ROLE_LABELS.iter().map(|l| (*l).to_owned()).collect()),
            category: role.label().to_owned(),
        });
    }
    if items.is_empty() {
        return Err(ExerciseError::NoMaterial);
    }
    Ok(build(doc, ExerciseKind::RoleMcq, String::new(), render_all(doc, &subs), items, None))
}

/// For each requested category, the first token of the sentence in it and
/// the form the student is expected to write.
pub fn extraction_targets(
    doc: &AnnotatedDocument,
    sentence: usize,
    categories: &[ExtractionCategory],
    tables: &ClosedClasses,
) -> Vec<(ExtractionCategory, usize, String)> {
    let Some(s) = doc.sentences.get(sentence) else { return Vec::new() };
    categories
        .iter()
        .filter_map(|&cat| {
            s.tokens.range().find_map(|i| {
                let t = &doc.tokens[i];
                let c = tables.category_of(t).and_then(ExtractionCategory::of)?;
                (c == cat).then(|| {
                    let answer =
                        if t.segmentation.clitic_count() > 0 { t.segmentation.base.as_str().to_owned() } else { t.surface.clone() };
                    (cat, i, answer)
                })
            })
        })
        .collect()
}

/// Asks for the demonstrative, adverb and pronoun of one sentence; absent
/// categories are left out.
pub fn generate_extraction(
    doc: &AnnotatedDocument,
    sentence: usize,
    categories: &[ExtractionCategory],
    tables: &ClosedClasses,
) -> Result<Exercise, ExerciseError> {
    let targets = extraction_targets(doc, sentence, categories, tables);
    if targets.is_empty() {
        return Err(ExerciseError::NoMaterial);
    }
    let (text, spans) = token_layout(doc);
    let s = &doc.sentences[sentence];
    let mut rendered = render(&text, &spans, s.tokens.range(), &[]);
    for (i, (cat, _, _)) in targets.iter().enumerate() {
        rendered.push_str(&format!("\n{}: {}", cat.prompt(), blank(i)));
    }
    let items = targets
        .into_iter()
        .map(|(cat, pos, answer)| ExerciseItem { position: pos, answer_key: answer, options: None, category: cat.label().to_owned() })
        .collect();
    Ok(build(doc, ExerciseKind::Extraction, format!("{sentence}"), rendered, items, None))
}

/// Parameters for generating an exercise of a given kind.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenParams {
    pub seed: u64,
    /// Word-bank cloze: tag of the blanked words.
    pub target: PosTag,
    /// Word-bank cloze: number of blanks; `None` takes up to five.
    pub blanks: Option<usize>,
    /// Same-category cloze: restrict to one category.
    pub category: Option<ClosedCategory>,
    /// Same-category cloze: distractors per blank.
    pub distractors: usize,
    /// Extraction: sentence index; `None` takes the first with material.
    pub sentence: Option<usize>,
}

pub const DEFAULT_BLANKS: usize = 5;

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            seed: 0,
            target: PosTag::major_only(Major::Verb),
            blanks: None,
            category: None,
            distractors: 3,
            sentence: None,
        }
    }
}

impl GenParams {
    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = seed;
        self
    }
}

pub fn generate(doc: &AnnotatedDocument, kind: ExerciseKind, p: &GenParams) -> Result<Exercise, ExerciseError> {
    let tables = ClosedClasses::standard();
    match kind {
        ExerciseKind::ClozeWordbank => {
            let n = p.blanks.unwrap_or_else(|| wordbank_targets(doc, p.target).len().min(DEFAULT_BLANKS));
            generate_cloze_wordbank(doc, p.target, n, p.seed)
        }
        ExerciseKind::ClozeSelect => generate_cloze_select(doc, p.category, p.distractors, p.seed, tables),
        ExerciseKind::RoleMcq => generate_role_mcq(doc),
        ExerciseKind::Extraction => match p.sentence {
            Some(s) => generate_extraction(doc, s, &ExtractionCategory::ALL, tables),
            None => (0..doc.sentences.len())
                .find_map(|s| generate_extraction(doc, s, &ExtractionCategory::ALL, tables).ok())
                .ok_or(ExerciseError::NoMaterial),
        },
    }
}

/// The kinds for which `doc` has material under default parameters.
pub fn available_kinds(doc: &AnnotatedDocument) -> Vec<ExerciseKind> {
    let p = GenParams::default();
    ExerciseKind::ALL.into_iter().filter(|k| generate(doc, *k, &p).is_ok()).collect()
}

/// An exercise of the requested kind, or of the first kind with material
/// when `kind` is `None`.
pub fn generate_any(doc: &AnnotatedDocument, kind: Option<ExerciseKind>, p: &GenParams) -> Result<Exercise, ExerciseError> {
    match kind {
        Some(k) => generate(doc, k, p),
        None => ExerciseKind::ALL
            .into_iter()
            .find_map(|k| generate(doc, k, p).ok())
            .ok_or(ExerciseError::NoMaterial),
    }
}
