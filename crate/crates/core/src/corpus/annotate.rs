use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::{
    AnnotatedDocument, AnnotatedToken, DocumentMetadata, KhabarForm, MubtadaForm, SentenceAnalysis, SentenceKind,
    SentenceRole, SubjectForm, TokenSpan,
};
use crate::morphology::{
    segment, strip_diacritics, CliticInventory, Lexicon, Major, PosTag, ProcliticKind, Segmentation, Sub, Token,
    TokenKind, Transitivity,
};

const SENTENCE_END: &[&str] = &[".", "!", "?", "؟"];

/// A word the segmenter could not analyze.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PendingToken {
    pub index: usize,
    pub surface: String,
}

/// Raw text that needs manual completion before it can be stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PendingAnnotation {
    pub tokens: Vec<PendingToken>,
}

#[derive(Debug, Clone, PartialEq)]
#[allow(clippy::large_enum_variant)]
pub enum AutoAnnotation {
    Complete(AnnotatedDocument),
    Pending(PendingAnnotation),
}

/// Token index ranges of the sentences in `tokens`. A sentence ends after
/// terminal punctuation or at a line break; ranges holding no word are
/// dropped.
pub fn split_sentences(text: &str, tokens: &[Token]) -> Vec<Range<usize>> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut prev_end = 0;
    let flush = |start: usize, end: usize, out: &mut Vec<Range<usize>>| {
        if tokens[start..end].iter().any(|t| t.kind == TokenKind::Word) {
            out.push(start..end);
        }
    };
    for (i, t) in tokens.iter().enumerate() {
        if i > start && text[prev_end..t.start].contains('\n') {
            flush(start, i, &mut out);
            start = i;
        }
        prev_end = t.start + t.text.len();
        if t.kind == TokenKind::Punctuation && SENTENCE_END.contains(&t.text.as_str()) {
            flush(start, i + 1, &mut out);
            start = i + 1;
        }
    }
    if start < tokens.len() {
        flush(start, tokens.len(), &mut out);
    }
    out
}

fn tag_for(seg: &Segmentation, lexicon: &Lexicon) -> PosTag {
    let mut candidates = lexicon.lookup(seg.base.as_str()).filter(|e| e.tag.major() == seg.base_class);
    let first = candidates.next();
    std::iter::once(first)
        .flatten()
        .chain(candidates)
        .find(|e| e.features() == seg.base_features)
        .or(first)
        .map_or(PosTag::major_only(seg.base_class), |e| e.tag)
}

/// Tokenizes and segments `text`. When every word has an analysis the
/// result is a document built from the first-ranked analyses, with sentence
/// structure guessed from word order; otherwise the unanalyzable words.
pub fn annotate_raw(
    text: &str,
    metadata: DocumentMetadata,
    lexicon: &Lexicon,
    inventory: &CliticInventory,
) -> AutoAnnotation {
    let raw = crate::morphology::tokenize(text);
    let mut tokens = Vec::with_capacity(raw.len());
    let mut pending = Vec::new();

    for (index, t) in raw.iter().enumerate() {
        if t.kind == TokenKind::Punctuation {
            tokens.push(AnnotatedToken::punctuation(&t.text));
            continue;
        }
        let skeleton = strip_diacritics(&t.text);
        let mut segs = segment(&skeleton, lexicon, inventory);
        if segs.is_empty() {
            pending.push(PendingToken { index, surface: t.text.clone() });
            continue;
        }
        let first = segs.remove(0);
        tokens.push(AnnotatedToken {
            surface: t.text.clone(),
            skeleton,
            kind: TokenKind::Word,
            tag: tag_for(&first, lexicon),
            segmentation: first,
            alternatives: segs,
            sentence_role: None,
        });
    }
    if !pending.is_empty() {
        return AutoAnnotation::Pending(PendingAnnotation { tokens: pending });
    }

    let sentences = split_sentences(text, &raw)
        .into_iter()
        .map(|range| analyze_sentence(&mut tokens, range))
        .collect();
    AutoAnnotation::Complete(AnnotatedDocument::new(metadata, text, tokens, sentences))
}

fn governed_by_preposition(t: &AnnotatedToken) -> bool {
    [ProcliticKind::Bi, ProcliticKind::Ka, ProcliticKind::Li].iter().any(|k| t.segmentation.has(*k))
}

fn mubtada_form(tag: PosTag) -> MubtadaForm {
    match tag.sub() {
        Some(Sub::PersonalPronoun) => MubtadaForm::Pronoun,
        Some(Sub::Demonstrative) => MubtadaForm::Demonstrative,
        Some(Sub::InterrogativeNoun) => MubtadaForm::Interrogative,
        Some(Sub::RelativePronoun) => MubtadaForm::Relative,
        Some(Sub::VerbalNoun) => MubtadaForm::Masdar,
        _ => MubtadaForm::SimpleNoun,
    }
}

fn analyze_sentence(tokens: &mut [AnnotatedToken], range: Range<usize>) -> SentenceAnalysis {
    let span = TokenSpan::new(range.start, range.end);
    let words: Vec<usize> = range.clone().filter(|&i| tokens[i].is_word()).collect();
    let head = words[0];

    if tokens[head].tag.major() != Major::Verb {
        let mut khabar = KhabarForm::Mofrada;
        let mubtada = words.iter().copied().find(|&i| tokens[i].tag.major() == Major::Noun);
        let mut form = MubtadaForm::SimpleNoun;
        if let Some(m) = mubtada {
            form = mubtada_form(tokens[m].tag);
            tokens[m].sentence_role = Some(SentenceRole::Mubtada);
            if let Some(&k) = words.iter().find(|&&i| i > m) {
                khabar = match tokens[k].tag.major() {
                    Major::Verb => KhabarForm::MourakabIsnedi,
                    Major::Particle if tokens[k].tag.is(Sub::Preposition) => KhabarForm::MourakabJar,
                    _ if governed_by_preposition(&tokens[k]) => KhabarForm::MourakabJar,
                    _ => KhabarForm::Mofrada,
                };
                tokens[k].sentence_role = Some(SentenceRole::Khabar);
            }
        }
        return SentenceAnalysis::nominal(span, form, khabar);
    }

    tokens[head].sentence_role = Some(SentenceRole::Verb);
    let transitivity = tokens[head].segmentation.base_features.transitivity;
    // The subject of an imperative is the implicit addressee.
    let imperative = tokens[head].tag.is(Sub::Imperative);
    let mut subject = None;
    let mut object = None;
    let mut after_preposition = false;
    for &i in &words[1..] {
        let t = &mut tokens[i];
        if t.tag.major() != Major::Noun {
            after_preposition = t.tag.is(Sub::Preposition);
            continue;
        }
        let governed = after_preposition || governed_by_preposition(t);
        after_preposition = false;
        if t.tag.is(Sub::AdverbOfTime) {
            t.sentence_role = Some(SentenceRole::TimeComplement);
        } else if t.tag.is(Sub::AdverbOfPlace) {
            t.sentence_role = Some(SentenceRole::PlaceComplement);
        } else if governed {
            continue;
        } else if subject.is_none() && !imperative {
            t.sentence_role = Some(SentenceRole::Subject);
            subject = Some(i);
        } else if object.is_none() && subject.is_none() == imperative && transitivity == Some(Transitivity::Transitive) {
            t.sentence_role = Some(SentenceRole::Object);
            object = Some(i);
        }
    }
    let form = match subject {
        None => SubjectForm::DhamirMostatir,
        Some(i) => match tokens[i].tag.sub() {
            Some(Sub::PersonalPronoun | Sub::Demonstrative | Sub::RelativePronoun) => SubjectForm::ExplicitMabni,
            _ => SubjectForm::ExplicitMoarab,
        },
    };
    let mut s = SentenceAnalysis::verbal(span, form);
    s.verb_transitivity = transitivity;
    debug_assert_eq!(s.kind, SentenceKind::Verbal);
    s
}
