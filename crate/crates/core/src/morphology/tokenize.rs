use serde::{Deserialize, Serialize};

use super::diacritics::is_diacritic;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TokenKind {
    Word,
    Punctuation,
}

/// A token and its byte offset in the source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub kind: TokenKind,
    pub start: usize,
}

pub fn is_arabic_letter(c: char) -> bool {
    matches!(c,
        '\u{0621}'..='\u{063A}'
        | '\u{0640}'..='\u{064A}'
        | '\u{066E}'..='\u{066F}'
        | '\u{0671}'..='\u{06D3}'
        | '\u{06D5}'
        | '\u{06FA}'..='\u{06FC}')
}

fn is_word_char(c: char) -> bool {
    is_arabic_letter(c) || is_diacritic(c) || matches!(c, '\u{0653}'..='\u{065F}' | '\u{0670}')
}

/// Splits text into words (maximal runs of Arabic letters and marks) and
/// single-character punctuation tokens. Whitespace is dropped; every other
/// character, digits included, becomes its own punctuation token.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut word_start: Option<usize> = None;

    for (i, c) in text.char_indices() {
        if is_word_char(c) {
            word_start.get_or_insert(i);
            continue;
        }
        if let Some(start) = word_start.take() {
            tokens.push(Token { text: text[start..i].to_owned(), kind: TokenKind::Word, start });
        }
        if !c.is_whitespace() {
            tokens.push(Token {
                text: c.to_string(),
                kind: TokenKind::Punctuation,
                start: i,
            });
        }
    }
    if let Some(start) = word_start {
        tokens.push(Token { text: text[start..].to_owned(), kind: TokenKind::Word, start });
    }
    tokens
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn texts(tokens: &[Token]) -> Vec<&str> {
        tokens.iter().map(|t| t.text.as_str()).collect()
    }

    #[test]
    fn splits_on_whitespace() {
        let t = tokenize("كتب الأولادُ");
        assert_eq!(texts(&t), ["كتب", "الأولادُ"]);
        assert!(t.iter().all(|t| t.kind == TokenKind::Word));
    }

    #[test]
    fn empty_text() {
        assert!(tokenize("").is_empty());
    }

    #[test]
    fn trailing_period_is_punctuation() {
        let t = tokenize("هذا يجري.");
        assert_eq!(texts(&t), ["هذا", "يجري", "."]);
        let kinds: Vec<_> = t.iter().map(|t| t.kind).collect();
        assert_eq!(kinds, [TokenKind::Word, TokenKind::Word, TokenKind::Punctuation]);
    }

    #[test]
    fn digits_and_arabic_punctuation() {
        let t = tokenize("سنة 12، متى؟");
        assert_eq!(texts(&t), ["سنة", "1", "2", "،", "متى", "؟"]);
    }

    proptest! {
        #[test]
        fn tokens_and_whitespace_rebuild_input(s in "[ \\n\\.،؟a1ءابتثجحخدرزسشصضطظعغفقكلمنهويًٌٍَُِّْ]{0,40}") {
            let tokens = tokenize(&s);
            let mut rebuilt = String::new();
            let mut pos = 0;
            for t in &tokens {
                let gap = &s[pos..t.start];
                prop_assert!(gap.chars().all(char::is_whitespace));
                rebuilt.push_str(gap);
                rebuilt.push_str(&t.text);
                pos = t.start + t.text.len();
            }
            prop_assert!(s[pos..].chars().all(char::is_whitespace));
            rebuilt.push_str(&s[pos..]);
            prop_assert_eq!(rebuilt, s);
        }
    }
}
