use std::fmt;

use serde::{Deserialize, Serialize};

/// Fathatan through sukun: the three tanwin marks, the three short vowels,
/// shadda and sukun.
pub const DIACRITIC_RANGE: std::ops::RangeInclusive<char> = '\u{064B}'..='\u{0652}';

#[inline]
pub fn is_diacritic(c: char) -> bool {
    DIACRITIC_RANGE.contains(&c)
}

/// A word with every diacritic mark removed.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Skeleton(String);

impl Skeleton {
    /// Builds a skeleton from arbitrary text, dropping any diacritics.
    pub fn new(s: &str) -> Self {
        strip_diacritics(s)
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Number of letters (Unicode scalar values).
    pub fn len(&self) -> usize {
        self.0.chars().count()
    }

    pub fn into_string(self) -> String {
        self.0
    }
}

impl fmt::Display for Skeleton {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl AsRef<str> for Skeleton {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

impl From<&str> for Skeleton {
    fn from(s: &str) -> Self {
        Skeleton::new(s)
    }
}

/// Removes all marks in U+064B–U+0652, keeping every other character in
/// order. Shadda is removed like the vowels.
pub fn strip_diacritics(word: &str) -> Skeleton {
    Skeleton(word.chars().filter(|c| !is_diacritic(*c)).collect())
}
