use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::MorphError;

/// Top-level word class of the Khoja tagset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Major {
    Noun,
    Verb,
    Particle,
    Residual,
    Punctuation,
}

impl Major {
    pub const ALL: [Major; 5] =
        [Major::Noun, Major::Verb, Major::Particle, Major::Residual, Major::Punctuation];

    pub fn label(self) -> &'static str {
        match self {
            Major::Noun => "noun",
            Major::Verb => "verb",
            Major::Particle => "particle",
            Major::Residual => "residual",
            Major::Punctuation => "punctuation",
        }
    }
}

impl fmt::Display for Major {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Refinements of a major class. Each variant belongs to exactly one major.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sub {
    Common,
    Proper,
    Adjective,
    Demonstrative,
    PersonalPronoun,
    RelativePronoun,
    InterrogativeNoun,
    AdverbOfTime,
    AdverbOfPlace,
    VerbalNoun,
    PlaceNoun,
    Past,
    Present,
    Imperative,
    Preposition,
    Conjunction,
    InterrogativeParticle,
    Negation,
}

const SUB_TABLE: &[(Sub, Major, &str)] = &[
    (Sub::Common, Major::Noun, "common"),
    (Sub::Proper, Major::Noun, "proper"),
    (Sub::Adjective, Major::Noun, "adjective"),
    (Sub::Demonstrative, Major::Noun, "demonstrative"),
    (Sub::PersonalPronoun, Major::Noun, "pronoun.personal"),
    (Sub::RelativePronoun, Major::Noun, "pronoun.relative"),
    (Sub::InterrogativeNoun, Major::Noun, "interrogative"),
    (Sub::AdverbOfTime, Major::Noun, "adverb-of-time"),
    (Sub::AdverbOfPlace, Major::Noun, "adverb-of-place"),
    (Sub::VerbalNoun, Major::Noun, "verbal"),
    (Sub::PlaceNoun, Major::Noun, "place"),
    (Sub::Past, Major::Verb, "past"),
    (Sub::Present, Major::Verb, "present"),
    (Sub::Imperative, Major::Verb, "imperative"),
    (Sub::Preposition, Major::Particle, "preposition"),
    (Sub::Conjunction, Major::Particle, "conjunction"),
    (Sub::InterrogativeParticle, Major::Particle, "interrogative"),
    (Sub::Negation, Major::Particle, "negation"),
];

impl Sub {
    fn row(self) -> &'static (Sub, Major, &'static str) {
        SUB_TABLE.iter().find(|(s, _, _)| *s == self).expect("every sub is in the table")
    }

    pub fn major(self) -> Major {
        self.row().1
    }

    fn suffix(self) -> &'static str {
        self.row().2
    }
}

/// A part-of-speech tag: a major class with an optional refinement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PosTag {
    major: Major,
    sub: Option<Sub>,
}

impl PosTag {
    pub const fn major_only(major: Major) -> Self {
        PosTag { major, sub: None }
    }

    pub fn with_sub(sub: Sub) -> Self {
        PosTag { major: sub.major(), sub: Some(sub) }
    }

    /// Fails when `sub` does not refine `major`.
    pub fn new(major: Major, sub: Option<Sub>) -> Result<Self, MorphError> {
        match sub {
            Some(s) if s.major() != major => Err(MorphError::InconsistentTag(format!(
                "{}.{} is not a refinement of {}",
                s.major(),
                s.suffix(),
                major
            ))),
            _ => Ok(PosTag { major, sub }),
        }
    }

    pub fn major(&self) -> Major {
        self.major
    }

    pub fn sub(&self) -> Option<Sub> {
        self.sub
    }

    pub fn is(&self, sub: Sub) -> bool {
        self.sub == Some(sub)
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.sub {
            Some(s) => write!(f, "{}.{}", self.major, s.suffix()),
            None => f.write_str(self.major.label()),
        }
    }
}

impl FromStr for PosTag {
    type Err = MorphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (head, rest) = match s.split_once('.') {
            Some((h, r)) => (h, Some(r)),
            None => (s, None),
        };
        let major = Major::ALL
            .into_iter()
            .find(|m| m.label() == head)
            .ok_or_else(|| MorphError::InconsistentTag(format!("unknown tag {s:?}")))?;
        let Some(rest) = rest else {
            return Ok(PosTag::major_only(major));
        };
        let sub = SUB_TABLE
            .iter()
            .find(|(_, m, suffix)| *m == major && *suffix == rest)
            .map(|(sub, _, _)| *sub)
            .ok_or_else(|| MorphError::InconsistentTag(format!("unknown tag {s:?}")))?;
        Ok(PosTag::with_sub(sub))
    }
}

impl Serialize for PosTag {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PosTag {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
