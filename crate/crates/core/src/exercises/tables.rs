use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::corpus::AnnotatedToken;
use crate::morphology::{strip_diacritics, Major, Sub};

/// Closed word classes with enumerable members.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ClosedCategory {
    Demonstrative,
    PersonalPronoun,
    RelativePronoun,
    Preposition,
    TimeAdverb,
    PlaceAdverb,
}

impl ClosedCategory {
    pub const ALL: [ClosedCategory; 6] = [
        ClosedCategory::Demonstrative,
        ClosedCategory::PersonalPronoun,
        ClosedCategory::RelativePronoun,
        ClosedCategory::Preposition,
        ClosedCategory::TimeAdverb,
        ClosedCategory::PlaceAdverb,
    ];

    /// Categories offered as same-class selectors in cloze exercises.
    pub const SELECTABLE: [ClosedCategory; 4] = [
        ClosedCategory::Demonstrative,
        ClosedCategory::PersonalPronoun,
        ClosedCategory::RelativePronoun,
        ClosedCategory::Preposition,
    ];

    pub fn label(self) -> &'static str {
        match self {
            ClosedCategory::Demonstrative => "demonstrative",
            ClosedCategory::PersonalPronoun => "personal_pronoun",
            ClosedCategory::RelativePronoun => "relative_pronoun",
            ClosedCategory::Preposition => "preposition",
            ClosedCategory::TimeAdverb => "time_adverb",
            ClosedCategory::PlaceAdverb => "place_adverb",
        }
    }

    pub fn sub(self) -> Sub {
        match self {
            ClosedCategory::Demonstrative => Sub::Demonstrative,
            ClosedCategory::PersonalPronoun => Sub::PersonalPronoun,
            ClosedCategory::RelativePronoun => Sub::RelativePronoun,
            ClosedCategory::Preposition => Sub::Preposition,
            ClosedCategory::TimeAdverb => Sub::AdverbOfTime,
            ClosedCategory::PlaceAdverb => Sub::AdverbOfPlace,
        }
    }

    pub fn from_sub(sub: Sub) -> Option<Self> {
        Self::ALL.into_iter().find(|c| c.sub() == sub)
    }

    pub fn is_selectable(self) -> bool {
        Self::SELECTABLE.contains(&self)
    }

    fn data(self) -> &'static str {
        match self {
            ClosedCategory::Demonstrative => include_str!("../../data/closed/demonstrative.txt"),
            ClosedCategory::PersonalPronoun => include_str!("../../data/closed/personal_pronoun.txt"),
            ClosedCategory::RelativePronoun => include_str!("../../data/closed/relative_pronoun.txt"),
            ClosedCategory::Preposition => include_str!("../../data/closed/preposition.txt"),
            ClosedCategory::TimeAdverb => include_str!("../../data/closed/time_adverb.txt"),
            ClosedCategory::PlaceAdverb => include_str!("../../data/closed/place_adverb.txt"),
        }
    }
}

impl fmt::Display for ClosedCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// The member lists of every closed category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedClasses {
    tables: BTreeMap<ClosedCategory, Vec<String>>,
}

fn parse_members(text: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    for line in text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#')) {
        if !out.iter().any(|w| strip_diacritics(w) == strip_diacritics(line)) {
            out.push(line.to_owned());
        }
    }
    out
}

impl ClosedClasses {
    /// The shipped tables.
    pub fn standard() -> &'static ClosedClasses {
        static TABLES: OnceLock<ClosedClasses> = OnceLock::new();
        TABLES.get_or_init(|| ClosedClasses {
            tables: ClosedCategory::ALL.into_iter().map(|c| (c, parse_members(c.data()))).collect(),
        })
    }

    pub fn with_table(mut self, category: ClosedCategory, members: &[&str]) -> Self {
        self.tables.insert(category, parse_members(&members.join("\n")));
        self
    }

    pub fn members(&self, category: ClosedCategory) -> &[String] {
        self.tables.get(&category).map_or(&[], Vec::as_slice)
    }

    /// The first category (in declaration order) listing `skeleton`.
    pub fn lookup(&self, skeleton: &str) -> Option<ClosedCategory> {
        let skeleton = strip_diacritics(skeleton);
        ClosedCategory::ALL
            .into_iter()
            .find(|c| self.members(*c).iter().any(|w| strip_diacritics(w) == skeleton))
    }

    /// Category of a word token: from its tag refinement when it has one,
    /// otherwise from the tables by base form.
    pub fn category_of(&self, t: &AnnotatedToken) -> Option<ClosedCategory> {
        if !t.is_word() {
            return None;
        }
        match t.tag.sub() {
            Some(sub) => ClosedCategory::from_sub(sub),
            None if t.tag.major() == Major::Verb => None,
            None => self.lookup(t.segmentation.base.as_str()).filter(|c| {
                (c.sub().major()) == t.tag.major() || t.tag.major() == Major::Residual
            }),
        }
    }
}

/// What an extraction exercise asks the student to find.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExtractionCategory {
    Demonstrative,
    Adverb,
    Pronoun,
}

impl ExtractionCategory {
    pub const ALL: [ExtractionCategory; 3] =
        [ExtractionCategory::Demonstrative, ExtractionCategory::Adverb, ExtractionCategory::Pronoun];

    pub fn label(self) -> &'static str {
        match self {
            ExtractionCategory::Demonstrative => "demonstrative",
            ExtractionCategory::Adverb => "adverb",
            ExtractionCategory::Pronoun => "pronoun",
        }
    }

    /// The prompt shown next to the blank.
    pub fn prompt(self) -> &'static str {
        match self {
            ExtractionCategory::Demonstrative => "اسم الإشارة",
            ExtractionCategory::Adverb => "الظرف",
            ExtractionCategory::Pronoun => "الضمير",
        }
    }

    pub fn of(c: ClosedCategory) -> Option<Self> {
        match c {
            ClosedCategory::Demonstrative => Some(ExtractionCategory::Demonstrative),
            ClosedCategory::TimeAdverb | ClosedCategory::PlaceAdverb => Some(ExtractionCategory::Adverb),
            ClosedCategory::PersonalPronoun => Some(ExtractionCategory::Pronoun),
            _ => None,
        }
    }
}

impl fmt::Display for ExtractionCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}
