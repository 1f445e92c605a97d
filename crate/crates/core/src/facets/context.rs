use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::LanguageVariant;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Objective {
    Conjugation,
    Grammar,
    #[default]
    Mixed,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExerciseCategory {
    ClozeWordbank,
    ClozeSelect,
    RoleMcq,
    Extraction,
    #[default]
    Any,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comprehension {
    #[default]
    Fast,
    Slow,
}

macro_rules! label_enum {
    ($ty:ty { $($variant:ident => $label:literal),+ $(,)? }) => {
        impl $ty {
            pub const ALL: &'static [$ty] = &[$(<$ty>::$variant),+];

            pub fn label(self) -> &'static str {
                match self { $(<$ty>::$variant => $label),+ }
            }
        }

        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(self.label())
            }
        }

        impl FromStr for $ty {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, Self::Err> {
                <$ty>::ALL
                    .iter()
                    .copied()
                    .find(|v| v.label() == s)
                    .ok_or_else(|| format!("unknown value {s:?}"))
            }
        }
    };
}

label_enum!(Objective { Conjugation => "conjugation", Grammar => "grammar", Mixed => "mixed" });
label_enum!(ExerciseCategory {
    ClozeWordbank => "cloze_wordbank",
    ClozeSelect => "cloze_select",
    RoleMcq => "role_mcq",
    Extraction => "extraction",
    Any => "any",
});
label_enum!(Comprehension { Fast => "fast", Slow => "slow" });

/// Exercise difficulty, always 1, 2 or 3.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Difficulty(u8);

impl Difficulty {
    pub const MIN: Difficulty = Difficulty(1);
    pub const MAX: Difficulty = Difficulty(3);

    pub fn new(level: u8) -> Option<Self> {
        (1..=3).contains(&level).then_some(Difficulty(level))
    }

    pub fn get(self) -> u8 {
        self.0
    }
}

impl Default for Difficulty {
    fn default() -> Self {
        Difficulty::MIN
    }
}

impl TryFrom<u8> for Difficulty {
    type Error = String;

    fn try_from(v: u8) -> Result<Self, Self::Error> {
        Difficulty::new(v).ok_or_else(|| format!("difficulty must be 1, 2 or 3, got {v}"))
    }
}

impl From<Difficulty> for u8 {
    fn from(d: Difficulty) -> u8 {
        d.0
    }
}

impl fmt::Display for Difficulty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The teaching situation a text is sought for.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(default)]
pub struct PedagogicalContext {
    pub objective: Objective,
    pub exercise_category: ExerciseCategory,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub student_level: Option<String>,
    pub comprehension: Comprehension,
    pub language_variant: LanguageVariant,
    pub difficulty: Difficulty,
}

impl PedagogicalContext {
    pub fn with_objective(mut self, o: Objective) -> Self {
        self.objective = o;
        self
    }

    pub fn with_category(mut self, c: ExerciseCategory) -> Self {
        self.exercise_category = c;
        self
    }

    pub fn with_level(mut self, level: impl Into<String>) -> Self {
        self.student_level = Some(level.into());
        self
    }

    pub fn with_difficulty(mut self, d: Difficulty) -> Self {
        self.difficulty = d;
        self
    }
}
