use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{strip_diacritics, MorphError};

/// A triliteral root: exactly three radicals, no diacritics.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Root([char; 3]);

impl Root {
    pub fn parse(s: &str) -> Result<Self, MorphError> {
        let bare = strip_diacritics(s.trim());
        let radicals: Vec<char> = bare.as_str().chars().collect();
        match radicals.as_slice() {
            [a, b, c] => Ok(Root([*a, *b, *c])),
            _ => Err(MorphError::UnsupportedRoot(s.to_owned())),
        }
    }

    pub fn radicals(&self) -> [char; 3] {
        self.0
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.iter().try_for_each(|c| write!(f, "{c}"))
    }
}

impl FromStr for Root {
    type Err = MorphError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Root::parse(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WeakPosition {
    Initial,
    Medial,
    Final,
}

/// Sound, hamzated or weak root. `Mutal` carries the position of its first
/// weak radical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", content = "weak_position", rename_all = "snake_case")]
pub enum RootClass {
    Sahih,
    Mahmuz,
    Mutal(WeakPosition),
}

impl RootClass {
    pub fn label(&self) -> &'static str {
        match self {
            RootClass::Sahih => "sahih",
            RootClass::Mahmuz => "mahmuz",
            RootClass::Mutal(_) => "mutal",
        }
    }
}

impl fmt::Display for RootClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RootClass::Mutal(pos) => {
                let pos = match pos {
                    WeakPosition::Initial => "initial",
                    WeakPosition::Medial => "medial",
                    WeakPosition::Final => "final",
                };
                write!(f, "mutal:{pos}")
            }
            other => f.write_str(other.label()),
        }
    }
}

impl FromStr for RootClass {
    type Err = MorphError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || MorphError::InvalidRequest(format!("unknown root class {s:?}"));
        match s.trim() {
            "sahih" => Ok(RootClass::Sahih),
            "mahmuz" => Ok(RootClass::Mahmuz),
            other => {
                let pos = other.strip_prefix("mutal:").ok_or_else(bad)?;
                let pos = match pos {
                    "initial" => WeakPosition::Initial,
                    "medial" => WeakPosition::Medial,
                    "final" => WeakPosition::Final,
                    _ => return Err(bad()),
                };
                Ok(RootClass::Mutal(pos))
            }
        }
    }
}

const WEAK: [char; 4] = ['ا', 'و', 'ي', 'ى'];
const HAMZA: [char; 5] = ['ء', 'أ', 'إ', 'ؤ', 'ئ'];

/// Weak letters take precedence over hamza.
pub fn classify_root(root: &str) -> Result<RootClass, MorphError> {
    let radicals = Root::parse(root)?.radicals();
    let positions = [WeakPosition::Initial, WeakPosition::Medial, WeakPosition::Final];
    if let Some(i) = radicals.iter().position(|c| WEAK.contains(c)) {
        return Ok(RootClass::Mutal(positions[i]));
    }
    if radicals.iter().any(|c| HAMZA.contains(c)) {
        return Ok(RootClass::Mahmuz);
    }
    Ok(RootClass::Sahih)
}
