use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::CorpusError;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LanguageVariant {
    #[default]
    Native,
    Foreign,
}

impl std::str::FromStr for LanguageVariant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "native" => Ok(LanguageVariant::Native),
            "foreign" => Ok(LanguageVariant::Foreign),
            other => Err(format!("unknown language variant {other:?}")),
        }
    }
}

impl fmt::Display for LanguageVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LanguageVariant::Native => "native",
            LanguageVariant::Foreign => "foreign",
        })
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DocumentMetadata {
    #[serde(default)]
    pub title: String,
    #[serde(default)]
    pub author: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<String>,
    #[serde(default)]
    pub level: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub language_variant: Option<LanguageVariant>,
    /// Additional elements declared by the application profile.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub extra: BTreeMap<String, String>,
}

impl DocumentMetadata {
    /// Value of a named element; empty string when unset.
    pub fn field(&self, name: &str) -> String {
        match name {
            "title" => self.title.clone(),
            "author" => self.author.clone(),
            "source" => self.source.clone().unwrap_or_default(),
            "level" => self.level.clone(),
            "language_variant" => self.language_variant.map(|v| v.to_string()).unwrap_or_default(),
            other => self.extra.get(other).cloned().unwrap_or_default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Obligation {
    Mandatory,
    Recommended,
    Optional,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileElement {
    pub name: String,
    pub obligation: Obligation,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vocabulary: Option<Vec<String>>,
}

impl ProfileElement {
    pub fn new(name: &str, obligation: Obligation) -> Self {
        ProfileElement { name: name.to_owned(), obligation, vocabulary: None }
    }

    pub fn with_vocabulary(mut self, values: &[&str]) -> Self {
        self.vocabulary = Some(values.iter().map(|v| (*v).to_owned()).collect());
        self
    }
}

/// A selection of metadata elements with obligation degrees and optional
/// closed vocabularies.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawProfile")]
pub struct ApplicationProfile {
    elements: Vec<ProfileElement>,
}

#[derive(Deserialize)]
struct RawProfile {
    elements: Vec<ProfileElement>,
}

impl TryFrom<RawProfile> for ApplicationProfile {
    type Error = CorpusError;
    fn try_from(raw: RawProfile) -> Result<Self, Self::Error> {
        ApplicationProfile::new(raw.elements)
    }
}

impl ApplicationProfile {
    pub fn new(elements: Vec<ProfileElement>) -> Result<Self, CorpusError> {
        let mut seen = HashSet::new();
        for e in &elements {
            if !seen.insert(e.name.as_str()) {
                return Err(CorpusError::Profile(format!("duplicate element {:?}", e.name)));
            }
            if matches!(&e.vocabulary, Some(v) if v.is_empty()) {
                return Err(CorpusError::Profile(format!("empty vocabulary for {:?}", e.name)));
            }
        }
        Ok(ApplicationProfile { elements })
    }

    pub fn elements(&self) -> &[ProfileElement] {
        &self.elements
    }

    pub fn element(&self, name: &str) -> Option<&ProfileElement> {
        self.elements.iter().find(|e| e.name == name)
    }
}

impl Default for ApplicationProfile {
    /// title and level mandatory, author recommended, language variant
    /// mandatory, source optional.
    fn default() -> Self {
        use Obligation::*;
        ApplicationProfile::new(vec![
            ProfileElement::new("title", Mandatory),
            ProfileElement::new("author", Recommended),
            ProfileElement::new("level", Mandatory).with_vocabulary(&["primary", "middle", "secondary"]),
            ProfileElement::new("language_variant", Mandatory).with_vocabulary(&["native", "foreign"]),
            ProfileElement::new("source", Optional),
        ])
        .expect("default profile is valid")
    }
}

/// Missing mandatory elements and out-of-vocabulary values, in profile order.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub missing: Vec<String>,
    pub invalid: Vec<String>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.missing.is_empty() && self.invalid.is_empty()
    }
}

pub fn validate_metadata(md: &DocumentMetadata, profile: &ApplicationProfile) -> ValidationReport {
    let mut report = ValidationReport::default();
    for e in profile.elements() {
        let value = md.field(&e.name);
        let value = value.trim();
        if value.is_empty() {
            if e.obligation == Obligation::Mandatory {
                report.missing.push(e.name.clone());
            }
            continue;
        }
        if let Some(vocab) = &e.vocabulary {
            if !vocab.iter().any(|v| v == value) {
                report.invalid.push(e.name.clone());
            }
        }
    }
    report
}
