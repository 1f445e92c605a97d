use std::collections::HashMap;
use std::path::Path;

use serde::Deserialize;

use super::{
    classify_root, strip_diacritics, BaseFeatures, MorphError, NounLemma, PosTag, RootClass, Skeleton, Sub, Tense,
    Transitivity,
};

/// One lexicon record: a clitic-free base form and what is known about it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexiconEntry {
    pub skeleton: Skeleton,
    /// Vocalized citation form; equal to the skeleton when unknown.
    pub lemma: String,
    pub tag: PosTag,
    pub root: Option<String>,
    pub root_class: Option<RootClass>,
    pub transitivity: Option<Transitivity>,
    pub diptote: bool,
    pub broken_plural: Option<String>,
    /// Inflectional features of this particular form.
    pub features: BaseFeatures,
}

impl LexiconEntry {
    pub fn new(form: &str, tag: PosTag) -> Self {
        LexiconEntry {
            skeleton: strip_diacritics(form),
            lemma: form.to_owned(),
            tag,
            root: None,
            root_class: None,
            transitivity: None,
            diptote: false,
            broken_plural: None,
            features: BaseFeatures::default(),
        }
    }

    pub fn with_features(mut self, features: BaseFeatures) -> Self {
        self.features = features;
        self
    }

    pub fn with_root(mut self, root: &str) -> Self {
        self.root = Some(root.to_owned());
        self.root_class = classify_root(root).ok();
        self
    }

    /// Features of the base, completed from the tag and lexical columns.
    pub fn features(&self) -> BaseFeatures {
        let mut f = self.features.clone();
        if f.tense.is_none() {
            f.tense = match self.tag.sub() {
                Some(Sub::Past) => Some(Tense::Past),
                Some(Sub::Present) => Some(Tense::Present),
                Some(Sub::Imperative) => Some(Tense::Imperative),
                _ => None,
            };
        }
        f.transitivity = f.transitivity.or(self.transitivity);
        if f.root.is_none() {
            f.root = self.root.clone();
        }
        f.root_class = f.root_class.or(self.root_class);
        f
    }

    pub fn noun_lemma(&self) -> NounLemma {
        NounLemma { lemma: self.lemma.clone(), diptote: self.diptote, broken_plural: self.broken_plural.clone() }
    }
}

#[derive(Debug, Deserialize)]
struct Record {
    skeleton: String,
    #[serde(default)]
    lemma: String,
    tag: String,
    #[serde(default)]
    root: String,
    #[serde(default)]
    root_class: String,
    #[serde(default)]
    transitivity: String,
    #[serde(default)]
    diptote: String,
    #[serde(default)]
    broken_plural: String,
    #[serde(default)]
    features: String,
}

const HEADER: &str = "skeleton\tlemma\ttag\troot\troot_class\ttransitivity\tdiptote\tbroken_plural\tfeatures";

fn non_empty(s: &str) -> Option<&str> {
    let s = s.trim();
    (!s.is_empty()).then_some(s)
}

impl Record {
    fn into_entry(self) -> Result<LexiconEntry, MorphError> {
        let skeleton = Skeleton::new(self.skeleton.trim());
        if skeleton.is_empty() {
            return Err(MorphError::InvalidRequest("empty skeleton".into()));
        }
        let lemma = non_empty(&self.lemma).unwrap_or(skeleton.as_str()).to_owned();
        if strip_diacritics(&lemma) != skeleton {
            return Err(MorphError::InvalidRequest(format!("lemma {lemma} does not match skeleton {skeleton}")));
        }
        let root = non_empty(&self.root).map(str::to_owned);
        let root_class = match non_empty(&self.root_class) {
            Some(c) => Some(c.parse()?),
            None => root.as_deref().and_then(|r| classify_root(r).ok()),
        };
        Ok(LexiconEntry {
            skeleton,
            lemma,
            tag: self.tag.parse()?,
            root,
            root_class,
            transitivity: non_empty(&self.transitivity).map(str::parse).transpose()?,
            diptote: matches!(self.diptote.trim(), "1" | "true" | "yes" | "diptote"),
            broken_plural: non_empty(&self.broken_plural).map(str::to_owned),
            features: BaseFeatures::parse_pairs(&self.features)?,
        })
    }
}

/// An immutable set of base forms indexed by skeleton.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    entries: Vec<LexiconEntry>,
    index: HashMap<Skeleton, Vec<usize>>,
}

impl Lexicon {
    pub fn from_entries(entries: Vec<LexiconEntry>) -> Self {
        let mut lex = Lexicon::default();
        for e in entries {
            lex.push(e);
        }
        lex
    }

    fn push(&mut self, entry: LexiconEntry) {
        if self.entries.contains(&entry) {
            return;
        }
        self.index.entry(entry.skeleton.clone()).or_default().push(self.entries.len());
        self.entries.push(entry);
    }

    /// Parses the tab-separated lexicon format. The first line is a header
    /// naming the columns; `features` may be omitted.
    pub fn parse(text: &str) -> Result<Self, MorphError> {
        let mut reader = csv::ReaderBuilder::new()
            .delimiter(b'\t')
            .quoting(false)
            .flexible(true)
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let data_err = |line: usize, e: &dyn std::fmt::Display| MorphError::Data { line, message: e.to_string() };
        let headers = reader.headers().map_err(|e| data_err(1, &e))?.clone();
        let mut lex = Lexicon::default();
        for (i, record) in reader.records().enumerate() {
            let line = i + 2;
            // Rows may omit trailing empty columns.
            let mut record = record.map_err(|e| data_err(line, &e))?;
            while record.len() < headers.len() {
                record.push_field("");
            }
            let entry = record
                .deserialize::<Record>(Some(&headers))
                .map_err(|e| data_err(line, &e))?
                .into_entry()
                .map_err(|e| MorphError::Data { line, message: e.to_string() })?;
            lex.push(entry);
        }
        Ok(lex)
    }

    /// The lexicon shipped with the crate: common verbs and nouns plus the
    /// closed-class words.
    pub fn starter() -> Lexicon {
        Lexicon::parse(include_str!("../../data/starter_lexicon.tsv")).expect("starter lexicon is valid")
    }

    pub fn load(path: &Path) -> Result<Self, MorphError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| MorphError::Data { line: 0, message: format!("{}: {e}", path.display()) })?;
        Lexicon::parse(&text)
    }

    /// Serializes back to the tab-separated format.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from(HEADER);
        out.push('\n');
        for e in &self.entries {
            let f = &e.features;
            let mut pairs = Vec::new();
            let json = |v: serde_json::Value| v.as_str().unwrap_or_default().to_owned();
            if let Some(t) = f.tense {
                pairs.push(format!("tense={}", t.label()));
            }
            if let Some(m) = f.mood {
                pairs.push(format!("mood={}", json(serde_json::to_value(m).unwrap())));
            }
            if let Some(c) = f.case {
                pairs.push(format!("case={}", json(serde_json::to_value(c).unwrap())));
            }
            if let Some(d) = f.definiteness {
                pairs.push(format!("def={}", json(serde_json::to_value(d).unwrap())));
            }
            if let Some(v) = f.voice {
                pairs.push(format!("voice={}", json(serde_json::to_value(v).unwrap())));
            }
            if let Some(t) = f.transitivity {
                pairs.push(format!("transitivity={}", json(serde_json::to_value(t).unwrap())));
            }
            if let Some(b) = f.baab {
                pairs.push(format!("baab={b}"));
            }
            let cols = [
                e.skeleton.to_string(),
                e.lemma.clone(),
                e.tag.to_string(),
                e.root.clone().unwrap_or_default(),
                e.root_class.map(|c| c.to_string()).unwrap_or_default(),
                e.transitivity.map(|t| json(serde_json::to_value(t).unwrap())).unwrap_or_default(),
                if e.diptote { "1".into() } else { String::new() },
                e.broken_plural.clone().unwrap_or_default(),
                pairs.join(";"),
            ];
            out.push_str(&cols.join("\t"));
            out.push('\n');
        }
        out
    }

    pub fn lookup<'a>(&'a self, skeleton: &str) -> impl Iterator<Item = &'a LexiconEntry> + 'a {
        self.index
            .get(&Skeleton::new(skeleton))
            .into_iter()
            .flatten()
            .map(move |&i| &self.entries[i])
    }

    pub fn contains(&self, skeleton: &str) -> bool {
        self.lookup(skeleton).next().is_some()
    }

    pub fn entries(&self) -> &[LexiconEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Adds the entries of `other` that are not already present.
    pub fn merge(&mut self, other: Lexicon) {
        for e in other.entries {
            self.push(e);
        }
    }
}
