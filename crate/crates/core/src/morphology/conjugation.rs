use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{classify_root, Gender, GrammaticalNumber, MorphError, Person, Root, RootClass};

const FATHA: char = '\u{064E}';
const DAMMA: char = '\u{064F}';
const KASRA: char = '\u{0650}';
const SUKUN: char = '\u{0652}';

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Tense {
    Past,
    Present,
    Imperative,
}

impl Tense {
    pub fn label(self) -> &'static str {
        match self {
            Tense::Past => "past",
            Tense::Present => "present",
            Tense::Imperative => "imperative",
        }
    }
}

/// Conjugation class of a bare triliteral verb, named by its past and
/// present middle vowels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Baab {
    /// نَصَرَ - يَنْصُرُ
    AU,
    /// جَلَسَ - يَجْلِسُ
    AI,
    /// مَنَعَ - يَمْنَعُ
    AA,
    /// عَلِمَ - يَعْلَمُ
    IA,
    /// حَسِبَ - يَحْسِبُ
    II,
    /// كَرُمَ - يَكْرُمُ
    UU,
}

impl Baab {
    pub const ALL: [Baab; 6] = [Baab::AU, Baab::AI, Baab::AA, Baab::IA, Baab::II, Baab::UU];

    pub fn past_vowel(self) -> char {
        match self {
            Baab::AU | Baab::AI | Baab::AA => FATHA,
            Baab::IA | Baab::II => KASRA,
            Baab::UU => DAMMA,
        }
    }

    pub fn present_vowel(self) -> char {
        match self {
            Baab::AU | Baab::UU => DAMMA,
            Baab::AI | Baab::II => KASRA,
            Baab::AA | Baab::IA => FATHA,
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            Baab::AU => "a-u",
            Baab::AI => "a-i",
            Baab::AA => "a-a",
            Baab::IA => "i-a",
            Baab::II => "i-i",
            Baab::UU => "u-u",
        }
    }
}

impl fmt::Display for Baab {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Baab {
    type Err = MorphError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Baab::ALL
            .into_iter()
            .find(|b| b.id() == s.trim())
            .ok_or_else(|| MorphError::InvalidRequest(format!("unknown baab {s:?}")))
    }
}

impl Serialize for Baab {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.id())
    }
}

impl<'de> Deserialize<'de> for Baab {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        String::deserialize(deserializer)?.parse().map_err(serde::de::Error::custom)
    }
}

/// Grammatical subject of a conjugated form. Gender is ignored in the
/// first person, where the dual uses the plural form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subject {
    pub person: Person,
    pub gender: Gender,
    pub number: GrammaticalNumber,
}

impl Subject {
    pub fn new(person: Person, gender: Gender, number: GrammaticalNumber) -> Self {
        Subject { person, gender, number }
    }

    fn key(self) -> CellKey {
        let (gender, number) = match self.person {
            Person::First => (
                'c',
                if self.number == GrammaticalNumber::Singular { 's' } else { 'p' },
            ),
            _ => (
                if self.gender == Gender::Masculine { 'm' } else { 'f' },
                match self.number {
                    GrammaticalNumber::Singular => 's',
                    GrammaticalNumber::Dual => 'd',
                    GrammaticalNumber::Plural => 'p',
                },
            ),
        };
        let person = match self.person {
            Person::First => 1,
            Person::Second => 2,
            Person::Third => 3,
        };
        (person, gender, number)
    }
}

type CellKey = (u8, char, char);

/// One cell of the paradigm table.
#[derive(Debug, Clone, PartialEq, Eq, Deserialize)]
pub struct ParadigmRow {
    pub baab: Baab,
    pub tense: Tense,
    pub person: u8,
    pub gender: char,
    pub number: char,
    #[serde(default)]
    pub prefix: String,
    #[serde(default)]
    pub suffix: String,
}

/// Prefix/suffix table for regular triliteral conjugation.
#[derive(Debug, Clone)]
pub struct Paradigm {
    cells: HashMap<(Baab, Tense, CellKey), (String, String)>,
}

static STANDARD: OnceLock<Paradigm> = OnceLock::new();

impl Paradigm {
    /// The shipped table (`data/paradigm.tsv`).
    pub fn standard() -> &'static Paradigm {
        STANDARD.get_or_init(|| {
            Paradigm::parse(include_str!("../../data/paradigm.tsv")).expect("shipped paradigm table is valid")
        })
    }

    /// Parses a tab-separated table with header
    /// `baab tense person gender number prefix suffix`.
    pub fn parse(text: &str) -> Result<Self, MorphError> {
        let mut reader = csv::ReaderBuilder::new()
            .delimiter(b'\t')
            .quoting(false)
            .trim(csv::Trim::None)
            .from_reader(text.as_bytes());
        let mut cells = HashMap::new();
        for (i, row) in reader.deserialize::<ParadigmRow>().enumerate() {
            let line = i + 2;
            let row = row.map_err(|e| MorphError::Data { line, message: e.to_string() })?;
            let valid = match row.person {
                1 => row.gender == 'c' && matches!(row.number, 's' | 'p'),
                2 | 3 => matches!(row.gender, 'm' | 'f') && matches!(row.number, 's' | 'd' | 'p'),
                _ => false,
            };
            if !valid || (row.tense == Tense::Imperative && row.person != 2) {
                return Err(MorphError::Data { line, message: "invalid person/gender/number cell".into() });
            }
            let key = (row.baab, row.tense, (row.person, row.gender, row.number));
            if cells.insert(key, (row.prefix, row.suffix)).is_some() {
                return Err(MorphError::Data { line, message: "duplicate cell".into() });
            }
        }
        Ok(Paradigm { cells })
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn conjugate(
        &self,
        root: &str,
        baab: Baab,
        tense: Tense,
        subject: Subject,
    ) -> Result<String, MorphError> {
        let parsed = Root::parse(root)?;
        if classify_root(root)? != RootClass::Sahih {
            return Err(MorphError::UnsupportedRoot(root.to_owned()));
        }
        if tense == Tense::Imperative && subject.person != Person::Second {
            return Err(MorphError::InvalidRequest("imperative requires a 2nd person subject".into()));
        }
        let (prefix, suffix) = self
            .cells
            .get(&(baab, tense, subject.key()))
            .ok_or_else(|| MorphError::InvalidRequest(format!("no paradigm cell for {baab} {tense:?} {subject:?}")))?;

        let [c1, c2, c3] = parsed.radicals();
        let mut out = prefix.clone();
        match tense {
            Tense::Past => out.extend([c1, FATHA, c2, baab.past_vowel(), c3]),
            Tense::Present | Tense::Imperative => out.extend([c1, SUKUN, c2, baab.present_vowel(), c3]),
        }
        out.push_str(suffix);
        Ok(out)
    }
}

/// Conjugates a sound triliteral root with the shipped paradigm table.
pub fn conjugate(root: &str, baab: Baab, tense: Tense, subject: Subject) -> Result<String, MorphError> {
    Paradigm::standard().conjugate(root, baab, tense, subject)
}
