use serde::{Deserialize, Serialize};

use super::{Gender, GrammaticalNumber, Major, Person};

/// Proclitic positions, outermost first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Slot {
    Interrogation,
    Conjunction,
    /// Verbal particles: subjunctive لِ, corroborative لَ, future س.
    Particle,
    /// Nominal prepositions ب ك ل.
    Preposition,
    Article,
}

impl Slot {
    /// Position in the word; particle and preposition share a rank.
    pub fn rank(self) -> u8 {
        match self {
            Slot::Interrogation => 0,
            Slot::Conjunction => 1,
            Slot::Particle | Slot::Preposition => 2,
            Slot::Article => 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProcliticKind {
    Interrogative,
    Wa,
    Fa,
    SubjunctiveLi,
    CorroborativeLa,
    FutureSa,
    Bi,
    Ka,
    Li,
    Article,
}

impl ProcliticKind {
    pub const ALL: [ProcliticKind; 10] = [
        ProcliticKind::Interrogative,
        ProcliticKind::Wa,
        ProcliticKind::Fa,
        ProcliticKind::SubjunctiveLi,
        ProcliticKind::CorroborativeLa,
        ProcliticKind::FutureSa,
        ProcliticKind::Bi,
        ProcliticKind::Ka,
        ProcliticKind::Li,
        ProcliticKind::Article,
    ];

    pub fn slot(self) -> Slot {
        use ProcliticKind::*;
        match self {
            Interrogative => Slot::Interrogation,
            Wa | Fa => Slot::Conjunction,
            SubjunctiveLi | CorroborativeLa | FutureSa => Slot::Particle,
            Bi | Ka | Li => Slot::Preposition,
            Article => Slot::Article,
        }
    }

    /// Undiacritized written form.
    pub fn surface(self) -> &'static str {
        use ProcliticKind::*;
        match self {
            Interrogative => "أ",
            Wa => "و",
            Fa => "ف",
            SubjunctiveLi | CorroborativeLa | Li => "ل",
            FutureSa => "س",
            Bi => "ب",
            Ka => "ك",
            Article => "ال",
        }
    }

    /// Written form after the proclitic `previous`: the article loses its
    /// alif after the preposition لِ (لل).
    pub fn surface_after(self, previous: Option<ProcliticKind>) -> &'static str {
        match (self, previous) {
            (ProcliticKind::Article, Some(ProcliticKind::Li)) => "ل",
            _ => self.surface(),
        }
    }
}

/// A proclitic as it appears in a segmentation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Proclitic {
    pub slot: Slot,
    pub kind: ProcliticKind,
    pub surface: String,
}

impl Proclitic {
    /// Builds each proclitic of a sequence with its contextual surface.
    pub fn sequence(kinds: &[ProcliticKind]) -> Vec<Proclitic> {
        let mut previous = None;
        kinds
            .iter()
            .map(|&kind| {
                let p = Proclitic { slot: kind.slot(), kind, surface: kind.surface_after(previous).to_owned() };
                previous = Some(kind);
                p
            })
            .collect()
    }
}

impl From<ProcliticKind> for Proclitic {
    fn from(kind: ProcliticKind) -> Self {
        Proclitic { slot: kind.slot(), kind, surface: kind.surface().to_owned() }
    }
}

/// An attached object or possessive pronoun.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Enclitic {
    pub person: Person,
    /// `None` for forms shared by both genders (1st person, duals).
    pub gender: Option<Gender>,
    pub number: GrammaticalNumber,
    pub surface: String,
}

fn pronoun_table() -> Vec<Enclitic> {
    use Gender::*;
    use GrammaticalNumber::*;
    use Person::*;
    let rows: [(Person, Option<Gender>, GrammaticalNumber, &str); 12] = [
        (First, None, Singular, "ني"),
        (First, None, Plural, "نا"),
        (Second, Some(Masculine), Singular, "ك"),
        (Second, Some(Feminine), Singular, "ك"),
        (Second, None, Dual, "كما"),
        (Second, Some(Masculine), Plural, "كم"),
        (Second, Some(Feminine), Plural, "كن"),
        (Third, Some(Masculine), Singular, "ه"),
        (Third, Some(Feminine), Singular, "ها"),
        (Third, None, Dual, "هما"),
        (Third, Some(Masculine), Plural, "هم"),
        (Third, Some(Feminine), Plural, "هن"),
    ];
    rows.into_iter()
        .map(|(person, gender, number, s)| Enclitic { person, gender, number, surface: s.to_owned() })
        .collect()
}

/// Which clitics may attach to bases of each class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliticInventory {
    verb_proclitics: Vec<ProcliticKind>,
    noun_proclitics: Vec<ProcliticKind>,
    particle_proclitics: Vec<ProcliticKind>,
    verb_enclitics: Vec<Enclitic>,
    noun_enclitics: Vec<Enclitic>,
}

impl Default for CliticInventory {
    fn default() -> Self {
        use ProcliticKind::*;
        CliticInventory {
            verb_proclitics: vec![Interrogative, Wa, Fa, SubjunctiveLi, CorroborativeLa, FutureSa],
            noun_proclitics: vec![Interrogative, Wa, Fa, Bi, Ka, Li, Article],
            particle_proclitics: vec![Wa, Fa],
            verb_enclitics: pronoun_table(),
            noun_enclitics: pronoun_table(),
        }
    }
}

impl CliticInventory {
    /// Keeps only verb enclitics of the given persons.
    pub fn restrict_verb_enclitics(mut self, persons: &[Person]) -> Self {
        self.verb_enclitics.retain(|e| persons.contains(&e.person));
        self
    }

    /// Keeps only noun enclitics of the given persons.
    pub fn restrict_noun_enclitics(mut self, persons: &[Person]) -> Self {
        self.noun_enclitics.retain(|e| persons.contains(&e.person));
        self
    }

    /// Proclitic slots allowed before a base of `major`, outermost first,
    /// each with its members.
    pub fn proclitic_slots(&self, major: Major) -> Vec<(Slot, Vec<ProcliticKind>)> {
        let kinds: &[ProcliticKind] = match major {
            Major::Verb => &self.verb_proclitics,
            Major::Noun => &self.noun_proclitics,
            Major::Particle => &self.particle_proclitics,
            Major::Residual | Major::Punctuation => &[],
        };
        let mut slots: Vec<(Slot, Vec<ProcliticKind>)> = Vec::new();
        for &k in kinds {
            match slots.iter_mut().find(|(s, _)| *s == k.slot()) {
                Some((_, members)) => members.push(k),
                None => slots.push((k.slot(), vec![k])),
            }
        }
        slots.sort_by_key(|(s, _)| s.rank());
        slots
    }

    pub fn enclitics(&self, major: Major) -> &[Enclitic] {
        match major {
            Major::Verb => &self.verb_enclitics,
            Major::Noun => &self.noun_enclitics,
            _ => &[],
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slot_order_is_fixed() {
        let inv = CliticInventory::default();
        for major in [Major::Verb, Major::Noun] {
            let ranks: Vec<u8> = inv.proclitic_slots(major).iter().map(|(s, _)| s.rank()).collect();
            assert!(ranks.windows(2).all(|w| w[0] < w[1]), "{major}: {ranks:?}");
        }
    }

    #[test]
    fn twelve_pronouns() {
        assert_eq!(pronoun_table().len(), 12);
    }

    #[test]
    fn restriction_drops_persons() {
        let inv = CliticInventory::default().restrict_verb_enclitics(&[Person::First, Person::Second]);
        assert!(inv.enclitics(Major::Verb).iter().all(|e| e.person != Person::Third));
        assert_eq!(inv.enclitics(Major::Noun).len(), 12);
    }
}
