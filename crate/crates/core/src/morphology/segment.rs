use std::cmp::Reverse;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{
    Baab, Case, CliticInventory, Definiteness, Enclitic, Lexicon, Major, MorphError, Proclitic,
    ProcliticKind, RootClass, Skeleton, Slot, Tense,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mood {
    Indicative,
    Subjunctive,
    Jussive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Voice {
    Active,
    Passive,
}

/// Lazim (one argument) or moutaadi (takes an object).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transitivity {
    #[serde(alias = "lazim")]
    Intransitive,
    #[serde(alias = "moutaadi")]
    Transitive,
}

impl FromStr for Transitivity {
    type Err = MorphError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "intransitive" | "lazim" => Ok(Transitivity::Intransitive),
            "transitive" | "moutaadi" => Ok(Transitivity::Transitive),
            other => Err(MorphError::InvalidRequest(format!("unknown transitivity {other:?}"))),
        }
    }
}

/// Inflectional and lexical features of a segmentation's base.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BaseFeatures {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tense: Option<Tense>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mood: Option<Mood>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub case: Option<Case>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub definiteness: Option<Definiteness>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub voice: Option<Voice>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transitivity: Option<Transitivity>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub root_class: Option<RootClass>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub baab: Option<Baab>,
}

impl BaseFeatures {
    /// Parses `key=value` pairs separated by `;`, e.g.
    /// `tense=present;mood=subjunctive;voice=passive`.
    pub fn parse_pairs(s: &str) -> Result<Self, MorphError> {
        let mut f = BaseFeatures::default();
        for pair in s.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = pair
                .split_once('=')
                .ok_or_else(|| MorphError::InvalidRequest(format!("feature {pair:?} lacks '='")))?;
            let value = value.trim();
            let json = serde_json::Value::String(value.to_owned());
            let bad = |_| MorphError::InvalidRequest(format!("bad value {value:?} for {key}"));
            match key.trim() {
                "tense" => f.tense = Some(serde_json::from_value(json).map_err(bad)?),
                "mood" => f.mood = Some(serde_json::from_value(json).map_err(bad)?),
                "case" => f.case = Some(serde_json::from_value(json).map_err(bad)?),
                "def" | "definiteness" => {
                    f.definiteness = Some(serde_json::from_value(json).map_err(bad)?)
                }
                "voice" => f.voice = Some(serde_json::from_value(json).map_err(bad)?),
                "transitivity" => f.transitivity = Some(value.parse()?),
                "baab" => f.baab = Some(value.parse()?),
                other => {
                    return Err(MorphError::InvalidRequest(format!("unknown feature {other:?}")))
                }
            }
        }
        Ok(f)
    }
}

/// A decomposition of a word into proclitics, an inflected base and an
/// optional enclitic pronoun.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Segmentation {
    pub proclitics: Vec<Proclitic>,
    pub base: Skeleton,
    pub base_class: Major,
    #[serde(default)]
    pub base_features: BaseFeatures,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enclitic: Option<Enclitic>,
}

impl Segmentation {
    /// A clitic-free segmentation of `base`.
    pub fn bare(base: Skeleton, base_class: Major) -> Self {
        Segmentation {
            proclitics: Vec::new(),
            base,
            base_class,
            base_features: BaseFeatures::default(),
            enclitic: None,
        }
    }

    pub fn clitic_count(&self) -> usize {
        self.proclitics.len() + usize::from(self.enclitic.is_some())
    }

    pub fn morpheme_count(&self) -> usize {
        self.clitic_count() + 1
    }

    /// Proclitic surfaces, base and enclitic surface concatenated.
    pub fn surface(&self) -> String {
        let mut s: String = self.proclitics.iter().map(|p| p.surface.as_str()).collect();
        s.push_str(self.base.as_str());
        if let Some(e) = &self.enclitic {
            s.push_str(&e.surface);
        }
        s
    }

    pub fn has(&self, kind: ProcliticKind) -> bool {
        self.proclitics.iter().any(|p| p.kind == kind)
    }

    fn has_slot(&self, slot: Slot) -> bool {
        self.proclitics.iter().any(|p| p.slot == slot)
    }

    /// Slots strictly increasing in rank, one clitic per slot, each written
    /// in its contextual form.
    pub fn is_well_formed(&self) -> bool {
        let kinds: Vec<ProcliticKind> = self.proclitics.iter().map(|p| p.kind).collect();
        self.proclitics.windows(2).all(|w| w[0].slot.rank() < w[1].slot.rank())
            && self.proclitics == Proclitic::sequence(&kinds)
            && !self.base.is_empty()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RuleId {
    /// Interrogative أ with an imperative or subjunctive verb.
    V1,
    /// Subjunctive لِ with a present-tense verb.
    V2,
    /// Future س with a present-tense verb.
    V3,
    /// Pronoun enclitic on a passive or intransitive verb.
    V4,
    /// Article with a possessive enclitic.
    N1,
    /// Article with an indefinite (tanwin) base.
    N2,
    /// Preposition with a base not in the genitive.
    N3,
    /// More than five morphemes.
    G1,
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

pub const MAX_MORPHEMES: usize = 5;

/// Agglutination constraints. V2 and V3 encode restrictions that standard
/// grammar does not impose; each can be switched off.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AgglutinationRules {
    pub subjunctive_li_restriction: bool,
    pub future_sin_restriction: bool,
}

impl Default for AgglutinationRules {
    fn default() -> Self {
        AgglutinationRules { subjunctive_li_restriction: true, future_sin_restriction: true }
    }
}

impl AgglutinationRules {
    /// Returns every violated rule, in rule order.
    pub fn check(&self, s: &Segmentation) -> Result<(), Vec<RuleId>> {
        let f = &s.base_features;
        let is_verb = s.base_class == Major::Verb;
        let present = f.tense == Some(Tense::Present);
        let article = s.has(ProcliticKind::Article);
        let mut violations = Vec::new();

        if is_verb
            && s.has(ProcliticKind::Interrogative)
            && (f.tense == Some(Tense::Imperative) || f.mood == Some(Mood::Subjunctive))
        {
            violations.push(RuleId::V1);
        }
        if self.subjunctive_li_restriction && s.has(ProcliticKind::SubjunctiveLi) && present {
            violations.push(RuleId::V2);
        }
        if self.future_sin_restriction && s.has(ProcliticKind::FutureSa) && present {
            violations.push(RuleId::V3);
        }
        if is_verb
            && s.enclitic.is_some()
            && (f.voice == Some(Voice::Passive) || f.transitivity == Some(Transitivity::Intransitive))
        {
            violations.push(RuleId::V4);
        }
        if article && s.enclitic.is_some() {
            violations.push(RuleId::N1);
        }
        if article && f.definiteness == Some(Definiteness::Indefinite) {
            violations.push(RuleId::N2);
        }
        if s.has_slot(Slot::Preposition) && matches!(f.case, Some(c) if c != Case::Gen) {
            violations.push(RuleId::N3);
        }
        if s.morpheme_count() > MAX_MORPHEMES {
            violations.push(RuleId::G1);
        }

        if violations.is_empty() {
            Ok(())
        } else {
            Err(violations)
        }
    }
}

/// Checks `s` against the default rule set.
pub fn check_agglutination(s: &Segmentation) -> Result<(), Vec<RuleId>> {
    AgglutinationRules::default().check(s)
}

/// All segmentations of `word` whose base is in the lexicon and whose clitics
/// respect slot order and the agglutination rules, fewest clitics first and
/// longer bases first among equals. An empty result means the word is out of
/// lexicon.
pub fn segment(word: &Skeleton, lexicon: &Lexicon, inventory: &CliticInventory) -> Vec<Segmentation> {
    segment_with(word, lexicon, inventory, &AgglutinationRules::default())
}

pub fn segment_with(
    word: &Skeleton,
    lexicon: &Lexicon,
    inventory: &CliticInventory,
    rules: &AgglutinationRules,
) -> Vec<Segmentation> {
    let chars: Vec<char> = word.as_str().chars().collect();
    let mut out: Vec<Segmentation> = Vec::new();
    if chars.is_empty() {
        return out;
    }

    for major in Major::ALL {
        let slots = inventory.proclitic_slots(major);
        let mut prefixes = Vec::new();
        collect_prefixes(&chars, &slots, 0, 0, &mut Vec::new(), &mut prefixes);

        for (kinds, start) in prefixes {
            let rest = &chars[start..];
            let enclitics = std::iter::once(None).chain(inventory.enclitics(major).iter().map(Some));
            for enclitic in enclitics {
                let enc_len = enclitic.map_or(0, |e| e.surface.chars().count());
                if enc_len >= rest.len() {
                    continue;
                }
                let (base, tail) = rest.split_at(rest.len() - enc_len);
                if let Some(e) = enclitic {
                    if !tail.iter().copied().eq(e.surface.chars()) {
                        continue;
                    }
                }
                let base: String = base.iter().collect();
                for entry in lexicon.lookup(&base).filter(|e| e.tag.major() == major) {
                    let seg = Segmentation {
                        proclitics: Proclitic::sequence(&kinds),
                        base: entry.skeleton.clone(),
                        base_class: major,
                        base_features: entry.features(),
                        enclitic: enclitic.cloned(),
                    };
                    if rules.check(&seg).is_ok() && !out.contains(&seg) {
                        out.push(seg);
                    }
                }
            }
        }
    }

    out.sort_by_key(|s| (s.clitic_count(), Reverse(s.base.len())));
    out
}

/// Every way to strip one optional proclitic per slot, in slot order, from
/// the front of `chars`. Yields the chosen kinds and the remaining offset.
fn collect_prefixes(
    chars: &[char],
    slots: &[(Slot, Vec<ProcliticKind>)],
    slot_idx: usize,
    pos: usize,
    chosen: &mut Vec<ProcliticKind>,
    out: &mut Vec<(Vec<ProcliticKind>, usize)>,
) {
    if slot_idx == slots.len() {
        out.push((chosen.clone(), pos));
        return;
    }
    collect_prefixes(chars, slots, slot_idx + 1, pos, chosen, out);
    for &kind in &slots[slot_idx].1 {
        let surface: Vec<char> = kind.surface_after(chosen.last().copied()).chars().collect();
        if chars[pos..].starts_with(&surface) {
            chosen.push(kind);
            collect_prefixes(chars, slots, slot_idx + 1, pos + surface.len(), chosen, out);
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::morphology::{Gender, GrammaticalNumber, LexiconEntry, Person, PosTag, Sub};

    fn lexicon(entries: &[(&str, &str)]) -> Lexicon {
        Lexicon::from_entries(
            entries
                .iter()
                .map(|(w, tag)| LexiconEntry::new(w, tag.parse::<PosTag>().unwrap()))
                .collect(),
        )
    }

    fn noun(base: &str) -> Segmentation {
        Segmentation::bare(Skeleton::new(base), Major::Noun)
    }

    fn hu() -> Enclitic {
        Enclitic {
            person: Person::Third,
            gender: Some(Gender::Masculine),
            number: GrammaticalNumber::Singular,
            surface: "ه".into(),
        }
    }

    #[test]
    fn article_plus_noun() {
        let lex = lexicon(&[("أولاد", "noun")]);
        let segs = segment(&Skeleton::new("الأولاد"), &lex, &CliticInventory::default());
        assert_eq!(segs.len(), 1);
        assert_eq!(segs[0].proclitics, vec![Proclitic::from(ProcliticKind::Article)]);
        assert_eq!(segs[0].base.as_str(), "أولاد");
    }

    #[test]
    fn clitic_free_word() {
        let lex = lexicon(&[("ولد", "noun")]);
        let segs = segment(&Skeleton::new("ولد"), &lex, &CliticInventory::default());
        assert_eq!(segs.len(), 1);
        assert!(segs[0].proclitics.is_empty() && segs[0].enclitic.is_none());
    }

    #[test]
    fn out_of_lexicon_gives_nothing() {
        let lex = lexicon(&[("ولد", "noun")]);
        assert!(segment(&Skeleton::new("كتاب"), &lex, &CliticInventory::default()).is_empty());
        assert!(segment(&Skeleton::default(), &lex, &CliticInventory::default()).is_empty());
    }

    #[test]
    fn ambiguous_word_is_ranked_fewest_clitics_first() {
        // وعد: the noun itself, or و + عد.
        let lex = lexicon(&[("وعد", "noun"), ("عد", "verb.past")]);
        let segs = segment(&Skeleton::new("وعد"), &lex, &CliticInventory::default());
        assert_eq!(segs.len(), 2);
        assert_eq!(segs[0].base.as_str(), "وعد");
        assert_eq!(segs[1].base.as_str(), "عد");
        assert!(segs.iter().all(|s| s.surface() == "وعد"));
    }

    #[test]
    fn article_with_enclitic_violates_n1() {
        let mut s = noun("كتاب");
        s.proclitics.push(ProcliticKind::Article.into());
        s.enclitic = Some(hu());
        assert_eq!(check_agglutination(&s), Err(vec![RuleId::N1]));
    }

    #[test]
    fn preposition_with_genitive_is_fine() {
        let mut s = noun("بيت");
        s.proclitics.push(ProcliticKind::Bi.into());
        s.base_features.case = Some(Case::Gen);
        assert_eq!(check_agglutination(&s), Ok(()));
        s.base_features.case = Some(Case::Nom);
        assert_eq!(check_agglutination(&s), Err(vec![RuleId::N3]));
    }

    #[test]
    fn article_with_tanwin_violates_n2() {
        let mut s = noun("ولد");
        s.proclitics.push(ProcliticKind::Article.into());
        s.base_features.definiteness = Some(Definiteness::Indefinite);
        assert_eq!(check_agglutination(&s), Err(vec![RuleId::N2]));
    }

    #[test]
    fn six_morphemes_violate_g1() {
        let mut s = Segmentation::bare(Skeleton::new("كتب"), Major::Verb);
        // Hand-built, ill-formed on purpose: the checker only counts.
        for k in [ProcliticKind::Interrogative, ProcliticKind::Wa, ProcliticKind::Fa, ProcliticKind::FutureSa] {
            s.proclitics.push(k.into());
        }
        s.enclitic = Some(hu());
        assert_eq!(s.morpheme_count(), 6);
        assert_eq!(check_agglutination(&s), Err(vec![RuleId::G1]));
    }

    #[test]
    fn verb_rules() {
        let mut s = Segmentation::bare(Skeleton::new("كتب"), Major::Verb);
        s.base_features.tense = Some(Tense::Imperative);
        s.proclitics.push(ProcliticKind::Interrogative.into());
        assert_eq!(check_agglutination(&s), Err(vec![RuleId::V1]));

        let mut s = Segmentation::bare(Skeleton::new("يكتب"), Major::Verb);
        s.base_features.tense = Some(Tense::Present);
        s.proclitics.push(ProcliticKind::FutureSa.into());
        assert_eq!(check_agglutination(&s), Err(vec![RuleId::V3]));
        let relaxed = AgglutinationRules { future_sin_restriction: false, ..Default::default() };
        assert_eq!(relaxed.check(&s), Ok(()));

        let mut s = Segmentation::bare(Skeleton::new("يكتب"), Major::Verb);
        s.base_features.tense = Some(Tense::Present);
        s.proclitics.push(ProcliticKind::SubjunctiveLi.into());
        assert_eq!(check_agglutination(&s), Err(vec![RuleId::V2]));

        let mut s = Segmentation::bare(Skeleton::new("جلس"), Major::Verb);
        s.base_features.transitivity = Some(Transitivity::Intransitive);
        s.enclitic = Some(hu());
        assert_eq!(check_agglutination(&s), Err(vec![RuleId::V4]));
    }

    #[test]
    fn preposition_and_article_stack_on_nouns_only() {
        let lex = lexicon(&[("بيت", "noun.common"), ("كتب", "verb.past")]);
        let inv = CliticInventory::default();
        let segs = segment(&Skeleton::new("وبالبيت"), &lex, &inv);
        assert_eq!(segs.len(), 1);
        let kinds: Vec<_> = segs[0].proclitics.iter().map(|p| p.kind).collect();
        assert_eq!(kinds, [ProcliticKind::Wa, ProcliticKind::Bi, ProcliticKind::Article]);
        assert!(segment(&Skeleton::new("بكتب"), &lex, &inv).is_empty());
    }

    #[test]
    fn particle_takes_conjunction_only() {
        let lex = Lexicon::from_entries(vec![LexiconEntry::new("في", PosTag::with_sub(Sub::Preposition))]);
        let inv = CliticInventory::default();
        assert_eq!(segment(&Skeleton::new("وفي"), &lex, &inv).len(), 1);
        assert!(segment(&Skeleton::new("أفي"), &lex, &inv).is_empty());
    }

    #[test]
    fn features_parse() {
        let f = BaseFeatures::parse_pairs("tense=present; mood=subjunctive;case=GEN;def=indefinite;voice=passive;transitivity=lazim").unwrap();
        assert_eq!(f.tense, Some(Tense::Present));
        assert_eq!(f.mood, Some(Mood::Subjunctive));
        assert_eq!(f.case, Some(Case::Gen));
        assert_eq!(f.definiteness, Some(Definiteness::Indefinite));
        assert_eq!(f.voice, Some(Voice::Passive));
        assert_eq!(f.transitivity, Some(Transitivity::Intransitive));
        assert!(BaseFeatures::parse_pairs("colour=red").is_err());
    }
}
