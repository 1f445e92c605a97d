//! A ten-base lexicon, every clitic combination over it, and legality rules
//! written out independently of the segmenter.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use nusus::morphology::{segment, CliticInventory, Lexicon, ProcliticKind, Skeleton, MAX_MORPHEMES};

use crate::{ensure, Check};
use ProcliticKind::*;

const LEXICON: &str = "skeleton\tlemma\ttag\troot\troot_class\ttransitivity\tdiptote\tbroken_plural\tfeatures
كتب\tكَتَبَ\tverb.past\tكتب\t\tmoutaadi\t\t\t
يكتب\tيَكْتُبُ\tverb.present\tكتب\t\tmoutaadi\t\t\t
اكتب\tاُكْتُبْ\tverb.imperative\tكتب\t\tmoutaadi\t\t\t
جلس\tجَلَسَ\tverb.past\tجلس\t\tlazim\t\t\t
ضرب\tضُرِبَ\tverb.past\tضرب\t\tmoutaadi\t\t\tvoice=passive
يذهب\tيَذْهَبَ\tverb.present\tذهب\t\tlazim\t\t\tmood=subjunctive
كتاب\tكِتَاب\tnoun.common\t\t\t\t\t\t
ولد\tوَلَدٌ\tnoun.common\t\t\t\t\t\tcase=NOM
قلم\tقَلَمٌ\tnoun.common\t\t\t\t\t\tdef=indefinite
في\tفِي\tparticle.preposition\t\t\t\t\t\t
";

const ENCLITICS: [&str; 11] = ["ني", "نا", "ك", "كما", "كم", "كن", "ه", "ها", "هما", "هم", "هن"];

#[derive(Clone, Copy, PartialEq)]
enum Class {
    Verb,
    Noun,
    Particle,
}

#[derive(Clone, Copy, Default)]
struct Traits {
    present: bool,
    imperative: bool,
    subjunctive: bool,
    passive: bool,
    intransitive: bool,
    non_genitive: bool,
    indefinite: bool,
}

struct Base {
    form: &'static str,
    class: Class,
    t: Traits,
}

fn bases() -> Vec<Base> {
    let b = |form, class, t| Base { form, class, t };
    let none = Traits::default();
    vec![
        b("كتب", Class::Verb, none),
        b("يكتب", Class::Verb, Traits { present: true, ..none }),
        b("اكتب", Class::Verb, Traits { imperative: true, ..none }),
        b("جلس", Class::Verb, Traits { intransitive: true, ..none }),
        b("ضرب", Class::Verb, Traits { passive: true, ..none }),
        b("يذهب", Class::Verb, Traits { present: true, subjunctive: true, intransitive: true, ..none }),
        b("كتاب", Class::Noun, none),
        b("ولد", Class::Noun, Traits { non_genitive: true, ..none }),
        b("قلم", Class::Noun, Traits { indefinite: true, ..none }),
        b("في", Class::Particle, none),
    ]
}

fn allowed(class: Class) -> &'static [ProcliticKind] {
    match class {
        Class::Verb => &[Interrogative, Wa, Fa, SubjunctiveLi, CorroborativeLa, FutureSa],
        Class::Noun => &[Interrogative, Wa, Fa, Bi, Ka, Li, Article],
        Class::Particle => &[Wa, Fa],
    }
}

fn slot(k: ProcliticKind) -> u8 {
    match k {
        Interrogative => 0,
        Wa | Fa => 1,
        Article => 3,
        _ => 2,
    }
}

fn written(kinds: &[ProcliticKind]) -> String {
    kinds
        .iter()
        .enumerate()
        .map(|(i, k)| match k {
            Interrogative => "أ",
            Wa => "و",
            Fa => "ف",
            FutureSa => "س",
            Bi => "ب",
            Ka => "ك",
            Article if i > 0 && kinds[i - 1] == Li => "ل",
            Article => "ال",
            SubjunctiveLi | CorroborativeLa | Li => "ل",
        })
        .collect()
}

fn broken_rules(kinds: &[ProcliticKind], b: &Base, enclitic: bool) -> Vec<&'static str> {
    let has = |k| kinds.contains(&k);
    let verb = b.class == Class::Verb;
    let t = b.t;
    let mut v = Vec::new();
    if verb && has(Interrogative) && (t.imperative || t.subjunctive) {
        v.push("V1");
    }
    if has(SubjunctiveLi) && t.present {
        v.push("V2");
    }
    if has(FutureSa) && t.present {
        v.push("V3");
    }
    if verb && enclitic && (t.passive || t.intransitive) {
        v.push("V4");
    }
    if has(Article) && enclitic {
        v.push("N1");
    }
    if has(Article) && t.indefinite {
        v.push("N2");
    }
    if [Bi, Ka, Li].iter().any(|k| has(*k)) && t.non_genitive {
        v.push("N3");
    }
    if kinds.len() + usize::from(enclitic) + 1 > 5 {
        v.push("G1");
    }
    v
}

fn in_inventory(kinds: &[ProcliticKind], b: &Base, enclitic: bool) -> bool {
    kinds.iter().all(|k| allowed(b.class).contains(k))
        && kinds.windows(2).all(|w| slot(w[0]) < slot(w[1]))
        && !(b.class == Class::Particle && enclitic)
}

fn sequences() -> BTreeSet<Vec<ProcliticKind>> {
    let mut seqs = BTreeSet::from([vec![]]);
    for a in ProcliticKind::ALL {
        seqs.insert(vec![a]);
        for b in ProcliticKind::ALL {
            seqs.insert(vec![a, b]);
        }
    }
    for class in [Class::Verb, Class::Noun, Class::Particle] {
        let mut acc: Vec<Vec<ProcliticKind>> = vec![vec![]];
        for s in 0..=3u8 {
            let members: Vec<_> = allowed(class).iter().copied().filter(|k| slot(*k) == s).collect();
            let mut next = acc.clone();
            for prefix in &acc {
                for &m in &members {
                    let mut p = prefix.clone();
                    p.push(m);
                    next.push(p);
                }
            }
            acc = next;
        }
        seqs.extend(acc);
    }
    seqs
}

type Analysis = (Vec<ProcliticKind>, String, Option<String>);

struct Closure {
    legal: BTreeMap<String, BTreeSet<Analysis>>,
    surfaces: BTreeSet<String>,
    broken: BTreeMap<&'static str, usize>,
    longest_candidate: usize,
}

fn closure() -> Closure {
    let bases = bases();
    let mut c = Closure { legal: BTreeMap::new(), surfaces: BTreeSet::new(), broken: BTreeMap::new(), longest_candidate: 0 };
    for kinds in sequences() {
        for b in &bases {
            for enclitic in std::iter::once(None).chain(ENCLITICS.iter().copied().map(Some)) {
                let surface = format!("{}{}{}", written(&kinds), b.form, enclitic.unwrap_or(""));
                c.surfaces.insert(surface.clone());
                c.longest_candidate = c.longest_candidate.max(kinds.len() + 1 + usize::from(enclitic.is_some()));
                if !in_inventory(&kinds, b, enclitic.is_some()) {
                    continue;
                }
                let rules = broken_rules(&kinds, b, enclitic.is_some());
                if rules.is_empty() {
                    let key = (kinds.clone(), b.form.to_owned(), enclitic.map(str::to_owned));
                    c.legal.entry(surface).or_default().insert(key);
                }
                for r in rules {
                    *c.broken.entry(r).or_default() += 1;
                }
            }
        }
    }
    c
}

fn analyses(surface: &str, lexicon: &Lexicon, inventory: &CliticInventory) -> Vec<(Analysis, usize)> {
    segment(&Skeleton::new(surface), lexicon, inventory)
        .into_iter()
        .map(|s| {
            let kinds = s.proclitics.iter().map(|p| p.kind).collect();
            let count = s.morpheme_count();
            ((kinds, s.base.as_str().to_owned(), s.enclitic.map(|e| e.surface)), count)
        })
        .collect()
}

pub fn oracle() -> Check {
    let lexicon = Lexicon::parse(LEXICON).map_err(|e| e.to_string())?;
    let inventory = CliticInventory::default();
    let c = closure();
    ensure!(c.surfaces.len() >= 500, "only {} cases", c.surfaces.len());
    for rule in ["N1", "N2", "N3", "G1"] {
        ensure!(c.broken.get(rule).copied().unwrap_or(0) > 0, "no case breaks {rule}");
    }
    let started = Instant::now();
    let mut disagreements = Vec::new();
    for surface in &c.surfaces {
        let got: BTreeSet<Analysis> = analyses(surface, &lexicon, &inventory).into_iter().map(|(a, _)| a).collect();
        let expected = c.legal.get(surface).cloned().unwrap_or_default();
        if got != expected {
            disagreements.push(surface.clone());
        }
    }
    let elapsed = started.elapsed();
    ensure!(
        disagreements.is_empty(),
        "{} disagreements out of {}, first {:?}",
        disagreements.len(),
        c.surfaces.len(),
        disagreements.first()
    );
    ensure!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    Ok(())
}

pub fn ceiling() -> Check {
    ensure!(MAX_MORPHEMES == 5, "ceiling is {MAX_MORPHEMES}");
    let lexicon = Lexicon::parse(LEXICON).map_err(|e| e.to_string())?;
    let inventory = CliticInventory::default();
    let c = closure();
    ensure!(c.longest_candidate > 5, "no candidate above the ceiling was tried");
    for surface in &c.surfaces {
        for (a, count) in analyses(surface, &lexicon, &inventory) {
            ensure!(count <= 5, "{surface} analysed into {count} morphemes: {a:?}");
        }
    }
    ensure!(!analyses("أوبكتابه", &lexicon, &inventory).is_empty(), "five-morpheme word rejected");
    Ok(())
}
