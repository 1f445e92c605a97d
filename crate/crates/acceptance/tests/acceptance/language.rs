use std::collections::BTreeSet;
use std::time::Instant;

use nusus::exercises::{generate_extraction, ClosedClasses, ExtractionCategory};
use nusus::morphology::{
    conjugate, decline, derive, strip_diacritics, Baab, Case, CaseMarking, Definiteness, DerivedKind, Gender,
    GrammaticalNumber, NounLemma, Person, PluralKind, Subject, Tense,
};

use crate::{ensure, fixtures, Check};

/// رسل read thirteen ways, every reading told apart by marks alone.
const READINGS: [&str; 13] = [
    "رَسَلْ", "رَسَّلْ", "رُسِّلْ", "رَسِّلْ", "رُسُلْ", "رُسُلَ", "رُسُلِ", "رُسُلٌ", "رُسُلٍ", "رِسْلٌ", "رِسْلٍ",
    "رَسْلٌ", "رَسْلٍ",
];

pub fn stripping() -> Check {
    let distinct: BTreeSet<_> = READINGS.iter().collect();
    ensure!(distinct.len() == 13, "readings are not distinct");
    let started = Instant::now();
    let stripped: Vec<_> = READINGS.iter().map(|w| strip_diacritics(w)).collect();
    let elapsed = started.elapsed();
    for (w, s) in READINGS.iter().zip(&stripped) {
        ensure!(s.as_str() == "رسل", "{w} stripped to {}", s.as_str());
    }
    ensure!(elapsed.as_micros() < 1000, "took {elapsed:?}");
    Ok(())
}

pub fn conjugation() -> Check {
    let he = Subject::new(Person::Third, Gender::Masculine, GrammaticalNumber::Singular);
    let goldens = [
        ("نصر", Baab::AU, "يَنْصُرُ"),
        ("جلس", Baab::AI, "يَجْلِسُ"),
        ("منع", Baab::AA, "يَمْنَعُ"),
        ("علم", Baab::IA, "يَعْلَمُ"),
        ("حسب", Baab::II, "يَحْسِبُ"),
        ("كرم", Baab::UU, "يَكْرُمُ"),
    ];
    for (root, baab, expected) in goldens {
        let got = conjugate(root, baab, Tense::Present, he).map_err(|e| format!("{root}: {e}"))?;
        ensure!(got == expected, "{root}: got {got}, expected {expected}");
    }
    Ok(())
}

pub fn declension() -> Check {
    let def = |case| CaseMarking::new(case, Definiteness::Definite);
    let run = |lemma: &str, number, marking, kind| {
        decline(&NounLemma::new(lemma), number, marking, kind).map_err(|e| format!("{lemma}: {e}"))
    };
    let got = run("مفكر", GrammaticalNumber::Plural, def(Case::Nom), PluralKind::SoundMasc)?;
    ensure!(got == "مفكرون", "sound masculine plural gave {got}");
    let got = run("وسادة", GrammaticalNumber::Plural, def(Case::Nom), PluralKind::SoundFem)?;
    ensure!(strip_diacritics(&got).as_str() == "وسادات", "sound feminine plural gave {got}");
    for (case, expected) in [(Case::Nom, "ولدان"), (Case::Acc, "ولدين"), (Case::Gen, "ولدين")] {
        let got = run("ولد", GrammaticalNumber::Dual, def(case), PluralKind::SoundMasc)?;
        ensure!(got == expected, "dual {case:?} gave {got}");
    }
    let indef = CaseMarking::new(Case::Nom, Definiteness::Indefinite);
    let got = run("أولاد", GrammaticalNumber::Singular, indef, PluralKind::SoundMasc)?;
    ensure!(got == "أولادٌ", "indefinite nominative gave {got}");
    Ok(())
}

pub fn derivation() -> Check {
    let goldens = [
        ("كتب", DerivedKind::ActiveParticiple, "كاتب"),
        ("كتب", DerivedKind::PassiveParticiple, "مكتوب"),
        ("درس", DerivedKind::PlaceNoun, "مدرسة"),
    ];
    for (root, kind, expected) in goldens {
        let got = derive(root, kind).map_err(|e| format!("{root}: {e}"))?;
        ensure!(got == expected, "{root} {kind:?}: got {got}");
    }
    Ok(())
}

pub fn extraction() -> Check {
    let doc = fixtures::annotate("extraction", "primary", "أَنَا الآنَ مَشْغُولٌ بِهَذَا");
    let ex = generate_extraction(&doc, 0, &ExtractionCategory::ALL, ClosedClasses::standard())
        .map_err(|e| e.to_string())?;
    let got: BTreeSet<(String, String)> =
        ex.items.iter().map(|i| (i.category.clone(), strip_diacritics(&i.answer_key).into_string())).collect();
    let expected: BTreeSet<(String, String)> = [("pronoun", "أنا"), ("adverb", "الآن"), ("demonstrative", "هذا")]
        .map(|(c, w)| (c.to_owned(), w.to_owned()))
        .into();
    ensure!(got == expected, "got {got:?}");
    Ok(())
}
