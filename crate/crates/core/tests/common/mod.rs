#![allow(dead_code)]

use nusus::corpus::{
    annotate_raw, AnnotatedDocument, AutoAnnotation, DocumentMetadata, LanguageVariant,
};
use nusus::morphology::{CliticInventory, Lexicon};

pub fn metadata(title: &str, level: &str) -> DocumentMetadata {
    DocumentMetadata {
        title: title.to_owned(),
        author: "fixture".to_owned(),
        level: level.to_owned(),
        language_variant: Some(LanguageVariant::Native),
        ..Default::default()
    }
}

/// Auto-annotates `text` with the starter lexicon; panics on unknown words.
pub fn annotate(title: &str, text: &str) -> AnnotatedDocument {
    annotate_with(title, "primary", text)
}

pub fn annotate_with(title: &str, level: &str, text: &str) -> AnnotatedDocument {
    match annotate_raw(text, metadata(title, level), &Lexicon::starter(), &CliticInventory::default()) {
        AutoAnnotation::Complete(d) => d,
        AutoAnnotation::Pending(p) => panic!("unknown words in fixture {title}: {p:?}"),
    }
}

/// Sentences that exercise every built-in prism; one per line.
pub const SENTENCES: &[&str] = &[
    "جَلَسَ رَجُلٌ أَعْمَى.",
    "طَلَعَتِ الشَّمْسُ.",
    "أَكَلُوا.",
    "كَتَبَ الوَلَدُ الدَّرْسَ.",
    "المَطَرُ غَزِيرٌ.",
    "أَنَا الآنَ مَشْغُولٌ بِهَذَا.",
    "هَذِهِ مَدْرَسَةٌ كَبِيرَةٌ.",
    "نَامَ الطَّالِبُ.",
    "قَرَأَ المُعَلِّمُ الرِّسَالَةَ.",
    "ذَهَبَ مُحَمَّدٌ إِلَى المَدْرَسَةِ.",
    "هُوَ فِي البَيْتِ.",
    "وَقَفَ الوَلَدُ أَمَامَ البَابِ.",
    "الوَلَدُ يَلْعَبُ فِي الحَدِيقَةِ.",
    "عَادَ الصَّدِيقُ أَمْسِ.",
    "شَرِبَ الوَلَدُ المَاءَ.",
    "سَأَلَ الطَّالِبُ المُعَلِّمَ.",
    "الَّذِي كَتَبَ الرِّسَالَةَ صَدِيقٌ.",
    "يَسْمَعُ الوَلَدُ الصَّوْتَ.",
    "خَرَجَ الرِّجَالُ مِنَ البَيْتِ.",
    "القَمَرُ جَمِيلٌ.",
];

/// A deterministic 20-document corpus: document `i` holds `1 + i % 5`
/// lines drawn from the sentence list.
pub fn fixture_corpus() -> Vec<AnnotatedDocument> {
    (0..20)
        .map(|i| {
            let lines = 1 + i % 5;
            let text: Vec<&str> = (0..lines).map(|j| SENTENCES[(i * 3 + j * 7) % SENTENCES.len()]).collect();
            let level = ["primary", "middle", "secondary"][i % 3];
            annotate_with(&format!("text {i}"), level, &text.join("\n"))
        })
        .collect()
}
