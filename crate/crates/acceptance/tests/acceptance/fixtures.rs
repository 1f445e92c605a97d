use nusus::corpus::{annotate_raw, AnnotatedDocument, AutoAnnotation, DocumentMetadata, LanguageVariant};
use nusus::morphology::{CliticInventory, Lexicon};

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
    "يَسْمَعُ الوَلَدُ الصَّوْتَ.",
    "خَرَجَ الرِّجَالُ مِنَ البَيْتِ.",
    "القَمَرُ جَمِيلٌ.",
];

pub const PRIMARY_WORDS: &str = "جلس رجل أعمى طلعت شمس مطر غزير أنا الآن مشغول هذا هذه مدرسة كبيرة";
pub const MIDDLE_WORDS: &str = "كتب ولد درس نام طالب قرأ معلم رسالة ذهب محمد إلى هو في بيت";

pub fn metadata(title: &str, level: &str) -> DocumentMetadata {
    DocumentMetadata {
        title: title.to_owned(),
        author: "acceptance".to_owned(),
        level: level.to_owned(),
        language_variant: Some(LanguageVariant::Native),
        ..Default::default()
    }
}

pub fn annotate(title: &str, level: &str, text: &str) -> AnnotatedDocument {
    match annotate_raw(text, metadata(title, level), &Lexicon::starter(), &CliticInventory::default()) {
        AutoAnnotation::Complete(d) => d,
        AutoAnnotation::Pending(p) => panic!("unknown words in {title}: {p:?}"),
    }
}

/// Twenty documents; document `i` has `1 + i % 5` lines.
pub fn corpus() -> Vec<AnnotatedDocument> {
    (0..20)
        .map(|i| {
            let text: Vec<&str> = (0..1 + i % 5).map(|j| SENTENCES[(i * 3 + j * 7) % SENTENCES.len()]).collect();
            annotate(&format!("text {i}"), ["primary", "middle", "secondary"][i % 3], &text.join("\n"))
        })
        .collect()
}
