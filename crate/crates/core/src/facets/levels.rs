use std::collections::{BTreeMap, BTreeSet};
use std::io;
use std::path::Path;

use sha2::{Digest, Sha256};

use crate::morphology::strip_diacritics;

/// Known-word skeletons per student level.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LevelWordLists {
    lists: BTreeMap<String, BTreeSet<String>>,
}

impl LevelWordLists {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds (or replaces) a level from file contents: one word per line,
    /// `#` comments and blank lines ignored, diacritics stripped.
    pub fn insert_text(&mut self, level: &str, text: &str) {
        let words = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| strip_diacritics(l).into_string())
            .collect();
        self.lists.insert(level.to_owned(), words);
    }

    pub fn insert<I, S>(&mut self, level: &str, words: I)
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let set = words.into_iter().map(|w| strip_diacritics(w.as_ref()).into_string()).collect();
        self.lists.insert(level.to_owned(), set);
    }

    /// Reads every `<level>.txt` in `dir`. A missing directory gives an
    /// empty set of lists.
    pub fn load_dir(dir: &Path) -> io::Result<Self> {
        let mut out = Self::new();
        let entries = match std::fs::read_dir(dir) {
            Ok(e) => e,
            Err(e) if e.kind() == io::ErrorKind::NotFound => return Ok(out),
            Err(e) => return Err(e),
        };
        for entry in entries {
            let path = entry?.path();
            if path.extension().and_then(|e| e.to_str()) != Some("txt") {
                continue;
            }
            let Some(level) = path.file_stem().and_then(|s| s.to_str()) else { continue };
            out.insert_text(level, &std::fs::read_to_string(&path)?);
        }
        Ok(out)
    }

    pub fn get(&self, level: &str) -> Option<&BTreeSet<String>> {
        self.lists.get(level)
    }

    pub fn levels(&self) -> impl Iterator<Item = &str> {
        self.lists.keys().map(String::as_str)
    }

    pub fn to_text(&self, level: &str) -> Option<String> {
        self.get(level).map(|ws| ws.iter().map(|w| format!("{w}\n")).collect())
    }

    /// Short content hash of a level's list, so cached values computed from
    /// an older list are never reused.
    pub fn digest(&self, level: &str) -> Option<String> {
        let words = self.get(level)?;
        let mut h = Sha256::new();
        for w in words {
            h.update(w.as_bytes());
            h.update(b"\n");
        }
        Some(hex::encode(&h.finalize()[..6]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_lists_are_normalized() {
        let mut l = LevelWordLists::new();
        l.insert_text("primary", "# known words\nكَتَبَ\n\n  ولد \n");
        let words: Vec<_> = l.get("primary").unwrap().iter().cloned().collect();
        assert_eq!(words, vec!["كتب", "ولد"]);
    }

    #[test]
    fn digest_tracks_content() {
        let mut a = LevelWordLists::new();
        a.insert("p", ["ولد"]);
        let d1 = a.digest("p").unwrap();
        a.insert("p", ["ولد", "بنت"]);
        assert_ne!(d1, a.digest("p").unwrap());
        assert!(a.digest("q").is_none());
    }

    #[test]
    fn loads_directory() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("middle.txt"), "شمس\n").unwrap();
        std::fs::write(dir.path().join("notes.md"), "ignored").unwrap();
        let l = LevelWordLists::load_dir(dir.path()).unwrap();
        assert_eq!(l.levels().collect::<Vec<_>>(), vec!["middle"]);
        assert!(LevelWordLists::load_dir(&dir.path().join("absent")).unwrap().levels().next().is_none());
    }
}
