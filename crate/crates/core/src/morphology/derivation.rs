use serde::{Deserialize, Serialize};

use super::{classify_root, Lexicon, MorphError, Root, RootClass, Sub};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DerivedKind {
    ActiveParticiple,
    PassiveParticiple,
    PlaceNoun,
}

/// Builds a derived noun from a sound triliteral root: فاعل, مفعول, or the
/// place noun مفعلة. Output is undiacritized.
pub fn derive(root: &str, kind: DerivedKind) -> Result<String, MorphError> {
    derive_with(root, kind, None)
}

/// Like [`derive`], but a lexicon entry tagged `noun.place` with the same
/// root overrides the place-noun template.
pub fn derive_with(root: &str, kind: DerivedKind, lexicon: Option<&Lexicon>) -> Result<String, MorphError> {
    let parsed = Root::parse(root)?;
    if classify_root(root)? != RootClass::Sahih {
        return Err(MorphError::UnsupportedRoot(root.to_owned()));
    }
    let [c1, c2, c3] = parsed.radicals();
    let form: String = match kind {
        DerivedKind::ActiveParticiple => [c1, 'ا', c2, c3].iter().collect(),
        DerivedKind::PassiveParticiple => ['م', c1, c2, 'و', c3].iter().collect(),
        DerivedKind::PlaceNoun => {
            let key = parsed.to_string();
            let listed = lexicon.and_then(|lex| {
                lex.entries()
                    .iter()
                    .find(|e| e.tag.is(Sub::PlaceNoun) && e.root.as_deref() == Some(key.as_str()))
            });
            match listed {
                Some(e) => e.skeleton.as_str().to_owned(),
                None => ['م', c1, c2, c3, 'ة'].iter().collect(),
            }
        }
    };
    Ok(form)
}
