use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::PedagogicalContext;
use crate::corpus::AnnotatedDocument;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FacetType {
    Integer,
    Enumeration,
    ValueSet,
    Fraction,
}

/// The value a prism assigns to a document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FacetValue {
    Integer(i64),
    Label(String),
    /// Label counts; absent labels count zero.
    Set(BTreeMap<String, u64>),
    Fraction(f64),
}

impl FacetValue {
    pub fn facet_type(&self) -> FacetType {
        match self {
            FacetValue::Integer(_) => FacetType::Integer,
            FacetValue::Label(_) => FacetType::Enumeration,
            FacetValue::Set(_) => FacetType::ValueSet,
            FacetValue::Fraction(_) => FacetType::Fraction,
        }
    }

    pub fn as_integer(&self) -> Option<i64> {
        match self {
            FacetValue::Integer(n) => Some(*n),
            _ => None,
        }
    }

    pub fn as_fraction(&self) -> Option<f64> {
        match self {
            FacetValue::Fraction(x) => Some(*x),
            _ => None,
        }
    }

    pub fn as_label(&self) -> Option<&str> {
        match self {
            FacetValue::Label(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_set(&self) -> Option<&BTreeMap<String, u64>> {
        match self {
            FacetValue::Set(m) => Some(m),
            _ => None,
        }
    }

    /// Count of `label` in a set value; `"*"` sums every label.
    pub fn count(&self, label: &str) -> Option<u64> {
        let set = self.as_set()?;
        Some(if label == "*" { set.values().sum() } else { set.get(label).copied().unwrap_or(0) })
    }
}

impl fmt::Display for FacetValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FacetValue::Integer(n) => write!(f, "{n}"),
            FacetValue::Label(s) => f.write_str(s),
            FacetValue::Fraction(x) => write!(f, "{x:.3}"),
            FacetValue::Set(m) => {
                let parts: Vec<String> = m.iter().map(|(k, v)| format!("{k}:{v}")).collect();
                write!(f, "{{{}}}", parts.join(", "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PrismError {
    #[error("no word list for level {0:?}")]
    MissingWordList(String),
    #[error("context lacks {0}")]
    MissingContext(&'static str),
    #[error("{0}")]
    Failed(String),
}

/// A prism's result inside a facet vector: a value, or the error marker that
/// replaces it when the prism failed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FacetOutcome {
    Value(FacetValue),
    Error { error: String },
}

impl FacetOutcome {
    pub fn value(&self) -> Option<&FacetValue> {
        match self {
            FacetOutcome::Value(v) => Some(v),
            FacetOutcome::Error { .. } => None,
        }
    }
}

impl From<Result<FacetValue, PrismError>> for FacetOutcome {
    fn from(r: Result<FacetValue, PrismError>) -> Self {
        match r {
            Ok(v) => FacetOutcome::Value(v),
            Err(e) => FacetOutcome::Error { error: e.to_string() },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Facet {
    pub prism: String,
    pub value: FacetOutcome,
}

/// A named, deterministic property of a document in a teaching context.
pub trait Prism: Send + Sync {
    fn name(&self) -> &str;

    fn facet_type(&self) -> FacetType;

    /// The part of the context the prism reads, as a cache key. `None` for
    /// prisms that look only at the document.
    fn context_key(&self, _cp: &PedagogicalContext) -> Option<String> {
        None
    }

    /// One context per distinct `context_key` worth precomputing when a
    /// document is stored.
    fn cached_contexts(&self) -> Vec<PedagogicalContext> {
        vec![PedagogicalContext::default()]
    }

    fn compute(&self, doc: &AnnotatedDocument, cp: &PedagogicalContext) -> Result<FacetValue, PrismError>;
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("prism {0:?} is already registered")]
pub struct DuplicatePrism(pub String);

/// Prisms in registration order.
#[derive(Clone, Default)]
pub struct PrismRegistry {
    prisms: Vec<Arc<dyn Prism>>,
}

impl fmt::Debug for PrismRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names()).finish()
    }
}

impl PrismRegistry {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn register(&mut self, prism: impl Prism + 'static) -> Result<(), DuplicatePrism> {
        self.register_arc(Arc::new(prism))
    }

    pub fn register_arc(&mut self, prism: Arc<dyn Prism>) -> Result<(), DuplicatePrism> {
        if self.get(prism.name()).is_some() {
            return Err(DuplicatePrism(prism.name().to_owned()));
        }
        self.prisms.push(prism);
        Ok(())
    }

    pub fn get(&self, name: &str) -> Option<&dyn Prism> {
        self.prisms.iter().find(|p| p.name() == name).map(|p| p.as_ref())
    }

    pub fn contains(&self, name: &str) -> bool {
        self.get(name).is_some()
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.prisms.iter().map(|p| p.name())
    }

    pub fn iter(&self) -> impl Iterator<Item = &dyn Prism> {
        self.prisms.iter().map(|p| p.as_ref())
    }

    pub fn len(&self) -> usize {
        self.prisms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prisms.is_empty()
    }

    /// One facet per prism in registration order. A failing prism yields an
    /// error marker; the others are still computed.
    pub fn compute_all(&self, doc: &AnnotatedDocument, cp: &PedagogicalContext) -> Vec<Facet> {
        self.prisms
            .iter()
            .map(|p| Facet { prism: p.name().to_owned(), value: p.compute(doc, cp).into() })
            .collect()
    }
}

/// Key under which a prism's value for `cp` is cached.
pub fn cache_key(prism: &dyn Prism, cp: &PedagogicalContext) -> String {
    match prism.context_key(cp) {
        None => prism.name().to_owned(),
        Some(k) => format!("{}@{}", prism.name(), k),
    }
}

/// Every cache entry for `doc`: each prism under each of its cached
/// contexts.
pub fn cache_entries(registry: &PrismRegistry, doc: &AnnotatedDocument) -> BTreeMap<String, FacetOutcome> {
    let mut out = BTreeMap::new();
    for p in registry.iter() {
        for cp in p.cached_contexts() {
            let key = cache_key(p, &cp);
            out.entry(key).or_insert_with(|| p.compute(doc, &cp).into());
        }
    }
    out
}
