use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{Query, QueryError};
use crate::corpus::{AnnotatedDocument, CorpusError, CorpusStore, DocId, DocSummary};
use crate::facets::{FacetOutcome, PedagogicalContext, PrismRegistry};

#[derive(Debug, Error)]
pub enum SearchError {
    #[error(transparent)]
    Query(#[from] QueryError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

/// Ranked documents satisfying a query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Collection {
    pub doc_ids: Vec<DocId>,
    pub generated_from: PedagogicalContext,
}

impl Collection {
    pub fn len(&self) -> usize {
        self.doc_ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.doc_ids.is_empty()
    }
}

/// Shortest first: line count, then word count, then id.
pub fn ranking_key(s: &DocSummary) -> (usize, usize, DocId) {
    (s.line_count, s.word_count, s.id.clone())
}

fn satisfied(outcome: Option<FacetOutcome>, p: &super::Predicate) -> bool {
    outcome.as_ref().and_then(FacetOutcome::value).is_some_and(|v| p.eval(v))
}

/// Every stored document satisfying all predicates, ranked shortest first.
/// Facet values come from the manifest cache when present.
pub fn execute(q: &Query, cp: &PedagogicalContext, store: &CorpusStore) -> Result<Collection, SearchError> {
    q.validate(store.registry())?;
    let manifest = store.manifest()?;
    let mut hits = Vec::new();
    for entry in manifest.docs.values() {
        let mut ok = true;
        for p in &q.predicates {
            if !satisfied(store.facet(entry, &p.prism, cp)?, p) {
                ok = false;
                break;
            }
        }
        if ok {
            hits.push(ranking_key(&entry.summary));
        }
    }
    hits.sort();
    Ok(Collection { doc_ids: hits.into_iter().map(|(_, _, id)| id).collect(), generated_from: cp.clone() })
}

/// Whether `doc` satisfies every predicate, computing facets directly.
pub fn matches(q: &Query, cp: &PedagogicalContext, doc: &AnnotatedDocument, registry: &PrismRegistry) -> bool {
    q.predicates.iter().all(|p| {
        let outcome = registry.get(&p.prism).map(|prism| FacetOutcome::from(prism.compute(doc, cp)));
        satisfied(outcome, p)
    })
}

/// Ranked ids of the matching documents in an in-memory set.
pub fn execute_on(
    q: &Query,
    cp: &PedagogicalContext,
    docs: &[AnnotatedDocument],
    registry: &PrismRegistry,
) -> Result<Collection, QueryError> {
    q.validate(registry)?;
    let mut hits: Vec<_> = docs
        .iter()
        .filter(|d| matches(q, cp, d, registry))
        .map(|d| ranking_key(&DocSummary::of(d)))
        .collect();
    hits.sort();
    Ok(Collection { doc_ids: hits.into_iter().map(|(_, _, id)| id).collect(), generated_from: cp.clone() })
}
