use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::Collection;
use crate::corpus::DocId;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Next {
    Doc(DocId),
    Exhausted,
}

/// Walks a collection in order without serving a document twice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RotationSession {
    pub collection: Collection,
    pub served: BTreeSet<DocId>,
}

impl RotationSession {
    pub fn new(collection: Collection) -> Self {
        RotationSession { collection, served: BTreeSet::new() }
    }

    pub fn next_doc(&mut self) -> Next {
        match self.collection.doc_ids.iter().find(|id| !self.served.contains(*id)) {
            Some(id) => {
                self.served.insert(id.clone());
                Next::Doc(id.clone())
            }
            None => Next::Exhausted,
        }
    }

    pub fn remaining(&self) -> usize {
        self.collection.doc_ids.iter().filter(|id| !self.served.contains(*id)).count()
    }
}

pub fn next_from_collection(session: &mut RotationSession) -> Next {
    session.next_doc()
}
