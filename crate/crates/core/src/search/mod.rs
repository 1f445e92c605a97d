//! Context-to-query translation, conjunctive matching with shortest-first
//! ranking, and no-repeat rotation through a result collection.

mod execute;
mod mapping;
mod query;
mod rotation;

pub use execute::{execute, execute_on, matches, ranking_key, Collection, SearchError};
pub use mapping::{build_query, LevelThresholds, MappingRule, QueryMapping};
pub use query::{Op, Operand, Predicate, Query, QueryError};
pub use rotation::{next_from_collection, Next, RotationSession};
