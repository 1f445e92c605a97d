use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::{Predicate, Query, QueryError};
use crate::facets::PedagogicalContext;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LevelThresholds {
    pub default: f64,
    #[serde(default)]
    pub levels: BTreeMap<String, f64>,
}

impl LevelThresholds {
    pub fn for_level(&self, level: &str) -> f64 {
        self.levels.get(level).copied().unwrap_or(self.default)
    }
}

/// A predicate template added when every `when` field of the context has
/// the given value. `"*"` matches any present value. Operands may be the
/// placeholders `"$difficulty"` or `"$level_threshold"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MappingRule {
    #[serde(default)]
    pub when: BTreeMap<String, String>,
    pub add: Vec<(String, Value, Value)>,
}

/// Context-to-query translation table.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryMapping {
    pub level_thresholds: LevelThresholds,
    pub rules: Vec<MappingRule>,
}

fn context_field(cp: &PedagogicalContext, field: &str) -> Option<String> {
    match field {
        "objective" => Some(cp.objective.label().to_owned()),
        "exercise_category" => Some(cp.exercise_category.label().to_owned()),
        "comprehension" => Some(cp.comprehension.label().to_owned()),
        "language_variant" => Some(cp.language_variant.to_string()),
        "difficulty" => Some(cp.difficulty.to_string()),
        "student_level" => cp.student_level.clone(),
        _ => None,
    }
}

const FIELDS: &[&str] = &["objective", "exercise_category", "comprehension", "language_variant", "difficulty", "student_level"];

impl QueryMapping {
    /// The shipped table.
    pub fn standard() -> &'static QueryMapping {
        static MAPPING: OnceLock<QueryMapping> = OnceLock::new();
        MAPPING.get_or_init(|| {
            QueryMapping::parse(include_str!("../../data/query_mapping.json")).expect("shipped mapping is valid")
        })
    }

    pub fn parse(json: &str) -> Result<Self, QueryError> {
        let m: QueryMapping = serde_json::from_str(json).map_err(|e| QueryError::Mapping(e.to_string()))?;
        m.check()?;
        Ok(m)
    }

    /// Rejects unknown context fields and templates that do not instantiate.
    pub fn check(&self) -> Result<(), QueryError> {
        for rule in &self.rules {
            if let Some(f) = rule.when.keys().find(|f| !FIELDS.contains(&f.as_str())) {
                return Err(QueryError::Mapping(format!("unknown context field {f:?}")));
            }
            for t in &rule.add {
                self.instantiate(t, &PedagogicalContext::default().with_level("x"))?;
            }
        }
        Ok(())
    }

    fn instantiate(&self, (prism, op, operand): &(String, Value, Value), cp: &PedagogicalContext) -> Result<Predicate, QueryError> {
        let operand = match operand.as_str() {
            Some("$difficulty") => Value::from(cp.difficulty.get()),
            Some("$level_threshold") => {
                Value::from(self.level_thresholds.for_level(cp.student_level.as_deref().unwrap_or("")))
            }
            _ => operand.clone(),
        };
        let triple = Value::Array(vec![Value::String(prism.clone()), op.clone(), operand]);
        let p: Predicate = serde_json::from_value(triple).map_err(|e| QueryError::Mapping(e.to_string()))?;
        if !p.is_well_typed() {
            return Err(QueryError::Mapping(format!("ill-typed template {p}")));
        }
        Ok(p)
    }

    pub fn build(&self, cp: &PedagogicalContext) -> Query {
        let mut predicates = Vec::new();
        for rule in &self.rules {
            let applies = rule.when.iter().all(|(field, want)| match context_field(cp, field) {
                Some(have) => want == "*" || *want == have,
                None => false,
            });
            if applies {
                predicates.extend(rule.add.iter().filter_map(|t| self.instantiate(t, cp).ok()));
            }
        }
        Query::new(predicates)
    }
}

/// Translates a pedagogical context with the shipped mapping table.
pub fn build_query(cp: &PedagogicalContext) -> Query {
    QueryMapping::standard().build(cp)
}
