use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::facets::{FacetValue, PrismRegistry};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Op {
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "in")]
    In,
    /// The set value counts at least `n` of a label.
    #[serde(rename = "count>=")]
    CountGe,
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Op::Eq => "=",
            Op::Le => "<=",
            Op::Ge => ">=",
            Op::In => "in",
            Op::CountGe => "count>=",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Operand {
    Int(i64),
    Fraction(f64),
    Label(String),
    Labels(Vec<String>),
    /// `label` `"*"` stands for the total over all labels.
    Count { label: String, n: u64 },
}

impl fmt::Display for Operand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operand::Int(n) => write!(f, "{n}"),
            Operand::Fraction(x) => write!(f, "{x}"),
            Operand::Label(s) => f.write_str(s),
            Operand::Labels(v) => write!(f, "{{{}}}", v.join(", ")),
            Operand::Count { label, n } => write!(f, "{label}:{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("prism {0:?} is not registered")]
    UnknownPrism(String),
    #[error("operator {op} does not take operand {operand}")]
    BadOperand { op: String, operand: String },
    #[error("query mapping: {0}")]
    Mapping(String),
}

/// One facet constraint, serialized as a `[prism, op, operand]` triple.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(into = "(String, Op, Operand)", from = "(String, Op, Operand)")]
pub struct Predicate {
    pub prism: String,
    pub op: Op,
    pub operand: Operand,
}

impl From<(String, Op, Operand)> for Predicate {
    fn from((prism, op, operand): (String, Op, Operand)) -> Self {
        Predicate { prism, op, operand }
    }
}

impl From<Predicate> for (String, Op, Operand) {
    fn from(p: Predicate) -> Self {
        (p.prism, p.op, p.operand)
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.prism, self.op, self.operand)
    }
}

fn as_number(v: &FacetValue) -> Option<f64> {
    match v {
        FacetValue::Integer(n) => Some(*n as f64),
        FacetValue::Fraction(x) => Some(*x),
        _ => None,
    }
}

fn operand_number(o: &Operand) -> Option<f64> {
    match o {
        Operand::Int(n) => Some(*n as f64),
        Operand::Fraction(x) => Some(*x),
        _ => None,
    }
}

impl Predicate {
    pub fn new(prism: &str, op: Op, operand: Operand) -> Self {
        Predicate { prism: prism.to_owned(), op, operand }
    }

    pub fn count_at_least(prism: &str, label: &str, n: u64) -> Self {
        Predicate::new(prism, Op::CountGe, Operand::Count { label: label.to_owned(), n })
    }

    /// Whether the operand shape fits the operator.
    pub fn is_well_typed(&self) -> bool {
        match self.op {
            Op::Eq => !matches!(self.operand, Operand::Labels(_) | Operand::Count { .. }),
            Op::Le | Op::Ge => operand_number(&self.operand).is_some(),
            Op::In => matches!(self.operand, Operand::Labels(_)),
            Op::CountGe => matches!(self.operand, Operand::Count { .. }),
        }
    }

    /// Evaluates against a facet value; a value of the wrong shape does not
    /// satisfy the predicate.
    pub fn eval(&self, value: &FacetValue) -> bool {
        match (self.op, &self.operand) {
            (Op::Eq, Operand::Label(l)) => value.as_label() == Some(l.as_str()),
            (Op::Eq, Operand::Int(n)) => value.as_integer() == Some(*n),
            (Op::Eq, Operand::Fraction(x)) => value.as_fraction().is_some_and(|v| (v - x).abs() < 1e-9),
            (Op::Le, o) => matches!((as_number(value), operand_number(o)), (Some(v), Some(b)) if v <= b + 1e-12),
            (Op::Ge, o) => matches!((as_number(value), operand_number(o)), (Some(v), Some(b)) if v + 1e-12 >= b),
            (Op::In, Operand::Labels(ls)) => value.as_label().is_some_and(|v| ls.iter().any(|l| l == v)),
            (Op::CountGe, Operand::Count { label, n }) => value.count(label).is_some_and(|c| c >= *n),
            _ => false,
        }
    }
}

/// A conjunction of predicates; serialized as the list of triples.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Query {
    pub predicates: Vec<Predicate>,
}

impl Query {
    pub fn new(predicates: Vec<Predicate>) -> Self {
        Query { predicates }
    }

    pub fn validate(&self, registry: &PrismRegistry) -> Result<(), QueryError> {
        for p in &self.predicates {
            if !registry.contains(&p.prism) {
                return Err(QueryError::UnknownPrism(p.prism.clone()));
            }
            if !p.is_well_typed() {
                return Err(QueryError::BadOperand { op: p.op.to_string(), operand: p.operand.to_string() });
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triples_round_trip() {
        let q = Query::new(vec![
            Predicate::new("difficulty", Op::Eq, Operand::Int(2)),
            Predicate::new("unknown_vocabulary", Op::Le, Operand::Fraction(0.2)),
            Predicate::count_at_least("verb_class", "sahih", 1),
            Predicate::new("title", Op::In, Operand::Labels(vec!["a".into()])),
        ]);
        let json = serde_json::to_string(&q).unwrap();
        assert!(json.starts_with(r#"[["difficulty","=",2],["unknown_vocabulary","<=",0.2]"#), "{json}");
        assert_eq!(serde_json::from_str::<Query>(&json).unwrap(), q);
    }

    #[test]
    fn evaluation() {
        let set = FacetValue::Set([("sahih".to_owned(), 2), ("mutal".to_owned(), 1)].into());
        assert!(Predicate::count_at_least("v", "sahih", 2).eval(&set));
        assert!(Predicate::count_at_least("v", "*", 3).eval(&set));
        assert!(!Predicate::count_at_least("v", "mahmuz", 1).eval(&set));
        assert!(!Predicate::count_at_least("v", "sahih", 1).eval(&FacetValue::Integer(5)));
        let le = Predicate::new("u", Op::Le, Operand::Fraction(0.25));
        assert!(le.eval(&FacetValue::Fraction(0.25)));
        assert!(!le.eval(&FacetValue::Fraction(0.26)));
        assert!(Predicate::new("d", Op::Eq, Operand::Int(1)).eval(&FacetValue::Integer(1)));
        assert!(!Predicate::new("d", Op::Eq, Operand::Int(1)).eval(&FacetValue::Label("1".into())));
    }

    #[test]
    fn validation() {
        let registry = PrismRegistry::builtin(Default::default());
        assert_eq!(
            Query::new(vec![Predicate::new("nope", Op::Eq, Operand::Int(1))]).validate(&registry),
            Err(QueryError::UnknownPrism("nope".into()))
        );
        assert!(matches!(
            Query::new(vec![Predicate::new("length", Op::In, Operand::Int(1))]).validate(&registry),
            Err(QueryError::BadOperand { .. })
        ));
    }
}
