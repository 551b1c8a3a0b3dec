use std::collections::HashMap;
use std::fmt;

use super::{Event, Universe};
use crate::error::{Error, Result};

/// A set expression over named events.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetExpr {
    Name(String),
    Empty,
    Full,
    Neg(Box<SetExpr>),
    Union(Box<SetExpr>, Box<SetExpr>),
    Intersect(Box<SetExpr>, Box<SetExpr>),
}

impl SetExpr {
    pub fn name(n: &str) -> Self {
        SetExpr::Name(n.to_string())
    }

    pub fn neg(e: SetExpr) -> Self {
        SetExpr::Neg(Box::new(e))
    }

    pub fn union(a: SetExpr, b: SetExpr) -> Self {
        SetExpr::Union(Box::new(a), Box::new(b))
    }

    pub fn intersect(a: SetExpr, b: SetExpr) -> Self {
        SetExpr::Intersect(Box::new(a), Box::new(b))
    }

    /// Evaluates the expression. Every binding must live in `universe`.
    pub fn evaluate(&self, universe: &Universe, bindings: &HashMap<String, Event>) -> Result<Event> {
        Ok(match self {
            SetExpr::Name(n) => {
                let e = bindings.get(n).ok_or_else(|| Error::UnboundName(n.clone()))?;
                if e.universe() != universe {
                    return Err(Error::UniverseMismatch);
                }
                e.clone()
            }
            SetExpr::Empty => universe.empty_event(),
            SetExpr::Full => universe.full_event(),
            SetExpr::Neg(a) => a.evaluate(universe, bindings)?.complement(),
            SetExpr::Union(a, b) => a
                .evaluate(universe, bindings)?
                .union(&b.evaluate(universe, bindings)?)?,
            SetExpr::Intersect(a, b) => a
                .evaluate(universe, bindings)?
                .intersect(&b.evaluate(universe, bindings)?)?,
        })
    }
}

impl fmt::Display for SetExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SetExpr::Name(n) => write!(f, "{n}"),
            SetExpr::Empty => write!(f, "empty"),
            SetExpr::Full => write!(f, "full"),
            SetExpr::Neg(a) => write!(f, "neg({a})"),
            SetExpr::Union(a, b) => write!(f, "union({a}, {b})"),
            SetExpr::Intersect(a, b) => write!(f, "intersect({a}, {b})"),
        }
    }
}
