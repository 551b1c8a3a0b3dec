//! Outcomes of property checks, with the witness that refutes a property.

use serde_json::{json, Map, Value};

use crate::sets::{FinCofEvent, Mask, Universe};

/// A counterexample over a finite universe: an optional world, a tuple of
/// worlds (for relation and order properties), and named events.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Witness {
    pub world: Option<usize>,
    pub tuple: Vec<usize>,
    pub sets: Vec<(&'static str, Mask)>,
}

impl Witness {
    pub fn at(world: usize) -> Self {
        Witness {
            world: Some(world),
            ..Default::default()
        }
    }

    pub fn tuple(worlds: &[usize]) -> Self {
        Witness {
            tuple: worlds.to_vec(),
            ..Default::default()
        }
    }

    pub fn sets(sets: &[(&'static str, Mask)]) -> Self {
        Witness {
            sets: sets.to_vec(),
            ..Default::default()
        }
    }

    pub fn with_world(mut self, world: usize) -> Self {
        self.world = Some(world);
        self
    }

    pub fn with_set(mut self, name: &'static str, m: Mask) -> Self {
        self.sets.push((name, m));
        self
    }

    pub fn set(&self, name: &str) -> Option<Mask> {
        self.sets.iter().find(|(n, _)| *n == name).map(|&(_, m)| m)
    }

    pub fn to_json(&self, u: &Universe) -> Value {
        let mut obj = Map::new();
        if let Some(w) = self.world {
            obj.insert("world".into(), json!(u.name(w)));
        }
        if !self.tuple.is_empty() {
            let t: Vec<&str> = self.tuple.iter().map(|&i| u.name(i)).collect();
            obj.insert("tuple".into(), json!(t));
        }
        for (name, m) in &self.sets {
            obj.insert((*name).into(), json!(u.names_of(*m)));
        }
        Value::Object(obj)
    }

    pub fn render(&self, u: &Universe) -> String {
        self.to_json(u).to_string()
    }
}

/// A world of the symbolic domain: a natural number, or the extra world `∞`
/// of the ω-frame.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymWorld {
    Nat(u64),
    Infinity,
}

impl SymWorld {
    pub fn to_json(self) -> Value {
        match self {
            SymWorld::Nat(k) => json!(k),
            SymWorld::Infinity => json!("inf"),
        }
    }
}

/// A counterexample over the symbolic finite/cofinite domain.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SymWitness {
    pub world: Option<SymWorld>,
    pub sets: Vec<(&'static str, FinCofEvent)>,
}

impl SymWitness {
    pub fn set(&self, name: &str) -> Option<&FinCofEvent> {
        self.sets.iter().find(|(n, _)| *n == name).map(|(_, e)| e)
    }

    pub fn to_json(&self) -> Value {
        let mut obj = Map::new();
        if let Some(w) = self.world {
            obj.insert("world".into(), w.to_json());
        }
        for (name, e) in &self.sets {
            obj.insert((*name).into(), serde_json::to_value(e).unwrap_or(Value::Null));
        }
        Value::Object(obj)
    }
}

/// Result of checking a property: it holds, or it fails with a witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict<W = Witness> {
    Holds,
    Fails(W),
}

impl<W> Verdict<W> {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            Verdict::Holds => None,
            Verdict::Fails(w) => Some(w),
        }
    }

    pub fn from_option(w: Option<W>) -> Self {
        match w {
            None => Verdict::Holds,
            Some(w) => Verdict::Fails(w),
        }
    }
}
