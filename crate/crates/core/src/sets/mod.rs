//! Finite universes and their events, plus the symbolic finite/cofinite
//! algebra over the natural numbers.

pub mod bits;
mod expr;
mod family;
mod fincof;
mod probe;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
pub use bits::Mask;
pub use expr::SetExpr;
pub use family::WitnessFamily;
pub use fincof::{fincof_op, FinCofEvent, FinCofKind, FinCofOp};
pub use probe::ProbeAlgebra;

/// Largest universe accepted for single-event work.
pub const MAX_WORLDS: usize = 24;

/// An ordered set of distinctly named worlds. Cheap to clone.
#[derive(Clone)]
pub struct Universe(Arc<[String]>);

impl Universe {
    pub fn new<I, S>(names: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        if names.len() > MAX_WORLDS {
            return Err(Error::UniverseTooLarge {
                size: names.len(),
                cap: MAX_WORLDS,
                what: "events",
            });
        }
        for (i, a) in names.iter().enumerate() {
            if names[..i].contains(a) {
                return Err(Error::DuplicateWorld(a.clone()));
            }
        }
        Ok(Universe(names.into()))
    }

    /// Worlds named `w1..wn`.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| format!("w{i}")))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn name(&self, i: usize) -> &str {
        &self.0[i]
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.0
            .iter()
            .position(|w| w == name)
            .ok_or_else(|| Error::UnknownWorld(name.to_string()))
    }

    pub fn full_mask(&self) -> Mask {
        bits::full(self.len())
    }

    pub fn event_count(&self) -> usize {
        1 << self.len()
    }

    /// Fails unless the universe fits a table of `2^n` rows under `cap`.
    pub fn ensure_at_most(&self, cap: usize, what: &'static str) -> Result<()> {
        if self.len() > cap {
            Err(Error::UniverseTooLarge {
                size: self.len(),
                cap,
                what,
            })
        } else {
            Ok(())
        }
    }

    pub fn mask_of<S: AsRef<str>>(&self, names: &[S]) -> Result<Mask> {
        names
            .iter()
            .try_fold(0, |m, w| Ok(m | bits::bit(self.index_of(w.as_ref())?)))
    }

    pub fn event<S: AsRef<str>>(&self, names: &[S]) -> Result<Event> {
        Ok(Event::from_mask(self, self.mask_of(names)?))
    }

    pub fn empty_event(&self) -> Event {
        Event::from_mask(self, 0)
    }

    pub fn full_event(&self) -> Event {
        Event::from_mask(self, self.full_mask())
    }

    /// All events in canonical enumeration order.
    pub fn events(&self) -> Vec<Event> {
        bits::canonical_order(self.len())
            .into_iter()
            .map(|m| Event::from_mask(self, m))
            .collect()
    }

    /// Sorted names of the worlds in `m`.
    pub fn names_of(&self, m: Mask) -> Vec<String> {
        bits::members(m).map(|i| self.0[i].clone()).collect()
    }
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for Universe {}

impl fmt::Debug for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

/// A subset of a finite universe.
#[derive(Clone, PartialEq, Eq)]
pub struct Event {
    universe: Universe,
    bits: Mask,
}

impl Event {
    pub fn from_mask(universe: &Universe, bits: Mask) -> Self {
        Event {
            universe: universe.clone(),
            bits: bits & universe.full_mask(),
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn mask(&self) -> Mask {
        self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn is_full(&self) -> bool {
        self.bits == self.universe.full_mask()
    }

    pub fn contains(&self, world: &str) -> Result<bool> {
        Ok(self.bits & bits::bit(self.universe.index_of(world)?) != 0)
    }

    pub fn contains_index(&self, i: usize) -> bool {
        self.bits & bits::bit(i) != 0
    }

    pub fn complement(&self) -> Event {
        Event::from_mask(&self.universe, !self.bits)
    }

    fn same_universe(&self, other: &Event) -> Result<()> {
        if self.universe == other.universe {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    pub fn union(&self, other: &Event) -> Result<Event> {
        self.same_universe(other)?;
        Ok(Event::from_mask(&self.universe, self.bits | other.bits))
    }

    pub fn intersect(&self, other: &Event) -> Result<Event> {
        self.same_universe(other)?;
        Ok(Event::from_mask(&self.universe, self.bits & other.bits))
    }

    pub fn is_subset(&self, other: &Event) -> Result<bool> {
        self.same_universe(other)?;
        Ok(bits::subset(self.bits, other.bits))
    }

    /// Canonical serialization: the member names in universe order.
    pub fn world_names(&self) -> Vec<String> {
        self.universe.names_of(self.bits)
    }
}

impl fmt::Debug for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.world_names()).finish()
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.world_names().join(","))
    }
}
