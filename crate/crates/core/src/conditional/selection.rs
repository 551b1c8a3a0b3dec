use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sets::bits::{self, Mask};
use crate::sets::{Event, Universe};
use crate::verdict::{Verdict, Witness};

/// Largest universe for which selection and conditional tables are built.
pub const CONDITIONAL_TABLE_CAP: usize = 8;

/// Largest universe for the axioms that search all splits `H1 ∪ H2 = H`.
pub const SPLIT_SEARCH_CAP: usize = 3;

/// A set-theoretic selection function: `f(w, H)` for every world and event.
#[derive(Clone, PartialEq, Eq)]
pub struct SelectionFunction {
    universe: Universe,
    table: Vec<Mask>,
}

impl SelectionFunction {
    /// `table[w * 2^n + H]` holds `f(w, H)`.
    pub fn from_table(universe: &Universe, table: Vec<Mask>) -> Result<Self> {
        universe.ensure_at_most(CONDITIONAL_TABLE_CAP, "selection function tables")?;
        let rows = universe.len() * universe.event_count();
        if table.len() != rows {
            return Err(Error::Format(format!(
                "selection table needs {rows} rows, got {}",
                table.len()
            )));
        }
        let full = universe.full_mask();
        Ok(SelectionFunction {
            universe: universe.clone(),
            table: table.into_iter().map(|m| m & full).collect(),
        })
    }

    pub fn from_fn(universe: &Universe, f: impl Fn(usize, Mask) -> Mask) -> Result<Self> {
        universe.ensure_at_most(CONDITIONAL_TABLE_CAP, "selection function tables")?;
        let events = universe.event_count() as Mask;
        let table = (0..universe.len())
            .flat_map(|w| (0..events).map(move |h| (w, h)))
            .map(|(w, h)| f(w, h))
            .collect();
        Self::from_table(universe, table)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn table(&self) -> &[Mask] {
        &self.table
    }

    pub fn select_mask(&self, w: usize, h: Mask) -> Mask {
        self.table[(w << self.universe.len()) | h as usize]
    }

    pub fn select(&self, w: usize, h: &Event) -> Result<Event> {
        if h.universe() != &self.universe {
            return Err(Error::UniverseMismatch);
        }
        Ok(Event::from_mask(&self.universe, self.select_mask(w, h.mask())))
    }

    pub fn check(&self, cond: SelectionCondition) -> Result<Verdict> {
        if cond == SelectionCondition::S9 {
            self.universe.ensure_at_most(SPLIT_SEARCH_CAP, "S9'")?;
        }
        Ok(Verdict::from_option(check_selection_table(
            self.universe.len(),
            &self.table,
            cond,
        )))
    }

    pub fn satisfies(&self, cond: SelectionCondition) -> bool {
        check_selection_table(self.universe.len(), &self.table, cond).is_none()
    }

    /// Least set containing `start` and closed under `w ∈ R ⇒ f(w, H) ⊆ R`.
    pub fn reachable_worlds(&self, start: usize) -> Event {
        let n = self.universe.len();
        let reach: Vec<Mask> = (0..n)
            .map(|w| {
                (0..self.universe.event_count() as Mask)
                    .fold(0, |m, h| m | self.select_mask(w, h))
            })
            .collect();
        let mut seen = bits::bit(start);
        let mut frontier = seen;
        while frontier != 0 {
            let next = bits::members(frontier).fold(0, |m, w| m | reach[w]);
            frontier = next & !seen;
            seen |= next;
        }
        Event::from_mask(&self.universe, seen)
    }
}

impl fmt::Debug for SelectionFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for w in 0..self.universe.len() {
            for h in bits::canonical_order(self.universe.len()) {
                m.entry(
                    &(self.universe.name(w), self.universe.names_of(h)),
                    &self.universe.names_of(self.select_mask(w, h)),
                );
            }
        }
        m.finish()
    }
}

/// Conditions on selection functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SelectionCondition {
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
    S7,
    S8,
    S9,
}

impl SelectionCondition {
    pub const ALL: [SelectionCondition; 9] = [
        SelectionCondition::S1,
        SelectionCondition::S2,
        SelectionCondition::S3,
        SelectionCondition::S4,
        SelectionCondition::S5,
        SelectionCondition::S6,
        SelectionCondition::S7,
        SelectionCondition::S8,
        SelectionCondition::S9,
    ];

    pub fn index(self) -> usize {
        self as usize + 1
    }

    pub fn from_index(i: usize) -> Option<Self> {
        Self::ALL.get(i.checked_sub(1)?).copied()
    }

    pub fn name(self) -> &'static str {
        ["S1'", "S2'", "S3'", "S4'", "S5'", "S6'", "S7'", "S8'", "S9'"][self as usize]
    }
}

impl fmt::Display for SelectionCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SelectionCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_end_matches(['\'', '′']);
        t.strip_prefix('S')
            .and_then(|d| d.parse().ok())
            .and_then(Self::from_index)
            .ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }
}

/// Checks a condition on a selection table over `n` worlds. Worlds are
/// scanned in index order and events in canonical order.
pub(crate) fn check_selection_table(n: usize, t: &[Mask], cond: SelectionCondition) -> Option<Witness> {
    use SelectionCondition::*;
    let order = bits::canonical_order(n);
    let f = |w: usize, h: Mask| t[(w << n) | h as usize];
    for w in 0..n {
        let found = match cond {
            S1 => order.iter().find_map(|&h| {
                let bad = f(w, h) & !h;
                (bad != 0).then(|| Witness::sets(&[("H", h), ("f", f(w, h))]))
            }),
            S2 => order.iter().find_map(|&h| {
                order.iter().find_map(|&h2| {
                    let (a, b) = (f(w, h), f(w, h2));
                    (bits::subset(a, h2) && bits::subset(b, h) && a != b)
                        .then(|| Witness::sets(&[("H", h), ("H'", h2)]))
                })
            }),
            S3 => order.iter().find_map(|&h| {
                (h & bits::bit(w) != 0 && f(w, h) != bits::bit(w))
                    .then(|| Witness::sets(&[("H", h), ("f", f(w, h))]))
            }),
            S4 => order
                .iter()
                .find_map(|&h| (f(w, h).count_ones() > 1).then(|| Witness::sets(&[("H", h), ("f", f(w, h))]))),
            S5 => order.iter().find_map(|&h1| {
                order.iter().find_map(|&h2| {
                    let bad = f(w, h1 | h2) & !(f(w, h1) | f(w, h2));
                    (bad != 0).then(|| Witness::sets(&[("H1", h1), ("H2", h2)]))
                })
            }),
            S6 => order.iter().find_map(|&h| {
                order.iter().find_map(|&e| {
                    (bits::subset(f(w, h), e) && !bits::subset(f(w, h & e), f(w, h)))
                        .then(|| Witness::sets(&[("H", h), ("E", e)]))
                })
            }),
            S7 => order.iter().find_map(|&h| {
                order.iter().find_map(|&e| {
                    let fe = f(w, h) & e;
                    (fe != 0 && !bits::subset(f(w, h & e), fe)).then(|| Witness::sets(&[("H", h), ("E", e)]))
                })
            }),
            S8 => order
                .iter()
                .find_map(|&h| (h != 0 && f(w, h) == 0).then(|| Witness::sets(&[("H", h)]))),
            S9 => order.iter().find_map(|&h| {
                let fh = f(w, h);
                // the condition is upward closed in E2, so E2 = f(w,H) \ E1 is the only case
                order.iter().find_map(|&e1| {
                    let e2 = fh & !e1;
                    let split = bits::covering_pairs(h)
                        .any(|(h1, h2)| bits::subset(f(w, h1), e1) && bits::subset(f(w, h2), e2));
                    (!split).then(|| Witness::sets(&[("H", h), ("E1", e1), ("E2", e2)]))
                })
            }),
        };
        if let Some(wit) = found {
            return Some(wit.with_world(w));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Universe {
        Universe::new(["a", "b"]).unwrap()
    }

    #[test]
    fn identity_selection() {
        let u = ab();
        let f = SelectionFunction::from_fn(&u, |_, h| h).unwrap();
        assert!(f.satisfies(SelectionCondition::S1));
        let v = f.check(SelectionCondition::S3).unwrap();
        let w = v.witness().unwrap();
        assert_eq!(w.world, Some(0));
        assert_eq!(w.set("H"), Some(0b11));
        assert_eq!(w.set("f"), Some(0b11));
    }

    #[test]
    fn singleton_selection_satisfies_s4() {
        let u = Universe::numbered(3).unwrap();
        let f = SelectionFunction::from_fn(&u, |_, h| if h == 0 { 0 } else { h & h.wrapping_neg() }).unwrap();
        assert!(f.satisfies(SelectionCondition::S4));
        let g = SelectionFunction::from_fn(&u, |_, h| h).unwrap();
        assert!(!g.satisfies(SelectionCondition::S4));
    }

    #[test]
    fn reachability() {
        let u = ab();
        let none = SelectionFunction::from_fn(&u, |_, _| 0).unwrap();
        assert_eq!(none.reachable_worlds(0).mask(), 0b01);
        let all = SelectionFunction::from_fn(&u, |_, h| h).unwrap();
        assert!(all.reachable_worlds(0).is_full());
        // the selection of a ≺ b at a, b ≺ a at b
        let pref = SelectionFunction::from_fn(&u, |w, h| if h & (1 << w) != 0 { 1 << w } else { h }).unwrap();
        assert!(pref.reachable_worlds(0).is_full());
        // a chain that only ever selects b
        let to_b = SelectionFunction::from_fn(&Universe::numbered(3).unwrap(), |w, _| if w == 0 { 0b010 } else { 0 }).unwrap();
        assert_eq!(to_b.reachable_worlds(0).mask(), 0b011);
        assert_eq!(to_b.reachable_worlds(2).mask(), 0b100);
    }

    #[test]
    fn names_parse() {
        for c in SelectionCondition::ALL {
            assert_eq!(c.name().parse::<SelectionCondition>().unwrap(), c);
        }
        assert_eq!("S7".parse::<SelectionCondition>().unwrap(), SelectionCondition::S7);
        assert!("S0'".parse::<SelectionCondition>().is_err());
    }

    #[test]
    fn split_search_is_capped() {
        let u = Universe::numbered(4).unwrap();
        let f = SelectionFunction::from_fn(&u, |_, h| h).unwrap();
        assert!(f.check(SelectionCondition::S9).is_err());
        assert!(f.check(SelectionCondition::S1).unwrap().holds());
    }
}
