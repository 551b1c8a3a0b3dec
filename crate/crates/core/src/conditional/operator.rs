use std::fmt;
use std::str::FromStr;

use super::selection::{SelectionFunction, CONDITIONAL_TABLE_CAP, SPLIT_SEARCH_CAP};
use crate::epistemic::Provenance;
use crate::error::{Error, Result};
use crate::sets::bits::{self, Mask};
use crate::sets::{Event, Universe};
use crate::verdict::{Verdict, Witness};

/// A binary operator `H ⇝ E` on events, one row per pair.
#[derive(Clone)]
pub struct ConditionalOperator {
    universe: Universe,
    table: Vec<Mask>,
    provenance: Provenance,
}

impl PartialEq for ConditionalOperator {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe && self.table == other.table
    }
}

impl Eq for ConditionalOperator {}

impl ConditionalOperator {
    /// `table[H * 2^n + E]` holds `H ⇝ E`.
    pub fn from_table(universe: &Universe, table: Vec<Mask>, provenance: Provenance) -> Result<Self> {
        universe.ensure_at_most(CONDITIONAL_TABLE_CAP, "conditional operator tables")?;
        let rows = universe.event_count() * universe.event_count();
        if table.len() != rows {
            return Err(Error::Format(format!(
                "conditional table needs {rows} rows, got {}",
                table.len()
            )));
        }
        let full = universe.full_mask();
        Ok(ConditionalOperator {
            universe: universe.clone(),
            table: table.into_iter().map(|m| m & full).collect(),
            provenance,
        })
    }

    pub fn from_fn(universe: &Universe, op: impl Fn(Mask, Mask) -> Mask, provenance: Provenance) -> Result<Self> {
        universe.ensure_at_most(CONDITIONAL_TABLE_CAP, "conditional operator tables")?;
        let events = universe.event_count() as Mask;
        let table = (0..events)
            .flat_map(|h| (0..events).map(move |e| (h, e)))
            .map(|(h, e)| op(h, e))
            .collect();
        Self::from_table(universe, table, provenance)
    }

    /// `H ⇝ E = {w : f(w, H) ⊆ E}`.
    pub fn derive(f: &SelectionFunction) -> Self {
        let u = f.universe();
        let n = u.len();
        let events = u.event_count() as Mask;
        let mut table = vec![0; (events * events) as usize];
        for h in 0..events {
            let selected: Vec<Mask> = (0..n).map(|w| f.select_mask(w, h)).collect();
            for e in 0..events {
                table[((h << n) | e) as usize] = selected
                    .iter()
                    .enumerate()
                    .filter(|&(_, &s)| bits::subset(s, e))
                    .fold(0, |m, (w, _)| m | bits::bit(w));
            }
        }
        ConditionalOperator {
            universe: u.clone(),
            table,
            provenance: Provenance::Derived,
        }
    }

    /// `f(w, H) = ∩{E : w ∈ H ⇝ E}`, with the empty intersection read as `Ω`.
    pub fn synthesize_selection(&self) -> SelectionFunction {
        let n = self.universe.len();
        let events = self.universe.event_count() as Mask;
        let full = self.universe.full_mask();
        let mut table = vec![full; n << n];
        for h in 0..events {
            for e in 0..events {
                for w in bits::members(self.apply_mask(h, e)) {
                    table[(w << n) | h as usize] &= e;
                }
            }
        }
        SelectionFunction::from_table(&self.universe, table).expect("within cap")
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    pub fn table(&self) -> &[Mask] {
        &self.table
    }

    pub fn apply_mask(&self, h: Mask, e: Mask) -> Mask {
        self.table[((h as usize) << self.universe.len()) | e as usize]
    }

    pub fn apply(&self, h: &Event, e: &Event) -> Result<Event> {
        if h.universe() != &self.universe || e.universe() != &self.universe {
            return Err(Error::UniverseMismatch);
        }
        Ok(Event::from_mask(&self.universe, self.apply_mask(h.mask(), e.mask())))
    }

    pub fn check(&self, axiom: ConditionalAxiom) -> Result<Verdict> {
        if axiom == ConditionalAxiom::C9 {
            self.universe.ensure_at_most(SPLIT_SEARCH_CAP, "C9'")?;
        }
        Ok(Verdict::from_option(check_conditional_table(
            self.universe.len(),
            &self.table,
            axiom,
        )))
    }

    pub fn satisfies(&self, axiom: ConditionalAxiom) -> bool {
        check_conditional_table(self.universe.len(), &self.table, axiom).is_none()
    }
}

impl fmt::Debug for ConditionalOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let order = bits::canonical_order(self.universe.len());
        let mut m = f.debug_map();
        for &h in &order {
            for &e in &order {
                m.entry(
                    &(self.universe.names_of(h), self.universe.names_of(e)),
                    &self.universe.names_of(self.apply_mask(h, e)),
                );
            }
        }
        m.finish()
    }
}

/// Axioms on conditional operators. `C0fin` is the finite-universe form of
/// the infinitary meet axiom: `C10'` together with `H ⇝ Ω = Ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConditionalAxiom {
    C0Fin,
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
    C9,
    C10,
}

impl ConditionalAxiom {
    pub const ALL: [ConditionalAxiom; 11] = [
        ConditionalAxiom::C0Fin,
        ConditionalAxiom::C1,
        ConditionalAxiom::C2,
        ConditionalAxiom::C3,
        ConditionalAxiom::C4,
        ConditionalAxiom::C5,
        ConditionalAxiom::C6,
        ConditionalAxiom::C7,
        ConditionalAxiom::C8,
        ConditionalAxiom::C9,
        ConditionalAxiom::C10,
    ];

    /// The axiom matching selection condition `Si'` (`i` in 1..=9).
    pub fn matching(i: usize) -> Option<Self> {
        (1..=9).contains(&i).then(|| Self::ALL[i])
    }

    pub fn name(self) -> &'static str {
        [
            "C0'fin", "C1'", "C2'", "C3'", "C4'", "C5'", "C6'", "C7'", "C8'", "C9'", "C10'",
        ][self as usize]
    }
}

impl fmt::Display for ConditionalAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ConditionalAxiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().replace('′', "'");
        let t = t.trim_end_matches("fin").trim_end_matches('\'');
        t.strip_prefix('C')
            .and_then(|d| d.parse::<usize>().ok())
            .and_then(|i| Self::ALL.get(i).copied())
            .ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }
}

/// Checks an axiom on a conditional table over `n` worlds (or atoms); the
/// first violation in canonical event order is returned.
pub(crate) fn check_conditional_table(n: usize, t: &[Mask], axiom: ConditionalAxiom) -> Option<Witness> {
    use ConditionalAxiom::*;
    let full = bits::full(n);
    let order = bits::canonical_order(n);
    let op = |h: Mask, e: Mask| t[((h as usize) << n) | e as usize];
    let low = |m: Mask| m.trailing_zeros() as usize;
    let fail = |sets: &[(&'static str, Mask)], bad: Mask| Witness::sets(sets).with_world(low(bad));
    match axiom {
        C0Fin => check_conditional_table(n, t, C10).or_else(|| {
            order.iter().find_map(|&h| {
                let bad = full & !op(h, full);
                (bad != 0).then(|| fail(&[("H", h), ("E", full)], bad))
            })
        }),
        C1 => order.iter().find_map(|&h| {
            let bad = full & !op(h, h);
            (bad != 0).then(|| fail(&[("H", h)], bad))
        }),
        C2 => triples(&order).find_map(|(h, h2, e)| {
            let bad = op(h, h2) & op(h2, h) & op(h, e) & !op(h2, e);
            (bad != 0).then(|| fail(&[("H", h), ("H'", h2), ("E", e)], bad))
        }),
        C3 => pairs(&order).find_map(|(h, e)| {
            let bad = (h & op(h, e)) ^ (h & e);
            (bad != 0).then(|| fail(&[("H", h), ("E", e)], bad))
        }),
        C4 => pairs(&order).find_map(|(h, e)| {
            let bad = full & !(op(h, e) | op(h, full & !e));
            (bad != 0).then(|| fail(&[("H", h), ("E", e)], bad))
        }),
        C5 => triples(&order).find_map(|(h1, h2, e)| {
            let bad = op(h1, e) & op(h2, e) & !op(h1 | h2, e);
            (bad != 0).then(|| fail(&[("H1", h1), ("H2", h2), ("E", e)], bad))
        }),
        C6 => triples(&order).find_map(|(h, e1, e2)| {
            let bad = op(h, e1) & op(h, e2) & !op(h & e1, e2);
            (bad != 0).then(|| fail(&[("H", h), ("E1", e1), ("E2", e2)], bad))
        }),
        C7 => triples(&order).find_map(|(h, e1, e2)| {
            let bad = !op(h, full & !e1) & op(h, e2) & !op(h & e1, e2) & full;
            (bad != 0).then(|| fail(&[("H", h), ("E1", e1), ("E2", e2)], bad))
        }),
        C8 => order.iter().find_map(|&h| {
            let bad = op(h, 0);
            (h != 0 && bad != 0).then(|| fail(&[("H", h), ("E", 0)], bad))
        }),
        C9 => {
            let events = 1usize << n;
            let mut cover = vec![0 as Mask; events * events];
            for &h in &order {
                cover.iter_mut().for_each(|c| *c = 0);
                for (h1, h2) in bits::covering_pairs(h) {
                    for e1 in 0..events {
                        let a = op(h1, e1 as Mask);
                        if a == 0 {
                            continue;
                        }
                        let row = &mut cover[e1 * events..(e1 + 1) * events];
                        for (e2, c) in row.iter_mut().enumerate() {
                            *c |= a & op(h2, e2 as Mask);
                        }
                    }
                }
                let found = pairs(&order).find_map(|(e1, e2)| {
                    let bad = op(h, e1 | e2) & !cover[e1 as usize * events + e2 as usize];
                    (bad != 0).then(|| fail(&[("H", h), ("E1", e1), ("E2", e2)], bad))
                });
                if found.is_some() {
                    return found;
                }
            }
            None
        }
        C10 => triples(&order).find_map(|(h, e1, e2)| {
            let bad = (op(h, e1) & op(h, e2)) ^ op(h, e1 & e2);
            (bad != 0).then(|| fail(&[("H", h), ("E1", e1), ("E2", e2)], bad))
        }),
    }
}

fn pairs(order: &[Mask]) -> impl Iterator<Item = (Mask, Mask)> + '_ {
    order.iter().flat_map(move |&a| order.iter().map(move |&b| (a, b)))
}

fn triples(order: &[Mask]) -> impl Iterator<Item = (Mask, Mask, Mask)> + '_ {
    pairs(order).flat_map(move |(a, b)| order.iter().map(move |&c| (a, b, c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditional::SelectionCondition;

    fn ab() -> Universe {
        Universe::new(["a", "b"]).unwrap()
    }

    fn strict_inclusion(u: &Universe) -> ConditionalOperator {
        let full = u.full_mask();
        ConditionalOperator::from_fn(u, |h, e| if bits::subset(h, e) { full } else { 0 }, Provenance::User).unwrap()
    }

    #[test]
    fn derive_examples() {
        let u = Universe::numbered(3).unwrap();
        let id = SelectionFunction::from_fn(&u, |_, h| h).unwrap();
        assert_eq!(ConditionalOperator::derive(&id), strict_inclusion(&u));
        let none = SelectionFunction::from_fn(&u, |_, _| 0).unwrap();
        assert!(ConditionalOperator::derive(&none).table().iter().all(|&m| m == 7));

        // a ≺ b at a, b ≺ a at b
        let u = ab();
        let f = SelectionFunction::from_fn(&u, |w, h| if h & (1 << w) != 0 { 1 << w } else { h }).unwrap();
        let op = ConditionalOperator::derive(&f);
        assert_eq!(op.apply_mask(0b11, 0b01), 0b01);
        assert_eq!(op.provenance(), Provenance::Derived);
    }

    #[test]
    fn synthesis_examples() {
        let u = ab();
        let f = strict_inclusion(&u).synthesize_selection();
        for w in 0..2 {
            for h in 0..4 {
                assert_eq!(f.select_mask(w, h), h);
            }
        }
        let all = ConditionalOperator::from_fn(&u, |_, _| 3, Provenance::User).unwrap();
        assert!(all.synthesize_selection().table().iter().all(|&m| m == 0));
    }

    #[test]
    fn inclusion_operator_fails_c3_at_a_two_world_antecedent() {
        let u = ab();
        let w = strict_inclusion(&u).check(ConditionalAxiom::C3).unwrap();
        let w = w.witness().unwrap().clone();
        // H = {a,b}, E = {b}: H ∩ (H ⇝ E) = ∅ but H ∩ E = {b}
        assert_eq!(w.set("H"), Some(0b11));
        assert_eq!(w.set("E"), Some(0b10));
        assert_eq!(w.world, Some(1));
    }

    #[test]
    fn derived_operators_satisfy_c0fin() {
        let u = ab();
        for code in 0..(1u64 << 16) {
            let table: Vec<Mask> = (0..8).map(|i| ((code >> (2 * i)) & 3) as Mask).collect();
            let f = SelectionFunction::from_table(&u, table).unwrap();
            let op = ConditionalOperator::derive(&f);
            assert!(op.satisfies(ConditionalAxiom::C0Fin));
            assert_eq!(op.synthesize_selection(), f);
            if code % 997 == 0 {
                for c in SelectionCondition::ALL {
                    let axiom = ConditionalAxiom::matching(c.index()).unwrap();
                    if f.satisfies(c) {
                        assert!(op.satisfies(axiom), "{c} -> {axiom}");
                    }
                }
            }
        }
    }

    #[test]
    fn c9_witness_and_cap() {
        let u = Universe::numbered(4).unwrap();
        let op = strict_inclusion(&u);
        assert!(op.check(ConditionalAxiom::C9).is_err());
        assert!(op.check(ConditionalAxiom::C1).unwrap().holds());
    }

    #[test]
    fn axiom_names_parse() {
        for a in ConditionalAxiom::ALL {
            assert_eq!(a.name().parse::<ConditionalAxiom>().unwrap(), a);
        }
        assert_eq!("C0'".parse::<ConditionalAxiom>().unwrap(), ConditionalAxiom::C0Fin);
        assert_eq!("C10".parse::<ConditionalAxiom>().unwrap(), ConditionalAxiom::C10);
        assert!("C11'".parse::<ConditionalAxiom>().is_err());
    }
}
