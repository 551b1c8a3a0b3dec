use std::fmt;
use std::str::FromStr;

use super::KripkeRelation;
use crate::error::{Error, Result};
use crate::sets::bits::{self, Mask};
use crate::sets::{Event, Universe};
use crate::verdict::{Verdict, Witness};

/// Largest universe for which a knowledge operator is materialized as a table.
pub const KNOWLEDGE_TABLE_CAP: usize = 16;

/// Where an operator table came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Derived,
    User,
    Builtin,
}

/// A total map from events to events, one row per event mask.
#[derive(Clone)]
pub struct KnowledgeOperator {
    universe: Universe,
    table: Vec<Mask>,
    provenance: Provenance,
}

impl PartialEq for KnowledgeOperator {
    fn eq(&self, other: &Self) -> bool {
        self.universe == other.universe && self.table == other.table
    }
}

impl Eq for KnowledgeOperator {}

impl KnowledgeOperator {
    pub fn from_table(universe: &Universe, table: Vec<Mask>, provenance: Provenance) -> Result<Self> {
        universe.ensure_at_most(KNOWLEDGE_TABLE_CAP, "knowledge operator tables")?;
        if table.len() != universe.event_count() {
            return Err(Error::Format(format!(
                "operator table needs {} rows, got {}",
                universe.event_count(),
                table.len()
            )));
        }
        let full = universe.full_mask();
        Ok(KnowledgeOperator {
            universe: universe.clone(),
            table: table.into_iter().map(|m| m & full).collect(),
            provenance,
        })
    }

    pub fn from_fn(universe: &Universe, f: impl Fn(Mask) -> Mask, provenance: Provenance) -> Result<Self> {
        universe.ensure_at_most(KNOWLEDGE_TABLE_CAP, "knowledge operator tables")?;
        let table = (0..universe.event_count() as Mask).map(f).collect();
        Self::from_table(universe, table, provenance)
    }

    /// `K(E) = {w : K(w) ⊆ E}`.
    pub fn derive(rel: &KripkeRelation) -> Result<Self> {
        let adj = rel.adjacency().to_vec();
        Self::from_fn(
            rel.universe(),
            |e| {
                adj.iter()
                    .enumerate()
                    .filter(|&(_, &succ)| bits::subset(succ, e))
                    .fold(0, |m, (w, _)| m | bits::bit(w))
            },
            Provenance::Derived,
        )
    }

    /// `K(w) = ∩{E : w ∈ op(E)}`, with the empty intersection read as `Ω`.
    pub fn synthesize_relation(&self) -> KripkeRelation {
        let n = self.universe.len();
        let mut adj = vec![self.universe.full_mask(); n];
        for (e, &out) in self.table.iter().enumerate() {
            for w in bits::members(out) {
                adj[w] &= e as Mask;
            }
        }
        KripkeRelation::new(&self.universe, adj).expect("one successor set per world")
    }

    /// Events with `op(E) = E`, in canonical order.
    pub fn fixed_points(&self) -> Vec<Event> {
        bits::canonical_order(self.universe.len())
            .into_iter()
            .filter(|&e| self.table[e as usize] == e)
            .map(|e| Event::from_mask(&self.universe, e))
            .collect()
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

    pub fn apply_mask(&self, e: Mask) -> Mask {
        self.table[e as usize]
    }

    pub fn apply(&self, e: &Event) -> Result<Event> {
        if e.universe() != &self.universe {
            return Err(Error::UniverseMismatch);
        }
        Ok(Event::from_mask(&self.universe, self.apply_mask(e.mask())))
    }

    pub fn check(&self, axiom: EpistemicAxiom) -> Verdict {
        Verdict::from_option(check_table(self.universe.len(), &self.table, axiom))
    }

    pub fn satisfies(&self, axiom: EpistemicAxiom) -> bool {
        check_table(self.universe.len(), &self.table, axiom).is_none()
    }
}

impl fmt::Debug for KnowledgeOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for e in bits::canonical_order(self.universe.len()) {
            m.entry(
                &self.universe.names_of(e),
                &self.universe.names_of(self.table[e as usize]),
            );
        }
        m.finish()
    }
}

/// The set-theoretic knowledge axioms. `A5fin` is the finite-universe form of
/// the infinitary intersection axiom: `A1` together with `K(Ω) = Ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EpistemicAxiom {
    A1Prime,
    A1,
    A2,
    A3,
    A4,
    A5Fin,
}

impl EpistemicAxiom {
    pub const ALL: [EpistemicAxiom; 6] = [
        EpistemicAxiom::A1Prime,
        EpistemicAxiom::A1,
        EpistemicAxiom::A2,
        EpistemicAxiom::A3,
        EpistemicAxiom::A4,
        EpistemicAxiom::A5Fin,
    ];

    pub fn name(self) -> &'static str {
        match self {
            EpistemicAxiom::A1Prime => "A1'",
            EpistemicAxiom::A1 => "A1",
            EpistemicAxiom::A2 => "A2",
            EpistemicAxiom::A3 => "A3",
            EpistemicAxiom::A4 => "A4",
            EpistemicAxiom::A5Fin => "A5fin",
        }
    }
}

impl fmt::Display for EpistemicAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for EpistemicAxiom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "A1'" | "A1′" | "A1p" | "A1prime" => EpistemicAxiom::A1Prime,
            "A1" => EpistemicAxiom::A1,
            "A2" => EpistemicAxiom::A2,
            "A3" => EpistemicAxiom::A3,
            "A4" => EpistemicAxiom::A4,
            "A5" | "A5fin" => EpistemicAxiom::A5Fin,
            other => return Err(Error::UnknownProperty(other.to_string())),
        })
    }
}

/// Checks an axiom on a table over `n` worlds (or atoms). The first violation
/// in canonical event order is returned.
pub(crate) fn check_table(n: usize, t: &[Mask], axiom: EpistemicAxiom) -> Option<Witness> {
    let full = bits::full(n);
    let order = bits::canonical_order(n);
    let k = |e: Mask| t[e as usize];
    let first_world = |m: Mask| m.trailing_zeros() as usize;
    match axiom {
        EpistemicAxiom::A1Prime => {
            // monotonicity reduces to one-world extensions; adding the highest
            // world first keeps F in canonical order
            for &e in &order {
                for w in (0..n).rev() {
                    let f = e | bits::bit(w);
                    if f != e && !bits::subset(k(e), k(f)) {
                        return Some(Witness::sets(&[("E", e), ("F", f)]).with_world(first_world(k(e) & !k(f))));
                    }
                }
            }
            None
        }
        EpistemicAxiom::A1 => {
            for &e in &order {
                for &f in &order {
                    let lhs = k(e) & k(f);
                    let rhs = k(e & f);
                    if lhs != rhs {
                        return Some(Witness::sets(&[("E", e), ("F", f)]).with_world(first_world(lhs ^ rhs)));
                    }
                }
            }
            None
        }
        EpistemicAxiom::A2 => order.iter().find_map(|&e| {
            let bad = k(e) & !e;
            (bad != 0).then(|| Witness::sets(&[("E", e)]).with_world(first_world(bad)))
        }),
        EpistemicAxiom::A3 => order.iter().find_map(|&e| {
            let bad = k(e) & !k(k(e));
            (bad != 0).then(|| Witness::sets(&[("E", e)]).with_world(first_world(bad)))
        }),
        EpistemicAxiom::A4 => order.iter().find_map(|&e| {
            let not_known = !k(e) & full;
            let bad = not_known & !k(not_known);
            (bad != 0).then(|| Witness::sets(&[("E", e)]).with_world(first_world(bad)))
        }),
        EpistemicAxiom::A5Fin => check_table(n, t, EpistemicAxiom::A1).or_else(|| {
            let bad = full & !k(full);
            (bad != 0).then(|| Witness::sets(&[("E", full)]).with_world(first_world(bad)))
        }),
    }
}
