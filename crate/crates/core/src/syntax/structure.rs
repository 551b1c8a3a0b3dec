use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use super::formula::Formula;
use crate::conditional::SelectionFunction;
use crate::epistemic::{KnowledgeOperator, KripkeRelation};
use crate::error::{Error, Result};
use crate::preferential::PreferentialFrame;
use crate::sets::bits::{self, Mask};
use crate::sets::{Event, Universe};
use crate::verdict::{Verdict, Witness};

/// The frame part of a structure.
#[derive(Debug, Clone, PartialEq)]
pub enum Frame {
    Kripke(KripkeRelation),
    Counterfactual(SelectionFunction),
    Preferential(PreferentialFrame),
}

impl Frame {
    pub fn universe(&self) -> &Universe {
        match self {
            Frame::Kripke(r) => r.universe(),
            Frame::Counterfactual(f) => f.universe(),
            Frame::Preferential(p) => p.universe(),
        }
    }
}

/// A frame together with an interpretation of atoms as events.
#[derive(Debug, Clone, PartialEq)]
pub struct Structure {
    frame: Frame,
    pi: BTreeMap<String, Mask>,
    selection: Option<SelectionFunction>,
}

impl Structure {
    pub fn new(frame: Frame, pi: BTreeMap<String, Mask>) -> Result<Self> {
        let full = frame.universe().full_mask();
        let pi = pi.into_iter().map(|(a, m)| (a, m & full)).collect();
        let selection = match &frame {
            Frame::Kripke(_) => None,
            Frame::Counterfactual(f) => Some(f.clone()),
            Frame::Preferential(p) => Some(p.derive_selection()),
        };
        Ok(Structure { frame, pi, selection })
    }

    /// Interpretation given as atom names and the worlds where they hold.
    pub fn from_names<S: AsRef<str>>(frame: Frame, pi: &[(S, Vec<S>)]) -> Result<Self> {
        let u = frame.universe().clone();
        let mut map = BTreeMap::new();
        for (atom, worlds) in pi {
            map.insert(atom.as_ref().to_string(), u.mask_of(worlds)?);
        }
        Self::new(frame, map)
    }

    pub fn kripke(rel: KripkeRelation, pi: BTreeMap<String, Mask>) -> Result<Self> {
        Self::new(Frame::Kripke(rel), pi)
    }

    pub fn counterfactual(f: SelectionFunction, pi: BTreeMap<String, Mask>) -> Result<Self> {
        Self::new(Frame::Counterfactual(f), pi)
    }

    pub fn preferential(p: PreferentialFrame, pi: BTreeMap<String, Mask>) -> Result<Self> {
        Self::new(Frame::Preferential(p), pi)
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn universe(&self) -> &Universe {
        self.frame.universe()
    }

    pub fn interpretation(&self) -> &BTreeMap<String, Mask> {
        &self.pi
    }

    /// The selection function driving `~>`, if the structure has one.
    pub fn selection(&self) -> Option<&SelectionFunction> {
        self.selection.as_ref()
    }

    fn knowledge(&self, e: Mask) -> Result<Mask> {
        match &self.frame {
            Frame::Kripke(r) => Ok(r
                .adjacency()
                .iter()
                .enumerate()
                .filter(|&(_, &s)| bits::subset(s, e))
                .fold(0, |m, (w, _)| m | bits::bit(w))),
            _ => Err(Error::UnsupportedOperator("K")),
        }
    }

    fn conditional(&self, h: Mask, e: Mask) -> Result<Mask> {
        let f = self.selection.as_ref().ok_or(Error::UnsupportedOperator("~>"))?;
        Ok((0..self.universe().len())
            .filter(|&w| bits::subset(f.select_mask(w, h), e))
            .fold(0, |m, w| m | bits::bit(w)))
    }

    fn intension_mask(&self, phi: &Formula) -> Result<Mask> {
        let full = self.universe().full_mask();
        Ok(match phi {
            Formula::Atom(a) => *self.pi.get(a).ok_or_else(|| Error::UndeclaredAtom(a.clone()))?,
            Formula::True => full,
            Formula::False => 0,
            Formula::Not(f) => full & !self.intension_mask(f)?,
            Formula::And(a, b) => self.intension_mask(a)? & self.intension_mask(b)?,
            Formula::Or(a, b) => self.intension_mask(a)? | self.intension_mask(b)?,
            Formula::Implies(a, b) => full & (!self.intension_mask(a)? | self.intension_mask(b)?),
            Formula::Iff(a, b) => full & !(self.intension_mask(a)? ^ self.intension_mask(b)?),
            Formula::K(f) => self.knowledge(self.intension_mask(f)?)?,
            Formula::Cond(a, b) => self.conditional(self.intension_mask(a)?, self.intension_mask(b)?)?,
        })
    }

    /// `⟦φ⟧`, the worlds where `φ` is true. The conditional is keyed by
    /// intension: `f(w, φ)` is `f(w, ⟦φ⟧)`.
    pub fn intension_of(&self, phi: &Formula) -> Result<Event> {
        Ok(Event::from_mask(self.universe(), self.intension_mask(phi)?))
    }

    pub fn model_check(&self, world: &str, phi: &Formula) -> Result<bool> {
        let w = self.universe().index_of(world)?;
        Ok(self.intension_mask(phi)? & bits::bit(w) != 0)
    }

    /// Validity of an axiom scheme, decided over all instantiations of its
    /// formula variables by events.
    pub fn scheme_validity(&self, scheme: Scheme) -> Result<Verdict> {
        let n = self.universe().len();
        let full = self.universe().full_mask();
        let order = bits::canonical_order(n);
        let low = |m: Mask| m.trailing_zeros() as usize;
        let fail = |sets: &[(&'static str, Mask)], bad: Mask| Some(Witness::sets(sets).with_world(low(bad)));
        if scheme.is_epistemic() {
            let rel = match &self.frame {
                Frame::Kripke(r) => r,
                _ => return Err(Error::UnsupportedOperator("K")),
            };
            let k = KnowledgeOperator::derive(rel)?;
            let k = |e: Mask| k.apply_mask(e);
            let found = match scheme {
                Scheme::K1 => pairs(&order).find_map(|(e, f)| {
                    let bad = k(e) & k(full & (!e | f)) & !k(f);
                    if bad != 0 { fail(&[("E", e), ("F", f)], bad) } else { None }
                }),
                Scheme::K2 => order.iter().find_map(|&e| {
                    let bad = k(e) & !e;
                    if bad != 0 { fail(&[("E", e)], bad) } else { None }
                }),
                Scheme::K3 => order.iter().find_map(|&e| {
                    let bad = k(e) & !k(k(e));
                    if bad != 0 { fail(&[("E", e)], bad) } else { None }
                }),
                _ => order.iter().find_map(|&e| {
                    let nk = full & !k(e);
                    let bad = nk & !k(nk);
                    if bad != 0 { fail(&[("E", e)], bad) } else { None }
                }),
            };
            return Ok(Verdict::from_option(found));
        }
        if self.selection.is_none() {
            return Err(Error::UnsupportedOperator("~>"));
        }
        let table: Vec<Mask> = (0..1u32 << n)
            .flat_map(|h| (0..1u32 << n).map(move |e| (h, e)))
            .map(|(h, e)| self.conditional(h, e))
            .collect::<Result<_>>()?;
        let c = |h: Mask, e: Mask| table[((h as usize) << n) | e as usize];
        let found = match scheme {
            Scheme::C0 => triples(&order).find_map(|(h, e1, e2)| {
                let bad = c(h, e1) & c(h, e2) & !c(h, e1 & e2);
                if bad != 0 { fail(&[("H", h), ("E1", e1), ("E2", e2)], bad) } else { None }
            }),
            Scheme::C1 => order.iter().find_map(|&h| {
                let bad = full & !c(h, h);
                if bad != 0 { fail(&[("H", h)], bad) } else { None }
            }),
            Scheme::C2 => triples(&order).find_map(|(h, h2, e)| {
                let bad = c(h, h2) & c(h2, h) & c(h, e) & !c(h2, e);
                if bad != 0 { fail(&[("H", h), ("H'", h2), ("E", e)], bad) } else { None }
            }),
            Scheme::C3 => pairs(&order).find_map(|(h, e)| {
                let bad = h & (e ^ c(h, e));
                if bad != 0 { fail(&[("H", h), ("E", e)], bad) } else { None }
            }),
            Scheme::C4 => pairs(&order).find_map(|(h, e)| {
                let bad = full & !(c(h, e) | c(h, full & !e));
                if bad != 0 { fail(&[("H", h), ("E", e)], bad) } else { None }
            }),
            Scheme::C5 => triples(&order).find_map(|(h1, h2, e)| {
                let bad = c(h1, e) & c(h2, e) & !c(h1 | h2, e);
                if bad != 0 { fail(&[("H1", h1), ("H2", h2), ("E", e)], bad) } else { None }
            }),
            Scheme::C6 => triples(&order).find_map(|(h1, h2, e)| {
                let bad = c(h1, h2) & c(h1, e) & !c(h1 & h2, e);
                if bad != 0 { fail(&[("H1", h1), ("H2", h2), ("E", e)], bad) } else { None }
            }),
            Scheme::C7 => triples(&order).find_map(|(h1, h2, e)| {
                let bad = full & !c(h1, full & !h2) & c(h1, e) & !c(h1 & h2, e);
                if bad != 0 { fail(&[("H1", h1), ("H2", h2), ("E", e)], bad) } else { None }
            }),
            _ => pairs(&order).find_map(|(e, h)| {
                // □E is ¬E ~> ∅ and ◇E is ¬(E ~> ∅)
                let nec = c(full & !e, 0);
                let pos = full & !c(e, 0);
                let bad_a = nec & !(e & c(h, nec));
                let bad_b = pos & !c(h, pos);
                if bad_a != 0 {
                    fail(&[("E", e), ("H", h)], bad_a)
                } else if bad_b != 0 {
                    fail(&[("E", e), ("H", h)], bad_b)
                } else {
                    None
                }
            }),
        };
        Ok(Verdict::from_option(found))
    }
}

fn pairs(order: &[Mask]) -> impl Iterator<Item = (Mask, Mask)> + '_ {
    order.iter().flat_map(move |&a| order.iter().map(move |&b| (a, b)))
}

fn triples(order: &[Mask]) -> impl Iterator<Item = (Mask, Mask, Mask)> + '_ {
    pairs(order).flat_map(move |(a, b)| order.iter().map(move |&c| (a, b, c)))
}

/// Axiom schemes of the two languages.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Scheme {
    K1,
    K2,
    K3,
    K4,
    C0,
    C1,
    C2,
    C3,
    C4,
    C5,
    C6,
    C7,
    C8,
}

impl Scheme {
    pub const ALL: [Scheme; 13] = [
        Scheme::K1,
        Scheme::K2,
        Scheme::K3,
        Scheme::K4,
        Scheme::C0,
        Scheme::C1,
        Scheme::C2,
        Scheme::C3,
        Scheme::C4,
        Scheme::C5,
        Scheme::C6,
        Scheme::C7,
        Scheme::C8,
    ];

    pub fn is_epistemic(self) -> bool {
        matches!(self, Scheme::K1 | Scheme::K2 | Scheme::K3 | Scheme::K4)
    }

    pub fn name(self) -> &'static str {
        ["K1", "K2", "K3", "K4", "C0", "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8"][self as usize]
    }

    /// The conditional scheme matching selection condition `Si` (1..=8).
    pub fn conditional(i: usize) -> Option<Self> {
        (1..=8).contains(&i).then(|| Self::ALL[4 + i])
    }
}

impl fmt::Display for Scheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }
}
