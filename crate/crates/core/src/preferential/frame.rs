use std::fmt;
use std::str::FromStr;

use crate::conditional::SelectionFunction;
use crate::error::{Error, Result};
use crate::sets::bits::{self, Mask};
use crate::sets::{Event, Universe};
use crate::verdict::{Verdict, Witness};

/// One world's preorder: its domain and, for each `x` in the domain, the set
/// of `y` with `x ≼ y`. Rows outside the domain are empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WorldOrder {
    domain: Mask,
    leq: Vec<Mask>,
}

impl WorldOrder {
    pub fn new(n: usize, domain: Mask, leq: Vec<Mask>) -> Result<Self> {
        if leq.len() != n {
            return Err(Error::InvalidFrame(format!("expected {n} order rows, got {}", leq.len())));
        }
        for (x, &row) in leq.iter().enumerate() {
            let inside = domain & bits::bit(x) != 0;
            if !bits::subset(row, domain) || (!inside && row != 0) {
                return Err(Error::InvalidFrame(format!("pair at world index {x} lies outside the domain")));
            }
            if inside && row & bits::bit(x) == 0 {
                return Err(Error::InvalidFrame(format!("order is not reflexive at world index {x}")));
            }
            for y in bits::members(row) {
                if !bits::subset(leq[y], row) {
                    return Err(Error::InvalidFrame(format!(
                        "order is not transitive through world indices {x}, {y}"
                    )));
                }
            }
        }
        Ok(WorldOrder { domain, leq })
    }

    /// The all-equivalent preorder on `domain`.
    pub fn flat(n: usize, domain: Mask) -> Self {
        let leq = (0..n).map(|x| if domain & bits::bit(x) != 0 { domain } else { 0 }).collect();
        WorldOrder { domain, leq }
    }

    pub fn domain(&self) -> Mask {
        self.domain
    }

    pub fn leq_row(&self, x: usize) -> Mask {
        self.leq[x]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x] & bits::bit(y) != 0
    }

    pub fn less(&self, x: usize, y: usize) -> bool {
        self.leq(x, y) && !self.leq(y, x)
    }

    /// For every `x`, the set of `y` with `y ≺ x`.
    pub fn strictly_below(&self) -> Vec<Mask> {
        let n = self.leq.len();
        (0..n)
            .map(|x| {
                bits::members(self.domain)
                    .filter(|&y| self.less(y, x))
                    .fold(0, |m, y| m | bits::bit(y))
            })
            .collect()
    }

    /// `{x ∈ H ∩ D : no y ≺ x lies in H}`.
    pub fn minimal_in(&self, h: Mask) -> Mask {
        let below = self.strictly_below();
        bits::members(h & self.domain)
            .filter(|&x| below[x] & h == 0)
            .fold(0, |m, x| m | bits::bit(x))
    }

    /// Every preorder on every subset of `n` worlds.
    pub fn enumerate(n: usize) -> Vec<WorldOrder> {
        let mut out = Vec::new();
        for domain in bits::canonical_order(n) {
            let members: Vec<usize> = bits::members(domain).collect();
            let k = members.len();
            for code in 0u32..(1 << (k * k)) {
                let mut leq = vec![0; n];
                for (i, &x) in members.iter().enumerate() {
                    for (j, &y) in members.iter().enumerate() {
                        if code & (1 << (i * k + j)) != 0 {
                            leq[x] |= bits::bit(y);
                        }
                    }
                }
                if let Ok(o) = WorldOrder::new(n, domain, leq) {
                    out.push(o);
                }
            }
        }
        out
    }
}

/// A preorder `≼^ω` with domain `Ω_ω` for each world `ω` of a finite universe.
#[derive(Clone, PartialEq, Eq)]
pub struct PreferentialFrame {
    universe: Universe,
    orders: Vec<WorldOrder>,
}

impl PreferentialFrame {
    pub fn new(universe: &Universe, orders: Vec<WorldOrder>) -> Result<Self> {
        if orders.len() != universe.len() {
            return Err(Error::InvalidFrame(format!(
                "expected one order per world ({}), got {}",
                universe.len(),
                orders.len()
            )));
        }
        if orders.iter().any(|o| o.leq.len() != universe.len()) {
            return Err(Error::InvalidFrame("order rows do not match the universe".into()));
        }
        Ok(PreferentialFrame {
            universe: universe.clone(),
            orders,
        })
    }

    /// Builds a frame from `(world, domain, pairs x ≼ y)` descriptions.
    pub fn from_pairs<S: AsRef<str>>(universe: &Universe, orders: &[(S, Vec<S>, Vec<(S, S)>)]) -> Result<Self> {
        let n = universe.len();
        let mut built: Vec<Option<WorldOrder>> = vec![None; n];
        for (w, domain, pairs) in orders {
            let w = universe.index_of(w.as_ref())?;
            let domain = universe.mask_of(domain)?;
            let mut leq = vec![0; n];
            for (x, y) in pairs {
                leq[universe.index_of(x.as_ref())?] |= bits::bit(universe.index_of(y.as_ref())?);
            }
            if built[w].is_some() {
                return Err(Error::InvalidFrame(format!("world `{}` has two orders", universe.name(w))));
            }
            built[w] = Some(WorldOrder::new(n, domain, leq)?);
        }
        let orders = built
            .into_iter()
            .enumerate()
            .map(|(w, o)| o.ok_or_else(|| Error::InvalidFrame(format!("world `{}` has no order", universe.name(w)))))
            .collect::<Result<_>>()?;
        Self::new(universe, orders)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn order(&self, w: usize) -> &WorldOrder {
        &self.orders[w]
    }

    pub fn orders(&self) -> &[WorldOrder] {
        &self.orders
    }

    pub fn domain(&self, w: usize) -> Event {
        Event::from_mask(&self.universe, self.orders[w].domain)
    }

    /// `f(ω, H)`: the `≺^ω`-minimal worlds of `H ∩ Ω_ω`.
    pub fn derive_selection(&self) -> SelectionFunction {
        let below: Vec<Vec<Mask>> = self.orders.iter().map(WorldOrder::strictly_below).collect();
        SelectionFunction::from_fn(&self.universe, |w, h| {
            let o = &self.orders[w];
            bits::members(h & o.domain)
                .filter(|&x| below[w][x] & h == 0)
                .fold(0, |m, x| m | bits::bit(x))
        })
        .expect("frames are built over tabulable universes")
    }

    pub fn check(&self, prop: PreferentialProperty) -> Verdict {
        let n = self.universe.len();
        for (w, o) in self.orders.iter().enumerate() {
            let dom: Vec<usize> = bits::members(o.domain).collect();
            let found = match prop {
                PreferentialProperty::P1 => {
                    if o.domain & bits::bit(w) == 0 {
                        Some(Witness::tuple(&[w]))
                    } else {
                        dom.iter().find(|&&x| x != w && !o.less(w, x)).map(|&x| Witness::tuple(&[w, x]))
                    }
                }
                PreferentialProperty::P2 => dom
                    .iter()
                    .flat_map(|&x| dom.iter().map(move |&y| (x, y)))
                    .find(|&(x, y)| !o.leq(x, y) && !o.leq(y, x))
                    .map(|(x, y)| Witness::tuple(&[x, y])),
                PreferentialProperty::P3 => dom
                    .iter()
                    .flat_map(|&x| dom.iter().map(move |&y| (x, y)))
                    .find(|&(x, y)| x != y && !o.less(x, y) && !o.less(y, x))
                    .map(|(x, y)| Witness::tuple(&[x, y])),
                PreferentialProperty::P4 => (0..n).find(|&x| o.domain & bits::bit(x) == 0).map(|x| Witness::tuple(&[x])),
                PreferentialProperty::Modular => modular_violation(o).map(|(a, b, c)| Witness::tuple(&[a, b, c])),
            };
            if let Some(wit) = found {
                return Verdict::Fails(wit.with_world(w));
            }
        }
        Verdict::Holds
    }

    pub fn satisfies(&self, prop: PreferentialProperty) -> bool {
        self.check(prop).holds()
    }

    /// Lewis's evaluation of `ω ∈ H ⇝ E`: every `w1 ∈ H ∩ Ω_ω` has some
    /// `w2 ≼ w1` in `H ∩ E` such that every `w3 ≺ w2` in `H` lies in `E`.
    pub fn lewis_evaluate(&self, w: usize, h: Mask, e: Mask) -> bool {
        let o = &self.orders[w];
        let below = o.strictly_below();
        let hd = h & o.domain;
        bits::members(hd).all(|w1| {
            bits::members(hd & e).any(|w2| o.leq(w2, w1) && bits::subset(below[w2] & h, e))
        })
    }

    /// Replaces every world's preorder by the completion of its strict part:
    /// `x ≤ y` iff `x ≺ y` or the two are incomparable under `≺`.
    pub fn complete_modular_order(&self) -> Result<Self> {
        let n = self.universe.len();
        let mut orders = Vec::with_capacity(n);
        for (w, o) in self.orders.iter().enumerate() {
            if let Some((a, b, c)) = modular_violation(o) {
                return Err(Error::NotModular(format!(
                    "at {}: {} < {} but {} is between neither",
                    self.universe.name(w),
                    self.universe.name(a),
                    self.universe.name(b),
                    self.universe.name(c)
                )));
            }
            let mut leq = vec![0; n];
            for x in bits::members(o.domain) {
                for y in bits::members(o.domain) {
                    if o.less(x, y) || (!o.less(x, y) && !o.less(y, x)) {
                        leq[x] |= bits::bit(y);
                    }
                }
            }
            orders.push(WorldOrder::new(n, o.domain, leq)?);
        }
        Self::new(&self.universe, orders)
    }
}

/// A triple `a ≺ b` with `c` in the domain but neither `c ≺ b` nor `a ≺ c`.
fn modular_violation(o: &WorldOrder) -> Option<(usize, usize, usize)> {
    let dom: Vec<usize> = bits::members(o.domain).collect();
    for &a in &dom {
        for &b in &dom {
            if !o.less(a, b) {
                continue;
            }
            if let Some(&c) = dom.iter().find(|&&c| !o.less(c, b) && !o.less(a, c)) {
                return Some((a, b, c));
            }
        }
    }
    None
}

impl fmt::Debug for PreferentialFrame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut m = f.debug_map();
        for (w, o) in self.orders.iter().enumerate() {
            let pairs: Vec<(&str, &str)> = (0..self.universe.len())
                .flat_map(|x| bits::members(o.leq[x]).map(move |y| (x, y)))
                .map(|(x, y)| (self.universe.name(x), self.universe.name(y)))
                .collect();
            m.entry(&self.universe.name(w), &pairs);
        }
        m.finish()
    }
}

/// Conditions on preferential frames.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PreferentialProperty {
    P1,
    P2,
    P3,
    P4,
    Modular,
}

impl PreferentialProperty {
    pub const ALL: [PreferentialProperty; 5] = [
        PreferentialProperty::P1,
        PreferentialProperty::P2,
        PreferentialProperty::P3,
        PreferentialProperty::P4,
        PreferentialProperty::Modular,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PreferentialProperty::P1 => "P1",
            PreferentialProperty::P2 => "P2",
            PreferentialProperty::P3 => "P3",
            PreferentialProperty::P4 => "P4",
            PreferentialProperty::Modular => "modular",
        }
    }
}

impl fmt::Display for PreferentialProperty {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PreferentialProperty {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Universe {
        Universe::new(["a", "b"]).unwrap()
    }

    /// `a ≺ b` at `a`, the flat order at `b`.
    fn a_first() -> PreferentialFrame {
        PreferentialFrame::from_pairs(
            &ab(),
            &[
                ("a", vec!["a", "b"], vec![("a", "a"), ("b", "b"), ("a", "b")]),
                ("b", vec!["a", "b"], vec![("a", "a"), ("b", "b"), ("a", "b"), ("b", "a")]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn selection_from_order() {
        let f = a_first().derive_selection();
        assert_eq!(f.select_mask(0, 0b11), 0b01);
        assert_eq!(f.select_mask(0, 0b10), 0b10);
        assert_eq!(f.select_mask(1, 0b11), 0b11);
        for w in 0..2 {
            assert_eq!(f.select_mask(w, 0), 0);
        }
        let empty = PreferentialFrame::new(&ab(), vec![WorldOrder::flat(2, 0), WorldOrder::flat(2, 3)]).unwrap();
        assert!((0..4).all(|h| empty.derive_selection().select_mask(0, h) == 0));
    }

    #[test]
    fn rejects_pairs_outside_domain() {
        let bad = PreferentialFrame::from_pairs(
            &ab(),
            &[
                ("a", vec!["a"], vec![("a", "a"), ("a", "b")]),
                ("b", vec!["b"], vec![("b", "b")]),
            ],
        );
        assert!(matches!(bad, Err(Error::InvalidFrame(_))));
        let nontrans = WorldOrder::new(3, 7, vec![0b011, 0b110, 0b100]);
        assert!(nontrans.is_err());
    }

    #[test]
    fn properties() {
        let u = Universe::new(["a"]).unwrap();
        let one = PreferentialFrame::new(&u, vec![WorldOrder::flat(1, 1)]).unwrap();
        assert!(one.satisfies(PreferentialProperty::P1));
        let incomparable = PreferentialFrame::new(
            &ab(),
            vec![WorldOrder::new(2, 3, vec![1, 2]).unwrap(), WorldOrder::flat(2, 3)],
        )
        .unwrap();
        let v = incomparable.check(PreferentialProperty::P2);
        assert_eq!(v.witness().unwrap().tuple, vec![0, 1]);
        let f = a_first();
        assert!(!f.satisfies(PreferentialProperty::P1));
        assert!(f.satisfies(PreferentialProperty::P2));
        assert!(!f.satisfies(PreferentialProperty::P3));
        assert!(f.satisfies(PreferentialProperty::P4));
    }

    #[test]
    fn order_counts() {
        assert_eq!(WorldOrder::enumerate(1).len(), 2);
        assert_eq!(WorldOrder::enumerate(2).len(), 7);
        assert_eq!(WorldOrder::enumerate(3).len(), 45);
    }

    #[test]
    fn lewis_examples() {
        let f = a_first();
        assert!(f.lewis_evaluate(0, 0, 0));
        assert!(f.lewis_evaluate(0, 0b11, 0b01));
        assert!(!f.lewis_evaluate(0, 0b11, 0b10));
    }

    #[test]
    fn lewis_with_strict_clause_ignores_ties() {
        // at b, a and b are tied: the minimal selection is {a,b}, yet a alone
        // meets every clause of the evaluation for E = {a}
        let f = a_first();
        assert!(f.lewis_evaluate(1, 0b11, 0b01));
        assert!(!bits::subset(f.derive_selection().select_mask(1, 0b11), 0b01));
    }

    #[test]
    fn modular_completion() {
        let f = a_first().complete_modular_order().unwrap();
        assert_eq!(f, a_first());
        let u = Universe::numbered(3).unwrap();
        let flat = PreferentialFrame::new(&u, vec![WorldOrder::new(3, 7, vec![1, 2, 4]).unwrap(); 3]).unwrap();
        let done = flat.complete_modular_order().unwrap();
        assert!(done.orders().iter().all(|o| *o == WorldOrder::flat(3, 7)));
        // a ≺ b with c incomparable to both is not modular
        let v = WorldOrder::new(3, 7, vec![0b011, 0b010, 0b100]).unwrap();
        let frame = PreferentialFrame::new(&u, vec![v.clone(), v.clone(), v]).unwrap();
        assert!(!frame.satisfies(PreferentialProperty::Modular));
        assert!(matches!(frame.complete_modular_order(), Err(Error::NotModular(_))));
    }
}
