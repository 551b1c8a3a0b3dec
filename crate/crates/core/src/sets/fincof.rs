use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// Whether a [`FinCofEvent`] stores its members or its non-members.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FinCofKind {
    Finite,
    Cofinite,
}

/// A finite or cofinite subset of ℕ = {0, 1, 2, ...}.
///
/// `Finite(S)` denotes `S` and `Cofinite(S)` denotes `ℕ \ S`. No subset of ℕ
/// is both finite and cofinite, so every set has exactly one representation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FinCofEvent {
    kind: FinCofKind,
    support: BTreeSet<u64>,
}

impl FinCofEvent {
    pub fn finite<I: IntoIterator<Item = u64>>(members: I) -> Self {
        FinCofEvent {
            kind: FinCofKind::Finite,
            support: members.into_iter().collect(),
        }
    }

    pub fn cofinite<I: IntoIterator<Item = u64>>(missing: I) -> Self {
        FinCofEvent {
            kind: FinCofKind::Cofinite,
            support: missing.into_iter().collect(),
        }
    }

    pub fn empty() -> Self {
        Self::finite([])
    }

    pub fn full() -> Self {
        Self::cofinite([])
    }

    /// `{k, k+1, k+2, ...}`.
    pub fn tail_from(k: u64) -> Self {
        Self::cofinite(0..k)
    }

    /// `ℕ \ {j}`.
    pub fn co_singleton(j: u64) -> Self {
        Self::cofinite([j])
    }

    pub fn kind(&self) -> FinCofKind {
        self.kind
    }

    pub fn support(&self) -> &BTreeSet<u64> {
        &self.support
    }

    pub fn is_finite(&self) -> bool {
        self.kind == FinCofKind::Finite
    }

    pub fn is_cofinite(&self) -> bool {
        self.kind == FinCofKind::Cofinite
    }

    pub fn is_empty(&self) -> bool {
        self.is_finite() && self.support.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.is_cofinite() && self.support.is_empty()
    }

    pub fn contains(&self, k: u64) -> bool {
        self.support.contains(&k) == self.is_finite()
    }

    pub fn complement(&self) -> Self {
        FinCofEvent {
            kind: match self.kind {
                FinCofKind::Finite => FinCofKind::Cofinite,
                FinCofKind::Cofinite => FinCofKind::Finite,
            },
            support: self.support.clone(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        use FinCofKind::*;
        match (self.kind, other.kind) {
            (Finite, Finite) => Self::finite(self.support.union(&other.support).copied()),
            (Cofinite, Cofinite) => {
                Self::cofinite(self.support.intersection(&other.support).copied())
            }
            (Finite, Cofinite) => Self::cofinite(other.support.difference(&self.support).copied()),
            (Cofinite, Finite) => Self::cofinite(self.support.difference(&other.support).copied()),
        }
    }

    pub fn intersect(&self, other: &Self) -> Self {
        self.complement().union(&other.complement()).complement()
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.intersect(&other.complement())
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    /// Least member, if any.
    pub fn min_element(&self) -> Option<u64> {
        match self.kind {
            FinCofKind::Finite => self.support.iter().next().copied(),
            FinCofKind::Cofinite => (0..).find(|k| !self.support.contains(k)),
        }
    }

    /// Greatest member of a finite set.
    pub fn max_element(&self) -> Option<u64> {
        match self.kind {
            FinCofKind::Finite => self.support.iter().next_back().copied(),
            FinCofKind::Cofinite => None,
        }
    }

    /// Largest number mentioned by the representation.
    pub fn support_bound(&self) -> Option<u64> {
        self.support.iter().next_back().copied()
    }
}

impl fmt::Display for FinCofEvent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.support.iter().map(u64::to_string).collect();
        match self.kind {
            FinCofKind::Finite => write!(f, "{{{}}}", items.join(",")),
            FinCofKind::Cofinite => write!(f, "~{{{}}}", items.join(",")),
        }
    }
}

/// Boolean operations available on [`FinCofEvent`]s.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FinCofOp {
    Complement,
    Union,
    Intersect,
}

/// Applies `op` to `args`. Complement uses the first argument only; the empty
/// union is `∅` and the empty intersection is `ℕ`.
pub fn fincof_op(op: FinCofOp, args: &[FinCofEvent]) -> FinCofEvent {
    match op {
        FinCofOp::Complement => args
            .first()
            .map(FinCofEvent::complement)
            .unwrap_or_else(FinCofEvent::full),
        FinCofOp::Union => args.iter().fold(FinCofEvent::empty(), |acc, e| acc.union(e)),
        FinCofOp::Intersect => args.iter().fold(FinCofEvent::full(), |acc, e| acc.intersect(e)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_event() -> impl Strategy<Value = FinCofEvent> {
        (any::<bool>(), proptest::collection::btree_set(0u64..12, 0..6)).prop_map(|(fin, s)| {
            if fin {
                FinCofEvent::finite(s)
            } else {
                FinCofEvent::cofinite(s)
            }
        })
    }

    fn sample(e: &FinCofEvent) -> Vec<bool> {
        (0..=10).map(|k| e.contains(k)).collect()
    }

    #[test]
    fn documented_cases() {
        assert_eq!(
            fincof_op(FinCofOp::Complement, &[FinCofEvent::finite([1])]),
            FinCofEvent::cofinite([1])
        );
        let i = fincof_op(
            FinCofOp::Intersect,
            &[FinCofEvent::cofinite([1]), FinCofEvent::cofinite([2])],
        );
        assert_eq!(i, FinCofEvent::cofinite([1, 2]));
        let want: Vec<bool> = (0..=10).map(|k| k != 1 && k != 2).collect();
        assert_eq!(sample(&i), want);

        let u = fincof_op(
            FinCofOp::Union,
            &[FinCofEvent::finite([1, 2]), FinCofEvent::cofinite([2, 3])],
        );
        assert_eq!(u, FinCofEvent::cofinite([3]));
        let want: Vec<bool> = (0..=10).map(|k| [1, 2].contains(&k) || ![2, 3].contains(&k)).collect();
        assert_eq!(sample(&u), want);
    }

    #[test]
    fn extremes() {
        assert!(FinCofEvent::empty().is_empty());
        assert!(FinCofEvent::full().is_full());
        assert_eq!(FinCofEvent::empty().complement(), FinCofEvent::full());
        assert_eq!(FinCofEvent::tail_from(3).min_element(), Some(3));
        assert_eq!(FinCofEvent::finite([4, 9]).max_element(), Some(9));
        assert_eq!(fincof_op(FinCofOp::Union, &[]), FinCofEvent::empty());
        assert_eq!(fincof_op(FinCofOp::Intersect, &[]), FinCofEvent::full());
    }

    #[test]
    fn serialization_shape() {
        let e = FinCofEvent::finite([2, 1]);
        assert_eq!(
            serde_json::to_string(&e).unwrap(),
            r#"{"kind":"finite","support":[1,2]}"#
        );
        let c: FinCofEvent = serde_json::from_str(r#"{"kind":"cofinite","support":[2]}"#).unwrap();
        assert_eq!(c, FinCofEvent::cofinite([2]));
    }

    proptest! {
        #[test]
        fn ops_match_pointwise_definition(a in arb_event(), b in arb_event()) {
            let u = a.union(&b);
            let i = a.intersect(&b);
            let c = a.complement();
            for k in 0..=50u64 {
                prop_assert_eq!(u.contains(k), a.contains(k) || b.contains(k));
                prop_assert_eq!(i.contains(k), a.contains(k) && b.contains(k));
                prop_assert_eq!(c.contains(k), !a.contains(k));
            }
            prop_assert_eq!(c.complement(), a.clone());
        }

        #[test]
        fn json_round_trip(a in arb_event()) {
            let text = serde_json::to_string(&a).unwrap();
            let back: FinCofEvent = serde_json::from_str(&text).unwrap();
            prop_assert_eq!(back, a);
        }
    }
}
