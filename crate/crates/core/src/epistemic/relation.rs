use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sets::bits::{self, Mask};
use crate::sets::{Event, Universe};
use crate::verdict::{Verdict, Witness};

/// An accessibility relation, stored as the successor set `K(w)` of each world.
#[derive(Clone, PartialEq, Eq)]
pub struct KripkeRelation {
    universe: Universe,
    adj: Vec<Mask>,
}

impl KripkeRelation {
    pub fn new(universe: &Universe, adj: Vec<Mask>) -> Result<Self> {
        if adj.len() != universe.len() {
            return Err(Error::Format(format!(
                "relation needs {} successor sets, got {}",
                universe.len(),
                adj.len()
            )));
        }
        let full = universe.full_mask();
        Ok(KripkeRelation {
            universe: universe.clone(),
            adj: adj.into_iter().map(|m| m & full).collect(),
        })
    }

    pub fn from_edges<S: AsRef<str>>(universe: &Universe, edges: &[(S, S)]) -> Result<Self> {
        let mut adj = vec![0; universe.len()];
        for (a, b) in edges {
            adj[universe.index_of(a.as_ref())?] |= bits::bit(universe.index_of(b.as_ref())?);
        }
        Self::new(universe, adj)
    }

    pub fn identity(universe: &Universe) -> Self {
        let adj = (0..universe.len()).map(bits::bit).collect();
        KripkeRelation {
            universe: universe.clone(),
            adj,
        }
    }

    pub fn empty(universe: &Universe) -> Self {
        KripkeRelation {
            universe: universe.clone(),
            adj: vec![0; universe.len()],
        }
    }

    /// Relation whose successor sets are the blocks of a partition.
    pub fn from_partition(universe: &Universe, blocks: &[Mask]) -> Result<Self> {
        let mut adj = vec![0; universe.len()];
        for &b in blocks {
            for w in bits::members(b) {
                adj[w] = b;
            }
        }
        Self::new(universe, adj)
    }

    /// The `code`-th relation in the enumeration of all `2^(n²)` relations:
    /// bits `w*n .. w*n+n` of `code` hold `K(w)`.
    pub fn from_code(universe: &Universe, code: u64) -> Self {
        let n = universe.len();
        let adj = (0..n).map(|w| ((code >> (w * n)) as Mask) & bits::full(n)).collect();
        KripkeRelation {
            universe: universe.clone(),
            adj,
        }
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn successors(&self, w: usize) -> Mask {
        self.adj[w]
    }

    pub fn successor_event(&self, w: usize) -> Event {
        Event::from_mask(&self.universe, self.adj[w])
    }

    pub fn adjacency(&self) -> &[Mask] {
        &self.adj
    }

    pub fn relates(&self, a: usize, b: usize) -> bool {
        self.adj[a] & bits::bit(b) != 0
    }

    pub fn edges(&self) -> Vec<(String, String)> {
        let mut out = Vec::new();
        for (a, &succ) in self.adj.iter().enumerate() {
            for b in bits::members(succ) {
                out.push((self.universe.name(a).to_string(), self.universe.name(b).to_string()));
            }
        }
        out
    }

    pub fn check(&self, prop: RelationProperty) -> Verdict {
        let n = self.universe.len();
        let r = |a, b| self.relates(a, b);
        let found = match prop {
            RelationProperty::Reflexive => (0..n).find(|&w| !r(w, w)).map(|w| Witness::tuple(&[w])),
            RelationProperty::Symmetric => pairs(n)
                .find(|&(s, t)| r(s, t) && !r(t, s))
                .map(|(s, t)| Witness::tuple(&[s, t])),
            RelationProperty::Transitive => triples(n)
                .find(|&(s, t, u)| r(s, t) && r(t, u) && !r(s, u))
                .map(|(s, t, u)| Witness::tuple(&[s, t, u])),
            RelationProperty::Euclidean => triples(n)
                .find(|&(s, t, u)| r(s, t) && r(s, u) && !r(t, u))
                .map(|(s, t, u)| Witness::tuple(&[s, t, u])),
            RelationProperty::Equivalence => {
                return [
                    RelationProperty::Reflexive,
                    RelationProperty::Symmetric,
                    RelationProperty::Transitive,
                ]
                .into_iter()
                .map(|p| self.check(p))
                .find(|v| !v.holds())
                .unwrap_or(Verdict::Holds)
            }
        };
        Verdict::from_option(found)
    }

    pub fn has(&self, prop: RelationProperty) -> bool {
        self.check(prop).holds()
    }
}

fn pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..n).flat_map(move |a| (0..n).map(move |b| (a, b)))
}

fn triples(n: usize) -> impl Iterator<Item = (usize, usize, usize)> {
    pairs(n).flat_map(move |(a, b)| (0..n).map(move |c| (a, b, c)))
}

impl fmt::Debug for KripkeRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.edges()).finish()
    }
}

/// Frame conditions on a knowledge relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RelationProperty {
    Reflexive,
    Transitive,
    Symmetric,
    Euclidean,
    Equivalence,
}

impl RelationProperty {
    pub const ALL: [RelationProperty; 5] = [
        RelationProperty::Reflexive,
        RelationProperty::Transitive,
        RelationProperty::Symmetric,
        RelationProperty::Euclidean,
        RelationProperty::Equivalence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RelationProperty::Reflexive => "reflexive",
            RelationProperty::Transitive => "transitive",
            RelationProperty::Symmetric => "symmetric",
            RelationProperty::Euclidean => "euclidean",
            RelationProperty::Equivalence => "equivalence",
        }
    }
}

impl FromStr for RelationProperty {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|p| p.name() == s.to_ascii_lowercase())
            .ok_or_else(|| Error::UnknownProperty(s.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_reflexive() {
        let u = Universe::numbered(3).unwrap();
        let id = KripkeRelation::identity(&u);
        for p in RelationProperty::ALL {
            assert!(id.has(p), "{p:?}");
        }
    }

    #[test]
    fn missing_loop_breaks_reflexivity() {
        let u = Universe::new(["1", "2"]).unwrap();
        let r = KripkeRelation::from_edges(&u, &[("1", "2")]).unwrap();
        assert_eq!(r.check(RelationProperty::Reflexive), Verdict::Fails(Witness::tuple(&[0])));
    }

    #[test]
    fn fork_is_not_euclidean() {
        let u = Universe::new(["1", "2", "3"]).unwrap();
        let r = KripkeRelation::from_edges(&u, &[("1", "2"), ("1", "3")]).unwrap();
        let v = r.check(RelationProperty::Euclidean);
        let w = v.witness().expect("not euclidean");
        let (s, t, x) = (w.tuple[0], w.tuple[1], w.tuple[2]);
        assert!(r.relates(s, t) && r.relates(s, x) && !r.relates(t, x));
        // the triple scan meets (1,2,2) before (1,2,3)
        assert_eq!(w.tuple, vec![0, 1, 1]);
        // with the loops at 2 and 3 added, (2,3) is the remaining gap
        let r2 = KripkeRelation::from_edges(
            &u,
            &[("1", "2"), ("1", "3"), ("2", "2"), ("3", "3")],
        )
        .unwrap();
        assert_eq!(
            r2.check(RelationProperty::Euclidean).witness().unwrap().tuple,
            vec![0, 1, 2]
        );
    }

    #[test]
    fn equivalence_reports_first_broken_part() {
        let u = Universe::numbered(2).unwrap();
        let r = KripkeRelation::from_edges(&u, &[("w1", "w1"), ("w2", "w2"), ("w1", "w2")]).unwrap();
        assert_eq!(
            r.check(RelationProperty::Equivalence),
            Verdict::Fails(Witness::tuple(&[0, 1]))
        );
    }

    #[test]
    fn codes_enumerate_all_relations() {
        let u = Universe::numbered(2).unwrap();
        let mut seen = std::collections::HashSet::new();
        for code in 0..16 {
            seen.insert(KripkeRelation::from_code(&u, code).adjacency().to_vec());
        }
        assert_eq!(seen.len(), 16);
    }
}
