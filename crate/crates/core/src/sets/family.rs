use super::FinCofEvent;

/// Events quantified over by the infinitary axioms of symbolic operators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessFamily {
    /// An explicit finite list.
    Events(Vec<FinCofEvent>),
    /// The infinite family `ℕ \ {j}` for every `j ≥ start`. The first
    /// `probes` members generate the probe algebra for the finitary checks.
    CoSingletons { start: u64, probes: u64 },
}

impl Default for WitnessFamily {
    fn default() -> Self {
        WitnessFamily::CoSingletons { start: 1, probes: 10 }
    }
}

impl WitnessFamily {
    pub fn is_infinite(&self) -> bool {
        matches!(self, WitnessFamily::CoSingletons { .. })
    }

    /// The listed events, or the first `probes` members of an infinite family.
    pub fn probes(&self) -> Vec<FinCofEvent> {
        match self {
            WitnessFamily::Events(es) => es.clone(),
            WitnessFamily::CoSingletons { start, probes } => {
                (*start..start + probes).map(FinCofEvent::co_singleton).collect()
            }
        }
    }

    /// Intersection of every member of the family.
    pub fn intersection(&self) -> FinCofEvent {
        match self {
            WitnessFamily::Events(es) => es.iter().fold(FinCofEvent::full(), |a, e| a.intersect(e)),
            WitnessFamily::CoSingletons { start, .. } => FinCofEvent::finite(0..*start),
        }
    }

    /// Members `ℕ \ {j}` for `j` in `start..=up_to`. Rules that are invariant
    /// under permutations of ℕ fixing the numbers they mention only need the
    /// members up to a small horizon past the points being tested.
    pub(crate) fn members_up_to(&self, up_to: u64) -> Vec<FinCofEvent> {
        match self {
            WitnessFamily::Events(es) => es.clone(),
            WitnessFamily::CoSingletons { start, .. } => {
                (*start..=up_to.max(*start)).map(FinCofEvent::co_singleton).collect()
            }
        }
    }

    /// Points worth testing for membership in an intersection over the family:
    /// everything mentioned by the probes plus a margin.
    pub(crate) fn horizon(&self) -> u64 {
        let mentioned = self
            .probes()
            .iter()
            .filter_map(FinCofEvent::support_bound)
            .max()
            .unwrap_or(0);
        match self {
            WitnessFamily::Events(_) => mentioned + 2,
            WitnessFamily::CoSingletons { start, .. } => mentioned.max(*start) + 2,
        }
    }
}
