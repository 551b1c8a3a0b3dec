use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::conditional::{ConditionalOperator, SelectionFunction, SymbolicConditionalOperator};
use crate::epistemic::{
    builtin_k0, KnowledgeOperator, KripkeRelation, Provenance, RelationProperty, SymbolicKnowledgeOperator,
};
use crate::error::{Error, Result};
use crate::io;
use crate::preferential::{PreferentialFrame, WorldOrder};
use crate::sets::bits::{self, Mask};
use crate::sets::Universe;
use crate::syntax::{Formula, Frame, Structure};

/// Names accepted by [`Generator::Builtins`].
pub const BUILTIN_NAMES: [&str; 5] = ["K0", "K1", "K2", "example5", "omega-lewis"];

/// One object under test.
#[derive(Debug, Clone)]
pub enum Candidate {
    Relation(KripkeRelation),
    Knowledge(KnowledgeOperator),
    Selection(SelectionFunction),
    Conditional(ConditionalOperator),
    Frame(PreferentialFrame),
    Structure(Structure),
    SymbolicKnowledge(SymbolicKnowledgeOperator),
    SymbolicConditional(SymbolicConditionalOperator),
}

impl Candidate {
    /// Replay data: the candidate in its file format, or a builtin's name.
    pub fn to_json(&self) -> Value {
        match self {
            Candidate::Relation(r) => io::relation_to_json(r),
            Candidate::Knowledge(k) => io::operator_to_json(k),
            Candidate::Selection(f) => io::selection_to_json(f),
            Candidate::Conditional(op) => io::conditional_to_json(op),
            Candidate::Frame(p) => io::frame_to_json(p),
            Candidate::Structure(m) => io::structure_to_json(m),
            Candidate::SymbolicKnowledge(k) => json!({ "builtin": k.name() }),
            Candidate::SymbolicConditional(c) => json!({ "builtin": c.name() }),
        }
    }

    pub fn universe(&self) -> Option<&Universe> {
        Some(match self {
            Candidate::Relation(r) => r.universe(),
            Candidate::Knowledge(k) => k.universe(),
            Candidate::Selection(f) => f.universe(),
            Candidate::Conditional(op) => op.universe(),
            Candidate::Frame(p) => p.universe(),
            Candidate::Structure(m) => m.universe(),
            Candidate::SymbolicKnowledge(_) | Candidate::SymbolicConditional(_) => return None,
        })
    }
}

/// Sources of candidates. Exhaustive generators enumerate every object of
/// their kind over `n` worlds; sampled ones draw from a seeded stream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    /// All `2^(n²)` relations, `n ≤ 3`.
    Relations { n: usize },
    /// All `(2^n)^(2^n)` knowledge operator tables, `n ≤ 2`.
    KnowledgeOperators { n: usize },
    /// All `(2^n)^(n·2^n)` selection functions, `n ≤ 2`.
    SelectionFunctions { n: usize },
    /// All conditional operators satisfying `C10'`, `n ≤ 2`. Each is
    /// determined by a partial selection function, `(2^n + 1)^(n·2^n)` in all.
    ConjunctiveOperators { n: usize },
    /// All preferential frames, `n ≤ 3`.
    Frames { n: usize },
    /// Seeded selection functions, `n ≤ 3`.
    SampledSelectionFunctions { n: usize, samples: u64 },
    /// Seeded structures of every frame kind with `1 ≤ n ≤ 3` and atoms `p`, `q`.
    SampledStructures { samples: u64 },
    Builtins(Vec<String>),
}

const EXHAUSTIVE_CAP_RELATIONS: usize = 3;
const EXHAUSTIVE_CAP_TABLES: usize = 2;
const EXHAUSTIVE_CAP_FRAMES: usize = 3;
const SAMPLED_CAP: usize = 3;

fn cap(n: usize, cap: usize, what: &'static str) -> Result<()> {
    if n == 0 {
        return Err(Error::EmptyUniverse);
    }
    if n > cap {
        return Err(Error::UniverseTooLarge { size: n, cap, what });
    }
    Ok(())
}

impl Generator {
    /// Number of candidates, after checking the generator's caps.
    pub fn cardinality(&self) -> Result<u64> {
        Ok(match *self {
            Generator::Relations { n } => {
                cap(n, EXHAUSTIVE_CAP_RELATIONS, "exhaustive relation enumeration")?;
                1 << (n * n)
            }
            Generator::KnowledgeOperators { n } => {
                cap(n, EXHAUSTIVE_CAP_TABLES, "exhaustive operator enumeration")?;
                1 << (n << n)
            }
            Generator::SelectionFunctions { n } => {
                cap(n, EXHAUSTIVE_CAP_TABLES, "exhaustive selection enumeration")?;
                1 << (n * (n << n))
            }
            Generator::ConjunctiveOperators { n } => {
                cap(n, EXHAUSTIVE_CAP_TABLES, "exhaustive conjunctive operator enumeration")?;
                ((1u64 << n) + 1).pow((n << n) as u32)
            }
            Generator::Frames { n } => {
                cap(n, EXHAUSTIVE_CAP_FRAMES, "exhaustive frame enumeration")?;
                (WorldOrder::enumerate(n).len() as u64).pow(n as u32)
            }
            Generator::SampledSelectionFunctions { n, samples } => {
                cap(n, SAMPLED_CAP, "sampled selection functions")?;
                samples
            }
            Generator::SampledStructures { samples } => samples,
            Generator::Builtins(ref names) => {
                if let Some(bad) = names.iter().find(|n| !BUILTIN_NAMES.contains(&n.as_str())) {
                    return Err(Error::UnknownBuiltin(bad.clone()));
                }
                names.len() as u64
            }
        })
    }

    /// Prepares per-run state (universe, order lists).
    pub(crate) fn source(&self, seed: u64) -> Result<Source> {
        self.cardinality()?;
        let n = match *self {
            Generator::Relations { n }
            | Generator::KnowledgeOperators { n }
            | Generator::SelectionFunctions { n }
            | Generator::ConjunctiveOperators { n }
            | Generator::Frames { n }
            | Generator::SampledSelectionFunctions { n, .. } => n,
            Generator::SampledStructures { .. } | Generator::Builtins(_) => 1,
        };
        let orders = match self {
            Generator::Frames { n } => WorldOrder::enumerate(*n),
            _ => Vec::new(),
        };
        Ok(Source {
            generator: self.clone(),
            universe: Universe::numbered(n)?,
            orders,
            seed,
        })
    }
}

pub(crate) struct Source {
    generator: Generator,
    universe: Universe,
    orders: Vec<WorldOrder>,
    seed: u64,
}

/// The random stream for candidate `index`.
pub(crate) fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

impl Source {
    pub fn candidate(&self, index: u64) -> Result<Candidate> {
        let u = &self.universe;
        let n = u.len();
        Ok(match &self.generator {
            Generator::Relations { .. } => Candidate::Relation(KripkeRelation::from_code(u, index)),
            Generator::KnowledgeOperators { .. } => {
                let table = digits(index, 1 << n, 1 << n);
                Candidate::Knowledge(KnowledgeOperator::from_table(u, table, Provenance::User)?)
            }
            Generator::SelectionFunctions { .. } => {
                Candidate::Selection(SelectionFunction::from_table(u, digits(index, 1 << n, n << n))?)
            }
            Generator::ConjunctiveOperators { .. } => {
                // digit 0 leaves f(w, H) undefined, digit d selects d - 1
                let cells = digits(index, (1 << n) + 1, n << n);
                let full = bits::full(n);
                let op = ConditionalOperator::from_fn(
                    u,
                    |h, e| {
                        (0..n)
                            .filter(|&w| match cells[(w << n) | h as usize] {
                                0 => false,
                                d => bits::subset(d - 1, e),
                            })
                            .fold(0, |acc, w| acc | bits::bit(w))
                            & full
                    },
                    Provenance::User,
                )?;
                Candidate::Conditional(op)
            }
            Generator::Frames { .. } => {
                let picks = digits(index, self.orders.len() as Mask, n);
                let orders = picks.iter().map(|&i| self.orders[i as usize].clone()).collect();
                Candidate::Frame(PreferentialFrame::new(u, orders)?)
            }
            Generator::SampledSelectionFunctions { .. } => {
                Candidate::Selection(sample_selection(&mut stream(self.seed, index), u)?)
            }
            Generator::SampledStructures { .. } => Candidate::Structure(sample_structure(&mut stream(self.seed, index))?),
            Generator::Builtins(names) => builtin(&names[index as usize])?,
        })
    }
}

/// `count` base-`base` digits of `index`, least significant first.
fn digits(mut index: u64, base: Mask, count: usize) -> Vec<Mask> {
    (0..count)
        .map(|_| {
            let d = (index % base as u64) as Mask;
            index /= base as u64;
            d
        })
        .collect()
}

pub fn builtin(name: &str) -> Result<Candidate> {
    Ok(match name {
        "K0" => Candidate::Knowledge(builtin_k0()),
        "K1" => Candidate::SymbolicKnowledge(SymbolicKnowledgeOperator::K1Cofinite),
        "K2" => Candidate::SymbolicKnowledge(SymbolicKnowledgeOperator::K2Cofinite),
        "example5" => Candidate::SymbolicConditional(SymbolicConditionalOperator::Example5),
        "omega-lewis" => Candidate::SymbolicConditional(SymbolicConditionalOperator::OmegaLewis),
        other => return Err(Error::UnknownBuiltin(other.to_string())),
    })
}

/// Draws a selection function. Uniform tables almost never meet any `S_i'`,
/// so each sample first picks a shape: uniform, `f(w,H) ⊆ H`, additionally
/// centred (`w ∈ H` implies `w ∈ f(w,H)`), or induced by a random frame.
pub fn sample_selection<R: Rng>(rng: &mut R, u: &Universe) -> Result<SelectionFunction> {
    let n = u.len();
    let full = bits::full(n);
    let shape = rng.gen_range(0..4);
    if shape == 3 {
        return Ok(sample_frame(rng, u)?.derive_selection());
    }
    let mut table = Vec::with_capacity(n << n);
    for w in 0..n {
        for h in 0..=full {
            let r = rng.gen_range(0..=full);
            table.push(match shape {
                0 => r,
                1 => r & h,
                _ => (r & h) | (h & bits::bit(w)),
            });
        }
    }
    SelectionFunction::from_table(u, table)
}

pub fn sample_frame<R: Rng>(rng: &mut R, u: &Universe) -> Result<PreferentialFrame> {
    let all = WorldOrder::enumerate(u.len());
    let orders = (0..u.len()).map(|_| all.choose(rng).expect("orders exist").clone()).collect();
    PreferentialFrame::new(u, orders)
}

/// Kripke classes drawn for sampled structures, as required relation properties.
pub(crate) const KRIPKE_CLASSES: [&[RelationProperty]; 5] = [
    &[],
    &[RelationProperty::Reflexive],
    &[RelationProperty::Reflexive, RelationProperty::Transitive],
    &[RelationProperty::Euclidean, RelationProperty::Transitive],
    &[RelationProperty::Equivalence],
];

pub fn sample_relation<R: Rng>(rng: &mut R, u: &Universe, class: &[RelationProperty]) -> KripkeRelation {
    let codes = 1u64 << (u.len() * u.len());
    loop {
        let rel = KripkeRelation::from_code(u, rng.gen_range(0..codes));
        if class.iter().all(|&p| rel.has(p)) {
            return rel;
        }
    }
}

/// A structure over `1..=3` worlds with atoms `p`, `q` and a frame of a random kind.
pub fn sample_structure<R: Rng>(rng: &mut R) -> Result<Structure> {
    let u = Universe::numbered(rng.gen_range(1..=3))?;
    let full = u.full_mask();
    let frame = match rng.gen_range(0..3) {
        0 => {
            let class = *KRIPKE_CLASSES.choose(rng).expect("classes");
            Frame::Kripke(sample_relation(rng, &u, class))
        }
        1 => Frame::Counterfactual(sample_selection(rng, &u)?),
        _ => Frame::Preferential(sample_frame(rng, &u)?),
    };
    let pi = ["p", "q"].iter().map(|a| (a.to_string(), rng.gen_range(0..=full))).collect();
    Structure::new(frame, pi)
}

/// A formula of depth at most `depth` over `atoms`, using `K` and/or `~>`.
pub fn sample_formula<R: Rng>(rng: &mut R, depth: usize, atoms: &[&str], knowledge: bool, conditional: bool) -> Formula {
    if depth <= 1 {
        return match rng.gen_range(0..atoms.len() + 2) {
            0 => Formula::True,
            1 => Formula::False,
            i => Formula::atom(atoms[i - 2]),
        };
    }
    let sub = |rng: &mut R| sample_formula(rng, depth - 1, atoms, knowledge, conditional);
    loop {
        return match rng.gen_range(0..9) {
            0 => sample_formula(rng, 1, atoms, knowledge, conditional),
            1 => Formula::not(sub(rng)),
            2 => Formula::and(sub(rng), sub(rng)),
            3 => Formula::or(sub(rng), sub(rng)),
            4 => Formula::implies(sub(rng), sub(rng)),
            5 => Formula::iff(sub(rng), sub(rng)),
            6 if knowledge => Formula::k(sub(rng)),
            7 | 8 if conditional => Formula::cond(sub(rng), sub(rng)),
            _ => continue,
        };
    }
}
