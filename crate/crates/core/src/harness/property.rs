use rand::Rng;
use serde_json::{json, Value};

use super::generator::{sample_formula, stream, Candidate, Generator};
use crate::conditional::{ConditionalAxiom, ConditionalOperator, SelectionCondition, SelectionFunction, SymbolicConditionalOperator};
use crate::epistemic::{EpistemicAxiom, KnowledgeOperator, RelationProperty};
use crate::error::{Error, Result};
use crate::io;
use crate::preferential::{axiom_for, synthesize_preorder, PreferentialFrame, PreferentialProperty, SYNTHESIS_BASE_AXIOMS};
use crate::sets::bits::{self, Mask};
use crate::sets::{FinCofEvent, Universe, WitnessFamily};
use crate::syntax::{Formula, Frame, Scheme, Structure};
use crate::verdict::{SymWorld, Verdict, Witness};

/// Formulas drawn per structure by the `intension` property.
pub const FORMULAS_PER_STRUCTURE: usize = 50;
/// Depth bound for those formulas.
pub const FORMULA_DEPTH: usize = 4;
/// `k` ranges over `1..=OMEGA_TAIL_PROBES` for the ω-frame tails `H_k`.
pub const OMEGA_TAIL_PROBES: u64 = 10;
/// Example 5 is checked on the algebra generated by the singletons `{1}..{6}`.
pub const EXAMPLE5_GRID: std::ops::RangeInclusive<u64> = 1..=6;

/// Result of evaluating a property on one candidate.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub holds: bool,
    pub witness: Value,
}

impl Outcome {
    fn holds() -> Self {
        Outcome { holds: true, witness: Value::Null }
    }

    fn fails(witness: Value) -> Self {
        Outcome { holds: false, witness }
    }

    fn from_verdict(v: Verdict, u: &Universe) -> Self {
        match v {
            Verdict::Holds => Self::holds(),
            Verdict::Fails(w) => Self::fails(w.to_json(u)),
        }
    }

    fn from_witness(w: Option<Witness>, u: &Universe) -> Self {
        Self::from_verdict(Verdict::from_option(w), u)
    }
}

/// Checks that don't reduce to a single axiom or frame condition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Special {
    /// Relations: synthesize∘derive; operators: derive∘synthesize;
    /// selection functions: both; frames: order synthesis.
    RoundTrip,
    FixpointClosure,
    StrongS6,
    Monotone,
    JoinBound,
    Lottery,
    Transitivity,
    Lewis,
    Antisymmetric,
    SynthModular,
    Intension,
    SchemeSoundness,
    SchemeSoundnessLiteral,
    OmegaTails,
    OmegaLewisEmpty,
    OmegaMinimalEmpty,
}

const SPECIALS: [(&str, Special); 16] = [
    ("roundtrip", Special::RoundTrip),
    ("fixpoint-closure", Special::FixpointClosure),
    ("strong-S6", Special::StrongS6),
    ("monotone", Special::Monotone),
    ("join-bound", Special::JoinBound),
    ("lottery", Special::Lottery),
    ("transitivity", Special::Transitivity),
    ("lewis", Special::Lewis),
    ("antisymmetric", Special::Antisymmetric),
    ("synth-modular", Special::SynthModular),
    ("intension", Special::Intension),
    ("scheme-soundness", Special::SchemeSoundness),
    ("scheme-soundness-literal", Special::SchemeSoundnessLiteral),
    ("omega-tails", Special::OmegaTails),
    ("omega-lewis-empty", Special::OmegaLewisEmpty),
    ("omega-minimal-empty", Special::OmegaMinimalEmpty),
];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Atom {
    Relation(RelationProperty),
    Epistemic(EpistemicAxiom),
    Selection(SelectionCondition),
    Conditional(ConditionalAxiom),
    Preferential(PreferentialProperty),
    Special(Special),
}

impl Atom {
    fn parse(name: &str) -> Result<Self> {
        if let Some(&(_, s)) = SPECIALS.iter().find(|(n, _)| *n == name) {
            return Ok(Atom::Special(s));
        }
        if let Ok(p) = name.parse() {
            return Ok(Atom::Relation(p));
        }
        if let Ok(p) = name.parse::<PreferentialProperty>() {
            return Ok(Atom::Preferential(p));
        }
        if let Ok(a) = name.parse() {
            return Ok(Atom::Epistemic(a));
        }
        if let Ok(c) = name.parse() {
            return Ok(Atom::Selection(c));
        }
        if let Ok(a) = name.parse() {
            return Ok(Atom::Conditional(a));
        }
        Err(Error::UnknownProperty(name.to_string()))
    }

    /// Whether candidates from `g` can be asked this question.
    fn applies_to(self, g: &Generator) -> bool {
        use Generator as G;
        use Special::*;
        match self {
            Atom::Relation(_) => matches!(g, G::Relations { .. }),
            Atom::Epistemic(_) => matches!(g, G::Relations { .. } | G::KnowledgeOperators { .. } | G::Builtins(_)),
            Atom::Selection(_) => {
                matches!(g, G::SelectionFunctions { .. } | G::SampledSelectionFunctions { .. } | G::Frames { .. })
            }
            Atom::Conditional(_) => matches!(
                g,
                G::SelectionFunctions { .. }
                    | G::SampledSelectionFunctions { .. }
                    | G::ConjunctiveOperators { .. }
                    | G::Frames { .. }
                    | G::Builtins(_)
            ),
            Atom::Preferential(_) => matches!(g, G::Frames { .. }),
            Atom::Special(s) => match s {
                RoundTrip => !matches!(g, G::SampledStructures { .. } | G::Builtins(_)),
                FixpointClosure => matches!(g, G::Relations { .. } | G::KnowledgeOperators { .. }),
                StrongS6 => {
                    matches!(g, G::SelectionFunctions { .. } | G::SampledSelectionFunctions { .. } | G::Frames { .. })
                }
                Monotone | JoinBound | Lottery | Transitivity => matches!(
                    g,
                    G::SelectionFunctions { .. }
                        | G::SampledSelectionFunctions { .. }
                        | G::ConjunctiveOperators { .. }
                        | G::Frames { .. }
                ),
                Lewis | Antisymmetric | SynthModular => matches!(g, G::Frames { .. }),
                Intension => matches!(g, G::SampledStructures { .. }),
                SchemeSoundness | SchemeSoundnessLiteral => matches!(
                    g,
                    G::SampledStructures { .. } | G::Relations { .. } | G::SelectionFunctions { .. } | G::Frames { .. }
                ),
                OmegaTails | OmegaLewisEmpty | OmegaMinimalEmpty => matches!(g, G::Builtins(_)),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Expr {
    All(Vec<(String, Atom)>),
    Implies(Box<Expr>, Box<Expr>),
    Iff(Box<Expr>, Box<Expr>),
}

/// A named property. Names are atoms joined by `&`, optionally followed by
/// `=>` or `<=>` and a second conjunction, e.g. `S1'&S7'=>S9'`.
#[derive(Debug, Clone, PartialEq)]
pub struct Property {
    name: String,
    expr: Expr,
}

fn conjunction(text: &str) -> Result<Expr> {
    text.split('&')
        .map(|a| Atom::parse(a.trim()).map(|atom| (a.trim().to_string(), atom)))
        .collect::<Result<_>>()
        .map(Expr::All)
}

impl Property {
    pub fn parse(name: &str) -> Result<Self> {
        let expr = if let Some((l, r)) = name.split_once("<=>") {
            Expr::Iff(Box::new(conjunction(l)?), Box::new(conjunction(r)?))
        } else if let Some((l, r)) = name.split_once("=>") {
            Expr::Implies(Box::new(conjunction(l)?), Box::new(conjunction(r)?))
        } else {
            conjunction(name)?
        };
        Ok(Property { name: name.to_string(), expr })
    }

    /// Parses `name` and checks that every atom can be evaluated on `g`.
    pub fn for_generator(name: &str, g: &Generator) -> Result<Self> {
        let p = Self::parse(name)?;
        fn atoms(e: &Expr, out: &mut Vec<Atom>) {
            match e {
                Expr::All(xs) => out.extend(xs.iter().map(|(_, a)| *a)),
                Expr::Implies(a, b) | Expr::Iff(a, b) => {
                    atoms(a, out);
                    atoms(b, out);
                }
            }
        }
        let mut all = Vec::new();
        atoms(&p.expr, &mut all);
        if all.iter().all(|a| a.applies_to(g)) {
            Ok(p)
        } else {
            Err(Error::UnknownProperty(format!("{name} (for this generator)")))
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Evaluates the property on a single candidate. `seed` only matters for
    /// properties that sample formulas.
    pub fn check(&self, candidate: &Candidate, seed: u64) -> Result<Outcome> {
        self.evaluate(&Views::new(candidate)?, Ctx { seed, index: 0 })
    }

    pub(crate) fn evaluate(&self, v: &Views, ctx: Ctx) -> Result<Outcome> {
        eval_expr(&self.expr, v, ctx)
    }
}

fn eval_expr(e: &Expr, v: &Views, ctx: Ctx) -> Result<Outcome> {
    Ok(match e {
        Expr::All(atoms) => {
            for (name, atom) in atoms {
                let o = eval_atom(*atom, v, ctx)?;
                if !o.holds {
                    return Ok(Outcome::fails(json!({ "property": name, "witness": o.witness })));
                }
            }
            Outcome::holds()
        }
        Expr::Implies(a, b) => {
            if eval_expr(a, v, ctx)?.holds {
                eval_expr(b, v, ctx)?
            } else {
                Outcome::holds()
            }
        }
        Expr::Iff(a, b) => {
            let (x, y) = (eval_expr(a, v, ctx)?, eval_expr(b, v, ctx)?);
            match (x.holds, y.holds) {
                (true, false) => Outcome::fails(json!({ "left": "holds", "right": y.witness })),
                (false, true) => Outcome::fails(json!({ "left": x.witness, "right": "holds" })),
                _ => Outcome::holds(),
            }
        }
    })
}

#[derive(Debug, Clone, Copy)]
pub(crate) struct Ctx {
    pub seed: u64,
    pub index: u64,
}

/// A candidate with the objects derived from it.
pub(crate) struct Views<'a> {
    candidate: &'a Candidate,
    knowledge: Option<KnowledgeOperator>,
    selection: Option<SelectionFunction>,
    conditional: Option<ConditionalOperator>,
}

impl<'a> Views<'a> {
    pub fn new(candidate: &'a Candidate) -> Result<Self> {
        let (knowledge, selection) = match candidate {
            Candidate::Relation(r) => (Some(KnowledgeOperator::derive(r)?), None),
            Candidate::Knowledge(k) => (Some(k.clone()), None),
            Candidate::Selection(f) => (None, Some(f.clone())),
            Candidate::Frame(p) => (None, Some(p.derive_selection())),
            _ => (None, None),
        };
        let conditional = match candidate {
            Candidate::Conditional(op) => Some(op.clone()),
            _ => selection.as_ref().map(ConditionalOperator::derive),
        };
        Ok(Views { candidate, knowledge, selection, conditional })
    }

    fn unsupported(&self) -> Error {
        Error::UnknownProperty("property does not apply to this candidate".into())
    }
}

fn eval_atom(atom: Atom, v: &Views, ctx: Ctx) -> Result<Outcome> {
    let u = v.candidate.universe();
    match atom {
        Atom::Relation(p) => match v.candidate {
            Candidate::Relation(r) => Ok(Outcome::from_verdict(r.check(p), r.universe())),
            _ => Err(v.unsupported()),
        },
        Atom::Epistemic(a) => match (v.candidate, &v.knowledge) {
            (Candidate::SymbolicKnowledge(k), _) => {
                let verdict = k.check(a, Some(&WitnessFamily::default()))?;
                Ok(sym_outcome(verdict))
            }
            (_, Some(k)) => Ok(Outcome::from_verdict(k.check(a), k.universe())),
            _ => Err(v.unsupported()),
        },
        Atom::Selection(c) => match &v.selection {
            Some(f) => Ok(Outcome::from_verdict(f.check(c)?, f.universe())),
            None => Err(v.unsupported()),
        },
        Atom::Conditional(a) => match (v.candidate, &v.conditional) {
            (Candidate::SymbolicConditional(c), _) => {
                let family = if a == ConditionalAxiom::C0Fin {
                    WitnessFamily::default()
                } else {
                    WitnessFamily::Events(EXAMPLE5_GRID.map(|k| FinCofEvent::finite([k])).collect())
                };
                Ok(sym_outcome(c.check(a, Some(&family))?))
            }
            (_, Some(op)) => Ok(Outcome::from_verdict(op.check(a)?, op.universe())),
            _ => Err(v.unsupported()),
        },
        Atom::Preferential(p) => match v.candidate {
            Candidate::Frame(f) => Ok(Outcome::from_verdict(f.check(p), f.universe())),
            _ => Err(v.unsupported()),
        },
        Atom::Special(s) => {
            let u = u.cloned();
            special(s, v, ctx, u.as_ref())
        }
    }
}

fn sym_outcome(v: Verdict<crate::verdict::SymWitness>) -> Outcome {
    match v {
        Verdict::Holds => Outcome::holds(),
        Verdict::Fails(w) => Outcome::fails(w.to_json()),
    }
}

fn special(s: Special, v: &Views, ctx: Ctx, u: Option<&Universe>) -> Result<Outcome> {
    let op = || v.conditional.as_ref().ok_or_else(|| v.unsupported());
    let u = || u.ok_or_else(|| v.unsupported());
    Ok(match s {
        Special::RoundTrip => round_trip(v)?,
        Special::FixpointClosure => {
            let k = v.knowledge.as_ref().ok_or_else(|| v.unsupported())?;
            Outcome::from_witness(fixpoint_closure(k), k.universe())
        }
        Special::StrongS6 => {
            let f = v.selection.as_ref().ok_or_else(|| v.unsupported())?;
            Outcome::from_witness(strong_s6(f), f.universe())
        }
        Special::Monotone => Outcome::from_witness(monotone(op()?), u()?),
        Special::JoinBound => Outcome::from_witness(join_bound(op()?), u()?),
        Special::Lottery => lottery(op()?)?,
        Special::Transitivity => Outcome::from_witness(transitivity(op()?), u()?),
        Special::Lewis => {
            let Candidate::Frame(p) = v.candidate else { return Err(v.unsupported()) };
            Outcome::from_witness(lewis_disagreement(p), p.universe())
        }
        Special::Antisymmetric => {
            let Candidate::Frame(p) = v.candidate else { return Err(v.unsupported()) };
            Outcome::from_witness(tie(p), p.universe())
        }
        Special::SynthModular => {
            let mut asserted = SYNTHESIS_BASE_AXIOMS.to_vec();
            asserted.push(ConditionalAxiom::C7);
            match synthesize_preorder(op()?, &asserted) {
                Ok(f) => Outcome::from_verdict(f.check(PreferentialProperty::Modular), u()?),
                Err(e) => Outcome::fails(json!({ "error": e.to_string() })),
            }
        }
        Special::Intension => {
            let Candidate::Structure(m) = v.candidate else { return Err(v.unsupported()) };
            intension(m, ctx)?
        }
        Special::SchemeSoundness | Special::SchemeSoundnessLiteral => {
            let literal = s == Special::SchemeSoundnessLiteral;
            let bare = std::collections::BTreeMap::new();
            let built;
            let m = match v.candidate {
                Candidate::Structure(m) => m,
                Candidate::Relation(r) => {
                    built = Structure::kripke(r.clone(), bare)?;
                    &built
                }
                Candidate::Selection(f) => {
                    built = Structure::counterfactual(f.clone(), bare)?;
                    &built
                }
                Candidate::Frame(p) => {
                    built = Structure::preferential(p.clone(), bare)?;
                    &built
                }
                _ => return Err(v.unsupported()),
            };
            scheme_soundness(m, literal)?
        }
        Special::OmegaTails | Special::OmegaLewisEmpty | Special::OmegaMinimalEmpty => {
            let Candidate::SymbolicConditional(c) = v.candidate else { return Err(v.unsupported()) };
            if *c != SymbolicConditionalOperator::OmegaLewis {
                return Err(v.unsupported());
            }
            omega(s, *c)?
        }
    })
}

fn round_trip(v: &Views) -> Result<Outcome> {
    Ok(match v.candidate {
        Candidate::Relation(r) => {
            let back = v.knowledge.as_ref().expect("derived").synthesize_relation();
            if &back == r {
                Outcome::holds()
            } else {
                Outcome::fails(json!({ "synthesized": io::relation_to_json(&back) }))
            }
        }
        Candidate::Knowledge(k) => {
            let back = KnowledgeOperator::derive(&k.synthesize_relation())?;
            let first = (0..k.table().len()).find(|&e| back.table()[e] != k.table()[e]);
            match first {
                None => Outcome::holds(),
                Some(e) => {
                    let e = e as Mask;
                    let w = Witness::sets(&[("E", e), ("K(E)", k.apply_mask(e)), ("derived", back.apply_mask(e))]);
                    Outcome::fails(w.to_json(k.universe()))
                }
            }
        }
        Candidate::Selection(f) => {
            let op = v.conditional.as_ref().expect("derived");
            let back = op.synthesize_selection();
            if &back != f {
                Outcome::fails(json!({ "synthesized": io::selection_to_json(&back) }))
            } else if &ConditionalOperator::derive(&back) != op {
                Outcome::fails(json!({ "rederived": io::conditional_to_json(&ConditionalOperator::derive(&back)) }))
            } else {
                Outcome::holds()
            }
        }
        Candidate::Conditional(op) => {
            let back = ConditionalOperator::derive(&op.synthesize_selection());
            let n = op.universe().len();
            let first = (0..op.table().len()).find(|&i| back.table()[i] != op.table()[i]);
            match first {
                None => Outcome::holds(),
                Some(i) => {
                    let (h, e) = ((i >> n) as Mask, (i & ((1 << n) - 1)) as Mask);
                    let w = Witness::sets(&[("H", h), ("E", e), ("H~>E", op.apply_mask(h, e)), ("derived", back.apply_mask(h, e))]);
                    Outcome::fails(w.to_json(op.universe()))
                }
            }
        }
        Candidate::Frame(p) => frame_round_trip(p, v.conditional.as_ref().expect("derived"))?,
        _ => return Err(v.unsupported()),
    })
}

/// Synthesizes a frame from the induced operator, asserting the axioms that
/// match the frame's own P-properties, and compares induced operators.
fn frame_round_trip(p: &PreferentialFrame, op: &ConditionalOperator) -> Result<Outcome> {
    let props: Vec<PreferentialProperty> = [
        PreferentialProperty::P1,
        PreferentialProperty::P2,
        PreferentialProperty::P3,
        PreferentialProperty::P4,
    ]
    .into_iter()
    .filter(|&q| p.satisfies(q))
    .collect();
    let asserted: Vec<ConditionalAxiom> = props.iter().filter_map(|&q| axiom_for(q)).collect();
    let synth = match synthesize_preorder(op, &asserted) {
        Ok(s) => s,
        Err(e) => return Ok(Outcome::fails(json!({ "error": e.to_string() }))),
    };
    if &ConditionalOperator::derive(&synth.derive_selection()) != op {
        return Ok(Outcome::fails(json!({ "synthesized": io::frame_to_json(&synth) })));
    }
    Ok(match props.iter().find(|&&q| !synth.satisfies(q)) {
        Some(q) => Outcome::fails(json!({ "synthesized": io::frame_to_json(&synth), "lost": q.name() })),
        None => Outcome::holds(),
    })
}

fn fixpoint_closure(k: &KnowledgeOperator) -> Option<Witness> {
    let full = k.universe().full_mask();
    let fixed: Vec<Mask> = (0..=full).filter(|&e| k.apply_mask(e) == e).collect();
    let is_fixed = |e: Mask| k.apply_mask(e) == e;
    for &a in &fixed {
        if !is_fixed(full & !a) {
            return Some(Witness::sets(&[("E", a), ("not E", full & !a)]));
        }
        for &b in &fixed {
            if !is_fixed(a | b) {
                return Some(Witness::sets(&[("E", a), ("F", b), ("union", a | b)]));
            }
        }
    }
    None
}

fn strong_s6(f: &SelectionFunction) -> Option<Witness> {
    let n = f.universe().len();
    let order = bits::canonical_order(n);
    for w in 0..n {
        for &h in &order {
            let fh = f.select_mask(w, h);
            for &e in &order {
                if bits::subset(fh, e) && f.select_mask(w, h & e) != fh {
                    return Some(Witness::sets(&[("H", h), ("E", e)]).with_world(w));
                }
            }
        }
    }
    None
}

fn low(m: Mask) -> usize {
    m.trailing_zeros() as usize
}

fn monotone(op: &ConditionalOperator) -> Option<Witness> {
    let order = bits::canonical_order(op.universe().len());
    for &h in &order {
        for &e in &order {
            for &e2 in order.iter().filter(|&&e2| bits::subset(e, e2)) {
                let bad = op.apply_mask(h, e) & !op.apply_mask(h, e2);
                if bad != 0 {
                    return Some(Witness::sets(&[("H", h), ("E", e), ("E'", e2)]).with_world(low(bad)));
                }
            }
        }
    }
    None
}

fn join_bound(op: &ConditionalOperator) -> Option<Witness> {
    let order = bits::canonical_order(op.universe().len());
    for &h1 in &order {
        for &h2 in &order {
            for &e1 in &order {
                let a = op.apply_mask(h1, e1);
                for &e2 in &order {
                    let bad = a & op.apply_mask(h2, e2) & !op.apply_mask(h1 | h2, e1 | e2);
                    if bad != 0 {
                        let sets = [("H1", h1), ("H2", h2), ("E1", e1), ("E2", e2)];
                        return Some(Witness::sets(&sets).with_world(low(bad)));
                    }
                }
            }
        }
    }
    None
}

/// Finite families `{H_1} ∪ J` with nonempty union: the meet of
/// `(∪H_j) ⇝ ¬H_1` and every `(H_1 ∪ H_j) ⇝ H_1` must be empty.
fn lottery(op: &ConditionalOperator) -> Result<Outcome> {
    let u = op.universe();
    let n = u.len();
    let full = u.full_mask();
    let events = 1usize << n;
    for h1 in 0..=full {
        for others in 0u64..(1 << events) {
            let family: Vec<Mask> = std::iter::once(h1)
                .chain((0..events as Mask).filter(|&e| others & (1 << e) != 0))
                .collect();
            let union = family.iter().fold(0, |a, &h| a | h);
            if union == 0 {
                continue;
            }
            let meet = family
                .iter()
                .fold(op.apply_mask(union, full & !h1), |acc, &h| acc & op.apply_mask(h1 | h, h1));
            if meet != 0 {
                let names: Vec<Vec<String>> = family.iter().map(|&h| u.names_of(h)).collect();
                return Ok(Outcome::fails(json!({ "world": u.name(low(meet)), "family": names })));
            }
        }
    }
    Ok(Outcome::holds())
}

fn transitivity(op: &ConditionalOperator) -> Option<Witness> {
    let n = op.universe().len();
    // each world is in E1, E2, E3 or none of them
    for code in 0..4u32.pow(n as u32) {
        let mut parts = [0 as Mask; 4];
        let mut c = code;
        for w in 0..n {
            parts[(c % 4) as usize] |= bits::bit(w);
            c /= 4;
        }
        let [_, e1, e2, e3] = parts;
        let lhs = op.apply_mask(e1 | e2, e1) & op.apply_mask(e2 | e3, e2);
        let bad = lhs & !op.apply_mask(e1 | e3, e1);
        if bad != 0 {
            return Some(Witness::sets(&[("E1", e1), ("E2", e2), ("E3", e3)]).with_world(low(bad)));
        }
    }
    None
}

fn lewis_disagreement(p: &PreferentialFrame) -> Option<Witness> {
    let n = p.universe().len();
    let f = p.derive_selection();
    let order = bits::canonical_order(n);
    for w in 0..n {
        for &h in &order {
            for &e in &order {
                if p.lewis_evaluate(w, h, e) != bits::subset(f.select_mask(w, h), e) {
                    return Some(Witness::sets(&[("H", h), ("E", e)]).with_world(w));
                }
            }
        }
    }
    None
}

fn tie(p: &PreferentialFrame) -> Option<Witness> {
    let n = p.universe().len();
    for w in 0..n {
        let o = p.order(w);
        for x in bits::members(o.domain()) {
            for y in bits::members(o.leq_row(x)) {
                if x != y && o.leq(y, x) {
                    return Some(Witness::tuple(&[x, y]).with_world(w));
                }
            }
        }
    }
    None
}

/// Compares `⟦Kφ⟧` with `K(⟦φ⟧)` and `⟦φ ~> ψ⟧` with `⟦φ⟧ ⇝ ⟦ψ⟧` on every
/// modal subformula of seeded random formulas.
fn intension(m: &Structure, ctx: Ctx) -> Result<Outcome> {
    let u = m.universe();
    let knowledge = match m.frame() {
        Frame::Kripke(r) => Some(KnowledgeOperator::derive(r)?),
        _ => None,
    };
    let conditional = m.selection().map(ConditionalOperator::derive);
    let mut rng = stream(ctx.seed ^ 0x1F0E_5A11, ctx.index);
    for _ in 0..FORMULAS_PER_STRUCTURE {
        let depth = rng.gen_range(1..=FORMULA_DEPTH);
        let phi = sample_formula(&mut rng, depth, &["p", "q"], knowledge.is_some(), conditional.is_some());
        let mut stack = vec![&phi];
        while let Some(f) = stack.pop() {
            let expected = match (f, &knowledge, &conditional) {
                (Formula::K(a), Some(k), _) => Some(k.apply_mask(m.intension_of(a)?.mask())),
                (Formula::Cond(a, b), _, Some(op)) => {
                    Some(op.apply_mask(m.intension_of(a)?.mask(), m.intension_of(b)?.mask()))
                }
                _ => None,
            };
            if let Some(expected) = expected {
                let got = m.intension_of(f)?.mask();
                if got != expected {
                    return Ok(Outcome::fails(json!({
                        "formula": f.to_string(),
                        "intension": u.names_of(got),
                        "operator": u.names_of(expected),
                    })));
                }
            }
            match f {
                Formula::Not(a) | Formula::K(a) => stack.push(a),
                Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) | Formula::Cond(a, b) => {
                    stack.push(a);
                    stack.push(b);
                }
                _ => {}
            }
        }
    }
    Ok(Outcome::holds())
}

/// The schemes a structure's frame guarantees must be valid in it. Each
/// `S_i'` the selection satisfies requires `C_i`; unless `literal`, `C8` is
/// only required when additionally `f(w, ∅) = ∅` at every world, since `S8'`
/// alone does not make it valid.
fn scheme_soundness(m: &Structure, literal: bool) -> Result<Outcome> {
    let mut required = Vec::new();
    match m.frame() {
        Frame::Kripke(r) => {
            required.push(Scheme::K1);
            for (prop, scheme) in [
                (RelationProperty::Reflexive, Scheme::K2),
                (RelationProperty::Transitive, Scheme::K3),
                (RelationProperty::Euclidean, Scheme::K4),
            ] {
                if r.has(prop) {
                    required.push(scheme);
                }
            }
        }
        _ => {
            let f = m.selection().expect("selection frames");
            let null_safe = (0..m.universe().len()).all(|w| f.select_mask(w, 0) == 0);
            required.push(Scheme::C0);
            for c in SelectionCondition::ALL {
                if let Some(scheme) = Scheme::conditional(c.index()) {
                    let guarded = !literal && c == SelectionCondition::S8 && !null_safe;
                    if f.satisfies(c) && !guarded {
                        required.push(scheme);
                    }
                }
            }
        }
    }
    for scheme in required {
        if let Verdict::Fails(w) = m.scheme_validity(scheme)? {
            return Ok(Outcome::fails(json!({ "scheme": scheme.name(), "witness": w.to_json(m.universe()) })));
        }
    }
    Ok(Outcome::holds())
}

fn omega(s: Special, c: SymbolicConditionalOperator) -> Result<Outcome> {
    let h0 = FinCofEvent::full();
    let empty = FinCofEvent::empty();
    Ok(match s {
        Special::OmegaTails => {
            for k in 1..=OMEGA_TAIL_PROBES {
                let hk = FinCofEvent::tail_from(k);
                if !c.holds_at(SymWorld::Infinity, &h0, &hk)? {
                    return Ok(Outcome::fails(json!({ "world": "inf", "H": h0, "E": hk })));
                }
            }
            Outcome::holds()
        }
        Special::OmegaLewisEmpty => {
            if c.holds_at(SymWorld::Infinity, &h0, &empty)? {
                Outcome::holds()
            } else {
                Outcome::fails(json!({ "world": "inf", "H": h0, "E": empty }))
            }
        }
        Special::OmegaMinimalEmpty => {
            if crate::conditional::omega_minimal_holds(&h0, &empty) {
                Outcome::holds()
            } else {
                Outcome::fails(json!({ "world": "inf", "H": h0, "E": empty }))
            }
        }
        _ => unreachable!("omega properties only"),
    })
}
