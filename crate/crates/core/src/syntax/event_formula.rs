use super::lexer::{Cursor, Tok};
use crate::epistemic::{EpistemicAxiom, KnowledgeOperator, KripkeRelation, RelationProperty};
use crate::error::{Error, Result};
use crate::sets::bits::Mask;
use crate::sets::Universe;

/// Largest `W0` for the satisfiability search.
pub const EVSAT_CAP: usize = 2;

/// A description of an event over `W0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EventDesc {
    Literal(Vec<String>),
    Complement(Box<EventDesc>),
    Union(Box<EventDesc>, Box<EventDesc>),
    Knows(Box<EventDesc>),
}

/// Boolean combinations of equalities between descriptions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EventFormula {
    Equal(EventDesc, EventDesc),
    Not(Box<EventFormula>),
    And(Box<EventFormula>, Box<EventFormula>),
    Or(Box<EventFormula>, Box<EventFormula>),
}

impl EventDesc {
    fn evaluate(&self, k: &KnowledgeOperator) -> Result<Mask> {
        let u = k.universe();
        Ok(match self {
            EventDesc::Literal(ws) => u.mask_of(ws)?,
            EventDesc::Complement(d) => u.full_mask() & !d.evaluate(k)?,
            EventDesc::Union(a, b) => a.evaluate(k)? | b.evaluate(k)?,
            EventDesc::Knows(d) => k.apply_mask(d.evaluate(k)?),
        })
    }
}

impl EventFormula {
    /// Parses `D == D` atoms joined by `!`, `&&`, `||`. Descriptions are
    /// literals `{w1,w2}`, `~D`, `D + D`, `Kop(D)` and parentheses; `D * D`
    /// abbreviates `~(~D + ~D)` and `D <= D'` abbreviates `D + D' == D'`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut c = Cursor::new(text)?;
        let f = or_formula(&mut c)?;
        c.finish()?;
        Ok(f)
    }

    pub fn evaluate(&self, k: &KnowledgeOperator) -> Result<bool> {
        Ok(match self {
            EventFormula::Equal(a, b) => a.evaluate(k)? == b.evaluate(k)?,
            EventFormula::Not(f) => !f.evaluate(k)?,
            EventFormula::And(a, b) => a.evaluate(k)? && b.evaluate(k)?,
            EventFormula::Or(a, b) => a.evaluate(k)? || b.evaluate(k)?,
        })
    }
}

/// Searches the relations on `w0` with the properties matching `axioms`
/// (`A2` reflexive, `A3` transitive, `A4` Euclidean) for one whose knowledge
/// operator makes `ef` true. The remaining axioms hold for every relation.
pub fn event_formula_satisfiable(
    ef: &EventFormula,
    w0: &Universe,
    axioms: &[EpistemicAxiom],
) -> Result<Option<KripkeRelation>> {
    w0.ensure_at_most(EVSAT_CAP, "event formula satisfiability")?;
    let n = w0.len();
    let required: Vec<RelationProperty> = axioms
        .iter()
        .filter_map(|a| match a {
            EpistemicAxiom::A2 => Some(RelationProperty::Reflexive),
            EpistemicAxiom::A3 => Some(RelationProperty::Transitive),
            EpistemicAxiom::A4 => Some(RelationProperty::Euclidean),
            _ => None,
        })
        .collect();
    for code in 0..1u64 << (n * n) {
        let rel = KripkeRelation::from_code(w0, code);
        if !required.iter().all(|&p| rel.has(p)) {
            continue;
        }
        if ef.evaluate(&KnowledgeOperator::derive(&rel)?)? {
            return Ok(Some(rel));
        }
    }
    Ok(None)
}

fn or_formula(c: &mut Cursor) -> Result<EventFormula> {
    let mut lhs = and_formula(c)?;
    while c.eat_sym("||") {
        lhs = EventFormula::Or(Box::new(lhs), Box::new(and_formula(c)?));
    }
    Ok(lhs)
}

fn and_formula(c: &mut Cursor) -> Result<EventFormula> {
    let mut lhs = unary_formula(c)?;
    while c.eat_sym("&&") {
        lhs = EventFormula::And(Box::new(lhs), Box::new(unary_formula(c)?));
    }
    Ok(lhs)
}

fn unary_formula(c: &mut Cursor) -> Result<EventFormula> {
    if c.eat_sym("!") {
        return Ok(EventFormula::Not(Box::new(unary_formula(c)?)));
    }
    if *c.peek() == Tok::LParen {
        // a parenthesized formula, or a basic formula opening with `(D)`
        let mark = c.mark();
        c.next();
        if let Ok(f) = or_formula(c) {
            if *c.peek() == Tok::RParen {
                c.next();
                return Ok(f);
            }
        }
        c.reset(mark);
    }
    basic(c)
}

fn basic(c: &mut Cursor) -> Result<EventFormula> {
    let lhs = union(c)?;
    if c.eat_sym("==") {
        return Ok(EventFormula::Equal(lhs, union(c)?));
    }
    if c.eat_sym("<=") {
        let rhs = union(c)?;
        return Ok(EventFormula::Equal(EventDesc::Union(Box::new(lhs), Box::new(rhs.clone())), rhs));
    }
    Err(c.error("expected `==` or `<=`".into()))
}

fn union(c: &mut Cursor) -> Result<EventDesc> {
    let mut lhs = meet(c)?;
    while c.eat_sym("+") {
        lhs = EventDesc::Union(Box::new(lhs), Box::new(meet(c)?));
    }
    Ok(lhs)
}

fn meet(c: &mut Cursor) -> Result<EventDesc> {
    let mut lhs = desc(c)?;
    while c.eat_sym("*") {
        let rhs = desc(c)?;
        let neg = |d: EventDesc| EventDesc::Complement(Box::new(d));
        lhs = neg(EventDesc::Union(Box::new(neg(lhs)), Box::new(neg(rhs))));
    }
    Ok(lhs)
}

fn desc(c: &mut Cursor) -> Result<EventDesc> {
    if c.eat_sym("~") {
        return Ok(EventDesc::Complement(Box::new(desc(c)?)));
    }
    match c.peek().clone() {
        Tok::LBrace => {
            c.next();
            let mut worlds = Vec::new();
            if *c.peek() != Tok::RBrace {
                loop {
                    match c.next() {
                        Tok::Ident(w) => worlds.push(w),
                        _ => return Err(c.error("expected a world name".into())),
                    }
                    if *c.peek() == Tok::Comma {
                        c.next();
                    } else {
                        break;
                    }
                }
            }
            c.expect(Tok::RBrace, "`}`")?;
            Ok(EventDesc::Literal(worlds))
        }
        Tok::LParen => {
            c.next();
            let d = union(c)?;
            c.expect(Tok::RParen, "`)`")?;
            Ok(d)
        }
        Tok::Ident(w) if w == "Kop" => {
            c.next();
            c.expect(Tok::LParen, "`(` after `Kop`")?;
            let d = union(c)?;
            c.expect(Tok::RParen, "`)`")?;
            Ok(EventDesc::Knows(Box::new(d)))
        }
        _ => Err(c.error("expected an event description".into())),
    }
}

/// Checks that every literal of `ef` names a world of `w0`.
pub fn check_literals(ef: &EventFormula, w0: &Universe) -> Result<()> {
    fn desc(d: &EventDesc, u: &Universe) -> Result<()> {
        match d {
            EventDesc::Literal(ws) => ws.iter().try_for_each(|w| u.index_of(w).map(|_| ())),
            EventDesc::Complement(x) | EventDesc::Knows(x) => desc(x, u),
            EventDesc::Union(a, b) => desc(a, u).and(desc(b, u)),
        }
    }
    match ef {
        EventFormula::Equal(a, b) => desc(a, w0).and(desc(b, w0)),
        EventFormula::Not(f) => check_literals(f, w0),
        EventFormula::And(a, b) | EventFormula::Or(a, b) => check_literals(a, w0).and(check_literals(b, w0)),
    }
    .map_err(|e| match e {
        Error::UnknownWorld(w) => Error::Format(format!("literal world `{w}` is not in W0")),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::epistemic::{builtin_k0, Provenance};

    fn w0() -> Universe {
        Universe::numbered(2).unwrap()
    }

    #[test]
    fn evaluation() {
        let u = w0();
        let id = KnowledgeOperator::from_fn(&u, |e| e, Provenance::User).unwrap();
        let f = EventFormula::parse("{w1} + ~{w1} == {w1,w2}").unwrap();
        assert!(f.evaluate(&id).unwrap());
        let f = EventFormula::parse("Kop({w2}) == {w2} && Kop({}) == {}").unwrap();
        assert!(f.evaluate(&id).unwrap());
        let k0 = builtin_k0();
        assert!(EventFormula::parse("Kop({1}) == {}").unwrap().evaluate(&k0).unwrap());
        assert!(EventFormula::parse("{w9} == {}").unwrap().evaluate(&id).is_err());
    }

    #[test]
    fn sugar() {
        let u = w0();
        let id = KnowledgeOperator::from_fn(&u, |e| e, Provenance::User).unwrap();
        assert!(EventFormula::parse("{w1} * {w1,w2} == {w1}").unwrap().evaluate(&id).unwrap());
        assert!(EventFormula::parse("{w1} <= {w1,w2}").unwrap().evaluate(&id).unwrap());
        assert!(!EventFormula::parse("{w1,w2} <= {w1}").unwrap().evaluate(&id).unwrap());
        assert!(EventFormula::parse("(~({w1}) == {w2}) || !({} == {})").unwrap().evaluate(&id).unwrap());
    }

    #[test]
    fn satisfiability() {
        let u = w0();
        let all_fixed = EventFormula::parse(
            "Kop({}) == {} && Kop({w1}) == {w1} && Kop({w2}) == {w2} && Kop({w1,w2}) == {w1,w2}",
        )
        .unwrap();
        assert!(event_formula_satisfiable(&all_fixed, &u, &[]).unwrap().is_some());
        let bad = EventFormula::parse("Kop({}) == {w1,w2} && Kop({w1,w2}) == {w1,w2}").unwrap();
        assert!(event_formula_satisfiable(&bad, &u, &[]).unwrap().is_some());
        assert!(event_formula_satisfiable(&bad, &u, &[EpistemicAxiom::A2]).unwrap().is_none());
        let never = EventFormula::parse("!(Kop({w1,w2}) == {w1,w2})").unwrap();
        assert!(event_formula_satisfiable(&never, &u, &[]).unwrap().is_none());
        let big = Universe::numbered(3).unwrap();
        assert!(event_formula_satisfiable(&bad, &big, &[]).is_err());
    }

    #[test]
    fn parse_errors() {
        assert!(EventFormula::parse("{w1} +").is_err());
        assert!(EventFormula::parse("{w1}").is_err());
        assert!(EventFormula::parse("Kop{w1} == {}").is_err());
        assert!(check_literals(&EventFormula::parse("{w3} == {}").unwrap(), &w0()).is_err());
    }
}
