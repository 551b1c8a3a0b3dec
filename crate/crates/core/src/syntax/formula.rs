use std::collections::BTreeSet;
use std::fmt;

/// Formulas of the epistemic and conditional languages. Box and diamond are
/// expanded by the parser and have no node of their own.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String),
    True,
    False,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    K(Box<Formula>),
    Cond(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Self {
        Formula::Atom(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn k(f: Formula) -> Self {
        Formula::K(Box::new(f))
    }

    pub fn cond(a: Formula, b: Formula) -> Self {
        Formula::Cond(Box::new(a), Box::new(b))
    }

    /// `□φ`, an abbreviation for `¬φ ~> false`.
    pub fn boxed(f: Formula) -> Self {
        Formula::cond(Formula::not(f), Formula::False)
    }

    /// `◇φ`, an abbreviation for `¬□¬φ`.
    pub fn diamond(f: Formula) -> Self {
        Formula::not(Formula::boxed(Formula::not(f)))
    }

    pub fn atoms(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Formula::Atom(a) => {
                out.insert(a);
            }
            Formula::True | Formula::False => {}
            Formula::Not(f) | Formula::K(f) => f.collect_atoms(out),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b)
            | Formula::Cond(a, b) => {
                a.collect_atoms(out);
                b.collect_atoms(out);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::True | Formula::False => 0,
            Formula::Not(f) | Formula::K(f) => 1 + f.depth(),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b)
            | Formula::Cond(a, b) => 1 + a.depth().max(b.depth()),
        }
    }
}

/// Prints in the concrete syntax; binary connectives are always
/// parenthesized so that printing and parsing round-trip.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(a) => f.write_str(a),
            Formula::True => f.write_str("true"),
            Formula::False => f.write_str("false"),
            Formula::Not(x) => write!(f, "!{x}"),
            Formula::K(x) => write!(f, "K({x})"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
            Formula::Implies(a, b) => write!(f, "({a} => {b})"),
            Formula::Iff(a, b) => write!(f, "({a} <=> {b})"),
            Formula::Cond(a, b) => write!(f, "({a} ~> {b})"),
        }
    }
}
