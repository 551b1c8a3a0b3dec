//! Formula languages, structures and model checking.

mod event_formula;
mod formula;
mod lexer;
mod parser;
mod structure;

pub use event_formula::{check_literals, event_formula_satisfiable, EventDesc, EventFormula, EVSAT_CAP};
pub use formula::Formula;
pub use parser::parse_formula;
pub(crate) use parser::is_atom as is_atom_name;
pub use structure::{Frame, Scheme, Structure};

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::conditional::SelectionFunction;
    use crate::epistemic::KripkeRelation;
    use crate::sets::Universe;

    fn ab() -> Universe {
        Universe::new(["a", "b"]).unwrap()
    }

    #[test]
    fn kripke_clauses() {
        let u = ab();
        let m = Structure::from_names(Frame::Kripke(KripkeRelation::empty(&u)), &[("p", vec!["a"])]).unwrap();
        assert!(m.model_check("a", &parse_formula("p").unwrap()).unwrap());
        assert!(!m.model_check("b", &parse_formula("p").unwrap()).unwrap());
        assert!(m.model_check("a", &parse_formula("K(false)").unwrap()).unwrap());
        assert!(m.intension_of(&Formula::True).unwrap().is_full());
        assert!(matches!(
            m.model_check("a", &parse_formula("q").unwrap()),
            Err(crate::Error::UndeclaredAtom(_))
        ));
        assert!(m.model_check("z", &Formula::True).is_err());
        assert!(m.model_check("a", &parse_formula("p ~> p").unwrap()).is_err());
    }

    #[test]
    fn counterfactual_clause() {
        let u = ab();
        // f(a, {a,b}) = {a}; f(w, H) = H elsewhere
        let f = SelectionFunction::from_fn(&u, |w, h| if w == 0 && h == 0b11 { 0b01 } else { h }).unwrap();
        let m = Structure::from_names(Frame::Counterfactual(f), &[("p", vec!["a", "b"]), ("q", vec!["a"])]).unwrap();
        let phi = parse_formula("p ~> q").unwrap();
        assert!(m.model_check("a", &phi).unwrap());
        assert!(!m.model_check("b", &phi).unwrap());
    }

    #[test]
    fn schemes() {
        let u = ab();
        let refl = Structure::kripke(KripkeRelation::identity(&u), BTreeMap::new()).unwrap();
        assert!(refl.scheme_validity(Scheme::K2).unwrap().holds());
        let s1 = SelectionFunction::from_fn(&u, |_, h| h).unwrap();
        let m = Structure::counterfactual(s1, BTreeMap::new()).unwrap();
        assert!(m.scheme_validity(Scheme::C1).unwrap().holds());
        let leaky = SelectionFunction::from_fn(&u, |w, h| if w == 0 && h == 0b10 { 0b01 } else { h }).unwrap();
        let m = Structure::counterfactual(leaky, BTreeMap::new()).unwrap();
        let v = m.scheme_validity(Scheme::C1).unwrap();
        let w = v.witness().unwrap();
        assert_eq!(w.set("H"), Some(0b10));
        assert_eq!(w.world, Some(0));
        assert!(m.scheme_validity(Scheme::K1).is_err());
    }
}
