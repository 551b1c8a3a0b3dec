use super::formula::Formula;
use super::lexer::{Cursor, Tok};
use crate::error::Result;

/// Parses a formula. Precedence from loosest to tightest: `<=>`, `=>`
/// (right associative), `~>` (non-associative), `|`, `&`, then the prefix
/// operators `!`, `K(..)`, `[]`, `<>`.
pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut c = Cursor::new(text)?;
    let f = iff(&mut c)?;
    c.finish()?;
    Ok(f)
}

fn iff(c: &mut Cursor) -> Result<Formula> {
    let mut lhs = implies(c)?;
    while c.eat_sym("<=>") {
        lhs = Formula::iff(lhs, implies(c)?);
    }
    Ok(lhs)
}

fn implies(c: &mut Cursor) -> Result<Formula> {
    let lhs = cond(c)?;
    if c.eat_sym("=>") {
        Ok(Formula::implies(lhs, implies(c)?))
    } else {
        Ok(lhs)
    }
}

fn cond(c: &mut Cursor) -> Result<Formula> {
    let lhs = or(c)?;
    if !c.eat_sym("~>") {
        return Ok(lhs);
    }
    let rhs = or(c)?;
    if matches!(c.peek(), Tok::Sym("~>")) {
        return Err(c.error("`~>` is non-associative; parenthesize nested conditionals".into()));
    }
    Ok(Formula::cond(lhs, rhs))
}

fn or(c: &mut Cursor) -> Result<Formula> {
    let mut lhs = and(c)?;
    while c.eat_sym("|") {
        lhs = Formula::or(lhs, and(c)?);
    }
    Ok(lhs)
}

fn and(c: &mut Cursor) -> Result<Formula> {
    let mut lhs = unary(c)?;
    while c.eat_sym("&") {
        lhs = Formula::and(lhs, unary(c)?);
    }
    Ok(lhs)
}

fn unary(c: &mut Cursor) -> Result<Formula> {
    if c.eat_sym("!") {
        return Ok(Formula::not(unary(c)?));
    }
    if c.eat_sym("[]") {
        return Ok(Formula::boxed(unary(c)?));
    }
    if c.eat_sym("<>") {
        return Ok(Formula::diamond(unary(c)?));
    }
    match c.peek().clone() {
        Tok::LParen => {
            c.next();
            let f = iff(c)?;
            c.expect(Tok::RParen, "`)`")?;
            Ok(f)
        }
        Tok::Ident(word) => match word.as_str() {
            "K" => {
                c.next();
                c.expect(Tok::LParen, "`(` after `K`")?;
                let f = iff(c)?;
                c.expect(Tok::RParen, "`)`")?;
                Ok(Formula::k(f))
            }
            "true" => {
                c.next();
                Ok(Formula::True)
            }
            "false" => {
                c.next();
                Ok(Formula::False)
            }
            w if is_atom(w) => {
                c.next();
                Ok(Formula::Atom(word))
            }
            _ => Err(c.error("expected an atom `[a-z][a-z0-9_]*`".into())),
        },
        _ => Err(c.error("expected a formula".into())),
    }
}

pub(crate) fn is_atom(w: &str) -> bool {
    let mut chars = w.chars();
    matches!(chars.next(), Some('a'..='z'))
        && chars.all(|ch| ch.is_ascii_lowercase() || ch.is_ascii_digit() || ch == '_')
        && w != "true"
        && w != "false"
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use Formula as F;

    fn p() -> Formula {
        F::atom("p")
    }

    fn q() -> Formula {
        F::atom("q")
    }

    #[test]
    fn knowledge_sample() {
        assert_eq!(
            parse_formula("K(!K(p & q))").unwrap(),
            F::k(F::not(F::k(F::and(p(), q()))))
        );
    }

    #[test]
    fn abbreviations_expand() {
        assert_eq!(parse_formula("[](p)").unwrap(), F::cond(F::not(p()), F::False));
        assert_eq!(
            parse_formula("<>(p)").unwrap(),
            F::not(F::cond(F::not(F::not(p())), F::False))
        );
    }

    #[test]
    fn precedence_and_associativity() {
        assert_eq!(
            parse_formula("p | q & r").unwrap(),
            F::or(p(), F::and(q(), F::atom("r")))
        );
        assert_eq!(
            parse_formula("p => q => r").unwrap(),
            F::implies(p(), F::implies(q(), F::atom("r")))
        );
        assert_eq!(
            parse_formula("p | q ~> r => p").unwrap(),
            F::implies(F::cond(F::or(p(), q()), F::atom("r")), p())
        );
        assert_eq!(
            parse_formula("p <=> q <=> r").unwrap(),
            F::iff(F::iff(p(), q()), F::atom("r"))
        );
        assert_eq!(
            parse_formula("(p ~> q) ~> r").unwrap(),
            F::cond(F::cond(p(), q()), F::atom("r"))
        );
    }

    #[test]
    fn nested_conditional_needs_parentheses() {
        match parse_formula("p ~> q ~> r") {
            Err(Error::Syntax { line, col, msg }) => {
                assert_eq!((line, col), (1, 8));
                assert!(msg.contains("non-associative"), "{msg}");
            }
            other => panic!("expected a syntax error, got {other:?}"),
        }
    }

    #[test]
    fn errors_are_located() {
        match parse_formula("p &\n  (q |") {
            Err(Error::Syntax { line, col, .. }) => assert_eq!((line, col), (2, 7)),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_formula("P"), Err(Error::Syntax { col: 1, .. })));
        assert!(matches!(parse_formula("p $ q"), Err(Error::Syntax { col: 3, .. })));
        assert!(parse_formula("K p").is_err());
        assert!(parse_formula("p q").is_err());
    }

    #[test]
    fn printing_round_trips() {
        for text in ["K(!K(p & q))", "[](p) => <>(q_1)", "(p ~> q) <=> !(r | true)", "p => q => false"] {
            let f = parse_formula(text).unwrap();
            assert_eq!(parse_formula(&f.to_string()).unwrap(), f, "{text}");
        }
    }
}
