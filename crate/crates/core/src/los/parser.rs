use super::{Formula, LosError};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    Or,
    And,
    Implies,
    Exists,
    Forall,
    LParen,
    RParen,
    Comma,
    Dot,
    Equals,
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Not => "`not`".into(),
            Tok::Or => "`or`".into(),
            Tok::And => "`and`".into(),
            Tok::Implies => "`implies`".into(),
            Tok::Exists => "`exists`".into(),
            Tok::Forall => "`forall`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::Comma => "`,`".into(),
            Tok::Dot => "`.`".into(),
            Tok::Equals => "`=`".into(),
            Tok::End => "end of input".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, LosError> {
    let mut out = Vec::new();
    let (mut line, mut col) = (1, 1);
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, k) = (line, col);
        if c == '\n' {
            chars.next();
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            chars.next();
            col += 1;
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '.' => Some(Tok::Dot),
            '=' => Some(Tok::Equals),
            _ => None,
        };
        if let Some(tok) = single {
            chars.next();
            col += 1;
            out.push(Spanned { tok, line: l, col: k });
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut word = String::new();
            while let Some(&d) = chars.peek() {
                if d.is_ascii_alphanumeric() || d == '_' || d == '\'' {
                    word.push(d);
                    chars.next();
                    col += 1;
                } else {
                    break;
                }
            }
            let tok = match word.as_str() {
                "not" => Tok::Not,
                "or" => Tok::Or,
                "and" => Tok::And,
                "implies" => Tok::Implies,
                "exists" => Tok::Exists,
                "forall" => Tok::Forall,
                _ => Tok::Ident(word),
            };
            out.push(Spanned { tok, line: l, col: k });
            continue;
        }
        return Err(LosError::Syntax { line: l, col: k, message: format!("unexpected character `{c}`") });
    }
    out.push(Spanned { tok: Tok::End, line, col });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn next(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: &str) -> LosError {
        let t = &self.toks[self.pos];
        LosError::Syntax { line: t.line, col: t.col, message: format!("expected {expected}, found {}", t.tok.describe()) }
    }

    fn expect(&mut self, tok: Tok) -> Result<(), LosError> {
        if *self.peek() == tok {
            self.next();
            Ok(())
        } else {
            Err(self.error(&tok.describe()))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String, LosError> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.next();
                Ok(s)
            }
            _ => Err(self.error(what)),
        }
    }

    fn formula(&mut self) -> Result<Formula, LosError> {
        let lhs = self.disjunction()?;
        if *self.peek() == Tok::Implies {
            self.next();
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disjunction(&mut self) -> Result<Formula, LosError> {
        let mut acc = self.conjunction()?;
        while *self.peek() == Tok::Or {
            self.next();
            let rhs = self.conjunction()?;
            acc = Formula::or(acc, rhs);
        }
        Ok(acc)
    }

    fn conjunction(&mut self) -> Result<Formula, LosError> {
        let mut acc = self.unary()?;
        while *self.peek() == Tok::And {
            self.next();
            let rhs = self.unary()?;
            acc = Formula::and(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, LosError> {
        match self.peek().clone() {
            Tok::Not => {
                self.next();
                Ok(Formula::not(self.unary()?))
            }
            q @ (Tok::Exists | Tok::Forall) => {
                self.next();
                let v = self.ident("a variable after the quantifier")?;
                self.expect(Tok::Dot)?;
                let body = self.formula()?;
                Ok(if q == Tok::Exists { Formula::exists(v, body) } else { Formula::forall(v, body) })
            }
            Tok::LParen => {
                self.next();
                let inner = self.formula()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            Tok::Ident(name) => {
                self.next();
                match self.peek() {
                    Tok::Equals => {
                        self.next();
                        let rhs = self.ident("an identifier after `=`")?;
                        Ok(Formula::Eq(name, rhs))
                    }
                    Tok::LParen => {
                        self.next();
                        let mut args = vec![self.ident("an argument")?];
                        while *self.peek() == Tok::Comma {
                            self.next();
                            args.push(self.ident("an argument")?);
                        }
                        self.expect(Tok::RParen)?;
                        Ok(Formula::Rel(name, args))
                    }
                    _ => Err(self.error("`=` or `(` after an identifier")),
                }
            }
            _ => Err(self.error("a formula")),
        }
    }
}

/// Parses the grammar
///
/// ```text
/// formula     ::= disjunction [ "implies" formula ]
/// disjunction ::= conjunction { "or" conjunction }
/// conjunction ::= unary { "and" unary }
/// unary       ::= "not" unary
///               | ("exists" | "forall") ident "." formula
///               | "(" formula ")"
///               | ident "=" ident
///               | ident "(" ident { "," ident } ")"
/// ```
///
/// `and`, `implies` and `forall` are expanded into `not`/`or`/`exists`;
/// a quantifier body extends as far right as possible. Identifiers are
/// ASCII letters, digits, `_` and `'`, starting with a letter or `_`.
pub fn parse_formula(text: &str) -> Result<Formula, LosError> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    let f = p.formula()?;
    if *p.peek() != Tok::End {
        return Err(p.error("end of input"));
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forall_desugars() {
        let f = parse_formula("forall x. not R(x,x)").unwrap();
        let expected = Formula::not(Formula::exists("x", Formula::not(Formula::not(Formula::rel("R", &["x", "x"])))));
        assert_eq!(f, expected);
    }

    #[test]
    fn equality_and_precedence() {
        assert_eq!(parse_formula("x = y").unwrap(), Formula::eq("x", "y"));
        let f = parse_formula("P(x) or Q(x) and R(x)").unwrap();
        let expected = Formula::or(
            Formula::rel("P", &["x"]),
            Formula::and(Formula::rel("Q", &["x"]), Formula::rel("R", &["x"])),
        );
        assert_eq!(f, expected);
        let g = parse_formula("P(x) implies Q(x) implies R(x)").unwrap();
        let expected = Formula::implies(
            Formula::rel("P", &["x"]),
            Formula::implies(Formula::rel("Q", &["x"]), Formula::rel("R", &["x"])),
        );
        assert_eq!(g, expected);
    }

    #[test]
    fn quantifier_scope_extends_right() {
        let f = parse_formula("exists z. P(z) or Q(z)").unwrap();
        assert!(matches!(f, Formula::Exists(_, ref body) if matches!(**body, Formula::Or(..))));
    }

    #[test]
    fn errors_carry_positions() {
        match parse_formula("(p or") {
            Err(LosError::Syntax { line, col, message }) => {
                assert_eq!((line, col), (1, 4));
                assert!(message.contains("`=` or `(`"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
        match parse_formula("(P(x) or\n  Q(x)") {
            Err(LosError::Syntax { line, col, .. }) => assert_eq!((line, col), (2, 7)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_formula("x = y)"), Err(LosError::Syntax { col: 6, .. })));
        assert!(matches!(parse_formula("x # y"), Err(LosError::Syntax { col: 3, .. })));
        assert!(matches!(parse_formula("exists . P(x)"), Err(LosError::Syntax { .. })));
    }

    #[test]
    fn printer_round_trip_on_tricky_shapes() {
        for text in [
            "(exists x. P(x)) or Q(y)",
            "not exists x. P(x) or Q(y)",
            "(not exists x. P(x)) or Q(y)",
            "P(x) or exists y. R(x, y) or x = y",
            "((P(x) or Q(x)) or R(x, x))",
            "forall x. exists y. R(x, y) and not x = y",
        ] {
            let f = parse_formula(text).unwrap();
            assert_eq!(parse_formula(&f.to_string()).unwrap(), f, "{text} printed as {f}");
        }
    }
}
