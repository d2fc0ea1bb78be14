use super::ast::{CatFixture, CmpOp, Command, Expr, Operand, Pred, KEYWORDS};
use super::lexer::{err, tokenize, Tok, Token};
use crate::error::Result;

/// Parses a single command written on line 1.
pub fn parse(text: &str) -> Result<Command> {
    parse_line(text, 1)
}

/// Parses one command; errors report `line` and the column within it.
pub fn parse_line(text: &str, line: usize) -> Result<Command> {
    let toks = tokenize(text, line)?;
    let mut p = Parser { toks, pos: 0 };
    let cmd = p.command()?;
    p.expect(Tok::End, "end of line")?;
    Ok(cmd)
}

/// Parses a bare restriction formula.
pub(crate) fn parse_pred(text: &str) -> Result<Pred> {
    let toks = tokenize(text, 1)?;
    let mut p = Parser { toks, pos: 0 };
    let pred = p.pred()?;
    p.expect(Tok::End, "end of formula")?;
    Ok(pred)
}

/// Whether a script line holds no command.
pub fn is_blank(text: &str) -> bool {
    let t = text.trim();
    t.is_empty() || t.starts_with("//")
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn here(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn fail<T>(&self, msg: impl Into<String>) -> Result<T> {
        let t = self.here();
        Err(err(t.line, t.col, msg))
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.fail(format!("expected {what}, found {}", describe(self.peek())))
        }
    }

    fn is_word(&self, w: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == w)
    }

    fn word(&mut self, w: &str) -> Result<()> {
        if self.is_word(w) {
            self.bump();
            Ok(())
        } else {
            self.fail(format!("expected '{w}', found {}", describe(self.peek())))
        }
    }

    fn number(&mut self) -> Result<u64> {
        match self.peek() {
            Tok::Num(n) => {
                let n = *n;
                self.bump();
                Ok(n)
            }
            t => self.fail(format!("expected a number, found {}", describe(t))),
        }
    }

    fn string(&mut self) -> Result<String> {
        match self.peek() {
            Tok::Str(s) => {
                let s = s.clone();
                self.bump();
                Ok(s)
            }
            t => self.fail(format!("expected a quoted path, found {}", describe(t))),
        }
    }

    fn command(&mut self) -> Result<Command> {
        let Tok::Ident(w) = self.peek().clone() else {
            return Ok(Command::Query(self.expr()?));
        };
        match w.as_str() {
            "let" => {
                self.bump();
                let name = match self.bump() {
                    Tok::Ident(n) if !KEYWORDS.contains(&n.as_str()) && !n.ends_with('?') => n,
                    t => {
                        self.pos -= 1;
                        return self.fail(format!("expected a name, found {}", describe(&t)));
                    }
                };
                self.expect(Tok::Eq, "'='")?;
                Ok(Command::Let(name, self.expr()?))
            }
            "show" => {
                self.bump();
                Ok(Command::Show(self.expr()?))
            }
            "classify" => {
                self.bump();
                Ok(Command::Classify(self.expr()?))
            }
            "check" => {
                self.bump();
                if self.is_word("zf") {
                    self.bump();
                    self.word("rank")?;
                    let rank = self.number()?;
                    self.word("seeds")?;
                    let seeds = self.number()?;
                    let rank = u32::try_from(rank).map_err(|_| {
                        let t = self.here();
                        err(t.line, t.col, "rank out of range")
                    })?;
                    Ok(Command::CheckZf { rank, seeds })
                } else if self.is_word("cat") {
                    self.bump();
                    let fixture = if self.is_word("worked") {
                        CatFixture::Worked
                    } else if self.is_word("set") {
                        CatFixture::Set
                    } else {
                        return self.fail("expected a category fixture: worked or set");
                    };
                    self.bump();
                    Ok(Command::CheckCat(fixture))
                } else {
                    self.fail("expected 'zf' or 'cat'")
                }
            }
            "diagram" => {
                self.bump();
                let e = self.expr()?;
                self.word("to")?;
                Ok(Command::Diagram(e, self.string()?))
            }
            "save" => {
                self.bump();
                Ok(Command::Save(self.string()?))
            }
            "load" => {
                self.bump();
                Ok(Command::Load(self.string()?))
            }
            _ => Ok(Command::Query(self.expr()?)),
        }
    }

    /// expr := dot ('where' pred)?
    fn expr(&mut self) -> Result<Expr> {
        let e = self.dot()?;
        if self.is_word("where") {
            self.bump();
            let p = self.pred()?;
            return Ok(Expr::Restrict(Box::new(e), Box::new(p)));
        }
        Ok(e)
    }

    fn dot(&mut self) -> Result<Expr> {
        let mut e = self.prefix()?;
        while *self.peek() == Tok::Dot {
            self.bump();
            let r = self.prefix()?;
            e = Expr::Compose(Box::new(e), Box::new(r));
        }
        Ok(e)
    }

    fn prefix(&mut self) -> Result<Expr> {
        let op: Option<fn(Box<Expr>) -> Expr> = match self.peek() {
            Tok::Ident(w) => match w.as_str() {
                "succ" => Some(Expr::Succ),
                "power" => Some(Expr::Power),
                "choice" => Some(Expr::Choice),
                "fst" => Some(Expr::Fst),
                "snd" => Some(Expr::Snd),
                _ => None,
            },
            _ => None,
        };
        match op {
            Some(op) => {
                self.bump();
                Ok(op(Box::new(self.prefix()?)))
            }
            None => self.atom(),
        }
    }

    fn args2(&mut self) -> Result<(Box<Expr>, Box<Expr>)> {
        self.expect(Tok::LParen, "'('")?;
        let a = self.expr()?;
        self.expect(Tok::Comma, "','")?;
        let b = self.expr()?;
        self.expect(Tok::RParen, "')'")?;
        Ok((Box::new(a), Box::new(b)))
    }

    fn braced<T>(&mut self, mut item: impl FnMut(&mut Self) -> Result<T>) -> Result<Vec<T>> {
        self.expect(Tok::LBrace, "'{'")?;
        let mut out = Vec::new();
        if *self.peek() == Tok::RBrace {
            self.bump();
            return Ok(out);
        }
        loop {
            out.push(item(self)?);
            match self.bump() {
                Tok::Comma => continue,
                Tok::RBrace => return Ok(out),
                t => {
                    self.pos -= 1;
                    return self.fail(format!("expected ',' or '}}', found {}", describe(&t)));
                }
            }
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Num(0) => {
                self.bump();
                Ok(Expr::Zero)
            }
            Tok::Num(1) => {
                self.bump();
                Ok(Expr::One)
            }
            Tok::Id(n) => {
                self.bump();
                Ok(Expr::Id(n))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                Ok(e)
            }
            Tok::Ident(w) => {
                let simple = match w.as_str() {
                    "zero" => Some(Expr::Zero),
                    "one" => Some(Expr::One),
                    "psi" => Some(Expr::Psi),
                    "sigma" => Some(Expr::Sigma),
                    "lambda" => Some(Expr::Lambda),
                    "omega" => Some(Expr::Omega),
                    _ => None,
                };
                if let Some(e) = simple {
                    self.bump();
                    return Ok(e);
                }
                match w.as_str() {
                    "phi" => {
                        self.bump();
                        Ok(Expr::Phi(self.number()?))
                    }
                    "union" => {
                        self.bump();
                        Ok(Expr::Union(self.braced(Self::expr)?))
                    }
                    "inter" => {
                        self.bump();
                        Ok(Expr::Inter(self.braced(Self::expr)?))
                    }
                    "arrow" => {
                        self.bump();
                        Ok(Expr::Arrow(self.braced(|p| {
                            let a = p.expr()?;
                            p.expect(Tok::Arrow, "'->'")?;
                            Ok((a, p.expr()?))
                        })?))
                    }
                    "pair" | "prod" | "eval" | "plus" | "times" => {
                        self.bump();
                        let (a, b) = self.args2()?;
                        Ok(match w.as_str() {
                            "pair" => Expr::Pair(a, b),
                            "prod" => Expr::Prod(a, b),
                            "eval" => Expr::Eval(a, b),
                            "plus" => Expr::Plus(a, b),
                            _ => Expr::Times(a, b),
                        })
                    }
                    _ if KEYWORDS.contains(&w.as_str()) || w.ends_with('?') => {
                        self.fail(format!("unexpected keyword '{w}'"))
                    }
                    _ => {
                        self.bump();
                        Ok(Expr::Name(w))
                    }
                }
            }
            t => self.fail(format!("expected a term, found {}", describe(&t))),
        }
    }

    fn pred(&mut self) -> Result<Pred> {
        let mut p = self.pred_and()?;
        while self.is_word("or") {
            self.bump();
            p = Pred::Or(Box::new(p), Box::new(self.pred_and()?));
        }
        Ok(p)
    }

    fn pred_and(&mut self) -> Result<Pred> {
        let mut p = self.pred_not()?;
        while self.is_word("and") {
            self.bump();
            p = Pred::And(Box::new(p), Box::new(self.pred_not()?));
        }
        Ok(p)
    }

    fn pred_not(&mut self) -> Result<Pred> {
        if self.is_word("not") {
            self.bump();
            return Ok(Pred::Not(Box::new(self.pred_not()?)));
        }
        if self.is_word("true") {
            self.bump();
            return Ok(Pred::True);
        }
        if self.is_word("false") {
            self.bump();
            return Ok(Pred::False);
        }
        if self.is_word("pair?") {
            self.bump();
            return Ok(Pred::IsPair(self.operand()?));
        }
        if self.is_word("zf?") {
            self.bump();
            return Ok(Pred::IsZf(self.operand()?));
        }
        // a parenthesis opens a grouped predicate unless it is the left
        // operand of a comparison
        if *self.peek() == Tok::LParen {
            let save = self.pos;
            self.bump();
            if let Ok(p) = self.pred() {
                if *self.peek() == Tok::RParen {
                    self.bump();
                    if !self.at_cmp_op() {
                        return Ok(p);
                    }
                }
            }
            self.pos = save;
        }
        let a = self.operand()?;
        let op = match self.peek() {
            Tok::Eq => CmpOp::Eq,
            Tok::Neq => CmpOp::Neq,
            Tok::Ident(w) if w == "in" => CmpOp::In,
            Tok::Ident(w) if w == "sub" => CmpOp::Sub,
            t => {
                return self.fail(format!(
                    "expected '=', '!=', 'in' or 'sub', found {}",
                    describe(t)
                ))
            }
        };
        self.bump();
        let b = self.operand()?;
        Ok(Pred::Cmp(op, a, b))
    }

    fn at_cmp_op(&self) -> bool {
        matches!(self.peek(), Tok::Eq | Tok::Neq) || self.is_word("in") || self.is_word("sub")
    }

    fn operand(&mut self) -> Result<Operand> {
        if self.is_word("x") {
            self.bump();
            return Ok(Operand::Var);
        }
        Ok(Operand::Expr(self.dot()?))
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(s) => format!("'{s}'"),
        Tok::Num(n) => format!("'{n}'"),
        Tok::Id(n) => format!("'#{n}'"),
        Tok::Str(s) => format!("\"{s}\""),
        Tok::Dot => "'.'".into(),
        Tok::Comma => "','".into(),
        Tok::LParen => "'('".into(),
        Tok::RParen => "')'".into(),
        Tok::LBrace => "'{'".into(),
        Tok::RBrace => "'}'".into(),
        Tok::Eq => "'='".into(),
        Tok::Neq => "'!='".into(),
        Tok::Arrow => "'->'".into(),
        Tok::End => "end of line".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::FlowError;

    fn b(e: Expr) -> Box<Expr> {
        Box::new(e)
    }

    #[test]
    fn let_compose() {
        assert_eq!(
            parse("let g = sigma . phi 2").unwrap(),
            Command::Let("g".into(), Expr::Compose(b(Expr::Sigma), b(Expr::Phi(2))))
        );
    }

    #[test]
    fn classify_restriction() {
        assert_eq!(
            parse("classify (1 where x != phi 4)").unwrap(),
            Command::Classify(Expr::Restrict(
                b(Expr::One),
                Box::new(Pred::Cmp(CmpOp::Neq, Operand::Var, Operand::Expr(Expr::Phi(4))))
            ))
        );
    }

    #[test]
    fn union_list() {
        assert_eq!(
            parse("union { g, h }").unwrap(),
            Command::Query(Expr::Union(vec![Expr::Name("g".into()), Expr::Name("h".into())]))
        );
    }

    #[test]
    fn compose_is_left_associative_and_where_loosest() {
        let c = parse("a . b . c where x = a . b").unwrap();
        let ab = Expr::Compose(b(Expr::Name("a".into())), b(Expr::Name("b".into())));
        assert_eq!(
            c,
            Command::Query(Expr::Restrict(
                b(Expr::Compose(b(ab.clone()), b(Expr::Name("c".into())))),
                Box::new(Pred::Cmp(CmpOp::Eq, Operand::Var, Operand::Expr(ab)))
            ))
        );
    }

    #[test]
    fn grouped_predicates() {
        let c = parse("1 where (x = phi 1 or x = phi 2) and not zf? x").unwrap();
        let Command::Query(Expr::Restrict(_, p)) = c else {
            panic!("{c:?}")
        };
        let Pred::And(l, r) = *p else { panic!() };
        assert!(matches!(*l, Pred::Or(..)));
        assert_eq!(*r, Pred::Not(Box::new(Pred::IsZf(Operand::Var))));
        let c = parse("1 where (phi 2) in x").unwrap();
        let Command::Query(Expr::Restrict(_, p)) = c else {
            panic!()
        };
        assert!(matches!(*p, Pred::Cmp(CmpOp::In, _, Operand::Var)));
    }

    #[test]
    fn print_parse_roundtrip() {
        for s in [
            "let g = sigma . phi 2",
            "classify 1 where x != phi 4",
            "union { g, h }",
            "inter {}",
            "show succ psi",
            "a . (b . c)",
            "(1 where x = phi 1) . sigma",
            "succ (a . b)",
            "power succ phi 2",
            "arrow { phi 0 -> phi 1, phi 2 -> phi 1 }",
            "eval(pair(phi 1, phi 2), #9)",
            "plus(phi 2, phi 3) . times(phi 1, phi 1)",
            "prod(phi 3, phi 2) where pair? x and (x in phi 3 or not x sub phi 2)",
            "1 where not (x = phi 1 and x = phi 2)",
            "check zf rank 2 seeds 50",
            "check cat worked",
            "diagram phi 2 to \"out.dot\"",
            "save \"s.txt\"",
            "load \"s.txt\"",
            "choice fst snd g",
        ] {
            let c = parse(s).unwrap();
            assert_eq!(c.to_string(), s);
            assert_eq!(parse(&c.to_string()).unwrap(), c);
        }
    }

    #[test]
    fn errors_have_locations() {
        match parse("let sigma = 1") {
            Err(FlowError::Parse { line: 1, col: 5, .. }) => {}
            e => panic!("{e:?}"),
        }
        match parse_line("show phi", 4) {
            Err(FlowError::Parse { line: 4, col: 9, .. }) => {}
            e => panic!("{e:?}"),
        }
        assert!(parse("check zf rank 2").is_err());
        assert!(parse("union { a b }").is_err());
        assert!(is_blank("  // note"));
    }
}
