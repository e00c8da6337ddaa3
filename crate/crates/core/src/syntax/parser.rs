use super::lexer::{lex, Spanned, Tok};
use super::{IntFormula, LinearFormula, SyntaxError, Term, Theory};

type Result<T> = std::result::Result<T, SyntaxError>;
type L = LinearFormula;

pub(crate) struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    /// Maps a sort to the name of its existence predicate, for `x in! S`.
    exist: &'a dyn Fn(&str) -> String,
}

pub(crate) fn default_exist(sort: &str) -> String {
    format!("E_{sort}")
}

pub(crate) type RawSequent = (Vec<(String, String)>, Vec<LinearFormula>, LinearFormula);

impl<'a> Parser<'a> {
    pub(crate) fn new(text: &str, line0: usize, col0: usize, exist: &'a dyn Fn(&str) -> String) -> Result<Self> {
        Ok(Parser { toks: lex(text, line0, col0)?, pos: 0, exist })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek_at(&self, k: usize) -> &Tok {
        &self.toks[(self.pos + k).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err_here(&self, msg: impl Into<String>) -> SyntaxError {
        let t = &self.toks[self.pos];
        SyntaxError::Parse { line: t.line, col: t.col, msg: msg.into() }
    }

    fn unexpected(&self, wanted: &str) -> SyntaxError {
        self.err_here(format!("expected {wanted}, found {}", self.peek().describe()))
    }

    fn expect(&mut self, tok: Tok) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&format!("`{}`", tok.text())))
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek().clone() {
            Tok::Ident(s) => {
                self.bump();
                Ok(s)
            }
            _ => Err(self.unexpected(what)),
        }
    }

    pub(crate) fn expect_eof(&self) -> Result<()> {
        match self.peek() {
            Tok::Eof => Ok(()),
            t => Err(self.err_here(format!("unexpected {}", t.describe()))),
        }
    }

    // ---- terms ----

    fn term(&mut self) -> Result<Term> {
        let name = self.ident("a term")?;
        if *self.peek() == Tok::LParen {
            Ok(Term::App(name, self.args()?))
        } else {
            Ok(Term::Var(name))
        }
    }

    fn args(&mut self) -> Result<Vec<Term>> {
        self.expect(Tok::LParen)?;
        let mut out = Vec::new();
        if *self.peek() == Tok::RParen {
            self.bump();
            return Ok(out);
        }
        loop {
            out.push(self.term()?);
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::RParen => {
                    self.bump();
                    return Ok(out);
                }
                _ => return Err(self.unexpected("`,` or `)`")),
            }
        }
    }

    // ---- linear formulas ----

    pub(crate) fn linear(&mut self) -> Result<L> {
        if matches!(self.peek(), Tok::Wedge | Tok::Vee) {
            return self.linear_quant();
        }
        let lhs = self.additive()?;
        match self.peek() {
            Tok::Lolli => {
                self.bump();
                Ok(L::Limp(Box::new(lhs), Box::new(self.linear()?)))
            }
            Tok::Liff => {
                self.bump();
                Ok(L::Liff(Box::new(lhs), Box::new(self.linear()?)))
            }
            _ => Ok(lhs),
        }
    }

    fn linear_quant(&mut self) -> Result<L> {
        let universal = self.bump().tok == Tok::Wedge;
        let var = self.ident("a bound variable")?;
        self.expect(Tok::Colon)?;
        let sort = self.ident("a sort")?;
        self.expect(Tok::Dot)?;
        let body = Box::new(self.linear()?);
        Ok(if universal { L::Forall(var, sort, body) } else { L::Exists(var, sort, body) })
    }

    fn mixing_error(&self, at: &Spanned, a: &Tok, b: &Tok) -> SyntaxError {
        SyntaxError::Parse {
            line: at.line,
            col: at.col,
            msg: format!("`{}` and `{}` cannot be mixed without parentheses", a.text(), b.text()),
        }
    }

    fn additive(&mut self) -> Result<L> {
        let (mut acc, first_mul) = self.multiplicative()?;
        let mut op: Option<Tok> = None;
        while matches!(self.peek(), Tok::Amp | Tok::Plus) {
            let at = self.toks[self.pos].clone();
            if let Some(m) = &first_mul {
                return Err(self.mixing_error(&at, &m.tok, &at.tok));
            }
            if let Some(prev) = &op {
                if *prev != at.tok {
                    return Err(self.mixing_error(&at, prev, &at.tok));
                }
            }
            self.bump();
            let (rhs, rhs_mul) = self.multiplicative()?;
            if let Some(m) = rhs_mul {
                return Err(self.mixing_error(&m, &at.tok, &m.tok));
            }
            acc = match at.tok {
                Tok::Amp => L::With(Box::new(acc), Box::new(rhs)),
                _ => L::Plus(Box::new(acc), Box::new(rhs)),
            };
            op = Some(at.tok);
        }
        Ok(acc)
    }

    /// Returns the chain and the first multiplicative operator used, if any.
    fn multiplicative(&mut self) -> Result<(L, Option<Spanned>)> {
        let mut acc = self.unary()?;
        let mut first: Option<Spanned> = None;
        while matches!(self.peek(), Tok::Star | Tok::At) {
            let at = self.toks[self.pos].clone();
            if let Some(prev) = &first {
                if prev.tok != at.tok {
                    return Err(self.mixing_error(&at, &prev.tok, &at.tok));
                }
            }
            self.bump();
            let rhs = self.unary()?;
            acc = match at.tok {
                Tok::Star => L::Tensor(Box::new(acc), Box::new(rhs)),
                _ => L::Par(Box::new(acc), Box::new(rhs)),
            };
            first.get_or_insert(at);
        }
        Ok((acc, first))
    }

    fn unary(&mut self) -> Result<L> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(L::Neg(Box::new(self.unary()?)))
            }
            Tok::Bang => {
                self.bump();
                Ok(L::Bang(Box::new(self.unary()?)))
            }
            Tok::Quest => {
                self.bump();
                Ok(L::WhyNot(Box::new(self.unary()?)))
            }
            Tok::Wedge | Tok::Vee => self.linear_quant(),
            Tok::LParen => {
                self.bump();
                let f = self.linear()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(s) if s == "T" => {
                self.bump();
                Ok(L::Top)
            }
            Tok::Ident(s) if s == "F" => {
                self.bump();
                Ok(L::Bot)
            }
            Tok::Ident(name) => {
                self.bump();
                let args = if *self.peek() == Tok::LParen { self.args()? } else { vec![] };
                if *self.peek() == Tok::Ident("in".into()) && *self.peek_at(1) == Tok::Bang {
                    self.bump();
                    self.bump();
                    let sort = self.ident("a sort after `in!`")?;
                    let t = if args.is_empty() { Term::Var(name) } else { Term::App(name, args) };
                    return Ok(L::Atom((self.exist)(&sort), vec![t]));
                }
                Ok(L::Atom(name, args))
            }
            _ => Err(self.unexpected("a formula")),
        }
    }

    /// `[x:S, ...] hyp * hyp |- concl`; the context brackets are optional.
    pub(crate) fn linear_sequent(&mut self) -> Result<RawSequent> {
        let mut ctx = Vec::new();
        if *self.peek() == Tok::LBracket {
            self.bump();
            while *self.peek() != Tok::RBracket {
                let v = self.ident("a variable")?;
                self.expect(Tok::Colon)?;
                let s = self.ident("a sort")?;
                ctx.push((v, s));
                match self.peek() {
                    Tok::Comma => {
                        self.bump();
                    }
                    Tok::RBracket => {}
                    _ => return Err(self.unexpected("`,` or `]`")),
                }
            }
            self.bump();
        }
        let mut hyps = Vec::new();
        if *self.peek() != Tok::Turnstile {
            flatten_tensor(self.linear()?, &mut hyps);
        }
        self.expect(Tok::Turnstile)?;
        let concl = self.linear()?;
        self.expect_eof()?;
        Ok((ctx, hyps, concl))
    }

    // ---- intuitionistic formulas ----

    pub(crate) fn int(&mut self) -> Result<IntFormula> {
        if let Some(q) = self.int_quant_start() {
            return self.int_quant(q);
        }
        let lhs = self.int_or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            return Ok(IntFormula::Imp(Box::new(lhs), Box::new(self.int()?)));
        }
        Ok(lhs)
    }

    fn int_quant_start(&self) -> Option<bool> {
        match (self.peek(), self.peek_at(1), self.peek_at(2)) {
            (Tok::Ident(k), Tok::Ident(_), Tok::Colon) if k == "forall" => Some(true),
            (Tok::Ident(k), Tok::Ident(_), Tok::Colon) if k == "exists" => Some(false),
            _ => None,
        }
    }

    fn int_quant(&mut self, universal: bool) -> Result<IntFormula> {
        self.bump();
        let var = self.ident("a bound variable")?;
        self.expect(Tok::Colon)?;
        let sort = self.ident("a sort")?;
        self.expect(Tok::Dot)?;
        let body = Box::new(self.int()?);
        Ok(if universal { IntFormula::Forall(var, sort, body) } else { IntFormula::Exists(var, sort, body) })
    }

    fn int_or(&mut self) -> Result<IntFormula> {
        let mut acc = self.int_and()?;
        while *self.peek() == Tok::Vee {
            self.bump();
            acc = IntFormula::Or(Box::new(acc), Box::new(self.int_and()?));
        }
        Ok(acc)
    }

    fn int_and(&mut self) -> Result<IntFormula> {
        let mut acc = self.int_unary()?;
        while *self.peek() == Tok::Wedge {
            self.bump();
            acc = IntFormula::And(Box::new(acc), Box::new(self.int_unary()?));
        }
        Ok(acc)
    }

    fn int_unary(&mut self) -> Result<IntFormula> {
        if let Some(q) = self.int_quant_start() {
            return self.int_quant(q);
        }
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                Ok(IntFormula::Not(Box::new(self.int_unary()?)))
            }
            Tok::LParen => {
                self.bump();
                let f = self.int()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(s) if s == "true" => {
                self.bump();
                Ok(IntFormula::True)
            }
            Tok::Ident(s) if s == "false" => {
                self.bump();
                Ok(IntFormula::False)
            }
            Tok::Ident(name) => {
                self.bump();
                let args = if *self.peek() == Tok::LParen { self.args()? } else { vec![] };
                Ok(IntFormula::Atom(name, args))
            }
            _ => Err(self.unexpected("a formula")),
        }
    }

    fn clause_name(&mut self) -> Result<String> {
        let mut name = self.ident("a sequent name")?;
        while *self.peek() == Tok::Dot {
            self.bump();
            name.push('.');
            name.push_str(&self.ident("a name segment")?);
        }
        Ok(name)
    }
}

/// One logical line of a theory file.
pub(crate) enum Directive {
    Theory(String),
    Sort(Vec<String>),
    Pred { name: String, args: Vec<String>, dual: Option<String>, affirmative: bool },
    Fun { name: String, args: Vec<String>, result: String },
    Const { name: String, sort: String },
    Axiom { name: String, seq: RawSequent },
}

impl Parser<'_> {
    fn sort_list(&mut self) -> Result<Vec<String>> {
        let mut out = Vec::new();
        if *self.peek() != Tok::LParen {
            return Ok(out);
        }
        self.bump();
        while *self.peek() != Tok::RParen {
            out.push(self.ident("a sort")?);
            match self.peek() {
                Tok::Comma => {
                    self.bump();
                }
                Tok::RParen => {}
                _ => return Err(self.unexpected("`,` or `)`")),
            }
        }
        self.bump();
        Ok(out)
    }

    pub(crate) fn directive(&mut self) -> Result<Directive> {
        let kw = self.ident("a directive")?;
        let d = match kw.as_str() {
            "theory" => Directive::Theory(self.ident("a theory name")?),
            "sort" => {
                let mut sorts = vec![self.ident("a sort name")?];
                while *self.peek() == Tok::Comma {
                    self.bump();
                    sorts.push(self.ident("a sort name")?);
                }
                Directive::Sort(sorts)
            }
            "pred" => {
                let name = self.ident("a predicate name")?;
                let args = self.sort_list()?;
                let (mut dual, mut affirmative) = (None, false);
                loop {
                    match self.peek().clone() {
                        Tok::Ident(k) if k == "dual" && dual.is_none() => {
                            self.bump();
                            dual = Some(self.ident("a dual name")?);
                        }
                        Tok::Ident(k) if k == "affirmative" && !affirmative => {
                            self.bump();
                            affirmative = true;
                        }
                        _ => break,
                    }
                }
                Directive::Pred { name, args, dual, affirmative }
            }
            "fun" => {
                let name = self.ident("a function name")?;
                let args = self.sort_list()?;
                self.expect(Tok::Colon)?;
                Directive::Fun { name, args, result: self.ident("a result sort")? }
            }
            "const" => {
                let name = self.ident("a constant name")?;
                self.expect(Tok::Colon)?;
                Directive::Const { name, sort: self.ident("a sort")? }
            }
            "axiom" => {
                let name = self.ident("an axiom name")?;
                self.expect(Tok::Colon)?;
                return Ok(Directive::Axiom { name, seq: self.linear_sequent()? });
            }
            other => {
                self.pos = self.pos.saturating_sub(1);
                return Err(self.err_here(format!("unknown directive `{other}`")));
            }
        };
        self.expect_eof()?;
        Ok(d)
    }
}

pub(crate) fn flatten_tensor(f: LinearFormula, out: &mut Vec<LinearFormula>) {
    match f {
        L::Tensor(a, b) => {
            flatten_tensor(*a, out);
            flatten_tensor(*b, out);
        }
        f => out.push(f),
    }
}

/// Parses a linear formula without a theory; `x in! S` becomes `E_S(x)`.
pub fn parse_linear(text: &str) -> Result<LinearFormula> {
    let mut p = Parser::new(text, 1, 1, &default_exist)?;
    let f = p.linear()?;
    p.expect_eof()?;
    Ok(f)
}

/// Parses a linear formula and, with a theory, resolves and sort-checks it.
///
/// Free variables are allowed; each takes the sort of its first use.
pub fn parse_linear_with(text: &str, theory: Option<&Theory>) -> Result<LinearFormula> {
    match theory {
        None => parse_linear(text),
        Some(th) => {
            let exist = |s: &str| th.existence_name(s);
            let mut p = Parser::new(text, 1, 1, &exist)?;
            let f = p.linear()?;
            p.expect_eof()?;
            let mut ctx = Vec::new();
            th.resolve_formula(&f, &mut ctx, true)
        }
    }
}

pub fn parse_int(text: &str) -> Result<IntFormula> {
    let mut p = Parser::new(text, 1, 1, &default_exist)?;
    let f = p.int()?;
    p.expect_eof()?;
    Ok(f)
}

/// One line of an expansion file: `name.clause: h1, h2 |- c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IseqLine {
    pub name: String,
    pub hypotheses: Vec<IntFormula>,
    pub conclusion: IntFormula,
}

pub fn parse_sequent_line(text: &str) -> Result<IseqLine> {
    let mut p = Parser::new(text, 1, 1, &default_exist)?;
    let name = p.clause_name()?;
    p.expect(Tok::Colon)?;
    let mut hypotheses = Vec::new();
    if *p.peek() != Tok::Turnstile {
        loop {
            hypotheses.push(p.int()?);
            if *p.peek() == Tok::Comma {
                p.bump();
            } else {
                break;
            }
        }
    }
    p.expect(Tok::Turnstile)?;
    let conclusion = p.int()?;
    p.expect_eof()?;
    Ok(IseqLine { name, hypotheses, conclusion })
}

#[cfg(test)]
mod tests {
    use super::super::lf::*;
    use super::*;

    #[test]
    fn reads_examples() {
        assert_eq!(parse_linear("p * ~p").unwrap(), tensor(atom("p"), neg(atom("p"))));
        assert_eq!(parse_linear("/\\x:G. eq(x,x)").unwrap(), forall("x", "G", pred("eq", &["x", "x"])));
        assert_eq!(parse_linear("p -o q -o r").unwrap(), limp(atom("p"), limp(atom("q"), atom("r"))));
        assert_eq!(parse_linear("p * q * r").unwrap(), tensor(tensor(atom("p"), atom("q")), atom("r")));
        assert_eq!(parse_linear("!p * ?q -o T").unwrap(), limp(tensor(bang(atom("p")), whynot(atom("q"))), L::Top));
        assert_eq!(parse_linear("x in! G").unwrap(), pred("E_G", &["x"]));
    }

    #[test]
    fn quantifier_extends_right() {
        assert_eq!(parse_linear("p * \\/x:S. q(x) & r").unwrap(), tensor(atom("p"), exists("x", "S", with(pred("q", &["x"]), atom("r")))));
    }

    #[test]
    fn mixing_needs_parens() {
        let col = |s: &str| match parse_linear(s) {
            Err(SyntaxError::Parse { col, .. }) => col,
            other => panic!("{other:?}"),
        };
        assert_eq!(col("p * q + r"), 7);
        assert_eq!(col("p + q * r"), 7);
        assert_eq!(col("p * q @ r"), 7);
        assert_eq!(col("p & q + r"), 7);
        assert!(parse_linear("(p * q) + r").is_ok());
        assert!(parse_linear("p * q -o r & s").is_ok());
    }

    #[test]
    fn reports_positions() {
        assert_eq!(parse_linear("p *\n  (q"), Err(SyntaxError::Parse { line: 2, col: 5, msg: "expected `)`, found end of input".into() }));
        assert!(parse_linear("p q").is_err());
    }

    #[test]
    fn reads_iseq_lines() {
        let l = parse_sequent_line("trans.proof: eq(x,y), eq(y,z) |- eq(x,z)").unwrap();
        assert_eq!(l.name, "trans.proof");
        assert_eq!(l.hypotheses.len(), 2);
        let l = parse_sequent_line("refl.proof: |- eq(x,x)").unwrap();
        assert!(l.hypotheses.is_empty());
        assert_eq!(
            parse_int("a /\\ b \\/ c -> ~d").unwrap(),
            super::super::ifm::imp(
                super::super::ifm::or(
                    super::super::ifm::and(super::super::ifm::atom("a", &[]), super::super::ifm::atom("b", &[])),
                    super::super::ifm::atom("c", &[])
                ),
                super::super::ifm::not(super::super::ifm::atom("d", &[]))
            )
        );
        assert!(matches!(parse_int("forall x:G. exists y:G. eq(x,y)").unwrap(), IntFormula::Forall(..)));
    }
}
