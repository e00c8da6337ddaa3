//! Formulas, terms, sequents and theories, with their ASCII syntax.
//!
//! Linear tokens: `*` tensor, `@` par, `&` with, `+` plus, `-o` linear
//! implication, `o-o` its two-way sugar, `~` negation, `!`/`?`
//! exponentials, `T`/`F` units, `/\x:S.` and `\/x:S.` quantifiers.
//!
//! Intuitionistic tokens: `/\`, `\/`, `->`, `~`, `true`, `false`,
//! `forall x:S.` and `exists x:S.`.

mod lexer;
mod parser;
mod print;
mod theory;

use std::collections::BTreeSet;

use thiserror::Error;

pub use parser::{parse_int, parse_linear, parse_linear_with, parse_sequent_line, IseqLine};
pub use print::{print_int, print_linear, print_term};
pub use theory::{parse_linear_sequent, parse_theory, Axiom, FuncSym, PredSym, Sequent, Theory};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SyntaxError {
    #[error("{line}:{col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("`{name}` expects {expected} arguments, got {found}")]
    Arity { name: String, expected: usize, found: usize },
    #[error("sort mismatch in {context}: expected {expected}, found {found}")]
    SortMismatch { context: String, expected: String, found: String },
    #[error("duplicate declaration of `{0}`")]
    Duplicate(String),
    #[error("undeclared sort `{0}`")]
    UndeclaredSort(String),
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("line {line}: {source}")]
    AtLine { line: usize, source: Box<SyntaxError> },
    #[error("{0}")]
    Invalid(String),
}

impl SyntaxError {
    pub(crate) fn at_line(self, line: usize) -> SyntaxError {
        match self {
            e @ SyntaxError::Parse { .. } | e @ SyntaxError::AtLine { .. } => e,
            e => SyntaxError::AtLine { line, source: Box::new(e) },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    /// Function application; constants are nullary applications.
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn free_vars(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(v) => {
                out.insert(v.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.free_vars(out)),
        }
    }

    pub fn substitute(&self, var: &str, t: &Term) -> Term {
        match self {
            Term::Var(v) if v == var => t.clone(),
            Term::Var(_) => self.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.substitute(var, t)).collect()),
        }
    }
}

type B<T> = Box<T>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LinearFormula {
    Atom(String, Vec<Term>),
    Top,
    Bot,
    Tensor(B<LinearFormula>, B<LinearFormula>),
    Par(B<LinearFormula>, B<LinearFormula>),
    With(B<LinearFormula>, B<LinearFormula>),
    Plus(B<LinearFormula>, B<LinearFormula>),
    Limp(B<LinearFormula>, B<LinearFormula>),
    Liff(B<LinearFormula>, B<LinearFormula>),
    Neg(B<LinearFormula>),
    Bang(B<LinearFormula>),
    WhyNot(B<LinearFormula>),
    Forall(String, String, B<LinearFormula>),
    Exists(String, String, B<LinearFormula>),
}

/// Shorthand constructors, mostly for tests and law catalogs.
pub mod lf {
    use super::{LinearFormula as L, Term};

    pub fn atom(p: &str) -> L {
        L::Atom(p.to_string(), vec![])
    }
    pub fn pred(p: &str, args: &[&str]) -> L {
        L::Atom(p.to_string(), args.iter().map(|a| Term::var(a)).collect())
    }
    pub fn tensor(a: L, b: L) -> L {
        L::Tensor(Box::new(a), Box::new(b))
    }
    pub fn par(a: L, b: L) -> L {
        L::Par(Box::new(a), Box::new(b))
    }
    pub fn with(a: L, b: L) -> L {
        L::With(Box::new(a), Box::new(b))
    }
    pub fn plus(a: L, b: L) -> L {
        L::Plus(Box::new(a), Box::new(b))
    }
    pub fn limp(a: L, b: L) -> L {
        L::Limp(Box::new(a), Box::new(b))
    }
    pub fn liff(a: L, b: L) -> L {
        L::Liff(Box::new(a), Box::new(b))
    }
    pub fn neg(a: L) -> L {
        L::Neg(Box::new(a))
    }
    pub fn bang(a: L) -> L {
        L::Bang(Box::new(a))
    }
    pub fn whynot(a: L) -> L {
        L::WhyNot(Box::new(a))
    }
    pub fn forall(x: &str, s: &str, body: L) -> L {
        L::Forall(x.to_string(), s.to_string(), Box::new(body))
    }
    pub fn exists(x: &str, s: &str, body: L) -> L {
        L::Exists(x.to_string(), s.to_string(), Box::new(body))
    }
}

impl LinearFormula {
    /// Replaces every `P o-o Q` by `(P -o Q) & (Q -o P)`.
    pub fn desugar(&self) -> LinearFormula {
        use LinearFormula::*;
        let b = |f: &LinearFormula| Box::new(f.desugar());
        match self {
            Atom(..) | Top | Bot => self.clone(),
            Tensor(x, y) => Tensor(b(x), b(y)),
            Par(x, y) => Par(b(x), b(y)),
            With(x, y) => With(b(x), b(y)),
            Plus(x, y) => Plus(b(x), b(y)),
            Limp(x, y) => Limp(b(x), b(y)),
            Liff(x, y) => {
                let (x, y) = (x.desugar(), y.desugar());
                With(Box::new(Limp(Box::new(x.clone()), Box::new(y.clone()))), Box::new(Limp(Box::new(y), Box::new(x))))
            }
            Neg(x) => Neg(b(x)),
            Bang(x) => Bang(b(x)),
            WhyNot(x) => WhyNot(b(x)),
            Forall(v, s, x) => Forall(v.clone(), s.clone(), b(x)),
            Exists(v, s, x) => Exists(v.clone(), s.clone(), b(x)),
        }
    }

    pub fn contains_liff(&self) -> bool {
        use LinearFormula::*;
        match self {
            Atom(..) | Top | Bot => false,
            Liff(..) => true,
            Tensor(x, y) | Par(x, y) | With(x, y) | Plus(x, y) | Limp(x, y) => x.contains_liff() || y.contains_liff(),
            Neg(x) | Bang(x) | WhyNot(x) | Forall(_, _, x) | Exists(_, _, x) => x.contains_liff(),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<String>) {
        use LinearFormula::*;
        match self {
            Atom(_, args) => args.iter().for_each(|a| a.free_vars(out)),
            Top | Bot => {}
            Tensor(x, y) | Par(x, y) | With(x, y) | Plus(x, y) | Limp(x, y) | Liff(x, y) => {
                x.collect_free(out);
                y.collect_free(out);
            }
            Neg(x) | Bang(x) | WhyNot(x) => x.collect_free(out),
            Forall(v, _, x) | Exists(v, _, x) => {
                let mut inner = x.free_vars();
                inner.remove(v);
                out.extend(inner);
            }
        }
    }

    /// Capture-avoiding substitution of `t` for the free variable `var`.
    pub fn substitute(&self, var: &str, t: &Term) -> LinearFormula {
        use LinearFormula::*;
        let s = |f: &LinearFormula| Box::new(f.substitute(var, t));
        match self {
            Atom(p, args) => Atom(p.clone(), args.iter().map(|a| a.substitute(var, t)).collect()),
            Top | Bot => self.clone(),
            Tensor(x, y) => Tensor(s(x), s(y)),
            Par(x, y) => Par(s(x), s(y)),
            With(x, y) => With(s(x), s(y)),
            Plus(x, y) => Plus(s(x), s(y)),
            Limp(x, y) => Limp(s(x), s(y)),
            Liff(x, y) => Liff(s(x), s(y)),
            Neg(x) => Neg(s(x)),
            Bang(x) => Bang(s(x)),
            WhyNot(x) => WhyNot(s(x)),
            Forall(v, sort, body) | Exists(v, sort, body) => {
                let rebuild = |v: String, body: LinearFormula| match self {
                    Forall(..) => Forall(v, sort.clone(), Box::new(body)),
                    _ => Exists(v, sort.clone(), Box::new(body)),
                };
                if v == var {
                    return self.clone();
                }
                let body_free = body.free_vars();
                if !body_free.contains(var) {
                    return self.clone();
                }
                let mut term_free = BTreeSet::new();
                t.free_vars(&mut term_free);
                if term_free.contains(v) {
                    let mut fresh = format!("{v}'");
                    while term_free.contains(&fresh) || body_free.contains(&fresh) || fresh == var {
                        fresh.push('\'');
                    }
                    let renamed = body.substitute(v, &Term::Var(fresh.clone()));
                    rebuild(fresh, renamed.substitute(var, t))
                } else {
                    rebuild(v.clone(), body.substitute(var, t))
                }
            }
        }
    }

    /// Number of nodes, used to bound generated formulas.
    pub fn size(&self) -> usize {
        use LinearFormula::*;
        match self {
            Atom(..) | Top | Bot => 1,
            Tensor(x, y) | Par(x, y) | With(x, y) | Plus(x, y) | Limp(x, y) | Liff(x, y) => 1 + x.size() + y.size(),
            Neg(x) | Bang(x) | WhyNot(x) | Forall(_, _, x) | Exists(_, _, x) => 1 + x.size(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IntFormula {
    Atom(String, Vec<Term>),
    True,
    False,
    And(B<IntFormula>, B<IntFormula>),
    Or(B<IntFormula>, B<IntFormula>),
    Imp(B<IntFormula>, B<IntFormula>),
    Not(B<IntFormula>),
    Forall(String, String, B<IntFormula>),
    Exists(String, String, B<IntFormula>),
}

/// Shorthand constructors for intuitionistic formulas.
pub mod ifm {
    use super::{IntFormula as I, Term};

    pub fn atom(p: &str, args: &[&str]) -> I {
        I::Atom(p.to_string(), args.iter().map(|a| Term::var(a)).collect())
    }
    pub fn and(a: I, b: I) -> I {
        I::And(Box::new(a), Box::new(b))
    }
    pub fn or(a: I, b: I) -> I {
        I::Or(Box::new(a), Box::new(b))
    }
    pub fn imp(a: I, b: I) -> I {
        I::Imp(Box::new(a), Box::new(b))
    }
    pub fn not(a: I) -> I {
        I::Not(Box::new(a))
    }
}

impl IntFormula {
    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut out);
        out
    }

    fn collect_free(&self, out: &mut BTreeSet<String>) {
        use IntFormula::*;
        match self {
            Atom(_, args) => args.iter().for_each(|a| a.free_vars(out)),
            True | False => {}
            And(x, y) | Or(x, y) | Imp(x, y) => {
                x.collect_free(out);
                y.collect_free(out);
            }
            Not(x) => x.collect_free(out),
            Forall(v, _, x) | Exists(v, _, x) => {
                let mut inner = x.free_vars();
                inner.remove(v);
                out.extend(inner);
            }
        }
    }

    /// Renames free variables by `f`; bound variables are left alone.
    pub fn rename_free(&self, f: &dyn Fn(&str) -> Option<String>) -> IntFormula {
        self.rename_inner(f, &mut Vec::new())
    }

    fn rename_inner(&self, f: &dyn Fn(&str) -> Option<String>, bound: &mut Vec<String>) -> IntFormula {
        use IntFormula::*;
        fn term(t: &Term, f: &dyn Fn(&str) -> Option<String>, bound: &[String]) -> Term {
            match t {
                Term::Var(v) if !bound.contains(v) => Term::Var(f(v).unwrap_or_else(|| v.clone())),
                Term::Var(_) => t.clone(),
                Term::App(g, args) => Term::App(g.clone(), args.iter().map(|a| term(a, f, bound)).collect()),
            }
        }
        match self {
            Atom(p, args) => Atom(p.clone(), args.iter().map(|a| term(a, f, bound)).collect()),
            True | False => self.clone(),
            And(x, y) => And(Box::new(x.rename_inner(f, bound)), Box::new(y.rename_inner(f, bound))),
            Or(x, y) => Or(Box::new(x.rename_inner(f, bound)), Box::new(y.rename_inner(f, bound))),
            Imp(x, y) => Imp(Box::new(x.rename_inner(f, bound)), Box::new(y.rename_inner(f, bound))),
            Not(x) => Not(Box::new(x.rename_inner(f, bound))),
            Forall(v, s, x) | Exists(v, s, x) => {
                bound.push(v.clone());
                let body = Box::new(x.rename_inner(f, bound));
                bound.pop();
                match self {
                    Forall(..) => Forall(v.clone(), s.clone(), body),
                    _ => Exists(v.clone(), s.clone(), body),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::lf::*;
    use super::*;

    #[test]
    fn desugar_examples() {
        assert_eq!(liff(atom("p"), atom("q")).desugar(), with(limp(atom("p"), atom("q")), limp(atom("q"), atom("p"))));
        assert_eq!(atom("p").desugar(), atom("p"));
        assert_eq!(neg(liff(atom("p"), atom("q"))).desugar(), neg(with(limp(atom("p"), atom("q")), limp(atom("q"), atom("p")))));
    }

    #[test]
    fn substitution_examples() {
        let e = Term::App("e".into(), vec![]);
        assert_eq!(pred("eq", &["x", "y"]).substitute("x", &e), LinearFormula::Atom("eq".into(), vec![e.clone(), Term::var("y")]));
        let f = forall("x", "G", pred("eq", &["x", "y"]));
        assert_eq!(f.substitute("y", &Term::var("x")), forall("x'", "G", pred("eq", &["x'", "x"])));
        let mab = Term::App("m".into(), vec![Term::var("a"), Term::var("b")]);
        assert_eq!(
            tensor(atom("p"), pred("eq", &["x", "x"])).substitute("x", &mab),
            tensor(atom("p"), LinearFormula::Atom("eq".into(), vec![mab.clone(), mab.clone()]))
        );
        // bound occurrences are untouched
        assert_eq!(f.substitute("x", &e), f);
    }
}
