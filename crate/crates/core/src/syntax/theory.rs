use std::collections::BTreeSet;

use super::parser::{Directive, Parser};
use super::{LinearFormula, SyntaxError, Term};

type Result<T> = std::result::Result<T, SyntaxError>;

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct PredSym {
    pub name: String,
    pub arg_sorts: Vec<String>,
    /// Display name of the negated predicate, e.g. `neq` for `eq`.
    pub dual: Option<String>,
    pub affirmative: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct FuncSym {
    pub name: String,
    pub arg_sorts: Vec<String>,
    pub result: String,
}

/// Hypotheses are implicitly joined by tensor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sequent {
    pub context: Vec<(String, String)>,
    pub hypotheses: Vec<LinearFormula>,
    pub conclusion: LinearFormula,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axiom {
    pub name: String,
    pub sequent: Sequent,
    pub line: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Theory {
    pub name: String,
    pub sorts: Vec<String>,
    pub preds: Vec<PredSym>,
    pub funcs: Vec<FuncSym>,
    pub consts: Vec<(String, String)>,
    pub axioms: Vec<Axiom>,
}

impl Theory {
    pub fn pred(&self, name: &str) -> Option<&PredSym> {
        self.preds.iter().find(|p| p.name == name)
    }

    /// The predicate whose dual display name is `name`.
    pub fn pred_by_dual(&self, name: &str) -> Option<&PredSym> {
        self.preds.iter().find(|p| p.dual.as_deref() == Some(name))
    }

    pub fn func(&self, name: &str) -> Option<&FuncSym> {
        self.funcs.iter().find(|f| f.name == name)
    }

    pub fn const_sort(&self, name: &str) -> Option<&str> {
        self.consts.iter().find(|(c, _)| c == name).map(|(_, s)| s.as_str())
    }

    pub fn has_sort(&self, s: &str) -> bool {
        self.sorts.iter().any(|x| x == s)
    }

    pub fn axiom(&self, name: &str) -> Option<&Axiom> {
        self.axioms.iter().find(|a| a.name == name)
    }

    fn is_existence_shape(p: &PredSym, sort: &str) -> bool {
        p.affirmative && p.arg_sorts.len() == 1 && p.arg_sorts[0] == sort && (p.name == "E" || p.name == format!("E_{sort}"))
    }

    /// The existence predicate of `sort`: an affirmative unary predicate
    /// named `E` or `E_<sort>`.
    pub fn existence_pred(&self, sort: &str) -> Option<&PredSym> {
        self.preds.iter().find(|p| Self::is_existence_shape(p, sort))
    }

    pub fn is_existence(&self, pred: &str) -> bool {
        self.pred(pred).is_some_and(|p| p.arg_sorts.len() == 1 && Self::is_existence_shape(p, &p.arg_sorts[0]))
    }

    pub(crate) fn existence_name(&self, sort: &str) -> String {
        self.existence_pred(sort).map(|p| p.name.clone()).unwrap_or_else(|| format!("E_{sort}"))
    }

    fn name_taken(&self, name: &str) -> bool {
        self.pred(name).is_some() || self.pred_by_dual(name).is_some() || self.func(name).is_some() || self.const_sort(name).is_some()
    }

    fn check_sort(&self, s: &str) -> Result<()> {
        if self.has_sort(s) {
            Ok(())
        } else {
            Err(SyntaxError::UndeclaredSort(s.to_string()))
        }
    }

    /// Resolves constants and dual names, then sort-checks.
    ///
    /// `scope` holds the variables in force; with `infer_free`, unknown
    /// variables are added to it at the sort of their first use.
    pub fn resolve_formula(&self, f: &LinearFormula, scope: &mut Vec<(String, String)>, infer_free: bool) -> Result<LinearFormula> {
        let mut r = Resolver { th: self, scope: std::mem::take(scope), infer_free };
        let out = r.formula(f);
        *scope = r.scope;
        out
    }

    /// The sort of `t` under `scope`.
    pub fn term_sort(&self, t: &Term, scope: &[(String, String)]) -> Result<String> {
        let mut r = Resolver { th: self, scope: scope.to_vec(), infer_free: false };
        r.term(t, None).map(|(_, s)| s)
    }

    /// Sort-checked capture-avoiding substitution.
    pub fn substitute(&self, f: &LinearFormula, var: &str, var_sort: &str, t: &Term, scope: &[(String, String)]) -> Result<LinearFormula> {
        let s = self.term_sort(t, scope)?;
        if s != var_sort {
            return Err(SyntaxError::SortMismatch { context: format!("substitution for `{var}`"), expected: var_sort.into(), found: s });
        }
        Ok(f.substitute(var, t))
    }

    fn add(&mut self, d: Directive, line: usize) -> Result<()> {
        match d {
            Directive::Theory(n) => self.name = n,
            Directive::Sort(ss) => {
                for s in ss {
                    if self.has_sort(&s) {
                        return Err(SyntaxError::Duplicate(s));
                    }
                    self.sorts.push(s);
                }
            }
            Directive::Pred { name, args, dual, affirmative } => {
                if self.name_taken(&name) {
                    return Err(SyntaxError::Duplicate(name));
                }
                for s in &args {
                    self.check_sort(s)?;
                }
                if let Some(d) = &dual {
                    if *d == name {
                        return Err(SyntaxError::Invalid(format!("`{name}` cannot be its own dual")));
                    }
                    if affirmative {
                        return Err(SyntaxError::Invalid(format!("affirmative predicate `{name}` cannot declare a dual")));
                    }
                    if self.name_taken(d) {
                        return Err(SyntaxError::Duplicate(d.clone()));
                    }
                }
                let p = PredSym { name, arg_sorts: args, dual, affirmative };
                if p.arg_sorts.len() == 1 && Self::is_existence_shape(&p, &p.arg_sorts[0]) && self.existence_pred(&p.arg_sorts[0]).is_some()
                {
                    return Err(SyntaxError::Invalid(format!("sort `{}` already has an existence predicate", p.arg_sorts[0])));
                }
                self.preds.push(p);
            }
            Directive::Fun { name, args, result } => {
                if self.name_taken(&name) {
                    return Err(SyntaxError::Duplicate(name));
                }
                for s in args.iter().chain([&result]) {
                    self.check_sort(s)?;
                }
                self.funcs.push(FuncSym { name, arg_sorts: args, result });
            }
            Directive::Const { name, sort } => {
                if self.name_taken(&name) {
                    return Err(SyntaxError::Duplicate(name));
                }
                self.check_sort(&sort)?;
                self.consts.push((name, sort));
            }
            Directive::Axiom { name, seq: (context, hyps, concl) } => {
                if self.axiom(&name).is_some() {
                    return Err(SyntaxError::Duplicate(name));
                }
                let mut seen = BTreeSet::new();
                for (v, s) in &context {
                    self.check_sort(s)?;
                    if !seen.insert(v) {
                        return Err(SyntaxError::Duplicate(v.clone()));
                    }
                }
                let mut scope = context.clone();
                let hypotheses = hyps.iter().map(|h| self.resolve_formula(h, &mut scope, false)).collect::<Result<_>>()?;
                let conclusion = self.resolve_formula(&concl, &mut scope, false)?;
                self.axioms.push(Axiom { name, sequent: Sequent { context, hypotheses, conclusion }, line });
            }
        }
        Ok(())
    }
}

struct Resolver<'a> {
    th: &'a Theory,
    scope: Vec<(String, String)>,
    infer_free: bool,
}

impl Resolver<'_> {
    fn formula(&mut self, f: &LinearFormula) -> Result<LinearFormula> {
        use LinearFormula::*;
        let bin = |a: &LinearFormula, b: &LinearFormula, r: &mut Self| -> Result<(Box<LinearFormula>, Box<LinearFormula>)> {
            Ok((Box::new(r.formula(a)?), Box::new(r.formula(b)?)))
        };
        Ok(match f {
            Atom(name, args) => {
                let (p, negated) = match (self.th.pred(name), self.th.pred_by_dual(name)) {
                    (Some(p), _) => (p, false),
                    (None, Some(p)) => (p, true),
                    _ => return Err(SyntaxError::UnknownSymbol(name.clone())),
                };
                if p.arg_sorts.len() != args.len() {
                    return Err(SyntaxError::Arity { name: name.clone(), expected: p.arg_sorts.len(), found: args.len() });
                }
                let args = args.iter().zip(&p.arg_sorts).map(|(t, s)| self.term(t, Some(s)).map(|(t, _)| t)).collect::<Result<Vec<_>>>()?;
                let a = Atom(p.name.clone(), args);
                if negated {
                    Neg(Box::new(a))
                } else {
                    a
                }
            }
            Top | Bot => f.clone(),
            Tensor(a, b) => {
                let (a, b) = bin(a, b, self)?;
                Tensor(a, b)
            }
            Par(a, b) => {
                let (a, b) = bin(a, b, self)?;
                Par(a, b)
            }
            With(a, b) => {
                let (a, b) = bin(a, b, self)?;
                With(a, b)
            }
            Plus(a, b) => {
                let (a, b) = bin(a, b, self)?;
                Plus(a, b)
            }
            Limp(a, b) => {
                let (a, b) = bin(a, b, self)?;
                Limp(a, b)
            }
            Liff(a, b) => {
                let (a, b) = bin(a, b, self)?;
                Liff(a, b)
            }
            Neg(a) => Neg(Box::new(self.formula(a)?)),
            Bang(a) => Bang(Box::new(self.formula(a)?)),
            WhyNot(a) => WhyNot(Box::new(self.formula(a)?)),
            Forall(v, s, body) | Exists(v, s, body) => {
                self.th.check_sort(s)?;
                self.scope.push((v.clone(), s.clone()));
                let body = self.formula(body);
                let idx = self.scope.iter().rposition(|(x, _)| x == v).expect("pushed above");
                self.scope.remove(idx);
                let body = Box::new(body?);
                match f {
                    Forall(..) => Forall(v.clone(), s.clone(), body),
                    _ => Exists(v.clone(), s.clone(), body),
                }
            }
        })
    }

    fn term(&mut self, t: &Term, expected: Option<&str>) -> Result<(Term, String)> {
        let (out, sort) = match t {
            Term::Var(v) => {
                if let Some((_, s)) = self.scope.iter().rev().find(|(x, _)| x == v) {
                    (t.clone(), s.clone())
                } else if let Some(s) = self.th.const_sort(v) {
                    (Term::App(v.clone(), vec![]), s.to_string())
                } else if let (true, Some(s)) = (self.infer_free, expected) {
                    // Insert below any bound variables so quantifier exits do not drop it.
                    self.scope.insert(0, (v.clone(), s.to_string()));
                    (t.clone(), s.to_string())
                } else {
                    return Err(SyntaxError::UnboundVariable(v.clone()));
                }
            }
            Term::App(f, args) => {
                if args.is_empty() {
                    if let Some(s) = self.th.const_sort(f) {
                        return self.check(t.clone(), s.to_string(), expected);
                    }
                }
                let fs = self.th.func(f).ok_or_else(|| SyntaxError::UnknownSymbol(f.clone()))?;
                if fs.arg_sorts.len() != args.len() {
                    return Err(SyntaxError::Arity { name: f.clone(), expected: fs.arg_sorts.len(), found: args.len() });
                }
                let args = args
                    .iter()
                    .zip(fs.arg_sorts.clone())
                    .map(|(a, s)| self.term(a, Some(&s)).map(|(a, _)| a))
                    .collect::<Result<Vec<_>>>()?;
                (Term::App(f.clone(), args), fs.result.clone())
            }
        };
        self.check(out, sort, expected)
    }

    fn check(&self, t: Term, sort: String, expected: Option<&str>) -> Result<(Term, String)> {
        match expected {
            Some(e) if e != sort => Err(SyntaxError::SortMismatch {
                context: format!("term `{}`", super::print_term(&t)),
                expected: e.to_string(),
                found: sort,
            }),
            _ => Ok((t, sort)),
        }
    }
}

/// Splits the file into directives: a line starting with whitespace
/// continues the previous one.
fn logical_lines(text: &str) -> Vec<(usize, String)> {
    let mut out: Vec<(usize, String)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = raw.split('#').next().unwrap_or("");
        if content.trim().is_empty() {
            continue;
        }
        let continues = raw.starts_with(char::is_whitespace) && !out.is_empty();
        if continues {
            let last = out.last_mut().expect("checked non-empty");
            // Keep line structure so error positions stay in file coordinates.
            let lines_so_far = last.1.matches('\n').count();
            for _ in lines_so_far..(i - last.0) {
                last.1.push('\n');
            }
            last.1.push_str(content);
        } else {
            out.push((i, content.to_string()));
        }
    }
    out
}

/// Parses a `.llt` theory file. Every symbol must be declared before use.
pub fn parse_theory(text: &str) -> Result<Theory> {
    let mut th = Theory::default();
    for (line0, chunk) in logical_lines(text) {
        let line = line0 + 1;
        let directive = {
            let exist = |s: &str| th.existence_name(s);
            let mut p = Parser::new(&chunk, line, 1, &exist)?;
            p.directive()?
        };
        th.add(directive, line).map_err(|e| e.at_line(line))?;
    }
    if th.name.is_empty() {
        return Err(SyntaxError::Invalid("missing `theory <Name>` line".into()));
    }
    Ok(th)
}

/// Parses `[x:S, ...] hyp * ... |- concl`. With a theory the sequent is
/// resolved and sort-checked against it.
pub fn parse_linear_sequent(text: &str, theory: Option<&Theory>) -> Result<Sequent> {
    match theory {
        None => {
            let mut p = Parser::new(text, 1, 1, &super::parser::default_exist)?;
            let (context, hypotheses, conclusion) = p.linear_sequent()?;
            Ok(Sequent { context, hypotheses, conclusion })
        }
        Some(th) => {
            let exist = |s: &str| th.existence_name(s);
            let mut p = Parser::new(text, 1, 1, &exist)?;
            let (context, hyps, concl) = p.linear_sequent()?;
            for (_, s) in &context {
                th.check_sort(s)?;
            }
            let mut scope = context.clone();
            let hypotheses = hyps.iter().map(|h| th.resolve_formula(h, &mut scope, false)).collect::<Result<_>>()?;
            let conclusion = th.resolve_formula(&concl, &mut scope, false)?;
            Ok(Sequent { context, hypotheses, conclusion })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::lf::*;
    use super::super::parse_linear_with;
    use super::*;

    const EQUALITY: &str = "\
theory Equality
sort A
pred E(A) affirmative
pred eq(A,A) dual neq
axiom refl: [x:A] x in! A |- eq(x,x)
axiom sym: [x:A, y:A] eq(x,y) |- eq(y,x)
axiom trans: [x:A, y:A, z:A] eq(x,y) * eq(y,z) |- eq(x,z)
";

    #[test]
    fn equality_theory() {
        let th = parse_theory(EQUALITY).unwrap();
        assert_eq!(th.axioms.len(), 3);
        let trans = &th.axiom("trans").unwrap().sequent;
        assert_eq!(trans.hypotheses, vec![pred("eq", &["x", "y"]), pred("eq", &["y", "z"])]);
        assert_eq!(trans.conclusion, pred("eq", &["x", "z"]));
        assert_eq!(th.axiom("refl").unwrap().sequent.hypotheses, vec![pred("E", &["x"])]);
        assert!(th.is_existence("E"));
    }

    #[test]
    fn group_fixture() {
        let src = "\
theory Group
sort G
pred E(G) affirmative
pred eq(G,G) dual neq
fun m(G,G): G
fun i(G): G
const e: G
axiom unit_r: [x:G] x in! G |- eq(m(x,e),x)
axiom unit_l: [x:G] x in! G |- eq(m(e,x),x)
axiom inv: [x:G] x in! G |- eq(m(x,i(x)),e)
axiom assoc: [x:G, y:G, z:G] x in! G * y in! G * z in! G
    |- eq(m(m(x,y),z),m(x,m(y,z)))
axiom closed: [x:G, y:G] x in! G * y in! G |- m(x,y) in! G
";
        let th = parse_theory(src).unwrap();
        assert_eq!(th.sorts, vec!["G"]);
        assert_eq!(th.funcs.len(), 2);
        assert_eq!(th.consts, vec![("e".to_string(), "G".to_string())]);
        assert_eq!(th.axioms.len(), 5);
        assert_eq!(th.axiom("assoc").unwrap().sequent.hypotheses.len(), 3);
        let unit = &th.axiom("unit_r").unwrap().sequent.conclusion;
        let e = Term::App("e".into(), vec![]);
        let mxe = Term::App("m".into(), vec![Term::var("x"), e]);
        assert_eq!(*unit, LinearFormula::Atom("eq".into(), vec![mxe, Term::var("x")]));
    }

    #[test]
    fn empty_and_errors() {
        assert!(parse_theory("theory Empty\n").unwrap().axioms.is_empty());
        let err = |s: &str| parse_theory(s).unwrap_err();
        assert!(matches!(err("theory T\nsort A\nsort A"), SyntaxError::AtLine { line: 3, .. }));
        assert!(matches!(err("theory T\npred p(B)"), SyntaxError::AtLine { .. }));
        let e = err("theory T\nsort A\npred p(A)\naxiom a: [x:A] |- p(y)");
        assert_eq!(e.to_string(), "line 4: unbound variable `y`");
        assert!(matches!(err("theory T\nsort A\naxiom a: [x:A] |- p(x) * q"), SyntaxError::AtLine { .. }));
        assert!(matches!(
            err("theory T\nsort A\npred p(A)\naxiom a: [x:A] |- p(x) * p(x) + p(x)"),
            SyntaxError::Parse { line: 4, col: 31, .. }
        ));
        assert!(err("theory T\nsort A\npred E(A) affirmative dual F").to_string().contains("cannot declare a dual"));
    }

    #[test]
    fn dual_names_and_with_hypotheses() {
        let th = parse_theory(&format!("{EQUALITY}axiom strong: [x:A, y:A] eq(x,y) & x in! A |- eq(y,x)\n")).unwrap();
        let s = &th.axiom("strong").unwrap().sequent;
        assert_eq!(s.hypotheses, vec![with(pred("eq", &["x", "y"]), pred("E", &["x"]))]);
        let f = parse_linear_with("neq(a,b)", Some(&th)).unwrap();
        assert_eq!(f, neg(pred("eq", &["a", "b"])));
        assert!(matches!(parse_linear_with("eq(a)", Some(&th)), Err(SyntaxError::Arity { .. })));
        assert!(matches!(parse_linear_with("zz(a)", Some(&th)), Err(SyntaxError::UnknownSymbol(_))));
    }

    #[test]
    fn checked_substitution() {
        let src = "theory T\nsort A\nsort B\npred p(A)\nconst b: B\nconst a: A\n";
        let th = parse_theory(src).unwrap();
        let f = pred("p", &["x"]);
        let scope = vec![("x".to_string(), "A".to_string())];
        let b = Term::App("b".into(), vec![]);
        assert!(matches!(th.substitute(&f, "x", "A", &b, &scope), Err(SyntaxError::SortMismatch { .. })));
        let a = Term::App("a".into(), vec![]);
        assert_eq!(th.substitute(&f, "x", "A", &a, &scope).unwrap(), LinearFormula::Atom("p".into(), vec![a]));
    }
}
