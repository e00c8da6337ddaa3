//! Evaluation of linear formulas over finite structures in any
//! [`AffineModel`], plus law suites, classification and countermodel search.

mod laws;
mod metric;
mod random;
mod search;
mod structure;

use thiserror::Error;

use crate::models::{AffineModel, ModelError};
use crate::syntax::{LinearFormula, Sequent, Term};

pub use laws::{
    catalog, check_law, law, law_suite, replay_witness, Expectation, LawOptions, LawReport, LawRow, LawSchema, LawShape, LawStatus,
    LawWitness, Suite, LAW_REPORT_SCHEMA,
};
pub use metric::{metric_structure, metric_theory, metric_verdict, MetricVerdict};
pub use random::{random_formula, RandomSpec};
pub use search::{implicit_signature, search_countermodel, SearchOptions, SearchOutcome, SearchProblem};
pub use structure::{element_names, load_structure, FuncTable, PredTable, Structure, StructureJson, STRUCTURE_SCHEMA};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SemanticsError {
    #[error("unbound variable `{0}`")]
    UnboundVariable(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("unknown sort `{0}`")]
    UnknownSort(String),
    #[error("`{0}` is not an element of sort {1}")]
    BadElement(String, String),
    #[error("table `{table}` has no entry for ({tuple})")]
    IncompleteTable { table: String, tuple: String },
    #[error("affirmative predicate `{pred}` has non-affirmative value {value} at ({tuple})")]
    NotAffirmative { pred: String, tuple: String, value: String },
    #[error("structure file: {0}")]
    Json(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("{0}")]
    Invalid(String),
}

/// Variable bindings: variable name and element index in its sort.
pub type Env = Vec<(String, usize)>;

pub(crate) fn eval_term<E: Copy + PartialEq>(s: &Structure<E>, t: &Term, env: &Env) -> Result<usize, SemanticsError> {
    match t {
        Term::Var(v) => env
            .iter()
            .rev()
            .find(|(x, _)| x == v)
            .map(|&(_, i)| i)
            .or_else(|| s.func(v).filter(|f| f.arg_sorts.is_empty()).map(|f| f.values[0]))
            .ok_or_else(|| SemanticsError::UnboundVariable(v.clone())),
        Term::App(f, args) => {
            let table = s.func(f).ok_or_else(|| SemanticsError::UnknownSymbol(f.clone()))?;
            if table.arg_sorts.len() != args.len() {
                return Err(SemanticsError::Invalid(format!("`{f}` applied to {} arguments", args.len())));
            }
            let tuple = args.iter().map(|a| eval_term(s, a, env)).collect::<Result<Vec<_>, _>>()?;
            Ok(table.get(&tuple))
        }
    }
}

/// Evaluates `f` under `env`. Quantifiers fold over the sort's domain;
/// an empty domain gives the unit. `o-o` is read as its desugaring.
pub fn eval<M: AffineModel>(m: &M, s: &Structure<M::Elem>, f: &LinearFormula, env: &mut Env) -> Result<M::Elem, SemanticsError> {
    use LinearFormula::*;
    Ok(match f {
        Atom(p, args) => {
            let table = s.pred(p).ok_or_else(|| SemanticsError::UnknownSymbol(p.clone()))?;
            if table.arg_sorts.len() != args.len() {
                return Err(SemanticsError::Invalid(format!("`{p}` applied to {} arguments", args.len())));
            }
            let tuple = args.iter().map(|a| eval_term(s, a, env)).collect::<Result<Vec<_>, _>>()?;
            table.get(&tuple)
        }
        Top => m.top(),
        Bot => m.bot(),
        Tensor(a, b) => m.tensor(eval(m, s, a, env)?, eval(m, s, b, env)?),
        Par(a, b) => m.par(eval(m, s, a, env)?, eval(m, s, b, env)?),
        With(a, b) => m.with(eval(m, s, a, env)?, eval(m, s, b, env)?),
        Plus(a, b) => m.plus(eval(m, s, a, env)?, eval(m, s, b, env)?),
        Limp(a, b) => m.limp(eval(m, s, a, env)?, eval(m, s, b, env)?),
        Liff(a, b) => {
            let (x, y) = (eval(m, s, a, env)?, eval(m, s, b, env)?);
            m.with(m.limp(x, y), m.limp(y, x))
        }
        Neg(a) => m.neg(eval(m, s, a, env)?),
        Bang(a) => m.bang(eval(m, s, a, env)?),
        WhyNot(a) => m.whynot(eval(m, s, a, env)?),
        Forall(v, sort, body) | Exists(v, sort, body) => {
            let n = s.domain(sort).ok_or_else(|| SemanticsError::UnknownSort(sort.clone()))?.len();
            let mut vals = Vec::with_capacity(n);
            for i in 0..n {
                env.push((v.clone(), i));
                let r = eval(m, s, body, env);
                env.pop();
                vals.push(r?);
            }
            if matches!(f, Forall(..)) {
                m.forall(&vals)
            } else {
                m.exists(&vals)
            }
        }
    })
}

/// A valuation under which a sequent fails, with both sides formatted.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SequentWitness {
    pub valuation: Vec<(String, String)>,
    pub hypotheses: String,
    pub conclusion: String,
}

/// Tensor of the hypotheses (top when there are none).
pub fn eval_hypotheses<M: AffineModel>(
    m: &M,
    s: &Structure<M::Elem>,
    hyps: &[LinearFormula],
    env: &mut Env,
) -> Result<M::Elem, SemanticsError> {
    let mut acc = m.top();
    for h in hyps {
        acc = m.tensor(acc, eval(m, s, h, env)?);
    }
    Ok(acc)
}

/// Checks `hyps |- concl` at every valuation of the context; returns the
/// first failing valuation in odometer order (last variable fastest).
pub fn holds_sequent<M: AffineModel>(m: &M, seq: &Sequent, s: &Structure<M::Elem>) -> Result<Option<SequentWitness>, SemanticsError> {
    let sizes = seq
        .context
        .iter()
        .map(|(_, sort)| s.domain(sort).map(|d| d.len()).ok_or_else(|| SemanticsError::UnknownSort(sort.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    if sizes.contains(&0) {
        return Ok(None);
    }
    let mut idx = vec![0usize; sizes.len()];
    loop {
        let mut env: Env = seq.context.iter().zip(&idx).map(|((v, _), &i)| (v.clone(), i)).collect();
        let lhs = eval_hypotheses(m, s, &seq.hypotheses, &mut env)?;
        let rhs = eval(m, s, &seq.conclusion, &mut env)?;
        if !m.leq(lhs, rhs) {
            let valuation = seq.context.iter().zip(&idx).map(|((v, sort), &i)| (v.clone(), s.element_name(sort, i))).collect();
            return Ok(Some(SequentWitness { valuation, hypotheses: m.format_elem(lhs), conclusion: m.format_elem(rhs) }));
        }
        if !advance(&mut idx, &sizes) {
            return Ok(None);
        }
    }
}

/// Odometer step; false once every position has wrapped.
pub(crate) fn advance(idx: &mut [usize], sizes: &[usize]) -> bool {
    for k in (0..idx.len()).rev() {
        idx[k] += 1;
        if idx[k] < sizes[k] {
            return true;
        }
        idx[k] = 0;
    }
    false
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Classification {
    pub affirmative: bool,
    pub refutative: bool,
    pub decidable: bool,
}

/// Affirmative: fixed by `!`. Refutative: fixed by `?`. Decidable: `P + ~P` is top.
pub fn classify<M: AffineModel>(m: &M, p: M::Elem) -> Classification {
    Classification {
        affirmative: m.equiv(p, m.bang(p)),
        refutative: m.equiv(p, m.whynot(p)),
        decidable: m.leq(m.top(), m.plus(p, m.neg(p))),
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::chu::{ChuModel, ChuVariant};
    use crate::lattice::heyting_chain;
    use crate::models::{resolve_model, AnyModel, LukModel, Rational};
    use crate::syntax::{parse_linear, parse_theory};

    fn chain2() -> ChuModel {
        ChuModel::new(heyting_chain(2).unwrap(), ChuVariant::Strict0).unwrap()
    }

    fn sig(src: &str) -> crate::syntax::Theory {
        parse_theory(src).unwrap()
    }

    #[test]
    fn eval_examples() {
        let m = chain2();
        let th = sig("theory S\nsort D\npred Q(D)\npred p\n");
        let sizes = BTreeMap::from([("D".to_string(), 2)]);
        let mut s = Structure::new("chu0:chain2", &th, &sizes, m.bot(), m.top());
        let t = m.parse("T").unwrap();
        let n = m.parse("N").unwrap();
        s.pred_mut("Q").unwrap().set(&[0], t);
        s.pred_mut("Q").unwrap().set(&[1], n);
        let f = parse_linear("\\/x:D. Q(x)").unwrap();
        assert_eq!(eval(&m, &s, &f, &mut vec![]).unwrap(), t);
        let em = parse_linear("p @ ~p").unwrap();
        for v in m.enumerate() {
            s.pred_mut("p").unwrap().set(&[], *v);
            assert_eq!(eval(&m, &s, &em, &mut vec![]).unwrap(), m.top());
        }
        assert_eq!(eval(&m, &s, &LinearFormula::Top, &mut vec![]).unwrap(), m.top());
        let empty = sig("theory S\nsort D\npred Q(D)\n");
        let s0 = Structure::new("chu0:chain2", &empty, &BTreeMap::from([("D".to_string(), 0)]), m.bot(), m.top());
        assert_eq!(eval(&m, &s0, &parse_linear("/\\x:D. Q(x)").unwrap(), &mut vec![]).unwrap(), m.top());
        assert_eq!(eval(&m, &s0, &parse_linear("\\/x:D. Q(x)").unwrap(), &mut vec![]).unwrap(), m.bot());
        assert!(matches!(eval(&m, &s0, &parse_linear("Q(y)").unwrap(), &mut vec![]), Err(SemanticsError::UnboundVariable(_))));
    }

    const EQ: &str = "theory Eq\nsort A\npred E(A) affirmative\npred eq(A,A) dual neq\n\
        axiom refl: [x:A] x in! A |- eq(x,x)\n\
        axiom trans: [x:A, y:A, z:A] eq(x,y) * eq(y,z) |- eq(x,z)\n\
        axiom strans: [x:A, y:A, z:A] eq(x,y) & eq(y,z) |- eq(x,z)\n";

    fn metric(d: [[(i64, i64); 3]; 3]) -> Structure<Rational> {
        let th = sig(EQ);
        let mut s = Structure::new("luk:grid5", &th, &BTreeMap::from([("A".to_string(), 3)]), Rational::zero(), Rational::one());
        for (i, row) in d.iter().enumerate() {
            for (j, &(n, q)) in row.iter().enumerate() {
                s.pred_mut("eq").unwrap().set(&[i, j], Rational::one() - Rational::new(n, q));
            }
        }
        s
    }

    #[test]
    fn metric_sequents() {
        let th = sig(EQ);
        let m = LukModel::new(5);
        let z = (0, 1);
        let h = (1, 2);
        let tq = (3, 4);
        let s = metric([[z, h, tq], [h, z, h], [tq, h, z]]);
        let ax = |n: &str| th.axiom(n).unwrap().sequent.clone();
        assert!(holds_sequent(&m, &ax("refl"), &s).unwrap().is_none());
        assert!(holds_sequent(&m, &ax("trans"), &s).unwrap().is_none());
        let w = holds_sequent(&m, &ax("strans"), &s).unwrap().expect("non-ultrametric");
        assert_eq!(w.valuation, vec![("x".into(), "a0".into()), ("y".into(), "a1".into()), ("z".into(), "a2".into())]);
        assert_eq!((w.hypotheses.as_str(), w.conclusion.as_str()), ("1/2", "1/4"));
        let one = sig("theory O\nsort G\npred eq(G,G)\naxiom refl: [x:G] |- eq(x,x)\n");
        let mut s1 = Structure::new("luk:grid5", &one, &BTreeMap::from([("G".to_string(), 1)]), Rational::zero(), Rational::one());
        s1.pred_mut("eq").unwrap().set(&[0, 0], Rational::one());
        assert!(holds_sequent(&m, &one.axioms[0].sequent, &s1).unwrap().is_none());
    }

    #[test]
    fn classification() {
        let m = chain2();
        let c = |s: &str| classify(&m, m.parse(s).unwrap());
        assert_eq!(c("N"), Classification { affirmative: false, refutative: false, decidable: false });
        assert_eq!(c("T"), Classification { affirmative: true, refutative: true, decidable: true });
        let AnyModel::Interior(i) = resolve_model("int:3pt").unwrap() else { unreachable!() };
        for u in i.elements() {
            if i.space().is_open(u) {
                assert!(classify(&i, u).affirmative);
            }
        }
    }
}
