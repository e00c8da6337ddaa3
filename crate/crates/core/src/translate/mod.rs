//! Linear formulas as pairs of intuitionistic formulas (proofs, refutations),
//! linear axioms as lists of intuitionistic sequents, and the embedding of
//! intuitionistic logic back into linear logic through `!`.

mod iseq;
mod normalize;
mod verify;

use serde::Serialize;
use thiserror::Error;

use crate::syntax::{print_int, IntFormula as I, LinearFormula as L, Sequent, SyntaxError, Term, Theory};

pub use iseq::{
    canonical_key, check_against, diff_sequents, entry_names, parse_iseq, render_iseq, IseqDiff, IseqEntry, SequentJson, TranslationJson,
    ISEQ_SCHEMA,
};
pub use normalize::{normalize_formula, normalize_int, IntSequent};
pub use verify::{eval_int, int_structure, random_signature, verify_exhaustive, verify_random, verify_translation, Mismatch, VerifyReport};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TranslateError {
    #[error("`o-o` must be desugared before splitting")]
    Undesugared,
    #[error("predicate `{0}` is neither affirmative nor given a dual name")]
    NoDual(String),
    #[error("unknown predicate `{0}`")]
    UnknownPredicate(String),
    #[error("{context}: {source}")]
    InAxiom { context: String, source: Box<TranslateError> },
    #[error(transparent)]
    Syntax(#[from] SyntaxError),
    #[error("{0}")]
    Semantics(String),
}

/// Proof and refutation parts of a linear formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChuSplit {
    pub pf: I,
    pub rf: I,
}

fn b(x: I) -> Box<I> {
    Box::new(x)
}
fn and(x: I, y: I) -> I {
    I::And(b(x), b(y))
}
fn or(x: I, y: I) -> I {
    I::Or(b(x), b(y))
}
fn imp(x: I, y: I) -> I {
    I::Imp(b(x), b(y))
}
fn not(x: I) -> I {
    I::Not(b(x))
}

/// How an atom splits.
enum AtomSplit {
    Dual(String),
    Affirmative,
}

fn atom_split(th: &Theory, p: &str) -> Result<AtomSplit, TranslateError> {
    let sym = th.pred(p).ok_or_else(|| TranslateError::UnknownPredicate(p.to_string()))?;
    match (&sym.dual, sym.affirmative) {
        (Some(d), _) => Ok(AtomSplit::Dual(d.clone())),
        (None, true) => Ok(AtomSplit::Affirmative),
        (None, false) => Err(TranslateError::NoDual(p.to_string())),
    }
}

/// Splits a desugared formula clause by clause. A predicate with a dual
/// splits as `(p, pbar)`; an affirmative one as `(p, ~p)`.
pub fn chu_split(f: &L, th: &Theory) -> Result<ChuSplit, TranslateError> {
    let s = |x: &L| chu_split(x, th);
    Ok(match f {
        L::Atom(p, args) => {
            let pf = I::Atom(p.clone(), args.clone());
            let rf = match atom_split(th, p)? {
                AtomSplit::Dual(d) => I::Atom(d, args.clone()),
                AtomSplit::Affirmative => not(pf.clone()),
            };
            ChuSplit { pf, rf }
        }
        L::Top => ChuSplit { pf: I::True, rf: I::False },
        L::Bot => ChuSplit { pf: I::False, rf: I::True },
        L::Tensor(x, y) => {
            let (p, q) = (s(x)?, s(y)?);
            ChuSplit { pf: and(p.pf.clone(), q.pf.clone()), rf: and(imp(p.pf, q.rf), imp(q.pf, p.rf)) }
        }
        L::Par(x, y) => {
            let (p, q) = (s(x)?, s(y)?);
            ChuSplit { pf: and(imp(p.rf.clone(), q.pf.clone()), imp(q.rf.clone(), p.pf)), rf: and(p.rf, q.rf) }
        }
        L::With(x, y) => {
            let (p, q) = (s(x)?, s(y)?);
            ChuSplit { pf: and(p.pf, q.pf), rf: or(p.rf, q.rf) }
        }
        L::Plus(x, y) => {
            let (p, q) = (s(x)?, s(y)?);
            ChuSplit { pf: or(p.pf, q.pf), rf: and(p.rf, q.rf) }
        }
        L::Limp(x, y) => {
            let (p, q) = (s(x)?, s(y)?);
            ChuSplit { pf: and(imp(p.pf.clone(), q.pf), imp(q.rf.clone(), p.rf)), rf: and(p.pf, q.rf) }
        }
        L::Liff(..) => return Err(TranslateError::Undesugared),
        L::Neg(x) => {
            let p = s(x)?;
            ChuSplit { pf: p.rf, rf: p.pf }
        }
        L::Bang(x) => {
            let p = s(x)?;
            ChuSplit { rf: not(p.pf.clone()), pf: p.pf }
        }
        L::WhyNot(x) => {
            let p = s(x)?;
            ChuSplit { pf: not(p.rf.clone()), rf: p.rf }
        }
        L::Forall(v, sort, x) => {
            let p = s(x)?;
            ChuSplit { pf: I::Forall(v.clone(), sort.clone(), b(p.pf)), rf: I::Exists(v.clone(), sort.clone(), b(p.rf)) }
        }
        L::Exists(v, sort, x) => {
            let p = s(x)?;
            ChuSplit { pf: I::Exists(v.clone(), sort.clone(), b(p.pf)), rf: I::Forall(v.clone(), sort.clone(), b(p.rf)) }
        }
    })
}

/// Where a translated sequent came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ClauseKind {
    /// Hypothesis proofs give a conclusion proof.
    Proof,
    /// A conclusion refutation and the other hypothesis proofs refute hypothesis `index` (1-based).
    Contrapositive { index: usize },
    /// The same for an `&`-combined hypothesis: one disjunctive refutation.
    StrongRefutation { index: usize },
    /// A predicate and its dual never hold together.
    Disjointness,
}

impl ClauseKind {
    pub fn label(&self) -> String {
        match self {
            ClauseKind::Proof => "proof".into(),
            ClauseKind::Contrapositive { index } => format!("contra{index}"),
            ClauseKind::StrongRefutation { index } => format!("strong{index}"),
            ClauseKind::Disjointness => "disjoint".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TranslatedSequent {
    /// Axiom or predicate name.
    pub source: String,
    pub clause: ClauseKind,
    pub sequent: IntSequent,
}

impl TranslatedSequent {
    pub fn render(&self, name: &str) -> String {
        let hyps: Vec<String> = self.sequent.hypotheses.iter().map(print_int).collect();
        let sep = if hyps.is_empty() { "" } else { " " };
        format!("{name}: {}{sep}|- {}", hyps.join(", "), print_int(&self.sequent.conclusion))
    }
}

/// Existence hypotheses about context variables are implicit in the
/// intuitionistic context, so they are dropped.
fn drop_existence(seq: &Sequent, th: &Theory) -> Vec<L> {
    seq.hypotheses
        .iter()
        .filter(|h| {
            !matches!(h, L::Atom(p, args)
                if th.is_existence(p)
                    && matches!(args.as_slice(), [Term::Var(v)] if seq.context.iter().any(|(x, _)| x == v)))
        })
        .cloned()
        .collect()
}

/// Expands one linear sequent into intuitionistic sequents: the proof
/// sequent, then for each hypothesis its contrapositive (a single
/// disjunctive clause when the hypothesis is an `&`).
pub fn sequent_split(seq: &Sequent, th: &Theory) -> Result<Vec<(ClauseKind, IntSequent)>, TranslateError> {
    let hyps: Vec<L> = drop_existence(seq, th).iter().map(L::desugar).collect();
    let concl = chu_split(&seq.conclusion.desugar(), th)?;
    let splits = hyps.iter().map(|h| chu_split(h, th)).collect::<Result<Vec<_>, _>>()?;
    let mut out = Vec::new();
    let proof = IntSequent {
        context: seq.context.clone(),
        hypotheses: splits.iter().map(|s| s.pf.clone()).collect(),
        conclusion: concl.pf.clone(),
    };
    out.extend(normalize_int(vec![proof]).into_iter().map(|s| (ClauseKind::Proof, s)));
    for (i, h) in hyps.iter().enumerate() {
        let mut hypotheses = vec![concl.rf.clone()];
        hypotheses.extend(splits.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, s)| s.pf.clone()));
        let raw = IntSequent { context: seq.context.clone(), hypotheses, conclusion: splits[i].rf.clone() };
        let kind = if matches!(h, L::With(..)) {
            ClauseKind::StrongRefutation { index: i + 1 }
        } else {
            ClauseKind::Contrapositive { index: i + 1 }
        };
        out.extend(normalize_int(vec![raw]).into_iter().map(|s| (kind.clone(), s)));
    }
    Ok(out)
}

fn default_vars(sorts: &[String]) -> Vec<(String, String)> {
    const NAMES: [&str; 4] = ["x", "y", "z", "w"];
    sorts.iter().enumerate().map(|(i, s)| (NAMES.get(i).map_or_else(|| format!("x{i}"), |n| n.to_string()), s.clone())).collect()
}

/// Expands a whole theory: one disjointness sequent per dual pair in
/// declaration order, then every axiom in file order.
pub fn translate_theory(th: &Theory) -> Result<Vec<TranslatedSequent>, TranslateError> {
    let mut out = Vec::new();
    for p in &th.preds {
        if let Some(d) = &p.dual {
            let context = default_vars(&p.arg_sorts);
            let args: Vec<Term> = context.iter().map(|(v, _)| Term::Var(v.clone())).collect();
            let raw = IntSequent {
                context,
                hypotheses: vec![I::Atom(p.name.clone(), args.clone()), I::Atom(d.clone(), args)],
                conclusion: I::False,
            };
            for sequent in normalize_int(vec![raw]) {
                out.push(TranslatedSequent { source: p.name.clone(), clause: ClauseKind::Disjointness, sequent });
            }
        }
    }
    for ax in &th.axioms {
        let parts = sequent_split(&ax.sequent, th)
            .map_err(|e| TranslateError::InAxiom { context: format!("axiom `{}` (line {})", ax.name, ax.line), source: Box::new(e) })?;
        out.extend(parts.into_iter().map(|(clause, sequent)| TranslatedSequent { source: ax.name.clone(), clause, sequent }));
    }
    Ok(out)
}

/// `!` embeds intuitionistic logic: meet is `*`, join is `+`, implication
/// is `!(a -o b)`. Atoms become `!p`.
pub fn embed_int(f: &I) -> L {
    let e = |x: &I| Box::new(embed_int(x));
    match f {
        I::Atom(p, args) => L::Bang(Box::new(L::Atom(p.clone(), args.clone()))),
        I::True => L::Top,
        I::False => L::Bot,
        I::And(x, y) => L::Tensor(e(x), e(y)),
        I::Or(x, y) => L::Plus(e(x), e(y)),
        I::Imp(x, y) => L::Bang(Box::new(L::Limp(e(x), e(y)))),
        I::Not(x) => L::Bang(Box::new(L::Neg(e(x)))),
        I::Forall(v, s, x) => L::Bang(Box::new(L::Forall(v.clone(), s.clone(), e(x)))),
        I::Exists(v, s, x) => L::Exists(v.clone(), s.clone(), e(x)),
    }
}
