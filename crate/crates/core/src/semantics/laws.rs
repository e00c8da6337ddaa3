use std::collections::BTreeMap;
use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{eval, SemanticsError, Structure};
use crate::models::{AffineModel, AnyModel, ModelKind};
use crate::syntax::{parse_linear, parse_theory, LinearFormula, Theory};
use crate::with_model;

pub const LAW_REPORT_SCHEMA: &str = "chulogic.laws/v1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Core,
    ChuSpecial,
    Exponential,
}

impl Suite {
    pub const ALL: [Suite; 3] = [Suite::Core, Suite::ChuSpecial, Suite::Exponential];

    pub fn id(self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::ChuSpecial => "chu-special",
            Suite::Exponential => "exponential",
        }
    }

    pub fn parse(s: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|x| x.id() == s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum LawShape {
    Equiv(LinearFormula, LinearFormula),
    Entails(LinearFormula, LinearFormula),
    /// `a |- b` exactly when `c |- d`.
    Iff(LinearFormula, LinearFormula, LinearFormula, LinearFormula),
    /// The tensor unit and the par unit are the same element.
    UnitsCoincide,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    Holds,
    /// A documented failure on some models of this kind.
    MayFail,
    NotApplicable,
}

/// A named law over the metavariables `P`, `Q`, `R` and the family `A(x)`
/// on the two-element sort `D`.
#[derive(Clone, Debug)]
pub struct LawSchema {
    pub name: &'static str,
    pub suite: Suite,
    pub shape: LawShape,
    pub note: &'static str,
    expect: fn(ModelKind) -> Expectation,
}

impl LawSchema {
    pub fn expectation(&self, kind: ModelKind) -> Expectation {
        (self.expect)(kind)
    }

    fn formulas(&self) -> Vec<&LinearFormula> {
        match &self.shape {
            LawShape::Equiv(a, b) | LawShape::Entails(a, b) => vec![a, b],
            LawShape::Iff(a, b, c, d) => vec![a, b, c, d],
            LawShape::UnitsCoincide => vec![],
        }
    }

    /// Metavariable cells in order of first appearance.
    fn cells(&self) -> Vec<(String, Vec<usize>)> {
        fn walk(f: &LinearFormula, out: &mut Vec<String>) {
            use LinearFormula::*;
            match f {
                Atom(p, _) => {
                    if !out.contains(p) {
                        out.push(p.clone());
                    }
                }
                Top | Bot => {}
                Tensor(a, b) | Par(a, b) | With(a, b) | Plus(a, b) | Limp(a, b) | Liff(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                Neg(a) | Bang(a) | WhyNot(a) | Forall(_, _, a) | Exists(_, _, a) => walk(a, out),
            }
        }
        let mut names = Vec::new();
        for f in self.formulas() {
            walk(f, &mut names);
        }
        names
            .into_iter()
            .flat_map(|n| if n == FAMILY { (0..FAMILY_SIZE).map(|i| (n.clone(), vec![i])).collect::<Vec<_>>() } else { vec![(n, vec![])] })
            .collect()
    }
}

const FAMILY: &str = "A";
const FAMILY_SIZE: usize = 2;

fn law_signature() -> &'static Theory {
    static SIG: OnceLock<Theory> = OnceLock::new();
    SIG.get_or_init(|| parse_theory("theory Laws\nsort D\npred P\npred Q\npred R\npred A(D)\n").expect("law signature"))
}

fn always(_: ModelKind) -> Expectation {
    Expectation::Holds
}
fn chu1_may_fail(k: ModelKind) -> Expectation {
    if k == ModelKind::Chu1 {
        Expectation::MayFail
    } else {
        Expectation::Holds
    }
}
fn chu1_only(k: ModelKind) -> Expectation {
    if k == ModelKind::Chu1 {
        Expectation::Holds
    } else {
        Expectation::NotApplicable
    }
}
fn luk_may_fail(k: ModelKind) -> Expectation {
    if k == ModelKind::Lukasiewicz {
        Expectation::MayFail
    } else {
        Expectation::Holds
    }
}
fn interior_may_fail(k: ModelKind) -> Expectation {
    if k == ModelKind::Interior {
        Expectation::MayFail
    } else {
        Expectation::Holds
    }
}
fn only_chu0_and_luk(k: ModelKind) -> Expectation {
    if matches!(k, ModelKind::Interior | ModelKind::Chu1) {
        Expectation::MayFail
    } else {
        Expectation::Holds
    }
}
fn squaring(k: ModelKind) -> Expectation {
    if k == ModelKind::Chu0 {
        Expectation::Holds
    } else {
        Expectation::MayFail
    }
}

fn f(text: &str) -> LinearFormula {
    parse_linear(text).unwrap_or_else(|e| panic!("law text `{text}`: {e}"))
}

fn eqv(a: &str, b: &str) -> LawShape {
    LawShape::Equiv(f(a), f(b))
}

fn ent(a: &str, b: &str) -> LawShape {
    LawShape::Entails(f(a), f(b))
}

/// Every law, in report order.
pub fn catalog() -> &'static [LawSchema] {
    static CAT: OnceLock<Vec<LawSchema>> = OnceLock::new();
    CAT.get_or_init(|| {
        use Suite::*;
        let law = |name, suite, shape, note, expect| LawSchema { name, suite, shape, note, expect };
        vec![
            law("involution", Core, eqv("~~P", "P"), "", always),
            law("de-morgan-tensor", Core, eqv("~(P * Q)", "~P @ ~Q"), "", always),
            law("de-morgan-with", Core, eqv("~(P & Q)", "~P + ~Q"), "", always),
            law("de-morgan-forall", Core, eqv("~/\\x:D. A(x)", "\\/x:D. ~A(x)"), "", always),
            law(
                "adjunction",
                Core,
                LawShape::Iff(f("P * Q"), f("R"), f("P"), f("Q -o R")),
                "tensor is left adjoint to linear implication",
                always,
            ),
            law("tensor-unit", Core, eqv("P * T", "P"), "top is the tensor unit (affine)", chu1_may_fail),
            law("with-unit", Core, eqv("P & T", "P"), "", always),
            law("plus-unit", Core, eqv("P + F", "P"), "", always),
            law("par-unit", Core, eqv("P @ F", "P"), "bottom is the par unit (affine)", chu1_may_fail),
            law("mult-excluded-middle", Core, ent("T", "P @ ~P"), "", chu1_may_fail),
            law("frobenius-tensor", Core, eqv("P * \\/x:D. A(x)", "\\/x:D. P * A(x)"), "", always),
            law("frobenius-par", Core, eqv("P @ /\\x:D. A(x)", "/\\x:D. P @ A(x)"), "", always),
            law(
                "with-exists",
                Core,
                eqv("P & \\/x:D. A(x)", "\\/x:D. P & A(x)"),
                "valid here: finite domains over distributive lattices; not derivable proof-theoretically",
                always,
            ),
            law("mix-units", Core, LawShape::UnitsCoincide, "tensor and par units coincide (MIX)", chu1_only),
            law("add-dist", ChuSpecial, eqv("P & (Q + R)", "(P & Q) + (P & R)"), "", always),
            law("weak-idem", ChuSpecial, eqv("P * P * P", "P * P"), "", luk_may_fail),
            law("bang-squaring", ChuSpecial, eqv("!P", "P * P"), "", squaring),
            law("refutative-affirmativity", ChuSpecial, ent("T", "?(P -o !P)"), "", always),
            law("exp-dist", ChuSpecial, ent("?!P", "!?P"), "", only_chu0_and_luk),
            law("exact-exp", ChuSpecial, eqv("!(P + Q)", "!P + !Q"), "", interior_may_fail),
            law("cont-exp", ChuSpecial, eqv("!\\/x:D. A(x)", "\\/x:D. !A(x)"), "", interior_may_fail),
            law("seely", Exponential, eqv("!(P & Q)", "!P * !Q"), "", always),
            law("seely-dual", Exponential, eqv("?(P + Q)", "?P @ ?Q"), "", always),
            law("bang-idem", Exponential, eqv("!!P", "!P"), "", always),
            law("counit", Exponential, ent("!P", "P"), "", chu1_may_fail),
            law("unit", Exponential, ent("P", "?P"), "", chu1_may_fail),
            law("whynot-idem", Exponential, eqv("??P", "?P"), "", always),
            law("bang-tensor", Exponential, ent("!P * !Q", "!(P * Q)"), "", always),
        ]
    })
}

pub fn law(name: &str) -> Option<&'static LawSchema> {
    catalog().iter().find(|l| l.name == name)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawWitness {
    /// Metavariable cell (`P`, `A(d0)`, ...) and its carrier value.
    pub assignment: Vec<(String, String)>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum LawStatus {
    Holds,
    Fails { witness: LawWitness },
    Skipped { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawRow {
    pub law: String,
    pub suite: Suite,
    pub model: String,
    #[serde(flatten)]
    pub status: LawStatus,
    pub expected: Expectation,
    pub protocol: String,
    pub cases: u64,
}

impl LawRow {
    /// An expected-holds law that failed.
    pub fn is_unexpected_failure(&self) -> bool {
        self.expected == Expectation::Holds && matches!(self.status, LawStatus::Fails { .. })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LawReport {
    pub schema: &'static str,
    pub seed: u64,
    pub samples: usize,
    pub rows: Vec<LawRow>,
}

impl LawReport {
    pub fn unexpected_failures(&self) -> Vec<&LawRow> {
        self.rows.iter().filter(|r| r.is_unexpected_failure()).collect()
    }

    pub fn render_text(&self) -> String {
        let mut out = format!("seed {} samples {}\n", self.seed, self.samples);
        for r in &self.rows {
            let status = match &r.status {
                LawStatus::Holds => "HOLDS".to_string(),
                LawStatus::Fails { witness } => {
                    let a: Vec<String> = witness.assignment.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    let tag = if r.expected == Expectation::Holds { "FAILED (unexpected)" } else { "FAILED" };
                    format!("{tag} at {} (lhs {}, rhs {})", a.join(" "), witness.lhs, witness.rhs)
                }
                LawStatus::Skipped { reason } => format!("SKIPPED ({reason})"),
            };
            out.push_str(&format!("{:<26} {:<22} {:<16} {status}\n", r.law, r.model, r.protocol));
        }
        out
    }
}

#[derive(Clone, Copy, Debug)]
pub struct LawOptions {
    pub seed: u64,
    /// Random assignments drawn after the grid on non-enumerable carriers.
    pub samples: usize,
}

impl Default for LawOptions {
    fn default() -> Self {
        LawOptions { seed: 0x5EED, samples: 10_000 }
    }
}

fn name_seed(seed: u64, name: &str) -> u64 {
    name.bytes().fold(seed ^ 0xcbf2_9ce4_8422_2325, |h, b| (h ^ b as u64).wrapping_mul(0x100_0000_01b3))
}

fn cell_label(name: &str, tuple: &[usize]) -> String {
    if tuple.is_empty() {
        name.to_string()
    } else {
        format!("{name}({})", tuple.iter().map(|&i| format!("d{i}")).collect::<Vec<_>>().join(","))
    }
}

struct Harness<'m, M: AffineModel> {
    m: &'m M,
    st: Structure<M::Elem>,
    cells: Vec<(String, Vec<usize>)>,
}

impl<'m, M: AffineModel> Harness<'m, M> {
    fn new(law: &LawSchema, m: &'m M) -> Self {
        let sizes = BTreeMap::from([("D".to_string(), FAMILY_SIZE)]);
        Harness { m, st: Structure::new(&m.id(), law_signature(), &sizes, m.bot(), m.top()), cells: law.cells() }
    }

    fn assign(&mut self, vals: &[M::Elem]) {
        for ((name, tuple), &v) in self.cells.iter().zip(vals) {
            self.st.pred_mut(name).expect("law signature").set(tuple, v);
        }
    }

    /// `Some(witness)` when the law is violated at the current assignment.
    fn violation(&self, shape: &LawShape, vals: &[M::Elem]) -> Result<Option<LawWitness>, SemanticsError> {
        let m = self.m;
        let ev = |f: &LinearFormula| eval(m, &self.st, f, &mut Vec::new());
        let (bad, lhs, rhs) = match shape {
            LawShape::Equiv(a, b) => {
                let (x, y) = (ev(a)?, ev(b)?);
                (!m.equiv(x, y), m.format_elem(x), m.format_elem(y))
            }
            LawShape::Entails(a, b) => {
                let (x, y) = (ev(a)?, ev(b)?);
                (!m.leq(x, y), m.format_elem(x), m.format_elem(y))
            }
            LawShape::Iff(a, b, c, d) => {
                let l = m.leq(ev(a)?, ev(b)?);
                let r = m.leq(ev(c)?, ev(d)?);
                (l != r, l.to_string(), r.to_string())
            }
            LawShape::UnitsCoincide => unreachable!("handled by units_coincide"),
        };
        Ok(bad.then(|| LawWitness {
            assignment: self.cells.iter().zip(vals).map(|((n, t), &v)| (cell_label(n, t), m.format_elem(v))).collect(),
            lhs,
            rhs,
        }))
    }
}

fn unit_of<M: AffineModel>(m: &M, op: impl Fn(M::Elem, M::Elem) -> M::Elem) -> Option<M::Elem> {
    let els = m.elements();
    els.iter().copied().find(|&u| els.iter().all(|&p| m.equiv(op(u, p), p) && m.equiv(op(p, u), p)))
}

fn units_coincide<M: AffineModel>(m: &M) -> (LawStatus, u64) {
    let t = unit_of(m, |a, b| m.tensor(a, b));
    let p = unit_of(m, |a, b| m.par(a, b));
    let n = m.elements().len() as u64;
    let show = |x: Option<M::Elem>| x.map_or("none".to_string(), |e| m.format_elem(e));
    match (t, p) {
        (Some(a), Some(b)) if m.equiv(a, b) => (LawStatus::Holds, n * n * 2),
        _ => (
            LawStatus::Fails {
                witness: LawWitness {
                    assignment: vec![("tensor-unit".into(), show(t)), ("par-unit".into(), show(p))],
                    lhs: show(t),
                    rhs: show(p),
                },
            },
            n * n * 2,
        ),
    }
}

/// Checks one law on one model. Enumerable carriers are swept exhaustively
/// (`exhaustive/v1`); others sweep their grid, then `samples` seeded random
/// assignments (`grid+random/v1`). The first violation is the witness.
pub fn check_law<M: AffineModel>(law: &LawSchema, m: &M, opts: LawOptions) -> LawRow {
    let expected = law.expectation(m.kind());
    let exhaustive = m.is_exhaustive();
    let protocol = if exhaustive { "exhaustive/v1" } else { "grid+random/v1" }.to_string();
    let row = |status, cases| LawRow {
        law: law.name.into(),
        suite: law.suite,
        model: m.id(),
        status,
        expected,
        protocol: protocol.clone(),
        cases,
    };
    if expected == Expectation::NotApplicable {
        return row(LawStatus::Skipped { reason: "not applicable to this model kind".into() }, 0);
    }
    if law.shape == LawShape::UnitsCoincide {
        if !exhaustive {
            return row(LawStatus::Skipped { reason: "needs an enumerable carrier".into() }, 0);
        }
        let (s, n) = units_coincide(m);
        return row(s, n);
    }
    let mut h = Harness::new(law, m);
    let els = m.elements();
    let k = h.cells.len();
    let sizes = vec![els.len(); k];
    let mut idx = vec![0usize; k];
    let mut cases = 0u64;
    let mut vals: Vec<M::Elem> = Vec::with_capacity(k);
    loop {
        vals.clear();
        vals.extend(idx.iter().map(|&i| els[i]));
        h.assign(&vals);
        cases += 1;
        match h.violation(&law.shape, &vals) {
            Ok(Some(w)) => return row(LawStatus::Fails { witness: w }, cases),
            Ok(None) => {}
            Err(e) => return row(LawStatus::Skipped { reason: e.to_string() }, cases),
        }
        if !super::advance(&mut idx, &sizes) {
            break;
        }
    }
    if !exhaustive {
        let mut rng = ChaCha8Rng::seed_from_u64(name_seed(opts.seed, law.name));
        for _ in 0..opts.samples {
            vals.clear();
            for _ in 0..k {
                vals.push(m.random_element(&mut rng));
            }
            h.assign(&vals);
            cases += 1;
            if let Ok(Some(w)) = h.violation(&law.shape, &vals) {
                return row(LawStatus::Fails { witness: w }, cases);
            }
        }
    }
    row(LawStatus::Holds, cases)
}

/// Re-evaluates a stored witness; true when it is a genuine violation.
pub fn replay_witness<M: AffineModel>(law: &LawSchema, m: &M, w: &LawWitness) -> Result<bool, SemanticsError> {
    if law.shape == LawShape::UnitsCoincide {
        let (s, _) = units_coincide(m);
        return Ok(matches!(s, LawStatus::Fails { .. }));
    }
    let mut h = Harness::new(law, m);
    let mut vals = Vec::new();
    for (name, tuple) in &h.cells {
        let label = cell_label(name, tuple);
        let (_, v) = w
            .assignment
            .iter()
            .find(|(k, _)| *k == label)
            .ok_or_else(|| SemanticsError::Invalid(format!("witness has no value for {label}")))?;
        vals.push(m.parse_elem(v)?);
    }
    h.assign(&vals);
    Ok(h.violation(&law.shape, &vals)?.is_some())
}

/// Runs the chosen suites over the models; rows are model-major in catalog
/// order regardless of how the work was scheduled.
pub fn law_suite(suites: &[Suite], models: &[AnyModel], opts: LawOptions) -> LawReport {
    let jobs: Vec<(&AnyModel, &LawSchema)> =
        models.iter().flat_map(|m| catalog().iter().filter(|l| suites.contains(&l.suite)).map(move |l| (m, l))).collect();
    let rows = jobs.par_iter().map(|(any, law)| with_model!(any, m => check_law(law, m, opts))).collect();
    LawReport { schema: LAW_REPORT_SCHEMA, seed: opts.seed, samples: opts.samples, rows }
}
