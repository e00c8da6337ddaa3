use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{chu_split, TranslateError};
use crate::chu::{ChuModel, ChuProp};
use crate::lattice::{Elem, FiniteHeyting};
use crate::models::AffineModel;
use crate::semantics::{eval, eval_term, random_formula, Env, RandomSpec, SemanticsError, Structure};
use crate::syntax::{print_linear, IntFormula as I, LinearFormula, PredSym, Theory};

fn sem(e: SemanticsError) -> TranslateError {
    TranslateError::Semantics(e.to_string())
}

/// Evaluates an intuitionistic formula in `h`; each predicate name
/// (duals included) is its own table in `s`.
pub fn eval_int(h: &FiniteHeyting, s: &Structure<Elem>, f: &I, env: &mut Env) -> Result<Elem, SemanticsError> {
    Ok(match f {
        I::Atom(p, args) => {
            let table = s.pred(p).ok_or_else(|| SemanticsError::UnknownSymbol(p.clone()))?;
            let tuple = args.iter().map(|a| eval_term(s, a, env)).collect::<Result<Vec<_>, _>>()?;
            table.get(&tuple)
        }
        I::True => h.top(),
        I::False => h.bot(),
        I::And(a, b) => h.meet(eval_int(h, s, a, env)?, eval_int(h, s, b, env)?),
        I::Or(a, b) => h.join(eval_int(h, s, a, env)?, eval_int(h, s, b, env)?),
        I::Imp(a, b) => h.imp(eval_int(h, s, a, env)?, eval_int(h, s, b, env)?),
        I::Not(a) => h.neg(eval_int(h, s, a, env)?),
        I::Forall(v, sort, body) | I::Exists(v, sort, body) => {
            let n = s.domain(sort).ok_or_else(|| SemanticsError::UnknownSort(sort.clone()))?.len();
            let mut vals = Vec::with_capacity(n);
            for i in 0..n {
                env.push((v.clone(), i));
                let r = eval_int(h, s, body, env);
                env.pop();
                vals.push(r?);
            }
            if matches!(f, I::Forall(..)) {
                h.meet_all(vals)
            } else {
                h.join_all(vals)
            }
        }
    })
}

/// The intuitionistic reading of a Chu structure: `p` holds the proof
/// parts and its dual the refutation parts.
pub fn int_structure(th: &Theory, s: &Structure<ChuProp>) -> Structure<Elem> {
    let mut sig =
        Theory { name: th.name.clone(), sorts: th.sorts.clone(), funcs: th.funcs.clone(), consts: th.consts.clone(), ..Theory::default() };
    for p in &th.preds {
        sig.preds.push(PredSym { dual: None, affirmative: false, ..p.clone() });
        if let Some(d) = &p.dual {
            sig.preds.push(PredSym { name: d.clone(), arg_sorts: p.arg_sorts.clone(), dual: None, affirmative: false });
        }
    }
    let sizes: BTreeMap<String, usize> = s.domains.iter().map(|(n, d)| (n.clone(), d.len())).collect();
    let mut out = Structure::new(&s.model, &sig, &sizes, 0, 0);
    out.domains = s.domains.clone();
    out.funcs = s.funcs.clone();
    for (p, t) in th.preds.iter().zip(&s.preds) {
        out.pred_mut(&p.name).expect("declared").values = t.values.iter().map(|v| v.pf).collect();
        if let Some(d) = &p.dual {
            out.pred_mut(d).expect("declared").values = t.values.iter().map(|v| v.rf).collect();
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub formula: String,
    pub linear: String,
    pub split: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub model: String,
    pub trials: usize,
    pub agreements: usize,
    /// At most the first ten disagreements.
    pub mismatches: Vec<Mismatch>,
}

impl VerifyReport {
    pub fn all_agree(&self) -> bool {
        self.trials == self.agreements
    }

    fn record(&mut self, r: Option<Mismatch>) {
        self.trials += 1;
        match r {
            None => self.agreements += 1,
            Some(m) if self.mismatches.len() < 10 => self.mismatches.push(m),
            Some(_) => {}
        }
    }
}

/// Compares the Chu value of a closed formula with the canonicalized pair
/// of intuitionistic values of its split.
pub fn verify_translation(
    f: &LinearFormula,
    th: &Theory,
    m: &ChuModel,
    s: &Structure<ChuProp>,
) -> Result<Option<Mismatch>, TranslateError> {
    let f = f.desugar();
    let linear = eval(m, s, &f, &mut Vec::new()).map_err(sem)?;
    let split = chu_split(&f, th)?;
    let is = int_structure(th, s);
    let h = m.base();
    let pf = eval_int(h, &is, &split.pf, &mut Vec::new()).map_err(sem)?;
    let rf = eval_int(h, &is, &split.rf, &mut Vec::new()).map_err(sem)?;
    let via_split = m.canon(pf, rf);
    Ok((linear != via_split).then(|| Mismatch { formula: print_linear(&f), linear: m.format(linear), split: m.format(via_split) }))
}

/// The signature of [`RandomSpec`] formulas, each predicate with a dual `n<name>`.
pub fn random_signature(spec: &RandomSpec) -> Theory {
    let mut th = Theory { name: "random".into(), sorts: vec![spec.sort.clone()], ..Theory::default() };
    let sym = |p: &String, args: Vec<String>| PredSym { name: p.clone(), arg_sorts: args, dual: Some(format!("n{p}")), affirmative: false };
    th.preds.extend(spec.nullary.iter().map(|p| sym(p, vec![])));
    th.preds.extend(spec.unary.iter().map(|p| sym(p, vec![spec.sort.clone()])));
    th
}

/// `count` seeded random formulas of depth at most `depth`, each checked
/// in a fresh random structure whose domain has two elements.
pub fn verify_random(m: &ChuModel, count: usize, depth: usize, seed: u64) -> Result<VerifyReport, TranslateError> {
    let spec = RandomSpec::default();
    let th = random_signature(&spec);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let els = m.elements();
    let sizes = BTreeMap::from([(spec.sort.clone(), 2)]);
    let mut report = VerifyReport { model: m.id(), ..VerifyReport::default() };
    for _ in 0..count {
        let f = random_formula(&mut rng, depth, &spec);
        let mut s = Structure::new(&m.id(), &th, &sizes, m.bot(), m.top());
        for t in &mut s.preds {
            for v in &mut t.values {
                *v = els[rng.gen_range(0..els.len())];
            }
        }
        report.record(verify_translation(&f, &th, m, &s)?);
    }
    Ok(report)
}

/// Every assignment of carrier elements to the cells of `th`'s tables,
/// with each sort of size `domain`.
pub fn verify_exhaustive(f: &LinearFormula, th: &Theory, m: &ChuModel, domain: usize) -> Result<VerifyReport, TranslateError> {
    let sizes: BTreeMap<String, usize> = th.sorts.iter().map(|s| (s.clone(), domain)).collect();
    let mut s = Structure::new(&m.id(), th, &sizes, m.bot(), m.top());
    let els = m.elements();
    let cells: Vec<(usize, usize)> = s.preds.iter().enumerate().flat_map(|(i, t)| (0..t.values.len()).map(move |k| (i, k))).collect();
    let mut idx = vec![0usize; cells.len()];
    let dims = vec![els.len(); cells.len()];
    let mut report = VerifyReport { model: m.id(), ..VerifyReport::default() };
    loop {
        for (&(i, k), &e) in cells.iter().zip(&idx) {
            s.preds[i].values[k] = els[e];
        }
        report.record(verify_translation(f, th, m, &s)?);
        if !crate::semantics::advance(&mut idx, &dims) {
            return Ok(report);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chu::ChuVariant;
    use crate::lattice::{heyting_boolean, heyting_chain};
    use crate::syntax::parse_linear;

    #[test]
    fn negated_implication_over_chain3() {
        let m = ChuModel::new(heyting_chain(3).unwrap(), ChuVariant::Strict0).unwrap();
        let th = random_signature(&RandomSpec::default());
        let r = verify_exhaustive(&parse_linear("~(p -o q)").unwrap(), &th, &m, 1).unwrap();
        // Only p and q are read, but r and s cells are enumerated too.
        assert_eq!(r.trials, 5usize.pow(4));
        assert!(r.all_agree(), "{r:?}");
        let small = Theory { preds: th.preds[..2].to_vec(), ..th.clone() };
        assert_eq!(verify_exhaustive(&parse_linear("~(p -o q)").unwrap(), &small, &m, 1).unwrap().trials, 25);
        assert!(verify_exhaustive(&parse_linear("p").unwrap(), &small, &m, 1).unwrap().all_agree());
    }

    #[test]
    fn random_formulas_over_bool2() {
        let m = ChuModel::new(heyting_boolean(2).unwrap(), ChuVariant::Strict0).unwrap();
        let r = verify_random(&m, 1000, 6, 1).unwrap();
        assert_eq!((r.trials, r.agreements), (1000, 1000), "{:?}", r.mismatches);
    }
}
