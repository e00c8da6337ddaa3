use std::collections::BTreeMap;

use super::{eval, eval_hypotheses, holds_sequent, Env, SemanticsError, SequentWitness, Structure};
use crate::models::AffineModel;
use crate::syntax::{LinearFormula, PredSym, Sequent, Term, Theory};

/// Find a structure satisfying every `background` sequent but not `goal`.
#[derive(Clone, Debug)]
pub struct SearchProblem {
    pub signature: Theory,
    pub background: Vec<Sequent>,
    pub goal: Sequent,
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    /// Largest domain size per sort; at most 3.
    pub max_domain: usize,
    /// Budget of table-cell assignments before giving up.
    pub node_cap: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { max_domain: 3, node_cap: 5_000_000 }
    }
}

pub const MAX_SEARCH_DOMAIN: usize = 3;

#[derive(Clone, Debug)]
pub enum SearchOutcome<E> {
    Found { structure: Structure<E>, witness: SequentWitness, explored: u64 },
    NoneUpToBound { max_domain: usize, explored: u64 },
    CapExceeded { explored: u64 },
}

impl<E> SearchOutcome<E> {
    pub fn found(&self) -> bool {
        matches!(self, SearchOutcome::Found { .. })
    }
}

/// Builds a signature from the sorts and atoms a sequent mentions: every
/// atom argument must be a variable bound by the context or a quantifier.
pub fn implicit_signature(seq: &Sequent) -> Result<Theory, SemanticsError> {
    fn walk(f: &LinearFormula, scope: &mut Vec<(String, String)>, th: &mut Theory) -> Result<(), SemanticsError> {
        use LinearFormula::*;
        match f {
            Atom(p, args) => {
                let sorts = args
                    .iter()
                    .map(|a| match a {
                        Term::Var(v) => scope
                            .iter()
                            .rev()
                            .find(|(x, _)| x == v)
                            .map(|(_, s)| s.clone())
                            .ok_or_else(|| SemanticsError::UnboundVariable(v.clone())),
                        Term::App(g, _) => Err(SemanticsError::Invalid(format!("function symbol `{g}` needs a theory"))),
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                match th.preds.iter().find(|q| q.name == *p) {
                    Some(q) if q.arg_sorts != sorts => {
                        return Err(SemanticsError::Invalid(format!("atom `{p}` used at two different arities or sorts")))
                    }
                    Some(_) => {}
                    None => th.preds.push(PredSym { name: p.clone(), arg_sorts: sorts, dual: None, affirmative: false }),
                }
            }
            Top | Bot => {}
            Tensor(a, b) | Par(a, b) | With(a, b) | Plus(a, b) | Limp(a, b) | Liff(a, b) => {
                walk(a, scope, th)?;
                walk(b, scope, th)?;
            }
            Neg(a) | Bang(a) | WhyNot(a) => walk(a, scope, th)?,
            Forall(v, s, body) | Exists(v, s, body) => {
                if !th.sorts.contains(s) {
                    th.sorts.push(s.clone());
                }
                scope.push((v.clone(), s.clone()));
                let r = walk(body, scope, th);
                scope.pop();
                r?;
            }
        }
        Ok(())
    }
    let mut th = Theory { name: "schema".into(), ..Theory::default() };
    for (_, s) in &seq.context {
        if !th.sorts.contains(s) {
            th.sorts.push(s.clone());
        }
    }
    let mut scope = seq.context.clone();
    for f in seq.hypotheses.iter().chain([&seq.conclusion]) {
        walk(f, &mut scope, &mut th)?;
    }
    Ok(th)
}

/// Size vectors whose largest entry is exactly `n`, in lexicographic order.
fn size_vectors(k: usize, n: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return if n == 1 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    let mut v = vec![1; k];
    loop {
        if v.iter().max() == Some(&n) {
            out.push(v.clone());
        }
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            v[i] += 1;
            if v[i] <= n {
                break;
            }
            v[i] = 1;
        }
    }
}

struct Ground {
    sequent: usize,
    env: Env,
}

/// Enumerates structures over `m`'s carrier (its grid when infinite), with
/// all sorts of size 1..=max_domain. Predicate tables are filled cell by
/// cell and a background instance is checked as soon as every cell it
/// reads is assigned. Existence predicates are fixed to top. The first
/// structure (in this deterministic order) falsifying the goal is returned.
pub fn search_countermodel<M: AffineModel>(
    m: &M,
    problem: &SearchProblem,
    opts: SearchOptions,
) -> Result<SearchOutcome<M::Elem>, SemanticsError> {
    if opts.max_domain > MAX_SEARCH_DOMAIN {
        return Err(SemanticsError::Invalid(format!("max domain {} exceeds {MAX_SEARCH_DOMAIN}", opts.max_domain)));
    }
    let sig = &problem.signature;
    let els = m.elements();
    let affirmative_els: Vec<M::Elem> = els.iter().copied().filter(|&v| m.bang(v) == v).collect();
    let mut explored = 0u64;
    for n in 1..=opts.max_domain.max(1) {
        for sizes in size_vectors(sig.sorts.len(), n) {
            let size_map: BTreeMap<String, usize> = sig.sorts.iter().cloned().zip(sizes.iter().copied()).collect();
            let mut st = Structure::new(&m.id(), sig, &size_map, m.bot(), m.top());
            // Function cells: (table, slot, result size).
            let fcells: Vec<(usize, usize, usize)> = st
                .funcs
                .iter()
                .enumerate()
                .flat_map(|(fi, f)| {
                    let rs = size_map.get(&f.result).copied().unwrap_or(1);
                    (0..f.values.len()).map(move |k| (fi, k, rs))
                })
                .collect();
            let fsizes: Vec<usize> = fcells.iter().map(|c| c.2).collect();
            let mut fidx = vec![0usize; fcells.len()];
            loop {
                for (&(fi, k, _), &v) in fcells.iter().zip(&fidx) {
                    st.funcs[fi].values[k] = v;
                }
                if let Some(out) = fill_predicates(m, problem, &mut st, &els, &affirmative_els, &mut explored, opts.node_cap)? {
                    return Ok(out);
                }
                if explored >= opts.node_cap {
                    return Ok(SearchOutcome::CapExceeded { explored });
                }
                if !super::advance(&mut fidx, &fsizes) {
                    break;
                }
            }
        }
    }
    Ok(SearchOutcome::NoneUpToBound { max_domain: opts.max_domain, explored })
}

/// Cells a formula reads under `env`, as (pred, slot) pairs.
fn reads<E: Copy + PartialEq>(
    s: &Structure<E>,
    f: &LinearFormula,
    env: &mut Env,
    out: &mut Vec<(usize, usize)>,
) -> Result<(), SemanticsError> {
    use LinearFormula::*;
    match f {
        Atom(p, args) => {
            let pi = s.preds.iter().position(|t| t.name == *p).ok_or_else(|| SemanticsError::UnknownSymbol(p.clone()))?;
            let mut tuple = Vec::with_capacity(args.len());
            for a in args {
                tuple.push(super::eval_term(s, a, env)?);
            }
            out.push((pi, s.preds[pi].index_of(&tuple)));
        }
        Top | Bot => {}
        Tensor(a, b) | Par(a, b) | With(a, b) | Plus(a, b) | Limp(a, b) | Liff(a, b) => {
            reads(s, a, env, out)?;
            reads(s, b, env, out)?;
        }
        Neg(a) | Bang(a) | WhyNot(a) => reads(s, a, env, out)?,
        Forall(v, sort, body) | Exists(v, sort, body) => {
            let n = s.domain(sort).ok_or_else(|| SemanticsError::UnknownSort(sort.clone()))?.len();
            for i in 0..n {
                env.push((v.clone(), i));
                let r = reads(s, body, env, out);
                env.pop();
                r?;
            }
        }
    }
    Ok(())
}

fn fill_predicates<M: AffineModel>(
    m: &M,
    problem: &SearchProblem,
    st: &mut Structure<M::Elem>,
    els: &[M::Elem],
    affirmative_els: &[M::Elem],
    explored: &mut u64,
    cap: u64,
) -> Result<Option<SearchOutcome<M::Elem>>, SemanticsError> {
    // Free cells, in table order; existence tables stay at top.
    let mut cell_id: Vec<Vec<Option<usize>>> = Vec::new();
    let mut cells: Vec<(usize, usize)> = Vec::new();
    for (pi, p) in st.preds.iter().enumerate() {
        let mut ids = Vec::new();
        for k in 0..p.values.len() {
            if p.existence {
                ids.push(None);
            } else {
                ids.push(Some(cells.len()));
                cells.push((pi, k));
            }
        }
        cell_id.push(ids);
    }
    // Ground background instances, bucketed by the last cell they read.
    let mut buckets: Vec<Vec<Ground>> = (0..cells.len()).map(|_| Vec::new()).collect();
    let mut immediate = Vec::new();
    for (si, seq) in problem.background.iter().enumerate() {
        let sizes = seq
            .context
            .iter()
            .map(|(_, s)| st.domain(s).map(|d| d.len()).ok_or_else(|| SemanticsError::UnknownSort(s.clone())))
            .collect::<Result<Vec<_>, _>>()?;
        if sizes.contains(&0) {
            continue;
        }
        let mut idx = vec![0; sizes.len()];
        loop {
            let mut env: Env = seq.context.iter().zip(&idx).map(|((v, _), &i)| (v.clone(), i)).collect();
            let mut read = Vec::new();
            for f in seq.hypotheses.iter().chain([&seq.conclusion]) {
                reads(st, f, &mut env, &mut read)?;
            }
            let last = read.iter().filter_map(|&(pi, k)| cell_id[pi][k]).max();
            let g = Ground { sequent: si, env };
            match last {
                Some(c) => buckets[c].push(g),
                None => immediate.push(g),
            }
            if !super::advance(&mut idx, &sizes) {
                break;
            }
        }
    }
    let check = |st: &Structure<M::Elem>, g: &Ground| -> Result<bool, SemanticsError> {
        let seq = &problem.background[g.sequent];
        let mut env = g.env.clone();
        let lhs = eval_hypotheses(m, st, &seq.hypotheses, &mut env)?;
        Ok(m.leq(lhs, eval(m, st, &seq.conclusion, &mut env)?))
    };
    for g in &immediate {
        if !check(st, g)? {
            return Ok(None);
        }
    }
    let domain_of = |pi: usize| if st.preds[pi].affirmative { affirmative_els } else { els };
    let choices: Vec<&[M::Elem]> = cells.iter().map(|&(pi, _)| domain_of(pi)).collect();
    if choices.iter().any(|c| c.is_empty()) {
        return Ok(None);
    }
    // Iterative backtracking over cells; pos[c] is the choice index at cell c.
    let mut pos = vec![0usize; cells.len()];
    let mut depth = 0usize;
    loop {
        if depth == cells.len() {
            if let Some(witness) = holds_sequent(m, &problem.goal, st)? {
                return Ok(Some(SearchOutcome::Found { structure: st.clone(), witness, explored: *explored }));
            }
            if depth == 0 {
                return Ok(None);
            }
            depth -= 1;
            pos[depth] += 1;
            continue;
        }
        if pos[depth] >= choices[depth].len() {
            pos[depth] = 0;
            if depth == 0 {
                return Ok(None);
            }
            depth -= 1;
            pos[depth] += 1;
            continue;
        }
        *explored += 1;
        if *explored >= cap {
            return Ok(None);
        }
        let (pi, k) = cells[depth];
        st.preds[pi].values[k] = choices[depth][pos[depth]];
        let mut ok = true;
        for g in &buckets[depth] {
            if !check(st, g)? {
                ok = false;
                break;
            }
        }
        if ok {
            depth += 1;
        } else {
            pos[depth] += 1;
        }
    }
}
