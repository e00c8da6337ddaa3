use crate::syntax::IntFormula as I;

/// An intuitionistic sequent; hypotheses are conjoined.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntSequent {
    pub context: Vec<(String, String)>,
    pub hypotheses: Vec<I>,
    pub conclusion: I,
}

fn conjuncts(f: I, out: &mut Vec<I>) {
    match f {
        I::And(a, b) => {
            conjuncts(*a, out);
            conjuncts(*b, out);
        }
        other => out.push(other),
    }
}

fn disjuncts(f: I, out: &mut Vec<I>) {
    match f {
        I::Or(a, b) => {
            disjuncts(*a, out);
            disjuncts(*b, out);
        }
        other => out.push(other),
    }
}

fn fold_left(parts: Vec<I>, op: fn(Box<I>, Box<I>) -> I) -> I {
    let mut it = parts.into_iter();
    let first = it.next().expect("nonempty");
    it.fold(first, |acc, x| op(Box::new(acc), Box::new(x)))
}

/// Reassociates nested `/\` and `\/` chains to the left, recursively.
pub fn normalize_formula(f: &I) -> I {
    match f {
        I::And(..) => {
            let mut parts = Vec::new();
            conjuncts(f.clone(), &mut parts);
            fold_left(parts.iter().map(normalize_formula).collect(), I::And)
        }
        I::Or(..) => {
            let mut parts = Vec::new();
            disjuncts(f.clone(), &mut parts);
            fold_left(parts.iter().map(normalize_formula).collect(), I::Or)
        }
        I::Imp(a, b) => I::Imp(Box::new(normalize_formula(a)), Box::new(normalize_formula(b))),
        I::Not(a) => I::Not(Box::new(normalize_formula(a))),
        I::Forall(v, s, a) => I::Forall(v.clone(), s.clone(), Box::new(normalize_formula(a))),
        I::Exists(v, s, a) => I::Exists(v.clone(), s.clone(), Box::new(normalize_formula(a))),
        I::Atom(..) | I::True | I::False => f.clone(),
    }
}

/// Rewrites to a fixpoint: conjunctive conclusions split into separate
/// sequents; implications in the conclusion and conjunctions among the
/// hypotheses are curried into the hypothesis list; `true` hypotheses and
/// sequents concluding `true` vanish; `h1, ..., hn |- false` becomes
/// `|- ~(h1 /\ ... /\ hn)`. Hypotheses keep their order; exact duplicate
/// sequents are dropped.
pub fn normalize_int(seqs: Vec<IntSequent>) -> Vec<IntSequent> {
    let mut out: Vec<IntSequent> = Vec::new();
    let mut work: Vec<IntSequent> = seqs.into_iter().rev().collect();
    while let Some(s) = work.pop() {
        let mut hyps = Vec::new();
        for h in s.hypotheses {
            conjuncts(h, &mut hyps);
        }
        hyps.retain(|h| *h != I::True);
        match s.conclusion {
            I::True => {}
            I::And(a, b) => {
                work.push(IntSequent { context: s.context.clone(), hypotheses: hyps.clone(), conclusion: *b });
                work.push(IntSequent { context: s.context, hypotheses: hyps, conclusion: *a });
            }
            I::Imp(a, b) => {
                hyps.push(*a);
                work.push(IntSequent { context: s.context, hypotheses: hyps, conclusion: *b });
            }
            I::False if !hyps.is_empty() => {
                let body = normalize_formula(&fold_left(hyps, I::And));
                push_unique(&mut out, IntSequent { context: s.context, hypotheses: vec![], conclusion: I::Not(Box::new(body)) });
            }
            c => {
                let hypotheses = hyps.iter().map(normalize_formula).collect();
                push_unique(&mut out, IntSequent { context: s.context, hypotheses, conclusion: normalize_formula(&c) });
            }
        }
    }
    out
}

fn push_unique(out: &mut Vec<IntSequent>, s: IntSequent) {
    if !out.iter().any(|t| t.hypotheses == s.hypotheses && t.conclusion == s.conclusion) {
        out.push(s);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_int, print_int};

    fn run(hyps: &[&str], concl: &str) -> Vec<String> {
        let s = IntSequent {
            context: vec![],
            hypotheses: hyps.iter().map(|h| parse_int(h).unwrap()).collect(),
            conclusion: parse_int(concl).unwrap(),
        };
        normalize_int(vec![s])
            .iter()
            .map(|s| format!("{} |- {}", s.hypotheses.iter().map(print_int).collect::<Vec<_>>().join(", "), print_int(&s.conclusion)))
            .collect()
    }

    #[test]
    fn rewrites() {
        assert_eq!(run(&[], "a -> b /\\ c"), vec!["a |- b", "a |- c"]);
        assert_eq!(run(&["true"], "c"), vec![" |- c"]);
        assert_eq!(run(&[], "p /\\ q -> r"), vec!["p, q |- r"]);
        assert_eq!(run(&["a", "b"], "false"), vec![" |- ~(a /\\ b)"]);
        assert_eq!(run(&["a"], "true"), Vec::<String>::new());
        assert_eq!(run(&[], "a \\/ (b \\/ c)"), vec![" |- a \\/ b \\/ c"]);
        assert_eq!(run(&[], "(a -> b) /\\ (a -> b)"), vec!["a |- b"]);
    }

    #[test]
    fn idempotent() {
        let once = normalize_int(vec![IntSequent {
            context: vec![],
            hypotheses: vec![parse_int("(a /\\ b) /\\ true").unwrap()],
            conclusion: parse_int("c -> d /\\ (e -> f)").unwrap(),
        }]);
        assert_eq!(normalize_int(once.clone()), once);
    }
}
