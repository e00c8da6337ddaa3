use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::{IntSequent, TranslateError, TranslatedSequent};
use crate::syntax::{parse_sequent_line, print_int, IntFormula as I, SyntaxError, Term, Theory};

pub const ISEQ_SCHEMA: &str = "chulogic.iseq/v1";

/// One line of an `.iseq` file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IseqEntry {
    pub name: String,
    pub line: usize,
    pub sequent: IntSequent,
}

fn constants_to_apps(t: &Term, consts: &BTreeSet<String>) -> Term {
    match t {
        Term::Var(v) if consts.contains(v) => Term::App(v.clone(), vec![]),
        Term::Var(_) => t.clone(),
        Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| constants_to_apps(a, consts)).collect()),
    }
}

fn map_terms(f: &I, g: &dyn Fn(&Term) -> Term) -> I {
    let r = |x: &I| Box::new(map_terms(x, g));
    match f {
        I::Atom(p, args) => I::Atom(p.clone(), args.iter().map(g).collect()),
        I::True | I::False => f.clone(),
        I::And(a, b) => I::And(r(a), r(b)),
        I::Or(a, b) => I::Or(r(a), r(b)),
        I::Imp(a, b) => I::Imp(r(a), r(b)),
        I::Not(a) => I::Not(r(a)),
        I::Forall(v, s, a) => I::Forall(v.clone(), s.clone(), r(a)),
        I::Exists(v, s, a) => I::Exists(v.clone(), s.clone(), r(a)),
    }
}

/// Parses `name.clause: h1, h2 |- c` lines; blank lines and `#` comments
/// are skipped. With a theory, bare names of its constants become constants.
pub fn parse_iseq(text: &str, th: Option<&Theory>) -> Result<Vec<IseqEntry>, SyntaxError> {
    let consts: BTreeSet<String> = th.map(|t| t.consts.iter().map(|(c, _)| c.clone()).collect()).unwrap_or_default();
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let l = parse_sequent_line(line).map_err(|e| e.at_line(i + 1))?;
        let fix = |f: &I| map_terms(f, &|t| constants_to_apps(t, &consts));
        out.push(IseqEntry {
            name: l.name,
            line: i + 1,
            sequent: IntSequent { context: vec![], hypotheses: l.hypotheses.iter().map(fix).collect(), conclusion: fix(&l.conclusion) },
        });
    }
    Ok(out)
}

/// Names each sequent `source.clause`, with a letter suffix when one clause
/// produced several sequents.
pub fn entry_names(seqs: &[TranslatedSequent]) -> Vec<String> {
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    let base: Vec<String> = seqs.iter().map(|s| format!("{}.{}", s.source, s.clause.label())).collect();
    for b in &base {
        *counts.entry(b.clone()).or_default() += 1;
    }
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    base.into_iter()
        .map(|b| {
            if counts[&b] == 1 {
                return b;
            }
            let k = seen.entry(b.clone()).or_default();
            *k += 1;
            format!("{b}{}", (b'a' + (*k as u8 - 1) % 26) as char)
        })
        .collect()
}

pub fn render_iseq(seqs: &[TranslatedSequent]) -> String {
    entry_names(seqs).iter().zip(seqs).map(|(n, s)| s.render(n) + "\n").collect()
}

fn term_key(t: &Term, names: &BTreeMap<String, String>) -> String {
    match t {
        Term::Var(v) => names.get(v).cloned().unwrap_or_else(|| v.clone()),
        Term::App(f, args) if args.is_empty() => f.clone(),
        Term::App(f, args) => format!("{f}({})", args.iter().map(|a| term_key(a, names)).collect::<Vec<_>>().join(",")),
    }
}

fn flat<'a>(f: &'a I, and: bool, out: &mut Vec<&'a I>) {
    match (f, and) {
        (I::And(a, b), true) | (I::Or(a, b), false) => {
            flat(a, and, out);
            flat(b, and, out);
        }
        _ => out.push(f),
    }
}

/// S-expression with bound variables numbered by depth and the operands of
/// `/\` and `\/` chains sorted.
fn formula_key(f: &I, names: &mut BTreeMap<String, String>, depth: usize) -> String {
    match f {
        I::Atom(p, args) => format!("{p}({})", args.iter().map(|a| term_key(a, names)).collect::<Vec<_>>().join(",")),
        I::True => "true".into(),
        I::False => "false".into(),
        I::And(..) | I::Or(..) => {
            let and = matches!(f, I::And(..));
            let mut parts = Vec::new();
            flat(f, and, &mut parts);
            let mut keys: Vec<String> = parts.iter().map(|p| formula_key(p, names, depth)).collect();
            keys.sort();
            format!("({} {})", if and { "and" } else { "or" }, keys.join(" "))
        }
        I::Imp(a, b) => format!("(imp {} {})", formula_key(a, names, depth), formula_key(b, names, depth)),
        I::Not(a) => format!("(not {})", formula_key(a, names, depth)),
        I::Forall(v, s, a) | I::Exists(v, s, a) => {
            let q = if matches!(f, I::Forall(..)) { "all" } else { "ex" };
            let old = names.insert(v.clone(), format!("_b{depth}"));
            let body = formula_key(a, names, depth + 1);
            match old {
                Some(o) => names.insert(v.clone(), o),
                None => names.remove(v),
            };
            format!("({q} _b{depth}:{s} {body})")
        }
    }
}

fn free_in_order(f: &I, bound: &mut Vec<String>, out: &mut Vec<String>) {
    fn term(t: &Term, bound: &[String], out: &mut Vec<String>) {
        match t {
            Term::Var(v) => {
                if !bound.contains(v) && !out.contains(v) {
                    out.push(v.clone());
                }
            }
            Term::App(_, args) => args.iter().for_each(|a| term(a, bound, out)),
        }
    }
    match f {
        I::Atom(_, args) => args.iter().for_each(|a| term(a, bound, out)),
        I::True | I::False => {}
        I::And(a, b) | I::Or(a, b) | I::Imp(a, b) => {
            free_in_order(a, bound, out);
            free_in_order(b, bound, out);
        }
        I::Not(a) => free_in_order(a, bound, out),
        I::Forall(v, _, a) | I::Exists(v, _, a) => {
            bound.push(v.clone());
            free_in_order(a, bound, out);
            bound.pop();
        }
    }
}

fn key_under(s: &IntSequent, names: &BTreeMap<String, String>) -> String {
    let mut names = names.clone();
    let mut hyps: Vec<String> = s.hypotheses.iter().map(|h| formula_key(h, &mut names, 0)).collect();
    hyps.sort();
    hyps.dedup();
    format!("{} |- {}", hyps.join(", "), formula_key(&s.conclusion, &mut names, 0))
}

/// Renaming-invariant key of a sequent: the least key over every
/// assignment of `v0, v1, ...` to its free variables (first-appearance
/// order beyond eight variables). Hypotheses are compared as a set.
pub fn canonical_key(s: &IntSequent) -> String {
    let mut vars = Vec::new();
    for f in s.hypotheses.iter().chain([&s.conclusion]) {
        free_in_order(f, &mut Vec::new(), &mut vars);
    }
    let n = vars.len();
    if n > 8 {
        let names = vars.iter().enumerate().map(|(i, v)| (v.clone(), format!("v{i}"))).collect();
        return key_under(s, &names);
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<String> = None;
    loop {
        let names = vars.iter().zip(&perm).map(|(v, &i)| (v.clone(), format!("v{i}"))).collect();
        let k = key_under(s, &names);
        if best.as_ref().is_none_or(|b| k < *b) {
            best = Some(k);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap_or_default()
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Symmetric difference of two sequent sets modulo renaming.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct IseqDiff {
    /// Rendered golden lines with no produced counterpart.
    pub missing: Vec<String>,
    /// Rendered produced lines absent from the golden file.
    pub unexpected: Vec<String>,
}

impl IseqDiff {
    pub fn is_match(&self) -> bool {
        self.missing.is_empty() && self.unexpected.is_empty()
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for m in &self.missing {
            out.push_str(&format!("- {m}\n"));
        }
        for u in &self.unexpected {
            out.push_str(&format!("+ {u}\n"));
        }
        out
    }
}

fn render_entry(name: &str, s: &IntSequent) -> String {
    let hyps: Vec<String> = s.hypotheses.iter().map(print_int).collect();
    let sep = if hyps.is_empty() { "" } else { " " };
    format!("{name}: {}{sep}|- {}", hyps.join(", "), print_int(&s.conclusion))
}

pub fn diff_sequents(produced: &[(String, IntSequent)], golden: &[IseqEntry]) -> IseqDiff {
    let have: BTreeSet<String> = produced.iter().map(|(_, s)| canonical_key(s)).collect();
    let want: BTreeSet<String> = golden.iter().map(|e| canonical_key(&e.sequent)).collect();
    let mut diff = IseqDiff::default();
    let mut reported = BTreeSet::new();
    for e in golden {
        let k = canonical_key(&e.sequent);
        if !have.contains(&k) && reported.insert(k) {
            diff.missing.push(render_entry(&e.name, &e.sequent));
        }
    }
    for (n, s) in produced {
        let k = canonical_key(s);
        if !want.contains(&k) && reported.insert(k) {
            diff.unexpected.push(render_entry(n, s));
        }
    }
    diff
}

#[derive(Clone, Debug, Serialize)]
pub struct TranslationJson {
    pub schema: &'static str,
    pub theory: String,
    pub sequents: Vec<SequentJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SequentJson {
    pub name: String,
    pub source: String,
    pub clause: super::ClauseKind,
    pub context: Vec<(String, String)>,
    pub hypotheses: Vec<String>,
    pub conclusion: String,
}

impl TranslationJson {
    pub fn new(theory: &str, seqs: &[TranslatedSequent]) -> Self {
        let sequents = entry_names(seqs)
            .into_iter()
            .zip(seqs)
            .map(|(name, s)| SequentJson {
                name,
                source: s.source.clone(),
                clause: s.clause.clone(),
                context: s.sequent.context.clone(),
                hypotheses: s.sequent.hypotheses.iter().map(print_int).collect(),
                conclusion: print_int(&s.sequent.conclusion),
            })
            .collect();
        TranslationJson { schema: ISEQ_SCHEMA, theory: theory.to_string(), sequents }
    }
}

/// Translates `th` and compares against golden `.iseq` text.
pub fn check_against(th: &Theory, golden: &str) -> Result<IseqDiff, TranslateError> {
    let seqs = super::translate_theory(th)?;
    let produced: Vec<(String, IntSequent)> = entry_names(&seqs).into_iter().zip(seqs.into_iter().map(|s| s.sequent)).collect();
    Ok(diff_sequents(&produced, &parse_iseq(golden, Some(th))?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_int;

    fn seq(h: &[&str], c: &str) -> IntSequent {
        IntSequent { context: vec![], hypotheses: h.iter().map(|x| parse_int(x).unwrap()).collect(), conclusion: parse_int(c).unwrap() }
    }

    #[test]
    fn renaming_and_order_do_not_matter() {
        let a = seq(&["neq(x,z)", "eq(y,z)"], "neq(x,y)");
        let b = seq(&["eq(b,c)", "neq(a,c)"], "neq(a,b)");
        assert_eq!(canonical_key(&a), canonical_key(&b));
        let c = seq(&["neq(x,z)", "eq(x,y)"], "neq(y,z)");
        assert_ne!(canonical_key(&a), canonical_key(&c));
        let d = seq(&["neq(x,z)", "eq(y,z)"], "neq(y,x)");
        assert_ne!(canonical_key(&a), canonical_key(&d));
        assert_eq!(canonical_key(&seq(&[], "exists u:A. p(u,x)")), canonical_key(&seq(&[], "exists w:A. p(w,y)")));
        assert_eq!(
            canonical_key(&seq(&["neq(x,y)"], "nle(x,y) \\/ nle(y,x)")),
            canonical_key(&seq(&["neq(x,y)"], "nle(y,x) \\/ nle(x,y)"))
        );
    }

    #[test]
    fn golden_lines_parse_with_constants() {
        let th = crate::syntax::parse_theory("theory G\nsort G\npred H(G) dual nH\nconst e: G\n").unwrap();
        let entries = parse_iseq("# comment\nunit.proof: |- H(e)\n\ninv.contra1: nH(x) |- nH(x)\n", Some(&th)).unwrap();
        assert_eq!(entries.len(), 2);
        assert_eq!(entries[0].sequent.conclusion, I::Atom("H".into(), vec![Term::App("e".into(), vec![])]));
        assert_eq!(entries[1].line, 4);
        assert!(parse_iseq("bad line\n", None).is_err());
    }

    #[test]
    fn diff_reports_both_sides() {
        let produced = vec![("a.proof".to_string(), seq(&["p(x)"], "q(x)")), ("b.proof".to_string(), seq(&[], "r"))];
        let golden = parse_iseq("a.proof: p(y) |- q(y)\nc.proof: |- s\n", None).unwrap();
        let d = diff_sequents(&produced, &golden);
        assert_eq!(d.missing, vec!["c.proof: |- s"]);
        assert_eq!(d.unexpected, vec!["b.proof: |- r"]);
        assert!(!d.is_match());
    }
}
