use rand::Rng;

use crate::syntax::{LinearFormula as L, Term};

/// Vocabulary for [`random_formula`].
#[derive(Clone, Debug)]
pub struct RandomSpec {
    pub nullary: Vec<String>,
    /// Unary atoms over `sort`; only generated under a binder.
    pub unary: Vec<String>,
    pub sort: String,
}

impl Default for RandomSpec {
    /// `p`, `q` nullary and `r`, `s` unary over `D`.
    fn default() -> Self {
        RandomSpec { nullary: vec!["p".into(), "q".into()], unary: vec!["r".into(), "s".into()], sort: "D".into() }
    }
}

pub const MAX_RANDOM_DEPTH: usize = 8;

const VARS: [&str; 4] = ["x", "y", "z", "w"];

/// A random formula of depth at most `depth` (clamped to 8).
///
/// Distribution: a leaf is chosen uniformly among the nullary atoms, the
/// unary atoms applied to each bound variable, and one slot shared by `T`
/// and `F`. An inner node is a leaf with probability 1/8; otherwise one of
/// fourteen equally likely slots: the six binary connectives (with `o-o`),
/// `!`, `?`, two slots for `~` and two for each quantifier. Children are
/// drawn at depth-1.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, depth: usize, spec: &RandomSpec) -> L {
    gen(rng, depth.min(MAX_RANDOM_DEPTH), spec, &mut Vec::new())
}

fn leaf<R: Rng + ?Sized>(rng: &mut R, spec: &RandomSpec, bound: &[String]) -> L {
    let mut choices: Vec<L> = spec.nullary.iter().map(|p| L::Atom(p.clone(), vec![])).collect();
    for v in bound {
        for u in &spec.unary {
            choices.push(L::Atom(u.clone(), vec![Term::Var(v.clone())]));
        }
    }
    let k = rng.gen_range(0..=choices.len());
    if k == choices.len() {
        if rng.gen_bool(0.5) {
            L::Top
        } else {
            L::Bot
        }
    } else {
        choices.swap_remove(k)
    }
}

fn gen<R: Rng + ?Sized>(rng: &mut R, depth: usize, spec: &RandomSpec, bound: &mut Vec<String>) -> L {
    if depth == 0 || rng.gen_ratio(1, 8) {
        return leaf(rng, spec, bound);
    }
    let d = depth - 1;
    let b = |x: L| Box::new(x);
    match rng.gen_range(0..14) {
        0 => L::Tensor(b(gen(rng, d, spec, bound)), b(gen(rng, d, spec, bound))),
        1 => L::Par(b(gen(rng, d, spec, bound)), b(gen(rng, d, spec, bound))),
        2 => L::With(b(gen(rng, d, spec, bound)), b(gen(rng, d, spec, bound))),
        3 => L::Plus(b(gen(rng, d, spec, bound)), b(gen(rng, d, spec, bound))),
        4 => L::Limp(b(gen(rng, d, spec, bound)), b(gen(rng, d, spec, bound))),
        5 => L::Liff(b(gen(rng, d, spec, bound)), b(gen(rng, d, spec, bound))),
        6 | 7 => L::Neg(b(gen(rng, d, spec, bound))),
        8 => L::Bang(b(gen(rng, d, spec, bound))),
        9 => L::WhyNot(b(gen(rng, d, spec, bound))),
        10 | 11 => L::Forall(fresh(bound), spec.sort.clone(), b(under(rng, d, spec, bound))),
        _ => L::Exists(fresh(bound), spec.sort.clone(), b(under(rng, d, spec, bound))),
    }
}

fn fresh(bound: &[String]) -> String {
    let n = bound.len();
    VARS.get(n).map_or_else(|| format!("x{n}"), |v| v.to_string())
}

fn under<R: Rng + ?Sized>(rng: &mut R, depth: usize, spec: &RandomSpec, bound: &mut Vec<String>) -> L {
    bound.push(fresh(bound));
    let body = gen(rng, depth, spec, bound);
    bound.pop();
    body
}
